"""Hilbert functions of reduced point sets and the Cayley-Bacharach property."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import List, Tuple

import numpy as np

from .geometry import Form, PointSet, eval_matrix
from .linalg import in_row_span, kernel_basis, rank


@dataclass(frozen=True)
class CbReport:
    m: int
    verdict: bool
    failing_points: Tuple[int, ...]
    h0_full: int
    h0_drops: Tuple[int, ...]


def conditions_imposed(P: PointSet, d: int) -> int:
    """h_P(d): number of independent conditions P imposes on degree-d forms."""
    return rank(eval_matrix(P, d))


def h0_ideal(P: PointSet, d: int) -> int:
    return comb(d + P.n, P.n) - conditions_imposed(P, d)


def h1_ideal(P: PointSet, d: int) -> int:
    return len(P) - conditions_imposed(P, d)


def is_independent(P: PointSet, d: int) -> bool:
    return conditions_imposed(P, d) == len(P)


def hilbert_profile(P: PointSet, degrees) -> List[int]:
    return [conditions_imposed(P, d) for d in degrees]


def is_cb(P: PointSet, m: int) -> CbReport:
    """CB(m) with the list of points at which it fails.

    Point i fails exactly when its evaluation row is outside the span of
    the other rows, i.e. some degree-m form vanishes on P minus i but not at i.
    Row i lies in that span iff some left-kernel vector of the evaluation
    matrix is nonzero at i, so one elimination decides every point.
    """
    if len(P) < 1:
        raise ValueError("CB(m) needs at least one point")
    E = eval_matrix(P, m)
    full_rank = rank(E)
    h0_full = E.cols - full_rank
    left = kernel_basis(E.transpose())
    if left:
        dependent = np.any(np.array(left, dtype=object) != 0, axis=0)
    else:
        dependent = np.zeros(len(P), dtype=bool)
    failing = tuple(int(i) for i in np.flatnonzero(~dependent))
    drops = tuple(h0_full + (0 if dependent[i] else 1) for i in range(len(P)))
    return CbReport(m, not failing, failing, h0_full, drops)


def cb_failing_by_rank(P: PointSet, m: int) -> List[int]:
    """Per-point rank comparison: rank(E) vs rank(E minus row i)."""
    E = eval_matrix(P, m)
    full = rank(E)
    out = []
    for i in range(len(P)):
        r = rank(E.delete_row(i))
        assert full - 1 <= r <= full, "removing one row lowers the rank by at most one"
        if r < full:
            out.append(i)
    return out


def cb_failing_by_span(P: PointSet, m: int) -> List[int]:
    """Same verdict as :func:`is_cb`, phrased through :func:`in_row_span`."""
    E = eval_matrix(P, m)
    return [i for i in range(len(P))
            if not in_row_span(E.delete_row(i), list(E.data[i]))]


def cb_bruteforce(P: PointSet, m: int) -> List[int]:
    """Independent oracle: evaluate every kernel form of P minus i at i."""
    failing = []
    for i in range(len(P)):
        rest = P.without(i)
        E = eval_matrix(rest, m)
        basis = kernel_basis(E)
        forms = [Form(P.n, m, tuple(v), P.field) for v in basis]
        if any(F(P[i]) != 0 for F in forms):
            failing.append(i)
    return failing


def ideal_forms(P: PointSet, d: int) -> List[Form]:
    """Deterministic basis of H^0(J_P(d)) as forms."""
    E = eval_matrix(P, d)
    return [Form(P.n, d, tuple(v), P.field) for v in kernel_basis(E)]


def residual_split(P: PointSet, F: Form) -> Tuple[PointSet, PointSet]:
    """Split P into the points on Z(F) and the residual off it, order preserved."""
    on = [i for i, x in enumerate(P) if F(x) == 0]
    onset = set(on)
    off = [i for i in range(len(P)) if i not in onset]
    return P.subset(on), P.subset(off)
