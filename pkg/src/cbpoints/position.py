"""Special-position detection for point sets in P^3 (lines and planes in P^2 too).

Collinearity and coplanarity scans are exhaustive over pairs and triples and
vectorised: for a pair (a, b) the 3x3 minors of [a; b; x] are linear in x with
coefficients the Plücker coordinates of a and b; for a triple the plane's
normal vector is the vector of signed 3x3 minors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Tuple

import numpy as np

from .conditions import conditions_imposed, h0_ideal, ideal_forms
from .errors import AllCollinear, TooFew
from .geometry import Form, PointSet


@dataclass(frozen=True)
class PositionReport:
    max_collinear: Tuple[int, Tuple[int, int]]
    max_coplanar: Tuple[int, Tuple[int, int, int]] | None
    lgp: bool
    de_hypothesis_by_degree: Dict[int, bool]
    quadric_count: int
    castelnuovo: bool
    profile: Tuple[int, ...]


def _plucker(A: np.ndarray, B: np.ndarray, field) -> Dict[tuple, np.ndarray]:
    k = A.shape[1]
    return {(a, b): field.reduce_array(A[:, a] * B[:, b] - A[:, b] * B[:, a])
            for a, b in combinations(range(k), 2)}


def collinearity(P: PointSet):
    """All pairs (lex order) and the boolean matrix ``on[pair, point]``."""
    N = len(P)
    X = P.array()
    I, J = np.triu_indices(N, 1)
    if P.n < 2:
        return I, J, np.ones((len(I), N), dtype=bool)
    pl = _plucker(X[I], X[J], P.field)
    on = np.ones((len(I), N), dtype=bool)
    for a, b, c in combinations(range(P.n + 1), 3):
        m = (pl[(b, c)][:, None] * X[None, :, a]
             - pl[(a, c)][:, None] * X[None, :, b]
             + pl[(a, b)][:, None] * X[None, :, c])
        on &= P.field.reduce_array(m) == 0
    return I, J, on


def coplanarity(P: PointSet):
    """All triples (lex order), a nondegeneracy mask and ``on[triple, point]``."""
    if P.n != 3:
        raise ValueError("coplanarity scans need ambient P^3")
    N = len(P)
    X = P.array()
    T = np.array(list(combinations(range(N), 3)), dtype=np.int64).reshape(-1, 3)
    A, B, C = X[T[:, 0]], X[T[:, 1]], X[T[:, 2]]
    pl = _plucker(A, B, P.field)

    def minor(a, b, c):
        return P.field.reduce_array(C[:, a] * pl[(b, c)] - C[:, b] * pl[(a, c)]
                                    + C[:, c] * pl[(a, b)])

    # normal . x expands det[a; b; c; x] along its last row
    normal = np.stack([-minor(1, 2, 3), minor(0, 2, 3), -minor(0, 1, 3), minor(0, 1, 2)], axis=1)
    normal = P.field.reduce_array(normal)
    proper = np.any(normal != 0, axis=1)
    vals = np.zeros((len(T), N), dtype=X.dtype)
    for a in range(4):
        vals = P.field.reduce_array(vals + normal[:, a][:, None] * X[None, :, a])
    on = vals == 0
    return T, proper, on


def max_collinear(P: PointSet) -> Tuple[int, Tuple[int, int]]:
    """Largest number of points on a line spanned by two of them."""
    if len(P) < 2:
        raise TooFew("need at least two points")
    I, J, on = collinearity(P)
    counts = on.sum(axis=1)
    k = int(np.argmax(counts))
    return int(counts[k]), (int(I[k]), int(J[k]))


def max_coplanar(P: PointSet) -> Tuple[int, Tuple[int, int, int]]:
    """Largest number of points on a plane spanned by three non-collinear ones."""
    if P.n != 3:
        raise ValueError("max_coplanar needs ambient P^3")
    if len(P) < 3:
        raise TooFew("need at least three points")
    T, proper, on = coplanarity(P)
    if not proper.any():
        raise AllCollinear("every triple is collinear")
    counts = np.where(proper, on.sum(axis=1), -1)
    k = int(np.argmax(counts))
    return int(counts[k]), tuple(int(v) for v in T[k])


def line_members(P: PointSet, i: int, j: int) -> List[int]:
    """Indices of points on the line through points i and j."""
    X = P.array()
    pl = _plucker(X[[i]], X[[j]], P.field)
    ok = np.ones(len(P), dtype=bool)
    for a, b, c in combinations(range(P.n + 1), 3):
        m = pl[(b, c)][0] * X[:, a] - pl[(a, c)][0] * X[:, b] + pl[(a, b)][0] * X[:, c]
        ok &= P.field.reduce_array(m) == 0
    return [int(v) for v in np.flatnonzero(ok)]


def plane_members(P: PointSet, i: int, j: int, k: int) -> List[int]:
    """Indices of points on the plane through points i, j, k."""
    X = P.array()
    A, B, C = X[[i]], X[[j]], X[[k]]
    pl = _plucker(A, B, P.field)

    def minor(a, b, c):
        return C[0, a] * pl[(b, c)][0] - C[0, b] * pl[(a, c)][0] + C[0, c] * pl[(a, b)][0]

    normal = [P.field.reduce(v) for v in
              (-minor(1, 2, 3), minor(0, 2, 3), -minor(0, 1, 3), minor(0, 1, 2))]
    if all(v == 0 for v in normal):
        raise AllCollinear("the spanning points are collinear")
    vals = sum(normal[a] * X[:, a] for a in range(4))
    return [int(v) for v in np.flatnonzero(P.field.reduce_array(vals) == 0)]


def is_lgp(P: PointSet) -> bool:
    """Linearly general position: no 3 collinear and (in P^3) no 4 coplanar."""
    if len(P) >= 3 and max_collinear(P)[0] > 2:
        return False
    if P.n == 3 and len(P) >= 4:
        return max_coplanar(P)[0] <= 3
    return True


def max_in_plane(P: PointSet) -> int:
    """Most points of P in one plane, counting an all-collinear set as one plane."""
    if len(P) <= 3:
        return len(P)
    try:
        return max_coplanar(P)[0]
    except AllCollinear:
        return len(P)


def de_hypothesis(P: PointSet, d: int) -> bool:
    """No d*k + 2 points of P in any projective k-plane, k = 1 .. n.

    For k = n the whole space is the only k-plane, so |P| <= d*n + 1 is part
    of the hypothesis.
    """
    if d < 2:
        raise ValueError("the independence criterion needs d >= 2")
    if P.n not in (2, 3):
        raise ValueError("de_hypothesis supports P^2 and P^3")
    N = len(P)
    if N >= 2 and max_collinear(P)[0] > d + 1:
        return False
    if P.n == 3 and max_in_plane(P) > 2 * d + 1:
        return False
    return N <= d * P.n + 1


def castelnuovo_signature(P: PointSet) -> Tuple[bool, List[int]]:
    """Hilbert profile check for lying on a rational normal cubic in P^3."""
    if P.n != 3:
        raise ValueError("castelnuovo_signature needs ambient P^3")
    N = len(P)
    top = max(1, -(-(N - 1) // 3))
    profile = [conditions_imposed(P, m) for m in range(1, top + 1)]
    if N < 2 * P.n + 3 or not is_lgp(P):
        return False, profile
    ok = all(h == min(N, 3 * m + 1) for m, h in enumerate(profile, start=1))
    return ok, profile


def quadrics_through(P: PointSet) -> List[Form]:
    if P.n != 3:
        raise ValueError("quadrics_through needs ambient P^3")
    return ideal_forms(P, 2)


def position_report(P: PointSet, degrees=(2, 3, 4, 5)) -> PositionReport:
    if P.n != 3:
        raise ValueError("position_report needs ambient P^3")
    mc = max_collinear(P) if len(P) >= 2 else (len(P), ())
    mp = None
    if len(P) >= 3:
        try:
            mp = max_coplanar(P)
        except AllCollinear:
            mp = None
    sig, profile = castelnuovo_signature(P)
    return PositionReport(
        max_collinear=mc,
        max_coplanar=mp,
        lgp=is_lgp(P),
        de_hypothesis_by_degree={d: de_hypothesis(P, d) for d in degrees},
        quadric_count=h0_ideal(P, 2),
        castelnuovo=sig,
        profile=tuple(profile),
    )
