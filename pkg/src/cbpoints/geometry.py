"""Projective points, monomial bases, forms, rational curves and projectivities.

Monomials of degree d in x0..xn are listed in graded-lex order, which within
a single degree is descending lexicographic order on exponent vectors:
x0^d, x0^(d-1) x1, ..., xn^d.  Every evaluation matrix, form coefficient
vector and golden file in the package uses this order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import BasePoint, DegenerateSpan, DimensionMismatch, DuplicatePoint
from .linalg import Matrix, inverse, rank
from .scalar import BinaryForm, FieldSpec


def normalize(coords: Sequence, field: FieldSpec) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    vals = [field.reduce(c) for c in coords]
    for v in vals:
        if v != 0:
            inv = field.inv(v)
            return tuple(field.reduce(x * inv) for x in vals)
    raise ValueError("the zero vector is not a projective point")


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    @classmethod
    def of(cls, coords: Sequence, field: FieldSpec) -> "ProjPoint":
        return cls(normalize(coords, field))

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class PointSet:
    """Ordered set of pairwise distinct normalized points."""

    points: tuple
    n: int
    field: FieldSpec
    _array: Optional[np.ndarray] = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self):
        seen = {}
        for i, pt in enumerate(self.points):
            if pt.n != self.n:
                raise DimensionMismatch(f"point {i} lives in P^{pt.n}, expected P^{self.n}")
            if pt in seen:
                raise DuplicatePoint(f"point {i} repeats point {seen[pt]}")
            seen[pt] = i

    @classmethod
    def from_coords(cls, rows: Iterable[Sequence], field: FieldSpec, n: Optional[int] = None):
        pts = tuple(ProjPoint.of(r, field) for r in rows)
        if n is None:
            if not pts:
                raise ValueError("cannot infer the ambient dimension of an empty set")
            n = pts[0].n
        return cls(pts, n, field)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def subset(self, idx: Iterable[int]) -> "PointSet":
        return PointSet(tuple(self.points[i] for i in idx), self.n, self.field)

    def without(self, i: int) -> "PointSet":
        return PointSet(self.points[:i] + self.points[i + 1:], self.n, self.field)

    def union(self, other: "PointSet") -> "PointSet":
        return PointSet(self.points + other.points, self.n, self.field)

    def array(self) -> np.ndarray:
        """Coordinates as an (N, n+1) array in the field's working dtype."""
        if self._array is None:
            if self.points:
                arr = self.field.array([list(p.coords) for p in self.points])
            else:
                arr = np.zeros((0, self.n + 1), dtype=self.field.dtype)
            object.__setattr__(self, "_array", arr)
        return self._array


# ---------------------------------------------------------------------------
# monomials and evaluation


@lru_cache(maxsize=None)
def monomials(d: int, n: int) -> Tuple[tuple, ...]:
    """Exponent vectors of degree d in n+1 variables, graded-lex order."""
    if d < 0 or n < 0:
        raise ValueError("degree and dimension must be non-negative")

    def rec(total, nvars):
        if nvars == 1:
            return [(total,)]
        out = []
        for first in range(total, -1, -1):
            out.extend((first,) + rest for rest in rec(total - first, nvars - 1))
        return out

    return tuple(rec(d, n + 1))


def _eval_monomials(X: np.ndarray, d: int, n: int, field: FieldSpec) -> np.ndarray:
    mons = monomials(d, n)
    N = X.shape[0]
    if field.dtype is np.int64:
        p = field.p
        powers = [[np.ones(N, dtype=np.int64)] for _ in range(n + 1)]
        for i in range(n + 1):
            for _ in range(d):
                powers[i].append(powers[i][-1] * X[:, i] % p)
        out = np.empty((N, len(mons)), dtype=np.int64)
        for j, e in enumerate(mons):
            col = np.ones(N, dtype=np.int64)
            for i, k in enumerate(e):
                if k:
                    col = col * powers[i][k] % p
            out[:, j] = col
        return out
    out = np.empty((N, len(mons)), dtype=object)
    for r in range(N):
        row = X[r]
        for j, e in enumerate(mons):
            v = 1
            for i, k in enumerate(e):
                if k:
                    v = v * row[i] ** k
            out[r, j] = field.reduce(v)
    return out


def eval_matrix(P: PointSet, d: int) -> Matrix:
    """Row i, column j: the j-th degree-d monomial at point i."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    X = P.array()
    data = _eval_monomials(X, d, P.n, P.field)
    if data.shape[0] == 0:
        return Matrix([], P.field, cols=comb(d + P.n, P.n))
    return Matrix(data, P.field)


@dataclass(frozen=True)
class Form:
    """Homogeneous form of degree d in x0..xn; coefficients follow ``monomials(d, n)``."""

    n: int
    d: int
    coeffs: tuple
    field: FieldSpec

    def __post_init__(self):
        if len(self.coeffs) != comb(self.d + self.n, self.n):
            raise DimensionMismatch(
                f"{len(self.coeffs)} coefficients for degree {self.d} in P^{self.n}")
        object.__setattr__(self, "coeffs", tuple(self.field.reduce(c) for c in self.coeffs))

    def __call__(self, point) -> object:
        coords = point.coords if isinstance(point, ProjPoint) else tuple(point)
        f = self.field
        acc = 0
        for c, e in zip(self.coeffs, monomials(self.d, self.n)):
            if c == 0:
                continue
            term = c
            for x, k in zip(coords, e):
                if k:
                    term = term * f.reduce(x) ** k
            acc += term
        return f.reduce(acc)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __mul__(self, other: "Form") -> "Form":
        mons = {e: i for i, e in enumerate(monomials(self.d + other.d, self.n))}
        out = [0] * len(mons)
        for a, ea in zip(self.coeffs, monomials(self.d, self.n)):
            if a == 0:
                continue
            for b, eb in zip(other.coeffs, monomials(other.d, other.n)):
                if b:
                    out[mons[tuple(x + y for x, y in zip(ea, eb))]] += a * b
        return Form(self.n, self.d + other.d, tuple(out), self.field)

    @classmethod
    def from_terms(cls, n: int, d: int, terms: dict, field: FieldSpec) -> "Form":
        """Build from ``{exponent tuple: coefficient}``."""
        index = {e: i for i, e in enumerate(monomials(d, n))}
        coeffs = [0] * len(index)
        for e, c in terms.items():
            coeffs[index[tuple(e)]] += c
        return cls(n, d, tuple(coeffs), field)


def form_eval(F: Form, x) -> object:
    return F(x)


# ---------------------------------------------------------------------------
# rational curves


@dataclass(frozen=True)
class RationalCurve:
    """Curve parametrized by n+1 binary forms of a common degree."""

    components: tuple
    field: FieldSpec

    def __post_init__(self):
        degs = {c.degree for c in self.components}
        if len(degs) != 1:
            raise DimensionMismatch("components must share one degree")
        if all(c.is_zero() for c in self.components):
            raise BasePoint("all components vanish identically")

    @property
    def n(self) -> int:
        return len(self.components) - 1

    @property
    def degree(self) -> int:
        return self.components[0].degree

    @classmethod
    def from_coeffs(cls, comps: Sequence[Sequence], field: FieldSpec) -> "RationalCurve":
        return cls(tuple(BinaryForm(tuple(c), field) for c in comps), field)


def curve_point(C: RationalCurve, param) -> ProjPoint:
    s, t = param
    vals = [comp(s, t) for comp in C.components]
    if all(v == 0 for v in vals):
        raise BasePoint(f"parametrization undefined at ({s}:{t})")
    return ProjPoint.of(vals, C.field)


def restrict(F: Form, C: RationalCurve) -> BinaryForm:
    """Substitute the parametrization into F; a binary form of degree d*e."""
    if F.n != C.n:
        raise DimensionMismatch("form and curve live in different spaces")
    field = F.field
    e = C.degree
    powers = []
    for comp in C.components:
        pw = [BinaryForm((1,), field)]
        for _ in range(F.d):
            pw.append(pw[-1] * comp)
        powers.append(pw)
    total = [0] * (F.d * e + 1)
    for c, ex in zip(F.coeffs, monomials(F.d, F.n)):
        if c == 0:
            continue
        term = BinaryForm((c,), field)
        for i, k in enumerate(ex):
            if k:
                term = term * powers[i][k]
        for j, v in enumerate(term.coeffs):
            total[j] += v
    return BinaryForm(tuple(total), field)


# ---------------------------------------------------------------------------
# linear subspaces


@dataclass(frozen=True)
class Subspace:
    """Projective span of the given points (a line or a plane witness)."""

    spanning: tuple
    field: FieldSpec

    @property
    def dim(self) -> int:
        return len(self.spanning) - 1

    def matrix(self) -> Matrix:
        return Matrix([list(p.coords) for p in self.spanning], self.field)

    def contains(self, x: ProjPoint) -> bool:
        return rank(self.matrix().append_row(list(x.coords))) == len(self.spanning)


def _span(points: Sequence[ProjPoint], field: FieldSpec, what: str) -> Subspace:
    M = Matrix([list(p.coords) for p in points], field)
    if rank(M) != len(points):
        raise DegenerateSpan(f"points do not span a {what}")
    return Subspace(tuple(points), field)


def line_through(a: ProjPoint, b: ProjPoint, field: FieldSpec) -> Subspace:
    return _span([a, b], field, "line")


def plane_through(a: ProjPoint, b: ProjPoint, c: ProjPoint, field: FieldSpec) -> Subspace:
    return _span([a, b, c], field, "plane")


def on_line(x: ProjPoint, L: Subspace) -> bool:
    return L.contains(x)


def on_plane(x: ProjPoint, H: Subspace) -> bool:
    return H.contains(x)


class PlaneChart:
    """Coordinates on a plane of P^3 relative to three spanning points.

    Point x of the plane is written x = u0*a + u1*b + u2*c; (u0:u1:u2) are its
    plane coordinates.  Forms in these coordinates describe plane curves.
    """

    def __init__(self, plane: Subspace):
        if plane.dim != 2 or plane.spanning[0].n != 3:
            raise ValueError("PlaneChart needs a plane of P^3")
        field = plane.field
        self.plane = plane
        self.field = field
        cols = [list(p.coords) for p in plane.spanning]
        for k in range(4):
            extra = [int(i == k) for i in range(4)]
            g = Matrix([[cols[j][i] for j in range(3)] + [extra[i]] for i in range(4)], field)
            if rank(g) == 4:
                self._g = g
                self._ginv = inverse(g)
                break
        else:  # pragma: no cover - three independent vectors always extend
            raise DegenerateSpan("cannot complete plane basis")

    def coords(self, x: ProjPoint) -> Optional[tuple]:
        f = self.field
        v = [f.reduce(sum(self._ginv.data[i, j] * x.coords[j] for j in range(4)))
             for i in range(4)]
        if v[3] != 0:
            return None
        return normalize(v[:3], f)

    def lift(self, u: Sequence) -> ProjPoint:
        f = self.field
        v = [sum(self._g.data[i, j] * u[j] for j in range(3)) for i in range(4)]
        return ProjPoint.of(v, f)

    def pointset(self, P: PointSet, idx: Sequence[int]) -> PointSet:
        rows = []
        for i in idx:
            u = self.coords(P[i])
            if u is None:
                raise ValueError(f"point {i} is not on the plane")
            rows.append(u)
        return PointSet.from_coords(rows, self.field, n=2)


# ---------------------------------------------------------------------------
# projectivities


@dataclass(frozen=True)
class Projectivity:
    matrix: Matrix

    def __post_init__(self):
        m = self.matrix
        if m.rows != m.cols or rank(m) != m.rows:
            raise ValueError("a projectivity needs an invertible square matrix")

    @property
    def n(self) -> int:
        return self.matrix.rows - 1

    def inverse(self) -> "Projectivity":
        return Projectivity(inverse(self.matrix))


def _apply_to_array(g: Projectivity, X: np.ndarray) -> np.ndarray:
    field = g.matrix.field
    G = g.matrix.data
    return (Matrix(X, field) @ Matrix(np.ascontiguousarray(G.T), field)).data


def apply_projectivity(g: Projectivity, obj: Union[PointSet, RationalCurve, ProjPoint]):
    field = g.matrix.field
    if isinstance(obj, PointSet):
        if obj.n != g.n:
            raise DimensionMismatch("projectivity and point set dimensions differ")
        if len(obj) == 0:
            return obj
        Y = _apply_to_array(g, obj.array())
        return PointSet.from_coords([list(r) for r in Y], field, n=obj.n)
    if isinstance(obj, ProjPoint):
        Y = _apply_to_array(g, field.array([list(obj.coords)]))
        return ProjPoint.of(list(Y[0]), field)
    if isinstance(obj, RationalCurve):
        if obj.n != g.n:
            raise DimensionMismatch("projectivity and curve dimensions differ")
        G = g.matrix.data
        comps = []
        for i in range(g.n + 1):
            acc = [0] * (obj.degree + 1)
            for k, comp in enumerate(obj.components):
                gik = G[i, k]
                gik = int(gik) if isinstance(gik, np.integer) else gik
                if gik != 0:
                    for j, c in enumerate(comp.coeffs):
                        acc[j] += gik * c
            comps.append(BinaryForm(tuple(acc), field))
        return RationalCurve(tuple(comps), field)
    raise TypeError(f"cannot apply a projectivity to {type(obj).__name__}")


def permute(P: PointSet, order: Sequence[int]) -> PointSet:
    return P.subset(order)
