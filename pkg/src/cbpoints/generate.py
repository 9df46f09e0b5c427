"""Seeded construction of test configurations.

Points are chosen first, on standard curves moved into general position by
random projectivities, and a sextic through all of them is chosen afterwards.
Over F_p this guarantees rational intersection points, which a randomly
fixed sextic would almost never provide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .classify import ComponentWitness
from .conditions import ideal_forms
from .errors import CapacityExceeded, DuplicatePoint, EmptyKernel, InternalError, RetriesExhausted
from .geometry import (Form, PlaneChart, PointSet, ProjPoint, Projectivity, RationalCurve,
                       apply_projectivity, curve_point, eval_matrix, monomials, plane_through,
                       restrict)
from .linalg import Matrix, det, kernel_basis, rank
from .position import castelnuovo_signature
from .scalar import (BinaryForm, FieldSpec, Rng, binary_form_roots, interpolate, poly_gcd,
                     split_seed)

MAX_RETRIES = 100

# points of a curve that can lie on a sextic without the curve lying on it
CAPACITY = {"Line": 6, "PlaneConic": 12, "PlaneCubic": 18, "TwistedCubic": 18}

CASE_COMPONENTS = {
    "CaseI": ("TwistedCubic", "Line", "Line"),
    "CaseII": ("TwistedCubic", "PlaneConic"),
    "CaseIII": ("TwistedCubic", "Line", "Line", "Line"),
    "CaseIV": ("TwistedCubic", "Line", "PlaneConic"),
    "CaseV": ("TwistedCubic", "PlaneCubic"),
    "OnPlane": ("Plane",),
    "OnConic": ("PlaneConic",),
    "OnPlaneCubic": ("PlaneCubic",),
    "OnTwistedCubic": ("TwistedCubic",),
    "OnQuadric": ("Quadric",),
    "CI33": (),
}

# minimal total length of a CB(5) configuration of each shape
LENGTH_BOUND = {"CaseI": 27, "CaseII": 27, "CaseIII": 30, "CaseIV": 30, "CaseV": 30}

# parameter of the cusp of the standard cuspidal cubic; never sampled
CUSP = (0, 1)


@dataclass(frozen=True)
class ConfigSpec:
    case: str
    lengths: Tuple[int, ...]
    field: FieldSpec
    seed: int

    def __post_init__(self):
        if self.case not in CASE_COMPONENTS:
            raise ValueError(f"unknown case {self.case!r}")
        kinds = CASE_COMPONENTS[self.case]
        object.__setattr__(self, "lengths", tuple(int(v) for v in self.lengths))
        if self.case == "CI33":
            if self.lengths not in ((), (9,)):
                raise ValueError("CI33 always has 9 points")
            return
        if len(self.lengths) != len(kinds):
            raise ValueError(f"{self.case} needs {len(kinds)} lengths, got {len(self.lengths)}")
        for kind, k in zip(kinds, self.lengths):
            if k < 1:
                raise ValueError("component lengths must be positive")
            if k > CAPACITY.get(kind, 83):
                raise CapacityExceeded(f"{kind} carries at most {CAPACITY[kind]} points, got {k}")
        if sum(self.lengths) > 83:
            raise CapacityExceeded("more than 83 points leave no sextic through them")

    @property
    def components(self) -> Tuple[str, ...]:
        return CASE_COMPONENTS[self.case]


@dataclass(frozen=True)
class Config:
    spec: ConfigSpec
    points: PointSet
    witnesses: Tuple[ComponentWitness, ...]
    sextic: Optional[Form]
    curves: Tuple[Optional[RationalCurve], ...]
    params: Tuple[Tuple[tuple, ...], ...]
    pencil: Tuple[Form, ...] = ()


def _rng(seed) -> Rng:
    return seed if isinstance(seed, Rng) else Rng(seed)


def random_projectivity(field: FieldSpec, seed, n: int = 3) -> Projectivity:
    """Uniformly random invertible matrix by rejection sampling."""
    rng = _rng(seed)
    for _ in range(MAX_RETRIES):
        rows = [[rng.below(field.p) for _ in range(n + 1)] for _ in range(n + 1)]
        M = Matrix(rows, field)
        if rank(M) == n + 1:
            return Projectivity(M)
    raise InternalError("no invertible matrix after %d draws" % MAX_RETRIES)


def standard_curve(kind: str, field: FieldSpec) -> RationalCurve:
    comps = {
        "Line": [(1, 0), (0, 1), (0, 0), (0, 0)],
        "PlaneConic": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)],
        "TwistedCubic": [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)],
        # (s^2 t, s^3, t^3, 0): x0^3 = x1^2 x2 on the plane x3 = 0, cusp at (0:0:1:0)
        "CuspidalPlaneCubic": [(0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 0, 0)],
    }
    if kind == "PlaneCubic":
        kind = "CuspidalPlaneCubic"
    if kind not in comps:
        raise ValueError(f"unknown curve kind {kind!r}")
    return RationalCurve.from_coeffs(comps[kind], field)


def _random_param(rng: Rng, p: int) -> tuple:
    u = rng.below(p + 1)
    return (0, 1) if u == p else (1, u)


def sample_on_curve(C: RationalCurve, count: int, seed, *, capacity: Optional[int] = None,
                    exclude: Sequence[tuple] = ()):
    """``count`` distinct parameters and their (distinct) image points."""
    field = C.field
    if capacity is not None and count > capacity:
        raise CapacityExceeded(f"{count} points requested, capacity {capacity}")
    if count > field.p + 1 - len(exclude):
        raise CapacityExceeded("not enough parameters in P^1(F_p)")
    rng = _rng(seed)
    params: List[tuple] = []
    points: List[ProjPoint] = []
    seen_params = set(exclude)
    seen_points = set()
    draws = 0
    while len(params) < count:
        draws += 1
        if draws > 100 * (count + 10):
            raise RetriesExhausted("could not draw enough distinct curve points")
        t = _random_param(rng, field.p)
        if t in seen_params:
            continue
        seen_params.add(t)
        x = curve_point(C, t)
        if x in seen_points:
            continue
        seen_points.add(x)
        params.append(t)
        points.append(x)
    return tuple(params), PointSet(tuple(points), C.n, field)


def sextic_through(points: PointSet, seed) -> Form:
    """A random member of the linear system of sextics through the points."""
    if len(points) > 83:
        raise CapacityExceeded("at most 83 points")
    rng = _rng(seed)
    field = points.field
    basis = kernel_basis(eval_matrix(points, 6))
    if not basis:
        raise EmptyKernel("no sextic through the points")
    coeffs = [0] * len(basis[0])
    for v in basis:
        c = rng.nonzero(field.p)
        for j, x in enumerate(v):
            if x:
                coeffs[j] += c * x
    return Form(points.n, 6, tuple(coeffs), field)


# ---------------------------------------------------------------------------
# witnesses derived from the known components


def _curve_witness(kind: str, C: RationalCurve, covered, P: PointSet, rng: Rng):
    field = C.field
    if kind == "Line":
        return ComponentWitness("Line", covered,
                                span=(curve_point(C, (1, 0)), curve_point(C, (0, 1))))
    if kind in ("PlaneConic", "PlaneCubic"):
        deg = 2 if kind == "PlaneConic" else 3
        excl = [CUSP] if kind == "PlaneCubic" else []
        for _ in range(MAX_RETRIES):
            _, sample = sample_on_curve(C, 3 * deg + 4, rng, exclude=excl)
            span = tuple(sample[:3])
            if rank(Matrix([list(x.coords) for x in span], field)) < 3:
                continue
            chart = PlaneChart(plane_through(*span, field))
            forms = ideal_forms(chart.pointset(sample, range(len(sample))), deg)
            if len(forms) == 1:
                return ComponentWitness(kind, covered, span=span, form=forms[0])
        raise RetriesExhausted(f"could not certify the {kind}")
    if kind == "TwistedCubic":
        _, sample = sample_on_curve(C, 10, rng)
        net = ideal_forms(sample, 2)
        if len(net) != 3:
            raise InternalError("twisted cubic without a net of quadrics")
        sub = P.subset(covered)
        profile = castelnuovo_signature(sub)[1] if len(sub) >= 9 else []
        return ComponentWitness("RationalCubicSignature", covered, quadrics=tuple(net),
                                profile=tuple(profile))
    raise ValueError(kind)


def _plane_points(count: int, g: Projectivity, rng: Rng, field: FieldSpec):
    base = Matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], field)
    rows = []
    while len(rows) < count:
        u = [rng.below(field.p) for _ in range(3)]
        if any(u):
            rows.append(u + [0])
    P = PointSet.from_coords(rows, field, n=3)
    span = PointSet.from_coords(base.tolist(), field, n=3)
    return apply_projectivity(g, P), apply_projectivity(g, span)


def _quadric_points(count: int, g: Projectivity, rng: Rng, field: FieldSpec):
    # Segre embedding of P^1 x P^1 onto x0 x3 = x1 x2
    rows = []
    for _ in range(count):
        a = _random_param(rng, field.p)
        b = _random_param(rng, field.p)
        rows.append([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
    P = PointSet.from_coords(rows, field, n=3)
    Q = Form.from_terms(3, 2, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1}, field)
    return apply_projectivity(g, P), Q


def _transform_form(F: Form, g: Projectivity) -> Form:
    """Equation of g(Z(F)): substitute x -> g^-1 x into F."""
    field = F.field
    ginv = g.inverse().matrix.tolist()
    lin = [Form(3, 1, tuple(ginv[i]), field) for i in range(4)]
    acc = [0] * len(F.coeffs)
    for c, e in zip(F.coeffs, monomials(F.d, 3)):
        if c == 0:
            continue
        term = Form(3, 0, (c,), field)
        for i, k in enumerate(e):
            for _ in range(k):
                term = term * lin[i]
        acc = [a + b for a, b in zip(acc, term.coeffs)]
    return Form(3, F.d, tuple(acc), field)


def _attempt(spec: ConfigSpec, rng: Rng) -> Optional[Config]:
    field = spec.field
    curves: List[Optional[RationalCurve]] = []
    params: List[tuple] = []
    blocks: List[PointSet] = []
    extra = []
    for kind, k in zip(spec.components, spec.lengths):
        g = random_projectivity(field, rng)
        if kind == "Plane":
            pts, span = _plane_points(k, g, rng, field)
            curves.append(None)
            params.append(())
            blocks.append(pts)
            extra.append(tuple(span))
            continue
        if kind == "Quadric":
            pts, Q = _quadric_points(k, g, rng, field)
            curves.append(None)
            params.append(())
            blocks.append(pts)
            extra.append(_transform_form(Q, g))
            continue
        C = apply_projectivity(g, standard_curve(kind, field))
        excl = [CUSP] if kind == "PlaneCubic" else []
        if k > CAPACITY[kind]:
            raise CapacityExceeded(f"{kind} carries at most {CAPACITY[kind]} points")
        # sextics cut only a 17-dimensional system on a plane cubic (arithmetic
        # genus 1): the 18th point is the residual intersection, found below
        todo = k - 1 if (kind == "PlaneCubic" and k == CAPACITY[kind]) else k
        ts, pts = sample_on_curve(C, todo, rng, exclude=excl)
        curves.append(C)
        params.append(ts)
        blocks.append(pts)
        extra.append(None)

    lines = [C for C, kind in zip(curves, spec.components) if kind == "Line"]
    if spec.case in ("CaseI", "CaseIII"):
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                pts = [curve_point(lines[i], (1, 0)), curve_point(lines[i], (0, 1)),
                       curve_point(lines[j], (1, 0)), curve_point(lines[j], (0, 1))]
                if rank(Matrix([list(x.coords) for x in pts], field)) != 4:
                    return None

    try:
        allpts = PointSet(tuple(x for b in blocks for x in b), 3, field)
    except DuplicatePoint:
        return None

    sextic = sextic_through(allpts, rng)
    for C in curves:
        if C is not None and restrict(sextic, C).is_zero():
            return None

    for j, (kind, k) in enumerate(zip(spec.components, spec.lengths)):
        if curves[j] is None or len(params[j]) == k:
            continue
        rest = restrict(sextic, curves[j])
        try:
            for t in params[j]:
                rest = rest.divide_linear(t)
        except ValueError:
            return None
        a, b = rest.coeffs
        t = ProjPoint.of((-b, a), field).coords
        if t == CUSP or t in params[j]:
            return None
        params[j] = params[j] + (t,)
        blocks[j] = PointSet(blocks[j].points + (curve_point(curves[j], t),), 3, field)
        try:
            allpts = PointSet(tuple(x for b in blocks for x in b), 3, field)
        except DuplicatePoint:
            return None

    witnesses = []
    start = 0
    for kind, C, b, ex in zip(spec.components, curves, blocks, extra):
        covered = tuple(range(start, start + len(b)))
        start += len(b)
        if kind == "Plane":
            witnesses.append(ComponentWitness("Plane", covered, span=ex))
        elif kind == "Quadric":
            witnesses.append(ComponentWitness("Quadric", covered, form=ex))
        else:
            witnesses.append(_curve_witness(kind, C, covered, allpts, rng))
    return Config(spec, allpts, tuple(witnesses), sextic, tuple(curves), tuple(params))


def sample_config(spec: ConfigSpec) -> Config:
    """Build the configuration described by ``spec``; deterministic per seed."""
    if spec.case == "CI33":
        P, pencil = ci33_p2(spec.field, spec.seed, with_pencil=True)
        ws = tuple(ComponentWitness("PlaneCubic", tuple(range(9)), form=F) for F in pencil)
        return Config(spec, P, ws, None, (), (), pencil)
    for attempt in range(MAX_RETRIES):
        rng = Rng(split_seed(spec.seed, attempt))
        cfg = _attempt(spec, rng)
        if cfg is not None:
            return cfg
    raise RetriesExhausted(f"{spec.case}: no valid configuration in {MAX_RETRIES} attempts")


def curve_roots(cfg: Config) -> List[Optional[list]]:
    """Roots of the sextic restricted to each curve component."""
    out = []
    for C in cfg.curves:
        out.append(None if C is None else binary_form_roots(restrict(cfg.sextic, C)))
    return out


# ---------------------------------------------------------------------------
# complete intersections of two plane cubics


def _x2_specialization(H: Form, x0: int, x1: int, p: int) -> list:
    """H(x0, x1, x2) as a cubic in x2, coefficients low -> high."""
    c = [0, 0, 0, 0]
    for coef, e in zip(H.coeffs, monomials(3, 2)):
        c[e[2]] = (c[e[2]] + coef * pow(x0, e[0], p) * pow(x1, e[1], p)) % p
    return c


def _resultant_at(F: Form, G: Form, x0: int, x1: int, p: int) -> int:
    """Res_{x2}(F, G) at fixed (x0, x1), via the 6x6 Sylvester determinant."""
    f = list(reversed(_x2_specialization(F, x0, x1, p)))
    g = list(reversed(_x2_specialization(G, x0, x1, p)))
    rows = [[0] * k + f + [0] * (2 - k) for k in range(3)]
    rows += [[0] * k + g + [0] * (2 - k) for k in range(3)]
    return int(det(Matrix(rows, FieldSpec(p))))


def ci33_p2(field: FieldSpec, seed, *, with_pencil: bool = False):
    """Nine base points of a random pencil of plane cubics.

    Eight random points fix the pencil; the ninth comes from the degree-9
    resultant in x2, divided by the eight known linear factors.
    """
    if not field.is_prime:
        raise ValueError("ci33_p2 samples over a prime field")
    p = field.p
    rng = _rng(seed)
    for _ in range(MAX_RETRIES):
        rows = [[rng.below(p) for _ in range(3)] for _ in range(8)]
        if any(not any(r) for r in rows):
            continue
        try:
            eight = PointSet.from_coords(rows, field, n=2)
        except DuplicatePoint:
            continue
        pencil = ideal_forms(eight, 3)
        if len(pencil) != 2:
            continue
        # the echelon basis has a zero x2^3 coefficient in one generator
        c = rng.nonzero(p)
        A, G = pencil
        F = Form(2, 3, tuple(a + c * b for a, b in zip(A.coeffs, G.coeffs)), field)
        lead = monomials(3, 2).index((0, 0, 3))
        if F.coeffs[lead] == 0 or G.coeffs[lead] == 0:
            continue
        # binary form in (x0, x1): coefficient i multiplies x0^(9-i) x1^i
        ts = list(range(10))
        vals = [_resultant_at(F, G, 1, t, p) for t in ts]
        res = BinaryForm(tuple(interpolate(ts, vals, p)), field)
        if res.is_zero():
            continue
        known = [(x.coords[0], x.coords[1]) for x in eight]
        proj = {ProjPoint.of(k, field) for k in known}
        if len(proj) != 8:
            continue
        try:
            for k in known:
                res = res.divide_linear(k)
        except ValueError:
            continue
        a, b = res.coeffs  # a*x0 + b*x1
        if a == 0 and b == 0:
            continue
        x0, x1 = (-b) % p, a
        if ProjPoint.of((x0, x1), field) in proj:
            continue
        g = poly_gcd(_x2_specialization(F, x0, x1, p), _x2_specialization(G, x0, x1, p), p)
        if len(g) != 2:
            continue
        x2 = (-g[0]) % p
        ninth = ProjPoint.of((x0, x1, x2), field)
        if F(ninth) != 0 or G(ninth) != 0:
            continue
        try:
            P = PointSet(eight.points + (ninth,), 2, field)
        except DuplicatePoint:
            continue
        return (P, (F, G)) if with_pencil else P
    raise RetriesExhausted("no complete intersection found")
