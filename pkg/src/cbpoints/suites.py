"""Seeded property suites behind ``cbpoints verify``.

Every suite is a function ``trial(index, seed, field) -> str | None`` that
returns ``None`` on success and a short failure description otherwise.
Trial ``i`` of a run with master seed ``s`` uses ``split_seed(s, i)``, so any
single failure can be replayed with ``--only i``.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .classify import classify_cb5, verify_cover
from .conditions import (cb_bruteforce, conditions_imposed, h0_ideal, h1_ideal, hilbert_profile,
                         is_cb, is_independent)
from .errors import DuplicatePoint
from .generate import (CASE_COMPONENTS, CAPACITY, LENGTH_BOUND, ConfigSpec, ci33_p2, curve_roots,
                       random_projectivity, sample_config, sample_on_curve, standard_curve)
from .geometry import PointSet, ProjPoint, apply_projectivity, permute
from .moduli import build_tables, diff_tables, known_discrepancies
from .position import de_hypothesis, position_report
from .scalar import FieldSpec, Rng, split_seed

TY_CASES = ("CaseI", "CaseII", "CaseIII", "CaseIV", "CaseV")

# smallest component sizes the classifier can recognise
MIN_LENGTH = {"TwistedCubic": 9, "Line": 4, "PlaneConic": 6, "PlaneCubic": 8}


@dataclass
class Failure:
    trial: int
    seed: int
    detail: str
    command: str


@dataclass
class SuiteReport:
    name: str
    trials: int
    passes: int
    failures: List[Failure] = dc_field(default_factory=list)
    wall_time: float = 0.0
    warnings: List[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def render(self) -> str:
        lines = [f"suite {self.name}: {self.passes}/{self.trials} passed"]
        for w in self.warnings:
            lines.append(f"  warning: {w}")
        for f in self.failures:
            lines.append(f"  FAIL trial {f.trial} (seed {f.seed}): {f.detail}")
            lines.append(f"    reproduce: {f.command}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# point helpers


def random_points(rng: Rng, field: FieldSpec, n: int, count: int) -> List[ProjPoint]:
    out = []
    while len(out) < count:
        v = [rng.below(field.p) for _ in range(n + 1)]
        if any(v):
            out.append(ProjPoint.of(v, field))
    return out


def points_in_span(rng: Rng, field: FieldSpec, basis: Sequence[ProjPoint], count: int):
    """Random points in the projective span of ``basis``."""
    out = []
    while len(out) < count:
        c = [rng.below(field.p) for _ in basis]
        v = [sum(ci * b.coords[j] for ci, b in zip(c, basis)) for j in range(len(basis[0].coords))]
        if any(x % field.p for x in v):
            out.append(ProjPoint.of(v, field))
    return out


def distinct(points: Sequence[ProjPoint], n: int, field: FieldSpec) -> Optional[PointSet]:
    try:
        return PointSet(tuple(points), n, field)
    except DuplicatePoint:
        return None


def random_lengths(case: str, lo: int, hi: int, rng: Rng) -> Tuple[int, ...]:
    """Uniform choice among component lengths with lo <= total <= hi."""
    kinds = CASE_COMPONENTS[case]
    ranges = [range(MIN_LENGTH[k], CAPACITY[k] + 1) for k in kinds]
    options = [t for t in product(*ranges) if lo <= sum(t) <= hi]
    if not options:
        raise ValueError(f"no {case} lengths with total in [{lo}, {hi}]")
    return options[rng.below(len(options))]


# ---------------------------------------------------------------------------
# trials


def chasles_trial(index: int, seed: int, field: FieldSpec) -> Optional[str]:
    P = ci33_p2(field, seed)
    if not is_cb(P, 3).verdict:
        return "CB(3) fails on the complete intersection"
    h = conditions_imposed(P, 3)
    if h != 8:
        return f"h(3) = {h}, expected 8"
    for drop in range(9):
        if conditions_imposed(P.without(drop), 3) != 8:
            return f"the 8-subset without point {drop} imposes fewer than 8 conditions"
    return None


def davis_eisenbud_trial(index: int, seed: int, field: FieldSpec) -> Optional[str]:
    """Hypothesis-satisfying sets are independent; every eleventh trial checks a violation.

    With 220 trials that is 200 hypothesis draws and 20 violating sets.
    """
    rng = Rng(seed)
    d = 3 + rng.below(3)
    n = 2 + rng.below(2)
    if index % 11 == 10:
        # d + 2 collinear points never impose independent conditions in degree d
        while True:
            a, b = random_points(rng, field, n, 2)
            line = points_in_span(rng, field, (a, b), d + 2)
            rest = random_points(rng, field, n, rng.below(12 - (d + 2) + 1))
            P = distinct(line + rest, n, field)
            if P is not None and len(set(line)) == d + 2 and a != b:
                break
        if de_hypothesis(P, d):
            return f"hypothesis holds with {d + 2} collinear points (d={d})"
        if is_independent(P, d):
            return f"{d + 2} collinear points imposed independent conditions in degree {d}"
        return None
    for _ in range(1000):
        N = 1 + rng.below(12)
        on_line = rng.below(min(N, d + 2) + 1)
        on_plane = rng.below(min(N - on_line, 2 * d + 2) + 1) if n == 3 else 0
        a, b, c = random_points(rng, field, n, 3)
        pts = points_in_span(rng, field, (a, b), on_line)
        if n == 3:
            pts += points_in_span(rng, field, (a, b, c), on_plane)
        pts += random_points(rng, field, n, N - len(pts))
        P = distinct(pts, n, field)
        if P is not None and de_hypothesis(P, d):
            break
    else:
        return "could not draw a configuration satisfying the hypothesis"
    if not is_independent(P, d):
        return (f"{len(P)} points in P^{n} satisfy the hypothesis for d={d} "
                f"but impose {conditions_imposed(P, d)} conditions")
    return None


def cb_oracle_trial(index: int, seed: int, field: FieldSpec) -> Optional[str]:
    rng = Rng(seed)
    n = 2 + rng.below(2)
    m = 1 + rng.below(4)
    N = 2 + rng.below(14)
    # mix in points on a conic or a line so that CB verdicts vary
    special = rng.below(N + 1)
    if rng.below(2):
        C = standard_curve("PlaneConic", field)
        _, S = sample_on_curve(C, special, rng)
        pts = [ProjPoint.of(x.coords[: n + 1], field) for x in S]
    else:
        a, b = random_points(rng, field, n, 2)
        pts = points_in_span(rng, field, (a, b), special) if a != b else []
    pts += random_points(rng, field, n, N - len(pts))
    P = distinct(pts, n, field)
    if P is None:
        return None
    fast = list(is_cb(P, m).failing_points)
    slow = cb_bruteforce(P, m)
    if fast != slow:
        return f"m={m}: rank route fails at {fast}, brute force at {slow}"
    return None


def twisted_cubic_trial(index: int, seed: int, field: FieldSpec) -> Optional[str]:
    rng = Rng(seed)
    g = random_projectivity(field, rng)
    C = apply_projectivity(g, standard_curve("TwistedCubic", field))
    k = 7 + rng.below(6)
    _, P = sample_on_curve(C, k, rng)
    if h0_ideal(P, 2) != 3:
        return f"{k} cubic points lie on {h0_ideal(P, 2)} quadrics, expected 3"
    _, P12 = sample_on_curve(C, 12, rng)
    prof = hilbert_profile(P12, range(1, 5))
    if prof != [4, 7, 10, 12]:
        return f"12-point profile {prof}"
    cfg = sample_config(ConfigSpec("OnTwistedCubic", (18,), field, rng.next_u64()))
    idx = sorted(rng.sample(18, 11))
    if not is_cb(cfg.points.subset(idx), 3).verdict:
        return f"11-point subset {idx} fails CB(3)"
    roots = curve_roots(cfg)[0]
    if len(roots) != 18 or sorted(roots) != sorted(cfg.params[0]):
        return "sextic restriction roots differ from the prescribed parameters"
    return None


def conic_trial(index: int, seed: int, field: FieldSpec) -> Optional[str]:
    rng = Rng(seed)
    cfg = sample_config(ConfigSpec("OnConic", (12,), field, rng.next_u64()))
    idx = sorted(rng.sample(12, 8))
    if not is_cb(cfg.points.subset(idx), 3).verdict:
        return f"8 of 12 conic points ({idx}) fail CB(3)"
    return None


def plane_h1_trial(index: int, seed: int, field: FieldSpec) -> Optional[str]:
    cfg = sample_config(ConfigSpec("OnPlane", (12,), field, seed))
    h0, h1 = h0_ideal(cfg.points, 3), h1_ideal(cfg.points, 3)
    if (h0, h1) != (10, 2):
        return f"12 coplanar points: h0 = {h0}, h1 = {h1}"
    return None


def plane_cubic_trial(index: int, seed: int, field: FieldSpec) -> Optional[str]:
    cfg = sample_config(ConfigSpec("OnPlaneCubic", (11,), field, seed))
    h0 = h0_ideal(cfg.points, 3)
    if h0 != 11:
        return f"11 points on a plane cubic: h0 = {h0}"
    if not is_cb(cfg.points, 3).verdict:
        return "11 points on a plane cubic fail CB(3)"
    return None


def ty_necessity_trial(index: int, seed: int, field: FieldSpec) -> Optional[str]:
    case = TY_CASES[index % len(TY_CASES)]
    rng = Rng(seed)
    total = LENGTH_BOUND[case] - 1
    lengths = random_lengths(case, total, total, rng)
    cfg = sample_config(ConfigSpec(case, lengths, field, rng.next_u64()))
    if is_cb(cfg.points, 5).verdict:
        return f"{case} {lengths} satisfies CB(5) below the length bound"
    return None


ROUNDTRIP_CASES = TY_CASES + ("OnQuadric",)


def roundtrip_spec(index: int, seed: int, field: FieldSpec) -> ConfigSpec:
    case = ROUNDTRIP_CASES[index % len(ROUNDTRIP_CASES)]
    rng = Rng(seed)
    if case == "OnQuadric":
        lengths = (20 + rng.below(11),)
    else:
        lengths = random_lengths(case, LENGTH_BOUND[case], 83, rng)
    return ConfigSpec(case, lengths, field, rng.next_u64())


def classify_roundtrip_trial(index: int, seed: int, field: FieldSpec) -> Optional[str]:
    spec = roundtrip_spec(index, seed, field)
    cfg = sample_config(spec)
    res = classify_cb5(cfg.points, check_cb=False)
    want = "InQuadric" if spec.case == "OnQuadric" else spec.case
    if res.tag != want:
        return f"{spec.case} {spec.lengths} classified as {res.tag} ({res.diagnostic.get('reason')})"
    if want != "InQuadric" and not verify_cover(cfg.points, res.witnesses):
        return "returned witnesses do not verify"
    return None


def _fixture(index: int, seed: int, field: FieldSpec) -> PointSet:
    kinds = TY_CASES + ("OnQuadric", "OnTwistedCubic", "random")
    kind = kinds[index % len(kinds)]
    rng = Rng(seed)
    if kind == "random":
        return PointSet(tuple(random_points(rng, field, 3, 12)), 3, field)
    if kind == "OnQuadric":
        spec = ConfigSpec(kind, (20,), field, rng.next_u64())
    elif kind == "OnTwistedCubic":
        spec = ConfigSpec(kind, (12,), field, rng.next_u64())
    else:
        spec = ConfigSpec(kind, random_lengths(kind, LENGTH_BOUND[kind], LENGTH_BOUND[kind], rng),
                          field, rng.next_u64())
    return sample_config(spec).points


def _signature(P: PointSet):
    rep = position_report(P)
    cb = {m: is_cb(P, m) for m in (3, 5)}
    return {
        "profile": tuple(hilbert_profile(P, range(1, 7))),
        "cb": {m: r.verdict for m, r in cb.items()},
        "failing": {m: frozenset(P[i] for i in r.failing_points) for m, r in cb.items()},
        "collinear": rep.max_collinear[0],
        "coplanar": rep.max_coplanar[0] if rep.max_coplanar else None,
        "lgp": rep.lgp,
        "de": rep.de_hypothesis_by_degree,
        "quadrics": rep.quadric_count,
        "castelnuovo": (rep.castelnuovo, rep.profile),
        "tag": classify_cb5(P, check_cb=False).tag,
    }


METAMORPHIC_TRANSFORMS = 25


def metamorphic_trial(index: int, seed: int, field: FieldSpec) -> Optional[str]:
    """Analysis of a fixture is unchanged by projectivities and reordering."""
    rng = Rng(seed)
    P = _fixture(index, rng.next_u64(), field)
    base = _signature(P)
    for k in range(METAMORPHIC_TRANSFORMS):
        g = random_projectivity(field, rng)
        order = list(range(len(P)))
        rng.shuffle(order)
        Q = permute(apply_projectivity(g, P), order)
        sig = _signature(Q)
        # failing points are compared as point sets after mapping back
        gi = g.inverse()
        sig["failing"] = {m: frozenset(apply_projectivity(gi, x) for x in s)
                          for m, s in sig["failing"].items()}
        for key in base:
            if sig[key] != base[key]:
                return f"transform {k}: {key} changed from {base[key]} to {sig[key]}"
    return None


def tables_trial(index: int, seed: int, field: FieldSpec) -> Optional[str]:
    bad = [m for m in diff_tables(build_tables("table")) if not m.known]
    if bad:
        cells = ", ".join(f"c2={m.row} {m.col}: {m.computed} vs {m.paper}" for m in bad)
        return f"{len(bad)} unexplained mismatches ({cells})"
    return None


SUITES: Dict[str, Callable[[int, int, FieldSpec], Optional[str]]] = {
    "chasles": chasles_trial,
    "davis-eisenbud": davis_eisenbud_trial,
    "cb-oracle": cb_oracle_trial,
    "twisted-cubic": twisted_cubic_trial,
    "conic-cb": conic_trial,
    "plane-h1": plane_h1_trial,
    "plane-cubic-cb": plane_cubic_trial,
    "ty-necessity": ty_necessity_trial,
    "tables": tables_trial,
    "classify-roundtrip": classify_roundtrip_trial,
    "metamorphic": metamorphic_trial,
}

DEFAULT_TRIALS = {"tables": 1}


def reproduce_command(name: str, field: FieldSpec, seed: int, index: int) -> str:
    return f"cbpoints verify --suite {name} --prime {field.p} --seed {seed} --only {index}"


def _run_one(name: str, index: int, seed: int, field: FieldSpec) -> Optional[str]:
    try:
        return SUITES[name](index, split_seed(seed, index), field)
    except Exception as exc:  # a crash is a failed trial, not a crashed suite
        return f"{type(exc).__name__}: {exc}"


def run_suite(name: str, trials: int, field: FieldSpec, seed: int,
              only: Optional[int] = None, workers: int = 1) -> SuiteReport:
    """Run trials (just trial ``only`` if set); results are merged by trial index.

    ``workers > 1`` fans trials out over processes; the report is identical.
    """
    if name not in SUITES:
        raise KeyError(name)
    indices = [only] if only is not None else list(range(trials))
    report = SuiteReport(name, len(indices), 0)
    start = time.perf_counter()
    if workers > 1 and len(indices) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            details = list(pool.map(_run_one, [name] * len(indices), indices,
                                    [seed] * len(indices), [field] * len(indices)))
    else:
        details = [_run_one(name, i, seed, field) for i in indices]
    for i, detail in zip(indices, details):
        if detail is None:
            report.passes += 1
        else:
            report.failures.append(Failure(i, split_seed(seed, i), detail,
                                           reproduce_command(name, field, seed, i)))
    if name == "tables":
        for m in known_discrepancies():
            report.warnings.append(f"known dim-bound discrepancy c2={m.row} ({m.col}): "
                                   f"{m.computed} vs {m.paper}")
    report.wall_time = time.perf_counter() - start
    return report
