from math import comb

from hypothesis import given, settings, strategies as st

from cbpoints.conditions import (cb_bruteforce, cb_failing_by_rank, cb_failing_by_span,
                                 conditions_imposed, h0_ideal, h1_ideal, hilbert_profile,
                                 is_cb, is_independent, residual_split)
from cbpoints.generate import (ConfigSpec, ci33_p2, random_projectivity, sample_config,
                               sample_on_curve, standard_curve)
from cbpoints.geometry import Form, PointSet, ProjPoint, apply_projectivity, plane_through
from cbpoints.linalg import kernel_basis
from cbpoints.scalar import FieldSpec, Rng
from oracles import cb_failing_oracle, conditions_oracle

F = FieldSpec(32003)


def on_curve(kind, count, seed):
    rng = Rng(seed)
    C = apply_projectivity(random_projectivity(F, rng), standard_curve(kind, F))
    return sample_on_curve(C, count, rng)[1]


def random_set(rng, n, count):
    pts = []
    while len(pts) < count:
        v = [rng.below(F.p) for _ in range(n + 1)]
        if any(v):
            x = ProjPoint.of(v, F)
            if x not in pts:
                pts.append(x)
    return PointSet(tuple(pts), n, F)


def test_conditions_imposed_examples():
    assert conditions_imposed(PointSet.from_coords([(1, 2, 3, 4)], F), 2) == 1
    assert conditions_imposed(on_curve("Line", 5, 1), 1) == 2
    tc = on_curve("TwistedCubic", 12, 2)
    assert conditions_imposed(tc, 3) == 10
    assert conditions_imposed(tc, 3) == conditions_oracle([x.coords for x in tc], 3, 3, F.p)


def test_h0_examples():
    assert h0_ideal(PointSet((), 3, F), 2) == 10
    for k in (7, 9, 18):
        assert h0_ideal(on_curve("TwistedCubic", k, k), 2) == 3
    cfg = sample_config(ConfigSpec("OnPlaneCubic", (11,), F, 4))
    assert h0_ideal(cfg.points, 3) == 11


def test_h1_examples():
    assert h1_ideal(random_set(Rng(3), 3, 10), 3) == 0
    cfg = sample_config(ConfigSpec("OnPlane", (12,), F, 5))
    assert h1_ideal(cfg.points, 3) == 2
    assert h1_ideal(ci33_p2(F, 6), 3) == 1


def test_is_independent_examples():
    assert is_independent(random_set(Rng(4), 3, 4), 1)
    assert not is_independent(on_curve("Line", 6, 5), 4)
    assert not is_independent(random_set(Rng(5), 3, comb(5, 3) + 1), 2)


def test_is_cb_examples():
    single = PointSet.from_coords([(1, 0, 0, 0)], F)
    for m in range(4):
        assert not is_cb(single, m).verdict
    for m in range(1, 5):
        assert is_cb(on_curve("Line", m + 2, m), m).verdict
        assert not is_cb(on_curve("Line", m + 1, m), m).verdict
    assert is_cb(ci33_p2(F, 7), 3).verdict
    cfg = sample_config(ConfigSpec("OnConic", (12,), F, 8))
    sub = cfg.points.subset(Rng(1).sample(12, 8))
    rep = is_cb(sub, 3)
    assert rep.verdict and rep.failing_points == ()


def test_cb_report_invariants():
    P = random_set(Rng(6), 3, 14)
    rep = is_cb(P, 2)
    assert rep.verdict == (not rep.failing_points)
    assert all(h in (rep.h0_full, rep.h0_full + 1) for h in rep.h0_drops)
    assert rep.h0_full == h0_ideal(P, 2)
    for i, h in enumerate(rep.h0_drops):
        assert h == h0_ideal(P.without(i), 2)


def configs():
    """Mixed configurations: random points plus a block on a conic or a line."""
    @st.composite
    def build(draw):
        rng = Rng(draw(st.integers(0, 2**40)))
        n = draw(st.sampled_from([2, 3]))
        N = draw(st.integers(1, 12))
        special = draw(st.integers(0, N))
        kind = draw(st.sampled_from(["PlaneConic", "Line"]))
        _, S = sample_on_curve(standard_curve(kind, F), special, rng)
        pts = [ProjPoint.of(x.coords[: n + 1], F) for x in S]
        while len(pts) < N:
            v = [rng.below(F.p) for _ in range(n + 1)]
            if any(v) and ProjPoint.of(v, F) not in pts:
                pts.append(ProjPoint.of(v, F))
        return PointSet(tuple(pts), n, F)
    return build()


@settings(max_examples=100, deadline=None)
@given(configs(), st.integers(0, 4))
def test_cb_routes_agree_with_oracles(P, m):
    fast = list(is_cb(P, m).failing_points)
    assert fast == cb_bruteforce(P, m)
    assert fast == cb_failing_by_rank(P, m)
    assert fast == cb_failing_by_span(P, m)
    assert fast == cb_failing_oracle([x.coords for x in P], m, P.n, F.p)


@settings(max_examples=40, deadline=None)
@given(configs())
def test_conservation_and_monotonicity(P):
    prof = hilbert_profile(P, range(0, 7))
    assert prof == sorted(prof)
    for d, h in enumerate(prof):
        assert h0_ideal(P, d) + h == comb(d + P.n, P.n)
        assert h <= len(P)
    for i in range(len(P)):
        assert 0 <= h0_ideal(P.without(i), 3) - h0_ideal(P, 3) <= 1


def test_residual_split_examples():
    P = random_set(Rng(7), 3, 8)
    never = Form.from_terms(3, 0, {(0, 0, 0, 0): 1}, F)
    on, off = residual_split(P, never)
    assert len(on) == 0 and off == P

    cfg = sample_config(ConfigSpec("OnPlane", (6,), F, 9))
    both = cfg.points.union(random_set(Rng(8), 3, 5))
    a, b, c = cfg.points[:3]
    H = plane_through(a, b, c, F)
    normal = kernel_basis(H.matrix())[0]
    plane = Form(3, 1, tuple(normal), F)
    on, off = residual_split(both, plane)
    assert on == cfg.points and len(off) == 5

    # twisted cubic plus a line; a plane through three cubic points
    rng = Rng(10)
    tc = apply_projectivity(random_projectivity(F, rng), standard_curve("TwistedCubic", F))
    ln = apply_projectivity(random_projectivity(F, rng), standard_curve("Line", F))
    _, A = sample_on_curve(tc, 9, rng)
    _, B = sample_on_curve(ln, 5, rng)
    Q = A.union(B)
    normal = kernel_basis(plane_through(A[0], A[1], A[2], F).matrix())[0]
    plane = Form(3, 1, tuple(normal), F)
    on, off = residual_split(Q, plane)
    assert len(on) == 3 and list(on) == list(A[:3])
    assert [plane(x) == 0 for x in Q].count(True) == 3
