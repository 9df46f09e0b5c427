from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cbpoints.errors import AllCollinear, TooFew
from cbpoints.generate import random_projectivity, sample_on_curve, standard_curve
from cbpoints.geometry import PointSet, ProjPoint, apply_projectivity, permute
from cbpoints.position import (castelnuovo_signature, de_hypothesis, is_lgp, line_members,
                               max_collinear, max_coplanar, plane_members, position_report,
                               quadrics_through)
from cbpoints.scalar import FieldSpec, Rng
from oracles import rank_mod_p

F = FieldSpec(32003)


def on_curve(kind, count, rng):
    C = apply_projectivity(random_projectivity(F, rng), standard_curve(kind, F))
    return sample_on_curve(C, count, rng)[1]


def random_set(rng, count, n=3):
    pts = []
    while len(pts) < count:
        v = [rng.below(F.p) for _ in range(n + 1)]
        if any(v) and ProjPoint.of(v, F) not in pts:
            pts.append(ProjPoint.of(v, F))
    return PointSet(tuple(pts), n, F)


def collinear_oracle(P):
    X = [x.coords for x in P]
    best = (0, None)
    for i, j in combinations(range(len(X)), 2):
        c = sum(1 for x in X if rank_mod_p([X[i], X[j], x], F.p) == 2)
        if c > best[0]:
            best = (c, (i, j))
    return best


def coplanar_oracle(P):
    X = [x.coords for x in P]
    best = (0, None)
    for t in combinations(range(len(X)), 3):
        base = [X[k] for k in t]
        if rank_mod_p(base, F.p) < 3:
            continue
        c = sum(1 for x in X if rank_mod_p(base + [x], F.p) == 3)
        if c > best[0]:
            best = (c, t)
    return best


def test_max_collinear_examples():
    rng = Rng(1)
    assert max_collinear(on_curve("Line", 6, rng))[0] == 6
    assert max_collinear(on_curve("TwistedCubic", 12, rng))[0] == 2
    R = random_set(rng, 10)
    assert max_collinear(R)[0] >= 2
    assert max_collinear(R) == collinear_oracle(R)
    with pytest.raises(TooFew):
        max_collinear(PointSet.from_coords([(1, 0, 0, 0)], F))


def test_max_coplanar_examples():
    rng = Rng(2)
    g = random_projectivity(F, rng)
    rows = [(1, 2, 3, 0), (0, 1, 4, 0), (1, 7, 1, 0), (5, 1, 1, 0), (1, 1, 1, 1)]
    P = apply_projectivity(g, PointSet.from_coords(rows, F))
    assert max_coplanar(P)[0] == 4
    assert max_coplanar(on_curve("TwistedCubic", 12, rng))[0] == 3
    skew = on_curve("Line", 6, rng).union(on_curve("Line", 6, rng))
    assert max_coplanar(skew) == coplanar_oracle(skew)
    assert max_coplanar(skew)[0] == 7
    with pytest.raises(AllCollinear):
        max_coplanar(on_curve("Line", 4, rng))
    with pytest.raises(TooFew):
        max_coplanar(PointSet.from_coords([(1, 0, 0, 0), (0, 1, 0, 0)], F))


def test_members_match_counts():
    rng = Rng(3)
    P = on_curve("Line", 5, rng).union(on_curve("PlaneConic", 7, rng)).union(random_set(rng, 3))
    c, (i, j) = max_collinear(P)
    assert len(line_members(P, i, j)) == c == 5
    c, (a, b, d) = max_coplanar(P)
    assert len(plane_members(P, a, b, d)) == c


def test_de_hypothesis_examples():
    rng = Rng(4)
    five = on_curve("Line", 5, rng).union(random_set(rng, 3))
    assert not de_hypothesis(five, 3)
    assert de_hypothesis(on_curve("TwistedCubic", 12, rng), 4)
    seven = on_curve("PlaneConic", 7, rng)
    assert not de_hypothesis(seven, 2)
    # twelve points on a twisted cubic pass the line and plane checks for d = 3
    # but are too many for the whole space (3*3 + 1 = 10)
    assert not de_hypothesis(on_curve("TwistedCubic", 12, rng), 3)


def test_castelnuovo_examples():
    rng = Rng(5)
    ok, prof = castelnuovo_signature(on_curve("TwistedCubic", 12, rng))
    assert ok and prof == [4, 7, 10, 12]
    ok, prof = castelnuovo_signature(random_set(rng, 12))
    assert not ok and prof[1] == 10
    assert not castelnuovo_signature(on_curve("TwistedCubic", 8, rng))[0]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**40), st.integers(9, 18))
def test_castelnuovo_on_cubic_subsets(seed, k):
    rng = Rng(seed)
    P = on_curve("TwistedCubic", 18, rng)
    sub = P.subset(sorted(rng.sample(18, k)))
    assert castelnuovo_signature(sub)[0]
    assert not castelnuovo_signature(random_set(rng, k))[0]


def test_quadrics_through_examples():
    rng = Rng(6)
    assert quadrics_through(random_set(rng, 10)) == []
    qs = quadrics_through(on_curve("TwistedCubic", 7, rng))
    assert len(qs) == 3
    assert len(quadrics_through(on_curve("Line", 4, rng))) == 7


def test_report_invariants():
    rng = Rng(7)
    P = on_curve("TwistedCubic", 10, rng)
    rep = position_report(P)
    assert rep.lgp == (rep.max_collinear[0] <= 2 and rep.max_coplanar[0] <= 3)
    assert rep.lgp and rep.castelnuovo and rep.quadric_count == 3
    assert is_lgp(P)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**40))
def test_report_invariant_under_projectivities(seed):
    rng = Rng(seed)
    P = on_curve("TwistedCubic", 9, rng).union(on_curve("Line", 4, rng))
    base = position_report(P)
    for _ in range(25):
        g = random_projectivity(F, rng)
        Q = permute(apply_projectivity(g, P), rng.shuffle(list(range(len(P)))))
        rep = position_report(Q)
        assert rep.max_collinear[0] == base.max_collinear[0]
        assert rep.max_coplanar[0] == base.max_coplanar[0]
        assert (rep.lgp, rep.quadric_count, rep.castelnuovo, rep.profile) == \
            (base.lgp, base.quadric_count, base.castelnuovo, base.profile)
        assert rep.de_hypothesis_by_degree == base.de_hypothesis_by_degree


def test_planar_ambient():
    rng = Rng(8)
    P = random_set(rng, 5, n=2)
    assert max_collinear(P) == collinear_oracle(P)
    assert de_hypothesis(P, 2)
    assert not de_hypothesis(random_set(rng, 8, n=2), 3)
