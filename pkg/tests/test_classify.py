from dataclasses import replace

import pytest

from cbpoints.classify import CASE_LABELS, ComponentWitness, classify_cb5, verify_cover
from cbpoints.conditions import is_cb
from cbpoints.generate import (ConfigSpec, random_projectivity, sample_config, sample_on_curve,
                               standard_curve)
from cbpoints.geometry import PointSet, ProjPoint, apply_projectivity, permute
from cbpoints.scalar import FieldSpec, Rng

F = FieldSpec(32003)

CASES = [
    ("CaseI", (15, 6, 6)),
    ("CaseII", (15, 12)),
    ("CaseIII", (12, 6, 6, 6)),
    ("CaseIV", (12, 6, 12)),
    ("CaseV", (12, 18)),
]


@pytest.mark.parametrize("case,lengths", CASES)
def test_generated_cases_roundtrip(case, lengths):
    cfg = sample_config(ConfigSpec(case, lengths, F, 21))
    assert verify_cover(cfg.points, cfg.witnesses)
    res = classify_cb5(cfg.points)
    assert res.tag == case
    assert res.label == CASE_LABELS[case]
    assert verify_cover(cfg.points, res.witnesses)
    assert "cb5" in res.diagnostic


def test_quadric_and_random():
    cfg = sample_config(ConfigSpec("OnQuadric", (20,), F, 2))
    res = classify_cb5(cfg.points)
    assert res.tag == "InQuadric" and res.quadric is not None
    assert all(res.quadric(x) == 0 for x in cfg.points)

    rng = Rng(3)
    rows = [[rng.below(F.p) for _ in range(4)] for _ in range(20)]
    P = PointSet.from_coords(rows, F)
    res = classify_cb5(P)
    assert res.tag == "Unclassified"
    assert res.diagnostic["cb5"] is False
    assert not is_cb(P, 5).verdict


def test_verify_cover_rejects_tampering():
    cfg = sample_config(ConfigSpec("CaseI", (15, 6, 6), F, 4))
    ws = list(cfg.witnesses)
    line = next(i for i, w in enumerate(ws) if w.kind == "Line")
    short = ws.copy()
    short[line] = replace(ws[line], covered=ws[line].covered[1:])
    assert not verify_cover(cfg.points, short)
    cubic_pt = next(w for w in ws if w.kind == "RationalCubicSignature").covered[0]
    bad = ws.copy()
    bad[line] = replace(ws[line], covered=ws[line].covered + (cubic_pt,))
    assert not verify_cover(cfg.points, bad)
    assert not verify_cover(cfg.points, [ComponentWitness("Line", ())])


def test_intersecting_lines_are_not_case_one():
    rng = Rng(5)
    tc = apply_projectivity(random_projectivity(F, rng), standard_curve("TwistedCubic", F))
    _, A = sample_on_curve(tc, 15, rng)
    a, b, c = [ProjPoint.of([rng.below(F.p) for _ in range(4)], F) for _ in range(3)]

    def on_line(u, v, k):
        pts = []
        while len(pts) < k:
            t = rng.nonzero(F.p)
            x = ProjPoint.of([ui + t * vi for ui, vi in zip(u.coords, v.coords)], F)
            if x not in pts:
                pts.append(x)
        return pts

    P = PointSet(A.points + tuple(on_line(a, b, 6) + on_line(a, c, 6)), 3, F)
    res = classify_cb5(P)
    assert res.tag == "Unclassified"
    assert "skew" in res.diagnostic["reason"]


@pytest.mark.parametrize("case,lengths", CASES)
def test_tag_stable_under_projectivities(case, lengths):
    cfg = sample_config(ConfigSpec(case, lengths, F, 6))
    rng = Rng(7)
    for _ in range(5):
        g = random_projectivity(F, rng)
        Q = permute(apply_projectivity(g, cfg.points), rng.shuffle(list(range(len(cfg.points)))))
        res = classify_cb5(Q, check_cb=False)
        assert res.tag == case
        assert verify_cover(Q, res.witnesses)


def test_thresholds_are_configurable():
    cfg = sample_config(ConfigSpec("CaseI", (15, 6, 6), F, 8))
    res = classify_cb5(cfg.points, line_threshold=7, check_cb=False)
    assert res.tag == "Unclassified"
