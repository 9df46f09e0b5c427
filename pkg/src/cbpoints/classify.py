"""Classification of CB(5) point sets in P^3 into the five curve-union shapes.

The classifier is a semi-decision procedure.  It peels structure off in a
fixed order: a quadric through everything, then lines carrying at least four
points, then coplanar groups lying on a plane conic or plane cubic, and
finally a core that must carry the Hilbert profile of a rational normal
cubic.  Any case tag it returns comes with witnesses that are re-verified
exactly; everything else is reported as ``Unclassified``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .conditions import ideal_forms, is_cb
from .errors import AllCollinear, CbError
from .geometry import Form, PlaneChart, PointSet, ProjPoint, Subspace, plane_through
from .linalg import Matrix, rank
from .position import (castelnuovo_signature, line_members, max_collinear, max_coplanar,
                       plane_members, quadrics_through)

KINDS = ("RationalCubicSignature", "Line", "PlaneConic", "PlaneCubic", "Plane", "Quadric")

CASE_SHAPES = {
    ("Line", "Line"): "CaseI",
    ("PlaneConic",): "CaseII",
    ("Line", "Line", "Line"): "CaseIII",
    ("Line", "PlaneConic"): "CaseIV",
    ("PlaneCubic",): "CaseV",
}

CASE_LABELS = {
    "CaseI": "Case I",
    "CaseII": "Case II",
    "CaseIII": "Case III",
    "CaseIV": "Case IV",
    "CaseV": "Case V",
    "InQuadric": "contained in a quadric",
    "Unclassified": "Unclassified",
}


@dataclass(frozen=True)
class ComponentWitness:
    """One component of a curve union together with the points it covers.

    ``span`` holds the spanning points of a line or plane.  For plane curves
    ``form`` is the curve's equation in the coordinates of
    :class:`~cbpoints.geometry.PlaneChart` built on ``span`` (or directly in
    P^2 when the ambient space is the plane).  A rational cubic is certified
    by its net of ``quadrics`` and the Hilbert ``profile`` of its points.
    """

    kind: str
    covered: Tuple[int, ...]
    span: Tuple[ProjPoint, ...] = ()
    form: Optional[Form] = None
    quadrics: Tuple[Form, ...] = ()
    profile: Tuple[int, ...] = ()


@dataclass(frozen=True)
class Classification:
    tag: str
    witnesses: Tuple[ComponentWitness, ...] = ()
    quadric: Optional[Form] = None
    diagnostic: Dict[str, object] = dc_field(default_factory=dict)

    @property
    def label(self) -> str:
        return CASE_LABELS[self.tag]


# ---------------------------------------------------------------------------
# verification


def _span_rank(points: Sequence[ProjPoint], field) -> int:
    return rank(Matrix([list(p.coords) for p in points], field))


def _check_witness(P: PointSet, w: ComponentWitness) -> bool:
    field = P.field
    pts = [P[i] for i in w.covered]
    if w.kind == "Line":
        if len(w.span) != 2 or _span_rank(w.span, field) != 2:
            return False
        L = Subspace(tuple(w.span), field)
        return all(L.contains(x) for x in pts)
    if w.kind in ("Plane", "PlaneConic", "PlaneCubic"):
        if P.n == 2 and w.kind != "Plane":
            coords = pts
        else:
            if P.n != 3 or len(w.span) != 3 or _span_rank(w.span, field) != 3:
                return False
            H = Subspace(tuple(w.span), field)
            if not all(H.contains(x) for x in pts):
                return False
            if w.kind == "Plane":
                return True
            chart = PlaneChart(H)
            coords = [chart.coords(x) for x in pts]
        deg = 2 if w.kind == "PlaneConic" else 3
        F = w.form
        if F is None or F.n != 2 or F.d != deg or F.is_zero():
            return False
        return all(F(u) == 0 for u in coords)
    if w.kind == "Quadric":
        F = w.form
        if F is None or F.d != 2 or F.n != P.n or F.is_zero():
            return False
        return all(F(x) == 0 for x in pts)
    if w.kind == "RationalCubicSignature":
        qs = w.quadrics
        if len(qs) != 3 or any(q.d != 2 or q.n != 3 for q in qs):
            return False
        if rank(Matrix([list(q.coeffs) for q in qs], field)) != 3:
            return False
        if not all(q(x) == 0 for q in qs for x in pts):
            return False
        if len(pts) >= 9:
            sig, profile = castelnuovo_signature(P.subset(w.covered))
            return sig and tuple(profile) == tuple(w.profile)
        return True
    return False


def verify_cover(P: PointSet, witnesses: Sequence[ComponentWitness]) -> bool:
    """Every point is covered and every witness's evidence holds exactly."""
    covered = set()
    for w in witnesses:
        if not w.covered or any(not 0 <= i < len(P) for i in w.covered):
            return False
        try:
            if not _check_witness(P, w):
                return False
        except (CbError, ValueError, ZeroDivisionError):
            return False
        covered.update(w.covered)
    return covered == set(range(len(P)))


def lines_pairwise_skew(lines: Sequence[ComponentWitness], field) -> bool:
    for a, b in combinations(lines, 2):
        if _span_rank(tuple(a.span) + tuple(b.span), field) != 4:
            return False
    return True


# ---------------------------------------------------------------------------
# the cascade


def classify_cb5(P: PointSet, *, line_threshold: int = 4, conic_threshold: int = 6,
                 cubic_threshold: int = 8, check_cb: bool = True) -> Classification:
    """Match P against the five curve-union shapes.

    The thresholds are the minimum group sizes that count as a line, a plane
    conic and a plane cubic respectively.
    """
    if P.n != 3:
        raise ValueError("classify_cb5 needs ambient P^3")
    diag: Dict[str, object] = {"points": len(P)}
    if check_cb:
        diag["cb5"] = is_cb(P, 5).verdict

    qs = quadrics_through(P)
    diag["quadric_count"] = len(qs)
    if qs:
        return Classification("InQuadric", (), qs[0], diag)

    remaining = list(range(len(P)))
    found: List[ComponentWitness] = []

    while len(remaining) >= line_threshold:
        sub = P.subset(remaining)
        count, (a, b) = max_collinear(sub)
        if count < line_threshold:
            break
        members = [remaining[k] for k in line_members(sub, a, b)]
        found.append(ComponentWitness("Line", tuple(members),
                                      span=(P[remaining[a]], P[remaining[b]])))
        drop = set(members)
        remaining = [i for i in remaining if i not in drop]

    while len(remaining) >= conic_threshold:
        sub = P.subset(remaining)
        try:
            count, (a, b, c) = max_coplanar(sub)
        except AllCollinear:
            break
        if count < conic_threshold:
            break
        members = [remaining[k] for k in plane_members(sub, a, b, c)]
        span = (P[remaining[a]], P[remaining[b]], P[remaining[c]])
        chart = PlaneChart(plane_through(*span, P.field))
        flat = chart.pointset(P, members)
        conics = ideal_forms(flat, 2)
        if conics:
            w = ComponentWitness("PlaneConic", tuple(members), span=span, form=conics[0])
        elif count >= cubic_threshold and (cubics := ideal_forms(flat, 3)):
            w = ComponentWitness("PlaneCubic", tuple(members), span=span, form=cubics[0])
        else:
            break
        found.append(w)
        drop = set(members)
        remaining = [i for i in remaining if i not in drop]

    diag["peeled"] = [(w.kind, len(w.covered)) for w in found]
    diag["core_size"] = len(remaining)

    def unclassified(reason):
        diag["reason"] = reason
        return Classification("Unclassified", tuple(found), None, diag)

    if len(remaining) < 9:
        return unclassified("residual core has fewer than 9 points")
    core = P.subset(remaining)
    sig, profile = castelnuovo_signature(core)
    diag["core_profile"] = profile
    if not sig:
        return unclassified("residual core lacks the rational normal cubic profile")
    net = quadrics_through(core)
    if len(net) != 3:
        return unclassified(f"residual core lies on {len(net)} independent quadrics, not 3")
    cubic = ComponentWitness("RationalCubicSignature", tuple(remaining),
                             quadrics=tuple(net), profile=tuple(profile))

    shape = tuple(sorted(w.kind for w in found))
    tag = CASE_SHAPES.get(shape)
    if tag is None:
        return unclassified(f"component shape {shape} matches no case")
    lines = [w for w in found if w.kind == "Line"]
    if tag in ("CaseI", "CaseIII") and not lines_pairwise_skew(lines, P.field):
        return unclassified("line witnesses are not pairwise skew")
    witnesses = tuple([cubic] + found)
    if not verify_cover(P, witnesses):
        return unclassified("witness verification failed")
    return Classification(tag, witnesses, None, diag)
