"""Plain-text point-set files, the witness sidecar and sextic coefficient files.

Point files look like::

    # comment
    field p=32003          (or: field rational)
    ambient n=3
    point 1 0 5 7
    point 0 1 2 3

Coordinates are integers, reduced mod p on load.  Points are stored
normalized (first nonzero coordinate 1); over Q they are written as
primitive integer vectors with a positive leading entry.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from .classify import ComponentWitness
from .errors import CbError, MalformedFile
from .geometry import Form, PointSet, ProjPoint, monomials
from .scalar import RATIONALS, FieldSpec, field_new

PathLike = Union[str, Path]


def parse_points(text: str) -> PointSet:
    field: Optional[FieldSpec] = None
    n: Optional[int] = None
    pts: List[ProjPoint] = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        key = tok[0]
        if key == "field":
            if field is not None or pts:
                raise MalformedFile("field header must appear once, before any point", lineno)
            if len(tok) != 2:
                raise MalformedFile("expected 'field p=<prime>' or 'field rational'", lineno)
            if tok[1] == "rational":
                field = RATIONALS
            elif tok[1].startswith("p="):
                try:
                    field = field_new(int(tok[1][2:]))
                except ValueError as exc:
                    raise MalformedFile(f"bad field: {exc}", lineno) from None
            else:
                raise MalformedFile(f"unknown field {tok[1]!r}", lineno)
        elif key == "ambient":
            if n is not None or pts:
                raise MalformedFile("ambient header must appear once, before any point", lineno)
            if len(tok) != 2 or tok[1] not in ("n=2", "n=3"):
                raise MalformedFile("expected 'ambient n=2' or 'ambient n=3'", lineno)
            n = int(tok[1][2:])
        elif key == "point":
            if field is None or n is None:
                raise MalformedFile("point before the field and ambient headers", lineno)
            if len(tok) != n + 2:
                raise MalformedFile(f"expected {n + 1} coordinates, got {len(tok) - 1}", lineno)
            try:
                coords = [int(c) for c in tok[1:]]
            except ValueError:
                raise MalformedFile("coordinates must be integers", lineno) from None
            try:
                pt = ProjPoint.of(coords, field)
            except ValueError:
                raise MalformedFile("the zero vector is not a point", lineno) from None
            if pt in seen:
                raise MalformedFile(f"duplicate point (same as line {seen[pt]})", lineno)
            seen[pt] = lineno
            pts.append(pt)
        else:
            raise MalformedFile(f"unknown directive {key!r}", lineno)
    if field is None or n is None:
        raise MalformedFile("missing field or ambient header")
    return PointSet(tuple(pts), n, field)


def integer_coords(pt: ProjPoint, field: FieldSpec) -> Tuple[int, ...]:
    if field.is_prime:
        return tuple(int(c) for c in pt.coords)
    fr = [Fraction(c) for c in pt.coords]
    den = lcm(*(f.denominator for f in fr))
    ints = [int(f * den) for f in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    return tuple(-v for v in ints) if lead < 0 else tuple(ints)


def format_points(P: PointSet, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"field {P.field}")
    lines.append(f"ambient n={P.n}")
    for pt in P:
        lines.append("point " + " ".join(str(c) for c in integer_coords(pt, P.field)))
    return "\n".join(lines) + "\n"


def load_points(path: PathLike) -> PointSet:
    return parse_points(Path(path).read_text())


def save_points(P: PointSet, path: PathLike, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_points(P, comments))


# ---------------------------------------------------------------------------
# witness sidecar (JSON) and sextic coefficients


def _form_json(F: Optional[Form]):
    if F is None:
        return None
    return {"n": F.n, "d": F.d, "coeffs": [str(c) for c in F.coeffs]}


def _form_from_json(obj, field: FieldSpec) -> Optional[Form]:
    if obj is None:
        return None
    vals = [field.reduce(Fraction(c)) for c in obj["coeffs"]]
    return Form(obj["n"], obj["d"], tuple(vals), field)


def witness_to_json(w: ComponentWitness, field: FieldSpec) -> dict:
    return {
        "kind": w.kind,
        "covered": list(w.covered),
        "span": [list(integer_coords(x, field)) for x in w.span],
        "form": _form_json(w.form),
        "quadrics": [_form_json(q) for q in w.quadrics],
        "profile": list(w.profile),
    }


def witness_from_json(obj: dict, field: FieldSpec) -> ComponentWitness:
    return ComponentWitness(
        kind=obj["kind"],
        covered=tuple(obj["covered"]),
        span=tuple(ProjPoint.of(c, field) for c in obj.get("span", [])),
        form=_form_from_json(obj.get("form"), field),
        quadrics=tuple(_form_from_json(q, field) for q in obj.get("quadrics", [])),
        profile=tuple(obj.get("profile", [])),
    )


def format_sidecar(meta: dict, witnesses: Sequence[ComponentWitness], field: FieldSpec) -> str:
    doc = dict(meta)
    doc["witnesses"] = [witness_to_json(w, field) for w in witnesses]
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_sidecar(text: str, field: FieldSpec) -> Tuple[dict, Tuple[ComponentWitness, ...]]:
    try:
        doc = json.loads(text)
        ws = tuple(witness_from_json(w, field) for w in doc.pop("witnesses"))
    except (KeyError, TypeError, ValueError, CbError) as exc:
        raise MalformedFile(f"bad witness sidecar: {exc}") from None
    return doc, ws


def format_form(F: Form) -> str:
    """One header line and one coefficient per monomial, graded-lex order."""
    lines = [f"form n={F.n} d={F.d} field {F.field}"]
    for e, c in zip(monomials(F.d, F.n), F.coeffs):
        lines.append(" ".join(str(v) for v in e) + f" {c}")
    return "\n".join(lines) + "\n"


def parse_form(text: str) -> Form:
    lines = [l for l in text.splitlines() if l.strip() and not l.startswith("#")]
    if not lines:
        raise MalformedFile("empty form file")
    head = lines[0].split()
    try:
        if head[0] != "form" or head[3] != "field":
            raise ValueError
        n, d = int(head[1][2:]), int(head[2][2:])
        field = RATIONALS if head[4] == "rational" else field_new(int(head[4][2:]))
    except (IndexError, ValueError):
        raise MalformedFile("expected 'form n=<n> d=<d> field <field>'", 1) from None
    mons = monomials(d, n)
    if len(lines) - 1 != len(mons):
        raise MalformedFile(f"expected {len(mons)} coefficients, got {len(lines) - 1}")
    coeffs = []
    for k, (e, l) in enumerate(zip(mons, lines[1:]), start=2):
        tok = l.split()
        if tuple(int(v) for v in tok[:-1]) != e:
            raise MalformedFile(f"monomial {tok[:-1]} out of order", k)
        coeffs.append(field.reduce(Fraction(tok[-1])))
    return Form(n, d, tuple(coeffs), field)
