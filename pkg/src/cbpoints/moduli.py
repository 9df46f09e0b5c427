"""Dimension bookkeeping for moduli of rank-2 bundles on a sextic surface.

Two sources for the bound on dim M(H, c2) are kept apart: ``"prop"`` (the
closed formula max(2c2 - 2, 4c2 - 33) above c2 = 12) and ``"table"`` (the
printed column).  Boundary strata dimensions are bound(c2 - d) + 3d.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import OutOfRange

ROWS = tuple(range(5, 20))
DCOLS = tuple(range(1, 15))
TABLE1_COLS = tuple(range(1, 10))
TABLE2_COLS = tuple(range(10, 15))

# bounds for c2 = 5..12 shared by both sources; None marks an empty moduli space
_SMALL = {5: 2, 6: 3, 7: None, 8: 7, 9: 10, 10: 11, 11: 13, 12: 19}

_ABSENT = None

# Verbatim strata entries, rows c2 = 5..19.  None stands for "--".
_ = None
TABLE1 = {
    # c2: (e.d, dim bound, d=1..9); the dim bound -1 is printed for an empty space
    5: (-19, 2, [_, _, _, _, _, _, _, _, _]),
    6: (-15, 3, [5, _, _, _, _, _, _, _, _]),
    7: (-11, -1, [_, _, _, _, _, _, _, _, _]),
    8: (-7, 7, [_, 9, 11, _, _, _, _, _, _]),
    9: (-3, 10, [10, _, 12, 14, _, _, _, _, _]),
    10: (1, 11, [13, 13, _, 15, 17, _, _, _, _]),
    11: (5, 13, [14, 16, 16, _, 18, 20, _, _, _]),
    12: (9, 19, [16, 17, 19, 19, _, 21, 23, _, _]),
    13: (13, 24, [22, 19, 20, 22, 22, _, 24, 26, _]),
    14: (17, 26, [27, 25, 22, 23, 25, 25, _, 27, 29]),
    15: (21, 28, [29, 30, 28, 25, 26, 28, 28, _, 30]),
    16: (25, 30, [31, 32, 33, 31, 28, 28, 31, 31, _]),
    17: (29, 34, [33, 34, 35, 36, 34, 31, 31, 34, 34]),
    18: (33, 38, [37, 36, 37, 38, 39, 37, 34, 34, 37]),
    19: (37, 42, [41, 40, 39, 40, 41, 42, 40, 37, 37]),
}
TABLE2 = {
    # c2: (e.d, dim bound, d=10..14)
    5: (-19, 2, [_, _, _, _, _]),
    6: (-15, 3, [_, _, _, _, _]),
    7: (-11, -1, [_, _, _, _, _]),
    8: (-7, 7, [_, _, _, _, _]),
    9: (-3, 10, [_, _, _, _, _]),
    10: (1, 11, [_, _, _, _, _]),
    11: (5, 20, [_, _, _, _, _]),
    12: (9, 22, [_, _, _, _, _]),
    13: (13, 24, [_, _, _, _, _]),
    14: (17, 26, [_, _, _, _, _]),
    15: (21, 28, [32, _, _, _, _]),
    16: (25, 30, [33, 35, _, _, _]),
    17: (29, 34, [_, 36, 38, _, _]),
    18: (33, 38, [37, _, 39, 41, _]),
    19: (37, 42, [40, 40, _, 42, 44]),
}
del _


@dataclass(frozen=True)
class DimBound:
    c2: int
    value: Optional[int]  # None: the moduli space is empty

    @property
    def empty(self) -> bool:
        return self.value is None


@dataclass(frozen=True)
class StrataTable:
    source: str
    rows: Tuple[int, ...]
    expected: Dict[int, int]
    bounds: Dict[int, DimBound]
    entries: Dict[Tuple[int, int], Optional[int]]

    def entry(self, c2: int, d: int) -> Optional[int]:
        return self.entries[(c2, d)]


@dataclass(frozen=True)
class Mismatch:
    kind: str  # "strata" or "dim-bound"
    row: int
    col: str
    computed: Optional[int]
    paper: Optional[int]
    known: bool
    note: str = ""


def euler_char(c2: int) -> int:
    if c2 < 0:
        raise OutOfRange("c2 must be non-negative")
    return 19 - c2


def expected_dim(c2: int) -> int:
    if c2 < 0:
        raise OutOfRange("c2 must be non-negative")
    return 4 * c2 - 39


def dim_bound_prop(c2: int) -> DimBound:
    if c2 <= 4:
        raise OutOfRange(f"c2 = {c2}: the moduli space is empty for c2 <= 4")
    if c2 in _SMALL:
        return DimBound(c2, _SMALL[c2])
    return DimBound(c2, max(2 * c2 - 2, 4 * c2 - 33))


def dim_bound_table(c2: int) -> DimBound:
    if c2 not in TABLE1:
        raise OutOfRange(f"c2 = {c2} is outside the printed rows 5..19")
    v = TABLE1[c2][1]
    return DimBound(c2, None if v == -1 else v)


def dim_bound(c2: int, source: str = "table") -> DimBound:
    """Bound from the chosen source; empty below c2 = 5."""
    if c2 <= 4:
        return DimBound(c2, None)
    if source == "prop":
        return dim_bound_prop(c2)
    if source == "table":
        return dim_bound_table(c2)
    raise ValueError(f"unknown source {source!r}")


def strata_dim(base: DimBound, d: int) -> Optional[int]:
    """Upper bound for the stratum with double dual in M(H, c2 - d)."""
    if d < 1:
        raise ValueError("d must be at least 1")
    if base.empty:
        return _ABSENT
    return base.value + 3 * d


def build_tables(source: str = "table") -> StrataTable:
    bounds = {c2: dim_bound(c2, source) for c2 in ROWS}
    entries = {}
    for c2 in ROWS:
        for d in DCOLS:
            # an empty moduli space has an empty compactification, hence no boundary
            if bounds[c2].empty:
                entries[(c2, d)] = _ABSENT
            else:
                entries[(c2, d)] = strata_dim(dim_bound(c2 - d, source), d)
    return StrataTable(source, ROWS, {c2: expected_dim(c2) for c2 in ROWS}, bounds, entries)


def paper_entry(c2: int, d: int) -> Optional[int]:
    if d in TABLE1_COLS:
        return TABLE1[c2][2][d - 1]
    return TABLE2[c2][2][d - 10]


def _paper_bound(table: dict, c2: int) -> Optional[int]:
    v = table[c2][1]
    return None if v == -1 else v


def known_discrepancies() -> List[Mismatch]:
    """Disagreements inside the printed material itself.

    Compares the closed-form bound with the Table 1 column, and the Table 1
    column with the Table 2 column.
    """
    out = []
    for c2 in ROWS:
        prop = dim_bound_prop(c2).value
        t1 = _paper_bound(TABLE1, c2)
        if prop != t1:
            out.append(Mismatch("dim-bound", c2, "prop vs table1", prop, t1, True,
                                "max(2c2-2, 4c2-33) disagrees with the printed column"))
    for c2 in ROWS:
        t1, t2 = _paper_bound(TABLE1, c2), _paper_bound(TABLE2, c2)
        if t1 != t2:
            out.append(Mismatch("dim-bound", c2, "table1 vs table2", t1, t2, True,
                                "the two printed tables disagree"))
    return out


def diff_tables(computed: StrataTable) -> List[Mismatch]:
    """Entries of ``computed`` that differ from the printed tables."""
    out = []
    for c2 in computed.rows:
        if computed.expected[c2] != TABLE1[c2][0] or computed.expected[c2] != TABLE2[c2][0]:
            out.append(Mismatch("e.d", c2, "e.d", computed.expected[c2], TABLE1[c2][0], False))
        for d in DCOLS:
            got, want = computed.entries[(c2, d)], paper_entry(c2, d)
            if got != want:
                out.append(Mismatch("strata", c2, f"d={d}", got, want, False))
    known = {(m.row, m.col) for m in known_discrepancies()}
    for c2 in computed.rows:
        got = computed.bounds[c2].value
        for name, table in (("table1", TABLE1), ("table2", TABLE2)):
            want = _paper_bound(table, c2)
            if got != want:
                col = f"{computed.source} vs {name}"
                is_known = (c2, col) in known or (
                    computed.source == "table" and (c2, "table1 vs table2") in known)
                out.append(Mismatch("dim-bound", c2, col, got, want, is_known))
    return out


# ---------------------------------------------------------------------------
# rendering


def _cell(v: Optional[int]) -> str:
    return "--" if v is None else str(v)


def render_text(table: StrataTable) -> str:
    lines = []
    for title, cols in (("Table 1", TABLE1_COLS), ("Table 2", TABLE2_COLS)):
        lines.append(f"% {title}: upper bounds of dimensions of strata (source: {table.source})")
        head = ["c2", "e.d", "dim(M) <="] + [f"d={d}" for d in cols]
        lines.append(" & ".join(head) + " \\\\")
        for c2 in table.rows:
            b = table.bounds[c2].value
            cells = [str(c2), str(table.expected[c2]), str(-1 if b is None else b)]
            cells += [_cell(table.entries[(c2, d)]) for d in cols]
            lines.append(" & ".join(cells) + " \\\\")
        lines.append("")
    return "\n".join(lines)


def render_csv(table: StrataTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["c2", "ed", "dim_bound"] + [f"d{d}" for d in DCOLS])
    for c2 in table.rows:
        b = table.bounds[c2].value
        row = [c2, table.expected[c2], "" if b is None else b]
        row += ["" if table.entries[(c2, d)] is None else table.entries[(c2, d)] for d in DCOLS]
        w.writerow(row)
    return buf.getvalue()


def render_diff(mismatches: List[Mismatch]) -> str:
    if not mismatches:
        return "% no mismatches against the printed tables\n"
    lines = ["% mismatches against the printed tables"]
    for m in mismatches:
        tag = "known" if m.known else "MISMATCH"
        lines.append(f"% [{tag}] {m.kind} c2={m.row} {m.col}: computed {_cell(m.computed)}, "
                     f"printed {_cell(m.paper)}")
    return "\n".join(lines) + "\n"
