"""Command-line interface: ``cbpoints analyze | generate | verify | tables``.

Exit codes: 0 success, 1 usage, 2 verification failure, 3 bad input.
Timings go to stderr; stdout and written files depend only on the flags.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional

from .classify import classify_cb5
from .conditions import conditions_imposed, h0_ideal, h1_ideal, is_cb
from .errors import CbError, MalformedFile, RetriesExhausted
from .generate import ConfigSpec, sample_config
from .moduli import build_tables, diff_tables, render_csv, render_diff, render_text
from .pointfile import format_form, format_points, format_sidecar, load_points
from .position import castelnuovo_signature, de_hypothesis, is_lgp, max_collinear, max_coplanar
from .scalar import DEFAULT_PRIME, field_new
from .suites import DEFAULT_TRIALS, SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2, 3

CASE_NAMES = {
    "I": "CaseI", "II": "CaseII", "III": "CaseIII", "IV": "CaseIV", "V": "CaseV",
    "plane": "OnPlane", "conic": "OnConic", "plane-cubic": "OnPlaneCubic",
    "twisted-cubic": "OnTwistedCubic", "quadric": "OnQuadric", "ci33": "CI33",
}

DEFAULT_LENGTHS = {
    "CaseI": (15, 6, 6), "CaseII": (15, 12), "CaseIII": (12, 6, 6, 6), "CaseIV": (12, 6, 12),
    "CaseV": (12, 18), "OnPlane": (12,), "OnConic": (12,), "OnPlaneCubic": (11,),
    "OnTwistedCubic": (18,), "OnQuadric": (20,), "CI33": (),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _degrees(text: str) -> List[int]:
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
        if lo < 0 or hi < lo:
            raise argparse.ArgumentTypeError(f"bad degree range {text!r}")
        return list(range(lo, hi + 1))
    return [int(v) for v in text.split(",")]


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _tf(b: bool) -> str:
    return "true" if b else "false"


# ---------------------------------------------------------------------------
# analyze


def cmd_analyze(args) -> int:
    try:
        P = load_points(args.file)
    except (MalformedFile, OSError) as exc:
        print(f"error: {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = [f"points: {len(P)}", f"ambient: P^{P.n}", f"field: {P.field}"]
    for d in args.degrees:
        out.append(f"degree {d}: h_P = {conditions_imposed(P, d)}, h0(J_P) = {h0_ideal(P, d)}, "
                   f"h1(J_P) = {h1_ideal(P, d)}")
    for m in args.cb:
        rep = is_cb(P, m)
        line = f"CB({m}): {_tf(rep.verdict)}"
        if not rep.verdict:
            line += " failing points " + " ".join(str(i) for i in rep.failing_points)
        out.append(line)
    if len(P) >= 2:
        count, (i, j) = max_collinear(P)
        out.append(f"max collinear: {count} (line through points {i} {j})")
    if P.n == 3 and len(P) >= 3:
        try:
            count, tri = max_coplanar(P)
            out.append(f"max coplanar: {count} (plane through points {' '.join(map(str, tri))})")
        except CbError:
            out.append("max coplanar: all points collinear")
    out.append(f"linearly general position: {_tf(is_lgp(P))}")
    for d in args.degrees:
        if d >= 2:
            out.append(f"independence hypothesis d={d}: {_tf(de_hypothesis(P, d))}")
    if P.n == 3:
        sig, profile = castelnuovo_signature(P)
        out.append(f"rational normal cubic signature: {_tf(sig)} profile "
                   + " ".join(map(str, profile)))
    if args.classify:
        if P.n != 3:
            out.append("classification: needs ambient P^3")
        else:
            res = classify_cb5(P, check_cb=False)
            out.append(f"classification: {res.label}")
            for w in res.witnesses:
                out.append(f"  {w.kind}: points " + " ".join(map(str, w.covered)))
            if "reason" in res.diagnostic:
                out.append(f"  reason: {res.diagnostic['reason']}")
    print("\n".join(out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# generate


def cmd_generate(args) -> int:
    case = CASE_NAMES[args.case]
    lengths = tuple(args.lengths) if args.lengths is not None else DEFAULT_LENGTHS[case]
    try:
        field = field_new(args.prime)
        spec = ConfigSpec(case, lengths, field, args.seed)
    except (CbError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = sample_config(spec)
    except RetriesExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    P = cfg.points
    meta = {
        "case": case,
        "lengths": list(lengths),
        "prime": field.p,
        "seed": args.seed,
        "points": len(P),
    }
    if P.n == 3:
        meta["cb5"] = is_cb(P, 5).verdict
    else:
        meta["cb3"] = is_cb(P, 3).verdict
    comments = [f"case {args.case} lengths {','.join(map(str, lengths)) or '-'} seed {args.seed}"]
    text = format_points(P, comments)
    if args.output is None:
        sys.stdout.write(text)
        return EXIT_OK
    out = Path(args.output)
    out.write_text(text)
    Path(str(out) + ".witness.json").write_text(format_sidecar(meta, cfg.witnesses, field))
    if cfg.sextic is not None:
        Path(str(out) + ".sextic").write_text(format_form(cfg.sextic))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify and tables


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r}; known: {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_USAGE
    try:
        field = field_new(args.prime)
    except CbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    trials = args.trials if args.trials is not None else DEFAULT_TRIALS.get(args.suite, 100)
    rep = run_suite(args.suite, trials, field, args.seed, only=args.only, workers=args.jobs)
    sys.stdout.write(rep.render())
    print(f"wall time {rep.wall_time:.2f}s", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_tables(args) -> int:
    table = build_tables(args.source)
    if args.format == "csv":
        sys.stdout.write(render_csv(table))
        return EXIT_OK
    sys.stdout.write(render_text(table))
    sys.stdout.write(render_diff(diff_tables(table)))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cbpoints", description="Cayley-Bacharach point configurations.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="report Hilbert function, CB verdicts and position")
    a.add_argument("file")
    a.add_argument("--degrees", type=_degrees, default=[1, 2, 3])
    a.add_argument("--cb", type=_int_list, default=[])
    a.add_argument("--classify", action="store_true")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("generate", help="sample a configuration with witnesses")
    g.add_argument("--case", required=True, choices=list(CASE_NAMES))
    g.add_argument("--lengths", type=_int_list)
    g.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="run a seeded property suite")
    v.add_argument("--suite", required=True)
    v.add_argument("--trials", type=int)
    v.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--only", type=int, help="run just this trial index")
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tables", help="render the strata dimension tables")
    t.add_argument("--source", choices=["prop", "table"], default="table")
    t.add_argument("--format", choices=["text", "csv"], default="text")
    t.set_defaults(func=cmd_tables)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except CbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    print(f"[{args.command}] {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
