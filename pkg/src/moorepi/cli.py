"""Command-line front end.

Exit codes: 0 success, 1 internal error, 2 input or fact gap, 3 verification
failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .abelian import group_of_type, smith_normal_form
from .errors import FactGap, ParseError, ValidationError
from .extensions import resolve_extension
from .facts import FactBase, dangling_scan, load, validate
from .notation import format_factors, format_iso, parse_iso
from .pipeline import DEFAULT_R_SET, ReportEntry, pipeline_for, verify_tables

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_FAIL = 0, 1, 2, 3


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _custom_facts(args) -> str | None:
    return args.facts or os.environ.get("MOOREPI_FACTS") or None


def _load(args) -> FactBase:
    return load(_custom_facts(args))


def _gate(fb: FactBase, r_values: Sequence[int]) -> None:
    """Raise ValidationError on the first finding of a user-supplied fact file."""
    for r in sorted(set(r_values)):
        found = validate(fb, fb.default_env(r))
        if found:
            f = found[0]
            raise ValidationError(f.record, f"{f.kind}: {f.message} (r={r}, {len(found)} findings)")


def _r_list(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad r list {text!r}") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("r values must be positive")
    return out


# ---------------------------------------------------------------- commands

def cmd_compute(args) -> int:
    fb = _load(args)
    if _custom_facts(args):
        _gate(fb, [args.r])
    comp = pipeline_for(args.r, fb).pi_moore(args.n, args.i)
    shown = format_iso(comp.iso)
    if args.json:
        entry = ReportEntry(f"pi_{args.i}(P^{args.n}(2^r))", args.r, "", shown,
                            "PASS" if comp.exact and comp.order_identity else "FAIL", comp.digest())
        doc = entry.to_json()
        if args.trace:
            doc["trace"] = comp.trace
        print(json.dumps(doc, indent=2))
    else:
        if args.trace:
            for line in comp.trace:
                print(line)
        print(shown)
    return EXIT_OK


def cmd_verify(args) -> int:
    fb = _load(args)
    r_set = args.r_set or list(DEFAULT_R_SET)
    if _custom_facts(args):
        _gate(fb, r_set)
    report = verify_tables(fb, r_set, params_sweep=args.params_sweep, targets=args.target or None)
    if args.json:
        print(json.dumps(report.to_json(), indent=2, ensure_ascii=False))
    else:
        for e in report.entries:
            line = f"{e.status:8s} {e.target:22s} r={e.r:<2d} expected {e.expected:32s} computed {e.computed}"
            if e.status == "ERRATUM":
                line += f"  (corrected {e.erratum})"
            elif e.detail:
                line += f"  [{e.detail}]"
            print(line)
        c = report.counts()
        print(", ".join(f"{k} {v}" for k, v in c.items()) + f"  ({report.seconds:.2f} s)")
    return EXIT_FAIL if report.failures else EXIT_OK


def cmd_facts_validate(args) -> int:
    fb = load(args.path or _custom_facts(args))
    findings = []
    for r in args.r_set or [1]:
        for f in validate(fb, fb.default_env(r)):
            if f not in findings:
                findings.append(f)
    for f in findings:
        print(f)
    counts = fb.counts()
    print(f"{len(findings)} findings; dangling {dangling_scan(fb)}; "
          + ", ".join(f"{k} {v}" for k, v in counts.items()))
    return EXIT_INPUT if findings else EXIT_OK


def _read_matrix(spec: str) -> list[list[int]]:
    if spec.lstrip().startswith("["):
        text = spec
    elif spec == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(spec).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(0, f"cannot read {spec}: {exc.strerror}") from None
    text = text.strip()
    try:
        if text.startswith("["):
            rows = json.loads(text)
        else:
            rows = [[int(t) for t in line.replace(",", " ").split()] for line in text.splitlines() if line.strip()]
    except (ValueError, json.JSONDecodeError) as exc:
        raise ParseError(0, f"bad matrix: {exc}") from None
    if (not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows)
            or len({len(r) for r in rows}) != 1 or not all(isinstance(x, int) for r in rows for x in r)):
        raise ParseError(0, "matrix must be a nonempty rectangular list of integer rows")
    return rows


def cmd_snf(args) -> int:
    M = _read_matrix(args.matrix)
    U, S, V = smith_normal_form(M)
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    if args.json:
        print(json.dumps({"diag": diag, "U": U, "S": S, "V": V}))
    else:
        print(f"diag({', '.join(map(str, diag))})")
        print(f"U = {U}")
        print(f"S = {S}")
        print(f"V = {V}")
    return EXIT_OK


def cmd_ext(args) -> int:
    A = group_of_type(parse_iso(args.sub))
    C = group_of_type(parse_iso(args.quot))
    isos = sorted(resolve_extension(A, C).isos, key=lambda t: (t.free_rank, t.torsion))
    print(", ".join(format_factors(t) for t in isos))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="moorepi", description="Homotopy groups of mod 2^r Moore spaces.")
    p.add_argument("--version", action="version", version=f"moorepi {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    def facts_flag(sp):
        sp.add_argument("--facts", help="fact file (default: $MOOREPI_FACTS or the bundled core.json)")

    c = sub.add_parser("compute", help="compute pi_i(P^n(2^r))")
    c.add_argument("-n", type=int, required=True)
    c.add_argument("-r", type=int, required=True)
    c.add_argument("-i", type=int, required=True)
    c.add_argument("--trace", action="store_true", help="print the step log")
    c.add_argument("--json", action="store_true", help="emit a report entry")
    facts_flag(c)
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="recompute the expected tables")
    v.add_argument("--r-set", type=_r_list, help="comma separated exponents (default 1,2,3,4,8)")
    v.add_argument("--params-sweep", action="store_true", help="re-run with every sampled parameter value")
    v.add_argument("--target", action="append", help="table id such as P9.pi15 (repeatable)")
    v.add_argument("--json", action="store_true")
    facts_flag(v)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("facts-validate", help="run the consistency checks on a fact file")
    f.add_argument("path", nargs="?")
    f.add_argument("--r-set", type=_r_list, help="exponents to validate under (default 1)")
    facts_flag(f)
    f.set_defaults(func=cmd_facts_validate)

    s = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    s.add_argument("matrix", help="file, '-' for stdin, or a literal like [[2,4],[6,8]]")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_snf)

    e = sub.add_parser("ext", help="middle groups of extensions 0 -> A -> X -> C -> 0")
    e.add_argument("--sub", required=True, help="A, e.g. '2' or '(2)^2 + 4'")
    e.add_argument("--quot", required=True, help="C")
    e.set_defaults(func=cmd_ext)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FactGap, ParseError, ValidationError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    except ValueError as exc:
        # malformed group or matrix input
        _err(f"input error: {exc}")
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        _err(f"internal error: {type(exc).__name__}: {exc}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
