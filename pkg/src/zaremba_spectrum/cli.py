"""Command-line interface.

Exit codes: 0 success (or agreement), 1 classification disagreement, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from . import chains, markoff, nielsen, spectrum, zaremba
from .rational_core import Chain, QuadraticSurd, cf_from_rat, exact_string, to_decimal

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def parse_fraction(text: str) -> Fraction:
    try:
        num, _, den = text.strip().partition("/")
        if not den:
            raise ValueError
        n, d = int(num), int(den)
    except ValueError:
        raise UsageError(f"expected a fraction a/b, got {text!r}") from None
    if d == 0:
        raise UsageError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def _q(x: Fraction) -> str:
    return exact_string(x)


class Output:
    """A command result: a JSON payload plus a flat table for CSV and plain text."""

    def __init__(
        self,
        payload: dict,
        header: Sequence[str],
        rows: Sequence[Sequence[Any]],
        exit_code: int = EXIT_OK,
        record: bool = False,
    ):
        self.payload = payload
        self.header = list(header)
        self.rows = [list(r) for r in rows]
        self.exit_code = exit_code
        self.record = record  # one row, shown as key/value lines in plain mode

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.payload, indent=2, ensure_ascii=False) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.header)
            w.writerows(self.rows)
            return buf.getvalue()
        lines = []
        if self.record:
            width = max(len(h) for h in self.header)
            lines += [f"{h.ljust(width)}  {v}" for h, v in zip(self.header, self.rows[0])]
        else:
            lines.append("\t".join(self.header))
            lines += ["\t".join(str(v) for v in r) for r in self.rows]
        return "\n".join(lines) + "\n"


def _surd(x: QuadraticSurd, digits: int) -> dict:
    return x.to_dict(digits)


# commands -------------------------------------------------------------------


def cmd_compute(args) -> Output:
    x = parse_fraction(args.fraction)
    if not 0 < x < 1:
        raise UsageError(f"fraction must lie in (0, 1), got {_q(x)}")
    a, b = x.numerator, x.denominator
    brute = zaremba.z_bruteforce(a, b)
    perron = zaremba.z_perron(a, b)
    if brute.value != perron.value:
        raise AssertionError(f"Perron and brute force disagree at {a}/{b}")
    canonical = cf_from_rat(x, "canonical")
    even = cf_from_rat(x, "even")
    payload = {
        "command": "compute",
        "fraction": _q(x),
        "value": _q(brute.value),
        "witness_q": brute.witness_q,
        "perron_index": perron.witness_index,
        "chain_canonical": str(canonical),
        "chain_even": str(even),
        "admissible": brute.value > chains.THIRD,
    }
    header = list(payload)[1:]
    return Output(payload, header, [[payload[h] for h in header]], record=True)


def cmd_spectrum(args) -> Output:
    if args.bound < 2:
        raise UsageError("--bound must be >= 2")
    threshold = parse_fraction(args.threshold)
    if threshold < 0:
        raise UsageError("--threshold must be nonnegative")
    if args.mode == "brute":
        groups = spectrum.bruteforce_spectrum(args.bound, threshold)
        payload = {
            "command": "spectrum",
            "mode": "brute",
            "bound": args.bound,
            "threshold": _q(threshold),
            "count": len(groups),
            "points": [{"value": _q(v), "witnesses": [_q(w) for w in ws]} for v, ws in groups],
        }
        rows = [[_q(v), " ".join(_q(w) for w in ws)] for v, ws in groups]
        return Output(payload, ["value", "witnesses"], rows)
    if args.mode == "classified":
        points = [p for p in spectrum.classified_spectrum(args.bound) if p.value > threshold]
        payload = {
            "command": "spectrum",
            "mode": "classified",
            "bound": args.bound,
            "threshold": _q(threshold),
            "count": len(points),
            "points": [
                {
                    "value": _q(p.value),
                    "witness": _q(p.witness),
                    "denominator": p.denominator,
                    "provenance": [pr.to_dict() for pr in p.provenance],
                }
                for p in points
            ],
        }
        rows = [[_q(p.value), _q(p.witness), "; ".join(map(str, p.provenance))] for p in points]
        return Output(payload, ["value", "witness", "provenance"], rows)
    report = spectrum.verify_classification(args.bound)
    payload = {
        "command": "spectrum",
        "mode": "verify",
        "bound": args.bound,
        "agree": report.agree,
        "count": len(report.brute_set),
        "brute_set": [_q(v) for v in report.brute_set],
        "classified_set": [_q(v) for v in report.classified_set],
        "missing_from_classified": [_q(v) for v in report.missing_from_classified],
        "missing_from_brute": [_q(v) for v in report.missing_from_brute],
    }
    header = ["bound", "agree", "count", "missing_from_classified", "missing_from_brute"]
    row = [
        args.bound,
        report.agree,
        len(report.brute_set),
        " ".join(payload["missing_from_classified"]),
        " ".join(payload["missing_from_brute"]),
    ]
    return Output(payload, header, [row], EXIT_OK if report.agree else EXIT_DISAGREE, record=True)


def cmd_chain(args) -> Output:
    chain = Chain.parse(args.chain)
    payload: dict[str, Any] = {"command": "chain", "action": args.action, "chain": str(chain)}
    if args.action == "canonical":
        payload["canonical"] = str(chains.canonicalize_chain(chain))
    elif args.action == "zeta":
        value, index = chains.perron_value(chain)
        payload.update(value=_q(1 / value), perron_index=index)
    else:
        reason = chains.rejection_reason(chain)
        value, _ = chains.perron_value(chain)
        payload.update(
            admissible=reason is None,
            reason=None if reason is None else reason.tag.value,
            location=None if reason is None else reason.location,
            value=_q(1 / value),
        )
    header = list(payload)[1:]
    return Output(payload, header, [["" if payload[h] is None else payload[h] for h in header]], record=True)


def cmd_nielsen(args) -> Output:
    psi = nielsen.NielsenWord(args.word)
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    payload: dict[str, Any] = {"command": "nielsen", "action": args.action, "word": psi.letters}
    if args.action == "build":
        chain = nielsen.build_r(psi, args.k)
        payload.update(
            k=args.k,
            ab_word=nielsen.family_word(psi, args.k).letters,
            chain=str(chain),
            rho=_q(chains.rho(chain)),
        )
    elif args.action == "zeta":
        payload.update(k=args.k, value=_q(nielsen.z_closed_form(psi, args.k)))
    elif args.action == "limit":
        lim = markoff.limit_of_family(psi)
        payload.update(limit=_surd(lim, args.digits), exact=str(lim))
    else:
        t = markoff.trace_triple(psi)
        payload.update(
            x=t.x, y=t.y, z=t.z, z_prime=markoff.z_prime(t), matrix_form_ok=markoff.matrix_form_check(psi)
        )
    flat = {k: v for k, v in payload.items() if k not in ("command", "limit")}
    if "limit" in payload:
        flat["decimal"] = payload["limit"]["decimal"]
    return Output(payload, list(flat), [list(flat.values())], record=True)


def cmd_markoff(args) -> Output:
    if args.action == "tree":
        triples = markoff.markoff_tree(args.max)
        payload = {
            "command": "markoff",
            "action": "tree",
            "max": args.max,
            "count": len(triples),
            "triples": [list(t.as_tuple()) for t in triples],
        }
        return Output(payload, ["x", "y", "z"], [t.as_tuple() for t in triples])
    points = spectrum.limit_points_above_third(args.max, args.digits)
    payload = {
        "command": "markoff",
        "action": "limits",
        "max": args.max,
        "count": len(points),
        "limits": [{"m": lp.m, "exact": str(lp.value), "value": _surd(lp.value, args.digits)} for lp, _ in points],
    }
    return Output(payload, ["m", "exact", "decimal"], [[lp.m, str(lp.value), d] for lp, d in points])


def cmd_below_third(args) -> Output:
    try:
        ns = [int(s) for s in args.ns.split(",")]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {args.ns!r}") from None
    r = spectrum.below_third_value(ns)
    payload = {
        "command": "below-third",
        "ns": ns,
        "chain": str(r.chain),
        "value": _q(r.z),
        "gap": _q(r.epsilon_bound),
        "in_window": r.in_window,
        "section_formula": None if r.section_formula is None else _q(r.section_formula),
        "decimal": to_decimal(r.z, args.digits),
    }
    flat = {k: v for k, v in payload.items() if k != "command"}
    flat["ns"] = ",".join(map(str, ns))
    return Output(payload, list(flat), [["" if v is None else v for v in flat.values()]], record=True)


# parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    common.add_argument("--digits", type=int, default=12, help="digits for decimal renderings (default 12)")

    parser = argparse.ArgumentParser(
        prog="zaremba-spectrum", description="Exact computations on the Zaremba spectrum above 1/3."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="Z(a/b) with witnesses")
    p.add_argument("fraction")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("spectrum", parents=[common], help="spectrum points up to a denominator bound")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--threshold", default="1/3")
    p.add_argument("--mode", choices=["brute", "classified", "verify"], default="verify")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("chain", parents=[common], help="admissibility, Z or canonical form of a chain")
    p.add_argument("chain")
    p.add_argument("action", choices=["check", "zeta", "canonical"])
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("nielsen", parents=[common], help="family r_k of a Nielsen word over UV")
    p.add_argument("word")
    p.add_argument("action", choices=["build", "zeta", "limit", "triple"])
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_nielsen)

    p = sub.add_parser("markoff", parents=[common], help="Markoff triples and limit points")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("action", choices=["tree", "limits"])
    p.set_defaults(func=cmd_markoff)

    p = sub.add_parser("below-third", parents=[common], help="Z of R(n1, ..., nk) just below 1/3")
    p.add_argument("ns")
    p.set_defaults(func=cmd_below_third)
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.digits < 1:
        print("error: --digits must be >= 1", file=stderr)
        return EXIT_USAGE
    func: Callable[[Any], Output] = args.func
    try:
        out = func(args)
    except (ValueError, NotImplementedError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(out.render(args.format))
    return out.exit_code


if __name__ == "__main__":
    sys.exit(main())
