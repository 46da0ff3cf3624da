"""Command-line entry point: ``charmeans <command> ...``.

Exit codes: 0 success, 1 a verification suite reported failures,
2 usage or domain error, 3 work budget or capacity exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .characters import distinct_S, enumerate_q, set_S
from .errors import CapacityError, DomainError
from .mean_values import S_total, compute_constant, l1_series, residue_prefactor, transition_scan
from .verify import SUITES, failures

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

REPORT_FIELDS = [
    "order", "X", "Y", "total_re", "total_im", "power_part", "remainder_re", "remainder_im",
    "predictor", "ratio", "moduli_count", "char_count", "elapsed_ms", "truncated",
]

EPILOG = """\
CSV columns
  verify     identity, params, discrepancy, pass
             (summary line "# suite=... checks=... failures=... max_discrepancy=..." goes to stderr)
  sum, scan  order, X, Y, total_re, total_im, power_part, remainder_re, remainder_im,
             predictor, ratio, moduli_count, char_count, elapsed_ms, truncated
             (elapsed_ms is empty unless --timing is given)
  constants  order, C, euler_product, prime_cutoff, tail_bound, residue_prefactor, L1
  chars      q, m, exponent   (exponent j means chi(m) = e(j/order); empty means chi(m) = 0)

Environment
  CHARMEANS_NORM_CAP  largest ring norm for which residue systems are enumerated (default 1e5)
  CHARMEANS_BUDGET    work budget for sum/scan in character evaluations (default 1e10)
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _y_list(text: str) -> list[float]:
    try:
        ys = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None
    if not ys:
        raise argparse.ArgumentTypeError("empty Y list")
    return ys


def _positive_int(text: str) -> int:
    v = int(float(text))
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1,
                        help="worker processes for sum/scan (1 = sequential reference path)")
    common.add_argument("--norm-cap", type=_positive_int, help="override CHARMEANS_NORM_CAP")
    common.add_argument("--budget", type=float, help="override CHARMEANS_BUDGET")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings (breaks byte-identical output)")

    p = _Parser(prog="charmeans", description="Cubic and quartic character sums: identity checks, sums and constants.",
                epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run an identity suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES))
    v.add_argument("--order", type=int, required=True, choices=(3, 4))
    v.add_argument("--max-norm", type=_positive_int, default=1000,
                   help="norm bound for ring suites, modulus bound for tau/poisson/pv, prime bound for bijection")

    s = sub.add_parser("sum", parents=[common], help="evaluate S(X, Y) once")
    s.add_argument("--order", type=int, required=True, choices=(3, 4))
    s.add_argument("--x", type=float, required=True)
    s.add_argument("--y", type=float, required=True)
    s.add_argument("--method", choices=("direct", "period"), default="period")
    s.add_argument("--per-generator", action="store_true", help="count one character per generator q, repeats included")

    sc = sub.add_parser("scan", parents=[common], help="S(X, Y) over several Y")
    sc.add_argument("--order", type=int, required=True, choices=(3, 4))
    sc.add_argument("--x", type=float, required=True)
    sc.add_argument("--y-list", type=_y_list, required=True)
    sc.add_argument("--per-generator", action="store_true")

    c = sub.add_parser("constants", parents=[common], help="main-term constant and its Euler product")
    c.add_argument("--order", type=int, required=True, choices=(3, 4))
    c.add_argument("--cutoff", type=_positive_int, default=10**6)

    ch = sub.add_parser("chars", parents=[common], help="generators q and character tables of modulus n")
    ch.add_argument("--order", type=int, required=True, choices=(3, 4))
    ch.add_argument("--n", type=_positive_int, required=True)
    ch.add_argument("--distinct", action="store_true", help="merge generators giving the same table")
    return p


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return repr(v)
    return v


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _cmd_verify(args) -> tuple[str, int]:
    if args.suite == "supplement" and args.order != 4:
        raise DomainError("the supplement suite is quartic only (use --order 4)")
    checks = SUITES[args.suite](args.order, args.max_norm)
    bad = len(failures(checks))
    worst = max((c.discrepancy for c in checks), default=0.0)
    summary = {"suite": args.suite, "order": args.order, "max_norm": args.max_norm,
               "checks": len(checks), "failures": bad, "max_discrepancy": worst}
    print("# " + " ".join(f"{k}={v}" for k, v in summary.items()), file=sys.stderr)
    if args.format == "json":
        text = _json({"summary": summary, "checks": [c._asdict() for c in checks]})
    else:
        text = _csv(["identity", "params", "discrepancy", "pass"],
                    ([c.identity, c.params, repr(c.discrepancy), str(c.passed).lower()] for c in checks))
    return text, EXIT_FAIL if bad else EXIT_OK


def _reports_out(args, reports) -> str:
    dicts = [r.as_dict(timing=args.timing) for r in reports]
    if args.format == "json":
        return _json(dicts[0] if args.command == "sum" else dicts)
    return _csv(REPORT_FIELDS, ([_cell(d[k]) for k in REPORT_FIELDS] for d in dicts))


def _cmd_sum(args) -> tuple[str, int]:
    rep = S_total(args.order, args.x, args.y, args.method, distinct=not args.per_generator,
                  threads=args.threads, budget=args.budget)
    return _reports_out(args, [rep]), EXIT_OK


def _cmd_scan(args) -> tuple[str, int]:
    reps = transition_scan(args.order, args.x, args.y_list, distinct=not args.per_generator,
                           threads=args.threads, budget=args.budget)
    if reps and reps[-1].truncated:
        print(f"# budget exhausted at Y={reps[-1].Y}; later Y values skipped", file=sys.stderr)
    return _reports_out(args, reps), EXIT_OK


def _cmd_constants(args) -> tuple[str, int]:
    res = compute_constant(args.order, args.cutoff)
    row = {"order": args.order, "C": res.value, "euler_product": res.euler_product,
           "prime_cutoff": res.prime_cutoff, "tail_bound": res.tail_bound,
           "residue_prefactor": str(residue_prefactor(args.order)), "L1": l1_series(args.order)}
    if args.format == "json":
        return _json(row), EXIT_OK
    return _csv(list(row), [[_cell(v) for v in row.values()]]), EXIT_OK


def _cmd_chars(args) -> tuple[str, int]:
    tables = distinct_S(args.n, args.order) if args.distinct else set_S(args.n, args.order)
    if not tables:
        raise DomainError(f"{args.n} has a prime factor that is not 1 mod {args.order}")
    if args.format == "json":
        return _json({
            "order": args.order,
            "n": args.n,
            "q": [str(q) for q in enumerate_q(args.n, args.order)],
            "tables": [{"q": str(t.q), "values": [None if v < 0 else v for v in t.values.tolist()]} for t in tables],
        }), EXIT_OK
    rows = ([str(t.q), m, "" if v < 0 else v] for t in tables for m, v in enumerate(t.values.tolist()))
    return _csv(["q", "m", "exponent"], rows), EXIT_OK


COMMANDS = {"verify": _cmd_verify, "sum": _cmd_sum, "scan": _cmd_scan, "constants": _cmd_constants, "chars": _cmd_chars}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.budget is not None:
        args.budget = int(args.budget)
    saved_cap = os.environ.get("CHARMEANS_NORM_CAP")
    if args.norm_cap is not None:
        os.environ["CHARMEANS_NORM_CAP"] = str(args.norm_cap)
    try:
        text, code = COMMANDS[args.command](args)
    except CapacityError as exc:  # BudgetExceeded included
        print(f"charmeans: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DomainError as exc:
        print(f"charmeans: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if saved_cap is None:
            os.environ.pop("CHARMEANS_NORM_CAP", None)
        else:
            os.environ["CHARMEANS_NORM_CAP"] = saved_cap
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:  # reader went away (e.g. piped into head)
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
