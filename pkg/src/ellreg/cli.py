"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 precision
insufficient (or a determinant that vanishes at precision), 4 a selfcheck
identity failed.
"""

from __future__ import annotations

import argparse
import sys

from .criteria import survey_primes, zeta_conjugacy
from .padic import PrecisionContext
from .regulators import ZERO_AT_PRECISION
from .reports import (
    FieldSession,
    artin_report,
    divisor_report,
    dumps,
    embed_report,
    eta_report,
    logvec_report,
    regulator_report,
    render_text,
    us2_report,
)
from .selfcheck import run_selfcheck
from .specfile import load_field

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_PRECISION, EXIT_IDENTITY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ell", type=int, help="the prime (defaults to the field file's)")
    common.add_argument("--precision", "-N", dest="precision", type=int, default=12,
                        help="working precision N (default 12)")
    common.add_argument("--slack", type=int, default=2, help="guard digits (default 2)")
    common.add_argument("--field", help="field file or bundled name (qi, qsqrt2, ...)")
    common.add_argument("--json", action="store_true", help="structured output")

    p = _Parser(prog="ellreg", description="ell-adic regulators of completely split fields")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("embed", "logvec", "divisor", "us2", "eta"):
        sub.add_parser(name, parents=[common])
    reg = sub.add_parser("regulator", parents=[common])
    reg.add_argument("which", choices=("classical", "relative", "new"))
    art = sub.add_parser("artin-matrix", parents=[common])
    art.add_argument("--unit", type=int, default=0, help="index of the Artin unit")
    crit = sub.add_parser("criterion", parents=[common])
    crit.add_argument("--m", type=int, required=True)
    surv = sub.add_parser("survey", parents=[common])
    surv.add_argument("--m", type=int, required=True)
    surv.add_argument("--bound", type=int, required=True)
    sub.add_parser("selfcheck", parents=[common])
    return p


def _session(args) -> FieldSession:
    if not args.field:
        raise UsageError(f"{args.command} needs --field")
    spec = load_field(args.field)
    ell = args.ell if args.ell is not None else spec.ell
    if ell is None:
        raise UsageError("no prime: pass --ell or declare one in the field file")
    return FieldSession(spec, PrecisionContext(ell, args.precision, args.slack))


def _header(kind, args, basis):
    return {"kind": kind, "ell": args.ell, "N": args.precision, "slack": args.slack,
            "basis": basis}


def run(argv) -> tuple[int, dict | None]:
    """Execute a command; returns the exit status and the report document."""
    args = build_parser().parse_args(argv)
    cmd = args.command
    if cmd == "criterion":
        if args.ell is None:
            raise UsageError("criterion needs --ell")
        doc = _header("criterion", args, f"m = {args.m}")
        doc.update(zeta_conjugacy(args.ell, args.m).to_json())
        doc["m"] = args.m
        return EXIT_OK, doc
    if cmd == "survey":
        f = load_field(args.field).f if args.field else (-1, 1)
        primes = survey_primes(f, args.m, args.bound)
        doc = _header("survey", args, f"primes <= {args.bound} split in {list(f)}")
        doc.update({"m": args.m, "bound": args.bound, "polynomial": list(f), "primes": primes,
                    "witness_r_is_1": all(zeta_conjugacy(q, args.m).witness_r in (1, None)
                                          for q in primes)})
        return EXIT_OK, doc
    if cmd == "selfcheck":
        fields = [args.field] if args.field else None
        doc = run_selfcheck(args.precision, args.slack, fields)
        return (EXIT_OK if doc["all_passed"] else EXIT_IDENTITY), doc
    s = _session(args)
    if cmd == "embed":
        doc = embed_report(s)
    elif cmd == "logvec":
        doc = logvec_report(s)
    elif cmd == "divisor":
        doc = divisor_report(s)
    elif cmd == "regulator":
        doc = regulator_report(s, args.which)
    elif cmd == "us2":
        doc = us2_report(s)
    elif cmd == "eta":
        doc = eta_report(s)
    else:
        doc = artin_report(s, args.unit)
    if doc.get("verdict", "") in (ZERO_AT_PRECISION, None):
        return EXIT_PRECISION, doc
    return EXIT_OK, doc


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    as_json = "--json" in argv
    try:
        code, doc = run(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        # PrecisionError, singular systems at precision
        print(f"precision insufficient: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ValueError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(dumps(doc) if as_json else render_text(doc) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
