import argparse
import json

from fga.cli._util import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    add_format_arg,
    add_logging_args,
    fail,
    read_text,
    setup_logging,
    write_json,
    write_tsv,
)
from fga.invariants import check_all
from fga.objects.invariants import InvariantTuple

_TUPLE_FLAGS = {
    "n": "rank",
    "e": "number of attracting laminations (or e′)",
    "d": "maximal polynomial degree",
    "s": "longest chain of nested laminations",
    "fix": "rank of the fixed subgroup",
    "k": "rank of the span of periodic classes in the abelianization",
    "r": "index term over isogredience classes",
}


def register(subparsers):
    check_parser = subparsers.add_parser(
        "check",
        help="Evaluate the inequalities on a tuple of invariants",
        description="evaluate every applicable inequality, either on values given as flags\n"
        "or on the measured values of a sweep or analyze report",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    for flag, text in _TUPLE_FLAGS.items():
        check_parser.add_argument(f"--{flag}", type=int, help=text)
    check_parser.add_argument(
        "--report",
        type=str,
        help="JSON report of 'fga sweep' or 'fga analyze', '-' for stdin",
    )
    add_format_arg(check_parser)
    add_logging_args(check_parser)

    check_parser.set_defaults(func=check)


def tuple_from_report(data: dict) -> InvariantTuple:
    """
    Measured tuple of a sweep or analyze report.

    :param data: Report dictionary.
    :return: Tuple with ``e′`` in place of ``e`` and the lower bounds for rk Fix and k when present.
    :raises KeyError: If a required value is missing.
    """
    if "measured" in data:
        measured = data["measured"]
        return InvariantTuple(
            data["n"],
            measured["ePrime"],
            measured["d"],
            fix_rank=measured.get("fixRankLower"),
            k=measured.get("kLower"),
        )
    return InvariantTuple(data["n"], data["ePrime"], data["d"])


def _tuple_from_flags(args) -> InvariantTuple:
    missing = [f"--{flag}" for flag in ("n", "e", "d") if getattr(args, flag) is None]
    if missing:
        fail(f"missing {', '.join(missing)} (or give --report)", EXIT_PARSE_ERROR)
    return InvariantTuple(args.n, args.e, args.d, s=args.s, fix_rank=args.fix, k=args.k, r=args.r)


def check(args):
    setup_logging(args.verbosity, args.log_file)

    try:
        if args.report is not None:
            values = tuple_from_report(json.loads(read_text(args.report)))
        else:
            values = _tuple_from_flags(args)
    except (json.JSONDecodeError, KeyError, TypeError) as ex:
        fail(f"{args.report}: not a sweep or analyze report ({ex})", EXIT_PARSE_ERROR)
    except ValueError as ex:
        fail(str(ex), EXIT_PARSE_ERROR)

    results = check_all(values)
    passed = all(c.passed for c in results)

    if args.format == "tsv":
        write_tsv(["check", "lhs", "rhs", "pass"], [(c.name, c.lhs, c.rhs, c.passed) for c in results])
    else:
        write_json({"values": values.to_dict(), "checks": [c.to_dict() for c in results], "passed": passed})

    exit(EXIT_OK if passed else EXIT_CHECK_FAILED)
