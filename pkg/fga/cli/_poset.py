import argparse

from fga.cli._util import (
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
from fga.exceptions import PosetCycleException, WordParsingException
from fga.lamination import LaminationPoset, poset_invariants
from fga.parse import parse_poset, parse_sidecar, poset_from_dict


def register(subparsers):
    poset_parser = subparsers.add_parser(
        "poset",
        help="Growth types of a lamination poset",
        description="assign a growth type to every node of a declared lamination poset\n"
        "and report e, s and e′",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    poset_parser.add_argument(
        "file",
        type=str,
        help="poset file, or a constructor sidecar declaring a poset; '-' for stdin",
    )
    add_format_arg(poset_parser)
    add_logging_args(poset_parser)

    poset_parser.set_defaults(func=poset)


def _read_poset(text: str) -> LaminationPoset:
    if text.lstrip().startswith("{"):
        sidecar = parse_sidecar(text)
        declared = sidecar.get("expected", {}).get("poset")
        if declared is None:
            raise WordParsingException("Sidecar declares no lamination poset")
        return poset_from_dict(declared)
    return parse_poset(text)


def poset(args):
    setup_logging(args.verbosity, args.log_file)

    try:
        declared = _read_poset(read_text(args.file))
    except (WordParsingException, PosetCycleException) as ex:
        fail(f"{args.file}: {ex}", EXIT_PARSE_ERROR)

    report = poset_invariants(declared)

    if args.format == "tsv":
        write_tsv(
            ["node", "lambda", "m"],
            [(label, growth.rate.approx, growth.degree) for label, growth in report.types.items()],
        )
    else:
        write_json(report.to_dict())

    exit(EXIT_OK)
