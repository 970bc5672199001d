import argparse
import asyncio

from fga.cli._util import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    add_format_arg,
    add_logging_args,
    add_run_args,
    fail,
    read_automorphism,
    read_sidecar,
    run_config,
    setup_logging,
    write_json,
    write_tsv,
)
from fga.exceptions import WordParsingException
from fga.parse import sidecar_probes
from fga.sweep import analyze, sweep_async


def register(subparsers):
    analyze_parser = subparsers.add_parser(
        "analyze",
        help="Measure all invariants and check every inequality",
        description="sweep short classes for d and e′, search for fixed words and periodic classes,\n"
        "then evaluate every inequality on the measured values",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    analyze_parser.add_argument("file", type=str, help="automorphism file, '-' for stdin")
    analyze_parser.add_argument(
        "-s",
        "--sidecar",
        type=str,
        help="constructor sidecar: its witness classes are swept and its expected values reported",
    )
    add_run_args(analyze_parser)
    add_format_arg(analyze_parser)
    add_logging_args(analyze_parser)

    analyze_parser.set_defaults(func=analyze_)


async def analyze_async(args):
    setup_logging(args.verbosity, args.log_file)
    config = run_config(args)
    alpha = read_automorphism(args.file)
    sidecar = read_sidecar(args.sidecar)

    probes = []
    declared = None
    if sidecar is not None:
        declared = sidecar.get("expected")
        try:
            probes = sidecar_probes(sidecar, list(alpha.names))
        except (WordParsingException, KeyError, TypeError) as ex:
            fail(f"{args.sidecar}: bad probe: {ex}", EXIT_PARSE_ERROR)

    result = await sweep_async(alpha, config, probes)
    report = analyze(alpha, config, probes, declared=declared, result=result)

    if config.output_format == "tsv":
        write_tsv(["check", "lhs", "rhs", "pass"], [(c.name, c.lhs, c.rhs, c.passed) for c in report.checks])
    else:
        write_json(report.to_dict())

    exit(EXIT_OK if report.all_passed else EXIT_CHECK_FAILED)


def analyze_(args):
    """Synchronous wrapper for analyze_async."""
    asyncio.run(analyze_async(args))
