import argparse
import asyncio
import sys

from fga.cli._util import (
    EXIT_INCONCLUSIVE,
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
from fga.objects.word import format_word
from fga.parse import sidecar_probes
from fga.sweep import SweepResult, sweep_async


def register(subparsers):
    sweep_parser = subparsers.add_parser(
        "sweep",
        help="Measure d and e′ over all short classes",
        description="classify the growth of every conjugacy class up to --max-len and report\n"
        "the largest polynomial degree d and the number e′ of distinct exponential types",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    sweep_parser.add_argument("file", type=str, help="automorphism file, '-' for stdin")
    sweep_parser.add_argument(
        "-s",
        "--sidecar",
        type=str,
        help="constructor sidecar whose witness classes are swept as well",
    )
    add_run_args(sweep_parser)
    add_format_arg(sweep_parser)
    add_logging_args(sweep_parser)

    sweep_parser.set_defaults(func=sweep)


def _output_tsv(result: SweepResult) -> None:
    names = list(result.automorphism.names)
    rows = []
    for measurement in result.measurements:
        subject = format_word(measurement.sequence.subject, names)
        rows.extend((subject, p, value) for p, value in enumerate(measurement.sequence.values, start=1))
    write_tsv(["class", "p", "length"], rows)


async def sweep_cmd_async(args):
    setup_logging(args.verbosity, args.log_file)
    config = run_config(args)
    alpha = read_automorphism(args.file)
    sidecar = read_sidecar(args.sidecar)

    probes = []
    if sidecar is not None:
        try:
            probes = sidecar_probes(sidecar, list(alpha.names))
        except (WordParsingException, KeyError, TypeError) as ex:
            fail(f"{args.sidecar}: bad probe: {ex}", EXIT_PARSE_ERROR)

    result = await sweep_async(alpha, config, probes)

    if config.output_format == "tsv":
        _output_tsv(result)
    else:
        write_json(result.to_dict())

    if result.failures:
        sys.stderr.write(f"fga: inconclusive: {len(result.failures)} classes not classified\n")
        exit(EXIT_INCONCLUSIVE)
    exit(EXIT_OK)


def sweep(args):
    """Synchronous wrapper for sweep_cmd_async."""
    asyncio.run(sweep_cmd_async(args))
