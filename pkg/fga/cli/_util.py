import argparse
import csv
import json
import logging
import sys
from argparse import Action
from collections.abc import Iterable, Sequence
from pathlib import Path

from fga.config import (
    DEFAULT_LENGTH_CAP,
    DEFAULT_MAX_ITER,
    DEFAULT_MAX_LEN,
    DEFAULT_MAX_PERIOD,
    DEFAULT_SWEEP_CAP,
    OUTPUT_FORMATS,
    RunConfig,
)
from fga.exceptions import InvalidAutomorphismException, WordParsingException
from fga.objects.automorphism import Automorphism
from fga.parse import parse_automorphism, parse_sidecar

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_INCONCLUSIVE = 3
EXIT_UNSUPPORTED = 4


def format_help(choices: dict[str, str], opt_help: str) -> str:
    """Generate help text for argparse choices.

    :param choices: Dictionary of choices {choice: help}
    :param opt_help: Help text for the option:
    :return: Help text for argparse choices.
    """
    h = f"{opt_help} (default: %(default)s)\nchoices:\n"

    for fmt, key in choices.items():
        h += f"  {fmt}: {key}\n"

    return h


_log_levels = {
    0: logging.WARNING,
    1: logging.INFO,
    2: logging.DEBUG,
}


class CountAction(Action):
    """Modified version of argparse._CountAction to output better help."""

    def __init__(
        self,
        option_strings,
        dest,
        default=None,
        required=False,
        help=None,
        max_count=None,
    ):
        super().__init__(
            option_strings=option_strings,
            dest=dest,
            nargs=0,
            default=default,
            required=required,
            help=help,
        )
        self.max_count = max_count

    def __call__(self, parser, namespace, values, option_string=None):
        count = getattr(namespace, self.dest, None)
        if count is None:
            count = 0
        if self.max_count:
            count = min(count, self.max_count)
        setattr(namespace, self.dest, count + 1)

    def format_usage(self):
        option_str = self.option_strings[0]
        if self.max_count is None:
            return option_str
        letter = self.option_strings[0][1]
        usages = [f"-{letter * i}" for i in range(1, self.max_count + 1)]
        return "/".join(usages)


def setup_logging(verbosity: int, log_path: str | None) -> None:
    """
    Configure logging for a command.

    Verbosity sets the level of the ``fga`` loggers; other libraries stay at WARNING.

    :param verbosity: Number of ``-v`` flags.
    :param log_path: Log file, or ``None`` for standard error.
    """
    if log_path is not None:
        logging.basicConfig(level=logging.WARNING, filename=log_path)
    else:
        logging.basicConfig(level=logging.WARNING)
    logging.getLogger("fga").setLevel(_log_levels.get(verbosity, logging.DEBUG))


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer '{text}'") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def add_logging_args(parser: argparse.ArgumentParser) -> None:
    """Add ``-v`` and ``-l`` to a subcommand."""
    parser.add_argument(
        "-v",
        "--verbose",
        action=CountAction,
        help="log more from the fga modules (-v=INFO, -vv=DEBUG)",
        dest="verbosity",
        default=0,
        max_count=2,
    )
    parser.add_argument(
        "-l",
        "--log-file",
        type=str,
        help="write log to this file and suppress console output",
    )


def add_format_arg(parser: argparse.ArgumentParser) -> None:
    """Add ``-f/--format`` to a subcommand."""
    parser.add_argument(
        "-f",
        "--format",
        choices=OUTPUT_FORMATS,
        default="json",
        help=format_help(OUTPUT_FORMATS, "set output format"),
        metavar="FORMAT",
    )


def add_run_args(parser: argparse.ArgumentParser, searches: bool = True, jobs: bool = True) -> None:
    """
    Add the run configuration flags to a subcommand.

    :param parser: Subcommand parser.
    :param searches: Add the bounded search flags.
    :param jobs: Add ``--jobs``.
    """
    parser.add_argument(
        "--max-iter",
        type=_positive,
        default=DEFAULT_MAX_ITER,
        help="iterates computed by direct iteration (default: %(default)s)",
    )
    parser.add_argument(
        "--cap",
        type=_positive,
        default=DEFAULT_LENGTH_CAP,
        help="length cap before an iterate is truncated, at least 10 (default: %(default)s)",
    )
    if searches:
        parser.add_argument(
            "--max-len",
            type=_positive,
            default=DEFAULT_MAX_LEN,
            help="maximal word length for sweeps and searches (default: %(default)s)",
        )
        parser.add_argument(
            "--max-period",
            type=_positive,
            default=DEFAULT_MAX_PERIOD,
            help="maximal period of periodic classes (default: %(default)s)",
        )
        parser.add_argument(
            "--sweep-cap",
            type=_positive,
            default=DEFAULT_SWEEP_CAP,
            help="length cap of the first pass over each swept class (default: %(default)s)",
        )
    if jobs:
        parser.add_argument(
            "-j",
            "--jobs",
            type=_positive,
            default=1,
            help="worker processes for sweeps (default: %(default)s)",
        )


def run_config(args: argparse.Namespace) -> RunConfig:
    """
    Map parsed flags onto a run configuration, exiting with the parse error code when they are out of range.

    :param args: Parsed arguments.
    :return: Run configuration.
    """
    try:
        return RunConfig(
            max_iter=args.max_iter,
            length_cap=args.cap,
            max_len=getattr(args, "max_len", DEFAULT_MAX_LEN),
            max_period=getattr(args, "max_period", DEFAULT_MAX_PERIOD),
            sweep_cap=getattr(args, "sweep_cap", DEFAULT_SWEEP_CAP),
            output_format=getattr(args, "format", "json"),
            jobs=getattr(args, "jobs", 1),
        )
    except ValueError as ex:
        fail(str(ex), EXIT_PARSE_ERROR)


def fail(message: str, code: int) -> None:
    """Print an error to stderr and exit with ``code``."""
    sys.stderr.write(f"fga: error: {message}\n")
    exit(code)


def read_text(path: str) -> str:
    """Read a file, ``-`` meaning standard input."""
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as ex:
        fail(f"cannot read '{path}': {ex.strerror}", EXIT_PARSE_ERROR)


def read_automorphism(path: str) -> Automorphism:
    """Read and parse an automorphism file, exiting with the parse error code on failure."""
    try:
        return parse_automorphism(read_text(path))
    except (WordParsingException, InvalidAutomorphismException) as ex:
        fail(f"{path}: {ex}", EXIT_PARSE_ERROR)


def read_sidecar(path: str | None) -> dict | None:
    """Read an optional sidecar, exiting with the parse error code on failure."""
    if path is None:
        return None
    try:
        return parse_sidecar(read_text(path))
    except WordParsingException as ex:
        fail(f"{path}: {ex}", EXIT_PARSE_ERROR)


def write_json(data: dict) -> None:
    """Write a report as JSON to stdout."""
    sys.stdout.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")


def write_tsv(header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write a tab-separated table to stdout."""
    writer = csv.writer(sys.stdout, delimiter="\t", lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
