import argparse
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
    run_config,
    setup_logging,
    write_json,
    write_tsv,
)
from fga.engine import iterate_lengths, measure_class, measure_element
from fga.exceptions import GrowthClassificationException, TrivialSubjectException, WordParsingException
from fga.objects.growth import LengthSequence
from fga.parse import parse_cyclic_word, parse_word


def register(subparsers):
    growth_parser = subparsers.add_parser(
        "growth",
        help="Classify the growth of one class or element",
        description="iterate an automorphism on a conjugacy class (or an element) and classify its growth",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    growth_parser.add_argument("file", type=str, help="automorphism file, '-' for stdin")
    growth_parser.add_argument("subject", type=str, help="word in the generator names, e.g. 'a b A B'")
    growth_parser.add_argument(
        "-e",
        "--element",
        action="store_true",
        help="measure the element instead of its conjugacy class",
    )
    add_run_args(growth_parser, searches=False, jobs=False)
    add_format_arg(growth_parser)
    add_logging_args(growth_parser)
    growth_parser.set_defaults(element=False)

    growth_parser.set_defaults(func=growth)


def _output_lengths(sequence: LengthSequence) -> None:
    write_tsv(["p", "length"], [(p, value) for p, value in enumerate(sequence.values, start=1)])


def growth(args):
    setup_logging(args.verbosity, args.log_file)
    config = run_config(args)
    alpha = read_automorphism(args.file)
    names = list(alpha.names)

    try:
        subject = parse_word(args.subject, names) if args.element else parse_cyclic_word(args.subject, names)
    except WordParsingException as ex:
        fail(str(ex), EXIT_PARSE_ERROR)

    measure = measure_element if args.element else measure_class
    try:
        measurement = measure(alpha, subject, config.max_iter, config.length_cap)
    except TrivialSubjectException as ex:
        fail(str(ex), EXIT_PARSE_ERROR)
    except GrowthClassificationException as ex:
        sequence = iterate_lengths(alpha, subject, config.max_iter, config.length_cap)
        if config.output_format == "tsv":
            _output_lengths(sequence)
        else:
            write_json({**sequence.to_dict(names), "error": str(ex)})
        sys.stderr.write(f"fga: inconclusive: {ex}\n")
        exit(EXIT_INCONCLUSIVE)

    if config.output_format == "tsv":
        _output_lengths(measurement.sequence)
    else:
        write_json(measurement.to_dict(names))

    exit(EXIT_OK)
