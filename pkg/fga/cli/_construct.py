import argparse
import json
import logging
import sys
from collections.abc import Callable
from pathlib import Path

from fga.cli._util import (
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_UNSUPPORTED,
    add_logging_args,
    fail,
    read_automorphism,
    setup_logging,
)
from fga.constructions import (
    OPTIMAL_FAMILY,
    construct_optimal,
    make_alpha_poly,
    make_beta,
    make_bridson_groves,
    make_fibonacci,
    make_identity,
    make_inner,
    make_lamination_example,
    make_nested,
    make_tau,
    make_theta,
    make_theta_varied,
)
from fga.exceptions import InadmissibleInvariantsException, WordParsingException
from fga.objects.construction import AbstractConstruction, GeometricBlock
from fga.parse import format_automorphism, parse_word

log = logging.getLogger(__name__)

CONSTRUCT_FAMILIES = {
    "tau": "a -> a b a, b -> b a (no parameters)",
    "fibonacci": "a -> a b, b -> a (no parameters)",
    "alpha_poly": "polynomially growing, class of a_i of degree i-1 (--n)",
    "beta": "one stratum over a polynomial chain (--ell, optional --twist)",
    "nested": "nested laminations of equal rate (--ell)",
    "theta": "mixed growth on F_n (--n, at least 3)",
    "theta_varied": "mixed growth with distinct rates (--n, odd)",
    "inner": "conjugation by a word (--n, --conjugator)",
    "identity": "identity (--n)",
    "bridson_groves": "linear class growth, quadratic element growth (no parameters)",
    "lamination_example": "two nested laminations on F_4 (--index 1..3)",
    OPTIMAL_FAMILY: "given e and d with the largest fixed rank (--n, --e, --d)",
}

_REQUIRED = {
    "alpha_poly": ["n"],
    "beta": ["ell"],
    "nested": ["ell"],
    "theta": ["n"],
    "theta_varied": ["n"],
    "inner": ["n", "conjugator"],
    "identity": ["n"],
    "lamination_example": ["index"],
    OPTIMAL_FAMILY: ["n", "e", "d"],
}

_BUILDERS: dict[str, Callable[[argparse.Namespace], AbstractConstruction]] = {
    "tau": lambda args: make_tau(),
    "fibonacci": lambda args: make_fibonacci(),
    "alpha_poly": lambda args: make_alpha_poly(args.n),
    "beta": lambda args: make_beta(args.ell, twist=args.twist),
    "nested": lambda args: make_nested(args.ell),
    "theta": lambda args: make_theta(args.n),
    "theta_varied": lambda args: make_theta_varied(args.n),
    "inner": lambda args: make_inner(args.n, args.conjugator),
    "identity": lambda args: make_identity(args.n),
    "bridson_groves": lambda args: make_bridson_groves(),
    "lamination_example": lambda args: make_lamination_example(args.index),
    OPTIMAL_FAMILY: lambda args: construct_optimal(
        args.n,
        args.e,
        args.d,
        distinct_rates=not args.same_rates,
        geometric_blocks=_geometric_blocks(args),
    ),
}


def register(subparsers):
    construct_parser = subparsers.add_parser(
        "construct",
        help="Write an automorphism of a known family",
        description="build an automorphism and write it with a JSON sidecar of its expected invariants",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    construct_parser.add_argument(
        "family",
        choices=CONSTRUCT_FAMILIES,
        help="".join(f"{name}: {text}\n" for name, text in CONSTRUCT_FAMILIES.items()),
        metavar="FAMILY",
    )
    construct_parser.add_argument("--n", type=int, help="rank")
    construct_parser.add_argument("--ell", type=int, help="family index ℓ")
    construct_parser.add_argument("--e", type=int, help="number of exponential strata (optimal)")
    construct_parser.add_argument("--d", type=int, help="polynomial degree (optimal)")
    construct_parser.add_argument("--index", type=int, help="example number (lamination_example)")
    construct_parser.add_argument("--conjugator", type=str, help="conjugating word (inner)")
    construct_parser.add_argument("--twist", action="store_true", help="add the twisting generator t (beta)")
    construct_parser.add_argument(
        "--same-rates",
        action="store_true",
        help="use the same torus automorphism for every exponential block (optimal)",
    )
    construct_parser.add_argument(
        "--block",
        type=str,
        help="automorphism file of a geometric block with rank 1 fixed subgroup (optimal)",
    )
    construct_parser.add_argument("--block-e", type=int, help="number of exponential types of the geometric block")
    construct_parser.add_argument("--block-fixed", type=str, help="word generating the fixed subgroup of the block")
    construct_parser.add_argument(
        "-o",
        "--output",
        type=str,
        help="output path without suffix; writes <output>.aut and <output>.json (default: from family and parameters)",
    )
    add_logging_args(construct_parser)
    construct_parser.set_defaults(twist=False, same_rates=False)

    construct_parser.set_defaults(func=construct)


def _geometric_blocks(args) -> dict[int, GeometricBlock] | None:
    if args.block is None:
        return None
    if args.block_e is None or args.block_fixed is None:
        fail("--block needs --block-e and --block-fixed", EXIT_PARSE_ERROR)
    alpha = read_automorphism(args.block)
    try:
        block = GeometricBlock(alpha, args.block_e, parse_word(args.block_fixed, list(alpha.names)))
    except (WordParsingException, ValueError) as ex:
        fail(f"{args.block}: {ex}", EXIT_PARSE_ERROR)
    return {block.rank: block}


def default_output(family: str, parameters: dict) -> str:
    """
    Default output path of a construction.

    :param family: Family id.
    :param parameters: Family parameters.
    :return: Family id followed by the parameter values, e.g. ``theta-n7``.
    """
    parts = [family] + [f"{key}{int(value)}" for key, value in parameters.items()]
    return "-".join(parts)


def construct(args):
    setup_logging(args.verbosity, args.log_file)

    missing = [f"--{flag}" for flag in _REQUIRED.get(args.family, []) if getattr(args, flag) is None]
    if missing:
        fail(f"family '{args.family}' needs {', '.join(missing)}", EXIT_PARSE_ERROR)

    try:
        result = _BUILDERS[args.family](args)
    except (InadmissibleInvariantsException, WordParsingException, ValueError) as ex:
        fail(str(ex), EXIT_PARSE_ERROR)

    if not result.supported:
        fail(f"unsupported region {result.parameters}: {result.reason}", EXIT_UNSUPPORTED)

    output = args.output or default_output(result.family, result.parameters)
    aut_path = Path(f"{output}.aut")
    sidecar_path = Path(f"{output}.json")
    aut_path.write_text(format_automorphism(result.automorphism))
    sidecar_path.write_text(json.dumps(result.to_dict(), indent=2, ensure_ascii=False) + "\n")
    log.info(f"Wrote {aut_path} and {sidecar_path}")

    if result.solution is not None:
        sys.stdout.write(" ".join(f"{key}={value}" for key, value in result.solution.items()) + "\n")
    sys.stdout.write(f"{aut_path}\n{sidecar_path}\n")

    exit(EXIT_OK)
