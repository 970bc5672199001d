"""Text formats: words, automorphism files, lamination poset files and constructor sidecars.

Automorphism file::

    # comment
    rank 2
    names a b
    a -> a b a
    b -> b a
    a <- A b a       (optional inverse images)

Poset file::

    node L1 lambda x^2 - 3x + 1
    node L2 lambda 1.618033988749895
    edge L1 < L2
"""

import json
import logging
from collections.abc import Sequence
from tokenize import TokenError

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from .exceptions import WordParsingException
from .helpers import IDENTITY_TOKEN, INVERSE_SUFFIX, default_generator_names
from .lamination import LaminationPoset
from .objects.automorphism import Automorphism
from .objects.growth import X, AlgebraicReal
from .objects.word import CyclicWord, Word, format_codes

log = logging.getLogger(__name__)

_TRANSFORMATIONS = standard_transformations + (implicit_multiplication_application, convert_xor)


def _token_code(token: str, position: dict[str, int]) -> int:
    if token.endswith(INVERSE_SUFFIX):
        name = token[: -len(INVERSE_SUFFIX)]
        if name in position:
            return -(position[name] + 1)
    elif token in position:
        return position[token] + 1
    elif token[0].isupper():
        name = token[0].lower() + token[1:]
        if name in position:
            return -(position[name] + 1)
    raise WordParsingException(f"Unknown generator '{token}'")


def _split_tokens(text: str, position: dict[str, int]) -> list[str]:
    tokens = text.split()
    single_letters = all(len(name) == 1 for name in position)
    out = []
    for token in tokens:
        if token == IDENTITY_TOKEN:
            continue
        known = (
            token in position
            or token.endswith(INVERSE_SUFFIX)
            or (token[0].isupper() and token[0].lower() + token[1:] in position)
        )
        if not known and single_letters and len(token) > 1:
            out.extend(token)
        else:
            out.append(token)
    return out


def parse_codes(text: str, names: Sequence[str]) -> list[int]:
    """
    Letter codes of a word in text form, not reduced.

    Tokens are whitespace-separated generator names; an uppercase first character or a ``^-1`` suffix
    marks an inverse, and ``1`` is the empty word. When every name is a single character, a token such as
    ``abAB`` is read letter by letter.

    :param text: Word text.
    :param names: Generator names.
    :return: Letter codes.
    :raises WordParsingException: If a token is not a generator.
    """
    position = {name: i for i, name in enumerate(names)}
    return [_token_code(token, position) for token in _split_tokens(text, position)]


def parse_word(text: str, names: Sequence[str] | None = None, rank: int | None = None) -> Word:
    """
    Parse a word.

    :param text: Word text.
    :param names: Generator names, defaults to the default names for ``rank``.
    :param rank: Rank, defaults to the number of names.
    :return: Reduced word.
    :raises WordParsingException: If the text is not a word.
    """
    if names is None:
        if rank is None:
            raise ValueError("Need generator names or a rank")
        names = default_generator_names(rank)
    return Word(parse_codes(text, names), len(names) if rank is None else rank)


def parse_cyclic_word(text: str, names: Sequence[str]) -> CyclicWord:
    """
    Parse a conjugacy class.

    :param text: Text of any representative.
    :param names: Generator names.
    :return: Cyclic word.
    :raises WordParsingException: If the text is not a word.
    """
    return CyclicWord(parse_codes(text, names), len(names))


def parse_automorphism(text: str) -> Automorphism:
    """
    Parse an automorphism file.

    :param text: File contents.
    :return: Automorphism, with inverse when inverse lines are present for every generator.
    :raises WordParsingException: If the text is malformed.
    :raises InvalidAutomorphismException: If the images do not define an automorphism.
    """
    rank = None
    names = None
    images: dict[str, str] = {}
    inverse_images: dict[str, str] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "rank":
            try:
                rank = int(rest)
            except ValueError:
                raise WordParsingException(f"Line {lineno}: bad rank '{rest}'") from None
        elif head == "names":
            names = rest.split()
        elif "->" in line:
            name, _, word = line.partition("->")
            if name.strip() in images:
                raise WordParsingException(f"Line {lineno}: second image line for '{name.strip()}'")
            images[name.strip()] = word.strip()
        elif "<-" in line:
            name, _, word = line.partition("<-")
            if name.strip() in inverse_images:
                raise WordParsingException(f"Line {lineno}: second inverse line for '{name.strip()}'")
            inverse_images[name.strip()] = word.strip()
        else:
            raise WordParsingException(f"Line {lineno}: cannot parse '{raw}'")

    if rank is None:
        raise WordParsingException("Missing 'rank' header")
    if names is None:
        names = default_generator_names(rank)
    if len(names) != rank:
        raise WordParsingException(f"Expected {rank} names, got {len(names)}")
    missing = [name for name in names if name not in images]
    if missing:
        raise WordParsingException(f"Missing images for {', '.join(missing)}")
    unknown = sorted((set(images) | set(inverse_images)) - set(names))
    if unknown:
        raise WordParsingException(f"Images given for unknown generators {', '.join(unknown)}")

    inverse = None
    if inverse_images:
        if set(inverse_images) != set(names):
            raise WordParsingException("Inverse lines must be given for every generator or none")
        inverse = Automorphism(
            [Word(parse_codes(inverse_images[name], names), rank) for name in names],
            names=names,
            validate=False,
        )
    alpha = Automorphism(
        [Word(parse_codes(images[name], names), rank) for name in names],
        names=names,
        inverse=inverse,
    )
    log.debug(f"Parsed automorphism of rank {rank}")
    return alpha


def format_automorphism(alpha: Automorphism) -> str:
    """
    Canonical text form of an automorphism, inverse lines included when an inverse is attached.

    :param alpha: Automorphism.
    :return: File contents ending with a newline.
    """
    names = list(alpha.names)
    lines = [f"rank {alpha.rank}", "names " + " ".join(names)]
    for name, image in zip(names, alpha.images):
        lines.append(f"{name} -> {format_codes(image.codes, names)}")
    if alpha.inverse is not None:
        for name, image in zip(names, alpha.inverse.images):
            lines.append(f"{name} <- {format_codes(image.codes, names)}")
    return "\n".join(lines) + "\n"


def parse_expansion(text: str) -> AlgebraicReal:
    """
    Parse an expansion factor: a decimal number, or a polynomial in ``x`` whose largest real root is meant.

    :param text: Value text, e.g. ``2.618`` or ``x^2 - 3x + 1``.
    :return: Real number.
    :raises WordParsingException: If the text is neither.
    """
    text = text.strip()
    try:
        return AlgebraicReal(float(text))
    except ValueError:
        pass
    try:
        expr = parse_expr(text, local_dict={"x": X}, transformations=_TRANSFORMATIONS)
        poly = sympy.Poly(expr, X)
    except (SyntaxError, TypeError, ValueError, TokenError, sympy.SympifyError, sympy.PolynomialError) as ex:
        raise WordParsingException(f"Cannot parse expansion factor '{text}'") from ex
    factors = [sympy.Poly(f, X) for f, _ in sympy.factor_list(poly.as_expr(), X)[1]]
    roots = [AlgebraicReal.from_minpoly(f) for f in factors if f.degree() >= 1 and f.intervals()]
    if not roots:
        raise WordParsingException(f"Polynomial '{text}' has no real root")
    return max(roots, key=lambda r: r.approx)


def parse_poset(text: str) -> LaminationPoset:
    """
    Parse a lamination poset file.

    :param text: File contents.
    :return: Poset.
    :raises WordParsingException: If the text is malformed.
    :raises PosetCycleException: If the declared order has a cycle.
    """
    nodes: dict[str, AlgebraicReal] = {}
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(maxsplit=3)
        if parts[0] == "node" and len(parts) == 4 and parts[2] == "lambda":
            nodes[parts[1]] = parse_expansion(parts[3])
        elif parts[0] == "edge" and len(parts) == 4 and parts[2] == "<":
            edges.append((parts[1], parts[3].strip()))
        else:
            raise WordParsingException(f"Line {lineno}: cannot parse '{raw}'")
    try:
        return LaminationPoset(nodes, edges)
    except ValueError as ex:
        raise WordParsingException(str(ex)) from ex


def format_poset(poset: LaminationPoset) -> str:
    """
    Text form of a poset; exact expansion factors are written as their minimal polynomials.

    :param poset: Poset.
    :return: File contents ending with a newline.
    """
    lines = []
    for label in poset.labels:
        expansion = poset.expansion(label)
        if expansion.minpoly is not None:
            value = str(expansion.minpoly.as_expr()).replace("**", "^")
        else:
            value = repr(expansion.approx)
        lines.append(f"node {label} lambda {value}")
    for sub, sup in poset.edges:
        lines.append(f"edge {sub} < {sup}")
    return "\n".join(lines) + "\n"


def parse_sidecar(text: str) -> dict:
    """
    Parse a constructor sidecar.

    :param text: JSON text.
    :return: Sidecar dictionary.
    :raises WordParsingException: If the text is not a JSON object.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as ex:
        raise WordParsingException(f"Sidecar is not valid JSON: {ex}") from ex
    if not isinstance(data, dict):
        raise WordParsingException("Sidecar must be a JSON object")
    return data


def _expansion_from_dict(data: dict) -> AlgebraicReal:
    if "minpoly" in data:
        return parse_expansion(str(data["minpoly"]))
    try:
        return AlgebraicReal(float(data["approx"]), error=float(data.get("error", 0.0)))
    except (KeyError, TypeError, ValueError) as ex:
        raise WordParsingException(f"Bad expansion factor record {data!r}") from ex


def poset_from_dict(data: dict) -> LaminationPoset:
    """
    Rebuild a poset from its dictionary form, as written into constructor sidecars.

    :param data: Dictionary with ``nodes`` (label to expansion record) and ``edges``.
    :return: Poset.
    :raises WordParsingException: If the dictionary is malformed.
    :raises PosetCycleException: If the declared order has a cycle.
    """
    try:
        nodes = {label: _expansion_from_dict(record) for label, record in data["nodes"].items()}
        edges = [(sub, sup) for sub, sup in data.get("edges", [])]
    except (KeyError, AttributeError, TypeError, ValueError) as ex:
        raise WordParsingException(f"Malformed poset record: {ex}") from ex
    try:
        return LaminationPoset(nodes, edges)
    except ValueError as ex:
        raise WordParsingException(str(ex)) from ex


def sidecar_probes(sidecar: dict, names: Sequence[str]) -> list[CyclicWord]:
    """
    Witness classes listed in a sidecar.

    :param sidecar: Sidecar dictionary.
    :param names: Generator names of the automorphism the sidecar belongs to.
    :return: Classes in sidecar order.
    :raises WordParsingException: If a class does not parse.
    """
    return [parse_cyclic_word(probe["class"], names) for probe in sidecar.get("probes", [])]
