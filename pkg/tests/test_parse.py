import json

import pytest

from fga.constructions import golden_rate, make_bridson_groves, make_nested, make_theta, tau_rate
from fga.exceptions import InvalidAutomorphismException, PosetCycleException, WordParsingException
from fga.lamination import LaminationPoset
from fga.objects.growth import X
from fga.objects.word import CyclicWord, Word
from fga.parse import (
    format_automorphism,
    format_poset,
    parse_automorphism,
    parse_codes,
    parse_cyclic_word,
    parse_expansion,
    parse_poset,
    parse_sidecar,
    parse_word,
    poset_from_dict,
    sidecar_probes,
)

TAU_FILE = """\
# the torus automorphism
rank 2
names a b
a -> a b a
b -> b a   # trailing comment
a <- a B
b <- b b A
"""


@pytest.mark.parametrize(
    ("text", "names", "expected"),
    [
        ("a b A B", ["a", "b"], [1, 2, -1, -2]),
        ("abAB", ["a", "b"], [1, 2, -1, -2]),
        ("a^-1 b", ["a", "b"], [-1, 2]),
        ("1", ["a", "b"], []),
        ("a1 A2 a2^-1", ["a1", "a2"], [1, -2, -2]),
        ("a' B'", ["a", "b", "a'", "b'"], [3, -4]),
    ],
)
def test_parse_codes(text, names, expected):
    assert parse_codes(text, names) == expected


@pytest.mark.parametrize("text", ["c", "a c", "a1"])
def test_parse_codes_unknown_generator(text):
    with pytest.raises(WordParsingException):
        parse_codes(text, ["a", "b"])


def test_parse_word():
    assert parse_word("a b B", ["a", "b"]) == Word([1], 2)
    assert parse_word("c", rank=3) == Word([3], 3)
    with pytest.raises(ValueError):
        parse_word("a")


def test_parse_cyclic_word():
    assert parse_cyclic_word("b a B", ["a", "b"]) == CyclicWord([1], 2)


def test_parse_automorphism():
    alpha = parse_automorphism(TAU_FILE)
    assert alpha.rank == 2
    assert alpha.names == ("a", "b")
    assert alpha.images == (Word([1, 2, 1], 2), Word([2, 1], 2))
    assert alpha.inverse is not None
    assert alpha.inverse.images == (Word([1, -2], 2), Word([2, 2, -1], 2))


def test_parse_automorphism_default_names():
    alpha = parse_automorphism("rank 2\na -> b\nb -> a\n")
    assert alpha.names == ("a", "b")
    assert alpha.inverse is None


@pytest.mark.parametrize(
    ("text"),
    [
        "names a b\na -> a\nb -> b\n",
        "rank two\n",
        "rank 2\nnames a b c\na -> a\nb -> b\n",
        "rank 2\na -> a\n",
        "rank 2\na -> a\nb -> b\nc -> a\n",
        "rank 2\na -> a b\nb -> b\na <- a B\n",
        "rank 2\na = a\nb -> b\n",
        "rank 2\na -> a x\nb -> b\n",
    ],
)
def test_parse_automorphism_malformed(text):
    with pytest.raises(WordParsingException):
        parse_automorphism(text)


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("rank 2\na -> a b\nb -> b\na -> a\n", "Line 4: second image line for 'a'"),
        ("rank 2\na -> a b\nb -> b\na <- a B\nb <- b\na <- a\n", "Line 6: second inverse line for 'a'"),
    ],
)
def test_parse_automorphism_duplicate_lines(text, message):
    with pytest.raises(WordParsingException, match=message):
        parse_automorphism(text)


def test_parse_automorphism_not_invertible():
    with pytest.raises(InvalidAutomorphismException):
        parse_automorphism("rank 2\na -> a a\nb -> b\n")


@pytest.mark.parametrize(
    ("construction"),
    [
        make_theta(6),
        make_nested(3),
        make_bridson_groves(),
    ],
)
def test_format_automorphism_round_trip(construction):
    alpha = construction.automorphism
    parsed = parse_automorphism(format_automorphism(alpha))
    assert parsed == alpha
    assert parsed.names == alpha.names
    assert (parsed.inverse is None) == (alpha.inverse is None)


def test_parse_expansion():
    assert parse_expansion("2.5").approx == 2.5
    assert not parse_expansion("2.5").is_exact

    tau = parse_expansion("x^2 - 3x + 1")
    assert tau.minpoly.as_expr() == X**2 - 3 * X + 1
    assert tau.same_as(tau_rate())

    assert parse_expansion("(x - 2)*(x^2 - 3x + 1)").same_as(tau_rate())
    assert parse_expansion("x - 3").approx == pytest.approx(3.0)


@pytest.mark.parametrize("text", ["x^2 + 1", "x^2 +", "y - 1"])
def test_parse_expansion_rejects(text):
    with pytest.raises(WordParsingException):
        parse_expansion(text)


def test_parse_poset():
    poset = parse_poset(
        """
        # two nested laminations
        node L1 lambda x^2 - x - 1
        node L2 lambda 2.618033988749895
        edge L1 < L2
        """
    )
    assert poset.labels == ["L1", "L2"]
    assert poset.edges == [("L1", "L2")]
    assert poset.expansion("L1").same_as(golden_rate())
    assert not poset.expansion("L2").is_exact


@pytest.mark.parametrize(
    ("text", "exception"),
    [
        ("node L1 x^2 - x - 1\n", WordParsingException),
        ("node L1 lambda x^2 - x - 1\nedge L1 L2\n", WordParsingException),
        ("node L1 lambda x^2 - x - 1\nedge L1 < L2\n", WordParsingException),
        ("node L1 lambda 0.5\n", WordParsingException),
        ("node A lambda 2\nnode B lambda 3\nedge A < B\nedge B < A\n", PosetCycleException),
    ],
)
def test_parse_poset_rejects(text, exception):
    with pytest.raises(exception):
        parse_poset(text)


def test_format_poset_round_trip():
    poset = LaminationPoset.chain(["A", "B", "C"], [golden_rate(), tau_rate(), golden_rate()])
    assert parse_poset(format_poset(poset)) == poset


def test_poset_from_sidecar():
    sidecar = parse_sidecar(json.dumps(make_nested(3).to_dict()))
    poset = poset_from_dict(sidecar["expected"]["poset"])
    assert poset == make_nested(3).poset

    approximate = poset_from_dict({"nodes": {"A": {"approx": 2.5, "error": 0.01}}})
    assert approximate.expansion("A").approx == 2.5


@pytest.mark.parametrize(
    ("data"),
    [
        {},
        {"nodes": {"A": {}}},
        {"nodes": {"A": {"approx": "many"}}},
        {"nodes": {"A": {"approx": 2.0}}, "edges": [["A"]]},
        {"nodes": {"A": {"approx": 2.0}}, "edges": [["A", "B"]]},
    ],
)
def test_poset_from_dict_rejects(data):
    with pytest.raises(WordParsingException):
        poset_from_dict(data)


@pytest.mark.parametrize("text", ["[1, 2]", "{", ""])
def test_parse_sidecar_rejects(text):
    with pytest.raises(WordParsingException):
        parse_sidecar(text)


def test_sidecar_probes():
    construction = make_theta(5)
    names = list(construction.automorphism.names)
    probes = sidecar_probes(construction.to_dict(), names)
    assert probes == [probe.subject for probe in construction.probes]
    assert sidecar_probes({}, names) == []
