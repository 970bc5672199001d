import pytest

from fga.constructions import (
    FAMILIES,
    OPTIMAL_FAMILY,
    add_twist_generator,
    construct_optimal,
    free_product,
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
    tau_rate,
)
from fga.exceptions import InadmissibleInvariantsException
from fga.objects.construction import GeometricBlock, UnsupportedRegion
from fga.objects.growth import X
from fga.objects.word import Word
from fga.parse import parse_word


def _constructions():
    return [
        make_tau(),
        make_fibonacci(),
        make_alpha_poly(4),
        make_beta(2),
        make_beta(2, twist=True),
        make_nested(3),
        make_theta(3),
        make_theta(6),
        make_theta(7),
        make_theta_varied(7),
        make_inner(3, "a b"),
        make_identity(3),
        make_bridson_groves(),
        make_lamination_example(1),
        construct_optimal(5, 1, 1),
        construct_optimal(6, 2, 2),
    ]


@pytest.mark.parametrize("construction", _constructions(), ids=lambda c: f"{c.family}-{c.parameters}")
def test_attached_inverse(construction):
    alpha = construction.automorphism
    if alpha.inverse is None:
        pytest.skip("no inverse attached")
    for g in range(alpha.rank):
        w = Word([g + 1, -((g + 1) % alpha.rank + 1)], alpha.rank)
        assert alpha.inverse.apply(alpha.apply(w)) == w
        assert alpha.apply(alpha.inverse.apply(w)) == w


@pytest.mark.parametrize("construction", _constructions(), ids=lambda c: f"{c.family}-{c.parameters}")
def test_sidecar(construction):
    data = construction.to_dict()
    assert data["family"] == construction.family
    assert data["rank"] == construction.automorphism.rank
    assert data["expected"]["ePrime"] == construction.expected["ePrime"]
    assert len(data["probes"]) == len(construction.probes)
    for probe in data["probes"]:
        assert {"class", "lambda", "m"} <= set(probe)


def test_tau():
    construction = make_tau()
    alpha = construction.automorphism
    assert alpha.images == (Word([1, 2, 1], 2), Word([2, 1], 2))
    assert construction.expected == {"ePrime": 1, "d": 0, "fixRank": 1}
    assert alpha.apply(Word([1, 2, -1, -2], 2)) == Word([1, 2, -1, -2], 2)


def test_tau_rates():
    assert tau_rate().minpoly.as_expr() == X**2 - 3 * X + 1
    assert tau_rate(2).minpoly.as_expr() == X**2 - 7 * X + 1


def test_fibonacci_sidecar_omits_unknown_fixed_rank():
    assert "fixRank" not in make_fibonacci().to_dict()["expected"]


@pytest.mark.parametrize(
    ("n", "d"),
    [
        (3, 1),
        (4, 2),
        (5, 2),
        (6, 3),
        (7, 3),
        (8, 4),
    ],
)
def test_theta_ranks_and_degrees(n, d):
    construction = make_theta(n)
    assert construction.automorphism.rank == n
    assert construction.expected["d"] == d
    assert construction.expected["ePrime"] == 1
    assert len(construction.poset.labels) == (n - 3) // 2 + 1


def test_theta_varied_rates():
    construction = make_theta_varied(7)
    assert construction.expected["ePrime"] == 3
    rates = [construction.poset.expansion(label) for label in construction.poset.labels]
    assert len(rates) == 3
    assert not rates[0].same_as(rates[1])


def test_beta_twist():
    plain = make_beta(2)
    twisted = make_beta(2, twist=True)
    assert plain.automorphism.rank == 4
    assert twisted.automorphism.rank == 5
    assert twisted.expected["d"] == plain.expected["d"] + 1
    assert twisted.automorphism.names[-1] == "t"


@pytest.mark.parametrize(
    ("builder", "argument"),
    [
        (make_alpha_poly, 1),
        (make_beta, 0),
        (make_nested, 0),
        (make_theta, 2),
        (make_theta_varied, 6),
        (make_lamination_example, 4),
    ],
)
def test_bad_family_parameters(builder, argument):
    with pytest.raises(ValueError):
        builder(argument)


def test_inner():
    construction = make_inner(3, "a b")
    assert construction.expected["fixRank"] == 1
    assert construction.automorphism.apply(Word([3], 3)) == Word([1, 2, 3, -2, -1], 3)
    assert make_inner(2, "1").expected["fixRank"] == 2


def test_lamination_examples():
    for index in (1, 2, 3):
        construction = make_lamination_example(index)
        assert construction.automorphism.rank == 4
        assert construction.poset.edges == [("L'", "L")]
    outer = make_lamination_example(3).poset.growth_type("L")
    assert outer.degree == 1
    assert make_lamination_example(3).expected["ePrime"] == 2
    assert make_lamination_example(1).poset.growth_type("L").degree == 0


def test_free_product():
    product = free_product(make_tau().automorphism, make_fibonacci().automorphism)
    assert product.rank == 4
    assert product.names == ("a", "b", "a'", "b'")
    assert product.images[2] == Word([3, 4], 4)
    assert product.inverse is not None


def test_add_twist_generator():
    alpha = make_alpha_poly(2).automorphism
    twisted = add_twist_generator(alpha, parse_word("a2", list(alpha.names)))
    assert twisted.rank == 3
    assert twisted.names[-1] == "t"
    assert twisted.images[-1] == Word([3, 2], 3)


def test_families():
    assert OPTIMAL_FAMILY not in FAMILIES
    assert FAMILIES["tau"]() == make_tau()


def test_optimal_identity():
    construction = construct_optimal(3, 0, 0)
    assert construction.automorphism == make_identity(3).automorphism
    assert construction.expected["fixRank"] == 3


def test_optimal_polynomial():
    construction = construct_optimal(4, 0, 2)
    assert construction.automorphism.rank == 4
    assert construction.expected == {"ePrime": 0, "d": 2, "fixRank": 3}
    assert [probe.growth.degree for probe in construction.probes] == [0, 1, 2]


def test_optimal_torus_copies():
    construction = construct_optimal(5, 2, 0)
    assert construction.automorphism.rank == 5
    assert construction.expected["fixRank"] == 3
    first, second = (construction.poset.expansion(label) for label in construction.poset.labels)
    assert not first.same_as(second)

    same = construct_optimal(5, 2, 0, distinct_rates=False)
    first, second = (same.poset.expansion(label) for label in same.poset.labels)
    assert first.same_as(second)


@pytest.mark.parametrize(
    ("n", "e", "d", "solution"),
    [
        (5, 1, 1, {"w": 0, "x": 0, "y": 2, "z": 0}),
        (6, 2, 2, {"w": 0, "x": 1, "y": 0, "z": 1}),
        (7, 3, 3, {"w": 2, "x": 0, "y": 0, "z": 0}),
    ],
)
def test_optimal_mixed(n, e, d, solution):
    construction = construct_optimal(n, e, d)
    assert construction.supported
    assert construction.solution == solution
    assert construction.automorphism.rank == n
    assert construction.to_dict()["solution"] == solution
    assert construction.probes[-1].growth.degree == d


def test_optimal_inadmissible():
    with pytest.raises(InadmissibleInvariantsException):
        construct_optimal(3, 2, 0)


def test_optimal_unsupported_region():
    result = construct_optimal(6, 4, 0)
    assert isinstance(result, UnsupportedRegion)
    assert not result.supported
    assert "rank 6" in result.reason
    assert result.to_dict() == {"family": OPTIMAL_FAMILY, "parameters": {"n": 6, "e": 4, "d": 0}, "reason": result.reason}


def test_optimal_geometric_block():
    identity = make_identity(6).automorphism
    fixed = Word([1], 6)

    wrong_rank = GeometricBlock(make_tau().automorphism, 4, Word([1, 2, -1, -2], 2))
    result = construct_optimal(6, 4, 0, geometric_blocks={6: wrong_rank})
    assert not result.supported
    assert "has rank 2" in result.reason

    wrong_count = GeometricBlock(identity, 0, fixed)
    assert not construct_optimal(6, 4, 0, geometric_blocks={6: wrong_count}).supported

    block = GeometricBlock(identity, 4, fixed)
    result = construct_optimal(6, 4, 0, geometric_blocks={6: block})
    assert result.supported
    assert result.automorphism.rank == 6


def test_geometric_block_needs_a_fixed_word():
    with pytest.raises(ValueError):
        GeometricBlock(make_tau().automorphism, 1, Word([1], 2))
    with pytest.raises(ValueError):
        GeometricBlock(make_tau().automorphism, 1, Word([], 2))
