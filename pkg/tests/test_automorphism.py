import pytest
from hypothesis import given
from hypothesis import strategies as st

from fga.exceptions import InvalidAutomorphismException, RankMismatchException
from fga.objects.automorphism import Automorphism, compose
from fga.objects.word import CyclicWord, Word

words_strategy = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12).map(lambda codes: Word(codes, 2))


def _tau() -> Automorphism:
    return Automorphism([Word([1, 2, 1], 2), Word([2, 1], 2)])


def _tau_with_inverse() -> Automorphism:
    inverse = Automorphism([Word([1, -2], 2), Word([2, 2, -1], 2)], validate=False)
    return Automorphism([Word([1, 2, 1], 2), Word([2, 1], 2)], inverse=inverse)


def _flip() -> Automorphism:
    return Automorphism([Word([2], 2), Word([-1], 2)])


def _alpha_poly_3() -> Automorphism:
    return Automorphism([Word([1], 3), Word([2, 1], 3), Word([3, 2], 3)], names=["a1", "a2", "a3"])


def test_apply_fixes_commutator():
    commutator = Word([1, 2, -1, -2], 2)
    assert _tau().apply(commutator) == commutator


def test_apply_cyclic():
    tau = _tau()
    assert tau.apply_cyclic(CyclicWord([2], 2)) == CyclicWord([1, 2], 2)
    assert tau.apply_cyclic(CyclicWord([1, -2], 2)) == CyclicWord([1], 2)


def test_image_codes():
    tau = _tau()
    assert tau.image_codes(2) == (2, 1)
    assert tau.image_codes(-2) == (-1, -2)


def test_abelianization():
    assert _tau().abelianization() == [[2, 1], [1, 1]]


def test_invalid_determinant():
    with pytest.raises(InvalidAutomorphismException):
        Automorphism([Word([1, 1], 2), Word([2], 2)])


def test_invalid_attached_inverse():
    with pytest.raises(InvalidAutomorphismException):
        Automorphism([Word([1, 2, 1], 2), Word([2, 1], 2)], inverse=Automorphism.identity(2))


def test_rank_mismatch():
    with pytest.raises(RankMismatchException):
        Automorphism([Word([1], 3), Word([2], 2)])
    with pytest.raises(RankMismatchException):
        _tau().apply(Word([1], 3))


def test_duplicate_names():
    with pytest.raises(InvalidAutomorphismException):
        Automorphism([Word([1], 2), Word([2], 2)], names=["a", "a"])


def test_identity():
    ident = Automorphism.identity(3)
    assert ident.inverse == ident
    assert ident.apply(Word([1, -3, 2], 3)) == Word([1, -3, 2], 3)


def test_power():
    tau = _tau()
    a = Word([1], 2)
    assert tau.power(0) == Automorphism.identity(2)
    assert tau.power(2).apply(a) == tau.apply(tau.apply(a))
    assert len(tau.power(3).apply(a)) == 21


def test_negative_power():
    with pytest.raises(InvalidAutomorphismException):
        _tau().power(-1)

    tau = _tau_with_inverse()
    w = Word([1, -2, 2, 2], 2)
    assert tau.power(-1).apply(tau.apply(w)) == w


@given(words_strategy)
def test_compose(w):
    tau, flip = _tau(), _flip()
    assert compose(tau, flip).apply(w) == tau.apply(flip.apply(w))


@given(words_strategy)
def test_compose_is_associative(w):
    tau, flip = _tau(), _flip()
    left = compose(compose(tau, flip), tau)
    right = compose(tau, compose(flip, tau))
    assert left.apply(w) == right.apply(w)


@given(words_strategy, words_strategy)
def test_apply_is_homomorphism(u, v):
    tau = _tau()
    assert tau.apply(u * v) == tau.apply(u) * tau.apply(v)


def test_compose_carries_inverse():
    tau = _tau_with_inverse()
    square = compose(tau, tau)
    assert square.inverse is not None
    w = Word([2, 1, 1], 2)
    assert square.inverse.apply(square.apply(w)) == w


def test_free_factors():
    images = [Word([1, 2, 1], 3), Word([2, 1], 3), Word([3], 3)]
    alpha = Automorphism(images)
    assert alpha.free_factors() == [[0, 1], [2]]


def test_invariant_closures_and_restrict():
    alpha = _alpha_poly_3()
    assert alpha.invariant_closures() == [[0], [0, 1], [0, 1, 2]]

    restricted = alpha.restrict([0, 1])
    assert restricted.rank == 2
    assert restricted.names == ("a1", "a2")
    assert restricted.images == (Word([1], 2), Word([2, 1], 2))

    with pytest.raises(ValueError):
        alpha.restrict([1])


def test_with_fixed_generator():
    tau = _tau_with_inverse()
    extended = tau.with_fixed_generator()
    assert extended.rank == 3
    assert extended.names == ("a", "b", "t")
    assert extended.images[2] == Word([3], 3)
    assert extended.inverse is not None

    named = Automorphism.identity(1, names=["t"]).with_fixed_generator()
    assert named.names == ("t", "t_")


def test_to_dict():
    assert _tau().to_dict() == {"rank": 2, "names": ["a", "b"], "images": {"a": "a b a", "b": "b a"}}


def test_compare_foreign_type():
    with pytest.raises(NotImplementedError):
        _ = _tau() == "tau"
