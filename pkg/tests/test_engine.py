import pytest

from fga.constructions import make_alpha_poly, make_beta, make_bridson_groves, make_fibonacci, make_nested, make_tau
from fga.engine import (
    EXACT_MAX_ITER,
    certify_no_cancellation,
    exact_lengths,
    growth_of_class,
    growth_of_element,
    iterate_lengths,
    measure_class,
    measure_element,
)
from fga.exceptions import InvalidCertificateException, RankMismatchException, TrivialSubjectException
from fga.objects.growth import PROVENANCE_EXACT, X
from fga.objects.word import CyclicWord, Word
from fga.parse import parse_cyclic_word, parse_word


def test_iterate_lengths():
    tau = make_tau().automorphism
    seq = iterate_lengths(tau, CyclicWord([1], 2), 6, 10**6)
    assert seq.values == (3, 8, 21, 55, 144, 377)
    assert not seq.truncated


def test_iterate_lengths_truncates_at_cap():
    tau = make_tau().automorphism
    seq = iterate_lengths(tau, CyclicWord([1], 2), 40, 50)
    assert seq.values == (3, 8, 21, 55)
    assert seq.truncated


def test_iterate_lengths_cyclic_reduces():
    tau = make_tau().automorphism
    commutator = CyclicWord([1, 2, -1, -2], 2)
    assert iterate_lengths(tau, commutator, 5, 100).values == (4, 4, 4, 4, 4)


@pytest.mark.parametrize(
    ("max_iter", "cap"),
    [
        (0, 100),
        (5, 0),
    ],
)
def test_iterate_lengths_bad_parameters(max_iter, cap):
    with pytest.raises(ValueError):
        iterate_lengths(make_tau().automorphism, CyclicWord([1, 2], 2), max_iter, cap)


def test_trivial_subject():
    tau = make_tau().automorphism
    with pytest.raises(TrivialSubjectException):
        measure_class(tau, CyclicWord([1, -1], 2))
    with pytest.raises(TrivialSubjectException):
        measure_element(tau, Word([], 2))


def test_rank_mismatch():
    with pytest.raises(RankMismatchException):
        measure_class(make_tau().automorphism, CyclicWord([1], 3))


def test_certificate_for_positive_substitution():
    tau = make_tau().automorphism
    certificate = certify_no_cancellation(tau, CyclicWord([1], 2))
    assert certificate.valid
    assert certificate.core is None
    assert certificate.counted == tau
    assert (1, 1) in certificate.turns


def test_certificate_strips_common_conjugator():
    construction = make_bridson_groves()
    alpha = construction.automorphism
    certificate = certify_no_cancellation(alpha, parse_cyclic_word("b", list(alpha.names)))
    assert certificate.valid
    assert certificate.conjugator == Word([2], 2)
    assert certificate.core.images == (Word([1], 2), Word([2, 1], 2))


def test_certificate_fails_on_cancellation():
    alpha = make_bridson_groves().automorphism
    certificate = certify_no_cancellation(alpha, Word([2], 2))
    assert not certificate.valid
    assert "cancels" in certificate.reason


def test_exact_lengths_match_direct_iteration():
    alpha = make_beta(1).automorphism
    subject = parse_cyclic_word("a a1", list(alpha.names))
    certificate = certify_no_cancellation(alpha, subject)
    assert certificate.valid
    exact = exact_lengths(alpha, subject, certificate, 8)
    direct = iterate_lengths(alpha, subject, 8, 10**6)
    assert exact.values == direct.values
    assert exact.values[:4] == (6, 12, 20, 30)


def test_exact_lengths_rejects_foreign_certificate():
    tau = make_tau().automorphism
    certificate = certify_no_cancellation(tau, CyclicWord([1], 2))
    with pytest.raises(InvalidCertificateException):
        exact_lengths(tau, CyclicWord([2], 2), certificate, 5)
    with pytest.raises(InvalidCertificateException):
        exact_lengths(tau, Word([1], 2), certificate, 5)

    invalid = certify_no_cancellation(make_bridson_groves().automorphism, Word([2], 2))
    with pytest.raises(InvalidCertificateException):
        exact_lengths(make_bridson_groves().automorphism, Word([2], 2), invalid, 5)


def test_tau_class_growth_is_exact():
    tau = make_tau().automorphism
    measurement = measure_class(tau, CyclicWord([1], 2))
    assert measurement.method == "certified"
    assert len(measurement.sequence) == EXACT_MAX_ITER
    growth = measurement.growth
    assert growth.provenance == PROVENANCE_EXACT
    assert growth.rate.minpoly.as_expr() == X**2 - 3 * X + 1
    assert growth.degree == 0

    data = measurement.to_dict(list(tau.names))
    assert data["subject"] == "a"
    assert data["m"] == 0
    assert data["method"] == "certified"


def test_tau_commutator_is_fixed():
    growth = growth_of_class(make_tau().automorphism, CyclicWord([1, 2, -1, -2], 2))
    assert growth.rate.is_one()
    assert growth.degree == 0


def test_fibonacci_growth():
    growth = growth_of_class(make_fibonacci().automorphism, CyclicWord([1], 2))
    assert growth.rate.minpoly.as_expr() == X**2 - X - 1


@pytest.mark.parametrize(
    ("generator", "degree"),
    [
        ("a1", 0),
        ("a2", 1),
        ("a3", 2),
        ("a4", 3),
    ],
)
def test_polynomial_family_degrees(generator, degree):
    alpha = make_alpha_poly(4).automorphism
    growth = growth_of_class(alpha, parse_cyclic_word(generator, list(alpha.names)))
    assert not growth.is_exponential
    assert growth.degree == degree
    assert growth.provenance == PROVENANCE_EXACT


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_conjugating_family_degree(ell):
    alpha = make_beta(ell).automorphism
    growth = growth_of_class(alpha, parse_cyclic_word(f"a a{ell}", list(alpha.names)))
    assert not growth.is_exponential
    assert growth.degree == ell + 1


def test_nested_family_degree():
    alpha = make_nested(2).automorphism
    growth = growth_of_class(alpha, parse_cyclic_word("a2", list(alpha.names)))
    assert growth.rate.minpoly.as_expr() == X**2 - X - 1
    assert growth.degree == 1


def test_element_grows_faster_than_its_class():
    alpha = make_bridson_groves().automorphism
    b = parse_word("b", list(alpha.names))

    class_growth = growth_of_class(alpha, CyclicWord(b.codes, 2))
    assert not class_growth.is_exponential
    assert class_growth.degree == 1

    measurement = measure_element(alpha, b, max_iter=30)
    assert measurement.method == "direct"
    assert measurement.sequence.values[:4] == (4, 7, 12, 19)
    assert not measurement.sequence.is_cyclic
    assert measurement.growth.degree == 2
    assert growth_of_element(alpha, b, max_iter=30).degree == 2
