import time

import pytest

import fga.sweep
from fga.config import RunConfig
from fga.constructions import make_alpha_poly, make_tau, make_theta
from fga.exceptions import GrowthClassificationException
from fga.engine import GrowthMeasurement
from fga.objects.growth import (
    PROVENANCE_FITTED,
    X,
    AlgebraicReal,
    CancellationCertificate,
    GrowthType,
    LengthSequence,
)
from fga.objects.word import CyclicWord, format_word
from fga.sweep import SweepFailure, analyze, sweep, sweep_async, sweep_classes

COMMUTATOR = CyclicWord([1, 2, -1, -2], 2)


def test_sweep_classes():
    tau = make_tau().automorphism
    assert sweep_classes(tau, 1) == [CyclicWord([-1], 2), CyclicWord([-2], 2)]

    probes = [CyclicWord([1], 2), CyclicWord([1, -1], 2), COMMUTATOR, COMMUTATOR]
    assert sweep_classes(tau, 1, probes) == [CyclicWord([-1], 2), CyclicWord([-2], 2), COMMUTATOR]


def test_sweep_classes_length_two():
    classes = sweep_classes(make_tau().automorphism, 2)
    assert len(classes) == len(set(classes))
    for c in classes:
        assert c.inverse() == c or c.inverse() not in classes


def test_sweep_tau():
    result = sweep(make_tau().automorphism, RunConfig(max_len=1), probes=[COMMUTATOR])
    assert result.e_prime == 1
    assert result.d == 0
    assert not result.failures
    assert result.exponential_types[0].rate.minpoly.as_expr() == X**2 - 3 * X + 1

    data = result.to_dict()
    assert data["n"] == 2
    assert data["ePrime"] == 1
    assert [c["subject"] for c in data["classes"]] == ["A", "B", format_word(COMMUTATOR, ["a", "b"])]


def test_sweep_polynomial_family():
    result = sweep(make_alpha_poly(3).automorphism, RunConfig(max_len=1))
    assert result.e_prime == 0
    assert result.d == 2
    assert sorted(m.growth.degree for m in result.measurements) == [0, 1, 2]


async def test_sweep_async():
    result = await sweep_async(make_tau().automorphism, RunConfig(max_len=1))
    assert len(result.measurements) == 2
    assert result.e_prime == 1


def test_sweep_in_worker_processes():
    alpha = make_alpha_poly(3).automorphism
    serial = sweep(alpha, RunConfig(max_len=1))
    parallel = sweep(alpha, RunConfig(max_len=1, jobs=2))
    assert parallel.to_dict() == serial.to_dict()


def test_sweep_records_failures(mocker):
    mocker.patch("fga.sweep.measure_class", side_effect=GrowthClassificationException("too few terms"))
    result = sweep(make_tau().automorphism, RunConfig(max_len=1))
    assert result.measurements == []
    assert len(result.failures) == 2
    assert isinstance(result.failures[0], SweepFailure)
    assert result.to_dict()["failures"][0] == {"subject": "A", "reason": "too few terms"}
    assert result.e_prime == 0


def test_analyze_tau():
    tau = make_tau()
    result = sweep(tau.automorphism, RunConfig(max_len=1))
    report = analyze(
        tau.automorphism,
        RunConfig(max_len=4, max_period=2),
        declared=tau.expected,
        result=result,
    )
    measured = report.measured
    assert (measured.n, measured.e, measured.d) == (2, 1, 0)
    assert measured.fix_rank == 1
    assert measured.k == 0
    assert report.all_passed
    assert len(report.checks) == 9

    data = report.to_dict()
    assert data["measured"] == {"ePrime": 1, "d": 0, "fixRankLower": 1, "kLower": 0}
    assert data["declaredExpected"] == tau.expected
    assert len(data["growth"]) == 2


@pytest.mark.parametrize("jobs", [0, -1])
def test_bad_jobs(jobs):
    with pytest.raises(ValueError):
        RunConfig(jobs=jobs)


def test_sweep_mixed_growth_within_time():
    start = time.monotonic()
    result = sweep(make_theta(5).automorphism, RunConfig(max_len=2))
    assert time.monotonic() - start < 120
    assert not result.failures
    assert result.e_prime >= 1
    assert result.d == 1


def test_sweep_caps_first_pass(mocker):
    spy = mocker.spy(fga.sweep, "measure_class")
    result = sweep(make_tau().automorphism, RunConfig(max_len=1, sweep_cap=1000))
    assert result.e_prime == 1
    assert {call.args[3] for call in spy.call_args_list} == {1000}


def test_sweep_remeasures_unsettled_classes(mocker):
    real = fga.sweep.measure_class

    def measure(alpha, subject, max_iter, cap):
        if cap < 1000:
            raise GrowthClassificationException("too few terms")
        return real(alpha, subject, max_iter, cap)

    mocked = mocker.patch("fga.sweep.measure_class", side_effect=measure)
    result = sweep(make_tau().automorphism, RunConfig(max_len=1, sweep_cap=10, length_cap=10**6))
    assert not result.failures
    assert result.e_prime == 1
    assert [call.args[3] for call in mocked.call_args_list] == [10, 10**6, 10, 10**6]


@pytest.mark.parametrize("sweep_cap", [0, 9])
def test_bad_sweep_cap(sweep_cap):
    with pytest.raises(ValueError):
        RunConfig(sweep_cap=sweep_cap)


def _truncated_measurement(alpha, rate, confidence=1.0):
    subject = CyclicWord([1], alpha.rank)
    sequence = LengthSequence(subject, [3**p for p in range(1, 13)], truncated=True)
    growth = GrowthType(AlgebraicReal(rate, error=1e-4), 0, PROVENANCE_FITTED, confidence)
    certificate = CancellationCertificate(alpha, subject, frozenset(), False, reason="cancels")
    return GrowthMeasurement(sequence, growth, certificate)


@pytest.mark.parametrize(
    ("rate", "confidence", "passes"),
    [
        (2.618, 1.0, 1),
        (1.3, 1.0, 2),
        (2.618, 0.25, 2),
    ],
)
def test_sweep_keeps_only_clearly_exponential_first_passes(mocker, rate, confidence, passes):
    alpha = make_theta(5).automorphism
    mocked = mocker.patch("fga.sweep.measure_class", return_value=_truncated_measurement(alpha, rate, confidence))
    result = sweep(alpha, RunConfig(max_len=1))
    assert len(result.measurements) == 5
    assert mocked.call_count == 5 * passes
