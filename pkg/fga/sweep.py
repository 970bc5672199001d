"""Growth measurement over all short conjugacy classes, and the invariants derived from it."""

import asyncio
import logging
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor

from .config import RunConfig
from .classify import MIN_TERMS
from .engine import GrowthMeasurement, measure_class
from .exceptions import GrowthClassificationException
from .invariants import check_all, check_growth_bound, fix_rank_lower_bound, k_lower_bound
from .objects.automorphism import Automorphism
from .objects.growth import PROVENANCE_EXACT, GrowthType
from .objects.invariants import InvariantReport, InvariantTuple
from .objects.word import CyclicWord, format_word, iter_cyclic_words

log = logging.getLogger(__name__)


class SweepFailure:
    """Class whose growth could not be classified."""

    __slots__ = [
        "__subject",
        "__reason",
    ]

    def __init__(self, subject: CyclicWord, reason: str):
        """
        Initialize a new failure.

        :param subject: Class.
        :param reason: Why classification failed.
        """
        self.__subject = subject
        self.__reason = reason

    def __repr__(self):
        return f"{self.__class__.__name__}(subject={self.subject}, reason={self.reason})"

    def to_dict(self, names: list[str] | None = None) -> dict:
        return {"subject": format_word(self.subject, names), "reason": self.reason}

    @property
    def subject(self) -> CyclicWord:
        """Class."""
        return self.__subject

    @property
    def reason(self) -> str:
        """Failure reason."""
        return self.__reason


class SweepResult:
    """Measurements of every swept class, with the measured degree ``d`` and count ``e′``."""

    __slots__ = [
        "__automorphism",
        "__measurements",
        "__failures",
    ]

    def __init__(
        self,
        automorphism: Automorphism,
        measurements: Sequence[GrowthMeasurement],
        failures: Sequence[SweepFailure] = (),
    ):
        """
        Initialize a new sweep result.

        :param automorphism: Swept automorphism.
        :param measurements: Measurements in sweep order.
        :param failures: Classes that could not be classified.
        """
        self.__automorphism = automorphism
        self.__measurements = list(measurements)
        self.__failures = list(failures)

    def __repr__(self):
        return (
            f"{self.__class__.__name__}("
            f"classes={len(self.measurements)}, "
            f"failures={len(self.failures)}, "
            f"d={self.d}, "
            f"e_prime={self.e_prime}"
            ")"
        )

    def to_dict(self) -> dict:
        """
        Return a dictionary representation.

        :return: Dictionary with ``d``, ``ePrime``, the distinct exponential types and per-class records.
        """
        names = list(self.automorphism.names)
        return {
            "n": self.automorphism.rank,
            "d": self.d,
            "ePrime": self.e_prime,
            "exponentialTypes": [growth.to_dict() for growth in self.exponential_types],
            "classes": [m.to_dict(names) for m in self.measurements],
            "failures": [f.to_dict(names) for f in self.failures],
        }

    @property
    def automorphism(self) -> Automorphism:
        """Swept automorphism."""
        return self.__automorphism

    @property
    def measurements(self) -> list[GrowthMeasurement]:
        """Measurements in sweep order."""
        return self.__measurements

    @property
    def failures(self) -> list[SweepFailure]:
        """Unclassified classes."""
        return self.__failures

    def __trusted(self) -> list[GrowthType]:
        return [m.growth for m in self.__measurements if not m.growth.is_low_confidence]

    @property
    def d(self) -> int:
        """Largest degree of polynomial growth, 0 when no class grows polynomially."""
        degrees = [g.degree for g in self.__trusted() if not g.is_exponential]
        return max(degrees, default=0)

    @property
    def exponential_types(self) -> list[GrowthType]:
        """Distinct exponential growth types, smallest first."""
        distinct: list[GrowthType] = []
        exact_first = sorted(self.__trusted(), key=lambda g: g.provenance != PROVENANCE_EXACT)
        for growth in exact_first:
            if growth.is_exponential and growth not in distinct:
                distinct.append(growth)
        return sorted(distinct)

    @property
    def e_prime(self) -> int:
        """Number of distinct exponential growth types."""
        return len(self.exponential_types)


def sweep_classes(alpha: Automorphism, max_len: int, probes: Sequence[CyclicWord] = ()) -> list[CyclicWord]:
    """
    Classes measured by a sweep: every class of length at most ``max_len``, then the probes not already listed.

    :param alpha: Automorphism.
    :param max_len: Maximal class length.
    :param probes: Extra classes.
    :return: Classes in sweep order.
    """
    classes = [CyclicWord(codes, alpha.rank) for codes in iter_cyclic_words(range(alpha.rank), max_len)]
    seen = set(classes)
    for probe in probes:
        if probe.is_trivial() or probe in seen or probe.inverse() in seen:
            continue
        seen.add(probe)
        classes.append(probe)
    return classes


def _settled(measurement: GrowthMeasurement, rank: int) -> bool:
    sequence, growth = measurement.sequence, measurement.growth
    if not sequence.truncated or growth.provenance == PROVENANCE_EXACT:
        return True
    terms = len(sequence)
    if terms < MIN_TERMS or growth.is_low_confidence or not growth.is_exponential:
        return False
    # Polynomial lengths of degree below the rank grow by at most this ratio at the last term.
    return terms > rank and growth.rate.approx > terms / (terms - rank + 1)


def _measure(alpha: Automorphism, subject: CyclicWord, config: RunConfig) -> GrowthMeasurement | SweepFailure:
    first_cap = min(config.sweep_cap, config.length_cap)
    try:
        measurement = measure_class(alpha, subject, config.max_iter, first_cap)
        if _settled(measurement, alpha.rank) or first_cap == config.length_cap:
            return measurement
    except GrowthClassificationException as ex:
        if first_cap == config.length_cap:
            return SweepFailure(subject, str(ex))
    log.debug(f"Remeasuring {format_word(subject, list(alpha.names))} with length cap {config.length_cap}")
    try:
        return measure_class(alpha, subject, config.max_iter, config.length_cap)
    except GrowthClassificationException as ex:
        return SweepFailure(subject, str(ex))


async def sweep_async(
    alpha: Automorphism, config: RunConfig | None = None, probes: Sequence[CyclicWord] = ()
) -> SweepResult:
    """
    Measure the growth of every short class.

    With ``config.jobs > 1`` classes are measured in a process pool; results keep the sweep order.

    :param alpha: Automorphism.
    :param config: Run configuration.
    :param probes: Extra classes to measure.
    :return: Sweep result.
    """
    if config is None:
        config = RunConfig()
    classes = sweep_classes(alpha, config.max_len, probes)
    log.info(f"Sweeping {len(classes)} classes of length <= {config.max_len} with {config.jobs} jobs")

    if config.jobs == 1:
        outcomes = [_measure(alpha, c, config) for c in classes]
    else:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            outcomes = await asyncio.gather(*[loop.run_in_executor(pool, _measure, alpha, c, config) for c in classes])

    measurements = [o for o in outcomes if isinstance(o, GrowthMeasurement)]
    failures = [o for o in outcomes if isinstance(o, SweepFailure)]
    for failure in failures:
        log.warning(f"Class {format_word(failure.subject, list(alpha.names))} not classified: {failure.reason}")
    result = SweepResult(alpha, measurements, failures)
    log.info(f"Sweep finished: {result}")
    return result


def sweep(alpha: Automorphism, config: RunConfig | None = None, probes: Sequence[CyclicWord] = ()) -> SweepResult:
    """
    Blocking version of :func:`sweep_async`.

    :param alpha: Automorphism.
    :param config: Run configuration.
    :param probes: Extra classes to measure.
    :return: Sweep result.
    """
    return asyncio.run(sweep_async(alpha, config, probes))


def analyze(
    alpha: Automorphism,
    config: RunConfig | None = None,
    probes: Sequence[CyclicWord] = (),
    declared: dict | None = None,
    result: SweepResult | None = None,
) -> InvariantReport:
    """
    Measure ``e′`` and ``d`` by a sweep, bound the fixed rank and ``k`` from below, and check every inequality.

    :param alpha: Automorphism.
    :param config: Run configuration.
    :param probes: Extra classes for the sweep.
    :param declared: Expected invariants declared by a constructor, reported alongside.
    :param result: Sweep already performed, if any.
    :return: Invariant report.
    :raises SearchBudgetException: Never; exhausted searches give weaker bounds and log a warning.
    """
    if config is None:
        config = RunConfig()
    if result is None:
        result = sweep(alpha, config, probes)
    fix_rank = fix_rank_lower_bound(alpha, config.max_len, config.search_budget)
    k = k_lower_bound(alpha, config.max_len, config.max_period, config.search_budget)
    measured = InvariantTuple(alpha.rank, result.e_prime, result.d, fix_rank=fix_rank, k=k)

    checks = check_all(measured)
    bounds = []
    for growth in [m.growth for m in result.measurements]:
        check = check_growth_bound(alpha.rank, growth)
        if check not in bounds:
            bounds.append(check)
    checks += bounds

    names = list(alpha.names)
    return InvariantReport(measured, checks, declared=declared, growth=[m.to_dict(names) for m in result.measurements])
