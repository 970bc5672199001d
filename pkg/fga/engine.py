"""Iteration of automorphisms on words and conjugacy classes, and growth measurement."""

import logging

from .classify import classify_growth
from .config import DEFAULT_LENGTH_CAP, DEFAULT_MAX_ITER
from .exceptions import InvalidCertificateException, RankMismatchException, TrivialSubjectException
from .helpers import LetterCode
from .objects.automorphism import Automorphism
from .objects.growth import CancellationCertificate, GrowthType, LengthSequence
from .objects.word import CyclicWord, Word, cyclic_core_bounds, format_word
from .spectral import transition_matrix

log = logging.getLogger(__name__)

EXACT_MAX_ITER = 200
"""Number of iterates computed by the exact engine."""

Subject = Word | CyclicWord


def _check_subject(alpha: Automorphism, subject: Subject) -> None:
    if subject.rank != alpha.rank:
        raise RankMismatchException(f"Subject has rank {subject.rank}, automorphism has rank {alpha.rank}")
    if subject.is_trivial():
        raise TrivialSubjectException("Growth of the trivial word is undefined")


def iterate_lengths(alpha: Automorphism, subject: Subject, max_iter: int, cap: int) -> LengthSequence:
    """
    Lengths of ``α^p(subject)`` for ``p = 1, …, max_iter`` by direct substitution and reduction.

    For conjugacy classes the cyclic length is recorded. Iteration stops once a length exceeds ``cap``;
    that length is kept and the sequence is marked truncated.

    :param alpha: Automorphism.
    :param subject: Word or class.
    :param max_iter: Number of iterates.
    :param cap: Length cap.
    :return: Length sequence.
    :raises RankMismatchException: If the ranks differ.
    :raises TrivialSubjectException: If the subject is trivial.
    :raises ValueError: If ``max_iter < 1`` or ``cap < |subject|``.
    """
    _check_subject(alpha, subject)
    if max_iter < 1:
        raise ValueError("Need at least one iterate")
    if cap < len(subject):
        raise ValueError(f"Cap {cap} is below the subject length {len(subject)}")

    cyclic = isinstance(subject, CyclicWord)
    codes: list[LetterCode] = list(subject.codes)
    values = []
    truncated = False
    for p in range(1, max_iter + 1):
        codes = alpha.apply_codes(codes)
        if cyclic:
            i, j = cyclic_core_bounds(codes)
            codes = codes[i:j]
        values.append(len(codes))
        log.debug(f"Iterate {p} has length {len(codes)}")
        if len(codes) > cap:
            truncated = True
            break
    return LengthSequence(subject, values, truncated)


def _internal_turns(codes) -> set[tuple[int, int]]:
    return set(zip(codes, codes[1:]))


def _close_turns(alpha: Automorphism, subject: Subject) -> tuple[frozenset[tuple[int, int]], str]:
    codes = subject.codes
    turns = _internal_turns(codes)
    if isinstance(subject, CyclicWord) and len(codes) > 0:
        turns.add((codes[-1], codes[0]))

    letters = set(codes)
    pending = list(letters)
    while pending:
        x = pending.pop()
        image = alpha.image_codes(x)
        turns |= _internal_turns(image)
        for y in image:
            if y not in letters:
                letters.add(y)
                pending.append(y)

    pending_turns = list(turns)
    while pending_turns:
        x, y = pending_turns.pop()
        last = alpha.image_codes(x)[-1]
        first = alpha.image_codes(y)[0]
        if last == -first:
            return frozenset(turns), f"turn ({x}, {y}) cancels in its image"
        junction = (last, first)
        if junction not in turns:
            turns.add(junction)
            pending_turns.append(junction)
    return frozenset(turns), ""


def _strip_common_conjugator(alpha: Automorphism, subject: CyclicWord) -> tuple[Word, Automorphism] | None:
    rank = alpha.rank
    conjugators: dict[int, tuple[LetterCode, ...]] = {}
    cores: dict[int, tuple[LetterCode, ...]] = {}
    for g, image in enumerate(alpha.images):
        i, j = cyclic_core_bounds(image.codes)
        conjugators[g] = image.codes[:i]
        cores[g] = image.codes[i:j]

    span = {abs(c) - 1 for c in subject.codes}
    pending = list(span)
    while pending:
        g = pending.pop()
        for c in cores[g]:
            h = abs(c) - 1
            if h not in span:
                span.add(h)
                pending.append(h)

    common = {conjugators[g] for g in span}
    if len(common) != 1:
        return None
    conjugator = common.pop()
    if not conjugator:
        return None

    images = [Word(cores[g], rank) if g in span else Word([g + 1], rank) for g in range(rank)]
    core = Automorphism(images, names=alpha.names, validate=False)
    return Word(conjugator, rank), core


def certify_no_cancellation(alpha: Automorphism, subject: Subject) -> CancellationCertificate:
    """
    Try to prove that iterating ``α`` on the subject never cancels.

    The set of turns (adjacent letter pairs) of the subject and of the images of all letters reachable
    from it is closed under the image map; the certificate is valid when no turn's image junction cancels.
    For a class whose letters span generators all mapped to ``c · core · c⁻¹`` with one common ``c``, the
    closure is run for the core substitution instead, whose iterates are conjugate to those of ``α``.

    :param alpha: Automorphism.
    :param subject: Reduced word or class.
    :return: Certificate, valid or not.
    """
    if subject.rank != alpha.rank:
        raise RankMismatchException(f"Subject has rank {subject.rank}, automorphism has rank {alpha.rank}")

    turns, reason = _close_turns(alpha, subject)
    if not reason:
        log.info(f"Certified no cancellation with {len(turns)} turns")
        return CancellationCertificate(alpha, subject, turns, True)

    if isinstance(subject, CyclicWord):
        stripped = _strip_common_conjugator(alpha, subject)
        if stripped is not None:
            conjugator, core = stripped
            core_turns, core_reason = _close_turns(core, subject)
            if not core_reason:
                log.info(f"Certified no cancellation after stripping conjugator of length {len(conjugator)}")
                return CancellationCertificate(alpha, subject, core_turns, True, conjugator=conjugator, core=core)

    log.info(f"No cancellation certificate: {reason}")
    return CancellationCertificate(alpha, subject, turns, False, reason=reason)


def exact_lengths(
    alpha: Automorphism, subject: Subject, certificate: CancellationCertificate, max_iter: int
) -> LengthSequence:
    """
    Lengths of the iterates as ℓ¹ norms of ``M^p v``.

    :param alpha: Automorphism.
    :param subject: Word or class.
    :param certificate: Valid certificate for ``(α, subject)``.
    :param max_iter: Number of iterates.
    :return: Exact length sequence.
    :raises InvalidCertificateException: If the certificate is invalid or belongs to something else.
    """
    if not certificate.valid:
        raise InvalidCertificateException(f"Certificate is not valid: {certificate.reason}")
    issued_for = certificate.subject
    if (
        certificate.automorphism != alpha
        or type(issued_for) is not type(subject)
        or issued_for != subject
    ):
        raise InvalidCertificateException("Certificate was issued for another automorphism or subject")

    matrix = transition_matrix(certificate.counted)
    vector = [0] * alpha.rank
    for c in subject.codes:
        vector[abs(c) - 1] += 1
    return LengthSequence(subject, matrix.l1_orbit(vector, max_iter))


class GrowthMeasurement:
    """Length sequence of a subject with its classified growth and how it was computed."""

    __slots__ = [
        "__sequence",
        "__growth",
        "__certificate",
    ]

    def __init__(self, sequence: LengthSequence, growth: GrowthType, certificate: CancellationCertificate):
        """
        Initialize a new measurement.

        :param sequence: Measured lengths.
        :param growth: Classified growth type.
        :param certificate: Certificate that was attempted.
        """
        self.__sequence = sequence
        self.__growth = growth
        self.__certificate = certificate

    def __repr__(self):
        return f"{self.__class__.__name__}(growth={self.growth}, method={self.method})"

    def to_dict(self, names: list[str] | None = None) -> dict:
        """
        Return a dictionary representation.

        :param names: Generator names for the subject.
        :return: Sequence record merged with the growth type.
        """
        return {
            **self.sequence.to_dict(names),
            **self.growth.to_dict(),
            "method": self.method,
        }

    @property
    def sequence(self) -> LengthSequence:
        """Measured lengths."""
        return self.__sequence

    @property
    def growth(self) -> GrowthType:
        """Classified growth type."""
        return self.__growth

    @property
    def certificate(self) -> CancellationCertificate:
        """Attempted certificate."""
        return self.__certificate

    @property
    def method(self) -> str:
        """``certified`` when the exact engine was used, ``direct`` otherwise."""
        return "certified" if self.__certificate.valid else "direct"


def measure_class(
    alpha: Automorphism,
    subject: CyclicWord,
    max_iter: int = DEFAULT_MAX_ITER,
    cap: int = DEFAULT_LENGTH_CAP,
    max_order: int | None = None,
) -> GrowthMeasurement:
    """
    Measure the growth of a conjugacy class, exactly when certified and by direct iteration otherwise.

    :param alpha: Automorphism.
    :param subject: Nontrivial class.
    :param max_iter: Iterates for direct iteration.
    :param cap: Length cap for direct iteration.
    :param max_order: Largest recurrence order tried.
    :return: Measurement.
    :raises TrivialSubjectException: If the class is trivial.
    :raises GrowthClassificationException: If the lengths cannot be classified.
    """
    _check_subject(alpha, subject)
    certificate = certify_no_cancellation(alpha, subject)
    if certificate.valid:
        sequence = exact_lengths(alpha, subject, certificate, max(EXACT_MAX_ITER, max_iter))
    else:
        sequence = iterate_lengths(alpha, subject, max_iter, cap)
    growth = classify_growth(sequence, max_order)
    log.info(f"Class {format_word(subject, list(alpha.names))} grows like {growth}")
    return GrowthMeasurement(sequence, growth, certificate)


def measure_element(
    alpha: Automorphism,
    subject: Word,
    max_iter: int = DEFAULT_MAX_ITER,
    cap: int = DEFAULT_LENGTH_CAP,
) -> GrowthMeasurement:
    """
    Measure the growth of an element as the class of ``t·g`` under ``α`` extended by ``t ↦ t``.

    The returned sequence holds the element lengths ``|α^p(g)|``.

    :param alpha: Automorphism.
    :param subject: Nontrivial element.
    :param max_iter: Iterates for direct iteration.
    :param cap: Length cap for direct iteration.
    :return: Measurement.
    :raises TrivialSubjectException: If the element is trivial.
    :raises GrowthClassificationException: If the lengths cannot be classified.
    """
    _check_subject(alpha, subject)
    extended = alpha.with_fixed_generator()
    rank = extended.rank
    marked = CyclicWord((rank,) + subject.codes, rank)
    measurement = measure_class(extended, marked, max_iter, cap + 1, max_order=rank + 1)
    sequence = LengthSequence(
        subject,
        [v - 1 for v in measurement.sequence.values],
        measurement.sequence.truncated,
    )
    return GrowthMeasurement(sequence, measurement.growth, measurement.certificate)


def growth_of_class(
    alpha: Automorphism, subject: CyclicWord, max_iter: int = DEFAULT_MAX_ITER, cap: int = DEFAULT_LENGTH_CAP
) -> GrowthType:
    """
    Growth type of a conjugacy class.

    :param alpha: Automorphism.
    :param subject: Nontrivial class.
    :param max_iter: Iterates for direct iteration.
    :param cap: Length cap for direct iteration.
    :return: Growth type.
    """
    return measure_class(alpha, subject, max_iter, cap).growth


def growth_of_element(
    alpha: Automorphism, subject: Word, max_iter: int = DEFAULT_MAX_ITER, cap: int = DEFAULT_LENGTH_CAP
) -> GrowthType:
    """
    Growth type of an element.

    :param alpha: Automorphism.
    :param subject: Nontrivial element.
    :param max_iter: Iterates for direct iteration.
    :param cap: Length cap for direct iteration.
    :return: Growth type.
    """
    return measure_element(alpha, subject, max_iter, cap).growth
