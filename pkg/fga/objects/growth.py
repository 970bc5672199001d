"""Objects describing growth under iteration: rates, growth types, length sequences and certificates."""

import logging
from fractions import Fraction

import sympy

from .automorphism import Automorphism
from .word import CyclicWord, Word, format_word

log = logging.getLogger(__name__)

X = sympy.Symbol("x")
"""Variable of minimal polynomials."""

RATE_TOLERANCE = 1e-6
"""Relative tolerance below which two approximate rates are the same rate."""

PROVENANCE_EXACT = "exact"
PROVENANCE_FITTED = "fitted"


def _normalize_minpoly(poly: sympy.Poly) -> sympy.Poly:
    poly = sympy.Poly(poly.as_expr(), X, domain="QQ").clear_denoms(convert=True)[1].primitive()[1]
    if poly.LC() < 0:
        poly = -poly
    return poly


class AlgebraicReal:
    """
    Real number ≥ 1 with a float approximation and, when known, its minimal polynomial over the integers
    and an isolating interval with rational endpoints.
    """

    __slots__ = [
        "__approx",
        "__minpoly",
        "__interval",
        "__error",
    ]

    def __init__(
        self,
        approx: float,
        minpoly: sympy.Poly | None = None,
        interval: tuple[Fraction, Fraction] | None = None,
        error: float = 0.0,
    ):
        """
        Initialize a new real number.

        :param approx: Floating point approximation.
        :param minpoly: Minimal polynomial in :data:`X` with integer coefficients.
        :param interval: Isolating interval of the root within ``minpoly``.
        :param error: Estimated relative error of ``approx`` (0 for exact values).
        """
        self.__approx = float(approx)
        self.__minpoly = _normalize_minpoly(minpoly) if minpoly is not None else None
        self.__interval = interval
        self.__error = float(error)

    @classmethod
    def one(cls) -> "AlgebraicReal":
        """The exact number 1."""
        return cls(1.0, sympy.Poly(X - 1, X), (Fraction(1), Fraction(1)))

    @classmethod
    def from_minpoly(cls, minpoly: sympy.Poly, eps: sympy.Rational = sympy.Rational(1, 10**15)) -> "AlgebraicReal":
        """
        Largest real root of an irreducible integer polynomial.

        :param minpoly: Irreducible polynomial with a real root.
        :param eps: Width of the isolating interval.
        :return: Exact real.
        :raises ValueError: If the polynomial has no real root.
        """
        intervals = sympy.Poly(minpoly.as_expr(), X).intervals(eps=eps)
        if not intervals:
            raise ValueError(f"{minpoly.as_expr()} has no real root")
        (lo, hi), _ = max(intervals, key=lambda item: item[0][1])
        lo, hi = Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))
        approx = float((lo + hi) / 2)
        return cls(approx, minpoly, (lo, hi))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraicReal):
            raise NotImplementedError
        return self.same_as(other)

    __hash__ = None

    def __repr__(self):
        if self.__minpoly is not None:
            return f"{self.__class__.__name__}(approx={self.__approx!r}, minpoly={self.__minpoly.as_expr()})"
        return f"{self.__class__.__name__}(approx={self.__approx!r}, error={self.__error!r})"

    def to_dict(self) -> dict:
        """
        Return a dictionary representation.

        :return: ``approx`` always, ``minpoly`` and ``interval`` when exact, ``error`` when approximate.
        """
        data: dict = {"approx": self.__approx}
        if self.__minpoly is not None:
            data["minpoly"] = str(self.__minpoly.as_expr())
            if self.__interval is not None:
                data["interval"] = [str(self.__interval[0]), str(self.__interval[1])]
        else:
            data["error"] = self.__error
        return data

    @property
    def approx(self) -> float:
        """Floating point approximation."""
        return self.__approx

    @property
    def minpoly(self) -> sympy.Poly | None:
        """Minimal polynomial, if known."""
        return self.__minpoly

    @property
    def interval(self) -> tuple[Fraction, Fraction] | None:
        """Isolating interval, if known."""
        return self.__interval

    @property
    def error(self) -> float:
        """Estimated relative error (0 for exact values)."""
        return self.__error

    @property
    def is_exact(self) -> bool:
        """Whether the minimal polynomial is known."""
        return self.__minpoly is not None

    def is_one(self) -> bool:
        """Whether the number is 1 (exactly, or within tolerance when approximate)."""
        if self.__minpoly is not None:
            return self.__minpoly.degree() == 1 and self.__minpoly.eval(1) == 0
        return abs(self.__approx - 1.0) < max(RATE_TOLERANCE, self.__error)

    def same_as(self, other: "AlgebraicReal") -> bool:
        """
        Whether two numbers are equal.

        Exact numbers compare by minimal polynomial and root location; otherwise the relative difference
        must be below ``max(1e-6, err + err′)``.

        :param other: Other number.
        :return: True if equal.
        """
        scale = max(abs(self.__approx), 1.0)
        close = abs(self.__approx - other.approx) / scale
        if self.__minpoly is not None and other.minpoly is not None:
            if self.__minpoly != other.minpoly:
                return False
            return close < RATE_TOLERANCE
        return close < max(RATE_TOLERANCE, self.__error + other.error)


class GrowthType:
    """
    Growth type ``(λ, m)``: a sequence growing like ``λ^p p^m``.

    Growth types are ordered lexicographically, with rates compared by :meth:`AlgebraicReal.same_as`.
    """

    __slots__ = [
        "__rate",
        "__degree",
        "__provenance",
        "__confidence",
    ]

    def __init__(
        self,
        rate: AlgebraicReal,
        degree: int,
        provenance: str = PROVENANCE_EXACT,
        confidence: float = 1.0,
    ):
        """
        Initialize a new growth type.

        :param rate: Exponential rate λ ≥ 1.
        :param degree: Polynomial degree m ≥ 0.
        :param provenance: ``exact`` or ``fitted``.
        :param confidence: Confidence in (0, 1] of a fitted type.
        :raises ValueError: If a value is out of range.
        """
        if rate.approx < 1.0 - max(RATE_TOLERANCE, rate.error):
            raise ValueError(f"Growth rate must be at least 1, got {rate.approx}")
        if degree < 0:
            raise ValueError(f"Degree must be non-negative, got {degree}")
        if provenance not in (PROVENANCE_EXACT, PROVENANCE_FITTED):
            raise ValueError(f"Unknown provenance '{provenance}'")
        if not 0.0 < confidence <= 1.0:
            raise ValueError(f"Confidence must be in (0, 1], got {confidence}")
        self.__rate = rate
        self.__degree = degree
        self.__provenance = provenance
        self.__confidence = confidence

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrowthType):
            raise NotImplementedError

        if self.degree != other.degree:
            return False

        if not self.rate.same_as(other.rate):
            return False

        return True

    def __hash__(self):
        return hash(self.degree)

    def __lt__(self, other: "GrowthType") -> bool:
        if not self.rate.same_as(other.rate):
            return self.rate.approx < other.rate.approx
        return self.degree < other.degree

    def __le__(self, other: "GrowthType") -> bool:
        return self == other or self < other

    def __gt__(self, other: "GrowthType") -> bool:
        return other < self

    def __ge__(self, other: "GrowthType") -> bool:
        return other <= self

    def __repr__(self):
        return (
            f"{self.__class__.__name__}("
            f"rate={self.rate.approx!r}, "
            f"degree={self.degree}, "
            f"provenance={self.provenance}, "
            f"confidence={self.confidence}"
            ")"
        )

    def to_dict(self) -> dict:
        """
        Return a dictionary representation.

        :return: Dictionary with ``lambda``, ``m``, ``provenance`` and ``confidence``.
        """
        return {
            "lambda": self.rate.to_dict(),
            "m": self.degree,
            "provenance": self.provenance,
            "confidence": self.confidence,
        }

    @property
    def rate(self) -> AlgebraicReal:
        """Exponential rate λ."""
        return self.__rate

    @property
    def degree(self) -> int:
        """Polynomial degree m."""
        return self.__degree

    @property
    def provenance(self) -> str:
        """``exact`` when derived from a verified recurrence, ``fitted`` otherwise."""
        return self.__provenance

    @property
    def confidence(self) -> float:
        """Confidence of a fitted type; 1 for exact types."""
        return self.__confidence

    @property
    def is_exponential(self) -> bool:
        """Whether λ > 1."""
        return not self.__rate.is_one()

    @property
    def is_low_confidence(self) -> bool:
        """Whether the degree of a fitted type was a guess."""
        return self.__provenance == PROVENANCE_FITTED and self.__confidence < 0.5


class LengthSequence:
    """Lengths ``L_1, …, L_P`` of the iterates of a word or conjugacy class."""

    __slots__ = [
        "__subject",
        "__values",
        "__truncated",
    ]

    def __init__(self, subject: Word | CyclicWord, values: list[int], truncated: bool = False):
        """
        Initialize a new length sequence.

        :param subject: Iterated word or class.
        :param values: Lengths of the iterates, starting with the first iterate.
        :param truncated: Whether iteration stopped at the length cap.
        """
        self.__subject = subject
        self.__values = tuple(values)
        self.__truncated = truncated
        if truncated:
            log.info(f"Length sequence truncated after {len(values)} terms")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LengthSequence):
            raise NotImplementedError

        if self.subject != other.subject:
            return False

        if self.values != other.values:
            return False

        if self.truncated != other.truncated:
            return False

        return True

    def __hash__(self):
        return hash((self.subject, self.values, self.truncated))

    def __repr__(self):
        return (
            f"{self.__class__.__name__}("
            f"subject={self.subject}, "
            f"values={list(self.values)}, "
            f"truncated={self.truncated}"
            ")"
        )

    def __len__(self) -> int:
        return len(self.__values)

    def to_dict(self, names: list[str] | None = None) -> dict:
        """
        Return a dictionary representation, lengths as decimal strings.

        :param names: Generator names for the subject.
        :return: Dictionary representation.
        """
        return {
            "subject": format_word(self.subject, names),
            "cyclic": self.is_cyclic,
            "lengths": [str(v) for v in self.values],
            "truncated": self.truncated,
        }

    @property
    def subject(self) -> Word | CyclicWord:
        """Iterated word or class."""
        return self.__subject

    @property
    def values(self) -> tuple[int, ...]:
        """Lengths, arbitrary precision."""
        return self.__values

    @property
    def truncated(self) -> bool:
        """Whether iteration stopped at the length cap."""
        return self.__truncated

    @property
    def is_cyclic(self) -> bool:
        """Whether the subject is a conjugacy class."""
        return isinstance(self.__subject, CyclicWord)


class CancellationCertificate:
    """
    Proof that iterating an automorphism on a subject never cancels letters.

    Holds the closed set of admissible turns (pairs of adjacent letter codes). When the subject is a class
    on which the automorphism acts as a common conjugation of a simpler substitution, the certificate is
    for that substitution and records it as :attr:`core` together with the :attr:`conjugator`.
    """

    __slots__ = [
        "__automorphism",
        "__subject",
        "__turns",
        "__valid",
        "__reason",
        "__conjugator",
        "__core",
    ]

    def __init__(
        self,
        automorphism: Automorphism,
        subject: Word | CyclicWord,
        turns: frozenset[tuple[int, int]],
        valid: bool,
        reason: str = "",
        conjugator: Word | None = None,
        core: Automorphism | None = None,
    ):
        """
        Initialize a new certificate.

        :param automorphism: Certified automorphism.
        :param subject: Certified subject.
        :param turns: Closed set of admissible turns.
        :param valid: Whether the closure succeeded.
        :param reason: Why the closure failed, if it did.
        :param conjugator: Common conjugator stripped from the images, if any.
        :param core: Substitution left after stripping the conjugator, if any.
        """
        self.__automorphism = automorphism
        self.__subject = subject
        self.__turns = turns
        self.__valid = valid
        self.__reason = reason
        self.__conjugator = conjugator
        self.__core = core

    def __repr__(self):
        return (
            f"{self.__class__.__name__}("
            f"valid={self.valid}, "
            f"turns={len(self.turns)}, "
            f"stripped={self.core is not None}, "
            f"reason={self.reason!r}"
            ")"
        )

    def to_dict(self) -> dict:
        """
        Return a dictionary representation.

        :return: Dictionary representation.
        """
        names = list(self.automorphism.names)
        data = {
            "valid": self.valid,
            "turns": len(self.turns),
            "reason": self.reason,
        }
        if self.conjugator is not None:
            data["conjugator"] = format_word(self.conjugator, names)
        return data

    @property
    def automorphism(self) -> Automorphism:
        """Certified automorphism."""
        return self.__automorphism

    @property
    def subject(self) -> Word | CyclicWord:
        """Certified subject."""
        return self.__subject

    @property
    def turns(self) -> frozenset[tuple[int, int]]:
        """Closed set of admissible turns."""
        return self.__turns

    @property
    def valid(self) -> bool:
        """Whether the no-cancellation property holds."""
        return self.__valid

    @property
    def reason(self) -> str:
        """Why the closure failed (empty when valid)."""
        return self.__reason

    @property
    def conjugator(self) -> Word | None:
        """Common conjugator stripped from the images."""
        return self.__conjugator

    @property
    def core(self) -> Automorphism | None:
        """Substitution whose iterates the certificate actually counts."""
        return self.__core

    @property
    def counted(self) -> Automorphism:
        """Automorphism whose transition matrix gives the exact lengths."""
        return self.__core if self.__core is not None else self.__automorphism
