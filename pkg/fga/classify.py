"""Classification of length sequences into growth types ``(λ, m)``.

Two strategies are tried in order:

1. exact detection of an integer linear recurrence on the tail of the sequence, whose characteristic
   polynomial gives λ (dominant root, exact) and m (multiplicity of the dominant root minus one);
2. a numerical fit: λ from ratios of the differenced sequence with Aitken acceleration, m from the
   slope of ``log(L_p / λ^p)`` against ``log p``.
"""

import logging
import math
from collections.abc import Sequence
from fractions import Fraction

import numpy as np
import sympy

from .exceptions import GrowthClassificationException
from .objects.growth import (
    PROVENANCE_EXACT,
    PROVENANCE_FITTED,
    X,
    AlgebraicReal,
    GrowthType,
    LengthSequence,
)

log = logging.getLogger(__name__)

MIN_TERMS = 8
"""Usable terms needed to classify a sequence that was not truncated."""

MIN_TERMS_TRUNCATED = 3
"""Usable terms needed to classify a sequence truncated by the length cap."""

DEGREE_RESIDUAL = 0.15
"""Largest distance of a fitted slope from an integer for the rounded degree to be trusted."""

_MODULUS_TOLERANCE = 1e-9
_EXPONENTIAL_THRESHOLD = 0.01


class Recurrence:
    """Linear recurrence ``v_j = Σ c_i v_{j−k+i}`` holding for all ``j ≥ start`` (0-based)."""

    __slots__ = [
        "__coefficients",
        "__start",
    ]

    def __init__(self, coefficients: Sequence[Fraction], start: int):
        """
        Initialize a new recurrence.

        :param coefficients: ``c_0, …, c_{k−1}``.
        :param start: First index at which the recurrence holds.
        """
        self.__coefficients = tuple(coefficients)
        self.__start = start

    def __eq__(self, other) -> bool:
        if not isinstance(other, Recurrence):
            raise NotImplementedError
        return self.coefficients == other.coefficients and self.start == other.start

    def __hash__(self):
        return hash((self.coefficients, self.start))

    def __repr__(self):
        return f"{self.__class__.__name__}(coefficients={[str(c) for c in self.coefficients]}, start={self.start})"

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        """Recurrence coefficients, oldest term first."""
        return self.__coefficients

    @property
    def order(self) -> int:
        """Order k."""
        return len(self.__coefficients)

    @property
    def start(self) -> int:
        """First index at which the recurrence holds."""
        return self.__start

    @property
    def transient(self) -> int:
        """Number of leading terms not governed by the recurrence."""
        return self.__start - self.order

    def characteristic_polynomial(self) -> sympy.Poly:
        """``x^k − Σ c_i x^i`` with integer coefficients."""
        expr = X**self.order - sum(
            sympy.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(self.__coefficients)
        )
        return sympy.Poly(expr, X, domain="QQ").clear_denoms(convert=True)[1]


def _holds_at(coefficients: Sequence[Fraction], values: Sequence[int], j: int) -> bool:
    k = len(coefficients)
    return sum(c * values[j - k + i] for i, c in enumerate(coefficients)) == values[j]


def detect_recurrence(values: Sequence[int], max_order: int) -> Recurrence | None:
    """
    Find the lowest-order linear recurrence with rational coefficients that the sequence satisfies.

    For each order ``k`` the coefficients are solved from the last ``2k + 4`` terms and accepted only if the
    recurrence extends backwards to every term except a transient prefix of at most ``k`` terms.

    :param values: Sequence terms.
    :param max_order: Largest order tried.
    :return: Recurrence, or None if none of order ≤ ``max_order`` fits.
    """
    n = len(values)
    for k in range(1, max_order + 1):
        window = 2 * k + 4
        if window > n:
            break
        tail = values[n - window :]
        rows = sympy.Matrix([[tail[j - k + i] for i in range(k)] for j in range(k, window)])
        rhs = sympy.Matrix([tail[j] for j in range(k, window)])
        try:
            solution, params = rows.gauss_jordan_solve(rhs)
        except ValueError:
            continue
        if params.shape[0]:
            solution = solution.subs({p: 0 for p in params})
        coefficients = [Fraction(int(c.p), int(c.q)) for c in (sympy.Rational(x) for x in solution)]

        start = k
        for j in range(n - 1, k - 1, -1):
            if not _holds_at(coefficients, values, j):
                start = j + 1
                break
        if start <= 2 * k:
            log.debug(f"Found recurrence of order {k} holding from term {start}")
            return Recurrence(coefficients, start)
    return None


def growth_from_recurrence(recurrence: Recurrence) -> GrowthType | None:
    """
    Read the growth type off a recurrence's characteristic polynomial.

    :param recurrence: Recurrence of a positive sequence.
    :return: Exact growth type, or None if the dominant root is not a real number ≥ 1.
    """
    _, factors = sympy.factor_list(recurrence.characteristic_polynomial().as_expr(), X)
    moduli = []
    for factor, multiplicity in factors:
        poly = sympy.Poly(factor, X)
        roots = poly.nroots(n=30)
        moduli.append((poly, multiplicity, max(abs(complex(r)) for r in roots)))

    dominant_modulus = max(mod for _, _, mod in moduli)
    tolerance = _MODULUS_TOLERANCE * max(dominant_modulus, 1.0)
    dominant = [(poly, mult) for poly, mult, mod in moduli if abs(mod - dominant_modulus) <= tolerance]

    if dominant_modulus < 1.0 - tolerance:
        return None
    if abs(dominant_modulus - 1.0) <= tolerance:
        for poly, mult in dominant:
            if poly.eval(1) == 0:
                return GrowthType(AlgebraicReal.one(), mult - 1, PROVENANCE_EXACT)
        return None

    for poly, mult in dominant:
        if not poly.intervals():
            continue
        rate = AlgebraicReal.from_minpoly(poly)
        if abs(rate.approx - dominant_modulus) <= 1e-6 * dominant_modulus:
            return GrowthType(rate, mult - 1, PROVENANCE_EXACT)
    return None


def _differences(values: Sequence[int], times: int) -> list[int]:
    current = list(values)
    for _ in range(times):
        current = [b - a for a, b in zip(current, current[1:])]
    return current


def _aitken(xs: Sequence[float]) -> list[float]:
    out = []
    for x0, x1, x2 in zip(xs, xs[1:], xs[2:]):
        denom = x2 - 2 * x1 + x0
        out.append(x2 if denom == 0 else x2 - (x2 - x1) ** 2 / denom)
    return out


def _degree_confidence(slope: float) -> tuple[int, float]:
    degree = max(0, round(slope))
    residual = abs(slope - round(slope))
    if residual < DEGREE_RESIDUAL:
        return degree, 1.0 - 3.0 * residual
    log.warning(f"Fitted degree slope {slope:.3f} is not close to an integer")
    return degree, 0.25


def _fit_rate(values: Sequence[int], degree: int, differencing: int) -> tuple[float, float]:
    source = _differences(values, differencing)
    offset = differencing
    if len(source) < 3 or any(v <= 0 for v in source[-3:]):
        source, offset = list(values), 0
    ratios = []
    for j in range(max(0, len(source) - 12), len(source) - 1):
        if source[j] <= 0:
            continue
        p = j + 1 + offset
        ratios.append((source[j + 1] / source[j]) * (p / (p + 1)) ** degree)
    if not ratios:
        raise GrowthClassificationException("No usable ratios in the sequence tail")
    accelerated = _aitken(ratios) if len(ratios) >= 3 else ratios
    rate = accelerated[-1]
    if len(accelerated) >= 2:
        error = abs(accelerated[-1] - accelerated[-2]) / rate
    else:
        error = abs(ratios[-1] - ratios[0]) / rate if len(ratios) > 1 else 0.1
    return rate, error


def fit_growth(values: Sequence[int], truncated: bool, differencing: int) -> GrowthType:
    """
    Numerical growth type of a positive sequence.

    :param values: Terms ``L_1, …, L_P``.
    :param truncated: Whether the sequence stopped at a length cap (which witnesses exponential growth).
    :param differencing: How many times to difference before taking ratios.
    :return: Fitted growth type.
    """
    n = len(values)
    p = np.arange(1, n + 1, dtype=float)
    logv = np.array([math.log(v) for v in values])
    tail = slice(max(0, n - max(n // 2, 6)), n)

    if n >= 6:
        design = np.column_stack([p[tail], np.log(p[tail]), np.ones(len(p[tail]))])
        (log_rate, _, _), *_ = np.linalg.lstsq(design, logv[tail], rcond=None)
    else:
        log_rate = float(np.polyfit(p, logv, 1)[0])
    exponential = truncated or log_rate > _EXPONENTIAL_THRESHOLD

    if not exponential:
        slope = float(np.polyfit(np.log(p[tail]), logv[tail], 1)[0])
        degree, confidence = _degree_confidence(slope)
        log.info(f"Fitted polynomial growth of degree {degree} (slope {slope:.3f})")
        return GrowthType(AlgebraicReal(1.0), degree, PROVENANCE_FITTED, confidence)

    rate, error = _fit_rate(values, 0, differencing)
    if n >= 6:
        scaled = logv[tail] - p[tail] * math.log(rate)
        slope = float(np.polyfit(np.log(p[tail]), scaled, 1)[0])
        degree, confidence = _degree_confidence(slope)
        if degree:
            rate, error = _fit_rate(values, degree, differencing)
    else:
        degree, confidence = 0, 0.3
        log.warning(f"Only {n} terms available, degree of exponential growth not determined")
    rate = max(rate, 1.0)
    log.info(f"Fitted exponential growth rate {rate:.9f} ± {error:.1e}, degree {degree}")
    return GrowthType(AlgebraicReal(rate, error=error), degree, PROVENANCE_FITTED, confidence)


def classify_growth(seq: LengthSequence, max_order: int | None = None) -> GrowthType:
    """
    Classify a length sequence as ``(λ, m)``.

    :param seq: Length sequence.
    :param max_order: Largest recurrence order tried, defaults to the subject's rank plus one.
    :return: Exact growth type when a recurrence is found, fitted otherwise.
    :raises GrowthClassificationException: If there are too few terms or a term is not positive.
    """
    values = seq.values
    needed = MIN_TERMS_TRUNCATED if seq.truncated else MIN_TERMS
    if len(values) < needed:
        raise GrowthClassificationException(f"Need at least {needed} terms to classify growth, got {len(values)}")
    if any(v <= 0 for v in values):
        raise GrowthClassificationException("Length sequence has non-positive terms")

    if max_order is None:
        max_order = seq.subject.rank + 1

    recurrence = detect_recurrence(values, max_order)
    if recurrence is not None:
        growth = growth_from_recurrence(recurrence)
        if growth is not None:
            log.debug(f"Exact growth {growth} from recurrence {recurrence}")
            return growth

    log.info("No exact recurrence found, fitting growth numerically")
    return fit_growth(values, seq.truncated, max_order)
