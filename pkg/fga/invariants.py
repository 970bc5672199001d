"""Inequalities between the invariants of an automorphism, the admissible region, and bounded searches for
lower bounds of the fixed subgroup rank and of the periodic abelianized rank.

All checkers accept the observable count e′ in place of e.
"""

import logging
from collections import deque
from collections.abc import Iterator, Sequence
from fractions import Fraction

import sympy
from sympy.matrices.normalforms import smith_normal_form

from .config import DEFAULT_MAX_LEN, DEFAULT_MAX_PERIOD, DEFAULT_SEARCH_BUDGET
from .exceptions import InadmissibleInvariantsException, SearchBudgetException
from .folding import subgroup_rank
from .helpers import LetterCode, positive_part
from .objects.automorphism import Automorphism
from .objects.growth import GrowthType
from .objects.invariants import CheckResult, InvariantTuple
from .objects.word import (
    CyclicWord,
    Word,
    canonical_cyclic_codes,
    free_reduce,
    invert_codes,
    iter_cyclic_words,
)

log = logging.getLogger(__name__)

Point = tuple[Fraction, Fraction]


def check_ed(n: int, e: int, d: int) -> list[CheckResult]:
    """
    Inequalities between the lamination count and the polynomial degree.

    :param n: Rank.
    :param e: Lamination count (or e′).
    :param d: Maximal polynomial degree.
    :return: ``e + d ≤ n − 1``, ``4e + 2d ≤ 3n − 2`` and ``4e + 2d ≤ 3n − 3`` (the latter only binding when ``d > 0``).
    """
    return [
        CheckResult("e + d <= n - 1", e + d, n - 1),
        CheckResult("4e + 2d <= 3n - 2", 4 * e + 2 * d, 3 * n - 2),
        CheckResult("4e + 2d <= 3n - 3 if d > 0", 4 * e + 2 * d, 3 * n - 3 if d > 0 else 3 * n - 2),
    ]


def is_admissible(n: int, e: int, d: int) -> bool:
    """Whether ``(e, d)`` passes :func:`check_ed`."""
    return e >= 0 and d >= 0 and all(c.passed for c in check_ed(n, e, d))


def quadrilateral_vertices(n: int) -> list[Point]:
    """
    Vertices of the region of admissible ``(e, d)``.

    :param n: Rank, at least 2.
    :return: ``(0, 0), (0, n − 1), ((n − 1)/2, (n − 1)/2), ((3n − 2)/4, 0)``.
    :raises ValueError: If ``n < 2``.
    """
    if n < 2:
        raise ValueError(f"Region is defined for rank at least 2, got {n}")
    return [
        (Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(n - 1)),
        (Fraction(n - 1, 2), Fraction(n - 1, 2)),
        (Fraction(3 * n - 2, 4), Fraction(0)),
    ]


def in_quadrilateral(n: int, e: int | Fraction, d: int | Fraction) -> bool:
    """
    Whether a point lies in the closed region spanned by :func:`quadrilateral_vertices`.

    :param n: Rank, at least 2.
    :param e: First coordinate.
    :param d: Second coordinate.
    :return: True if inside or on the boundary.
    """
    vertices = quadrilateral_vertices(n)
    signs = set()
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:] + vertices[:1]):
        cross = (x1 - x0) * (Fraction(d) - y0) - (y1 - y0) * (Fraction(e) - x0)
        if cross:
            signs.add(cross > 0)
    return len(signs) <= 1


def max_fixed_rank(n: int, e: int, d: int) -> int:
    """
    Largest fixed subgroup rank permitted for ``(e, d)``.

    :param n: Rank.
    :param e: Lamination count.
    :param d: Polynomial degree.
    :return: ``min(n − e − (d−1)^+, ⌊(3n + 1 − 4e − 2d)/2⌋)``, with ``⌊(3n − 4e)/2⌋`` when ``d = 0``.
    :raises InadmissibleInvariantsException: If ``(e, d)`` is not admissible.
    """
    if not is_admissible(n, e, d):
        raise InadmissibleInvariantsException(f"(e, d) = ({e}, {d}) is not admissible for rank {n}")
    first = n - e - positive_part(d - 1)
    if d > 0:
        second = (3 * n + 1 - 4 * e - 2 * d) // 2
    else:
        second = (3 * n - 4 * e) // 2
    return max(0, min(first, second))


def check_fix(n: int, e: int, d: int, fix_rank: int) -> list[CheckResult]:
    """
    Bounds on the fixed subgroup rank.

    :param n: Rank.
    :param e: Lamination count.
    :param d: Polynomial degree.
    :param fix_rank: Fixed subgroup rank.
    :return: ``e + (d−1)^+ + rkFix ≤ n`` and ``4e + 2d + 2 rkFix ≤ 3n + 1`` (``3n`` when ``d = 0``).
    """
    return [
        CheckResult("e + (d-1)^+ + rkFix <= n", e + positive_part(d - 1) + fix_rank, n),
        CheckResult(
            "4e + 2d + 2rkFix <= 3n + 1 (3n if d = 0)",
            4 * e + 2 * d + 2 * fix_rank,
            3 * n + 1 if d > 0 else 3 * n,
        ),
    ]


def check_fix_periodic(n: int, e: int, d: int, fix_rank: int, k: int) -> CheckResult:
    """
    Joint bound on the fixed subgroup rank and the periodic abelianized rank.

    :return: ``4e + 2d + 2 rkFix + k ≤ 3n + 1``.
    """
    return CheckResult("4e + 2d + 2rkFix + k <= 3n + 1", 4 * e + 2 * d + 2 * fix_rank + k, 3 * n + 1)


def check_index(n: int, e: int, d: int, r: int, k: int = 0) -> list[CheckResult]:
    """
    Bounds involving the index term ``r``.

    :param n: Rank.
    :param e: Lamination count.
    :param d: Polynomial degree.
    :param r: Index term.
    :param k: Periodic abelianized rank (or a lower bound).
    :return: ``e + p + r ≤ n − 1`` and ``4e + 2p + 2r + k ≤ 3n − 2`` with ``p = (d−1)^+``.
    """
    p = positive_part(d - 1)
    return [
        CheckResult("e + p + r <= n - 1", e + p + r, n - 1),
        CheckResult("4e + 2p + 2r + k <= 3n - 2", 4 * e + 2 * p + 2 * r + k, 3 * n - 2),
    ]


def check_chain_bound(n: int, s: int, d: int, r: int, fix_rank: int | None = None) -> list[CheckResult]:
    """
    Bound on the length of chains of laminations.

    :param n: Rank.
    :param s: Longest chain length, at least 1.
    :param d: Polynomial degree.
    :param r: Index term.
    :param fix_rank: Fixed subgroup rank, adds ``2s + d + rkFix ≤ n`` when given.
    :return: ``2s + p + r ≤ n − 2`` and ``2s + d ≤ n − 2``.
    :raises ValueError: If ``s < 1``.
    """
    if s < 1:
        raise ValueError("Chain bound applies only to automorphisms with s >= 1")
    p = positive_part(d - 1)
    results = [
        CheckResult("2s + p + r <= n - 2", 2 * s + p + r, n - 2),
        CheckResult("2s + d <= n - 2", 2 * s + d, n - 2),
    ]
    if fix_rank is not None:
        results.append(CheckResult("2s + d + rkFix <= n", 2 * s + d + fix_rank, n))
    return results


def check_growth_bound(n: int, growth: GrowthType) -> CheckResult:
    """
    Bound on the degree of a single growth type.

    :param n: Rank.
    :param growth: Growth type of some class.
    :return: ``m ≤ n − 1`` for polynomial growth, ``2m ≤ n − 2`` for exponential growth.
    """
    if growth.is_exponential:
        return CheckResult("2m <= n - 2 (lambda > 1)", 2 * growth.degree, n - 2)
    return CheckResult("m <= n - 1 (lambda = 1)", growth.degree, n - 1)


def check_all(values: InvariantTuple) -> list[CheckResult]:
    """
    Every inequality applicable to the given tuple.

    When ``r`` is absent but a fixed rank is known, ``(rkFix − 1)^+`` is used as a lower bound for ``r``.

    :param values: Invariant tuple.
    :return: Check results.
    """
    n, e, d = values.n, values.e, values.d
    results = check_ed(n, e, d)
    if values.fix_rank is not None:
        results += check_fix(n, e, d, values.fix_rank)
        if values.k is not None:
            results.append(check_fix_periodic(n, e, d, values.fix_rank, values.k))
    r = values.r
    if r is None and values.fix_rank is not None:
        r = positive_part(values.fix_rank - 1)
    if r is not None:
        results += check_index(n, e, d, r, values.k or 0)
    if values.s is not None and values.s >= 1:
        results += check_chain_bound(n, values.s, d, r or 0, values.fix_rank)
    return results


class _Budget:
    """Shared state counter for bounded searches."""

    __slots__ = ["__limit", "__used", "__strict", "__exhausted"]

    def __init__(self, limit: int, strict: bool):
        self.__limit = limit
        self.__used = 0
        self.__strict = strict
        self.__exhausted = False

    @property
    def exhausted(self) -> bool:
        return self.__exhausted

    def spend(self, what: str) -> bool:
        self.__used += 1
        if self.__used <= self.__limit:
            return True
        if self.__strict:
            raise SearchBudgetException(f"Search for {what} exceeded {self.__limit} states")
        if not self.__exhausted:
            log.warning(f"Search for {what} stopped after {self.__limit} states, result is a weaker bound")
        self.__exhausted = True
        return False


def periodic_classes(
    alpha: Automorphism,
    max_len: int = DEFAULT_MAX_LEN,
    max_period: int = DEFAULT_MAX_PERIOD,
    budget: int = DEFAULT_SEARCH_BUDGET,
    strict: bool = False,
) -> list[CyclicWord]:
    """
    Conjugacy classes of length at most ``max_len`` with period at most ``max_period``.

    Classes inside each free factor of the basis are enumerated first, then the classes mixing factors, each
    in order of length.

    :param alpha: Automorphism.
    :param max_len: Maximal class length.
    :param max_period: Maximal period.
    :param budget: Maximal number of classes examined.
    :param strict: Raise instead of stopping when the budget is exhausted.
    :return: Periodic classes found.
    :raises SearchBudgetException: If ``strict`` and the budget is exhausted.
    """
    if max_len < 1 or max_period < 1:
        raise ValueError("max_len and max_period must be positive")
    counter = _Budget(budget, strict)
    factors = alpha.free_factors()
    factor_of = {g: i for i, factor in enumerate(factors) for g in factor}

    def candidates() -> Iterator[tuple[LetterCode, ...]]:
        for factor in factors:
            yield from iter_cyclic_words(factor, max_len)
        if len(factors) > 1:
            for codes in iter_cyclic_words(range(alpha.rank), max_len):
                if len({factor_of[abs(c) - 1] for c in codes}) > 1:
                    yield codes

    found = []
    for codes in candidates():
        if not counter.spend("periodic classes"):
            break
        image = list(codes)
        for _ in range(max_period):
            image = canonical_cyclic_codes(alpha.apply_codes(image))
            if image == codes:
                found.append(CyclicWord(codes, alpha.rank))
                break
    log.info(f"Found {len(found)} periodic classes of length <= {max_len}")
    return found


def _abelianized_rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    normal = smith_normal_form(sympy.Matrix(vectors), domain=sympy.ZZ)
    return sum(1 for i in range(min(normal.shape)) if normal[i, i] != 0)


def k_lower_bound(
    alpha: Automorphism,
    max_len: int = DEFAULT_MAX_LEN,
    max_period: int = DEFAULT_MAX_PERIOD,
    budget: int = DEFAULT_SEARCH_BUDGET,
    strict: bool = False,
) -> int:
    """
    Lower bound for the rank of the span of periodic classes in the abelianization.

    :param alpha: Automorphism.
    :param max_len: Maximal class length.
    :param max_period: Maximal period.
    :param budget: Maximal number of classes examined.
    :param strict: Raise instead of stopping when the budget is exhausted.
    :return: Rank of the integer span of the abelianized periodic classes found.
    :raises SearchBudgetException: If ``strict`` and the budget is exhausted.
    """
    vectors = []
    for cls in periodic_classes(alpha, max_len, max_period, budget, strict):
        vector = [0] * alpha.rank
        for c in cls.codes:
            vector[abs(c) - 1] += 1 if c > 0 else -1
        vectors.append(vector)
    result = _abelianized_rank(vectors)
    log.info(f"Periodic abelianized rank is at least {result}")
    return result


def _defect_search(alpha: Automorphism, max_len: int, counter: _Budget) -> list[Word]:
    # Vertices are defects p⁻¹α(p); reading letter x moves d to x⁻¹·d·α(x). Closed walks at the trivial
    # defect spell fixed words, and a closed walk of length L stays within distance L/2 of its start.
    rank = alpha.rank
    letters = [g + 1 for g in range(rank)] + [-(g + 1) for g in range(rank)]
    reach = max_len // 2
    longest_image = max(len(image) for image in alpha.images)
    max_defect = reach * (1 + longest_image)

    start: tuple[LetterCode, ...] = ()
    paths: dict[tuple[LetterCode, ...], list[LetterCode]] = {start: []}
    depth = {start: 0}
    queue = deque([start])
    while queue:
        vertex = queue.popleft()
        if depth[vertex] >= reach:
            continue
        for x in letters:
            target = tuple(free_reduce([-x, *vertex, *alpha.image_codes(x)]))
            if target in paths or len(target) > max_defect:
                continue
            if not counter.spend("fixed words"):
                queue.clear()
                break
            paths[target] = free_reduce(paths[vertex] + [x])
            depth[target] = depth[vertex] + 1
            queue.append(target)

    generators = []
    for vertex, path in paths.items():
        for x in range(1, rank + 1):
            target = tuple(free_reduce([-x, *vertex, *alpha.image_codes(x)]))
            if target not in paths:
                continue
            loop = free_reduce(path + [x] + invert_codes(paths[target]))
            if loop:
                generators.append(Word(loop, rank))
    return generators


def fixed_subgroup_generators(
    alpha: Automorphism,
    max_len: int = DEFAULT_MAX_LEN,
    budget: int = DEFAULT_SEARCH_BUDGET,
    strict: bool = False,
) -> list[Word]:
    """
    Fixed words generating a subgroup that contains every fixed word of length at most ``max_len``.

    The search runs on each invariant closure, each free factor and the whole basis.

    :param alpha: Automorphism.
    :param max_len: Maximal length of fixed words guaranteed to be covered.
    :param budget: Maximal number of defects visited.
    :param strict: Raise instead of stopping when the budget is exhausted.
    :return: Fixed words, in the rank of ``alpha``.
    :raises SearchBudgetException: If ``strict`` and the budget is exhausted.
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    counter = _Budget(budget, strict)
    blocks = []
    for block in alpha.invariant_closures() + alpha.free_factors() + [list(range(alpha.rank))]:
        if block not in blocks:
            blocks.append(block)

    generators: list[Word] = []
    for block in blocks:
        restricted = alpha.restrict(block)
        for w in _defect_search(restricted, max_len, counter):
            codes = [(block[abs(c) - 1] + 1) * (1 if c > 0 else -1) for c in w.codes]
            generators.append(Word(codes, alpha.rank))
        if counter.exhausted:
            break
    return generators


def fix_rank_lower_bound(
    alpha: Automorphism,
    max_len: int = DEFAULT_MAX_LEN,
    budget: int = DEFAULT_SEARCH_BUDGET,
    strict: bool = False,
) -> int:
    """
    Lower bound for the rank of the fixed subgroup.

    :param alpha: Automorphism.
    :param max_len: Every fixed word of at most this length lies in the subgroup measured.
    :param budget: Maximal number of defects visited.
    :param strict: Raise instead of stopping when the budget is exhausted.
    :return: Rank of the subgroup generated by the fixed words found.
    :raises SearchBudgetException: If ``strict`` and the budget is exhausted.
    """
    result = subgroup_rank(fixed_subgroup_generators(alpha, max_len, budget, strict))
    log.info(f"Fixed subgroup rank is at least {result}")
    return result
