"""Explicit automorphism families with their expected invariants, and realization of admissible invariants.

Families use the generator names ``a, b, a0, a1, b1, …, t`` of their defining formulas. ``x^y`` denotes
``y x y⁻¹`` throughout.
"""

import logging
from collections.abc import Callable, Mapping, Sequence

import sympy

from .exceptions import InadmissibleInvariantsException
from .helpers import LetterCode, default_generator_names
from .invariants import is_admissible, max_fixed_rank
from .lamination import LaminationPoset
from .objects.automorphism import Automorphism
from .objects.construction import (
    AbstractConstruction,
    ConstructedAutomorphism,
    GeometricBlock,
    Probe,
    UnsupportedRegion,
)
from .objects.growth import X, AlgebraicReal, GrowthType
from .objects.word import CyclicWord, Word, free_reduce, invert_codes
from .parse import parse_codes

log = logging.getLogger(__name__)

OPTIMAL_FAMILY = "optimal"

_TAU_STEP = {1: [1, 2, 1], 2: [2, 1]}
_TAU_INVERSE_STEP = {1: [1, -2], 2: [2, 2, -1]}


def tau_rate(power: int = 1) -> AlgebraicReal:
    """
    Expansion factor of ``τ^power``, the largest eigenvalue of ``[[2, 1], [1, 1]]^power``.

    :param power: Positive power.
    :return: Exact real.
    """
    matrix = sympy.Matrix([[2, 1], [1, 1]]) ** power
    return AlgebraicReal.from_minpoly(matrix.charpoly(X))


def golden_rate() -> AlgebraicReal:
    """Expansion factor of ``a ↦ ab, b ↦ a``."""
    return AlgebraicReal.from_minpoly(sympy.Poly(X**2 - X - 1, X))


def _exponential(rate: AlgebraicReal, degree: int = 0) -> GrowthType:
    return GrowthType(rate, degree)


def _polynomial(degree: int) -> GrowthType:
    return GrowthType(AlgebraicReal.one(), degree)


def _tau_power_images(power: int) -> dict[int, list[LetterCode]]:
    step = _TAU_STEP if power > 0 else _TAU_INVERSE_STEP
    table = {1: [1], 2: [2]}
    for _ in range(abs(power)):
        next_table = {}
        for g, image in step.items():
            codes: list[LetterCode] = []
            for c in image:
                codes.extend(table[c] if c > 0 else invert_codes(table[-c]))
            next_table[g] = free_reduce(codes)
        table = next_table
    return table


class _Builder:
    """Generator-by-generator construction of an automorphism and, while possible, of its inverse."""

    __slots__ = [
        "__names",
        "__images",
        "__inverse",
    ]

    def __init__(self):
        self.__names: list[str] = []
        self.__images: list[list[LetterCode]] = []
        self.__inverse: list[list[LetterCode]] | None = []

    @property
    def rank(self) -> int:
        return len(self.__names)

    def word(self, text: str) -> list[LetterCode]:
        """Letter codes of a word over the generators added so far."""
        return free_reduce(parse_codes(text, self.__names))

    def __pull(self, codes: Sequence[LetterCode]) -> list[LetterCode] | None:
        if self.__inverse is None:
            return None
        out: list[LetterCode] = []
        for c in codes:
            image = self.__inverse[abs(c) - 1]
            out.extend(image if c > 0 else invert_codes(image))
        return free_reduce(out)

    def __add(self, name: str, image: list[LetterCode], inverse: list[LetterCode] | None) -> None:
        if name in self.__names:
            raise ValueError(f"Generator name '{name}' is already used")
        self.__names.append(name)
        self.__images.append(image)
        if self.__inverse is not None and inverse is not None:
            self.__inverse.append(inverse)
        else:
            self.__inverse = None

    def fixed(self, name: str) -> None:
        code = self.rank + 1
        self.__add(name, [code], [code])

    def triangular(self, name: str, left: Sequence[LetterCode] = (), right: Sequence[LetterCode] = ()) -> None:
        """Add ``g ↦ left · g · right`` with ``left`` and ``right`` over earlier generators."""
        code = self.rank + 1
        image = free_reduce([*left, code, *right])
        pulled_left, pulled_right = self.__pull(left), self.__pull(right)
        inverse = None
        if pulled_left is not None and pulled_right is not None:
            inverse = free_reduce(invert_codes(pulled_left) + [code] + invert_codes(pulled_right))
        self.__add(name, image, inverse)

    def tau_block(self, first: str, second: str, power: int = 1, conjugator: Sequence[LetterCode] = ()) -> None:
        """Add a pair mapped by ``τ^power`` and then conjugated by ``conjugator``."""
        offset = self.rank
        forward = _tau_power_images(power)
        backward = _tau_power_images(-power)
        conj = list(conjugator)
        pulled = self.__pull(conj)
        for g, name in ((1, first), (2, second)):
            core = [c + offset if c > 0 else c - offset for c in forward[g]]
            image = free_reduce(conj + core + invert_codes(conj))
            inverse = None
            if pulled is not None:
                back = [c + offset if c > 0 else c - offset for c in backward[g]]
                inverse = free_reduce(invert_codes(pulled) + back + pulled)
            self.__add(name, image, inverse)

    def embed(self, alpha: Automorphism) -> int:
        """
        Add the generators of ``alpha`` as a free factor, renaming clashing names with a trailing ``'``.

        :return: Code offset of the embedded generators.
        """
        offset = self.rank
        inverse_images = alpha.inverse.images if alpha.inverse is not None else None
        for g, name in enumerate(alpha.names):
            while name in self.__names:
                name = name + "'"
            image = [c + offset if c > 0 else c - offset for c in alpha.images[g].codes]
            inverse = None
            if inverse_images is not None:
                inverse = [c + offset if c > 0 else c - offset for c in inverse_images[g].codes]
            self.__add(name, image, inverse)
        return offset

    def build(self) -> Automorphism:
        rank = self.rank
        names = list(self.__names)
        inverse = None
        if self.__inverse is not None:
            inverse = Automorphism([Word(c, rank) for c in self.__inverse], names=names, validate=False)
        return Automorphism([Word(c, rank) for c in self.__images], names=names, inverse=inverse)


def _cyclic(alpha: Automorphism, text: str) -> CyclicWord:
    return CyclicWord(parse_codes(text, alpha.names), alpha.rank)


def _from_text(names: Sequence[str], images: Sequence[str], inverse: Sequence[str] | None = None) -> Automorphism:
    rank = len(names)
    inverse_alpha = None
    if inverse is not None:
        inverse_alpha = Automorphism([Word(parse_codes(t, names), rank) for t in inverse], names=names, validate=False)
    return Automorphism([Word(parse_codes(t, names), rank) for t in images], names=names, inverse=inverse_alpha)


def _antichain(rates: Sequence[AlgebraicReal]) -> LaminationPoset | None:
    if not rates:
        return None
    return LaminationPoset({f"L{i + 1}": rate for i, rate in enumerate(rates)})


def make_tau() -> ConstructedAutomorphism:
    """
    ``τ: a ↦ aba, b ↦ ba``, fixing the commutator ``[a, b]``.

    :return: Construction on ``F_2``.
    """
    builder = _Builder()
    builder.tau_block("a", "b")
    alpha = builder.build()
    return ConstructedAutomorphism(
        "tau",
        {},
        alpha,
        {"ePrime": 1, "d": 0, "fixRank": 1},
        poset=_antichain([tau_rate()]),
        probes=[
            Probe(_cyclic(alpha, "a"), _exponential(tau_rate())),
            Probe(_cyclic(alpha, "a b A B"), _polynomial(0)),
        ],
    )


def make_fibonacci() -> ConstructedAutomorphism:
    """
    ``a ↦ ab, b ↦ a``, whose square is ``τ``.

    :return: Construction on ``F_2``.
    """
    alpha = _from_text(["a", "b"], ["a b", "a"], ["b", "B a"])
    return ConstructedAutomorphism(
        "fibonacci",
        {},
        alpha,
        {"ePrime": 1, "d": 0, "fixRank": None},
        poset=_antichain([golden_rate()]),
        probes=[Probe(_cyclic(alpha, "a"), _exponential(golden_rate()))],
    )


def _add_identity(builder: _Builder, count: int, prefix: str = "f") -> None:
    for i in range(1, count + 1):
        builder.fixed(f"{prefix}{i}")


def _add_alpha_poly(builder: _Builder, n: int) -> None:
    builder.fixed("a1")
    for i in range(2, n + 1):
        builder.triangular(f"a{i}", (), builder.word(f"a{i - 1}"))


def make_alpha_poly(n: int) -> ConstructedAutomorphism:
    """
    ``α_n: a1 ↦ a1, a_i ↦ a_i a_{i−1}``, under which ``a_i`` grows with degree ``i − 1``.

    :param n: Rank, at least 2.
    :return: Construction on ``F_n``.
    :raises ValueError: If ``n < 2``.
    """
    if n < 2:
        raise ValueError(f"Polynomial family needs rank at least 2, got {n}")
    builder = _Builder()
    _add_alpha_poly(builder, n)
    alpha = builder.build()
    return ConstructedAutomorphism(
        "alpha_poly",
        {"n": n},
        alpha,
        {"ePrime": 0, "d": n - 1, "fixRank": 2},
        probes=[Probe(_cyclic(alpha, f"a{i}"), _polynomial(i - 1)) for i in range(1, n + 1)],
    )


def make_beta(ell: int, twist: bool = False) -> ConstructedAutomorphism:
    """
    ``β_ℓ`` on ``⟨a, a0, …, a_ℓ⟩``: ``a ↦ a``, ``a0 ↦ a0 a``, ``a_i ↦ a_i^{a_{i−1} a}``.

    The class of ``a a_ℓ`` grows with degree ``ℓ + 1``. With ``twist`` a generator ``t ↦ t a_ℓ a`` is added whose
    class grows with degree ``ℓ + 2``.

    :param ell: ``ℓ ≥ 1``.
    :param twist: Add the generator ``t``.
    :return: Construction on ``F_{ℓ+2}`` or ``F_{ℓ+3}``.
    :raises ValueError: If ``ℓ < 1``.
    """
    if ell < 1:
        raise ValueError(f"Conjugating family needs l >= 1, got {ell}")
    builder = _Builder()
    builder.fixed("a")
    builder.triangular("a0", (), builder.word("a"))
    for i in range(1, ell + 1):
        builder.triangular(f"a{i}", builder.word(f"a{i - 1} a"), builder.word(f"A A{i - 1}"))
    if twist:
        builder.triangular("t", (), builder.word(f"a{ell} a"))
    alpha = builder.build()

    probes = [Probe(_cyclic(alpha, f"a a{ell}"), _polynomial(ell + 1))]
    d = ell + 1
    if twist:
        probes.append(Probe(_cyclic(alpha, "t"), _polynomial(ell + 2)))
        d = ell + 2
    return ConstructedAutomorphism(
        "beta",
        {"l": ell, "twist": int(twist)},
        alpha,
        {"ePrime": 0, "d": d, "fixRank": 2},
        probes=probes,
    )


def make_nested(ell: int) -> ConstructedAutomorphism:
    """
    Nested laminations on ``F_{2ℓ}``: ``a1 ↦ a1 b1``, ``b1 ↦ a1``, ``a_i ↦ a_i b_i a_{i−1}``, ``b_i ↦ a_i``.

    The laminations form a chain of length ``ℓ − 1`` with one expansion factor, so ``a_i`` grows like
    ``p^{i−1} λ^p`` with λ the golden ratio.

    :param ell: ``ℓ ≥ 1``.
    :return: Construction on ``F_{2ℓ}``.
    :raises ValueError: If ``ℓ < 1``.
    """
    if ell < 1:
        raise ValueError(f"Nested family needs l >= 1, got {ell}")
    names, images, inverse = [], [], []
    for i in range(1, ell + 1):
        names += [f"a{i}", f"b{i}"]
        if i == 1:
            images += ["a1 b1", "a1"]
            inverse += ["b1", "B1 a1"]
        else:
            images += [f"a{i} b{i} a{i - 1}", f"a{i}"]
            inverse += [f"b{i}", f"B{i} a{i} B{i - 1}"]
    alpha = _from_text(names, images, inverse)
    labels = [f"L{i}" for i in range(1, ell + 1)]
    return ConstructedAutomorphism(
        "nested",
        {"l": ell},
        alpha,
        {"ePrime": ell, "d": 0, "fixRank": None},
        poset=LaminationPoset.chain(labels, [golden_rate()] * ell),
        probes=[Probe(_cyclic(alpha, f"a{i}"), _exponential(golden_rate(), i - 1)) for i in range(1, ell + 1)],
    )


def _commutator(builder: _Builder, i: int) -> list[LetterCode]:
    return builder.word(f"a{i} b{i} A{i} B{i}")


def _add_theta_blocks(builder: _Builder, ell: int, u: Sequence[LetterCode], powers: Sequence[int]) -> None:
    # a0 ↦ a0 u, (a_i, b_i) ↦ τ^{powers[i-1]}(a_i, b_i) conjugated by a0 u (i = 1) or u_{i−1} u.
    u = list(u)
    builder.triangular("a0", (), u)
    for i in range(1, ell + 1):
        previous = builder.word("a0") if i == 1 else _commutator(builder, i - 1)
        builder.tau_block(f"a{i}", f"b{i}", powers[i - 1], previous + u)


def _theta_top(builder: _Builder, ell: int, u: Sequence[LetterCode]) -> list[LetterCode]:
    top = builder.word("a0") if ell == 0 else _commutator(builder, ell)
    return top + list(u)


def make_theta(n: int, varied: bool = False) -> ConstructedAutomorphism:
    """
    Mixed growth ``θ_n``: a copy of ``τ`` on ``a, b`` with ``u = [a, b]``, ``a0 ↦ a0 u``, and blocks
    ``(a_i, b_i) ↦ τ(a_i, b_i)^{u_{i−1} u}`` (``a0 u`` for the first), where ``u_i = [a_i, b_i]``.

    For odd ``n = 2ℓ + 3`` this has ``ℓ + 1`` exponential strata and polynomial degree ``ℓ + 1``; for even
    ``n = 2ℓ + 4`` a generator ``t ↦ t u_ℓ u`` (``t a0 u`` when ``ℓ = 0``) raises the degree to ``ℓ + 2``.
    With ``varied`` the ``i``-th block uses ``τ^{i+1}``, giving ``ℓ + 1`` distinct rates.

    :param n: Rank, at least 3.
    :param varied: Use distinct powers of ``τ``.
    :return: Construction on ``F_n``.
    :raises ValueError: If ``n < 3``, or ``varied`` with even ``n``.
    """
    if n < 3:
        raise ValueError(f"Mixed growth family needs rank at least 3, got {n}")
    if varied and n % 2 == 0:
        raise ValueError("Distinct-rate mixed growth family needs odd rank")
    ell = (n - 3) // 2
    powers = list(range(2, ell + 2)) if varied else [1] * ell

    builder = _Builder()
    builder.tau_block("a", "b")
    u = builder.word("a b A B")
    _add_theta_blocks(builder, ell, u, powers)
    d = ell + 1
    top_text = "a b A B a0" if ell == 0 else f"a b A B a{ell} b{ell} A{ell} B{ell}"
    if n % 2 == 0:
        builder.triangular("t", (), _theta_top(builder, ell, u))
        d = ell + 2
        top_text = "t"
    alpha = builder.build()

    rates = [tau_rate()] + [tau_rate(p) for p in powers]
    distinct = [tau_rate(p) for p in sorted(set([1] + powers))]
    probes = [Probe(_cyclic(alpha, "a"), _exponential(tau_rate()))]
    if varied:
        probes += [Probe(_cyclic(alpha, f"a{i}"), _exponential(tau_rate(powers[i - 1]))) for i in range(1, ell + 1)]
    probes.append(Probe(_cyclic(alpha, top_text), _polynomial(d)))
    return ConstructedAutomorphism(
        "theta_varied" if varied else "theta",
        {"n": n},
        alpha,
        {"ePrime": len(distinct), "d": d, "fixRank": 2},
        poset=_antichain(rates),
        probes=probes,
    )


def make_theta_varied(n: int) -> ConstructedAutomorphism:
    """
    ``θ_n`` with the ``i``-th block mapped by ``τ^{i+1}``.

    :param n: Odd rank, at least 3.
    :return: Construction on ``F_n``.
    :raises ValueError: If ``n`` is even or below 3.
    """
    return make_theta(n, varied=True)


def make_inner(rank: int, conjugator: str) -> ConstructedAutomorphism:
    """
    Inner automorphism ``g ↦ x g x⁻¹``.

    :param rank: Rank.
    :param conjugator: Text of ``x`` over the default names.
    :return: Construction on ``F_rank``.
    """
    generators = [Word([g + 1], rank) for g in range(rank)]
    x = Word(parse_codes(conjugator, default_generator_names(rank)), rank)
    inverse = Automorphism([g.conjugate(x.inverse()) for g in generators], validate=False)
    alpha = Automorphism([g.conjugate(x) for g in generators], inverse=inverse)
    return ConstructedAutomorphism(
        "inner",
        {"n": rank},
        alpha,
        {"ePrime": 0, "d": 0, "fixRank": rank if x.is_trivial() else 1},
        probes=[Probe(CyclicWord([1], rank), _polynomial(0))],
    )


def make_identity(rank: int) -> ConstructedAutomorphism:
    """
    Identity automorphism.

    :param rank: Rank, at least 1.
    :return: Construction on ``F_rank``.
    """
    alpha = Automorphism.identity(rank)
    return ConstructedAutomorphism(
        "identity",
        {"n": rank},
        alpha,
        {"ePrime": 0, "d": 0, "fixRank": rank},
        probes=[Probe(CyclicWord([1], rank), _polynomial(0))],
    )


def make_bridson_groves() -> ConstructedAutomorphism:
    """
    ``a ↦ b a b⁻¹, b ↦ b² a b⁻¹``: the class of ``b`` grows linearly, the element ``b`` quadratically, and the
    fixed subgroup is trivial.

    :return: Construction on ``F_2``.
    """
    alpha = _from_text(["a", "b"], ["b a B", "b b a B"], ["a B a b A", "b A"])
    return ConstructedAutomorphism(
        "bridson_groves",
        {},
        alpha,
        {"ePrime": 0, "d": 1, "fixRank": 0},
        probes=[Probe(_cyclic(alpha, "b"), _polynomial(1))],
    )


_LAMINATION_EXAMPLES = {
    1: (["a b a a'", "b a", "a' b'", "a'"], "tau", "golden"),
    2: (["a b a'", "a", "a' b' a'", "a' b'"], "golden", "tau"),
    3: (["a b a'", "a", "a' b'", "a'"], "golden", "golden"),
}


def make_lamination_example(index: int) -> ConstructedAutomorphism:
    """
    Automorphisms of ``F_4 = ⟨a, b, a', b'⟩`` with two nested laminations ``L' ⊊ L``.

    1. ``L`` expands by μ, ``L'`` by ν < μ: ``a`` grows like ``(μ, 0)``.
    2. ``L`` expands by ν, ``L'`` by μ: ``a`` grows like ``(μ, 0)``.
    3. both expand by ν: ``a`` grows like ``(ν, 1)``.

    Here μ is the rate of ``τ`` and ν the golden ratio.

    :param index: Example number, 1 to 3.
    :return: Construction on ``F_4``.
    :raises ValueError: If the index is unknown.
    """
    if index not in _LAMINATION_EXAMPLES:
        raise ValueError(f"Unknown lamination example {index}, expected one of {sorted(_LAMINATION_EXAMPLES)}")
    images, outer, inner = _LAMINATION_EXAMPLES[index]
    rates = {"tau": tau_rate(), "golden": golden_rate()}
    alpha = _from_text(["a", "b", "a'", "b'"], images)
    poset = LaminationPoset({"L'": rates[inner], "L": rates[outer]}, [("L'", "L")])
    types = {label: poset.growth_type(label) for label in poset.labels}
    distinct: list[GrowthType] = []
    for growth in types.values():
        if growth not in distinct:
            distinct.append(growth)
    return ConstructedAutomorphism(
        "lamination_example",
        {"index": index},
        alpha,
        {"ePrime": len(distinct), "d": 0, "fixRank": None},
        poset=poset,
        probes=[
            Probe(_cyclic(alpha, "a"), types["L"]),
            Probe(_cyclic(alpha, "a'"), types["L'"]),
        ],
    )


def free_product(alpha: Automorphism, beta: Automorphism) -> Automorphism:
    """
    Free product ``α * β`` on ``F_{m+k}``: generators of ``β`` come after those of ``α``.

    Clashing generator names of ``β`` get a trailing ``'``.

    :param alpha: Automorphism of ``F_m``.
    :param beta: Automorphism of ``F_k``.
    :return: Automorphism of ``F_{m+k}``, with inverse when both inverses are known.
    """
    builder = _Builder()
    builder.embed(alpha)
    builder.embed(beta)
    return builder.build()


def add_twist_generator(alpha: Automorphism, word: Word, name: str = "t") -> Automorphism:
    """
    Adjoin a generator ``t ↦ t · word``.

    :param alpha: Automorphism of ``F_n``.
    :param word: Word over the generators of ``alpha``.
    :param name: Name of the new generator.
    :return: Automorphism of ``F_{n+1}``.
    """
    builder = _Builder()
    builder.embed(alpha)
    builder.triangular(name, (), word.codes)
    return builder.build()


def _add_tau_blocks(builder: _Builder, powers: Sequence[int]) -> None:
    for j, power in enumerate(powers, start=1):
        builder.tau_block(f"c{j}", f"d{j}", power)


def _tau_probes(alpha: Automorphism, powers: Sequence[int]) -> list[Probe]:
    return [Probe(_cyclic(alpha, f"c{j}"), _exponential(tau_rate(p))) for j, p in enumerate(powers, start=1)]


def _optimal_theta(
    n: int, e: int, d: int, rho0: int, distinct_rates: bool
) -> tuple[_Builder, dict[str, int], list[int], Callable[[Automorphism], list[Probe]]]:
    w = max(0, e - rho0 + 1)
    x = d - w - 1
    y = rho0 - e + w - 1
    z = e - w - 1
    solution = {"w": w, "x": x, "y": y, "z": z}
    if min(solution.values()) < 0 or (w + 1 + x, w + 1 + z, 2 + y + z, 2 * w + 3 + x + y + 2 * z) != (d, e, rho0, n):
        raise ValueError(f"No non-negative solution for (n, e, d) = ({n}, {e}, {d}): {solution}")

    theta_powers = list(range(2, w + 2)) if distinct_rates else [1] * w
    tau_powers = list(range(w + 2, w + 2 + z)) if distinct_rates else [1] * z

    builder = _Builder()
    builder.tau_block("a", "b")
    u = builder.word("a b A B")
    _add_theta_blocks(builder, w, u, theta_powers)
    if x:
        builder.triangular("t1", (), _theta_top(builder, w, u))
        for i in range(2, x + 1):
            builder.triangular(f"t{i}", (), builder.word(f"t{i - 1}"))
    _add_identity(builder, y)
    _add_tau_blocks(builder, tau_powers)

    def probes(alpha: Automorphism) -> list[Probe]:
        found = [Probe(_cyclic(alpha, "a"), _exponential(tau_rate()))]
        found += [Probe(_cyclic(alpha, f"a{i}"), _exponential(tau_rate(p))) for i, p in enumerate(theta_powers, 1)]
        found += _tau_probes(alpha, tau_powers)
        top = f"t{x}" if x else ("a b A B a0" if w == 0 else f"a b A B a{w} b{w} A{w} B{w}")
        found.append(Probe(_cyclic(alpha, top), _polynomial(d)))
        return found

    return builder, solution, [1] + theta_powers + tau_powers, probes


def _geometric_region(
    e: int, d: int, block: GeometricBlock | None, required_rank: int, copies: int, w: int
) -> tuple[_Builder, list[int], list[LetterCode]] | str:
    if block is None:
        return f"needs a geometric block of rank {required_rank}"
    if block.rank != required_rank:
        return f"geometric block has rank {block.rank}, needs {required_rank}"
    needed = e - w - copies
    if block.e_prime != needed:
        return f"geometric block declares e' = {block.e_prime}, needs {needed}"

    builder = _Builder()
    offset = builder.embed(block.automorphism)
    powers = list(range(1, copies + 1))
    top: list[LetterCode] = []
    if d > 0:
        u = [c + offset if c > 0 else c - offset for c in block.fixed.codes]
        _add_theta_blocks(builder, w, u, list(range(copies + 1, copies + 1 + w)))
        top = _theta_top(builder, w, u)
    _add_tau_blocks(builder, powers)
    return builder, powers, top


def construct_optimal(
    n: int,
    e: int,
    d: int,
    distinct_rates: bool = True,
    geometric_blocks: Mapping[int, GeometricBlock] | None = None,
) -> AbstractConstruction:
    """
    Automorphism of ``F_n`` with ``e`` exponential strata, polynomial degree ``d`` and the largest fixed subgroup
    rank the inequalities permit.

    * ``e = d = 0``: the identity;
    * ``e = 0 < d``: ``α_{d+1} * I_{n−d−1}``;
    * ``d = 0``, ``2e ≤ n``: ``I_{n−2e} * τ * … * τ``;
    * ``d, e ≥ 1``, ``2e ≤ n − 1``: ``θ_{2w+3}`` extended by ``x`` chained generators, ``* I_y`` and ``z``
      copies of ``τ``, with ``w = max(0, e − ρ0 + 1)``, ``x = d − w − 1``, ``y = ρ0 − e + w − 1``,
      ``z = e − w − 1``.

    The remaining admissible points need a geometric block with a rank 1 fixed subgroup, looked up by rank in
    ``geometric_blocks``; without one an :class:`UnsupportedRegion` is returned.

    :param n: Rank.
    :param e: Number of exponential strata.
    :param d: Polynomial degree.
    :param distinct_rates: Use distinct powers of ``τ`` so that the ``e`` rates differ.
    :param geometric_blocks: Geometric blocks keyed by rank.
    :return: Construction, or an unsupported region.
    :raises InadmissibleInvariantsException: If ``(e, d)`` is not admissible for ``n``.
    """
    if not is_admissible(n, e, d):
        raise InadmissibleInvariantsException(f"(e, d) = ({e}, {d}) is not admissible for rank {n}")
    rho0 = max_fixed_rank(n, e, d)
    parameters = {"n": n, "e": e, "d": d}
    expected = {"ePrime": e, "d": d, "fixRank": rho0}
    log.info(f"Constructing automorphism of rank {n} with e = {e}, d = {d}, fixed rank {rho0}")

    solution = None
    if e == 0 and d == 0:
        builder = _Builder()
        _add_identity(builder, n)
        alpha = builder.build()
        return ConstructedAutomorphism(
            OPTIMAL_FAMILY, parameters, alpha, expected, probes=[Probe(CyclicWord([1], n), _polynomial(0))]
        )

    if e == 0:
        builder = _Builder()
        _add_alpha_poly(builder, d + 1)
        _add_identity(builder, n - d - 1)
        alpha = builder.build()
        return ConstructedAutomorphism(
            OPTIMAL_FAMILY,
            parameters,
            alpha,
            expected,
            probes=[Probe(_cyclic(alpha, f"a{i}"), _polynomial(i - 1)) for i in range(1, d + 2)],
        )

    if d == 0 and 2 * e <= n:
        powers = list(range(1, e + 1)) if distinct_rates else [1] * e
        builder = _Builder()
        _add_identity(builder, n - 2 * e)
        _add_tau_blocks(builder, powers)
        alpha = builder.build()
        return ConstructedAutomorphism(
            OPTIMAL_FAMILY,
            parameters,
            alpha,
            expected,
            poset=_antichain([tau_rate(p) for p in powers]),
            probes=_tau_probes(alpha, powers),
        )

    if d > 0 and 2 * e <= n - 1:
        builder, solution, powers, probes = _optimal_theta(n, e, d, rho0, distinct_rates)
        alpha = builder.build()
        log.info(f"Solved w = {solution['w']}, x = {solution['x']}, y = {solution['y']}, z = {solution['z']}")
        return ConstructedAutomorphism(
            OPTIMAL_FAMILY,
            parameters,
            alpha,
            expected,
            poset=_antichain([tau_rate(p) for p in powers]),
            probes=probes(alpha),
            solution=solution,
        )

    # Points beyond the reach of the torus automorphism need a geometric block.
    half = n // 2
    if d == 0:
        if n % 2 == 0:
            required_rank, copies = 4 * e - 4 * half + 2, 3 * half - 2 * e - 1
        else:
            required_rank, copies = 4 * e - 4 * half + 1, 3 * half - 2 * e
        w = 0
    else:
        if n % 2 == 0:
            half -= 1
        x = e - half
        w, copies = d - 1, rho0 - 2
        required_rank = 4 * x + 2 if n % 2 == 1 else 4 * x + 1
        solution = {"w": w, "x": x, "z": copies}

    block = (geometric_blocks or {}).get(required_rank)
    built = _geometric_region(e, d, block, required_rank, copies, w)
    if isinstance(built, str):
        return UnsupportedRegion(OPTIMAL_FAMILY, parameters, built)
    builder, powers, top = built
    alpha = builder.build()
    if alpha.rank != n:
        raise ValueError(f"Geometric construction has rank {alpha.rank}, expected {n}")
    probes = _tau_probes(alpha, powers)
    if top:
        probes.append(Probe(CyclicWord(top, n), _polynomial(d)))
    return ConstructedAutomorphism(
        OPTIMAL_FAMILY,
        parameters,
        alpha,
        expected,
        probes=probes,
        solution=solution,
    )


FAMILIES: dict[str, Callable[..., ConstructedAutomorphism]] = {
    "tau": make_tau,
    "fibonacci": make_fibonacci,
    "alpha_poly": make_alpha_poly,
    "beta": make_beta,
    "nested": make_nested,
    "theta": make_theta,
    "theta_varied": make_theta_varied,
    "inner": make_inner,
    "identity": make_identity,
    "bridson_groves": make_bridson_groves,
    "lamination_example": make_lamination_example,
}
"""Family id to constructor."""
