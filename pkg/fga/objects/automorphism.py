"""Automorphisms of a free group given by the images of the generators."""

import logging
from collections.abc import Iterable, Sequence

import networkx as nx
import sympy

from ..exceptions import InvalidAutomorphismException, RankMismatchException
from ..helpers import LetterCode, default_generator_names
from .word import CyclicWord, Word, canonical_cyclic_codes, format_codes, invert_codes

log = logging.getLogger(__name__)


class Automorphism:
    """
    Endomorphism of ``F_n`` given by generator images, checked to be plausibly invertible.

    The abelianized matrix must have determinant ±1. When an inverse is attached, composing with it must
    fix every generator.
    """

    __slots__ = [
        "__rank",
        "__images",
        "__names",
        "__inverse",
        "__lookup",
    ]

    def __init__(
        self,
        images: Sequence[Word],
        names: Sequence[str] | None = None,
        inverse: "Automorphism | None" = None,
        validate: bool = True,
    ):
        """
        Initialize a new automorphism.

        :param images: Image of each generator, in generator order.
        :param names: Generator names used for text output, defaults to ``a, b, c, …``.
        :param inverse: Known inverse automorphism, if any.
        :param validate: Check the determinant and the attached inverse.
        :raises RankMismatchException: If an image or the inverse has the wrong rank.
        :raises InvalidAutomorphismException: If validation fails.
        """
        rank = len(images)
        if rank < 1:
            raise InvalidAutomorphismException("Automorphism needs rank at least 1")
        for i, image in enumerate(images):
            if image.rank != rank:
                raise RankMismatchException(f"Image of generator {i} has rank {image.rank}, expected {rank}")
        if names is None:
            names = default_generator_names(rank)
        names = list(names)
        if len(names) != rank or len(set(names)) != rank:
            raise InvalidAutomorphismException(f"Expected {rank} distinct generator names, got {names}")
        if inverse is not None and inverse.rank != rank:
            raise RankMismatchException(f"Inverse has rank {inverse.rank}, expected {rank}")

        self.__rank = rank
        self.__images = tuple(images)
        self.__names = tuple(names)
        self.__inverse = inverse

        lookup: dict[LetterCode, tuple[LetterCode, ...]] = {}
        for i, image in enumerate(self.__images):
            lookup[i + 1] = image.codes
            lookup[-(i + 1)] = tuple(invert_codes(image.codes))
        self.__lookup = lookup

        if validate:
            self.__validate()

    def __validate(self) -> None:
        det = sympy.Matrix(self.abelianization()).det()
        if det not in (1, -1):
            raise InvalidAutomorphismException(f"Abelianized determinant is {det}, expected ±1")
        if self.__inverse is not None:
            for i in range(self.__rank):
                g = Word([i + 1], self.__rank)
                if self.apply(self.__inverse.apply(g)) != g or self.__inverse.apply(self.apply(g)) != g:
                    raise InvalidAutomorphismException(
                        f"Attached inverse does not undo generator {self.__names[i]}"
                    )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Automorphism):
            raise NotImplementedError

        if self.rank != other.rank:
            return False

        if self.images != other.images:
            return False

        return True

    def __hash__(self):
        return hash((self.rank, self.images))

    def __repr__(self):
        return f"{self.__class__.__name__}(rank={self.rank}, images={self.to_dict()['images']})"

    def to_dict(self) -> dict:
        """
        Return a dictionary representation of the automorphism.

        :return: Dictionary with rank, generator names and images in text form.
        """
        return {
            "rank": self.rank,
            "names": list(self.names),
            "images": {
                name: format_codes(image.codes, self.names) for name, image in zip(self.names, self.images)
            },
        }

    @classmethod
    def identity(cls, rank: int, names: Sequence[str] | None = None) -> "Automorphism":
        """
        Identity automorphism of ``F_rank``.

        :param rank: Rank.
        :param names: Generator names.
        :return: Identity automorphism, which is its own inverse.
        """
        images = [Word([i + 1], rank) for i in range(rank)]
        ident = cls(images, names=names, validate=False)
        return cls(images, names=names, inverse=ident, validate=False)

    @property
    def rank(self) -> int:
        """Rank of the free group acted on."""
        return self.__rank

    @property
    def images(self) -> tuple[Word, ...]:
        """Image of each generator."""
        return self.__images

    @property
    def names(self) -> tuple[str, ...]:
        """Generator names."""
        return self.__names

    @property
    def inverse(self) -> "Automorphism | None":
        """
        Return the attached inverse.

        Inverses are never computed, only carried when supplied.

        :return: Inverse automorphism or None.
        """
        return self.__inverse

    def image_codes(self, code: LetterCode) -> tuple[LetterCode, ...]:
        """Codes of the image of a single letter (inverse letters map to inverted images)."""
        return self.__lookup[code]

    def apply_codes(self, codes: Iterable[LetterCode]) -> list[LetterCode]:
        """
        Apply the automorphism to raw codes, reducing as letters are appended.

        :param codes: Letter codes.
        :return: Reduced image codes.
        """
        lookup = self.__lookup
        stack: list[LetterCode] = []
        for c in codes:
            for x in lookup[c]:
                if stack and stack[-1] == -x:
                    stack.pop()
                else:
                    stack.append(x)
        return stack

    def apply(self, w: Word) -> Word:
        """
        Apply the automorphism to a word.

        :param w: Word of the same rank.
        :return: Reduced image.
        :raises RankMismatchException: If the ranks differ.
        """
        if w.rank != self.__rank:
            raise RankMismatchException(f"Word has rank {w.rank}, automorphism has rank {self.__rank}")
        return Word(self.apply_codes(w.codes), self.__rank)

    def apply_cyclic(self, w: CyclicWord) -> CyclicWord:
        """
        Apply the automorphism to a conjugacy class.

        :param w: Cyclic word of the same rank.
        :return: Image class in canonical form.
        :raises RankMismatchException: If the ranks differ.
        """
        if w.rank != self.__rank:
            raise RankMismatchException(f"Class has rank {w.rank}, automorphism has rank {self.__rank}")
        return CyclicWord(canonical_cyclic_codes(self.apply_codes(w.codes)), self.__rank)

    def power(self, q: int) -> "Automorphism":
        """
        Return the ``q``-th iterate.

        :param q: Exponent; negative exponents need an attached inverse.
        :return: ``α^q``.
        :raises InvalidAutomorphismException: If ``q < 0`` and no inverse is attached.
        """
        if q < 0:
            if self.__inverse is None:
                raise InvalidAutomorphismException("Negative power needs an attached inverse")
            return self.__inverse.power(-q)
        result = Automorphism.identity(self.__rank, self.__names)
        for _ in range(q):
            result = compose(self, result)
        return result

    def abelianization(self) -> list[list[int]]:
        """
        Signed letter sums of the images.

        :return: Integer matrix, entry ``[i][j]`` is the exponent sum of generator ``i`` in the image of ``j``.
        """
        matrix = [[0] * self.__rank for _ in range(self.__rank)]
        for j, image in enumerate(self.__images):
            for c in image.codes:
                matrix[abs(c) - 1][j] += 1 if c > 0 else -1
        return matrix

    def dependency_graph(self) -> nx.DiGraph:
        """
        Directed graph with an edge ``j → i`` whenever generator ``i`` occurs in the image of ``j``.

        :return: Dependency graph over generator indices.
        """
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.__rank))
        for j, image in enumerate(self.__images):
            for c in image.codes:
                graph.add_edge(j, abs(c) - 1)
        return graph

    def free_factors(self) -> list[list[int]]:
        """
        Finest splitting of the basis into invariant blocks.

        Connected components of the undirected dependency graph; the automorphism is the free product of
        its restrictions to these blocks.

        :return: Sorted generator index lists, ordered by smallest index.
        """
        components = nx.connected_components(self.dependency_graph().to_undirected())
        return sorted((sorted(c) for c in components), key=lambda c: c[0])

    def invariant_closures(self) -> list[list[int]]:
        """
        Generator sets closed under taking image letters.

        Each closure spans a free factor mapped into itself.

        :return: Distinct closures, smallest first.
        """
        graph = self.dependency_graph()
        closures = {frozenset({j} | nx.descendants(graph, j)) for j in range(self.__rank)}
        return sorted((sorted(c) for c in closures), key=lambda c: (len(c), c))

    def restrict(self, generators: Sequence[int]) -> "Automorphism":
        """
        Restrict to the free factor spanned by a closed set of generators, reindexed in the given order.

        :param generators: Generator indices closed under :meth:`invariant_closures`.
        :return: Endomorphism of the smaller free group (not revalidated).
        :raises ValueError: If the set is not closed under the image relation.
        """
        position = {g: i for i, g in enumerate(generators)}
        images = []
        for g in generators:
            codes = []
            for c in self.__images[g].codes:
                if abs(c) - 1 not in position:
                    raise ValueError(f"Generator set {list(generators)} is not invariant")
                k = position[abs(c) - 1] + 1
                codes.append(k if c > 0 else -k)
            images.append(Word(codes, len(generators)))
        return Automorphism(images, names=[self.__names[g] for g in generators], validate=False)

    def with_fixed_generator(self, name: str = "t") -> "Automorphism":
        """
        Adjoin a new last generator mapped to itself.

        :param name: Name of the new generator (made unique if taken).
        :return: Automorphism of ``F_{n+1}``.
        """
        rank = self.__rank + 1
        while name in self.__names:
            name = name + "_"
        images = [Word(image.codes, rank) for image in self.__images] + [Word([rank], rank)]
        names = list(self.__names) + [name]
        inverse = self.__inverse.with_fixed_generator(name) if self.__inverse is not None else None
        return Automorphism(images, names=names, inverse=inverse, validate=False)


def compose(alpha: Automorphism, beta: Automorphism) -> Automorphism:
    """
    Composition ``α ∘ β``, so that applying it is ``α(β(w))``.

    :param alpha: Outer map.
    :param beta: Inner map.
    :return: Composite automorphism, with inverse when both inverses are known.
    :raises RankMismatchException: If the ranks differ.
    """
    if alpha.rank != beta.rank:
        raise RankMismatchException(f"Cannot compose rank {alpha.rank} with rank {beta.rank}")
    images = [alpha.apply(image) for image in beta.images]
    inverse = None
    if alpha.inverse is not None and beta.inverse is not None:
        inverse = Automorphism(
            [beta.inverse.apply(image) for image in alpha.inverse.images],
            names=alpha.names,
            validate=False,
        )
    return Automorphism(images, names=alpha.names, inverse=inverse, validate=False)
