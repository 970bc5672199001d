"""Results of building an automorphism from a family or from a target set of invariants."""

import abc
import logging
from collections.abc import Mapping, Sequence
from typing import NamedTuple

from ..lamination import LaminationPoset
from .automorphism import Automorphism
from .growth import GrowthType
from .word import CyclicWord, Word, format_word

log = logging.getLogger(__name__)


class Probe(NamedTuple):
    """Conjugacy class with the growth type a family is expected to give it."""

    subject: CyclicWord
    """Class to measure."""

    growth: GrowthType
    """Expected growth type."""

    def to_dict(self, names: Sequence[str]) -> dict:
        """
        Return a dictionary representation.

        :param names: Generator names.
        :return: Class text merged with the expected growth type.
        """
        return {"class": format_word(self.subject, names), **self.growth.to_dict()}


class GeometricBlock:
    """
    User-supplied automorphism with a rank 1 fixed subgroup, plugged into the regions of invariants that
    need more exponential strata than copies of the torus automorphism can give.
    """

    __slots__ = [
        "__automorphism",
        "__e_prime",
        "__fixed",
    ]

    def __init__(self, automorphism: Automorphism, e_prime: int, fixed: Word):
        """
        Initialize a new block.

        :param automorphism: Block automorphism.
        :param e_prime: Declared number of distinct exponential growth types.
        :param fixed: Generator of the fixed subgroup.
        :raises ValueError: If ``fixed`` is trivial or not fixed.
        """
        if fixed.is_trivial():
            raise ValueError("Fixed word of a geometric block must be nontrivial")
        if automorphism.apply(fixed) != fixed:
            raise ValueError("Declared fixed word of a geometric block is not fixed")
        self.__automorphism = automorphism
        self.__e_prime = e_prime
        self.__fixed = fixed

    def __repr__(self):
        return f"{self.__class__.__name__}(rank={self.rank}, e_prime={self.e_prime})"

    @property
    def automorphism(self) -> Automorphism:
        """Block automorphism."""
        return self.__automorphism

    @property
    def rank(self) -> int:
        """Rank of the block."""
        return self.__automorphism.rank

    @property
    def e_prime(self) -> int:
        """Declared number of distinct exponential growth types."""
        return self.__e_prime

    @property
    def fixed(self) -> Word:
        """Generator of the fixed subgroup."""
        return self.__fixed


class AbstractConstruction(metaclass=abc.ABCMeta):
    """Abstract result of a construction request."""

    __slots__ = [
        "__family",
        "__parameters",
    ]

    def __init__(self, family: str, parameters: Mapping[str, int]):
        """
        Initialize a new construction result.

        :param family: Family id.
        :param parameters: Family parameters.
        """
        self.__family = family
        self.__parameters = dict(parameters)

    def to_dict(self) -> dict:
        """
        Return a dictionary representation of the result.

        :return: Dictionary with the family id and its parameters.
        """
        return {
            "family": self.family,
            "parameters": self.parameters,
        }

    @property
    def family(self) -> str:
        """Family id."""
        return self.__family

    @property
    def parameters(self) -> dict[str, int]:
        """Family parameters."""
        return self.__parameters

    @property
    @abc.abstractmethod
    def supported(self) -> bool:
        """Whether an automorphism was built."""
        raise NotImplementedError("Abstract property.")


class ConstructedAutomorphism(AbstractConstruction):
    """Automorphism with the invariants its construction is expected to have."""

    __slots__ = [
        "__automorphism",
        "__expected",
        "__poset",
        "__probes",
        "__solution",
    ]

    def __init__(
        self,
        family: str,
        parameters: Mapping[str, int],
        automorphism: Automorphism,
        expected: Mapping[str, int | None],
        poset: LaminationPoset | None = None,
        probes: Sequence[Probe] = (),
        solution: Mapping[str, int] | None = None,
    ):
        """
        Initialize a new constructed automorphism.

        :param family: Family id.
        :param parameters: Family parameters.
        :param automorphism: Built automorphism.
        :param expected: Expected ``ePrime``, ``d`` and ``fixRank`` (None when unknown).
        :param poset: Declared lamination poset, for exponentially growing automorphisms.
        :param probes: Witness classes with their expected growth.
        :param solution: Auxiliary parameters solved for by the construction, if any.
        """
        super().__init__(family=family, parameters=parameters)
        self.__automorphism = automorphism
        self.__expected = dict(expected)
        self.__poset = poset
        self.__probes = list(probes)
        self.__solution = dict(solution) if solution is not None else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConstructedAutomorphism):
            raise NotImplementedError

        if self.family != other.family or self.parameters != other.parameters:
            return False

        if self.automorphism != other.automorphism:
            return False

        return True

    def __hash__(self):
        return hash((self.family, self.automorphism))

    def __repr__(self):
        return (
            f"{self.__class__.__name__}("
            f"family={self.family}, "
            f"parameters={self.parameters}, "
            f"rank={self.automorphism.rank}, "
            f"expected={self.expected}"
            ")"
        )

    def to_dict(self) -> dict:
        """
        Return the sidecar of expected invariants.

        :return: Dictionary with family, parameters, rank, ``expected`` (with the declared poset), probes and the
            solved auxiliary parameters.
        """
        names = list(self.automorphism.names)
        expected = {key: value for key, value in self.expected.items() if value is not None}
        if self.poset is not None:
            expected["poset"] = self.poset.to_dict()
        data = {
            **super().to_dict(),
            "rank": self.automorphism.rank,
            "expected": expected,
            "probes": [probe.to_dict(names) for probe in self.probes],
        }
        if self.solution is not None:
            data["solution"] = self.solution
        return data

    @property
    def supported(self) -> bool:
        return True

    @property
    def automorphism(self) -> Automorphism:
        """Built automorphism."""
        return self.__automorphism

    @property
    def expected(self) -> dict[str, int | None]:
        """Expected invariants keyed ``ePrime``, ``d`` and ``fixRank``."""
        return self.__expected

    @property
    def poset(self) -> LaminationPoset | None:
        """Declared lamination poset."""
        return self.__poset

    @property
    def probes(self) -> list[Probe]:
        """Witness classes."""
        return self.__probes

    @property
    def solution(self) -> dict[str, int] | None:
        """Solved auxiliary parameters."""
        return self.__solution


class UnsupportedRegion(AbstractConstruction):
    """Invariants that are admissible but cannot be realized without a geometric block."""

    __slots__ = [
        "__reason",
    ]

    def __init__(self, family: str, parameters: Mapping[str, int], reason: str):
        """
        Initialize a new unsupported region.

        :param family: Family id.
        :param parameters: Requested parameters.
        :param reason: Why nothing was built.
        """
        super().__init__(family=family, parameters=parameters)
        self.__reason = reason
        log.info(f"Unsupported region: {parameters}, reason: {reason}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnsupportedRegion):
            raise NotImplementedError

        if self.parameters != other.parameters:
            return False

        if self.reason != other.reason:
            return False

        return True

    def __hash__(self):
        return hash((self.family, self.reason))

    def __repr__(self):
        return f"{self.__class__.__name__}(parameters={self.parameters}, reason={self.reason})"

    def to_dict(self) -> dict:
        return {
            **super().to_dict(),
            "reason": self.reason,
        }

    @property
    def supported(self) -> bool:
        return False

    @property
    def reason(self) -> str:
        """
        Return the reason why nothing was built.

        :return: Reason.
        """
        return self.__reason
