"""Invariant tuples, inequality check results and reports."""

from ..helpers import positive_part


class InvariantTuple:
    """Numbers ``(n, e, d, s, rk Fix, k, r)`` attached to an automorphism; optional ones may be None."""

    __slots__ = [
        "__n",
        "__e",
        "__d",
        "__s",
        "__fix_rank",
        "__k",
        "__r",
    ]

    def __init__(
        self,
        n: int,
        e: int,
        d: int,
        s: int | None = None,
        fix_rank: int | None = None,
        k: int | None = None,
        r: int | None = None,
    ):
        """
        Initialize a new tuple.

        :param n: Rank.
        :param e: Number of attracting laminations, or the observable count e′.
        :param d: Maximal polynomial degree.
        :param s: Maximal chain length of laminations.
        :param fix_rank: Rank of the fixed subgroup (or a lower bound).
        :param k: Rank of the span of periodic classes in the abelianization (or a lower bound).
        :param r: Index term over isogredience classes.
        :raises ValueError: If a value is negative or ``n < 1``.
        """
        if n < 1:
            raise ValueError(f"Rank must be positive, got {n}")
        for name, value in (("e", e), ("d", d), ("s", s), ("fix_rank", fix_rank), ("k", k), ("r", r)):
            if value is not None and value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")
        self.__n = n
        self.__e = e
        self.__d = d
        self.__s = s
        self.__fix_rank = fix_rank
        self.__k = k
        self.__r = r

    def __eq__(self, other) -> bool:
        if not isinstance(other, InvariantTuple):
            raise NotImplementedError
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(tuple(self.to_dict().values()))

    def __repr__(self):
        fields = ", ".join(f"{k}={v}" for k, v in self.to_dict().items() if v is not None)
        return f"{self.__class__.__name__}({fields})"

    def to_dict(self) -> dict:
        """
        Return a dictionary representation.

        :return: Dictionary representation, absent values as None.
        """
        return {
            "n": self.n,
            "e": self.e,
            "d": self.d,
            "s": self.s,
            "fixRank": self.fix_rank,
            "k": self.k,
            "r": self.r,
        }

    @property
    def n(self) -> int:
        """Rank."""
        return self.__n

    @property
    def e(self) -> int:
        """Lamination count (or e′)."""
        return self.__e

    @property
    def d(self) -> int:
        """Maximal polynomial degree."""
        return self.__d

    @property
    def p(self) -> int:
        """``(d − 1)^+``."""
        return positive_part(self.__d - 1)

    @property
    def s(self) -> int | None:
        """Maximal chain length."""
        return self.__s

    @property
    def fix_rank(self) -> int | None:
        """Fixed subgroup rank."""
        return self.__fix_rank

    @property
    def k(self) -> int | None:
        """Periodic abelianized rank."""
        return self.__k

    @property
    def r(self) -> int | None:
        """Index term."""
        return self.__r


class CheckResult:
    """One evaluated inequality ``lhs ≤ rhs``."""

    __slots__ = [
        "__name",
        "__lhs",
        "__rhs",
    ]

    def __init__(self, name: str, lhs: int, rhs: int):
        """
        Initialize a new check result.

        :param name: Human readable inequality.
        :param lhs: Left-hand side value.
        :param rhs: Right-hand side value.
        """
        self.__name = name
        self.__lhs = lhs
        self.__rhs = rhs

    def __eq__(self, other) -> bool:
        if not isinstance(other, CheckResult):
            raise NotImplementedError
        return (self.name, self.lhs, self.rhs) == (other.name, other.lhs, other.rhs)

    def __hash__(self):
        return hash((self.name, self.lhs, self.rhs))

    def __repr__(self):
        return f"{self.__class__.__name__}(name={self.name!r}, lhs={self.lhs}, rhs={self.rhs}, passed={self.passed})"

    def to_dict(self) -> dict:
        """
        Return a dictionary representation.

        :return: Dictionary with ``name``, ``lhs``, ``rhs`` and ``pass``.
        """
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}

    @property
    def name(self) -> str:
        """Inequality name."""
        return self.__name

    @property
    def lhs(self) -> int:
        """Left-hand side."""
        return self.__lhs

    @property
    def rhs(self) -> int:
        """Right-hand side."""
        return self.__rhs

    @property
    def passed(self) -> bool:
        """Whether ``lhs ≤ rhs``."""
        return self.__lhs <= self.__rhs


class InvariantReport:
    """Measured invariants of an automorphism with the inequality checks evaluated on them."""

    __slots__ = [
        "__measured",
        "__checks",
        "__declared",
        "__growth",
    ]

    def __init__(
        self,
        measured: InvariantTuple,
        checks: list[CheckResult],
        declared: dict | None = None,
        growth: list[dict] | None = None,
    ):
        """
        Initialize a new report.

        :param measured: Measured tuple (e′ in place of e, lower bounds for rk Fix and k).
        :param checks: Evaluated inequalities.
        :param declared: Expected invariants declared by a constructor, if any.
        :param growth: Per-class growth records backing the measurement.
        """
        self.__measured = measured
        self.__checks = list(checks)
        self.__declared = declared
        self.__growth = growth or []

    def __repr__(self):
        return f"{self.__class__.__name__}(measured={self.measured}, passed={self.all_passed})"

    def to_dict(self) -> dict:
        """
        Return a dictionary representation.

        :return: Dictionary with ``n``, ``measured``, optional ``declaredExpected`` and ``checks``.
        """
        data: dict = {
            "n": self.measured.n,
            "measured": {
                "ePrime": self.measured.e,
                "d": self.measured.d,
                "fixRankLower": self.measured.fix_rank,
                "kLower": self.measured.k,
            },
        }
        if self.declared is not None:
            data["declaredExpected"] = self.declared
        data["checks"] = [c.to_dict() for c in self.checks]
        if self.growth:
            data["growth"] = self.growth
        return data

    @property
    def measured(self) -> InvariantTuple:
        """Measured tuple."""
        return self.__measured

    @property
    def checks(self) -> list[CheckResult]:
        """Evaluated inequalities."""
        return self.__checks

    @property
    def declared(self) -> dict | None:
        """Declared expected invariants."""
        return self.__declared

    @property
    def growth(self) -> list[dict]:
        """Per-class growth records."""
        return self.__growth

    @property
    def all_passed(self) -> bool:
        """Whether every check passed."""
        return all(c.passed for c in self.__checks)
