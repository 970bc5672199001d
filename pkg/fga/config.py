"""Run configuration shared by the engine, the sweeps and the command line."""

DEFAULT_MAX_ITER = 40
"""Default number of iterates computed by direct iteration."""

DEFAULT_LENGTH_CAP = 10**7
"""Default cap on the length of an iterated word before the sequence is truncated."""

DEFAULT_SWEEP_CAP = 10**6
"""Default length cap for the first pass over each class of a sweep."""

DEFAULT_MAX_LEN = 6
"""Default maximal word length for bounded searches and sweeps."""

DEFAULT_MAX_PERIOD = 4
"""Default maximal period when looking for periodic conjugacy classes."""

DEFAULT_SEARCH_BUDGET = 200_000
"""Default number of states a bounded search may visit."""

MIN_LENGTH_CAP = 10
"""Smallest accepted length cap."""

OUTPUT_FORMATS = {
    "json": "JSON report, big integers as decimal strings",
    "tsv": "Tab-separated (p, length) columns for plotting",
}
"""Supported report formats."""


class RunConfig:
    """Parameters of a computation run."""

    __slots__ = [
        "__max_iter",
        "__length_cap",
        "__sweep_cap",
        "__max_len",
        "__max_period",
        "__output_format",
        "__jobs",
        "__search_budget",
    ]

    def __init__(
        self,
        max_iter: int = DEFAULT_MAX_ITER,
        length_cap: int = DEFAULT_LENGTH_CAP,
        sweep_cap: int = DEFAULT_SWEEP_CAP,
        max_len: int = DEFAULT_MAX_LEN,
        max_period: int = DEFAULT_MAX_PERIOD,
        output_format: str = "json",
        jobs: int = 1,
        search_budget: int = DEFAULT_SEARCH_BUDGET,
    ):
        """
        Initialize a new run configuration.

        :param max_iter: Number of iterates for direct iteration.
        :param length_cap: Maximal length of an iterate before truncation.
        :param sweep_cap: Length cap for the first pass of a sweep, raised to ``length_cap`` for classes whose
            first pass is too short to classify.
        :param max_len: Maximal word length for bounded searches.
        :param max_period: Maximal period for periodic class detection.
        :param output_format: One of :data:`OUTPUT_FORMATS`.
        :param jobs: Number of worker processes for sweeps.
        :param search_budget: Number of states a bounded search may visit.
        :raises ValueError: If a value is out of range.
        """
        for name, value in (
            ("max_iter", max_iter),
            ("length_cap", length_cap),
            ("sweep_cap", sweep_cap),
            ("max_len", max_len),
            ("max_period", max_period),
            ("jobs", jobs),
            ("search_budget", search_budget),
        ):
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if length_cap < MIN_LENGTH_CAP:
            raise ValueError(f"length_cap must be at least {MIN_LENGTH_CAP}")
        if sweep_cap < MIN_LENGTH_CAP:
            raise ValueError(f"sweep_cap must be at least {MIN_LENGTH_CAP}")
        if output_format not in OUTPUT_FORMATS:
            raise ValueError(f"Unknown output format '{output_format}'")

        self.__max_iter = max_iter
        self.__length_cap = length_cap
        self.__sweep_cap = sweep_cap
        self.__max_len = max_len
        self.__max_period = max_period
        self.__output_format = output_format
        self.__jobs = jobs
        self.__search_budget = search_budget

    def __eq__(self, other) -> bool:
        if not isinstance(other, RunConfig):
            raise NotImplementedError
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(tuple(self.to_dict().values()))

    def __repr__(self):
        return (
            f"{self.__class__.__name__}("
            f"max_iter={self.max_iter}, "
            f"length_cap={self.length_cap}, "
            f"sweep_cap={self.sweep_cap}, "
            f"max_len={self.max_len}, "
            f"max_period={self.max_period}, "
            f"output_format={self.output_format}, "
            f"jobs={self.jobs}, "
            f"search_budget={self.search_budget}"
            ")"
        )

    def to_dict(self) -> dict:
        """
        Return a dictionary representation of the configuration.

        :return: Dictionary representation.
        """
        return {
            "max_iter": self.max_iter,
            "length_cap": self.length_cap,
            "sweep_cap": self.sweep_cap,
            "max_len": self.max_len,
            "max_period": self.max_period,
            "output_format": self.output_format,
            "jobs": self.jobs,
            "search_budget": self.search_budget,
        }

    @property
    def max_iter(self) -> int:
        """Number of iterates computed by direct iteration."""
        return self.__max_iter

    @property
    def length_cap(self) -> int:
        """Maximal length of an iterate before the sequence is truncated."""
        return self.__length_cap

    @property
    def sweep_cap(self) -> int:
        """Length cap for the first pass over each class of a sweep."""
        return self.__sweep_cap

    @property
    def max_len(self) -> int:
        """Maximal word length for bounded searches."""
        return self.__max_len

    @property
    def max_period(self) -> int:
        """Maximal period for periodic class detection."""
        return self.__max_period

    @property
    def output_format(self) -> str:
        """Report format."""
        return self.__output_format

    @property
    def jobs(self) -> int:
        """Number of worker processes used by sweeps."""
        return self.__jobs

    @property
    def search_budget(self) -> int:
        """Number of states a bounded search may visit."""
        return self.__search_budget
