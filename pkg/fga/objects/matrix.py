"""Transition matrices of substitutions."""

from collections.abc import Sequence

import numpy as np
import sympy


class TransitionMatrix:
    """
    Square matrix of non-negative integers; entry ``[i][j]`` counts occurrences of generator ``i``
    (either sign) in the image of generator ``j``.
    """

    __slots__ = [
        "__entries",
    ]

    def __init__(self, entries: Sequence[Sequence[int]]):
        """
        Initialize a new transition matrix.

        :param entries: Rows of non-negative integers.
        :raises ValueError: If the matrix is not square or has negative entries.
        """
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("Transition matrix must be square")
        if any(x < 0 for row in rows for x in row):
            raise ValueError("Transition matrix entries must be non-negative")
        self.__entries = rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, TransitionMatrix):
            raise NotImplementedError
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"{self.__class__.__name__}({[list(row) for row in self.entries]})"

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.__entries[i][j]

    def to_dict(self) -> dict:
        """
        Return a dictionary representation.

        :return: Dictionary with the rows, entries as decimal strings.
        """
        return {"rows": [[str(x) for x in row] for row in self.entries]}

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        """Rows of the matrix."""
        return self.__entries

    @property
    def size(self) -> int:
        """Number of rows and columns."""
        return len(self.__entries)

    def column_sums(self) -> list[int]:
        """Lengths of the generator images."""
        return [sum(row[j] for row in self.__entries) for j in range(self.size)]

    def is_zero(self) -> bool:
        """Whether every entry is zero."""
        return all(x == 0 for row in self.__entries for x in row)

    def to_numpy(self) -> np.ndarray:
        """Float copy for numerical work."""
        return np.array(self.__entries, dtype=float).reshape(self.size, self.size)

    def to_sympy(self) -> sympy.Matrix:
        """Exact copy for symbolic work."""
        return sympy.Matrix(self.size, self.size, lambda i, j: self.__entries[i][j])

    def submatrix(self, indices: Sequence[int]) -> "TransitionMatrix":
        """
        Principal submatrix on the given indices.

        :param indices: Row and column indices.
        :return: Submatrix.
        """
        return TransitionMatrix([[self.__entries[i][j] for j in indices] for i in indices])

    def multiply_vector(self, v: Sequence[int]) -> list[int]:
        """
        Exact product ``M v`` with Python integers.

        :param v: Integer vector.
        :return: Integer vector.
        """
        return [sum(a * b for a, b in zip(row, v) if a) for row in self.__entries]

    def l1_orbit(self, v: Sequence[int], steps: int) -> list[int]:
        """
        ℓ¹ norms of ``M v, M² v, …, M^steps v``, computed exactly.

        :param v: Non-negative integer vector.
        :param steps: Number of powers.
        :return: Norms, arbitrary precision.
        """
        norms = []
        current = list(v)
        for _ in range(steps):
            current = self.multiply_vector(current)
            norms.append(sum(current))
        return norms
