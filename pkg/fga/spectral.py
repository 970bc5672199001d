"""Transition matrices of automorphisms and their Perron-Frobenius eigenvalues."""

import logging

import networkx as nx
import numpy as np
import sympy

from .objects.automorphism import Automorphism
from .objects.growth import X, AlgebraicReal
from .objects.matrix import TransitionMatrix

log = logging.getLogger(__name__)

EXACT_MAX_SIZE = 8
"""Largest matrix size for which the eigenvalue is isolated exactly from the characteristic polynomial."""

_POWER_ITERATION_STEPS = 100_000
_POWER_ITERATION_TOLERANCE = 1e-13


class DominantEigenvalue:
    """Dominant eigenvalue of a non-negative matrix with an error bound and an eigenvector."""

    __slots__ = [
        "__value",
        "__error_bound",
        "__vector",
    ]

    def __init__(self, value: AlgebraicReal, error_bound: float, vector: np.ndarray):
        """
        Initialize a new eigenvalue result.

        :param value: Eigenvalue.
        :param error_bound: Bound on the absolute error of ``value.approx``.
        :param vector: Right eigenvector, normalized in the maximum norm.
        """
        self.__value = value
        self.__error_bound = error_bound
        self.__vector = vector

    def __repr__(self):
        return f"{self.__class__.__name__}(value={self.value.approx!r}, error_bound={self.error_bound!r})"

    def to_dict(self) -> dict:
        """
        Return a dictionary representation.

        :return: Dictionary with the eigenvalue and its error bound.
        """
        return {"lambda": self.value.to_dict(), "errorBound": self.error_bound}

    @property
    def value(self) -> AlgebraicReal:
        """Eigenvalue."""
        return self.__value

    @property
    def error_bound(self) -> float:
        """Absolute error bound of the approximation."""
        return self.__error_bound

    @property
    def vector(self) -> np.ndarray:
        """Right eigenvector."""
        return self.__vector

    def residual(self, matrix: TransitionMatrix) -> float:
        """
        Relative residual ``‖Mv − λv‖∞ / ‖v‖∞``.

        :param matrix: Matrix the eigenpair belongs to.
        :return: Residual.
        """
        m = matrix.to_numpy()
        v = self.__vector
        return float(np.max(np.abs(m @ v - self.__value.approx * v)) / np.max(np.abs(v)))


def transition_matrix(alpha: Automorphism) -> TransitionMatrix:
    """
    Count letters of each generator image, ignoring signs.

    :param alpha: Automorphism.
    :return: Transition matrix, column ``j`` describing the image of generator ``j``.
    """
    n = alpha.rank
    entries = [[0] * n for _ in range(n)]
    for j, image in enumerate(alpha.images):
        for c in image.codes:
            entries[abs(c) - 1][j] += 1
    return TransitionMatrix(entries)


def _eigenvector(m: np.ndarray, value: float) -> np.ndarray:
    # Smallest right singular vector of M - λI.
    n = m.shape[0]
    _, _, vh = np.linalg.svd(m - value * np.eye(n))
    v = vh[-1]
    if v.sum() < 0:
        v = -v
    return v / np.max(np.abs(v))


def _exact_eigenvalue(matrix: TransitionMatrix) -> tuple[AlgebraicReal, float]:
    charpoly = matrix.to_sympy().charpoly(X)
    _, factors = sympy.factor_list(charpoly.as_expr(), X)
    best: AlgebraicReal | None = None
    for factor, _ in factors:
        poly = sympy.Poly(factor, X)
        if poly.degree() < 1 or not poly.intervals():
            continue
        root = AlgebraicReal.from_minpoly(poly)
        if best is None or root.approx > best.approx:
            best = root
    if best is None:
        raise ValueError("Characteristic polynomial has no real root")
    lo, hi = best.interval
    return best, float(hi - lo)


def _component_eigenvalue(block: np.ndarray) -> tuple[float, float]:
    # Power iteration on B + I, which is primitive on an irreducible block.
    n = block.shape[0]
    shifted = block + np.eye(n)
    v = np.ones(n)
    lower, upper = 0.0, float("inf")
    for _ in range(_POWER_ITERATION_STEPS):
        w = shifted @ v
        ratios = w / v
        lower, upper = float(ratios.min()), float(ratios.max())
        v = w / np.max(w)
        if upper - lower <= _POWER_ITERATION_TOLERANCE * upper:
            break
    else:
        log.warning(f"Power iteration did not converge, bounds [{lower - 1}, {upper - 1}]")
    return (lower + upper) / 2 - 1, (upper - lower) / 2


def _numeric_eigenvalue(matrix: TransitionMatrix) -> tuple[AlgebraicReal, float]:
    size = matrix.size
    graph = nx.DiGraph()
    graph.add_nodes_from(range(size))
    graph.add_edges_from((i, j) for i in range(size) for j in range(size) if matrix[i, j] > 0)

    best, best_err = 0.0, 0.0
    for component in nx.strongly_connected_components(graph):
        indices = sorted(component)
        block = matrix.submatrix(indices)
        if block.is_zero():
            continue
        value, err = _component_eigenvalue(block.to_numpy())
        log.debug(f"Component {indices} has eigenvalue {value} ± {err}")
        if value > best:
            best, best_err = value, err
    return AlgebraicReal(best, error=best_err / max(best, 1.0)), best_err


def pf_eigenvalue(matrix: TransitionMatrix) -> DominantEigenvalue:
    """
    Perron-Frobenius eigenvalue of a non-negative integer matrix.

    Up to :data:`EXACT_MAX_SIZE` the largest real root of the characteristic polynomial is isolated exactly;
    larger matrices use power iteration per strongly connected component with Collatz-Wielandt bounds.

    :param matrix: Transition matrix.
    :return: Dominant eigenvalue with error bound and eigenvector.
    :raises ValueError: If the matrix is zero.
    """
    if matrix.is_zero():
        raise ValueError("Perron-Frobenius eigenvalue of the zero matrix is undefined")

    if matrix.size <= EXACT_MAX_SIZE:
        value, err = _exact_eigenvalue(matrix)
    else:
        value, err = _numeric_eigenvalue(matrix)

    vector = _eigenvector(matrix.to_numpy(), value.approx)
    log.debug(f"Perron-Frobenius eigenvalue {value.approx} (error bound {err})")
    return DominantEigenvalue(value, err, vector)
