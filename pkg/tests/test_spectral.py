import math

import pytest

from fga.objects.automorphism import Automorphism
from fga.objects.growth import X
from fga.objects.matrix import TransitionMatrix
from fga.objects.word import Word
from fga.spectral import EXACT_MAX_SIZE, pf_eigenvalue, transition_matrix

GOLDEN_SQUARED = (3 + math.sqrt(5)) / 2


def _tau_matrix() -> TransitionMatrix:
    return transition_matrix(Automorphism([Word([1, 2, 1], 2), Word([2, 1], 2)]))


def test_transition_matrix():
    matrix = _tau_matrix()
    assert matrix.entries == ((2, 1), (1, 1))
    assert matrix.column_sums() == [3, 2]


def test_transition_matrix_ignores_signs():
    alpha = Automorphism([Word([2], 2), Word([-1], 2)])
    assert transition_matrix(alpha).entries == ((0, 1), (1, 0))


@pytest.mark.parametrize(
    ("entries"),
    [
        [[1, 2]],
        [[1, 0], [0, -1]],
    ],
)
def test_invalid_matrix(entries):
    with pytest.raises(ValueError):
        TransitionMatrix(entries)


def test_l1_orbit():
    assert _tau_matrix().l1_orbit([1, 0], 4) == [3, 8, 21, 55]


def test_exact_eigenvalue():
    result = pf_eigenvalue(_tau_matrix())
    assert result.value.is_exact
    assert result.value.minpoly.as_expr() == X**2 - 3 * X + 1
    assert result.value.approx == pytest.approx(GOLDEN_SQUARED, rel=1e-12)
    assert result.error_bound < 1e-12
    assert result.residual(_tau_matrix()) < 1e-9
    assert (result.vector > 0).all()


def test_identity_eigenvalue_is_one():
    identity = TransitionMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert pf_eigenvalue(identity).value.is_one()


def test_zero_matrix():
    with pytest.raises(ValueError):
        pf_eigenvalue(TransitionMatrix([[0, 0], [0, 0]]))


def test_numeric_eigenvalue_on_large_matrix():
    size = EXACT_MAX_SIZE + 1
    entries = [[int(i == j) for j in range(size)] for i in range(size)]
    entries[0][0], entries[0][1], entries[1][0], entries[1][1] = 2, 1, 1, 1
    matrix = TransitionMatrix(entries)

    result = pf_eigenvalue(matrix)
    assert not result.value.is_exact
    assert result.value.approx == pytest.approx(GOLDEN_SQUARED, rel=1e-9)
    assert result.residual(matrix) < 1e-6


def test_submatrix():
    matrix = TransitionMatrix([[2, 1, 0], [1, 1, 3], [0, 0, 1]])
    assert matrix.submatrix([0, 1]).entries == ((2, 1), (1, 1))
    assert matrix.submatrix([2]).entries == ((1,),)
    assert matrix.submatrix([2, 0]).entries == ((1, 0), (0, 2))


def test_numeric_eigenvalue_per_component(mocker):
    size = EXACT_MAX_SIZE + 1
    entries = [[0] * size for _ in range(size)]
    entries[0][0], entries[0][1], entries[1][0], entries[1][1] = 2, 1, 1, 1
    entries[2][3], entries[3][2] = 1, 1
    spy = mocker.spy(TransitionMatrix, "submatrix")

    result = pf_eigenvalue(TransitionMatrix(entries))
    assert result.value.approx == pytest.approx(GOLDEN_SQUARED, rel=1e-9)
    blocks = [call.args[-1] for call in spy.call_args_list]
    assert [0, 1] in blocks
    assert [2, 3] in blocks
