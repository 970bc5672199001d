import pytest
from hypothesis import given
from hypothesis import strategies as st

from fga.helpers import (
    big_ints_to_strings,
    code_index,
    default_generator_names,
    inverse_name,
    least_rotation,
    letter_code,
    letter_key,
    positive_part,
)


def test_letter_code():
    assert letter_code(0, 1) == 1
    assert letter_code(0, -1) == -1
    assert letter_code(4, 1) == 5
    assert code_index(-5) == 4


def test_letter_key_orders_inverse_first():
    assert letter_key(-1) == 0
    assert letter_key(1) == 1
    assert letter_key(-2) == 2
    assert sorted([2, -1, 1, -2], key=letter_key) == [-1, 1, -2, 2]


@pytest.mark.parametrize(
    ("keys", "expected"),
    [
        ([], 0),
        ([5], 0),
        ([3, 1, 2], 1),
        ([1, 1, 1], 0),
        ([2, 1, 2, 1, 1], 3),
    ],
)
def test_least_rotation(keys, expected):
    assert least_rotation(keys) == expected


@given(st.lists(st.integers(min_value=0, max_value=3), min_size=1, max_size=12))
def test_least_rotation_is_minimal(keys):
    start = least_rotation(keys)
    rotated = keys[start:] + keys[:start]
    assert rotated == min(keys[i:] + keys[:i] for i in range(len(keys)))


def test_default_generator_names():
    assert default_generator_names(3) == ["a", "b", "c"]
    assert default_generator_names(26)[-1] == "z"
    names = default_generator_names(27)
    assert names[0] == "a0"
    assert names[-1] == "a26"


@pytest.mark.parametrize(
    ("name", "expected"),
    [
        ("a", "A"),
        ("a1", "A1"),
        ("b'", "B'"),
        ("X", "X^-1"),
    ],
)
def test_inverse_name(name, expected):
    assert inverse_name(name) == expected


def test_positive_part():
    assert positive_part(-3) == 0
    assert positive_part(0) == 0
    assert positive_part(2) == 2


def test_big_ints_to_strings():
    assert big_ints_to_strings([1, 10**30]) == ["1", "1" + "0" * 30]
