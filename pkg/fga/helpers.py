"""Helper utilities."""

import logging
import string
from collections.abc import Sequence
from typing import TypeAlias

log = logging.getLogger(__name__)

LetterCode: TypeAlias = int
"""Signed letter code: ``+(i + 1)`` for generator ``i`` and ``-(i + 1)`` for its inverse."""

INVERSE_SUFFIX = "^-1"
"""Suffix marking an inverse letter when a name has no uppercase form."""

IDENTITY_TOKEN = "1"
"""Token used for the empty word in text form."""


def letter_code(index: int, sign: int) -> LetterCode:
    """
    Encode a letter as a signed integer.

    :param index: Generator index.
    :param sign: +1 or -1.
    :return: Signed letter code.
    """
    return (index + 1) if sign > 0 else -(index + 1)


def code_index(code: LetterCode) -> int:
    """Return the generator index of a letter code."""
    return abs(code) - 1


def letter_key(code: LetterCode) -> int:
    """
    Sort key ordering letters by ``(index, sign)`` with the inverse first.

    :param code: Signed letter code.
    :return: Non-negative integer key.
    """
    return 2 * (abs(code) - 1) + (1 if code > 0 else 0)


def least_rotation(keys: Sequence[int]) -> int:
    """
    Return the start of the lexicographically least rotation of a sequence.

    Two-pointer minimum expression search, linear in the length.

    :param keys: Sequence of comparable keys.
    :return: Offset of the least rotation (0 for an empty sequence).
    """
    n = len(keys)
    i, j, k = 0, 1, 0
    while i < n and j < n and k < n:
        a = keys[(i + k) % n]
        b = keys[(j + k) % n]
        if a == b:
            k += 1
            continue
        if a > b:
            i = i + k + 1
        else:
            j = j + k + 1
        if i == j:
            j += 1
        k = 0
    return min(i, j) if n else 0


def default_generator_names(rank: int) -> list[str]:
    """
    Default generator names: ``a, b, c, …`` up to rank 26, ``a0, a1, …`` beyond.

    :param rank: Rank of the free group.
    :return: List of ``rank`` names.
    """
    if rank <= len(string.ascii_lowercase):
        return list(string.ascii_lowercase[:rank])
    return [f"a{i}" for i in range(rank)]


def inverse_name(name: str) -> str:
    """
    Text form of the inverse of a generator.

    Names starting with a lowercase letter are inverted by uppercasing that letter,
    anything else gets the ``^-1`` suffix.

    :param name: Generator name.
    :return: Name of the inverse letter.
    """
    if name and name[0] in string.ascii_lowercase:
        return name[0].upper() + name[1:]
    return name + INVERSE_SUFFIX


def positive_part(x: int) -> int:
    """Return ``max(x, 0)``."""
    return x if x > 0 else 0


def big_ints_to_strings(values: Sequence[int]) -> list[str]:
    """
    Serialize arbitrary-precision integers as decimal strings for JSON.

    :param values: Integers.
    :return: Decimal strings.
    """
    return [str(v) for v in values]
