"""Reduced words and cyclic words in a free group of finite rank.

Letters are stored as signed integer codes (see :func:`fga.helpers.letter_code`), so a word is a flat
tuple of ints. The code-level functions in this module work on plain sequences of codes and are what the
growth engine uses on long iterates; :class:`Word` and :class:`CyclicWord` wrap them with a rank.
"""

from collections.abc import Iterable, Iterator, Sequence
from typing import NamedTuple

from ..exceptions import RankMismatchException
from ..helpers import (
    IDENTITY_TOKEN,
    LetterCode,
    code_index,
    default_generator_names,
    inverse_name,
    least_rotation,
    letter_code,
    letter_key,
)


class Letter(NamedTuple):
    """A generator or its inverse."""

    index: int
    """Generator index."""
    sign: int
    """+1 for the generator, -1 for its inverse."""

    @property
    def code(self) -> LetterCode:
        """Signed integer code of the letter."""
        return letter_code(self.index, self.sign)

    @classmethod
    def from_code(cls, code: LetterCode) -> "Letter":
        """Build a letter from its signed integer code."""
        return cls(code_index(code), 1 if code > 0 else -1)

    def inverse(self) -> "Letter":
        """Return the inverse letter."""
        return Letter(self.index, -self.sign)


def free_reduce(codes: Iterable[LetterCode]) -> list[LetterCode]:
    """
    Freely reduce a sequence of letter codes with a single stack pass.

    :param codes: Letter codes.
    :return: Reduced list of codes.
    """
    stack: list[LetterCode] = []
    for c in codes:
        if stack and stack[-1] == -c:
            stack.pop()
        else:
            stack.append(c)
    return stack


def invert_codes(codes: Sequence[LetterCode]) -> list[LetterCode]:
    """Return the codes of the inverse word."""
    return [-c for c in reversed(codes)]


def cyclic_core_bounds(codes: Sequence[LetterCode]) -> tuple[int, int]:
    """
    Locate the cyclically reduced core of a reduced word.

    :param codes: Freely reduced codes.
    :return: ``(i, j)`` such that ``codes[i:j]`` is the core and ``codes[:i]`` the conjugator.
    """
    i, j = 0, len(codes) - 1
    while i < j and codes[i] == -codes[j]:
        i += 1
        j -= 1
    return i, j + 1


def canonical_rotation(codes: Sequence[LetterCode]) -> tuple[LetterCode, ...]:
    """
    Rotate a cyclically reduced word to its least rotation under the ``(index, sign)`` letter order.

    :param codes: Cyclically reduced codes.
    :return: Canonical rotation.
    """
    if not codes:
        return ()
    start = least_rotation([letter_key(c) for c in codes])
    return tuple(codes[start:]) + tuple(codes[:start])


def canonical_cyclic_codes(codes: Sequence[LetterCode]) -> tuple[LetterCode, ...]:
    """
    Canonical form of the conjugacy class of a (not necessarily reduced) word.

    :param codes: Letter codes.
    :return: Canonical cyclic codes.
    """
    reduced = free_reduce(codes)
    i, j = cyclic_core_bounds(reduced)
    return canonical_rotation(reduced[i:j])


def cyclic_length(codes: Sequence[LetterCode]) -> int:
    """Length of a cyclically reduced representative of a reduced word's class."""
    i, j = cyclic_core_bounds(codes)
    return j - i


def _check_rank(codes: Sequence[LetterCode], rank: int) -> None:
    for c in codes:
        if c == 0 or abs(c) > rank:
            raise RankMismatchException(f"Letter code {c} is out of range for rank {rank}")


def _as_code(letter) -> LetterCode:
    if isinstance(letter, Letter):
        return letter.code
    return int(letter)


class Word:
    """Freely reduced word over a free basis of rank ``n``."""

    __slots__ = [
        "__codes",
        "__rank",
    ]

    def __init__(self, codes: Iterable[LetterCode], rank: int):
        """
        Initialize a new word, reducing the given codes.

        :param codes: Letter codes (need not be reduced).
        :param rank: Rank of the ambient free group.
        :raises RankMismatchException: If a letter index is not below ``rank``.
        """
        codes = list(codes)
        _check_rank(codes, rank)
        self.__codes = tuple(free_reduce(codes))
        self.__rank = rank

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            raise NotImplementedError

        if self.rank != other.rank:
            return False

        if self.codes != other.codes:
            return False

        return True

    def __hash__(self):
        return hash((self.rank, self.codes))

    def __repr__(self):
        return f"{self.__class__.__name__}(codes={list(self.codes)}, rank={self.rank})"

    def __len__(self) -> int:
        return len(self.__codes)

    def __iter__(self) -> Iterator[Letter]:
        return (Letter.from_code(c) for c in self.__codes)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if other.rank != self.rank:
            raise RankMismatchException(f"Cannot multiply words of rank {self.rank} and {other.rank}")
        return Word(self.codes + other.codes, self.rank)

    @property
    def codes(self) -> tuple[LetterCode, ...]:
        """
        Return the reduced letter codes.

        :return: Tuple of signed letter codes.
        """
        return self.__codes

    @property
    def rank(self) -> int:
        """Rank of the ambient free group."""
        return self.__rank

    @property
    def letters(self) -> list[Letter]:
        """Letters of the word."""
        return list(self)

    def is_trivial(self) -> bool:
        """Whether this is the empty word."""
        return not self.__codes

    def inverse(self) -> "Word":
        """Return the inverse word."""
        return Word(invert_codes(self.__codes), self.__rank)

    def conjugate(self, by: "Word") -> "Word":
        """
        Return ``by · self · by⁻¹``.

        :param by: Conjugating word.
        :return: Conjugate word.
        """
        return by * self * by.inverse()

    def with_rank(self, rank: int) -> "Word":
        """
        Return the same word viewed in a free group of larger rank.

        :param rank: New rank.
        :return: Word over the larger basis.
        :raises RankMismatchException: If the word uses generators beyond ``rank``.
        """
        return Word(self.__codes, rank)


class CyclicWord:
    """Conjugacy class of a word, stored as the canonical rotation of a cyclically reduced representative."""

    __slots__ = [
        "__codes",
        "__rank",
    ]

    def __init__(self, codes: Iterable[LetterCode], rank: int):
        """
        Initialize a new cyclic word from any representative of the class.

        :param codes: Letter codes of a representative.
        :param rank: Rank of the ambient free group.
        :raises RankMismatchException: If a letter index is not below ``rank``.
        """
        codes = list(codes)
        _check_rank(codes, rank)
        self.__codes = canonical_cyclic_codes(codes)
        self.__rank = rank

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclicWord):
            raise NotImplementedError

        if self.rank != other.rank:
            return False

        if self.codes != other.codes:
            return False

        return True

    def __hash__(self):
        return hash((self.rank, self.codes))

    def __repr__(self):
        return f"{self.__class__.__name__}(codes={list(self.codes)}, rank={self.rank})"

    def __len__(self) -> int:
        return len(self.__codes)

    def __iter__(self) -> Iterator[Letter]:
        return (Letter.from_code(c) for c in self.__codes)

    @property
    def codes(self) -> tuple[LetterCode, ...]:
        """Canonical cyclically reduced codes."""
        return self.__codes

    @property
    def rank(self) -> int:
        """Rank of the ambient free group."""
        return self.__rank

    def is_trivial(self) -> bool:
        """Whether this is the trivial class."""
        return not self.__codes

    def inverse(self) -> "CyclicWord":
        """Return the class of the inverse."""
        return CyclicWord(invert_codes(self.__codes), self.__rank)

    def representative(self) -> Word:
        """Return the canonical representative as a :class:`Word`."""
        return Word(self.__codes, self.__rank)


def reduce(raw: Iterable[Letter | LetterCode], rank: int) -> Word:
    """
    Freely reduce a sequence of letters.

    :param raw: Letters or letter codes.
    :param rank: Rank of the ambient free group.
    :return: Reduced word.
    :raises RankMismatchException: If a letter index is not below ``rank``.
    """
    return Word((_as_code(x) for x in raw), rank)


def cyclic_reduce(w: Word) -> CyclicWord:
    """
    Return the conjugacy class of a word in canonical cyclic form.

    :param w: Reduced word.
    :return: Cyclic word.
    """
    return CyclicWord(w.codes, w.rank)


def format_codes(codes: Sequence[LetterCode], names: Sequence[str]) -> str:
    """
    Render letter codes as whitespace-separated generator names.

    :param codes: Letter codes.
    :param names: Generator names indexed by generator.
    :return: Text form, ``1`` for the empty word.
    """
    if not codes:
        return IDENTITY_TOKEN
    return " ".join(names[c - 1] if c > 0 else inverse_name(names[-c - 1]) for c in codes)


def format_word(w: Word | CyclicWord, names: Sequence[str] | None = None) -> str:
    """
    Render a word or cyclic word in text form.

    :param w: Word to render.
    :param names: Generator names, defaults to :func:`fga.helpers.default_generator_names`.
    :return: Text form.
    """
    if names is None:
        names = default_generator_names(w.rank)
    return format_codes(w.codes, names)


def _word_keys(codes: Sequence[LetterCode]) -> list[int]:
    return [letter_key(c) for c in codes]


def iter_cyclic_words(generators: Sequence[int], max_len: int) -> Iterator[tuple[LetterCode, ...]]:
    """
    Conjugacy classes of length at most ``max_len`` over a set of generators, one per class and its inverse.

    Classes come in order of length, then of the canonical form under the ``(index, sign)`` letter order.

    :param generators: Generator indices to use.
    :param max_len: Maximal cyclic length.
    :return: Iterator over canonical cyclic codes.
    """
    letters = sorted([g + 1 for g in generators] + [-(g + 1) for g in generators], key=letter_key)

    def extend(prefix: list[LetterCode], length: int) -> Iterator[tuple[LetterCode, ...]]:
        if len(prefix) == length:
            if prefix[-1] == -prefix[0] and length > 1:
                return
            canonical = canonical_rotation(prefix)
            if canonical != tuple(prefix):
                return
            if _word_keys(canonical_rotation(invert_codes(prefix))) < _word_keys(canonical):
                return
            yield canonical
            return
        for c in letters:
            if prefix and c == -prefix[-1]:
                continue
            prefix.append(c)
            yield from extend(prefix, length)
            prefix.pop()

    for length in range(1, max_len + 1):
        yield from extend([], length)
