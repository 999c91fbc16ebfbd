"""Base-B expansions, digit words, and block-occurrence counting.

A :class:`Word` is a finite digit sequence over ``{0, ..., base-1}`` with
leading zeros significant (``0010`` is a different word from ``10``).  The
integer 0 has the *empty* expansion in every base.

The occurrence count implemented by :func:`count_block` follows the counting
convention used throughout this package:

* words that start with a nonzero digit, and words consisting entirely of
  zeros, are counted as plain (possibly overlapping) substrings of the
  canonical expansion;
* words that start with 0 but contain a nonzero digit are counted in the
  expansion left-padded with zeros.  Padding with exactly ``len(w) - 1``
  zeros is equivalent to padding with arbitrarily many: an occurrence of
  such a word must cover a nonzero digit of the expansion, so it cannot
  begin more than ``len(w) - 1`` positions before the expansion starts.
"""

from __future__ import annotations

from dataclasses import dataclass

from blockprod import _kernels

__all__ = [
    "Word",
    "WordClass",
    "ALL_ZEROS",
    "STARTS_NONZERO",
    "STARTS_ZERO_MIXED",
    "to_digits",
    "word_value",
    "classify",
    "count_block",
    "all_words",
]

_DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"
_CHAR_VALUES = {c: i for i, c in enumerate(_DIGIT_CHARS)}
_MAX_RENDER_BASE = len(_DIGIT_CHARS)

ALL_ZEROS = "all_zeros"
STARTS_NONZERO = "starts_nonzero"
STARTS_ZERO_MIXED = "starts_zero_mixed"


@dataclass(frozen=True)
class Word:
    """An immutable digit word; digits are most-significant first."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.base, int) or self.base < 2:
            raise ValueError(f"base must be an integer >= 2, got {self.base!r}")
        digits = tuple(self.digits)
        for d in digits:
            if not isinstance(d, int) or not 0 <= d < self.base:
                raise ValueError(f"digit {d!r} out of range for base {self.base}")
        object.__setattr__(self, "digits", digits)

    @classmethod
    def parse(cls, text: str, base: int) -> "Word":
        """Parse a digit string (0-9 then a-z, case-insensitive) into a Word."""
        if base < 2 or base > _MAX_RENDER_BASE:
            raise ValueError(f"parsable bases are 2..{_MAX_RENDER_BASE}, got {base}")
        digits = []
        for ch in text:
            v = _CHAR_VALUES.get(ch.lower())
            if v is None or v >= base:
                raise ValueError(f"invalid base-{base} digit {ch!r} in {text!r}")
            digits.append(v)
        return cls(base, tuple(digits))

    def render(self) -> str:
        """Plain digit-string form (lowercase letters for digits 10-35)."""
        if self.base > _MAX_RENDER_BASE:
            raise ValueError(f"cannot render digits for base {self.base} > {_MAX_RENDER_BASE}")
        return "".join(_DIGIT_CHARS[d] for d in self.digits)

    def __str__(self) -> str:
        return self.render()

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def is_empty(self) -> bool:
        return not self.digits

    def value(self) -> int:
        return word_value(self)


@dataclass(frozen=True)
class WordClass:
    """Classification of a nonempty word; ``j`` is set only for all-zeros words."""

    kind: str
    j: int | None = None

    def __post_init__(self):
        if self.kind not in (ALL_ZEROS, STARTS_NONZERO, STARTS_ZERO_MIXED):
            raise ValueError(f"unknown word class {self.kind!r}")
        if (self.kind == ALL_ZEROS) != (self.j is not None):
            raise ValueError("j must be given exactly for all-zeros words")
        if self.j is not None and self.j < 1:
            raise ValueError("j must be >= 1")


def to_digits(n: int, base: int) -> Word:
    """Canonical base-``base`` expansion of ``n >= 0``; 0 maps to the empty word."""
    if not isinstance(base, int) or base < 2:
        raise ValueError(f"base must be an integer >= 2, got {base!r}")
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    digits = []
    while n:
        n, r = divmod(n, base)
        digits.append(r)
    digits.reverse()
    return Word(base, tuple(digits))


def word_value(w: Word) -> int:
    """Integer value of ``w`` read as base-``w.base`` digits (leading zeros inert)."""
    v = 0
    for d in w.digits:
        v = v * w.base + d
    return v


def classify(w: Word) -> WordClass:
    """Total, mutually exclusive classification of a nonempty word."""
    if w.is_empty:
        raise ValueError("cannot classify the empty word")
    if all(d == 0 for d in w.digits):
        return WordClass(ALL_ZEROS, len(w.digits))
    if w.digits[0] != 0:
        return WordClass(STARTS_NONZERO)
    return WordClass(STARTS_ZERO_MIXED)


def padding_for(w: Word) -> int:
    """Zeros prepended to expansions when counting occurrences of ``w``."""
    return len(w.digits) - 1 if classify(w).kind == STARTS_ZERO_MIXED else 0


def count_block(w: Word, n: int) -> int:
    """Number of possibly overlapping occurrences of ``w`` in the expansion of ``n``.

    Zero-leading mixed words are counted in the zero-padded expansion (see
    module docstring); the count for ``n = 0`` is 0 for every word.
    """
    if w.is_empty:
        raise ValueError("count_block needs a nonempty word")
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    return _kernels.count_word(n, w.base, w.digits, padding_for(w))


def all_words(base: int, max_len: int) -> list[Word]:
    """All nonempty words over ``base`` of length <= ``max_len``, lexicographic.

    Ordering is plain string lexicographic on the rendered form, so e.g.
    ``0 < 00 < 01 < 1 < 10`` for base 2.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    words = []
    stack = [(d,) for d in range(base - 1, -1, -1)]
    while stack:
        digits = stack.pop()
        words.append(Word(base, digits))
        if len(digits) < max_len:
            stack.extend(digits + (d,) for d in range(base - 1, -1, -1))
    return words
