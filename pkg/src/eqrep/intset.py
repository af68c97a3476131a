"""Dense bit-vector sets of non-negative integers.

An :class:`IntSet` stores a finite subset of the non-negative integers as
a single arbitrary-precision integer mask (bit ``i`` set iff ``i`` is a
member).  All the set algebra used by the constructions in this package
(union, intersection, difference, translation, shifted-overlap tests)
then becomes word-parallel integer arithmetic.

Instances are immutable: every operation returns a new set.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .errors import SetFileError

__all__ = ["IntSet", "read_set_file", "write_set_file", "parse_set_text", "format_set_text"]


class IntSet:
    """Immutable set of non-negative integers with bit-vector semantics."""

    __slots__ = ("_mask",)

    def __init__(self, elements: Iterable[int] = ()):
        mask = 0
        for e in elements:
            e = int(e)
            if e < 0:
                raise ValueError(f"negative element {e} not allowed")
            mask |= 1 << e
        object.__setattr__(self, "_mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("IntSet is immutable")

    @classmethod
    def from_mask(cls, mask: int) -> "IntSet":
        if mask < 0:
            raise ValueError("mask must be non-negative")
        out = cls.__new__(cls)
        object.__setattr__(out, "_mask", mask)
        return out

    @classmethod
    def interval(cls, lo: int, hi: int) -> "IntSet":
        """The set {lo, lo+1, ..., hi}; empty when hi < lo."""
        if lo < 0:
            raise ValueError("interval start must be non-negative")
        if hi < lo:
            return cls.from_mask(0)
        return cls.from_mask(((1 << (hi - lo + 1)) - 1) << lo)

    @property
    def mask(self) -> int:
        return self._mask

    def __contains__(self, e: int) -> bool:
        return e >= 0 and (self._mask >> e) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        mask = self._mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __len__(self) -> int:
        return self._mask.bit_count()

    def __bool__(self) -> bool:
        return self._mask != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, IntSet):
            return self._mask == other._mask
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("IntSet", self._mask))

    def __repr__(self) -> str:
        if len(self) <= 16:
            return f"IntSet({sorted(self)})"
        head = ", ".join(str(e) for e in list(self)[:8])
        return f"IntSet([{head}, ...] <{len(self)} elements, max {self.max()}>)"

    def __or__(self, other: "IntSet") -> "IntSet":
        return IntSet.from_mask(self._mask | other._mask)

    def __and__(self, other: "IntSet") -> "IntSet":
        return IntSet.from_mask(self._mask & other._mask)

    def __sub__(self, other: "IntSet") -> "IntSet":
        return IntSet.from_mask(self._mask & ~other._mask)

    def isdisjoint(self, other: "IntSet") -> bool:
        return self._mask & other._mask == 0

    def issubset(self, other: "IntSet") -> bool:
        return self._mask & ~other._mask == 0

    def min(self) -> int:
        if not self._mask:
            raise ValueError("min of empty IntSet")
        return (self._mask & -self._mask).bit_length() - 1

    def max(self) -> int:
        if not self._mask:
            raise ValueError("max of empty IntSet")
        return self._mask.bit_length() - 1

    def translate(self, t: int) -> "IntSet":
        """The set {t + e : e in self}; t must be non-negative."""
        if t < 0:
            raise ValueError("translation must be non-negative")
        return IntSet.from_mask(self._mask << t)

    def truncate(self, bound: int) -> "IntSet":
        """Members that are <= bound."""
        if bound < 0:
            return IntSet.from_mask(0)
        return IntSet.from_mask(self._mask & ((1 << (bound + 1)) - 1))

    def to_list(self) -> list[int]:
        return list(self)

    def to_array(self) -> np.ndarray:
        """Members as an ascending int64 array (bulk-friendly)."""
        if not self._mask:
            return np.zeros(0, dtype=np.int64)
        nbytes = (self._mask.bit_length() + 7) // 8
        raw = self._mask.to_bytes(nbytes, "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return np.nonzero(bits)[0].astype(np.int64)


def parse_set_text(text: str, path: str = "<string>") -> IntSet:
    """Parse the shared set text format.

    One non-negative decimal integer per line, strictly ascending.  Lines
    starting with ``#`` are ignored; blank lines are tolerated on input
    (but never produced on output); the trailing newline is optional.
    """
    mask = 0
    last = -1
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            value = int(stripped)
        except ValueError:
            raise SetFileError(path, lineno, f"not a decimal integer: {stripped!r}") from None
        if value < 0:
            raise SetFileError(path, lineno, f"negative element {value}")
        if value <= last:
            raise SetFileError(path, lineno, f"element {value} not strictly ascending (previous {last})")
        last = value
        mask |= 1 << value
    return IntSet.from_mask(mask)


def format_set_text(s: IntSet) -> str:
    return "".join(f"{e}\n" for e in s)


def read_set_file(path) -> IntSet:
    with open(path, "r", encoding="ascii") as fh:
        return parse_set_text(fh.read(), path=str(path))


def write_set_file(path, s: IntSet) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_set_text(s))
