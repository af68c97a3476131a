"""Representation-function arithmetic over dense integer sets.

For a set S of non-negative integers, the representation function counts
unordered pairs of distinct elements by their sum:

    rep_S(n) = #{(x, y) : x, y in S, x + y = n, x < y}

The fast path computes the ordered pair count (repeats allowed) by
self-convolution of the indicator vector and removes the diagonal via

    2 * rep_S(n) + [n even and n/2 in S] = ordered_S(n).

Bounds up to :data:`WORD_KERNEL_MAX_BOUND` use the word-level kernel
(compiled or pure, whichever backend is active); larger bounds switch to
the transform-based convolution.  A deliberately naive pair-enumeration
oracle (:func:`rep_profile_naive`) exists solely so tests can check the
fast path against an independent computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .intset import IntSet

__all__ = [
    "WORD_KERNEL_MAX_BOUND",
    "RepProfile",
    "rep_profile",
    "rep_profile_naive",
    "ordered_pair_counts",
    "cross_pair_counts",
    "in_difference",
    "in_self_difference",
    "difference_witness",
    "translate",
    "set_union",
    "set_intersection",
    "set_difference",
]

# Crossover from the word-level kernel to the transform-based one.
WORD_KERNEL_MAX_BOUND = 1 << 20


@dataclass(frozen=True)
class RepProfile:
    """Counts of the representation function on 0..bound."""

    bound: int
    counts: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("bound must be non-negative")
        if self.counts.shape != (self.bound + 1,):
            raise ValueError("counts length must be bound + 1")
        self.counts.flags.writeable = False

    def __getitem__(self, n: int) -> int:
        return int(self.counts[n])

    def __len__(self) -> int:
        return self.bound + 1

    def __eq__(self, other) -> bool:
        if isinstance(other, RepProfile):
            return self.bound == other.bound and bool(np.array_equal(self.counts, other.counts))
        return NotImplemented

    def first_divergence(self, other: "RepProfile") -> Optional[int]:
        """Least n where the two profiles differ, or None when equal.

        Comparison runs over the shared bound range.
        """
        shared = min(self.bound, other.bound) + 1
        diff = np.nonzero(self.counts[:shared] != other.counts[:shared])[0]
        return int(diff[0]) if diff.size else None

    def total(self) -> int:
        return int(self.counts.sum())


def ordered_pair_counts(a: IntSet, bound: int) -> np.ndarray:
    """counts[n] = #{(x, y) in a x a : x + y = n} for 0 <= n <= bound."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if bound <= WORD_KERNEL_MAX_BOUND:
        return _kernels.ordered_counts(a.mask, bound)
    return _kernels.fft_ordered_counts(a.mask, bound)


def cross_pair_counts(a: IntSet, b: IntSet, bound: int) -> np.ndarray:
    """counts[n] = #{(x, y) in a x b : x + y = n} for 0 <= n <= bound."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if bound <= WORD_KERNEL_MAX_BOUND:
        return _kernels.cross_counts(a.mask, b.mask, bound)
    return _kernels.fft_cross_counts(a.mask, b.mask, bound)


def _diagonal_indicator(a: IntSet, bound: int) -> np.ndarray:
    # indicator of {n <= bound : n even, n/2 in a}
    diag = np.zeros(bound + 1, dtype=np.int64)
    halves = a.truncate(bound // 2).to_array()
    diag[2 * halves] = 1
    return diag


def rep_profile(a: IntSet, bound: int) -> RepProfile:
    """Representation profile of ``a`` on 0..bound (fast path)."""
    ordered = ordered_pair_counts(a, bound)
    counts = (ordered - _diagonal_indicator(a, bound)) >> 1
    return RepProfile(bound, counts)


def rep_profile_naive(a: IntSet, bound: int) -> RepProfile:
    """Pair-enumeration oracle: same contract as :func:`rep_profile`.

    Enumerates every unordered pair of distinct elements and histograms
    the sums.  Kept independent of the convolution path on purpose.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    members = a.truncate(bound).to_array()
    counts = np.zeros(bound + 1, dtype=np.int64)
    if members.size >= 2:
        ii, jj = np.triu_indices(members.size, k=1)
        sums = members[ii] + members[jj]
        sums = sums[sums <= bound]
        counts += np.bincount(sums, minlength=bound + 1).astype(np.int64)
    return RepProfile(bound, counts)


def in_difference(a: IntSet, b: IntSet, m: int) -> bool:
    """True iff some pair (x, y) in a x b has |x - y| = m."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return (a.mask >> m) & b.mask != 0 or (b.mask >> m) & a.mask != 0


def difference_witness(a: IntSet, b: IntSet, m: int) -> Optional[tuple[int, int]]:
    """A pair (x, y), x in a, y in b, |x - y| = m; None when no such pair."""
    if m < 0:
        raise ValueError("m must be non-negative")
    hits = (a.mask >> m) & b.mask
    if hits:
        y = (hits & -hits).bit_length() - 1
        return (y + m, y)
    hits = (b.mask >> m) & a.mask
    if hits:
        x = (hits & -hits).bit_length() - 1
        return (x, x + m)
    return None


def in_self_difference(a: IntSet, m: int) -> bool:
    """True iff some pair of elements of ``a`` differs by exactly m."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return (a.mask >> m) & a.mask != 0


def translate(a: IntSet, t: int) -> IntSet:
    return a.translate(t)


def set_union(a: IntSet, b: IntSet) -> IntSet:
    return a | b


def set_intersection(a: IntSet, b: IntSet) -> IntSet:
    return a & b


def set_difference(a: IntSet, b: IntSet) -> IntSet:
    return a - b
