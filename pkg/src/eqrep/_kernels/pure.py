"""Pure-Python kernel backend.

The word-level self-convolution rides on CPython's big-integer multiply:
the set's indicator vector is spread into 32-bit slots of one huge
integer, and squaring that integer convolves the indicator with itself.
Slots never carry into each other because every pair count is far below
2**32 at the bounds this backend accepts.

The search kernel is a depth-first scan over side assignments with an
incremental pair-count state; it mirrors the compiled kernel exactly
(same visit order, same pruning, same leaf accounting).
"""

from __future__ import annotations

import numpy as np

__all__ = ["ordered_counts", "cross_counts", "p2_scan_shard"]


def _spread(mask: int, length: int) -> int:
    """Indicator bits of ``mask`` placed into consecutive 32-bit slots."""
    raw = mask.to_bytes((length + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:length]
    return int.from_bytes(bits.astype("<u4").tobytes(), "little")


def _coefficients(big: int, nslots: int) -> np.ndarray:
    """First ``nslots`` 32-bit slot values of ``big`` as int64."""
    size = max((big.bit_length() + 7) // 8, 4 * nslots)
    size += (-size) % 4
    raw = big.to_bytes(size, "little")
    return np.frombuffer(raw, dtype="<u4")[:nslots].astype(np.int64)


def ordered_counts(mask: int, bound: int) -> np.ndarray:
    """counts[n] = #{(x, y) : x, y in set, x + y = n} for 0 <= n <= bound."""
    mask &= (1 << (bound + 1)) - 1
    if mask == 0:
        return np.zeros(bound + 1, dtype=np.int64)
    spread = _spread(mask, mask.bit_length())
    return _coefficients(spread * spread, bound + 1)


def cross_counts(mask_a: int, mask_b: int, bound: int) -> np.ndarray:
    """counts[n] = #{(x, y) : x in a, y in b, x + y = n} for 0 <= n <= bound."""
    mask_a &= (1 << (bound + 1)) - 1
    mask_b &= (1 << (bound + 1)) - 1
    if mask_a == 0 or mask_b == 0:
        return np.zeros(bound + 1, dtype=np.int64)
    spread_a = _spread(mask_a, mask_a.bit_length())
    spread_b = _spread(mask_b, mask_b.bit_length())
    return _coefficients(spread_a * spread_b, bound + 1)


def _scan_free_elements(m: int, r: int) -> list[int]:
    if r == 0:
        return list(range(2, m))
    return [x for x in range(1, m) if x != r]


def p2_scan_shard(m, r, prefix_bits, prefix_len, prune):
    """Scan one shard of the interval-cover search.

    The shard is the subtree below the assignment of the first
    ``prefix_len`` free elements given by the bits of ``prefix_bits``
    (bit i clear: element to the first set; set: to the second).
    Returns ``(leaves, solutions)`` where leaves counts complete
    assignments reached and solutions is a list of mask pairs in visit
    order.
    """
    size = 2 * m - 1
    c_a = [0] * size
    c_b = [0] * size
    if r == 0:
        mask_a, mask_b = 0b11, 0b01
        c_a[1] = 1
    else:
        mask_a, mask_b = (1 << r) | 1, 1 << r
        c_a[r] = 1
    free = _scan_free_elements(m, r)
    nfree = len(free)
    sols: list[tuple[int, int]] = []
    leaves = 0

    def add(c, mine, x):
        while mine:
            low = mine & -mine
            c[x + (low.bit_length() - 1)] += 1
            mine ^= low

    def sub(c, mine, x):
        while mine:
            low = mine & -mine
            c[x + (low.bit_length() - 1)] -= 1
            mine ^= low

    def window_ok(lo, hi):
        for n in range(lo, hi + 1):
            if c_a[n] != c_b[n]:
                return False
        return True

    prev = 0
    for i in range(prefix_len):
        x = free[i]
        if (prefix_bits >> i) & 1:
            add(c_b, mask_b, x)
            mask_b |= 1 << x
        else:
            add(c_a, mask_a, x)
            mask_a |= 1 << x
        if prune and not window_ok(prev + 1, x):
            return 0, []
        prev = x

    def dfs(idx, mask_a, mask_b, prev):
        nonlocal leaves
        if idx == nfree:
            leaves += 1
            lo = prev + 1 if prune else 0
            if window_ok(lo, size - 1):
                sols.append((mask_a, mask_b))
            return
        x = free[idx]
        add(c_a, mask_a, x)
        if not prune or window_ok(prev + 1, x):
            dfs(idx + 1, mask_a | (1 << x), mask_b, x)
        sub(c_a, mask_a, x)
        add(c_b, mask_b, x)
        if not prune or window_ok(prev + 1, x):
            dfs(idx + 1, mask_a, mask_b | (1 << x), x)
        sub(c_b, mask_b, x)

    dfs(prefix_len, mask_a, mask_b, prev)
    return leaves, sols
