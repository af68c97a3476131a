"""Exhaustive finite searches and construction inverses.

``enumerate_p2`` scans every pair (A, B) with A union B = [0, m-1] and
A intersect B = {r}: each element other than r goes to exactly one side,
the swap symmetry is broken canonically (0 in A; for r = 0 the smallest
free element is forced into A), and pairs with equal representation
profiles are reported.  Pruning uses prefix-profile divergence, which
can never discard a solution: once every element <= j has been placed,
no later placement can change either profile at or below j, so a
mismatch there is final.  Shards (assignments of the first few free
elements) make the scan parallel while keeping reports and scan counts
bit-identical for any worker count.

``decompose`` inverts one doubling step.  For a candidate translation m
the preimage is forced: x belongs to the base A exactly when x is in A
and x - m is not in the base B, and symmetrically, so membership resolves
downward in blocks of m.  The candidate is accepted only if replaying
the step reproduces the input pair exactly, m avoids the cross-difference
sets, both base sets are non-empty, and the base pair itself has equal
representation profiles.  Translations are scanned from the largest
possible m downward: iterated constructions apply their widest step
last, so the descending scan peels layers in reverse build order.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .errors import BoundExceeded, SetFileError
from .intset import IntSet
from .repcore import in_difference, rep_profile, rep_profile_naive

__all__ = [
    "P2_MAX_M",
    "SHARD_DEPTH",
    "SearchReport",
    "enumerate_p2",
    "decompose",
    "decompose_fully",
    "replay_chain",
]

P2_MAX_M = 31
SHARD_DEPTH = 6


@dataclass(frozen=True)
class SearchReport:
    """Canonical, deterministic result of one interval-cover scan."""

    interval_length: int
    r_filter: Optional[int]
    pruned: bool
    workers: int
    solutions: tuple[tuple[IntSet, IntSet, int], ...]
    configurations_scanned: int
    wall_time: float


def _shard_space(m: int, r_filter: Optional[int]) -> list[tuple[int, int, int]]:
    """(r, prefix_bits, prefix_len) descriptors covering the whole scan."""
    r_values = range(m) if r_filter is None else (r_filter,)
    nfree = m - 2
    depth = min(SHARD_DEPTH, nfree)
    return [(r, prefix, depth) for r in r_values for prefix in range(1 << depth)]


def _canonical_sort_key(solution: tuple[IntSet, IntSet, int]):
    a, b, r = solution
    return (tuple(a), tuple(b), r)


def _recheck_solution(m: int, a: IntSet, b: IntSet, r: int) -> None:
    # Belt-and-braces: every reported pair re-verified via the naive oracle.
    bound = 2 * (m - 1)
    if rep_profile_naive(a, bound) != rep_profile_naive(b, bound):
        raise RuntimeError(f"scan reported a non-solution for m={m}, r={r}: {a} {b}")
    if (a | b) != IntSet.interval(0, m - 1) or (a & b) != IntSet((r,)):
        raise RuntimeError(f"scan reported malformed cover for m={m}, r={r}: {a} {b}")


def _checkpoint_header(m: int, r_filter: Optional[int], prune: bool, depth: int) -> str:
    r_text = "all" if r_filter is None else str(r_filter)
    return f"# eqrep-p2 v1 m={m} r={r_text} prune={int(prune)} depth={depth}"


def _load_checkpoint(
    path, header: str
) -> Optional[dict[tuple[int, int], tuple[int, list[tuple[int, int]]]]]:
    """Completed shards from a checkpoint; None when there is no file yet."""
    done: dict[tuple[int, int], tuple[int, list[tuple[int, int]]]] = {}
    try:
        with open(path, "r", encoding="ascii") as fh:
            lines = fh.read().splitlines()
    except FileNotFoundError:
        return None
    if not lines:
        return None
    if lines[0].strip() != header:
        raise SetFileError(path, 1, f"checkpoint header mismatch: {lines[0].strip()!r}")
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            shard_id, leaves_text, sols_text = line.split(" ")
            r_text, prefix_text = shard_id.split(":")
            sols = []
            if sols_text != "-":
                for entry in sols_text.split(","):
                    mask_a, mask_b = entry.split(":")
                    sols.append((int(mask_a, 16), int(mask_b, 16)))
            done[(int(r_text), int(prefix_text))] = (int(leaves_text), sols)
        except ValueError:
            raise SetFileError(path, lineno, "malformed checkpoint line") from None
    return done


def _checkpoint_line(r: int, prefix: int, leaves: int, sols: list[tuple[int, int]]) -> str:
    sols_text = ",".join(f"{a:x}:{b:x}" for a, b in sols) if sols else "-"
    return f"{r}:{prefix} {leaves} {sols_text}"


def enumerate_p2(
    m: int,
    r_filter: Optional[int] = None,
    *,
    workers: int = 1,
    prune: bool = True,
    checkpoint=None,
) -> SearchReport:
    """Scan all interval covers of [0, m-1] with one shared element.

    Reports exactly the pairs with equal representation profiles, in
    canonical order.  ``prune=False`` is the brute-force oracle mode
    (identical solutions, every configuration visited).
    """
    if m < 2:
        raise ValueError("interval length m must be >= 2")
    if m > P2_MAX_M:
        raise BoundExceeded(f"interval length m={m} above supported maximum {P2_MAX_M}")
    if r_filter is not None and not 0 <= r_filter < m:
        raise ValueError("r_filter must lie in [0, m-1]")
    if workers < 1:
        raise ValueError("workers must be >= 1")

    start = time.perf_counter()
    shards = _shard_space(m, r_filter)
    depth = shards[0][2]
    header = _checkpoint_header(m, r_filter, prune, depth)
    completed: dict[tuple[int, int], tuple[int, list[tuple[int, int]]]] = {}
    checkpoint_fh = None
    if checkpoint is not None:
        loaded = _load_checkpoint(checkpoint, header)
        checkpoint_fh = open(checkpoint, "a", encoding="ascii")
        if loaded is None:
            checkpoint_fh.write(header + "\n")
            checkpoint_fh.flush()
        else:
            completed = loaded

    pending = [s for s in shards if (s[0], s[1]) not in completed]
    results: dict[tuple[int, int], tuple[int, list[tuple[int, int]]]] = dict(completed)

    def run_shard(shard):
        r, prefix, plen = shard
        return _kernels.p2_scan_shard(m, r, prefix, plen, prune)

    try:
        if workers == 1 or len(pending) <= 1:
            for shard in pending:
                leaves, sols = run_shard(shard)
                results[(shard[0], shard[1])] = (leaves, sols)
                if checkpoint_fh is not None:
                    checkpoint_fh.write(_checkpoint_line(shard[0], shard[1], leaves, sols) + "\n")
                    checkpoint_fh.flush()
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = {shard: pool.submit(run_shard, shard) for shard in pending}
                for shard, future in futures.items():
                    leaves, sols = future.result()
                    results[(shard[0], shard[1])] = (leaves, sols)
                    if checkpoint_fh is not None:
                        checkpoint_fh.write(
                            _checkpoint_line(shard[0], shard[1], leaves, sols) + "\n"
                        )
                        checkpoint_fh.flush()
    finally:
        if checkpoint_fh is not None:
            checkpoint_fh.close()

    scanned = 0
    raw_solutions: list[tuple[IntSet, IntSet, int]] = []
    for r, prefix, _ in shards:
        leaves, sols = results[(r, prefix)]
        scanned += leaves
        for mask_a, mask_b in sols:
            raw_solutions.append((IntSet.from_mask(mask_a), IntSet.from_mask(mask_b), r))

    for a, b, r in raw_solutions:
        _recheck_solution(m, a, b, r)
    raw_solutions.sort(key=_canonical_sort_key)

    return SearchReport(
        interval_length=m,
        r_filter=r_filter,
        pruned=prune,
        workers=workers,
        solutions=tuple(raw_solutions),
        configurations_scanned=scanned,
        wall_time=time.perf_counter() - start,
    )


def _forced_split(a: IntSet, b: IntSet, m: int) -> tuple[IntSet, IntSet]:
    """The unique candidate preimage of one step with translation m.

    Resolves membership downward in blocks of m bits: an element x stays
    in the base A iff x is in A and x - m did not resolve into the base
    B (symmetrically for B).
    """
    block_mask = (1 << m) - 1
    top = max(a.mask.bit_length(), b.mask.bit_length())
    blk_a = a.mask & block_mask
    blk_b = b.mask & block_mask
    base_a = blk_a
    base_b = blk_b
    shift = m
    while shift < top:
        next_a = (a.mask >> shift) & block_mask & ~blk_b
        next_b = (b.mask >> shift) & block_mask & ~blk_a
        base_a |= next_a << shift
        base_b |= next_b << shift
        blk_a, blk_b = next_a, next_b
        shift += m
    return IntSet.from_mask(base_a), IntSet.from_mask(base_b)


def decompose(a: IntSet, b: IntSet) -> Optional[tuple[IntSet, IntSet, int]]:
    """Invert one doubling step, or None when the pair is irreducible.

    Scans translations from max(A union B) down to 1 and accepts the
    first m whose forced preimage (A0, B0) satisfies all of:
    A = A0 union (m + B0) and B = B0 union (m + A0) exactly, m outside
    (A0 - B0) union (B0 - A0), both base sets non-empty, and the base
    pair has equal representation profiles (the step hypothesis).
    """
    if not a or not b:
        return None
    top = max(a.max(), b.max())
    for m in range(top, 0, -1):
        base_a, base_b = _forced_split(a, b, m)
        if not base_a or not base_b:
            continue
        if a.mask != base_a.mask | (base_b.mask << m):
            continue
        if b.mask != base_b.mask | (base_a.mask << m):
            continue
        if in_difference(base_a, base_b, m):
            continue
        bound = 2 * max(base_a.max(), base_b.max())
        if rep_profile(base_a, bound) != rep_profile(base_b, bound):
            continue
        return base_a, base_b, m
    return None


def decompose_fully(a: IntSet, b: IntSet) -> tuple[tuple[int, ...], tuple[IntSet, IntSet]]:
    """Peel doubling steps to a fixed point.

    Returns the chain of translations in peel order (outermost first)
    and the irreducible core pair; replaying the chain from the core
    reconstructs the input exactly (see :func:`replay_chain`).
    """
    chain: list[int] = []
    while True:
        step = decompose(a, b)
        if step is None:
            return tuple(chain), (a, b)
        a, b, m = step
        chain.append(m)


def replay_chain(core: tuple[IntSet, IntSet], chain) -> tuple[IntSet, IntSet]:
    """Apply a peel-order chain to a core pair (innermost step first)."""
    from .construct import lemma_step

    a, b = core
    for m in reversed(tuple(chain)):
        a, b, _ = lemma_step(a, b, m)
    return a, b
