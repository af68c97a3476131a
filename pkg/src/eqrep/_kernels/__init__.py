"""Kernel dispatch: compiled extension when importable, pure Python otherwise.

Set ``EQREP_KERNEL=python`` (or ``c``) in the environment to force a
backend; :func:`use_backend` switches temporarily (tests, benchmarks).

The transform-based convolution lives here rather than in a backend: it
is the same numpy code either way and only engages above the word-level
crossover bound (see :mod:`eqrep.repcore`).
"""

from __future__ import annotations

import os
from contextlib import contextmanager

import numpy as np

from . import pure

try:
    from .. import _ckernels as _compiled
except ImportError:
    _compiled = None

__all__ = [
    "available_backends",
    "current_backend",
    "set_backend",
    "use_backend",
    "ordered_counts",
    "cross_counts",
    "p2_scan_shard",
    "fft_ordered_counts",
    "fft_cross_counts",
]


def available_backends() -> tuple[str, ...]:
    return ("c", "python") if _compiled is not None else ("python",)


def _default_backend() -> str:
    forced = os.environ.get("EQREP_KERNEL", "").strip().lower()
    if forced in ("python", "pure"):
        return "python"
    if forced == "c":
        if _compiled is None:
            raise ImportError("EQREP_KERNEL=c but the compiled kernels are not installed")
        return "c"
    return "c" if _compiled is not None else "python"


_backend = _default_backend()


def current_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name == "auto":
        _backend = _default_backend()
        return
    if name not in ("c", "python"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "c" and _compiled is None:
        raise ValueError("compiled kernels are not installed")
    _backend = name


@contextmanager
def use_backend(name: str):
    previous = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def _words(mask: int) -> np.ndarray:
    nwords = max(1, (mask.bit_length() + 63) // 64)
    return np.frombuffer(mask.to_bytes(nwords * 8, "little"), dtype="<u8")


def ordered_counts(mask: int, bound: int) -> np.ndarray:
    """Word-level self-convolution of the set's indicator vector."""
    if _backend == "python":
        return pure.ordered_counts(mask, bound)
    mask &= (1 << (bound + 1)) - 1
    if mask == 0:
        return np.zeros(bound + 1, dtype=np.int64)
    out = np.zeros(bound + 1, dtype=np.int64)
    _compiled.ordered_counts(_words(mask), mask.bit_length(), bound, out)
    return out


def cross_counts(mask_a: int, mask_b: int, bound: int) -> np.ndarray:
    if _backend == "python":
        return pure.cross_counts(mask_a, mask_b, bound)
    mask_a &= (1 << (bound + 1)) - 1
    mask_b &= (1 << (bound + 1)) - 1
    if mask_a == 0 or mask_b == 0:
        return np.zeros(bound + 1, dtype=np.int64)
    out = np.zeros(bound + 1, dtype=np.int64)
    _compiled.cross_counts(
        _words(mask_a), mask_a.bit_length(), _words(mask_b), mask_b.bit_length(), bound, out
    )
    return out


def p2_scan_shard(m, r, prefix_bits, prefix_len, prune):
    if _backend == "python":
        return pure.p2_scan_shard(m, r, prefix_bits, prefix_len, prune)
    return _compiled.p2_scan_shard(m, r, prefix_bits, prefix_len, prune)


def _indicator_f64(mask: int) -> np.ndarray:
    raw = mask.to_bytes((mask.bit_length() + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return bits[: mask.bit_length()].astype(np.float64)


def _fft_size(n: int) -> int:
    size = 1
    while size < n:
        size <<= 1
    return size


def _round_counts(conv: np.ndarray, bound: int) -> np.ndarray:
    out = np.zeros(bound + 1, dtype=np.int64)
    take = min(bound + 1, conv.shape[0])
    out[:take] = np.rint(conv[:take]).astype(np.int64)
    return out


def fft_ordered_counts(mask: int, bound: int) -> np.ndarray:
    """Transform-based self-convolution.

    Exact at the magnitudes this package handles: inputs are 0/1 vectors
    and every output coefficient stays many orders of magnitude below the
    float64 rounding threshold.
    """
    mask &= (1 << (bound + 1)) - 1
    if mask == 0:
        return np.zeros(bound + 1, dtype=np.int64)
    ind = _indicator_f64(mask)
    size = _fft_size(2 * ind.shape[0] - 1)
    spectrum = np.fft.rfft(ind, size)
    return _round_counts(np.fft.irfft(spectrum * spectrum, size), bound)


def fft_cross_counts(mask_a: int, mask_b: int, bound: int) -> np.ndarray:
    mask_a &= (1 << (bound + 1)) - 1
    mask_b &= (1 << (bound + 1)) - 1
    if mask_a == 0 or mask_b == 0:
        return np.zeros(bound + 1, dtype=np.int64)
    ind_a = _indicator_f64(mask_a)
    ind_b = _indicator_f64(mask_b)
    size = _fft_size(ind_a.shape[0] + ind_b.shape[0] - 1)
    conv = np.fft.irfft(np.fft.rfft(ind_a, size) * np.fft.rfft(ind_b, size), size)
    return _round_counts(conv, bound)
