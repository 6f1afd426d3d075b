"""Batched single-letter image kernels over packed vertex bitsets.

A batch of vertex sets is a ``uint64`` array of shape ``(k, nw)``; bit ``v`` of
row ``i`` (word ``v // 64``, bit ``v % 64``) marks vertex ``v``.  The successor
table ``succ[a, v]`` is the packed set of ``a``-successors of ``v``.  The kernel
returns ``out[i, a] = OR over v in row i of succ[a, v]``, the relative range of
every row under every letter.

Two interchangeable implementations exist.  The numba one is compiled lazily
on the first large batch; set ``LABELSPACE_DISABLE_NUMBA=1`` to force the
pure-numpy path everywhere.  Batches smaller than ``NUMBA_MIN_ROWS`` always take
the numpy path so small analyses never pay JIT compilation.
"""

from __future__ import annotations

import os

import numpy as np

NUMBA_MIN_ROWS = 2048
_CHUNK = 4096
_SHIFTS = np.arange(64, dtype=np.uint64)

_numba_kernel = None


def numba_enabled() -> bool:
    return os.environ.get("LABELSPACE_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes")


def _images_loop(succ, masks, out):
    k, nw = masks.shape
    n_labels = succ.shape[0]
    n = succ.shape[1]
    one = np.uint64(1)
    for i in range(k):
        for wi in range(nw):
            m = masks[i, wi]
            b = 0
            while m != 0:
                if m & one:
                    v = wi * 64 + b
                    if v < n:
                        for a in range(n_labels):
                            for j in range(nw):
                                out[i, a, j] |= succ[a, v, j]
                m = m >> one
                b += 1
    return out


def _get_numba_kernel():
    global _numba_kernel
    if _numba_kernel is None:
        try:
            from numba import njit
        except ImportError:  # pragma: no cover - depends on environment
            _numba_kernel = False
        else:
            _numba_kernel = njit(cache=True, nogil=True)(_images_loop)
    return _numba_kernel


def unpack_bits(masks: np.ndarray, n: int) -> np.ndarray:
    """``(k, nw)`` packed rows -> ``(k, n)`` boolean membership matrix."""
    k, nw = masks.shape
    bits = (masks[:, :, None] >> _SHIFTS) & np.uint64(1)
    return bits.reshape(k, nw * 64)[:, :n].astype(bool)


def images_numpy(succ: np.ndarray, masks: np.ndarray) -> np.ndarray:
    n_labels, n, nw = succ.shape
    k = masks.shape[0]
    out = np.zeros((k, n_labels, nw), dtype=np.uint64)
    zero = np.uint64(0)
    for lo in range(0, k, _CHUNK):
        bits = unpack_bits(masks[lo:lo + _CHUNK], n)
        for a in range(n_labels):
            picked = np.where(bits[:, :, None], succ[a][None, :, :], zero)
            out[lo:lo + _CHUNK, a, :] = np.bitwise_or.reduce(picked, axis=1)
    return out


def images_numba(succ: np.ndarray, masks: np.ndarray) -> np.ndarray:
    kernel = _get_numba_kernel()
    if not kernel:
        return images_numpy(succ, masks)
    out = np.zeros((masks.shape[0], succ.shape[0], succ.shape[2]), dtype=np.uint64)
    return kernel(np.ascontiguousarray(succ), np.ascontiguousarray(masks), out)


def images(succ: np.ndarray, masks: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Relative range of every row of ``masks`` under every letter.

    ``backend`` is ``"numba"``, ``"numpy"`` or ``None`` for automatic choice.
    """
    if backend is None:
        use_numba = numba_enabled() and masks.shape[0] >= NUMBA_MIN_ROWS
        backend = "numba" if use_numba else "numpy"
    if backend == "numba":
        return images_numba(succ, masks)
    if backend == "numpy":
        return images_numpy(succ, masks)
    raise ValueError(f"unknown backend {backend!r}")


def n_words(n: int) -> int:
    return max(1, (n + 63) // 64)


def pack(ints, nw: int) -> np.ndarray:
    ints = list(ints)
    if nw == 1:
        return np.array(ints, dtype=np.uint64).reshape(len(ints), 1)
    out = np.zeros((len(ints), nw), dtype=np.uint64)
    low = (1 << 64) - 1
    for i, x in enumerate(ints):
        for j in range(nw):
            out[i, j] = (x >> (64 * j)) & low
    return out


def unpack(arr: np.ndarray) -> list[int]:
    """``(k, nw)`` packed rows back to Python int bitmasks."""
    if arr.shape[-1] == 1:
        return arr[..., 0].reshape(-1).tolist()
    flat = arr.reshape(-1, arr.shape[-1])
    return [sum(int(x) << (64 * j) for j, x in enumerate(row)) for row in flat]
