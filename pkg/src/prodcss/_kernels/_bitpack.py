"""Row-major bit packing between uint8 {0,1} arrays and uint64 words.

Bit j of a row lives in word j >> 6 at bit position j & 63 (little-endian
words on a little-endian platform).
"""

from __future__ import annotations

import numpy as np


def words_per_row(n_cols: int) -> int:
    return (n_cols + 63) // 64


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a (m, n) uint8 {0,1} array into (m, ceil(n/64)) uint64 words."""
    bits = np.ascontiguousarray(bits, dtype=np.uint8)
    m, n = bits.shape
    nw = words_per_row(n)
    buf = np.zeros((m, nw * 8), dtype=np.uint8)
    if n:
        buf[:, : (n + 7) // 8] = np.packbits(bits, axis=1, bitorder="little")
    return buf.view(np.uint64)


def unpack_rows(words: np.ndarray, n_cols: int) -> np.ndarray:
    """Unpack (m, W) uint64 words back into a (m, n_cols) uint8 array."""
    words = np.ascontiguousarray(words, dtype=np.uint64)
    m = words.shape[0]
    if n_cols == 0:
        return np.zeros((m, 0), dtype=np.uint8)
    flat = np.unpackbits(words.view(np.uint8), axis=1, bitorder="little")
    return np.ascontiguousarray(flat[:, :n_cols])


def pack_vector(bits: np.ndarray) -> np.ndarray:
    """Pack a length-n uint8 {0,1} vector into uint64 words."""
    return pack_rows(np.asarray(bits, dtype=np.uint8).reshape(1, -1))[0]
