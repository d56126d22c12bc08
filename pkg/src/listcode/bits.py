"""Bit-vector helpers shared across the coding modules.

Bit blocks are plain 1-D numpy arrays of dtype uint8 with values in {0, 1};
bit 0 is the first bit in transmission order. Packed representations put the
first bit in the most significant position so that unsigned integer order
equals lexicographic order on the bit string.
"""

from __future__ import annotations

import numpy as np


def as_bits(values, length: int | None = None) -> np.ndarray:
    """Coerce a sequence of 0/1 values to a uint8 bit array."""
    bits = np.asarray(values, dtype=np.uint8)
    if bits.ndim != 1:
        raise ValueError("bit block must be one-dimensional")
    if np.any(bits > 1):
        raise ValueError("bit block entries must be 0 or 1")
    if length is not None and bits.size != length:
        raise ValueError(f"expected {length} bits, got {bits.size}")
    return bits


def bits_from_int(value: int, length: int) -> np.ndarray:
    """Unpack `value` into `length` bits, most significant bit first."""
    if value < 0 or value >> length:
        raise ValueError(f"value does not fit in {length} bits")
    return np.array([(value >> (length - 1 - i)) & 1 for i in range(length)], dtype=np.uint8)


def int_from_bits(bits: np.ndarray) -> int:
    """Pack a bit array into an int, bit 0 most significant."""
    out = 0
    for b in np.asarray(bits, dtype=np.uint8):
        out = (out << 1) | int(b)
    return out


def unpack_words(words: np.ndarray, length: int) -> np.ndarray:
    """Unpack an array of packed uint64 words into rows of `length` bits.

    Inverse of MSB-first packing: bit i of row r is bit (length-1-i) of
    words[r].
    """
    words = np.asarray(words, dtype=np.uint64)
    shifts = np.arange(length - 1, -1, -1, dtype=np.uint64)
    return ((words[:, None] >> shifts[None, :]) & np.uint64(1)).astype(np.uint8)
