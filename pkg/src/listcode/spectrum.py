"""Distance spectra of small codes and a desk-scale exhaustive CRC search.

A code handle is a batch encoder: a callable mapping a 2-D uint8 array of
messages (one per row) to the corresponding codeword rows. Enumeration is
sharded so memory stays bounded; shard tallies merge by addition.
"""

from __future__ import annotations

from collections import Counter

import numpy as np
from scipy.special import ndtr

from . import tbcc
from .crc import CrcSpec, crc_encode

__all__ = ["weight_enumerator", "dso_search", "concatenated_encoder", "union_bound_uer"]

BRUTE_FORCE_LIMIT = 24
_SHARD_BITS = 16


def weight_enumerator(encode, k: int) -> dict[int, int]:
    """Tally Hamming weights of all 2^k codewords of a batch encoder."""
    if k < 1:
        raise ValueError("message length must be positive")
    if k > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"k={k} exceeds the brute-force bound of {BRUTE_FORCE_LIMIT} bits"
        )
    counts: Counter[int] = Counter()
    shard = 1 << min(k, _SHARD_BITS)
    shifts = np.arange(k - 1, -1, -1, dtype=np.uint64)
    for start in range(0, 1 << k, shard):
        vals = np.arange(start, start + shard, dtype=np.uint64)
        msgs = ((vals[:, None] >> shifts[None, :]) & np.uint64(1)).astype(np.uint8)
        weights = encode(msgs).sum(axis=1)
        w, c = np.unique(weights, return_counts=True)
        for wi, ci in zip(w.tolist(), c.tolist()):
            counts[int(wi)] += int(ci)
    return dict(sorted(counts.items()))


def concatenated_encoder(crc: CrcSpec, conv: tbcc.ConvCodeSpec):
    """Batch encoder for the CRC-then-TBCC concatenation."""

    def encode(msgs: np.ndarray) -> np.ndarray:
        msgs = np.atleast_2d(np.asarray(msgs, dtype=np.uint8))
        rows = [crc_encode(row, crc) for row in msgs]
        return tbcc.encode_batch(np.array(rows, dtype=np.uint8), conv)

    return encode


def _spectrum_key(spectrum: dict[int, int]) -> tuple[int, ...]:
    # lexicographic merit: d_min descending, multiplicity ascending, then
    # the next spectral line, and so on; smaller key = better spectrum
    key: list[int] = []
    for w in sorted(spectrum):
        if w == 0:
            continue
        key.append(-w)
        key.append(spectrum[w])
    return tuple(key)


def dso_search(conv: tbcc.ConvCodeSpec, m: int, k_message: int) -> CrcSpec:
    """Exhaustively score every degree-m CRC with an x^0 term.

    The winner has the lexicographically best full distance spectrum of the
    concatenated code; exact ties go to the smallest polynomial value.
    """
    if m < 1:
        raise ValueError("CRC degree must be positive")
    if k_message + m > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"k_message + m = {k_message + m} exceeds the brute-force bound "
            f"of {BRUTE_FORCE_LIMIT} bits"
        )
    best_poly = -1
    best_key: tuple[int, ...] | None = None
    for free in range(1 << (m - 1)):
        poly = (1 << m) | (free << 1) | 1
        spec = CrcSpec(m, poly)
        spectrum = weight_enumerator(concatenated_encoder(spec, conv), k_message)
        key = _spectrum_key(spectrum)
        if best_key is None or key < best_key or (key == best_key and poly < best_poly):
            best_key = key
            best_poly = poly
    return CrcSpec(m, best_poly, f"dso-search-m{m}")


def union_bound_uer(spectrum: dict[int, int], sigma: float) -> float:
    """Union bound on the ML undetected-error rate over BPSK-AWGN.

    Sums A_w * Q(sqrt(w)/sigma) over the nonzero spectral lines.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    total = 0.0
    for w, count in spectrum.items():
        if w == 0:
            continue
        total += count * float(ndtr(-np.sqrt(w) / sigma))
    return total
