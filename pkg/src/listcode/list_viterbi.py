"""Parallel list Viterbi decoding over a tail-biting trellis.

Every trellis state is a legal start state and every partial path remembers
its origin. Each state keeps its L best arriving paths per stage
(add-compare-select on sorted lists). After the final stage the per-state
lists are filtered to paths that end where they started, their union is
sorted in nonincreasing metric order with deterministic tie-breaking
(lower start state first, then lexicographic message), and the L best are
emitted.

Tail-biting initialization: a straight zero-metric start lets paths from
all 2^v origins compete on equal footing, which floods small per-state
lists and prunes the maximum-likelihood tail-biting path noticeably often.
The decoder therefore runs cheap plain Viterbi warm-up passes around the
circle (wrap-around style) and seeds the list pass with the resulting
per-state boundary metrics. The boundary bias affects list retention only:
every path also carries its pure correlation metric, which is what gets
emitted, so reported metrics are exact regardless of warm-up.

Path metric contract: the branch metric of a stage is the fold-left sum of
(+llr for a 0 output bit, -llr for a 1 bit) over the stage's c bits, and a
path metric is the fold-left sum of its branch metrics. `path_metric`
reproduces the decoder's accumulation bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .bits import unpack_words
from .tbcc import Trellis

__all__ = ["PathCandidate", "lva_decode", "lva_decode_arrays", "path_metric"]

MAX_MESSAGE_BITS = 64  # messages are packed into uint64 during the trellis pass


@dataclass(frozen=True)
class PathCandidate:
    """One tail-biting candidate from the decoder's ranked list."""

    message_bits: np.ndarray
    metric: float
    start_state: int
    end_state: int
    rank: int


@numba.njit(cache=True)
def _stage_patterns(llrs, base, c, pat):  # pragma: no cover
    # branch metrics are shared by all edges with the same c output bits
    for w in range(pat.shape[0]):
        acc = 0.0
        for j in range(c):
            if (w >> (c - 1 - j)) & 1 == 0:
                acc = acc + llrs[base + j]
            else:
                acc = acc - llrs[base + j]
        pat[w] = acc


@numba.njit(cache=True)
def _warmup_metrics(llrs, in_state, in_bit, in_pattern, c, wraps):  # pragma: no cover
    """Plain Viterbi passes around the circle; returns boundary metrics."""
    S = in_state.shape[0]
    k = llrs.shape[0] // c
    met = np.zeros(S, dtype=np.float64)
    met2 = np.empty(S, dtype=np.float64)
    pat = np.empty(1 << c, dtype=np.float64)
    for _ in range(wraps):
        for t in range(k):
            _stage_patterns(llrs, t * c, c, pat)
            for s in range(S):
                a = met[in_state[s, 0]] + pat[in_pattern[s, 0]]
                b = met[in_state[s, 1]] + pat[in_pattern[s, 1]]
                met2[s] = a if a >= b else b
            met, met2 = met2, met
        top = met[0]
        for s in range(1, S):
            if met[s] > top:
                top = met[s]
        for s in range(S):
            met[s] = met[s] - top
    return met


@numba.njit(cache=True)
def _lva_kernel(llrs, in_state, in_bit, in_pattern, c, L, init_met):  # pragma: no cover
    S = in_state.shape[0]
    k = llrs.shape[0] // c
    met = np.full((S, L), -np.inf, dtype=np.float64)  # biased, drives retention
    pur = np.full((S, L), -np.inf, dtype=np.float64)  # pure correlation metric
    org = np.zeros((S, L), dtype=np.int64)
    msg = np.zeros((S, L), dtype=np.uint64)
    for s in range(S):
        met[s, 0] = init_met[s]
        pur[s, 0] = 0.0
        org[s, 0] = s
    met2 = np.empty_like(met)
    pur2 = np.empty_like(pur)
    org2 = np.empty_like(org)
    msg2 = np.empty_like(msg)
    pat = np.empty(1 << c, dtype=np.float64)
    zero = np.uint64(0)
    one = np.uint64(1)
    for t in range(k):
        _stage_patterns(llrs, t * c, c, pat)
        stage_bit = one << np.uint64(k - 1 - t)
        for s in range(S):
            p0 = in_state[s, 0]
            p1 = in_state[s, 1]
            c0 = pat[in_pattern[s, 0]]
            c1 = pat[in_pattern[s, 1]]
            m0 = stage_bit if in_bit[s, 0] == 1 else zero
            m1 = stage_bit if in_bit[s, 1] == 1 else zero
            i = 0
            j = 0
            for r in range(L):
                a = met[p0, i] + c0
                b = met[p1, j] + c1
                if a >= b:
                    met2[s, r] = a
                    pur2[s, r] = pur[p0, i] + c0
                    org2[s, r] = org[p0, i]
                    msg2[s, r] = msg[p0, i] | m0
                    i += 1
                else:
                    met2[s, r] = b
                    pur2[s, r] = pur[p1, j] + c1
                    org2[s, r] = org[p1, j]
                    msg2[s, r] = msg[p1, j] | m1
                    j += 1
        met, met2 = met2, met
        pur, pur2 = pur2, pur
        org, org2 = org2, org
        msg, msg2 = msg2, msg
    return pur, org, msg


def _validate(llrs: np.ndarray, trellis: Trellis, list_size: int) -> tuple[int, int]:
    if list_size < 1 or list_size & (list_size - 1):
        raise ValueError(f"list size must be a power of two >= 1, got {list_size}")
    c = trellis.outputs_per_bit
    if llrs.ndim != 1 or llrs.size == 0 or llrs.size % c:
        raise ValueError(
            f"llr vector of length {llrs.size} is not a multiple of {c} output bits"
        )
    k = llrs.size // c
    if k > MAX_MESSAGE_BITS:
        raise ValueError(f"message length {k} exceeds the {MAX_MESSAGE_BITS}-bit limit")
    return k, c


WARMUP_WRAPS = 1


def lva_decode_arrays(
    llrs: np.ndarray, trellis: Trellis, list_size: int, warmup_wraps: int = WARMUP_WRAPS
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Ranked tail-biting candidates as packed arrays.

    Returns (messages, metrics, start_states) where messages[r] holds the
    k message bits of the rank-r candidate packed MSB-first into a uint64.
    `warmup_wraps` counts the plain boundary-metric passes; 0 reproduces
    the flat zero-metric initialization.
    """
    llrs = np.ascontiguousarray(llrs, dtype=np.float64)
    k, c = _validate(llrs, trellis, list_size)
    if warmup_wraps < 0:
        raise ValueError("warmup_wraps must be nonnegative")
    if warmup_wraps:
        init = _warmup_metrics(
            llrs, trellis.in_state, trellis.in_bit, trellis.in_pattern, c, warmup_wraps
        )
    else:
        init = np.zeros(trellis.num_states, dtype=np.float64)
    met, org, msg = _lva_kernel(
        llrs, trellis.in_state, trellis.in_bit, trellis.in_pattern, c, list_size, init
    )
    S = trellis.num_states
    tb = (org == np.arange(S)[:, None]) & np.isfinite(met)
    met_tb = met[tb]
    org_tb = org[tb]
    msg_tb = msg[tb]
    order = np.lexsort((msg_tb, org_tb, -met_tb))[:list_size]
    return msg_tb[order], met_tb[order], org_tb[order]


def lva_decode(
    llrs: np.ndarray, trellis: Trellis, list_size: int, warmup_wraps: int = WARMUP_WRAPS
) -> list[PathCandidate]:
    """Ranked list of tail-biting path candidates for one received block."""
    msg, met, org = lva_decode_arrays(llrs, trellis, list_size, warmup_wraps)
    k = np.asarray(llrs).size // trellis.outputs_per_bit
    bits = unpack_words(msg, k)
    return [
        PathCandidate(bits[r], float(met[r]), int(org[r]), int(org[r]), r)
        for r in range(len(met))
    ]


def path_metric(code_bits: np.ndarray, llrs: np.ndarray, outputs_per_bit: int) -> float:
    """Recompute a path metric with the decoder's exact accumulation order."""
    code_bits = np.asarray(code_bits, dtype=np.uint8)
    llrs = np.asarray(llrs, dtype=np.float64)
    if code_bits.size != llrs.size or code_bits.size % outputs_per_bit:
        raise ValueError("code bits and llrs must align on whole stages")
    total = 0.0
    idx = 0
    for _ in range(code_bits.size // outputs_per_bit):
        bm = 0.0
        for _ in range(outputs_per_bit):
            x = float(llrs[idx])
            bm = bm + (x if code_bits[idx] == 0 else -x)
            idx += 1
        total = total + bm
    return total
