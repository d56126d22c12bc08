"""5G PBCH polar coding: frozen-set selection, Arikan transform, repetition
rate matching, and CRC-aided successive-cancellation list decoding.

The shipped reliability asset is the 3GPP 38.212 universal sequence
restricted to block length 512, one channel index per line ordered from
least to most reliable. A Bhattacharyya construction is available for toy
block lengths in tests.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numba
import numpy as np

from .bits import as_bits

__all__ = [
    "PolarSpec",
    "RateMatchSpec",
    "PBCH_RATE_MATCH",
    "polar_transform",
    "polar_encode",
    "rate_match",
    "llr_combine",
    "scl_decode",
    "scl_decode_arrays",
    "load_reliability_sequence",
    "bhattacharyya_sequence",
]

DATA_DIR_ENV = "LISTCODE_DATA_DIR"
RELIABILITY_ASSET = "reliability_5g_n512.txt"


def load_reliability_sequence(n: int = 512, path: str | None = None) -> np.ndarray:
    """Load a reliability sequence (least reliable first) and validate it."""
    if path is None:
        override = os.environ.get(DATA_DIR_ENV)
        if override:
            path = os.path.join(override, RELIABILITY_ASSET)
    if path is None:
        text = (resources.files("listcode") / "data" / RELIABILITY_ASSET).read_text()
    else:
        with open(path) as f:
            text = f.read()
    seq = np.array([int(line) for line in text.split()], dtype=np.int64)
    if seq.size != n:
        raise ValueError(f"reliability sequence has {seq.size} entries, expected {n}")
    if not np.array_equal(np.sort(seq), np.arange(n)):
        raise ValueError("reliability sequence is not a permutation of 0..n-1")
    return seq


def bhattacharyya_sequence(n: int, design_erasure: float = 0.5) -> np.ndarray:
    """Reliability sequence from the Bhattacharyya recursion on a BEC.

    Used for toy block lengths where the 5G table does not apply. Returns
    channel indices ordered from least to most reliable; ties are broken by
    index for determinism.
    """
    if n < 2 or n & (n - 1):
        raise ValueError("n must be a power of two >= 2")
    z = np.array([design_erasure], dtype=np.float64)
    while z.size < n:
        z = np.concatenate([2 * z - z * z, z * z])
    # larger Bhattacharyya parameter = less reliable; stable sort descending
    return np.argsort(-z, kind="stable").astype(np.int64)


@dataclass(frozen=True)
class PolarSpec:
    """Code dimensions plus the frozen/information index sets."""

    n: int
    K: int
    reliability: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        n, K = self.n, self.K
        if n < 2 or n & (n - 1):
            raise ValueError("codeword length must be a power of two")
        if not 0 < K <= n:
            raise ValueError(f"information size {K} out of range for n={n}")
        if sorted(self.reliability) != list(range(n)):
            raise ValueError("reliability sequence is not a permutation of 0..n-1")

    @property
    def frozen_set(self) -> np.ndarray:
        """The n-K least reliable indices, sorted."""
        return np.sort(np.array(self.reliability[: self.n - self.K], dtype=np.int64))

    @property
    def info_set(self) -> np.ndarray:
        """The K most reliable indices, sorted; info bits fill them in order."""
        return np.sort(np.array(self.reliability[self.n - self.K :], dtype=np.int64))

    @property
    def frozen_mask(self) -> np.ndarray:
        mask = np.ones(self.n, dtype=np.uint8)
        mask[self.info_set] = 0
        return mask


@lru_cache(maxsize=None)
def pbch_polar_spec(K: int) -> PolarSpec:
    """The (512, K) code built from the shipped 5G reliability sequence."""
    seq = load_reliability_sequence(512)
    return PolarSpec(512, K, tuple(int(i) for i in seq), f"5g-pbch-(512,{K})")


@dataclass(frozen=True)
class RateMatchSpec:
    """Repetition rate matching: retransmit a prefix of the codeword."""

    transmit_len: int = 864
    repeat_prefix_len: int = 352

    def __post_init__(self):
        if not 0 <= self.repeat_prefix_len < self.transmit_len:
            raise ValueError("repeated prefix must be shorter than the transmission")

    @property
    def codeword_len(self) -> int:
        return self.transmit_len - self.repeat_prefix_len


PBCH_RATE_MATCH = RateMatchSpec(864, 352)


def polar_transform(u: np.ndarray) -> np.ndarray:
    """Multiply by the n-th Kronecker power of [[1,0],[1,1]] over GF(2)."""
    u = as_bits(u)
    n = u.size
    if n == 0 or n & (n - 1):
        raise ValueError("transform length must be a power of two")
    x = u.copy()
    half = 1
    while half < n:
        view = x.reshape(-1, 2 * half)
        view[:, :half] ^= view[:, half:]
        half *= 2
    return x


def polar_encode(info: np.ndarray, spec: PolarSpec) -> np.ndarray:
    """Scatter info bits into the non-frozen positions and transform."""
    info = as_bits(info)
    if info.size != spec.K:
        raise ValueError(f"expected {spec.K} information bits, got {info.size}")
    u = np.zeros(spec.n, dtype=np.uint8)
    u[spec.info_set] = info
    return polar_transform(u)


def rate_match(codeword: np.ndarray, rm: RateMatchSpec) -> np.ndarray:
    """Append the repeated prefix: codeword || codeword[:prefix]."""
    codeword = as_bits(codeword, length=rm.codeword_len)
    return np.concatenate([codeword, codeword[: rm.repeat_prefix_len]])


def llr_combine(llrs: np.ndarray, rm: RateMatchSpec) -> np.ndarray:
    """Soft-combine repeated observations: repeats of one bit add in LLR domain."""
    llrs = np.asarray(llrs, dtype=np.float64)
    if llrs.size != rm.transmit_len:
        raise ValueError(f"expected {rm.transmit_len} llrs, got {llrs.size}")
    n = rm.codeword_len
    combined = llrs[:n].copy()
    combined[: rm.repeat_prefix_len] += llrs[n:]
    return combined


@numba.njit(cache=True)
def _copy_live_state(llr, ucap, dec, pm, dst, src, leaf, n, N):  # pragma: no cover
    # Duplicate only the state a forked path can still read: for level d the
    # column window of the leaf's ancestor at level d-1 (full row at the
    # root), plus the decided-bit history.
    for i in range(N):
        llr[dst, 0, i] = llr[src, 0, i]
        ucap[dst, 0, i] = ucap[src, 0, i]
        dec[dst, i] = dec[src, i]
    for d in range(1, n + 1):
        width = N >> (d - 1)
        lo = (leaf >> (n - d + 1)) * width
        for i in range(lo, lo + width):
            llr[dst, d, i] = llr[src, d, i]
            ucap[dst, d, i] = ucap[src, d, i]
    pm[dst] = pm[src]


@numba.njit(cache=True)
def _scl_kernel(chan_llrs, frozen, L):  # pragma: no cover
    N = chan_llrs.shape[0]
    n = 0
    while (1 << n) < N:
        n += 1
    levels = n + 1
    llr = np.zeros((L, levels, N), dtype=np.float64)
    ucap = np.zeros((L, levels, N), dtype=np.uint8)
    dec = np.zeros((L, N), dtype=np.uint8)
    pm = np.zeros(L, dtype=np.float64)
    pm2 = np.zeros(2 * L, dtype=np.float64)
    keep = np.zeros(2 * L, dtype=np.uint8)
    freed = np.zeros(L, dtype=np.int64)
    node_state = np.zeros(2 * N - 1, dtype=np.uint8)
    for i in range(N):
        llr[0, 0, i] = chan_llrs[i]
    lcur = 1
    depth = 0
    node = 0
    while True:
        if depth == n:
            # leaf: decide bit `node` on every path
            if frozen[node] == 1:
                for p in range(lcur):
                    lam = llr[p, n, node]
                    ucap[p, n, node] = 0
                    dec[p, node] = 0
                    if lam < 0.0:
                        pm[p] = pm[p] - lam
            else:
                ncand = 2 * lcur
                for p in range(lcur):
                    lam = llr[p, n, node]
                    pen = -lam if lam < 0.0 else lam
                    pm2[p] = pm[p]          # preferred decision, no penalty
                    pm2[p + lcur] = pm[p] + pen  # flipped decision
                newl = ncand if ncand <= L else L
                order = np.argsort(pm2[:ncand], kind="mergesort")
                for cand in range(ncand):
                    keep[cand] = 0
                for r in range(newl):
                    keep[order[r]] = 1
                nfreed = 0
                for p in range(lcur):
                    if keep[p] == 0 and keep[p + lcur] == 0:
                        freed[nfreed] = p
                        nfreed += 1
                for p in range(lcur, newl):
                    freed[nfreed] = p
                    nfreed += 1
                fidx = 0
                for p in range(lcur):
                    lam = llr[p, n, node]
                    pref = np.uint8(1) if lam < 0.0 else np.uint8(0)
                    if keep[p] == 1 and keep[p + lcur] == 1:
                        slot = freed[fidx]
                        fidx += 1
                        _copy_live_state(llr, ucap, dec, pm, slot, p, node, n, N)
                        ucap[slot, n, node] = 1 - pref
                        dec[slot, node] = 1 - pref
                        pm[slot] = pm2[p + lcur]
                        ucap[p, n, node] = pref
                        dec[p, node] = pref
                        pm[p] = pm2[p]
                    elif keep[p] == 1:
                        ucap[p, n, node] = pref
                        dec[p, node] = pref
                        pm[p] = pm2[p]
                    elif keep[p + lcur] == 1:
                        # flipped decision survives alone: adjust in place
                        ucap[p, n, node] = 1 - pref
                        dec[p, node] = 1 - pref
                        pm[p] = pm2[p + lcur]
                lcur = newl
            if node == N - 1:
                break
            node = node // 2
            depth -= 1
        else:
            idx = (1 << depth) - 1 + node
            temp = N >> depth
            half = temp >> 1
            base = node * temp
            st = node_state[idx]
            if st == 0:
                # first visit: min-sum f to the left child
                for p in range(lcur):
                    for i in range(half):
                        a = llr[p, depth, base + i]
                        b = llr[p, depth, base + half + i]
                        aa = -a if a < 0.0 else a
                        ab = -b if b < 0.0 else b
                        mn = aa if aa <= ab else ab
                        if (a < 0.0) != (b < 0.0):
                            mn = -mn
                        llr[p, depth + 1, base + i] = mn
                node_state[idx] = 1
                node = 2 * node
                depth += 1
            elif st == 1:
                # second visit: g with the left child's partial sums
                for p in range(lcur):
                    for i in range(half):
                        a = llr[p, depth, base + i]
                        b = llr[p, depth, base + half + i]
                        if ucap[p, depth + 1, base + i] == 1:
                            llr[p, depth + 1, base + half + i] = b - a
                        else:
                            llr[p, depth + 1, base + half + i] = b + a
                node_state[idx] = 2
                node = 2 * node + 1
                depth += 1
            else:
                # both children decided: combine partial sums upward
                for p in range(lcur):
                    for i in range(half):
                        ul = ucap[p, depth + 1, base + i]
                        ur = ucap[p, depth + 1, base + half + i]
                        ucap[p, depth, base + i] = ul ^ ur
                        ucap[p, depth, base + half + i] = ur
                node = node // 2
                depth -= 1
    order = np.argsort(pm[:lcur], kind="mergesort")
    u_out = np.zeros((lcur, N), dtype=np.uint8)
    pm_out = np.zeros(lcur, dtype=np.float64)
    for r in range(lcur):
        src = order[r]
        pm_out[r] = pm[src]
        for i in range(N):
            u_out[r, i] = dec[src, i]
    return u_out, pm_out


def scl_decode_arrays(
    llrs: np.ndarray, spec: PolarSpec, list_size: int
) -> tuple[np.ndarray, np.ndarray]:
    """Ranked SCL candidates as (info bit rows, penalty metrics)."""
    if list_size < 1 or list_size & (list_size - 1):
        raise ValueError(f"list size must be a power of two >= 1, got {list_size}")
    llrs = np.ascontiguousarray(llrs, dtype=np.float64)
    if llrs.size != spec.n:
        raise ValueError(f"expected {spec.n} llrs, got {llrs.size}")
    u, pm = _scl_kernel(llrs, spec.frozen_mask, list_size)
    return u[:, spec.info_set], pm


def scl_decode(
    llrs: np.ndarray, spec: PolarSpec, list_size: int
) -> list[tuple[np.ndarray, float]]:
    """CRC-agnostic SCL decoding: up to L candidates, best (lowest penalty) first."""
    words, pm = scl_decode_arrays(llrs, spec, list_size)
    return [(words[r], float(pm[r])) for r in range(len(pm))]
