"""BPSK over AWGN with data-bit energy accounting, plus repetition plumbing.

Eb counts only the message bits (k_message = 32 for the codes studied
here), never CRC or parity overhead, so at equal ebno_db a lower-rate
transmission runs at proportionally higher noise variance.

Noise generation contract (versioned with the package): numpy's
Philox4x64-10 counter-based generator keyed by the run seed, with the
trial index placed in counter word 2, drawn through
Generator.standard_normal (ziggurat). Trials are therefore independent,
reproducible, and schedule-independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import as_bits

__all__ = [
    "ChannelParams",
    "modulate",
    "add_noise",
    "demodulate_llr",
    "trial_rng",
    "expand_repetition",
    "combine_repetition",
]


@dataclass(frozen=True)
class ChannelParams:
    """One operating point of the BPSK-AWGN channel."""

    ebno_db: float
    k_message: int
    n_transmit: int

    def __post_init__(self):
        if not 0 < self.k_message <= self.n_transmit:
            raise ValueError("need 0 < k_message <= n_transmit")

    @property
    def rate(self) -> float:
        return self.k_message / self.n_transmit

    @property
    def sigma(self) -> float:
        """Noise standard deviation for unit-energy symbols."""
        ebno = 10.0 ** (self.ebno_db / 10.0)
        return float(np.sqrt(1.0 / (2.0 * self.rate * ebno)))


def modulate(bits: np.ndarray) -> np.ndarray:
    """Antipodal mapping: bit 0 -> +1.0, bit 1 -> -1.0."""
    return 1.0 - 2.0 * as_bits(bits).astype(np.float64)


def add_noise(symbols: np.ndarray, params: ChannelParams, rng: np.random.Generator) -> np.ndarray:
    symbols = np.asarray(symbols, dtype=np.float64)
    return symbols + params.sigma * rng.standard_normal(symbols.size)


def demodulate_llr(received: np.ndarray, sigma: float) -> np.ndarray:
    """Per-symbol log P(y|bit=0) - log P(y|bit=1) for unit-energy BPSK."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return 2.0 * np.asarray(received, dtype=np.float64) / (sigma * sigma)


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    """Private counter-based stream for one Monte Carlo trial."""
    if trial_index < 0:
        raise ValueError("trial index must be nonnegative")
    counter = trial_index << 128
    return np.random.Generator(np.random.Philox(key=seed % (1 << 128), counter=counter))


def expand_repetition(bits: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Transmit bit i counts[i] times, consecutively."""
    bits = as_bits(bits)
    counts = np.asarray(counts, dtype=np.int64)
    if counts.size != bits.size or np.any(counts < 1):
        raise ValueError("repetition counts must be positive and match the codeword")
    return np.repeat(bits, counts)


def combine_repetition(llrs: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Collapse repeated observations by left-to-right LLR addition.

    The fold order is fixed so that repeated runs (and the all-ones map)
    are bit-exact; with counts of all ones the input is returned unchanged
    apart from a copy.
    """
    llrs = np.asarray(llrs, dtype=np.float64)
    counts = np.asarray(counts, dtype=np.int64)
    if np.any(counts < 1) or counts.sum() != llrs.size:
        raise ValueError("repetition counts must be positive and sum to the llr length")
    out = np.empty(counts.size, dtype=np.float64)
    pos = 0
    for i, r in enumerate(counts):
        acc = llrs[pos]
        for j in range(1, r):
            acc = acc + llrs[pos + j]
        out[i] = acc
        pos += r
    return out
