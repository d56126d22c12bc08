"""Adaptive doubling-list-size decoding and trial-outcome classification.

The control flow: start at list size 1, CRC-check the decoder's candidates
in metric order, return the first passer's message prefix; otherwise
double the list size and restart the decoder from scratch, declaring an
erasure after a failure at the maximum list size.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass

import numpy as np

from .crc import CrcSpec, remainder_basis

__all__ = ["DecodeOutcome", "TrialClass", "adaptive_decode", "classify"]


@dataclass(frozen=True)
class DecodeOutcome:
    """Result of one adaptive decode: a CRC-passing message or an erasure."""

    message: np.ndarray | None
    list_size_used: int
    decode_time: float

    @property
    def decoded(self) -> bool:
        return self.message is not None


class TrialClass(enum.Enum):
    CORRECT = "correct"
    UNDETECTED_ERROR = "undetected"
    ERASURE = "erasure"


def adaptive_decode(
    llrs: np.ndarray,
    decoder,
    crc: CrcSpec,
    l_max: int,
    message_len: int = 32,
) -> DecodeOutcome:
    """Run the doubling loop over a list decoder handle.

    `decoder(llrs, L)` must return (words, metrics) with candidate CRC words
    as rows of a 2-D bit array, best candidate first. The first CRC passer
    at the current list size wins; its first `message_len` bits are the
    decoded message.
    """
    if l_max < 1 or l_max & (l_max - 1):
        raise ValueError(f"maximum list size must be a power of two >= 1, got {l_max}")
    start = time.perf_counter()
    L = 1
    while True:
        words, _metrics = decoder(llrs, L)
        words = np.atleast_2d(np.asarray(words, dtype=np.uint8))
        if words.shape[0]:
            if words.shape[1] <= crc.degree:
                raise ValueError(
                    f"decoder emits {words.shape[1]}-bit words, too short for a "
                    f"degree-{crc.degree} CRC"
                )
            if words.shape[1] - crc.degree < message_len:
                raise ValueError("decoder words are shorter than the message prefix")
            basis = remainder_basis(crc, words.shape[1])
            rem = (words.astype(np.int64) @ basis.astype(np.int64)) & 1
            passing = np.flatnonzero(~rem.any(axis=1))
            if passing.size:
                message = words[passing[0], :message_len].copy()
                return DecodeOutcome(message, L, time.perf_counter() - start)
        if L == l_max:
            return DecodeOutcome(None, l_max, time.perf_counter() - start)
        L *= 2


def classify(outcome: DecodeOutcome, transmitted: np.ndarray) -> TrialClass:
    """Partition a trial into correct / undetected error / erasure."""
    if not outcome.decoded:
        return TrialClass.ERASURE
    transmitted = np.asarray(transmitted, dtype=np.uint8)
    if outcome.message.size != transmitted.size:
        raise ValueError("message length mismatch between outcome and transmitted bits")
    if np.array_equal(outcome.message, transmitted):
        return TrialClass.CORRECT
    return TrialClass.UNDETECTED_ERROR
