"""Tail-biting convolutional encoding and trellis construction.

Tap convention, pinned by the (7,5) golden vectors in the tests: an octal
generator is read most-significant-digit-first as taps g0..gv, where g0
multiplies the current input bit and gv the oldest register bit. A trellis
state packs the last v input bits with the most recent bit in the most
significant position, so extending state s with input b uses the (v+1)-bit
window w = (b << v) | s, emits parity(w & g) per generator, and moves to
state w >> 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bits import as_bits

__all__ = ["ConvCodeSpec", "Trellis", "build_trellis", "tbcc_encode", "encode_batch"]

PAPER_TBCC_GENERATORS = (0o575, 0o623, 0o727, 0o561, 0o753)


@dataclass(frozen=True)
class ConvCodeSpec:
    """A rate-1/c feedforward convolutional code: generator taps and memory."""

    generators: tuple[int, ...]
    memory: int
    name: str = ""

    def __post_init__(self):
        v = self.memory
        if v < 1:
            raise ValueError("memory must be at least 1")
        if not self.generators:
            raise ValueError("at least one generator is required")
        for g in self.generators:
            if g <= 0 or g.bit_length() > v + 1:
                raise ValueError(
                    f"generator 0o{g:o} does not fit in {v + 1} taps (memory {v})"
                )
        # Full memory must actually be used: some generator taps both the
        # current input and the oldest register bit.
        if not any((g >> v) & 1 and g & 1 for g in self.generators):
            raise ValueError("no generator taps both g0 and gv; memory is ill-defined")

    @property
    def outputs_per_bit(self) -> int:
        return len(self.generators)

    @property
    def num_states(self) -> int:
        return 1 << self.memory


PAPER_TBCC = ConvCodeSpec(PAPER_TBCC_GENERATORS, 8, "tbcc-575-623-727-561-753")


@dataclass(frozen=True)
class Trellis:
    """State graph of a ConvCodeSpec with per-edge output labels.

    next_state[s, b] and edge_bits[s, b, :] describe the edge leaving state
    s on input b. in_state/in_bit list the two incoming edges of each state
    in a fixed order, which the list decoder relies on for deterministic
    tie handling.
    """

    spec: ConvCodeSpec
    next_state: np.ndarray
    edge_bits: np.ndarray
    edge_signs: np.ndarray
    in_state: np.ndarray
    in_bit: np.ndarray
    in_pattern: np.ndarray = field(repr=False)
    output_table: np.ndarray = field(repr=False)

    @property
    def num_states(self) -> int:
        return self.next_state.shape[0]

    @property
    def outputs_per_bit(self) -> int:
        return self.edge_bits.shape[2]


def build_trellis(spec: ConvCodeSpec) -> Trellis:
    """Expand a ConvCodeSpec into its complete, deterministic state graph."""
    v = spec.memory
    c = spec.outputs_per_bit
    S = spec.num_states

    # output_table[w, j]: output bit of generator j for register window w
    windows = np.arange(1 << (v + 1), dtype=np.int64)
    output_table = np.zeros((1 << (v + 1), c), dtype=np.uint8)
    for j, g in enumerate(spec.generators):
        masked = windows & g
        par = masked
        shift = 1
        while shift <= v:
            par ^= par >> shift
            shift <<= 1
        output_table[:, j] = (par & 1).astype(np.uint8)

    states = np.arange(S, dtype=np.int64)
    next_state = np.zeros((S, 2), dtype=np.int64)
    edge_bits = np.zeros((S, 2, c), dtype=np.uint8)
    for b in (0, 1):
        w = (b << v) | states
        next_state[:, b] = w >> 1
        edge_bits[:, b, :] = output_table[w]
    edge_signs = (1.0 - 2.0 * edge_bits).astype(np.float64)

    # incoming edges: predecessor of s via dropped oldest bit e is
    # p = (2s + e) mod 2^v with input bit (2s + e) >> v
    in_state = np.zeros((S, 2), dtype=np.int64)
    in_bit = np.zeros((S, 2), dtype=np.int64)
    in_pattern = np.zeros((S, 2), dtype=np.int64)
    packed = np.zeros((S, 2), dtype=np.int64)
    for j in range(c):
        packed = (packed << 1) | edge_bits[:, :, j].astype(np.int64)
    for e in (0, 1):
        w = 2 * states + e
        in_state[:, e] = w & (S - 1)
        in_bit[:, e] = w >> v
        in_pattern[:, e] = packed[in_state[:, e], in_bit[:, e]]
    return Trellis(
        spec, next_state, edge_bits, edge_signs, in_state, in_bit, in_pattern, output_table
    )


def tbcc_encode(message: np.ndarray, spec: ConvCodeSpec) -> np.ndarray:
    """Tail-biting encode: c output bits per input bit, stage-major order.

    The register starts loaded with the last v message bits, so the encoder
    finishes in the state it started from.
    """
    message = as_bits(message)
    k = message.size
    v = spec.memory
    if k < v:
        raise ValueError(f"tail-biting needs at least {v} input bits, got {k}")
    state = 0
    for j in range(1, v + 1):
        state |= int(message[k - j]) << (v - j)
    out = np.empty(k * spec.outputs_per_bit, dtype=np.uint8)
    table = _output_table(spec)
    c = spec.outputs_per_bit
    for t in range(k):
        w = (int(message[t]) << v) | state
        out[t * c : (t + 1) * c] = table[w]
        state = w >> 1
    return out


def encode_batch(messages: np.ndarray, spec: ConvCodeSpec) -> np.ndarray:
    """Tail-biting encode of each row of a 2-D bit array."""
    messages = np.atleast_2d(np.asarray(messages, dtype=np.uint8))
    B, k = messages.shape
    v = spec.memory
    if k < v:
        raise ValueError(f"tail-biting needs at least {v} input bits, got {k}")
    c = spec.outputs_per_bit
    table = _output_table(spec)
    state = np.zeros(B, dtype=np.int64)
    for j in range(1, v + 1):
        state |= messages[:, k - j].astype(np.int64) << (v - j)
    out = np.empty((B, k * c), dtype=np.uint8)
    for t in range(k):
        w = (messages[:, t].astype(np.int64) << v) | state
        out[:, t * c : (t + 1) * c] = table[w]
        state = w >> 1
    return out


_TABLE_CACHE: dict[ConvCodeSpec, np.ndarray] = {}


def _output_table(spec: ConvCodeSpec) -> np.ndarray:
    table = _TABLE_CACHE.get(spec)
    if table is None:
        table = build_trellis(spec).output_table
        _TABLE_CACHE[spec] = table
    return table
