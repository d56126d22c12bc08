"""Named code registry and scheme assembly for the simulation harness.

A scheme bundles everything one Monte Carlo trial needs: the CRC, the
encoder, the transmit-side repetition, the LLR collapse, and a ranked list
decoder handle. TBCC schemes pair the paper's rate-1/5 code (or any
configured convolutional code) with a CRC id; polar scheme ids fix their
CRC and information size K = 32 + m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import polar as polar_mod
from .bits import unpack_words
from .channel import combine_repetition, expand_repetition
from .crc import CrcSpec, get_crc, list_crcs
from .list_viterbi import lva_decode_arrays
from .tbcc import PAPER_TBCC, ConvCodeSpec, Trellis, build_trellis, tbcc_encode

__all__ = [
    "Scheme",
    "make_scheme",
    "register_conv_code",
    "list_codes",
    "make_repetition_map",
    "POLAR_SCHEMES",
]

MESSAGE_BITS = 32

# polar scheme id -> (crc id, K = 32 + m)
POLAR_SCHEMES: dict[str, tuple[str, int]] = {
    "5g-pbch-polar-m24": ("5g-crc24c", 56),
    "5g-pbch-polar-m11-5g": ("5g-crc11", 43),
    "5g-pbch-polar-m11-bk": ("bk-crc11", 43),
    "5g-pbch-polar-m12-bk": ("bk-crc12", 44),
}

_CONV_CODES: dict[str, ConvCodeSpec] = {PAPER_TBCC.name: PAPER_TBCC}


def register_conv_code(name: str, generators_octal: list[str] | tuple[int, ...], memory: int) -> ConvCodeSpec:
    """Add a convolutional code to the registry (e.g. from a config file)."""
    gens = tuple(
        int(g, 8) if isinstance(g, str) else int(g) for g in generators_octal
    )
    spec = ConvCodeSpec(gens, memory, name)
    _CONV_CODES[name] = spec
    return spec


def list_codes() -> list[str]:
    return sorted(_CONV_CODES) + sorted(POLAR_SCHEMES)


@dataclass
class Scheme:
    """A runnable code/CRC pipeline for the harness."""

    code_id: str
    crc: CrcSpec
    k_message: int
    crc_word_len: int
    n_code: int
    n_transmit: int
    encode: Callable[[np.ndarray], np.ndarray]
    expand: Callable[[np.ndarray], np.ndarray]
    combine: Callable[[np.ndarray], np.ndarray]
    list_decode: Callable[[np.ndarray, int], tuple[np.ndarray, np.ndarray]]
    repetition_map: np.ndarray | None = field(default=None, repr=False)


def make_repetition_map(n_code: int, n_transmit: int) -> np.ndarray:
    """Even per-bit repeat counts, extra repeats assigned to the first bits."""
    if n_transmit < n_code:
        raise ValueError("cannot repeat down to fewer transmitted bits")
    base, extra = divmod(n_transmit, n_code)
    counts = np.full(n_code, base, dtype=np.int64)
    counts[:extra] += 1
    return counts


def _tbcc_scheme(
    conv: ConvCodeSpec,
    crc: CrcSpec,
    k_message: int,
    repetition_map: np.ndarray | None,
) -> Scheme:
    word_len = k_message + crc.degree
    n_code = word_len * conv.outputs_per_bit
    trellis: Trellis = build_trellis(conv)

    def encode(word: np.ndarray) -> np.ndarray:
        return tbcc_encode(word, conv)

    if repetition_map is None:
        counts = None
        expand = lambda bits: bits
        combine = lambda llrs: llrs
        n_transmit = n_code
    else:
        counts = np.asarray(repetition_map, dtype=np.int64)
        if counts.size != n_code:
            raise ValueError(
                f"repetition map has {counts.size} entries, code length is {n_code}"
            )
        expand = lambda bits: expand_repetition(bits, counts)
        combine = lambda llrs: combine_repetition(llrs, counts)
        n_transmit = int(counts.sum())

    def list_decode(llrs: np.ndarray, L: int) -> tuple[np.ndarray, np.ndarray]:
        msgs, metrics, _origins = lva_decode_arrays(llrs, trellis, L)
        return unpack_words(msgs, word_len), metrics

    return Scheme(
        code_id=conv.name,
        crc=crc,
        k_message=k_message,
        crc_word_len=word_len,
        n_code=n_code,
        n_transmit=n_transmit,
        encode=encode,
        expand=expand,
        combine=combine,
        list_decode=list_decode,
        repetition_map=counts,
    )


def _polar_scheme(code_id: str, crc: CrcSpec, K: int) -> Scheme:
    spec = polar_mod.pbch_polar_spec(K)
    rm = polar_mod.PBCH_RATE_MATCH

    def encode(word: np.ndarray) -> np.ndarray:
        return polar_mod.polar_encode(word, spec)

    def expand(bits: np.ndarray) -> np.ndarray:
        return polar_mod.rate_match(bits, rm)

    def combine(llrs: np.ndarray) -> np.ndarray:
        return polar_mod.llr_combine(llrs, rm)

    def list_decode(llrs: np.ndarray, L: int) -> tuple[np.ndarray, np.ndarray]:
        return polar_mod.scl_decode_arrays(llrs, spec, L)

    return Scheme(
        code_id=code_id,
        crc=crc,
        k_message=K - crc.degree,
        crc_word_len=K,
        n_code=spec.n,
        n_transmit=rm.transmit_len,
        encode=encode,
        expand=expand,
        combine=combine,
        list_decode=list_decode,
    )


def make_scheme(
    code_id: str,
    crc_id: str | None = None,
    repetition_map: np.ndarray | None = None,
    k_message: int = MESSAGE_BITS,
) -> Scheme:
    """Resolve registry names into a runnable scheme."""
    if code_id in POLAR_SCHEMES:
        default_crc, K = POLAR_SCHEMES[code_id]
        crc_id = crc_id or default_crc
        crc = get_crc(crc_id)
        if crc_id != default_crc:
            raise ValueError(
                f"polar scheme {code_id} is defined with CRC {default_crc}, not {crc_id}"
            )
        if repetition_map is not None:
            raise ValueError("polar schemes use the fixed PBCH prefix repetition")
        return _polar_scheme(code_id, crc, K)
    if code_id in _CONV_CODES:
        if crc_id is None:
            raise ValueError(f"convolutional scheme {code_id} needs an explicit --crc")
        crc = get_crc(crc_id)
        return _tbcc_scheme(_CONV_CODES[code_id], crc, k_message, repetition_map)
    known = ", ".join(list_codes())
    raise KeyError(f"unknown code id {code_id!r}; registered: {known}")


def registry_table() -> list[tuple[str, str]]:
    """(kind, id) rows for the CLI's registry listing."""
    rows = [("code", name) for name in sorted(_CONV_CODES)]
    rows += [("code", name) for name in sorted(POLAR_SCHEMES)]
    rows += [("crc", name) for name in list_crcs()]
    return rows
