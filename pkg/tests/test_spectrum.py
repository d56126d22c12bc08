"""Distance spectrum and DSO search tests at desk scale."""

import numpy as np
import pytest

from listcode.channel import ChannelParams
from listcode.crc import CrcSpec, crc_encode
from listcode.spectrum import (
    concatenated_encoder,
    dso_search,
    union_bound_uer,
    weight_enumerator,
)
from listcode.tbcc import ConvCodeSpec, encode_batch, tbcc_encode

TOY = ConvCodeSpec((0o7, 0o5), 2, "toy-7-5")


def oracle_weight_enumerator(encode_one, k):
    """Straight-line duplicate implementation: loop, encode, tally."""
    counts = {}
    for value in range(1 << k):
        msg = [(value >> (k - 1 - i)) & 1 for i in range(k)]
        w = int(sum(encode_one(np.array(msg, dtype=np.uint8))))
        counts[w] = counts.get(w, 0) + 1
    return counts


def toy_batch(msgs):
    return encode_batch(msgs, TOY)


def test_enumerator_matches_duplicate_implementation():
    ours = weight_enumerator(toy_batch, 6)
    ref = oracle_weight_enumerator(lambda m: tbcc_encode(m, TOY), 6)
    assert ours == ref


def test_zero_weight_count_is_one():
    assert weight_enumerator(toy_batch, 6)[0] == 1
    spec = CrcSpec(4, 0x13)
    assert weight_enumerator(concatenated_encoder(spec, TOY), 6)[0] == 1


def test_concatenation_is_a_subcode():
    bare = weight_enumerator(toy_batch, 10)
    crc4 = CrcSpec(4, 0x13)
    concat = weight_enumerator(concatenated_encoder(crc4, TOY), 6)
    d_bare = min(w for w in bare if w > 0)
    d_concat = min(w for w in concat if w > 0)
    assert d_concat >= d_bare
    # the CRC-word space is a subset of the 10-bit input space
    assert sum(concat.values()) == 2**6


def test_refuses_oversized_enumeration():
    with pytest.raises(ValueError):
        weight_enumerator(toy_batch, 25)
    with pytest.raises(ValueError):
        dso_search(TOY, 20, 8)


def oracle_dso(conv, m, k):
    """Independent search: rank candidate polynomials by padded spectra."""
    best = None
    for free in range(1 << (m - 1)):
        poly = (1 << m) | (free << 1) | 1
        spec = CrcSpec(m, poly)
        counts = oracle_weight_enumerator(
            lambda msg: tbcc_encode(crc_encode(msg, spec), conv), k
        )
        lines = tuple(
            (-w, c) for w, c in sorted(counts.items()) if w > 0
        )
        key = tuple(x for pair in lines for x in pair)
        if best is None or (key, poly) < best:
            best = (key, poly)
    return best[1]


def test_dso_search_matches_bruteforce_oracle_m3():
    winner = dso_search(TOY, 3, 8)
    assert winner.poly == oracle_dso(TOY, 3, 8) == 0xF


def test_dso_search_matches_bruteforce_oracle_m4():
    winner = dso_search(TOY, 4, 8)
    assert winner.poly == oracle_dso(TOY, 4, 8) == 0x17


def test_dso_tiebreak_smallest_polynomial():
    # at k=4 the full spectra of 0xB and 0xD tie exactly; the smaller wins
    from listcode.spectrum import _spectrum_key

    s_b = weight_enumerator(concatenated_encoder(CrcSpec(3, 0xB), TOY), 4)
    s_d = weight_enumerator(concatenated_encoder(CrcSpec(3, 0xD), TOY), 4)
    assert _spectrum_key(s_b) == _spectrum_key(s_d)
    assert dso_search(TOY, 3, 4).poly == 0xB


def test_dmin_never_decreases_with_crc_length():
    def dmin(m):
        winner = dso_search(TOY, m, 8)
        counts = weight_enumerator(concatenated_encoder(winner, TOY), 8)
        return min(w for w in counts if w > 0)

    d3, d4, d5 = dmin(3), dmin(4), dmin(5)
    assert d3 <= d4 <= d5
    assert (d3, d4) == (8, 8)  # frozen from the exhaustive oracle


def test_union_bound_upper_bounds_ml_uer_at_high_snr():
    # exhaustive ML decoding of the toy concatenated code; the spectrum
    # union bound must sit above the simulated error rate
    crc4 = CrcSpec(4, 0x13)
    k = 6
    spectrum = weight_enumerator(concatenated_encoder(crc4, TOY), k)
    codebook = []
    for value in range(1 << k):
        msg = np.array([(value >> (k - 1 - i)) & 1 for i in range(k)], dtype=np.uint8)
        codebook.append(tbcc_encode(crc_encode(msg, crc4), TOY))
    codebook = np.array(codebook, dtype=np.float64)
    symbols = 1.0 - 2.0 * codebook

    params = ChannelParams(5.0, k, codebook.shape[1])
    sigma = params.sigma
    rng = np.random.default_rng(11)
    trials = 4000
    errors = 0
    for _ in range(trials):
        idx = int(rng.integers(1 << k))
        y = symbols[idx] + sigma * rng.standard_normal(codebook.shape[1])
        ml = int(np.argmax(symbols @ y))
        errors += ml != idx
    p_sim = errors / trials
    bound = union_bound_uer(spectrum, sigma)
    mc_sigma = np.sqrt(max(p_sim, 1 / trials) / trials)
    assert p_sim <= bound + 3 * mc_sigma


def test_union_bound_validation():
    with pytest.raises(ValueError):
        union_bound_uer({4: 1}, 0.0)
