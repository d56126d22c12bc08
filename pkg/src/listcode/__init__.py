"""CRC-aided list decoding of short-message codes over BPSK-AWGN.

Building blocks: CRC arithmetic (`crc`), tail-biting convolutional codes
(`tbcc`, `list_viterbi`), the 5G PBCH polar code (`polar`), the channel
model (`channel`), the adaptive doubling-list decoder (`adaptive`),
distance spectra (`spectrum`), finite-blocklength benchmarks (`bounds`),
and a Monte Carlo harness plus CLI (`harness`, `cli`).
"""

__version__ = "0.1.0"
