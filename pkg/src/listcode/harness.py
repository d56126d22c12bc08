"""Monte Carlo simulation engine: per-trial pipeline, stopping rules, sweeps.

Determinism contract: trial i of a run depends only on (seed, i), and the
stopping rule advances in fixed-size batches, so aggregated counts are
bit-identical for any worker count. Decode timing is wall clock and is the
one column exempt from that guarantee.
"""

from __future__ import annotations

import csv
import multiprocessing
from dataclasses import dataclass, replace

import numpy as np

from .adaptive import TrialClass, adaptive_decode, classify
from .channel import ChannelParams, add_noise, demodulate_llr, modulate, trial_rng
from .crc import crc_encode
from .registry import Scheme, make_scheme

__all__ = [
    "SimConfig",
    "SimResult",
    "run_point",
    "run_trials",
    "sweep_crc_length",
    "sweep_list_size",
    "write_csv",
    "CSV_COLUMNS",
]

CSV_COLUMNS = [
    "code",
    "crc",
    "m",
    "ebno_db",
    "lmax",
    "trials",
    "correct",
    "undetected",
    "erasures",
    "uer",
    "erasure_rate",
    "tfr",
    "tfr_ci95",
    "mean_list",
    "mean_decode_ms",
]

DEFAULT_MIN_FAILURES = 50
DEFAULT_MAX_TRIALS = 10_000_000
DEFAULT_BATCH_SIZE = 2_000


@dataclass(frozen=True)
class SimConfig:
    """Everything needed to reproduce one simulation run."""

    code_id: str
    crc_id: str | None = None
    ebno_db: tuple[float, ...] = (3.5,)
    l_max: int = 32
    max_trials: int = DEFAULT_MAX_TRIALS
    min_failures: int = DEFAULT_MIN_FAILURES
    seed: int = 0
    repetition_map: tuple[int, ...] | None = None
    k_message: int = 32
    batch_size: int = DEFAULT_BATCH_SIZE
    workers: int = 1

    def __post_init__(self):
        if self.min_failures < 1:
            raise ValueError("min_failures must be at least 1")
        if self.max_trials < 1:
            raise ValueError("max_trials must be at least 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.l_max < 1 or self.l_max & (self.l_max - 1):
            raise ValueError("l_max must be a power of two")

    def scheme(self) -> Scheme:
        rep = None if self.repetition_map is None else np.array(self.repetition_map)
        return make_scheme(self.code_id, self.crc_id, rep, self.k_message)


@dataclass(frozen=True)
class SimResult:
    """Aggregated outcome counts at one operating point."""

    code: str
    crc: str
    m: int
    ebno_db: float
    lmax: int
    trials: int
    correct: int
    undetected: int
    erasures: int
    list_total: int = 0
    time_total: float = 0.0

    def __post_init__(self):
        if self.correct + self.undetected + self.erasures != self.trials:
            raise ValueError("trial classes must partition the trials")

    @property
    def uer(self) -> float:
        return self.undetected / self.trials

    @property
    def erasure_rate(self) -> float:
        return self.erasures / self.trials

    @property
    def tfr(self) -> float:
        return (self.undetected + self.erasures) / self.trials

    @property
    def tfr_ci95(self) -> float:
        p = self.tfr
        return 1.96 * float(np.sqrt(p * (1.0 - p) / self.trials))

    def rate_ci95(self, p: float) -> float:
        return 1.96 * float(np.sqrt(p * (1.0 - p) / self.trials))

    @property
    def mean_list(self) -> float:
        return self.list_total / self.trials

    @property
    def mean_decode_ms(self) -> float:
        return 1e3 * self.time_total / self.trials

    def as_row(self) -> list:
        return [
            self.code,
            self.crc,
            self.m,
            f"{self.ebno_db:g}",
            self.lmax,
            self.trials,
            self.correct,
            self.undetected,
            self.erasures,
            f"{self.uer:.6e}",
            f"{self.erasure_rate:.6e}",
            f"{self.tfr:.6e}",
            f"{self.tfr_ci95:.6e}",
            f"{self.mean_list:.3f}",
            f"{self.mean_decode_ms:.4f}",
        ]


def run_trials(
    scheme: Scheme,
    ebno_db: float,
    l_max: int,
    seed: int,
    start: int,
    count: int,
) -> tuple[int, int, int, int, float]:
    """Run trials [start, start+count) and return outcome totals."""
    params = ChannelParams(ebno_db, scheme.k_message, scheme.n_transmit)
    correct = undetected = erasures = 0
    list_total = 0
    time_total = 0.0
    for index in range(start, start + count):
        rng = trial_rng(seed, index)
        message = rng.integers(0, 2, scheme.k_message).astype(np.uint8)
        word = crc_encode(message, scheme.crc)
        coded = scheme.encode(word)
        tx = scheme.expand(coded)
        received = add_noise(modulate(tx), params, rng)
        llrs = scheme.combine(demodulate_llr(received, params.sigma))
        outcome = adaptive_decode(
            llrs, scheme.list_decode, scheme.crc, l_max, scheme.k_message
        )
        cls = classify(outcome, message)
        if cls is TrialClass.CORRECT:
            correct += 1
        elif cls is TrialClass.UNDETECTED_ERROR:
            undetected += 1
        else:
            erasures += 1
        list_total += outcome.list_size_used
        time_total += outcome.decode_time
    return correct, undetected, erasures, list_total, time_total


_WORKER_STATE: dict = {}


def _worker_init(config: SimConfig) -> None:
    _WORKER_STATE["scheme"] = config.scheme()
    _WORKER_STATE["config"] = config


def _worker_run(args: tuple[float, int, int]) -> tuple[int, int, int, int, float]:
    ebno_db, start, count = args
    config: SimConfig = _WORKER_STATE["config"]
    return run_trials(
        _WORKER_STATE["scheme"], ebno_db, config.l_max, config.seed, start, count
    )


def run_point(config: SimConfig, ebno_db: float) -> SimResult:
    """Simulate one operating point until min_failures or max_trials."""
    scheme = config.scheme()
    totals = [0, 0, 0, 0, 0.0]
    done = 0
    pool = None
    try:
        if config.workers > 1:
            pool = multiprocessing.Pool(
                config.workers, initializer=_worker_init, initargs=(config,)
            )
        while done < config.max_trials:
            batch = min(config.batch_size, config.max_trials - done)
            if pool is None:
                parts = [
                    run_trials(scheme, ebno_db, config.l_max, config.seed, done, batch)
                ]
            else:
                split = np.linspace(0, batch, config.workers + 1).astype(int)
                jobs = [
                    (ebno_db, done + int(a), int(b - a))
                    for a, b in zip(split[:-1], split[1:])
                    if b > a
                ]
                parts = pool.map(_worker_run, jobs)
            for part in parts:
                for i in range(4):
                    totals[i] += part[i]
                totals[4] += part[4]
            done += batch
            if totals[1] + totals[2] >= config.min_failures:
                break
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return SimResult(
        code=config.code_id,
        crc=scheme.crc.name or (config.crc_id or ""),
        m=scheme.crc.degree,
        ebno_db=ebno_db,
        lmax=config.l_max,
        trials=done,
        correct=totals[0],
        undetected=totals[1],
        erasures=totals[2],
        list_total=totals[3],
        time_total=totals[4],
    )


def run_sweep(config: SimConfig) -> list[SimResult]:
    """One run_point per configured ebno value."""
    return [run_point(config, ebno) for ebno in config.ebno_db]


def sweep_crc_length(config: SimConfig, m_list=range(8, 17)) -> list[SimResult]:
    """The CRC-length sweep: one run per Table-registered DSO CRC per ebno."""
    results = []
    for m in m_list:
        cfg = replace(config, crc_id=f"tbcc-dso-{m}")
        results.extend(run_sweep(cfg))
    return results


def sweep_list_size(config: SimConfig, l_max_list) -> list[SimResult]:
    """TFR / decode-time trade-off: one run per maximum list size per ebno."""
    results = []
    for l_max in l_max_list:
        cfg = replace(config, l_max=l_max)
        results.extend(run_sweep(cfg))
    return results


def write_csv(results: list[SimResult], path: str, header: dict | None = None) -> None:
    """Write results with fixed column order and '#' metadata header lines."""
    with open(path, "w", newline="") as f:
        for key, value in (header or {}).items():
            f.write(f"# {key}={value}\n")
        writer = csv.writer(f)
        writer.writerow(CSV_COLUMNS)
        for result in results:
            writer.writerow(result.as_row())
