"""Command line entry point: simulation, sweeps, bounds, and CRC search.

Every CSV written by a simulation subcommand is paired with a
`.manifest.json` sidecar carrying the tool version, resolved
configuration, seed, timestamps, and a host descriptor, which is enough
to reproduce the CSV bit-exactly (timing columns excepted).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import platform
import sys
import time
from datetime import datetime, timezone


from . import __version__
from .bounds import BoundQuery, normal_approx_epsilon
from .crc import CRC_REGISTRY, CrcSpec, get_crc
from .harness import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_MAX_TRIALS,
    DEFAULT_MIN_FAILURES,
    SimConfig,
    run_sweep,
    sweep_crc_length,
    sweep_list_size,
    write_csv,
)
from .registry import register_conv_code, registry_table
from .spectrum import concatenated_encoder, dso_search, weight_enumerator
from .tbcc import ConvCodeSpec, encode_batch


@dataclasses.dataclass
class RunManifest:
    """Reproduction record paired with every simulation CSV."""

    version: str
    command: str
    config: dict
    seed: int
    started_utc: str
    finished_utc: str
    host: str

    def write(self, csv_path: str) -> str:
        path = csv_path + ".manifest.json" if not csv_path.endswith(".csv") else csv_path[:-4] + ".manifest.json"
        with open(path, "w") as f:
            json.dump(dataclasses.asdict(self), f, indent=2)
            f.write("\n")
        return path


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat()


def _host() -> str:
    return f"{platform.node()} {platform.system()} {platform.machine()} python{platform.python_version()}"


def _parse_ebno(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"ebno list {text!r} is not comma-separated numbers")
    if not values:
        raise argparse.ArgumentTypeError("ebno list is empty")
    return values


def _load_rep_map(path: str) -> tuple[int, ...]:
    with open(path) as f:
        counts = [int(line) for line in f.read().split()]
    if not counts:
        raise ValueError(f"repetition map {path!r} is empty")
    return tuple(counts)


def _load_config_file(path: str) -> dict:
    with open(path) as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as err:
            raise ValueError(f"config file {path!r}: invalid JSON: {err}") from None
    if not isinstance(data, dict):
        raise ValueError(f"config file {path!r}: top level must be an object")
    for entry in data.get("codes", []):
        for key in ("name", "generators_octal", "memory"):
            if key not in entry:
                raise ValueError(f"config file {path!r}: codes[] entry missing {key!r}")
        register_conv_code(entry["name"], entry["generators_octal"], int(entry["memory"]))
    return data


_CONFIG_FIELDS = {
    "code_id": str,
    "crc_id": str,
    "ebno_db": lambda v: tuple(float(x) for x in v),
    "l_max": int,
    "max_trials": int,
    "min_failures": int,
    "seed": int,
    "repetition_map": lambda v: tuple(int(x) for x in v),
    "k_message": int,
    "batch_size": int,
    "workers": int,
}


def _build_sim_config(args) -> SimConfig:
    values: dict = {}
    if getattr(args, "config", None):
        data = _load_config_file(args.config)
        for key, conv in _CONFIG_FIELDS.items():
            if key in data:
                try:
                    values[key] = conv(data[key])
                except (TypeError, ValueError):
                    raise ValueError(f"config field {key!r} has invalid value {data[key]!r}")
    overrides = {
        "code_id": args.code,
        "crc_id": getattr(args, "crc", None),
        "ebno_db": args.ebno,
        "l_max": args.lmax,
        "seed": args.seed,
        "min_failures": args.min_failures,
        "max_trials": args.max_trials,
        "batch_size": args.batch_size,
        "workers": args.workers if args.workers is not None else args.global_workers,
    }
    if getattr(args, "rep_map", None):
        overrides["repetition_map"] = _load_rep_map(args.rep_map)
    for key, value in overrides.items():
        if value is not None:
            values[key] = value
    if "code_id" not in values:
        raise ValueError("missing required option --code (or code_id in the config file)")
    return SimConfig(**values)


def _csv_header(config: SimConfig, extra: dict | None = None) -> dict:
    header = {
        "tool": f"listcode {__version__}",
        "seed": config.seed,
        "min_failures": config.min_failures,
        "max_trials": config.max_trials,
        "batch_size": config.batch_size,
        "ci": "95% halfwidth = 1.96*sqrt(p(1-p)/trials)",
    }
    header.update(extra or {})
    return header


def _finish_run(args, config: SimConfig, results, started: str) -> None:
    write_csv(results, args.out, _csv_header(config))
    manifest = RunManifest(
        version=__version__,
        command=" ".join(sys.argv[1:]),
        config=dataclasses.asdict(config),
        seed=config.seed,
        started_utc=started,
        finished_utc=_utcnow(),
        host=_host(),
    )
    path = manifest.write(args.out)
    print(f"wrote {args.out} and {path}")


def _cmd_simulate(args) -> int:
    config = _build_sim_config(args)
    started = _utcnow()
    results = run_sweep(config)
    _finish_run(args, config, results, started)
    return 0


def _cmd_sweep_crc(args) -> int:
    config = _build_sim_config(args)
    m_list = [int(x) for x in args.m_list.split(",")]
    for m in m_list:
        if f"tbcc-dso-{m}" not in CRC_REGISTRY:
            raise ValueError(f"no registered DSO CRC of length {m}")
    started = _utcnow()
    results = sweep_crc_length(config, m_list)
    _finish_run(args, config, results, started)
    return 0


def _cmd_sweep_list(args) -> int:
    config = _build_sim_config(args)
    l_list = [int(x) for x in args.lmax_list.split(",")]
    started = _utcnow()
    results = sweep_list_size(config, l_list)
    _finish_run(args, config, results, started)
    return 0


def _cmd_bound(args) -> int:
    rows = []
    ebno = args.ebno_start
    while ebno <= args.ebno_stop + 1e-9:
        eps = normal_approx_epsilon(BoundQuery(args.n, args.k, ebno))
        rows.append((ebno, eps))
        ebno += args.ebno_step
    with open(args.out, "w") as f:
        f.write(f"# tool=listcode {__version__}\n")
        f.write(f"# curve=normal-approximation n={args.n} k={args.k}\n")
        f.write("ebno_db,epsilon_na\n")
        for ebno, eps in rows:
            f.write(f"{ebno:g},{eps:.6e}\n")
    print(f"wrote {args.out}")
    return 0


def _conv_from_args(args) -> ConvCodeSpec:
    gens = tuple(int(g, 8) for g in args.generators.split(","))
    return ConvCodeSpec(gens, args.memory, "cli-code")


def _cmd_search_crc(args) -> int:
    conv = _conv_from_args(args)
    started = time.perf_counter()
    winner = dso_search(conv, args.m, args.k_message)
    elapsed = time.perf_counter() - started
    print(
        f"best degree-{args.m} CRC for k={args.k_message}: 0x{winner.poly:X} "
        f"({elapsed:.2f}s exhaustive search)"
    )
    if args.out:
        spectrum = weight_enumerator(
            concatenated_encoder(winner, conv), args.k_message
        )
        _write_spectrum_csv(args.out, spectrum, {"poly": f"0x{winner.poly:X}", "m": args.m})
    return 0


def _write_spectrum_csv(path: str, spectrum: dict[int, int], extra: dict) -> None:
    with open(path, "w") as f:
        f.write(f"# tool=listcode {__version__}\n")
        for key, value in extra.items():
            f.write(f"# {key}={value}\n")
        f.write("weight,count\n")
        for w in sorted(spectrum):
            f.write(f"{w},{spectrum[w]}\n")
    print(f"wrote {path}")


def _cmd_verify_spectrum(args) -> int:
    conv = _conv_from_args(args)
    if args.crc:
        poly = int(args.crc, 16)
        spec = CrcSpec(poly.bit_length() - 1, poly)
        encode = concatenated_encoder(spec, conv)
        label = f"crc=0x{poly:X}+conv"
    elif args.crc_id:
        spec = get_crc(args.crc_id)
        encode = concatenated_encoder(spec, conv)
        label = f"crc={args.crc_id}+conv"
    else:
        encode = lambda msgs: encode_batch(msgs, conv)
        label = "conv"
    spectrum = weight_enumerator(encode, args.k)
    _write_spectrum_csv(args.out, spectrum, {"code": label, "k": args.k})
    return 0


def _cmd_registry(args) -> int:
    if args.action != "list":
        raise ValueError(f"unknown registry action {args.action!r}")
    for kind, name in registry_table():
        print(f"{kind:5s} {name}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="listcode",
        description="CRC-aided list decoding simulations for short-message codes",
    )
    parser.add_argument("--version", action="version", version=f"listcode {__version__}")
    parser.add_argument(
        "--workers",
        dest="global_workers",
        type=int,
        default=None,
        help="worker processes for any simulation subcommand",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_sim_options(p, needs_crc=True):
        p.add_argument("--code", help="code id from the registry")
        if needs_crc:
            p.add_argument("--crc", help="CRC id from the registry")
        p.add_argument("--ebno", type=_parse_ebno, help="comma-separated Eb/N0 list in dB")
        p.add_argument("--lmax", type=int, help="maximum list size (power of two)")
        p.add_argument("--seed", type=int, help="run seed")
        p.add_argument("--rep-map", help="file with one repeat count per code bit")
        p.add_argument("--min-failures", type=int, help=f"stop after this many failures (default {DEFAULT_MIN_FAILURES})")
        p.add_argument("--max-trials", type=int, help=f"hard trial cap (default {DEFAULT_MAX_TRIALS})")
        p.add_argument("--batch-size", type=int, help=f"stopping-rule batch size (default {DEFAULT_BATCH_SIZE})")
        p.add_argument("--workers", type=int, help="worker processes (default 1)")
        p.add_argument("--config", help="JSON config file mirroring SimConfig")
        p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("simulate", help="Monte Carlo run over an ebno list")
    add_sim_options(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep-crc", help="CRC-length sweep over the DSO table")
    add_sim_options(p, needs_crc=False)
    p.add_argument("--m-list", default="8,9,10,11,12,13,14,15,16")
    p.set_defaults(func=_cmd_sweep_crc)

    p = sub.add_parser("sweep-list", help="maximum-list-size sweep")
    add_sim_options(p)
    p.add_argument("--lmax-list", required=True, help="comma-separated maximum list sizes")
    p.set_defaults(func=_cmd_sweep_list)

    p = sub.add_parser("bound", help="normal-approximation benchmark curve")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ebno-start", type=float, required=True)
    p.add_argument("--ebno-stop", type=float, required=True)
    p.add_argument("--ebno-step", type=float, default=0.25)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("search-crc", help="desk-scale exhaustive DSO CRC search")
    p.add_argument("--generators", required=True, help="comma-separated octal generators")
    p.add_argument("--memory", type=int, required=True)
    p.add_argument("--m", type=int, required=True, help="CRC length to search")
    p.add_argument("--k-message", type=int, required=True)
    p.add_argument("--out", help="optional CSV of the winner's spectrum")
    p.set_defaults(func=_cmd_search_crc)

    p = sub.add_parser("verify-spectrum", help="brute-force weight enumerator")
    p.add_argument("--generators", required=True, help="comma-separated octal generators")
    p.add_argument("--memory", type=int, required=True)
    p.add_argument("--k", type=int, required=True, help="message bits to enumerate")
    p.add_argument("--crc", help="hex CRC polynomial to concatenate")
    p.add_argument("--crc-id", help="registered CRC id to concatenate")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_verify_spectrum)

    p = sub.add_parser("registry", help="inspect registered code and CRC ids")
    p.add_argument("action", choices=["list"])
    p.set_defaults(func=_cmd_registry)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
