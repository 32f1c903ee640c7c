"""Command-line front end.

Every quantity is a subcommand operating on JSON files; output goes to
stdout as JSON (default) or TSV.  Exit codes: 0 success, 1 domain error
(error name on stderr), 2 parse or I/O error.  The same command line with
the same seed produces byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io as rfio
from .entropy import (
    free_energy_gap,
    gibbs_state,
    mutual_information,
    negentropy,
    relative_entropy,
    vn_entropy,
)
from .errors import DomainError
from .monotones import (
    conversion_rate,
    majorizes,
    single_shot_noisy_transition,
    thermo_rate,
)
from .protocols import bipartite_register, deficit_bound, extracted_local_purity, run_protocol
from .quantumness import (
    OptimizerConfig,
    QuantumnessResult,
    deficit_one_way,
    deficit_zero_way,
    discord,
    discord_zero_way,
    generalized_deficit,
    multicopy_deficit,
    relent_to_cc,
    relent_to_cq,
)
from .states import validate


def _add_state(p, second: bool = False, ham: bool = False):
    p.add_argument("--state", required=True, help="path to a state JSON file")
    if second:
        p.add_argument("--state2", required=True, help="path to a second state")
    if ham:
        p.add_argument("--ham", required=True, help="path to a Hamiltonian JSON file")


def _add_optimizer(p):
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--grid", type=int, default=None, help="grid points per angle")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resourceforge",
        description="Resource-theory quantities for small quantum states.",
    )
    parser.add_argument(
        "--out", choices=("json", "tsv"), default="json", help="output format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="von Neumann entropy in bits")
    _add_state(p)
    p = sub.add_parser("relent", help="relative entropy S(state || state2)")
    _add_state(p, second=True)
    p = sub.add_parser("mutinfo", help="mutual information of a bipartite state")
    _add_state(p)
    p = sub.add_parser("negentropy", help="log2 d - S")
    _add_state(p)
    p = sub.add_parser("gibbs", help="Gibbs state of a Hamiltonian")
    p.add_argument("--ham", required=True)
    p = sub.add_parser("fgap", help="free-energy gap to the Gibbs state, in bits")
    _add_state(p, ham=True)

    for name, help_text in (
        ("discord", "discord via measurement optimization"),
        ("deficit", "one-way deficit via measurement optimization"),
        ("deficit0", "zero-way deficit (both sides measured)"),
        ("discord0", "zero-way discord (both sides measured)"),
        ("relent-cq", "relative-entropy distance to classical-on-A states"),
        ("relent-cc", "relative-entropy distance to classical-on-both states"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_state(p)
        _add_optimizer(p)

    p = sub.add_parser("gendeficit", help="deficit minimised over local embeddings")
    _add_state(p)
    _add_optimizer(p)
    p.add_argument("--extra-dim", type=int, default=0)

    p = sub.add_parser("multicopy", help="per-copy deficit of grouped copies")
    _add_state(p)
    _add_optimizer(p)
    p.add_argument("--copies", type=int, default=2)

    p = sub.add_parser("majorize", help="majorization test on two spectra")
    p.add_argument("--x", required=True, help="comma-separated spectrum")
    p.add_argument("--y", required=True, help="comma-separated spectrum")

    p = sub.add_parser("transition", help="single-shot noisy-operation transition")
    _add_state(p, second=True)

    p = sub.add_parser("rate", help="conversion rate from two resource contents")
    p.add_argument("--x", required=True, help="source content in bits")
    p.add_argument("--y", required=True, help="target content in bits")

    p = sub.add_parser("thermorate", help="thermodynamic conversion rate")
    _add_state(p, second=True, ham=True)

    p = sub.add_parser("protocol", help="run a protocol script on a bipartite state")
    _add_state(p)
    p.add_argument("--script", required=True, help="path to a script JSON file")
    p.add_argument("--epsilon", type=float, default=0.01)

    p = sub.add_parser("validate", help="check a state file")
    _add_state(p)
    return parser


def _optimizer_config(args) -> OptimizerConfig:
    kwargs = {}
    if args.restarts is not None:
        kwargs["restarts"] = args.restarts
    if args.grid is not None:
        kwargs["grid_points"] = args.grid
    if args.tol is not None:
        kwargs["tolerance"] = args.tol
    if args.seed is not None:
        kwargs["seed"] = args.seed
    return OptimizerConfig(**kwargs)


def _parse_spectrum(text: str) -> np.ndarray:
    try:
        values = [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise rfio.FileFormatError(f"bad spectrum {text!r}: {exc}") from exc
    if not values:
        raise rfio.FileFormatError(f"bad spectrum {text!r}: empty")
    return np.asarray(values)


def _parse_scalar(text: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise rfio.FileFormatError(f"bad number {text!r}") from exc


def _quantumness_json(result: QuantumnessResult) -> dict:
    if isinstance(result.argmin_measurement, tuple):
        measurement = {
            "A": rfio.measurement_to_json(result.argmin_measurement[0]),
            "B": rfio.measurement_to_json(result.argmin_measurement[1]),
        }
    else:
        measurement = rfio.measurement_to_json(result.argmin_measurement)
    out = {
        "value_bits": rfio.format_float(result.value),
        "measurement": measurement,
        "trace": [[i, rfio.format_float(v)] for i, v in result.trace],
    }
    if result.argmin_isometry is not None:
        out["isometry"] = rfio.matrix_to_json(result.argmin_isometry)
    return out


def _rate_json(result) -> dict:
    return {
        "rate": rfio.format_float(result.rate),
        "numerator_bits": rfio.format_float(result.numerator_bits),
        "denominator_bits": rfio.format_float(result.denominator_bits),
    }


def _dispatch(args) -> dict:
    cmd = args.command
    if cmd == "entropy":
        return {"bits": rfio.format_float(vn_entropy(rfio.load_state(args.state)))}
    if cmd == "relent":
        value = relative_entropy(
            rfio.load_state(args.state), rfio.load_state(args.state2)
        )
        return {"bits": rfio.format_float(value)}
    if cmd == "mutinfo":
        return {
            "bits": rfio.format_float(mutual_information(rfio.load_state(args.state)))
        }
    if cmd == "negentropy":
        return {"bits": rfio.format_float(negentropy(rfio.load_state(args.state)))}
    if cmd == "gibbs":
        return rfio.state_to_json(gibbs_state(rfio.load_hamiltonian(args.ham)))
    if cmd == "fgap":
        value = free_energy_gap(
            rfio.load_state(args.state), rfio.load_hamiltonian(args.ham)
        )
        return {"bits": rfio.format_float(value)}
    if cmd in ("discord", "deficit", "deficit0", "discord0", "relent-cq", "relent-cc"):
        rho = rfio.load_state(args.state)
        cfg = _optimizer_config(args)
        op = {
            "discord": discord,
            "deficit": deficit_one_way,
            "deficit0": deficit_zero_way,
            "discord0": discord_zero_way,
            "relent-cq": relent_to_cq,
            "relent-cc": relent_to_cc,
        }[cmd]
        return _quantumness_json(op(rho, cfg))
    if cmd == "gendeficit":
        rho = rfio.load_state(args.state)
        result = generalized_deficit(rho, args.extra_dim, _optimizer_config(args))
        return _quantumness_json(result)
    if cmd == "multicopy":
        rho = rfio.load_state(args.state)
        value = multicopy_deficit(rho, args.copies, _optimizer_config(args))
        return {"value_bits_per_copy": rfio.format_float(value)}
    if cmd == "majorize":
        x, y = _parse_spectrum(args.x), _parse_spectrum(args.y)
        return {"majorizes": majorizes(x, y)}
    if cmd == "transition":
        possible = single_shot_noisy_transition(
            rfio.load_state(args.state), rfio.load_state(args.state2)
        )
        return {"possible": possible}
    if cmd == "rate":
        return _rate_json(conversion_rate(_parse_scalar(args.x), _parse_scalar(args.y)))
    if cmd == "thermorate":
        result = thermo_rate(
            rfio.load_state(args.state),
            rfio.load_state(args.state2),
            rfio.load_hamiltonian(args.ham),
        )
        return _rate_json(result)
    if cmd == "protocol":
        rho = rfio.load_state(args.state)
        script = rfio.load_script(args.script)
        final = run_protocol(bipartite_register(rho), script)
        out = rfio.state_to_json(final.state)
        out["ownership"] = list(final.ownership)
        out["extracted_purity"] = extracted_local_purity(final, args.epsilon)
        if script.mode == "CLOCC":
            out["deficit_bound"] = rfio.format_float(
                deficit_bound(rho, script, args.epsilon)
            )
        return out
    if cmd == "validate":
        rho = rfio.load_state(args.state)
        return {"valid": True, "dims": list(rho.dims), "dimension": rho.dim}
    raise AssertionError(f"unhandled command {cmd}")


def _flatten(prefix: str, value, rows: list[tuple[str, str]]):
    if isinstance(value, dict):
        for key, item in value.items():
            _flatten(f"{prefix}.{key}" if prefix else str(key), item, rows)
    elif isinstance(value, (list, tuple)):
        rows.append((prefix, json.dumps(value, separators=(",", ":"))))
    elif isinstance(value, bool):
        rows.append((prefix, "true" if value else "false"))
    else:
        rows.append((prefix, str(value)))


def render(result: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, separators=(", ", ": "))
    rows: list[tuple[str, str]] = []
    _flatten("", result, rows)
    return "\n".join(f"{key}\t{value}" for key, value in rows)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = _dispatch(args)
    except DomainError as exc:
        message = str(exc)
        name = type(exc).__name__
        print(f"{name}: {message}" if message else name, file=sys.stderr)
        return 1
    except (rfio.FileFormatError, OSError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(render(result, args.out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
