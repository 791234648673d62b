"""Command-line interface: rabi | synthesize | simulate | verify.

Exit codes: 0 success, 1 verification/fidelity failure, 2 input error.
Input errors emit a machine-readable JSON object on stderr.  Number
formatting is locale-independent ('.' decimal separator).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .core import (
    DEFAULT_ETA,
    DEFAULT_OMEGA_RAD_S,
    PhysicalParams,
    _rabi,
)
from .oracle import build_hamiltonian, verify_schedule
from .serialization import (
    atomic_write_text,
    load_schedule,
    load_state,
    load_target,
    report_to_dict,
    schedule_to_dict,
    state_to_dict,
)
from .states import JointState, fidelity, run_schedule
from .synthesis import (
    AlternatingTarget,
    compile_target,
    default_fock_dim,
    target_state_vector,
)

# Lamb-Dicke parameters shown in the standard coupling-strength table.
RABI_ETA_SET = (0.202, 0.25, 0.35, 0.5, 0.9)

DEFAULT_SYNTH_TOLERANCE = 1e-9
DEFAULT_VERIFY_TOLERANCE = 1e-8


@dataclass
class RunConfig:
    """Resolved common options for one CLI invocation."""

    eta: float | None
    omega: float
    fock_dim: int | None
    out: str | None
    fmt: str | None
    tolerance: float | None
    seed: int

    def __post_init__(self):
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.eta is not None and not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")


def _config(args) -> RunConfig:
    return RunConfig(
        eta=args.eta,
        omega=args.omega_rad_s,
        fock_dim=args.fock_dim,
        out=args.out,
        fmt=args.format,
        tolerance=args.tolerance,
        seed=args.seed,
    )


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--eta", type=float, default=None, help="Lamb-Dicke parameter")
    parser.add_argument(
        "--omega-rad-s",
        type=float,
        default=DEFAULT_OMEGA_RAD_S,
        help="carrier Rabi frequency in rad/s",
    )
    parser.add_argument("--fock-dim", type=int, default=None, help="Fock truncation dimension")
    parser.add_argument("--out", default=None, help="output file (stdout when omitted)")
    parser.add_argument("--format", choices=("json", "csv"), default=None, help="output format")
    parser.add_argument("--tolerance", type=float, default=None, help="fidelity deviation tolerance")
    parser.add_argument("--seed", type=int, default=0, help="seed echoed into outputs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ionpulse",
        description="Compile, simulate, and verify sideband pulse schedules for a trapped ion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_rabi = sub.add_parser("rabi", help="tabulate sideband Rabi frequencies")
    p_rabi.add_argument("--m-max", type=int, default=0, help="largest Fock index (-1 for none)")
    p_rabi.add_argument("--k-max", type=int, default=10, help="largest sideband order (-1 for none)")
    _add_common(p_rabi)

    p_syn = sub.add_parser("synthesize", help="compile a target state into a pulse schedule")
    p_syn.add_argument("--target", required=True, help="target JSON file")
    p_syn.add_argument("--report", default=None, help="also write the report JSON here")
    _add_common(p_syn)

    p_sim = sub.add_parser("simulate", help="run a schedule and print the final state")
    p_sim.add_argument("--schedule", required=True, help="schedule JSON file")
    p_sim.add_argument("--initial", default="ground", help="'ground' or a state JSON file")
    p_sim.add_argument("--trace", action="store_true", help="include intermediate states")
    _add_common(p_sim)

    p_ver = sub.add_parser("verify", help="check a schedule against the Hamiltonian oracle")
    p_ver.add_argument("--schedule", required=True, help="schedule JSON file")
    p_ver.add_argument("--target", default=None, help="optional target JSON to also check")
    _add_common(p_ver)
    return parser


def _emit(text: str, out: str | None):
    if out:
        atomic_write_text(out, text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _fail(kind: str, message: str, **extra) -> int:
    payload = {"error": {"type": kind, "message": message, **extra}}
    sys.stderr.write(json.dumps(payload) + "\n")
    return 2


def cmd_rabi(args) -> int:
    cfg = _config(args)
    etas = [cfg.eta] if cfg.eta is not None else list(RABI_ETA_SET)
    rows = []
    for eta in etas:
        for m in range(max(args.m_max, -1) + 1):
            for k in range(max(args.k_max, -1) + 1):
                value = _rabi(eta, cfg.omega, m, k)
                rows.append(
                    {
                        "eta": eta,
                        "m": m,
                        "k": k,
                        "rabi_rad_s": value,
                        "rabi_over_omega": value / cfg.omega,
                    }
                )
    fmt = cfg.fmt or "csv"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["eta", "m", "k", "rabi_rad_s", "rabi_over_omega"])
        for r in rows:
            writer.writerow(
                [repr(r["eta"]), r["m"], r["k"], repr(r["rabi_rad_s"]), repr(r["rabi_over_omega"])]
            )
        _emit(buf.getvalue(), cfg.out)
    else:
        _emit(json.dumps({"seed": cfg.seed, "rows": rows}, indent=2), cfg.out)
    return 0


def cmd_synthesize(args) -> int:
    cfg = _config(args)
    if cfg.fmt == "csv":
        return _fail("format", "synthesize emits JSON only")
    target = load_target(args.target)
    fock_dim = cfg.fock_dim if cfg.fock_dim is not None else default_fock_dim(target)
    params = PhysicalParams(
        eta=cfg.eta if cfg.eta is not None else DEFAULT_ETA,
        omega_carrier=cfg.omega,
        fock_dim=fock_dim,
    )
    report = compile_target(target, params)
    report_doc = report_to_dict(report)
    report_doc["seed"] = cfg.seed
    if cfg.out:
        atomic_write_text(cfg.out, json.dumps(schedule_to_dict(report.schedule), indent=2) + "\n")
    if args.report:
        atomic_write_text(args.report, json.dumps(report_doc, indent=2) + "\n")
    sys.stdout.write(json.dumps(report_doc, indent=2) + "\n")
    tolerance = cfg.tolerance if cfg.tolerance is not None else DEFAULT_SYNTH_TOLERANCE
    return 0 if report.fidelity_vs_target >= 1.0 - tolerance else 1


def cmd_simulate(args) -> int:
    cfg = _config(args)
    schedule = load_schedule(args.schedule)
    if cfg.fock_dim is not None and cfg.fock_dim != schedule.params.fock_dim:
        return _fail("params", "--fock-dim conflicts with the schedule's fock_dim")
    if args.initial == "ground":
        initial = JointState.ground(schedule.params.fock_dim)
    else:
        initial = load_state(args.initial)
    if args.trace:
        final, trace = run_schedule(initial, schedule, keep_trace=True)
    else:
        final, trace = run_schedule(initial, schedule), None

    fmt = cfg.fmt or "json"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["m", "state", "re", "im", "population"])
        for m in range(final.dim):
            for s, label in ((0, "g"), (1, "e")):
                a = final.amplitude(m, s)
                writer.writerow([m, label, repr(a.real), repr(a.imag), repr(final.population(m, s))])
        _emit(buf.getvalue(), cfg.out)
        return 0
    doc = {
        "seed": cfg.seed,
        "final": state_to_dict(final),
        "populations": [
            {"m": m, "state": label, "population": final.population(m, s)}
            for m in range(final.dim)
            for s, label in ((0, "g"), (1, "e"))
        ],
    }
    if trace is not None:
        doc["trace"] = [state_to_dict(s) for s in trace]
    _emit(json.dumps(doc, indent=2), cfg.out)
    return 0


def cmd_verify(args) -> int:
    cfg = _config(args)
    if cfg.fmt == "csv":
        return _fail("format", "verify emits JSON only")
    schedule = load_schedule(args.schedule)
    initial = JointState.ground(schedule.params.fock_dim)
    tolerance = cfg.tolerance if cfg.tolerance is not None else DEFAULT_VERIFY_TOLERANCE

    residuals = [
        build_hamiltonian(schedule.params, p.kind, p.k, p.phase).hermiticity_residual
        for p in schedule.pulses
    ]
    oracle_fid = verify_schedule(initial, schedule)
    passed = oracle_fid >= 1.0 - tolerance

    doc = {
        "seed": cfg.seed,
        "oracle_fidelity": oracle_fid,
        "hermiticity_residuals": residuals,
        "tolerance": tolerance,
    }
    if args.target is not None:
        target = load_target(args.target)
        if isinstance(target, AlternatingTarget):
            return _fail("target", "alternating targets are forward-generated; nothing to verify against")
        target_vec = target_state_vector(target, schedule.params)
        final = run_schedule(initial, schedule)
        target_fid = fidelity(target_vec, final)
        doc["target_fidelity"] = target_fid
        passed = passed and target_fid >= 1.0 - tolerance
    doc["pass"] = passed
    _emit(json.dumps(doc, indent=2), cfg.out)
    return 0 if passed else 1


_COMMANDS = {
    "rabi": cmd_rabi,
    "synthesize": cmd_synthesize,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
}

_INPUT_ERRORS = (
    ValueError,
    ArithmeticError,
    KeyError,
    TypeError,
    OSError,
    json.JSONDecodeError,
)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _INPUT_ERRORS as exc:
        extra = {}
        if getattr(exc, "pulse_index", None) is not None:
            extra["pulse_index"] = exc.pulse_index
        return _fail(type(exc).__name__, str(exc), **extra)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
