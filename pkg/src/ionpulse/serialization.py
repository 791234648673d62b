"""JSON file formats for schedules, targets, states, and reports.

Complex numbers serialize as [re, im] pairs.  Schedule schema (field
names are stable):

    {"params": {"eta": f, "omega_carrier_rad_s": f, "fock_dim": n},
     "pulses": [{"kind": "red"|"blue"|"carrier", "k": n,
                 "phase_rad": f, "duration_s": f}, ...],
     "provenance": s}

Target schema is a tagged union on "variant": fock | superposition |
phase_state | coherent | even_coherent | odd_coherent | bell |
entangled_carrier | alternating.  All file writes are atomic
(write-temp-then-rename).
"""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .core import PhysicalParams
from .states import JointState, Pulse, PulseSchedule
from .synthesis import (
    AlternatingTarget,
    BellTarget,
    CoherentTarget,
    EntangledCarrierTarget,
    FockTarget,
    ParityCoherentTarget,
    PhaseStateTarget,
    SuperpositionTarget,
    SynthesisReport,
    TargetState,
)

__all__ = [
    "atomic_write_text",
    "complex_pair",
    "parse_complex",
    "params_to_dict",
    "params_from_dict",
    "schedule_to_dict",
    "schedule_from_dict",
    "save_schedule",
    "load_schedule",
    "target_to_dict",
    "target_from_dict",
    "load_target",
    "state_to_dict",
    "state_from_dict",
    "load_state",
    "report_to_dict",
]


def atomic_write_text(path: str, text: str):
    """Whole-file atomic write: temp file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def complex_pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def parse_complex(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ValueError(f"expected a number or [re, im] pair, got {value!r}")


# ---------------------------------------------------------------------------
# Physical parameters and schedules


def params_to_dict(params: PhysicalParams) -> dict:
    return {
        "eta": params.eta,
        "omega_carrier_rad_s": params.omega_carrier,
        "fock_dim": params.fock_dim,
    }


def params_from_dict(data: dict) -> PhysicalParams:
    return PhysicalParams(
        eta=float(data["eta"]),
        omega_carrier=float(data["omega_carrier_rad_s"]),
        fock_dim=int(data["fock_dim"]),
    )


def schedule_to_dict(schedule: PulseSchedule) -> dict:
    return {
        "params": params_to_dict(schedule.params),
        "pulses": [
            {
                "kind": p.kind,
                "k": p.k,
                "phase_rad": p.phase,
                "duration_s": p.duration,
            }
            for p in schedule.pulses
        ],
        "provenance": schedule.provenance,
    }


def schedule_from_dict(data: dict) -> PulseSchedule:
    params = params_from_dict(data["params"])
    pulses = tuple(
        Pulse(
            kind=str(p["kind"]),
            k=int(p["k"]),
            phase=float(p["phase_rad"]),
            duration=float(p["duration_s"]),
        )
        for p in data["pulses"]
    )
    return PulseSchedule(params, pulses, provenance=str(data.get("provenance", "")))


def save_schedule(path: str, schedule: PulseSchedule):
    atomic_write_text(path, json.dumps(schedule_to_dict(schedule), indent=2) + "\n")


def load_schedule(path: str) -> PulseSchedule:
    with open(path) as fh:
        return schedule_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# Targets


def target_to_dict(target: TargetState) -> dict:
    if isinstance(target, FockTarget):
        return {"variant": "fock", "n": target.n}
    if isinstance(target, SuperpositionTarget):
        return {
            "variant": "superposition",
            "amplitudes": [complex_pair(a) for a in target.amplitudes],
        }
    if isinstance(target, PhaseStateTarget):
        return {"variant": "phase_state", "n_max": target.n_max, "theta_rad": target.theta}
    if isinstance(target, CoherentTarget):
        return {"variant": "coherent", "alpha": complex_pair(target.alpha), "n_max": target.n_max}
    if isinstance(target, ParityCoherentTarget):
        return {
            "variant": f"{target.parity}_coherent",
            "alpha": complex_pair(target.alpha),
            "n_max": target.n_max,
        }
    if isinstance(target, BellTarget):
        return {"variant": "bell"}
    if isinstance(target, EntangledCarrierTarget):
        return {
            "variant": "entangled_carrier",
            "amplitudes": [complex_pair(a) for a in target.amplitudes],
            "carrier_duration_s": target.carrier_duration,
            "carrier_phase_rad": target.carrier_phase,
        }
    if isinstance(target, AlternatingTarget):
        return {
            "variant": "alternating",
            "carrier_duration_s": target.carrier_duration,
            "carrier_phase_rad": target.carrier_phase,
            "sideband_pulses": [
                {"duration_s": t, "phase_rad": p} for t, p in target.sideband_pulses
            ],
        }
    raise TypeError(f"unknown target {type(target).__name__}")


def target_from_dict(data: dict) -> TargetState:
    variant = data.get("variant")
    if variant == "fock":
        return FockTarget(n=int(data["n"]))
    if variant == "superposition":
        return SuperpositionTarget(
            amplitudes=tuple(parse_complex(a) for a in data["amplitudes"])
        )
    if variant == "phase_state":
        return PhaseStateTarget(n_max=int(data["n_max"]), theta=float(data["theta_rad"]))
    if variant == "coherent":
        return CoherentTarget(alpha=parse_complex(data["alpha"]), n_max=int(data["n_max"]))
    if variant in ("even_coherent", "odd_coherent"):
        return ParityCoherentTarget(
            alpha=parse_complex(data["alpha"]),
            n_max=int(data["n_max"]),
            parity=variant.split("_")[0],
        )
    if variant == "bell":
        return BellTarget()
    if variant == "entangled_carrier":
        return EntangledCarrierTarget(
            amplitudes=tuple(parse_complex(a) for a in data["amplitudes"]),
            carrier_duration=float(data["carrier_duration_s"]),
            carrier_phase=float(data["carrier_phase_rad"]),
        )
    if variant == "alternating":
        return AlternatingTarget(
            carrier_duration=float(data["carrier_duration_s"]),
            carrier_phase=float(data["carrier_phase_rad"]),
            sideband_pulses=tuple(
                (float(p["duration_s"]), float(p["phase_rad"]))
                for p in data["sideband_pulses"]
            ),
        )
    raise ValueError(f"unknown target variant {variant!r}")


def load_target(path: str) -> TargetState:
    with open(path) as fh:
        return target_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# States and reports


def state_to_dict(state: JointState) -> dict:
    return {
        "fock_dim": state.dim,
        "amplitudes": [complex_pair(a) for a in state.amplitudes],
    }


def state_from_dict(data: dict) -> JointState:
    amps = np.array([parse_complex(a) for a in data["amplitudes"]], dtype=complex)
    if "fock_dim" in data and int(data["fock_dim"]) * 2 != amps.size:
        raise ValueError(
            f"fock_dim {data['fock_dim']} inconsistent with {amps.size} amplitudes"
        )
    return JointState(amps)


def load_state(path: str) -> JointState:
    with open(path) as fh:
        return state_from_dict(json.load(fh))


def report_to_dict(report: SynthesisReport) -> dict:
    final = report.predicted_final
    return {
        "schedule": schedule_to_dict(report.schedule),
        "pulses": [
            {
                "index": i,
                "kind": p.kind,
                "k": p.k,
                "phase_rad": p.phase,
                "duration_s": p.duration,
            }
            for i, p in enumerate(report.schedule.pulses)
        ],
        "predicted_final": state_to_dict(final),
        "populations": [
            {"m": m, "state": label, "population": final.population(m, s)}
            for m in range(final.dim)
            for s, label in ((0, "g"), (1, "e"))
        ],
        "fidelity_vs_target": report.fidelity_vs_target,
        "exact_phase_fidelity": report.exact_phase_fidelity,
        "oracle_fidelity": report.oracle_fidelity,
        "total_duration_s": report.total_duration_s,
        "target_rotation_rad": report.target_rotation_rad,
        "final_internal_state": report.final_internal_state,
        "truncation_overlap": report.truncation_overlap,
    }
