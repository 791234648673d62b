"""Truncated Fock x two-level state vectors and exact square-pulse operators.

States live on the 2*D dimensional space spanned by |m>|g> and |m>|e> for
m = 0..D-1.  Amplitudes are stored interleaved with the internal index
fastest: amplitudes[2*m + s] with s = 0 (ground) or 1 (excited).  This
layout is part of the on-disk state format and must not change.

Each pulse decomposes into independent 2x2 rotations of coupled pairs:

    carrier:  (|m>|g>, |m>|e>)        rotation angle W_{m,0} t
    red k:    (|m+k>|g>, |m>|e>)      rotation angle W_{m,k} t
    blue k:   (|m>|g>, |m+k>|e>)      rotation angle W_{m,k} t

with the block [[cos(W t), C~], [C, cos(W t)]] acting on (lower, upper) of
the pair, C from ionpulse.core.  The cosine is signed: past a quarter
Rabi period the survival amplitude goes negative, which the compact
sqrt(1 - |C|^2) notation hides but the Schrodinger dynamics (and the
matrix-exponential oracle) require.

A sideband pulse of order k would push |m>|e> (red) or |m>|g> (blue) with
m >= D - k past the truncation boundary.  Such states must carry zero
amplitude before the pulse is applied ("support guard"); this keeps every
operator exactly unitary on the guarded subspace instead of silently
clipping probability.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import PhysicalParams, _rabi, ipow

__all__ = [
    "GROUND",
    "EXCITED",
    "JointState",
    "Pulse",
    "PulseSchedule",
    "TruncationOverflowError",
    "apply_pulse_amplitudes",
    "apply_pulse",
    "apply_carrier",
    "apply_red",
    "apply_blue",
    "run_schedule",
    "fidelity",
]

GROUND = 0
EXCITED = 1

NORM_TOL = 1e-12
GUARD_TOL = 1e-12

TWO_PI = 2.0 * math.pi


class TruncationOverflowError(ValueError):
    """A sideband pulse would raise amplitude past the Fock truncation."""

    def __init__(self, message: str, pulse_index: int | None = None):
        super().__init__(message)
        self.pulse_index = pulse_index


@dataclass(frozen=True)
class Pulse:
    """One square laser pulse: sideband kind/order, initial phase, duration.

    kind is "red", "blue" or "carrier"; k = 0 iff carrier.  The phase is
    normalized into [0, 2 pi) on construction.
    """

    kind: str
    k: int
    phase: float
    duration: float

    def __post_init__(self):
        if self.kind not in ("red", "blue", "carrier"):
            raise ValueError(f"unknown pulse kind {self.kind!r}")
        if self.kind == "carrier":
            if self.k != 0:
                raise ValueError(f"carrier pulses have k = 0, got k={self.k}")
        elif self.k < 1:
            raise ValueError(f"{self.kind} sideband order must be >= 1, got k={self.k}")
        if not (self.duration >= 0.0 and math.isfinite(self.duration)):
            raise ValueError(f"duration must be finite and >= 0, got {self.duration}")
        if not math.isfinite(self.phase):
            raise ValueError(f"phase must be finite, got {self.phase}")
        object.__setattr__(self, "phase", self.phase % TWO_PI)

    @classmethod
    def carrier(cls, phase: float, duration: float) -> "Pulse":
        return cls("carrier", 0, phase, duration)

    @classmethod
    def red(cls, k: int, phase: float, duration: float) -> "Pulse":
        return cls("red", k, phase, duration)

    @classmethod
    def blue(cls, k: int, phase: float, duration: float) -> "Pulse":
        return cls("blue", k, phase, duration)


@dataclass(frozen=True)
class PulseSchedule:
    """Ordered pulse list plus the physical parameters it was compiled for.

    provenance is a free-text label of the producing routine.  Schedules
    may be empty (a target already equal to the initial state compiles to
    no pulses).
    """

    params: PhysicalParams
    pulses: tuple[Pulse, ...]
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "pulses", tuple(self.pulses))

    @property
    def total_duration(self) -> float:
        return float(sum(p.duration for p in self.pulses))

    def __len__(self) -> int:
        return len(self.pulses)


class JointState:
    """Normalized complex amplitude vector over |m> x {|g>, |e>}.

    Immutable value type; the backing array is read-only.  Construction
    rejects vectors whose norm deviates from 1 by more than 1e-12.
    """

    __slots__ = ("_amps",)

    def __init__(self, amplitudes):
        arr = np.array(amplitudes, dtype=complex)
        if arr.ndim != 1 or arr.size < 4 or arr.size % 2 != 0:
            raise ValueError(
                f"amplitudes must be a flat vector of even length >= 4, got shape {arr.shape}"
            )
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm deviates from 1 by {abs(norm - 1.0):.3e}")
        arr.setflags(write=False)
        object.__setattr__(self, "_amps", arr)

    @classmethod
    def ground(cls, dim: int) -> "JointState":
        """|0>|g> on a dim-level Fock space."""
        return cls.fock(0, dim)

    @classmethod
    def fock(cls, n: int, dim: int, internal: int = GROUND) -> "JointState":
        """|n>|g> or |n>|e>."""
        if not 0 <= n < dim:
            raise ValueError(f"Fock index {n} outside truncation 0..{dim - 1}")
        if internal not in (GROUND, EXCITED):
            raise ValueError(f"internal index must be 0 (g) or 1 (e), got {internal}")
        amps = np.zeros(2 * dim, dtype=complex)
        amps[2 * n + internal] = 1.0
        return cls(amps)

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    @property
    def dim(self) -> int:
        return self._amps.size // 2

    def amplitude(self, m: int, s: int) -> complex:
        return complex(self._amps[2 * m + s])

    def population(self, m: int, s: int) -> float:
        return float(abs(self._amps[2 * m + s]) ** 2)

    def populations(self) -> np.ndarray:
        """(dim, 2) array of |amplitude|^2, columns (g, e)."""
        return np.abs(self._amps.reshape(self.dim, 2)) ** 2

    def __repr__(self) -> str:
        return f"JointState(dim={self.dim})"


def _guard_indices(kind: str, k: int, dim: int) -> list[int]:
    """Flat indices that must be empty before a (kind, k) pulse."""
    if kind == "carrier" or k == 0:
        return []
    s = EXCITED if kind == "red" else GROUND
    return [2 * m + s for m in range(dim - k, dim)]


def _check_guard(amps: np.ndarray, kind: str, k: int, dim: int, pulse_index=None):
    bad = [i for i in _guard_indices(kind, k, dim) if abs(amps[i]) > GUARD_TOL]
    if bad:
        m, s = bad[0] // 2, bad[0] % 2
        label = "e" if s == EXCITED else "g"
        raise TruncationOverflowError(
            f"{kind} k={k} pulse would push |{m}>|{label}> past truncation D={dim}; "
            "increase fock_dim",
            pulse_index=pulse_index,
        )


def apply_pulse_amplitudes(
    amps: np.ndarray,
    params: PhysicalParams,
    pulse: Pulse,
    pulse_index: int | None = None,
) -> np.ndarray:
    """Raw linear pulse action on an amplitude vector.

    Does not require or enforce normalization (the action is linear), but
    does enforce the truncation support guard.  Returns a new array.
    """
    dim = params.fock_dim
    amps = np.asarray(amps, dtype=complex)
    if amps.shape != (2 * dim,):
        raise ValueError(f"amplitude vector must have shape ({2 * dim},), got {amps.shape}")
    kind, k = pulse.kind, pulse.k
    _check_guard(amps, kind, k, dim, pulse_index)
    out = amps.copy()
    phase_unit = cmath.exp(-1j * pulse.phase)
    unit = -1j if kind == "carrier" else ipow(k - 1)
    for m in range(dim - k):
        w = _rabi(params.eta, params.omega_carrier, m, k)
        angle = w * pulse.duration
        c = unit * phase_unit * math.sin(angle)
        survive = math.cos(angle)
        if kind == "carrier":
            lo, up = 2 * m + GROUND, 2 * m + EXCITED
        elif kind == "red":
            lo, up = 2 * (m + k) + GROUND, 2 * m + EXCITED
        else:
            lo, up = 2 * m + GROUND, 2 * (m + k) + EXCITED
        a_lo, a_up = amps[lo], amps[up]
        out[lo] = survive * a_lo - c.conjugate() * a_up
        out[up] = c * a_lo + survive * a_up
    return out


def apply_pulse(state: JointState, params: PhysicalParams, pulse: Pulse) -> JointState:
    """Apply one pulse to a normalized state; norm is preserved to 1e-12."""
    if state.dim != params.fock_dim:
        raise ValueError(f"state dim {state.dim} != params fock_dim {params.fock_dim}")
    return JointState(apply_pulse_amplitudes(state.amplitudes, params, pulse))


def apply_carrier(
    state: JointState, params: PhysicalParams, phase: float, duration: float
) -> JointState:
    """Conditional internal rotation: each |m> block rotates by W_{m,0} t."""
    return apply_pulse(state, params, Pulse.carrier(phase, duration))


def apply_red(
    state: JointState, params: PhysicalParams, k: int, phase: float, duration: float
) -> JointState:
    """k-th red sideband: mixes |m+k>|g> with |m>|e>; |m>|g>, m < k, is fixed."""
    return apply_pulse(state, params, Pulse.red(k, phase, duration))


def apply_blue(
    state: JointState, params: PhysicalParams, k: int, phase: float, duration: float
) -> JointState:
    """k-th blue sideband: mixes |m>|g> with |m+k>|e>; |m>|e>, m < k, is fixed."""
    return apply_pulse(state, params, Pulse.blue(k, phase, duration))


def run_schedule(
    initial: JointState, schedule: PulseSchedule, keep_trace: bool = False
):
    """Left-to-right application of a schedule.

    Returns the final JointState, or (final, trace) with the state after
    each pulse when keep_trace is set.  Truncation-overflow errors carry
    the index of the offending pulse.
    """
    if initial.dim != schedule.params.fock_dim:
        raise ValueError(
            f"initial dim {initial.dim} != schedule fock_dim {schedule.params.fock_dim}"
        )
    amps = initial.amplitudes
    trace: list[JointState] = []
    for i, pulse in enumerate(schedule.pulses):
        amps = apply_pulse_amplitudes(amps, schedule.params, pulse, pulse_index=i)
        if keep_trace:
            trace.append(JointState(amps))
    final = JointState(amps)
    if keep_trace:
        return final, trace
    return final


def fidelity(a: JointState, b: JointState, up_to_global_phase: bool = True) -> float:
    """Overlap fidelity of two pure states, in [0, 1].

    Default |<a|b>|^2 discards the unobservable global phase.  With
    up_to_global_phase=False the overlap is taken as max(0, Re<a|b>)^2,
    which is 1 only when the states match including phase.
    """
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")
    ov = complex(np.vdot(a.amplitudes, b.amplitudes))
    val = abs(ov) ** 2 if up_to_global_phase else max(0.0, ov.real) ** 2
    return min(1.0, float(val))
