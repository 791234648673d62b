"""Independent verification by Hamiltonian matrix exponentiation.

The interaction-picture coupling for each laser tuning is assembled
term-by-term from truncated ladder-operator matrices,

    red k:    pref * sigma+ . sum_j (-eta^2)^j  adag^j a^(j+k) / (j! (j+k)!)  + h.c.
    blue k:   pref * sigma+ . sum_j (-eta^2)^j  adag^(j+k) a^j / (j! (j+k)!)  + h.c.
    carrier:  pref * sigma+ . sum_j (-eta^2)^j  adag^j a^j     / (j!)^2       + h.c.

with pref = (W/2) (i eta)^k exp(-eta^2/2 - i phi).  No closed-form Rabi
frequency enters the construction; that the coupling magnitudes equal the
W_{m,k} of ionpulse.core is asserted in tests, which is precisely what
makes this an independent check of the pulse operators.

States are propagated through exp(-i H t) via the eigendecomposition of
the Hermitian matrix, which stays stable for arbitrarily long durations
(slow high-order sidebands need t of order seconds).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .core import PhysicalParams, ipow
from .states import JointState, PulseSchedule, fidelity, run_schedule
from .synthesis import SynthesisReport

__all__ = [
    "HamiltonianMatrix",
    "build_hamiltonian",
    "propagate",
    "verify_schedule",
    "verify_report",
]

_SERIES_TOL = 1e-16
_HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Interaction Hamiltonian H/hbar (rad/s) on the 2*D truncated space."""

    entries: np.ndarray
    kind: str
    k: int
    phase: float
    series_terms: int

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


def build_hamiltonian(
    params: PhysicalParams,
    kind: str,
    k: int,
    phase: float,
    min_terms: int = 0,
) -> HamiltonianMatrix:
    """Assemble the coupling matrix for one laser tuning.

    The j-series stops once the next term contributes no matrix element
    above 1e-16 (ladder powers beyond the truncation vanish identically,
    so j = D is a hard cap).  min_terms forces additional terms, which is
    useful for checking that the cutoff is converged.
    """
    if kind not in ("red", "blue", "carrier"):
        raise ValueError(f"unknown pulse kind {kind!r}")
    if kind == "carrier":
        if k != 0:
            raise ValueError(f"carrier pulses have k = 0, got k={k}")
    elif not 1 <= k < params.fock_dim:
        raise ValueError(
            f"sideband order k={k} needs 1 <= k < fock_dim={params.fock_dim}"
        )
    dim = params.fock_dim
    x = params.eta * params.eta
    lower = np.diag(np.sqrt(np.arange(1.0, dim)), 1)  # annihilation
    raise_ = lower.T

    if kind == "blue":
        term_op = np.linalg.matrix_power(raise_, k)
    elif kind == "red":
        term_op = np.linalg.matrix_power(lower, k)
    else:
        term_op = np.eye(dim)

    series = np.zeros((dim, dim))
    coeff = 1.0 / math.factorial(k)
    j = 0
    terms_used = 0
    while j <= dim:
        term = coeff * term_op
        if j > 0 and terms_used >= min_terms and np.max(np.abs(term)) < _SERIES_TOL:
            break
        series += term
        terms_used += 1
        term_op = raise_ @ term_op @ lower
        coeff *= -x / ((j + 1) * (j + k + 1))
        j += 1

    pref = (
        (params.omega_carrier / 2.0)
        * ipow(k)
        * (params.eta**k)
        * cmath.exp(-x / 2.0 - 1j * phase)
    )
    sigma_plus = np.array([[0.0, 0.0], [1.0, 0.0]])  # |e><g| in (g, e) order
    half = pref * np.kron(series, sigma_plus)
    entries = half + half.conj().T
    return HamiltonianMatrix(entries, kind, k, phase, terms_used)


def _propagate_amplitudes(entries: np.ndarray, amps: np.ndarray, duration: float) -> np.ndarray:
    evals, evecs = np.linalg.eigh(entries)
    return evecs @ (np.exp(-1j * evals * duration) * (evecs.conj().T @ amps))


def propagate(ham: HamiltonianMatrix, state: JointState, duration: float) -> JointState:
    """exp(-i H t) |state> via eigendecomposition; norm preserved to 1e-11."""
    entries = ham.entries
    scale = float(np.max(np.abs(entries))) if entries.size else 0.0
    if ham.hermiticity_residual > _HERMITICITY_TOL * (1.0 + scale):
        raise ValueError("Hamiltonian is not Hermitian")
    if entries.shape != (2 * state.dim, 2 * state.dim):
        raise ValueError(
            f"Hamiltonian shape {entries.shape} does not match state dim {state.dim}"
        )
    if duration < 0.0:
        raise ValueError(f"duration must be >= 0, got {duration}")
    return JointState(_propagate_amplitudes(entries, state.amplitudes, duration))


def verify_schedule(initial: JointState, schedule: PulseSchedule) -> float:
    """Fidelity (global phase discarded) of closed-form vs oracle evolution.

    The closed-form path runs the 2x2-block pulse operators; the oracle
    path rebuilds each pulse's Hamiltonian and matrix-exponentiates.
    """
    closed = run_schedule(initial, schedule)
    amps = initial.amplitudes
    for pulse in schedule.pulses:
        ham = build_hamiltonian(schedule.params, pulse.kind, pulse.k, pulse.phase)
        amps = _propagate_amplitudes(ham.entries, amps, pulse.duration)
    return fidelity(closed, JointState(amps))


def verify_report(report: SynthesisReport, initial: JointState | None = None) -> SynthesisReport:
    """Return a copy of the report with oracle_fidelity filled in."""
    if initial is None:
        initial = JointState.ground(report.schedule.params.fock_dim)
    return replace(report, oracle_fidelity=verify_schedule(initial, report.schedule))
