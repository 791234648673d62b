"""Trap/laser parameters, sideband Rabi frequencies, and pulse coefficients.

A classical laser tuned to the carrier (w_L = w0) or to the k-th red/blue
sideband (w_L = w0 -/+ k*w_trap) of a harmonically trapped two-level ion
couples |m>|e| <-> |m+k>|g> (red) or |m>|g> <-> |m+k>|e> (blue) with the
all-orders Rabi frequency

    W_{m,k} = (W/2) eta^k exp(-eta^2/2) sqrt((m+k)!/m!)
              * sum_{j=0}^{m} (-eta^2)^j C(m,j) / (j+k)!

where eta is the Lamb-Dicke parameter and W the carrier Rabi frequency.
The sum is equivalent to the associated-Laguerre closed form
(W/2) exp(-eta^2/2) eta^k sqrt(m!/(m+k)!) L_m^k(eta^2), which the test
suite uses as an independent cross-check.  All angular frequencies are in
rad/s, durations in seconds.

A square pulse of duration t and initial laser phase phi acts on each
coupled pair as a 2x2 rotation built from the transition amplitude

    red/blue:  C = i^(k-1) exp(-i phi) sin(W_{m,k} t)
    carrier:   C = -i      exp(-i phi) sin(W_{m,0} t)

and its back-transition partner C~ = -conj(C).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "DEFAULT_ETA",
    "DEFAULT_OMEGA_RAD_S",
    "DEFAULT_TRAP_FREQ_RAD_S",
    "DEFAULT_ATOMIC_FREQ_RAD_S",
    "PhysicalParams",
    "RabiValue",
    "PulseCoefficient",
    "RabiUnderflowError",
    "rabi_frequency",
    "pulse_coefficient",
    "shortest_duration_for",
    "lamb_dicke_parameter",
]

# Defaults mirror a 40Ca+ quadrupole-transition trap (729 nm, 135 kHz trap).
DEFAULT_ETA = 0.25
DEFAULT_OMEGA_RAD_S = 5.0e4
DEFAULT_TRAP_FREQ_RAD_S = 2.0 * math.pi * 135.0e3
DEFAULT_ATOMIC_FREQ_RAD_S = 2.0 * math.pi * 4.11e14

_HBAR = 1.054571817e-34  # J s
_SPEED_OF_LIGHT = 299792458.0  # m / s

# Smallest positive normal double; couplings below this raise.
_LOG_MIN_NORMAL = math.log(2.2250738585072014e-308)

_PULSE_KINDS = ("red", "blue", "carrier")

# Exact integer powers of i and -i (complex ** drifts for large exponents).
_I_POW = (1 + 0j, 1j, -1 + 0j, -1j)


def ipow(n: int) -> complex:
    """i**n, exact for any integer n."""
    return _I_POW[n % 4]


def neg_ipow(n: int) -> complex:
    """(-i)**n, exact for any integer n."""
    return _I_POW[-n % 4]


class RabiUnderflowError(ArithmeticError):
    """Coupling magnitude below the representable double range.

    Carries ``log_magnitude``, the natural log of the unrepresentable
    |W_{m,k}| in rad/s.
    """

    def __init__(self, m: int, k: int, log_magnitude: float):
        super().__init__(
            f"Rabi frequency for m={m}, k={k} underflows double precision "
            f"(ln|W| = {log_magnitude:.2f})"
        )
        self.m = m
        self.k = k
        self.log_magnitude = log_magnitude


@dataclass(frozen=True)
class PhysicalParams:
    """Trap and laser constants for one compiled schedule.

    eta           -- Lamb-Dicke parameter, held fixed across the sidebands
                     of a schedule (it varies only negligibly over small k).
    omega_carrier -- carrier Rabi frequency in rad/s.
    fock_dim      -- motional truncation dimension D (Fock levels 0..D-1).
    trap_freq     -- trap frequency in rad/s (informational).
    atomic_freq   -- atomic transition frequency in rad/s (informational).
    """

    eta: float
    omega_carrier: float
    fock_dim: int
    trap_freq: float = DEFAULT_TRAP_FREQ_RAD_S
    atomic_freq: float = DEFAULT_ATOMIC_FREQ_RAD_S

    def __post_init__(self):
        if not (self.eta > 0.0 and math.isfinite(self.eta)):
            raise ValueError(f"eta must be positive and finite, got {self.eta}")
        if not (self.omega_carrier > 0.0 and math.isfinite(self.omega_carrier)):
            raise ValueError(
                f"omega_carrier must be positive and finite, got {self.omega_carrier}"
            )
        if not isinstance(self.fock_dim, int) or self.fock_dim < 2:
            raise ValueError(f"fock_dim must be an integer >= 2, got {self.fock_dim}")


@dataclass(frozen=True)
class RabiValue:
    """Rabi frequency W_{m,k} of the |m> <-> |m+k| sideband transition."""

    m: int
    k: int
    value: float  # rad/s


@dataclass(frozen=True)
class PulseCoefficient:
    """Transition amplitude pair (C, C~) of one pulse on one Fock pair.

    C~ = -conj(C) always; |C| = |sin(W_{m,k} t)| <= 1.
    """

    c: complex
    c_tilde: complex


def _rabi(eta: float, omega: float, m: int, k: int) -> float:
    """Scalar W_{m,k} in rad/s.

    The alternating series is summed with a term-ratio recurrence and
    compensated (fsum) summation; the factorial prefactor is accumulated
    in log space so m + k far beyond 170 cannot overflow.  Near Laguerre
    zeros the value can legitimately be negative; the sign is physical
    (it flips the sense of the rotation) and is kept.
    """
    if m < 0 or k < 0:
        raise ValueError(f"Fock index and sideband order must be >= 0, got m={m}, k={k}")
    x = eta * eta
    log_pref = (
        math.log(omega / 2.0)
        + k * math.log(eta)
        - x / 2.0
        + 0.5 * (math.lgamma(m + k + 1) - math.lgamma(m + 1))
        - math.lgamma(k + 1)
    )
    # terms of sum_j (-x)^j C(m,j) k!/(j+k)! / j!, exact ratio recurrence
    term = 1.0
    terms = [term]
    for j in range(m):
        term = -term * x * (m - j) / ((j + 1) * (j + k + 1))
        terms.append(term)
    series = math.fsum(terms)
    if series == 0.0:
        return 0.0
    log_mag = log_pref + math.log(abs(series))
    if log_mag < _LOG_MIN_NORMAL:
        raise RabiUnderflowError(m, k, log_mag)
    if log_pref > _LOG_MIN_NORMAL + 80.0:
        return math.exp(log_pref) * series
    return math.copysign(math.exp(log_mag), series)


def rabi_frequency(params: PhysicalParams, m: int, k: int) -> RabiValue:
    """All-orders sideband Rabi frequency W_{m,k}.

    m -- Fock index of the lower motional level of the pair (>= 0).
    k -- sideband order (0 for the carrier).

    Raises ValueError for negative indices and RabiUnderflowError when the
    magnitude drops below the representable double range.
    """
    return RabiValue(m, k, _rabi(params.eta, params.omega_carrier, m, k))


def _check_kind(kind: str, k: int):
    if kind not in _PULSE_KINDS:
        raise ValueError(f"unknown pulse kind {kind!r}")
    if kind == "carrier":
        if k != 0:
            raise ValueError(f"carrier pulses have k = 0, got k={k}")
    elif k < 1:
        raise ValueError(f"{kind} sideband order must be >= 1, got k={k}")


def pulse_coefficient(
    params: PhysicalParams,
    kind: str,
    k: int,
    m: int,
    phase: float,
    duration: float,
) -> PulseCoefficient:
    """Transition amplitude pair (C, C~) for one pulse acting on pair index m.

    For red/blue sidebands C = i^(k-1) e^{-i phase} sin(W_{m,k} duration);
    for the carrier C = -i e^{-i phase} sin(W_{m,0} duration).  m indexes
    the lower Fock level of the coupled pair.
    """
    _check_kind(kind, k)
    if duration < 0.0:
        raise ValueError(f"duration must be >= 0, got {duration}")
    if not 0 <= m < params.fock_dim:
        raise ValueError(f"pair index m={m} outside truncation 0..{params.fock_dim - 1}")
    w = _rabi(params.eta, params.omega_carrier, m, k)
    s = math.sin(w * duration)
    unit = -1j if kind == "carrier" else ipow(k - 1)
    c = unit * complex(math.cos(phase), -math.sin(phase)) * s
    return PulseCoefficient(c, -c.conjugate())


def shortest_duration_for(
    params: PhysicalParams,
    kind: str,
    k: int,
    m: int,
    target: float,
    branch: str = "sin",
) -> float:
    """Smallest t >= 0 with sin(W_{m,k} t) = target (or cos, branch="cos").

    target must lie in [0, 1]; the principal branch is used (no extra
    2 pi n / W offsets), which is the shortest realizable duration.
    """
    _check_kind(kind, k)
    if branch not in ("sin", "cos"):
        raise ValueError(f"branch must be 'sin' or 'cos', got {branch!r}")
    if not 0.0 <= target <= 1.0:
        raise ValueError(f"target must lie in [0, 1], got {target}")
    w = _rabi(params.eta, params.omega_carrier, m, k)
    if w <= 0.0:
        raise ValueError(
            f"W_{{{m},{k}}} = {w} is not positive; no shortest duration exists"
        )
    angle = math.asin(target) if branch == "sin" else math.acos(target)
    return angle / w


def lamb_dicke_parameter(
    mass_kg: float, trap_freq_rad_s: float, laser_freq_rad_s: float
) -> float:
    """eta = (w_laser / c) sqrt(hbar / (2 M w_trap)) for a travelling wave.

    Convenience only: compiled schedules always use the eta stored in
    PhysicalParams, which experiments quote directly.
    """
    if mass_kg <= 0 or trap_freq_rad_s <= 0 or laser_freq_rad_s <= 0:
        raise ValueError("mass and frequencies must be positive")
    kappa = laser_freq_rad_s / _SPEED_OF_LIGHT
    return kappa * math.sqrt(_HBAR / (2.0 * mass_kg * trap_freq_rad_s))
