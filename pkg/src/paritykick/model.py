"""
Physical constants, discretized thermal bath, and decoupling schedules.

All frequencies are angular (rad/s). The bath is a finite set of bosonic
modes with equally spaced frequencies ``omega_k = omega0 + k*delta``
symmetric around the oscillator frequency, coupled with a flat spectrum
``gamma_k**2 = gamma*delta/(2*pi)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

__all__ = [
    "PhysicalConstants",
    "CODATA",
    "BathSpec",
    "KickSchedule",
    "OccupationVector",
    "CatStateSpec",
    "build_bath",
    "without_zero_mode",
    "with_couplings",
    "bose_occupation",
    "build_occupations",
    "make_schedule",
]

PARITY_RTOL = 1e-12


def _frozen(a, dtype=float):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PhysicalConstants:
    """Reduced Planck constant [J s] and Boltzmann constant [J/K]."""

    hbar: float = 1.054571817e-34
    k_boltzmann: float = 1.380649e-23

    def __post_init__(self):
        if not (self.hbar > 0 and self.k_boltzmann > 0):
            raise ValueError("physical constants must be strictly positive")


CODATA = PhysicalConstants()


@dataclass(frozen=True, eq=False)
class BathSpec:
    """Discretized bosonic environment of a single oscillator mode.

    Instances hash by identity so they can key propagator caches.

    Attributes
    ----------
    omega0 : float
        System oscillator frequency.
    delta : float
        Spacing of the bath frequency grid.
    k_min, k_max : int
        Inclusive range of integer mode labels; mode ``k`` has frequency
        ``omega0 + k*delta``.
    mode_frequencies, couplings : ndarray
        Read-only arrays, one entry per bath mode.
    gamma : float
        Energy damping rate the flat couplings were built from.
    omega_cutoff : float
        Highest bath frequency.
    """

    omega0: float
    delta: float
    k_min: int
    k_max: int
    mode_frequencies: np.ndarray
    couplings: np.ndarray
    gamma: float
    omega_cutoff: float

    def __post_init__(self):
        n = self.k_max - self.k_min + 1
        if len(self.mode_frequencies) != n or len(self.couplings) != n:
            raise ValueError(f"expected {n} modes for k in [{self.k_min}, {self.k_max}]")
        if np.any(np.diff(self.mode_frequencies) <= 0):
            raise ValueError("mode frequencies must be strictly increasing")
        if self.mode_frequencies[0] < 0:
            raise ValueError(f"negative bath frequency {self.mode_frequencies[0]:g} rad/s")

    @property
    def n_modes(self) -> int:
        return self.k_max - self.k_min + 1

    @property
    def dimension(self) -> int:
        """Size of the amplitude vector (system + bath)."""
        return self.n_modes + 1

    @property
    def mode_labels(self) -> np.ndarray:
        return np.arange(self.k_min, self.k_max + 1)

    @property
    def detunings(self) -> np.ndarray:
        return self.mode_frequencies - self.omega0

    @property
    def revival_time(self) -> float:
        return 2 * math.pi / self.delta

    @property
    def horizon(self) -> float:
        """Longest time for which the finite bath mimics a continuum."""
        return math.pi / self.delta

    def column(self, k: int) -> int:
        """Matrix column of bath mode label ``k`` (column 0 is the system)."""
        if not self.k_min <= k <= self.k_max:
            raise IndexError(f"mode label {k} outside [{self.k_min}, {self.k_max}]")
        return k - self.k_min + 1


def build_bath(omega0=1e7, gamma=1e5, n_modes=201, delta=None) -> BathSpec:
    """Equally spaced bath symmetric around `omega0` with flat couplings.

    `delta` defaults to ``omega0/100``. Raises ValueError if the lowest
    mode frequency would be negative.
    """
    if delta is None:
        delta = omega0 / 100
    if not omega0 > 0:
        raise ValueError("omega0 must be positive")
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    if not delta > 0:
        raise ValueError("delta must be positive")
    if n_modes < 3 or n_modes % 2 == 0:
        raise ValueError(f"n_modes must be odd and >= 3, got {n_modes}")
    k_max = (n_modes - 1) // 2
    k_min = -k_max
    # tolerate rounding of an exact zero lowest frequency
    if omega0 + k_min * delta < -1e-9 * omega0:
        raise ValueError(
            f"lowest bath frequency omega0 - {k_max}*delta = "
            f"{omega0 + k_min * delta:g} rad/s is negative")
    ks = np.arange(k_min, k_max + 1)
    freqs = np.maximum(omega0 + ks * delta, 0.0)
    g_k = math.sqrt(gamma * delta / (2 * math.pi))
    return BathSpec(
        omega0=float(omega0),
        delta=float(delta),
        k_min=int(k_min),
        k_max=int(k_max),
        mode_frequencies=_frozen(freqs),
        couplings=_frozen(np.full(n_modes, g_k)),
        gamma=float(gamma),
        omega_cutoff=float(freqs[-1]),
    )


def without_zero_mode(bath: BathSpec) -> BathSpec:
    """Copy of `bath` with a zero-frequency edge mode removed, if present."""
    if bath.mode_frequencies[0] > 0:
        return bath
    return replace(
        bath,
        k_min=bath.k_min + 1,
        mode_frequencies=_frozen(bath.mode_frequencies[1:]),
        couplings=_frozen(bath.couplings[1:]),
    )


def with_couplings(bath: BathSpec, couplings) -> BathSpec:
    """Copy of `bath` with a different (possibly structured) coupling set."""
    couplings = np.broadcast_to(np.asarray(couplings, dtype=float), bath.couplings.shape)
    return replace(bath, couplings=_frozen(couplings))


def bose_occupation(omega, temperature, constants: PhysicalConstants = CODATA):
    """Mean thermal excitation number ``1/(exp(hbar*omega/kT) - 1)``.

    Accepts scalars or arrays for `omega`. Zero temperature gives zero.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("bose_occupation requires omega > 0")
    if temperature < 0:
        raise ValueError("temperature must be non-negative")
    if temperature == 0:
        out = np.zeros_like(omega)
    else:
        x = constants.hbar * omega / (constants.k_boltzmann * temperature)
        with np.errstate(over="ignore"):
            out = 1.0 / np.expm1(x)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class OccupationVector:
    """Thermal occupation of every bath mode (system mode excluded)."""

    temperature: float
    occupations: np.ndarray
    constants: PhysicalConstants = field(default=CODATA)

    def __post_init__(self):
        if np.any(self.occupations < 0):
            raise ValueError("occupations must be non-negative")

    def __len__(self):
        return len(self.occupations)


def build_occupations(bath: BathSpec, temperature: float,
                      constants: PhysicalConstants = CODATA) -> OccupationVector:
    """Bose occupations of the bath modes at `temperature`.

    The frequency is clamped to ``max(omega_k, delta)`` so that a
    zero-frequency edge mode gets a finite occupation.
    """
    if temperature < 0:
        raise ValueError("temperature must be non-negative")
    if temperature == 0:
        occ = np.zeros(bath.n_modes)
    else:
        occ = bose_occupation(np.maximum(bath.mode_frequencies, bath.delta),
                              temperature, constants)
    return OccupationVector(float(temperature), _frozen(occ), constants)


@dataclass(frozen=True)
class KickSchedule:
    """Periodic parity-kick cycle: free for ``T_c - tau``, then kicked for ``tau``.

    The kick shifts the oscillator frequency by `frequency_shift` with
    ``frequency_shift*kick_duration == pi``.
    """

    cycle_time: float
    kick_duration: float
    frequency_shift: float
    n_cycles: int = 0

    def __post_init__(self):
        if not 0 < self.kick_duration < self.cycle_time:
            raise ValueError("need 0 < kick_duration < cycle_time")
        if abs(self.frequency_shift * self.kick_duration - math.pi) > PARITY_RTOL * math.pi:
            raise ValueError("parity condition frequency_shift*kick_duration == pi violated")
        if self.n_cycles < 0:
            raise ValueError("n_cycles must be non-negative")

    @property
    def free_duration(self) -> float:
        return self.cycle_time - self.kick_duration


def make_schedule(cycle_time: float, kick_fraction: float = 1 / 7,
                  n_cycles: int = 0) -> KickSchedule:
    """Schedule with ``tau = kick_fraction*cycle_time`` and ``delta_omega = pi/tau``."""
    if not cycle_time > 0:
        raise ValueError("cycle_time must be positive")
    if not 0 < kick_fraction < 1:
        raise ValueError("kick_fraction must lie in (0, 1)")
    tau = kick_fraction * cycle_time
    return KickSchedule(cycle_time, tau, math.pi / tau, int(n_cycles))


@dataclass(frozen=True)
class CatStateSpec:
    """Superposition ``N_phi (|alpha0> + exp(i phi)|-alpha0>)``."""

    alpha0: complex = 2.0
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "alpha0", complex(self.alpha0))
        if not self._denominator() > 0:
            raise ValueError("cat state is not normalizable (alpha0 = 0 with phi = pi)")

    def _denominator(self):
        return 2 + 2 * math.exp(-2 * abs(self.alpha0) ** 2) * math.cos(self.phi)

    @property
    def normalization(self) -> float:
        return self._denominator() ** -0.5
