"""
Independent cross-checks of the spectral propagator.

Nothing here calls `segment_unitary`; the RK4 integrator only reads the
generator entries, and the convolution quadrature only uses ``L_00``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import BathSpec
from .propagator import GeneratorMatrix, TransferMatrix, build_generator

__all__ = [
    "OracleReport",
    "max_rk4_step",
    "rk4_propagate",
    "spectral_l00",
    "convolution_L0k",
    "revival_check",
]


@dataclass(frozen=True)
class OracleReport:
    name: str
    max_abs_error: float
    tolerance: float
    instance_descriptor: str
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.max_abs_error <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.name}: max_abs_error={self.max_abs_error:.3e} "
                f"tol={self.tolerance:.1e} [{self.instance_descriptor}]")


def max_rk4_step(gen: GeneratorMatrix) -> float:
    """Largest allowed step, ``2 pi/(50 max|diag|)``."""
    top = float(np.max(np.abs(np.diag(gen.entries))))
    return math.inf if top == 0 else 2 * math.pi / (50 * top)


def rk4_propagate(gen: GeneratorMatrix, duration: float, step: float) -> TransferMatrix:
    """Classical RK4 for ``dU/dt = -i G U`` from the identity.

    The step is shrunk so that it divides `duration` evenly. No unitarity
    is enforced; drift shows up in the comparison.
    """
    if duration < 0:
        raise ValueError("duration must be non-negative")
    if not 0 < step <= max_rk4_step(gen) * (1 + 1e-12):
        raise ValueError(f"step {step:.3g} s exceeds the RK4 limit {max_rk4_step(gen):.3g} s")
    u = np.eye(gen.dimension, dtype=complex)
    n = math.ceil(duration / step) if duration > 0 else 0
    if n == 0:
        return TransferMatrix(u, 0.0)
    h = duration / n
    a = -1j * gen.entries
    for _ in range(n):
        k1 = a @ u
        k2 = a @ (u + 0.5 * h * k1)
        k3 = a @ (u + 0.5 * h * k2)
        k4 = a @ (u + h * k3)
        u = u + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    return TransferMatrix(u, float(duration))


def spectral_l00(gen: GeneratorMatrix, times) -> np.ndarray:
    """``L_00(t) = sum_m |V_0m|**2 exp(-i lam_m t)``."""
    lam, vecs = gen.spectrum
    return np.exp(-1j * np.outer(np.asarray(times, dtype=float), lam)) @ (np.abs(vecs[0]) ** 2)


def convolution_L0k(bath: BathSpec, frequency_shift: float, k: int, t: float,
                    quadrature_step: float) -> complex:
    """``L_0k(t)`` from ``L_00`` by trapezoidal quadrature of the Duhamel integral.

    The integral is evaluated in the frame rotating at ``omega0 + dw``,
    where it reads ``-i g_k int_0^t exp(-i(omega_k - omega0 - dw) s)
    L00'(t - s) ds`` with ``L00'(s) = exp(i dw s) L_00(s)``; the result
    is rotated back by ``exp(-i dw t)`` to match `segment_unitary`.
    `k` is the bath mode label.
    """
    if t == 0:
        return 0j
    if not 0 < quadrature_step <= t / 1e3 * (1 + 1e-12):
        raise ValueError("quadrature_step must be at most t/1000")
    col = bath.column(k)
    g_k = bath.couplings[col - 1]
    detuning = bath.detunings[col - 1] - frequency_shift
    n = math.ceil(t / quadrature_step)
    s = np.linspace(0.0, t, n + 1)
    gen = build_generator(bath, frequency_shift)
    l00_rot = np.exp(1j * frequency_shift * (t - s)) * spectral_l00(gen, t - s)
    integrand = np.exp(-1j * detuning * s) * l00_rot
    value = -1j * g_k * np.trapezoid(integrand, s)
    return complex(np.exp(-1j * frequency_shift * t) * value)


def revival_check(bath: BathSpec, tolerance: float = 0.01, samples: int = 2001) -> OracleReport:
    """Finite-bath recurrence diagnostics.

    The reported error is the largest gap between ``|C_00(t)|`` and the
    continuum envelope ``exp(-g t/2)`` inside the validity horizon
    ``t <= pi/delta`` (``g`` is the damping rate implied by the
    couplings). `details` records ``|C_00|`` at the revival time, half of
    it and ``1/gamma``, and the strongest recurrence in
    ``[T_rev, 1.5 T_rev]`` relative to the envelope.
    """
    gen = build_generator(bath, 0.0)
    g_eff = 2 * math.pi * float(np.mean(bath.couplings ** 2)) / bath.delta
    envelope = lambda t: np.exp(-0.5 * g_eff * t)  # noqa: E731

    inside = np.linspace(0.0, bath.horizon, samples)
    err = float(np.max(np.abs(np.abs(spectral_l00(gen, inside)) - envelope(inside))))

    t_rev = bath.revival_time
    after = np.linspace(t_rev, 1.5 * t_rev, samples)
    amp_after = np.abs(spectral_l00(gen, after))
    i = int(np.argmax(amp_after / envelope(after)))
    probes = np.abs(spectral_l00(gen, [t_rev, 0.5 * t_rev, 1 / bath.gamma]))
    details = {
        "revival_time_s": t_rev,
        "c00_at_revival": float(probes[0]),
        "c00_at_half_revival": float(probes[1]),
        "c00_at_relaxation": float(probes[2]),
        "peak_recurrence": float(amp_after[i]),
        "peak_recurrence_time_s": float(after[i]),
        "recurrence_over_envelope": float(amp_after[i] / envelope(after[i])),
    }
    return OracleReport("revival", err, tolerance,
                        f"{bath.n_modes}-mode bath, t <= pi/delta", details)
