"""
Exact propagation of coherent amplitudes through free and kicked segments.

Under the rotating-wave coupling a product of coherent states stays a
product of coherent states, and the amplitude vector
``(alpha, beta_1, ..., beta_n)`` evolves linearly as ``v(t) = U(t) v(0)``
with ``U = exp(-i G t)``. In the frame rotating at ``omega0`` the
generator ``G`` is an arrowhead matrix:

    G[0, 0] = delta_omega        (0 for free evolution)
    G[k, k] = omega_k - omega0
    G[0, k] = G[k, 0] = gamma_k

``U`` is built from the eigendecomposition of ``G``, computed once per
generator.
"""
from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import BathSpec, KickSchedule

__all__ = [
    "PropagationError",
    "HorizonWarning",
    "GeneratorMatrix",
    "TransferMatrix",
    "AmplitudeRow",
    "build_generator",
    "generator_for",
    "segment_unitary",
    "cycle_matrix",
    "stroboscopic_rows",
    "free_evolution_row",
    "unitarity_error",
]

UNITARITY_TOL = 1e-10


class PropagationError(RuntimeError):
    pass


class HorizonWarning(UserWarning):
    """Requested time lies beyond the window where the finite bath is valid."""


def _check_horizon(t, horizon):
    if horizon is not None and t > horizon * (1 + 1e-12):
        warnings.warn(
            f"t = {t:.6g} s exceeds the finite-bath validity horizon pi/delta = {horizon:.6g} s",
            HorizonWarning, stacklevel=3)


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """Hermitian generator of one propagation segment, in rad/s."""

    entries: np.ndarray
    horizon: float | None = None

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    @functools.cached_property
    def spectrum(self):
        """Eigenvalues and eigenvectors ``(lam, V)`` with ``G = V diag(lam) V^H``."""
        try:
            lam, vecs = np.linalg.eigh(self.entries)
        except np.linalg.LinAlgError as exc:
            raise PropagationError(f"eigendecomposition failed: {exc}") from exc
        lam.setflags(write=False)
        vecs.setflags(write=False)
        return lam, vecs


@dataclass(frozen=True, eq=False)
class TransferMatrix:
    """Linear map of coherent amplitudes after `elapsed` seconds."""

    entries: np.ndarray
    elapsed: float
    horizon: float | None = None

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other: TransferMatrix) -> TransferMatrix:
        return TransferMatrix(self.entries @ other.entries,
                              self.elapsed + other.elapsed, self.horizon)


@dataclass(frozen=True, eq=False)
class AmplitudeRow:
    """First row ``C_0j`` of a transfer matrix.

    ``alpha(t) = sum_j C_0j beta_j(0)`` so this row alone fixes every
    observable of the oscillator.
    """

    entries: np.ndarray
    elapsed: float

    @property
    def c00(self) -> complex:
        return complex(self.entries[0])

    @property
    def bath_weights(self) -> np.ndarray:
        """``|C_0k|**2`` for the bath modes."""
        return np.abs(self.entries[1:]) ** 2


def unitarity_error(u) -> float:
    u = getattr(u, "entries", u)
    return float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))))


def build_generator(bath: BathSpec, frequency_shift: float = 0.0) -> GeneratorMatrix:
    dim = bath.dimension
    g = np.zeros((dim, dim), dtype=complex)
    g[0, 0] = frequency_shift
    idx = np.arange(1, dim)
    g[idx, idx] = bath.detunings
    g[0, 1:] = bath.couplings
    g[1:, 0] = bath.couplings
    g.setflags(write=False)
    return GeneratorMatrix(g, bath.horizon)


@functools.lru_cache(maxsize=64)
def generator_for(bath: BathSpec, frequency_shift: float = 0.0) -> GeneratorMatrix:
    """Cached `build_generator`; baths hash by identity."""
    return build_generator(bath, frequency_shift)


def segment_unitary(gen: GeneratorMatrix, duration: float) -> TransferMatrix:
    """``exp(-i G t)`` from the cached spectral decomposition of `gen`."""
    if duration < 0:
        raise ValueError("duration must be non-negative")
    if duration == 0:
        return TransferMatrix(np.eye(gen.dimension, dtype=complex), 0.0, gen.horizon)
    lam, vecs = gen.spectrum
    u = (vecs * np.exp(-1j * lam * duration)) @ vecs.conj().T
    err = unitarity_error(u)
    if err > UNITARITY_TOL:
        raise PropagationError(f"segment propagator not unitary: max|UU^H - 1| = {err:.3g}")
    return TransferMatrix(u, float(duration), gen.horizon)


def cycle_matrix(bath: BathSpec, schedule: KickSchedule, order: str = "free-first") -> TransferMatrix:
    """One decoupling cycle acting on column amplitude vectors.

    With ``order="free-first"`` the free segment of length ``T_c - tau`` is
    applied first and the kick closes the cycle, i.e. the matrix is
    ``L(tau, dw) @ L(T_c - tau, 0)``. ``"kick-first"`` reverses the two.
    """
    free = segment_unitary(generator_for(bath, 0.0), schedule.free_duration)
    kick = segment_unitary(generator_for(bath, schedule.frequency_shift), schedule.kick_duration)
    if order == "free-first":
        cyc = kick @ free
    elif order == "kick-first":
        cyc = free @ kick
    else:
        raise ValueError(f"unknown cycle order {order!r}")
    err = unitarity_error(cyc)
    if err > UNITARITY_TOL:
        raise PropagationError(f"cycle matrix not unitary: max|UU^H - 1| = {err:.3g}")
    return cyc


def stroboscopic_rows(cycle: TransferMatrix, n_cycles: int) -> list[AmplitudeRow]:
    """Rows ``(C^n)_0.`` for ``n = 0..n_cycles``, via ``row_n = row_{n-1} @ C``."""
    if n_cycles < 0:
        raise ValueError("n_cycles must be non-negative")
    _check_horizon(n_cycles * cycle.elapsed, cycle.horizon)
    row = np.zeros(cycle.dimension, dtype=complex)
    row[0] = 1.0
    rows = [AmplitudeRow(row, 0.0)]
    for n in range(1, n_cycles + 1):
        row = row @ cycle.entries
        rows.append(AmplitudeRow(row, n * cycle.elapsed))
    return rows


def free_evolution_row(bath: BathSpec, times: Sequence[float]) -> list[AmplitudeRow]:
    """System rows of the free propagator at arbitrary `times`.

    ``C_0j(t) = sum_m V_0m exp(-i lam_m t) conj(V_jm)``, O(dim**2) per time.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if np.any(times < 0):
        raise ValueError("times must be non-negative")
    if len(times):
        _check_horizon(float(times.max()), bath.horizon)
    lam, vecs = generator_for(bath, 0.0).spectrum
    phases = np.exp(-1j * np.outer(times, lam)) * vecs[0]
    block = phases @ vecs.conj().T
    return [AmplitudeRow(block[i], float(t)) for i, t in enumerate(times)]
