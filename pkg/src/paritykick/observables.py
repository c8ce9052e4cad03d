"""
Thermal-averaged observables of the oscillator from the amplitude row.

The thermal bath enters only through Gaussian averages over the initial
bath amplitudes, done in closed form. Starting from the ground state the
oscillator stays thermal with mean number ``nu = sum_k N_k |C_0k|**2``;
starting from a cat state its interference fringes are damped according
to the fringe visibility ``eta = 1 - |C_00|**2/(1 + 2 nu)``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .model import (CODATA, BathSpec, CatStateSpec, KickSchedule, OccupationVector,
                    PhysicalConstants, bose_occupation)
from .propagator import AmplitudeRow, cycle_matrix, free_evolution_row, stroboscopic_rows

__all__ = [
    "ObservableSeries",
    "WignerGrid",
    "ThresholdPrediction",
    "mean_vibrational_number",
    "fringe_visibility",
    "markov_heating",
    "markov_visibility",
    "wigner_cat",
    "predict_threshold",
    "heating_series",
    "decoherence_series",
    "cycles_within",
]

log = logging.getLogger(__name__)

CLIP_TOL = 1e-9


def mean_vibrational_number(row: AmplitudeRow, occ: OccupationVector) -> float:
    weights = row.bath_weights
    if len(weights) != len(occ):
        raise ValueError(f"row has {len(weights)} bath entries but {len(occ)} occupations")
    return float(np.dot(occ.occupations, weights))


def fringe_visibility(c00, nu):
    """``1 - |c00|**2/(1 + 2 nu)``, clipped to [0, 1]. Works on arrays."""
    raw = 1.0 - np.abs(c00) ** 2 / (1.0 + 2.0 * np.asarray(nu, dtype=float))
    excess = float(np.max(np.maximum(-raw, raw - 1.0)))
    if excess > CLIP_TOL:
        log.warning("fringe visibility outside [0, 1] by %.3g before clipping", excess)
    out = np.clip(raw, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def markov_heating(t, gamma, n_omega0):
    """Born-Markov heating ``N(omega0) (1 - exp(-gamma t))``."""
    return n_omega0 * -np.expm1(-gamma * np.asarray(t, dtype=float))


def markov_visibility(t, gamma, n_omega0):
    """Born-Markov fringe visibility of a cat state in a thermal bath."""
    decay = np.exp(-gamma * np.asarray(t, dtype=float))
    return 1.0 - decay / (1.0 + 2.0 * n_omega0 * (1.0 - decay))


@dataclass(frozen=True, eq=False)
class WignerGrid:
    re_range: tuple[float, float]
    im_range: tuple[float, float]
    resolution: int
    values: np.ndarray  # indexed [im, re]

    @property
    def re_axis(self):
        return np.linspace(*self.re_range, self.resolution)

    @property
    def im_axis(self):
        return np.linspace(*self.im_range, self.resolution)

    def integral(self) -> float:
        """Trapezoidal integral over ``d Re(alpha) d Im(alpha)``."""
        inner = np.trapezoid(self.values, self.re_axis, axis=1)
        return float(np.trapezoid(inner, self.im_axis))


def wigner_cat(re_range, im_range, resolution: int, cat: CatStateSpec,
               c00: complex, nu: float) -> WignerGrid:
    """Wigner function of the decohered cat on a square grid.

    Two Gaussians at ``+-alpha0*c00`` of width set by ``1 + 2 nu`` plus an
    interference term damped by ``exp(-2 |alpha0|**2 eta)``. The fringe
    phase is ``phi + 4 Im(alpha conj(alpha0 c00))/(1 + 2 nu)``; the
    conjugate matters once ``alpha0*c00`` is complex.
    """
    if nu < 0:
        raise ValueError("nu must be non-negative")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    x = np.linspace(*re_range, resolution)
    y = np.linspace(*im_range, resolution)
    alpha = x[None, :] + 1j * y[:, None]
    width = 1.0 + 2.0 * nu
    center = cat.alpha0 * c00
    eta = fringe_visibility(c00, nu)
    fringe = 2.0 * math.exp(-2.0 * abs(cat.alpha0) ** 2 * eta)
    w = (np.exp(-2 * np.abs(alpha - center) ** 2 / width)
         + np.exp(-2 * np.abs(alpha + center) ** 2 / width)
         + fringe * np.exp(-2 * np.abs(alpha) ** 2 / width)
         * np.cos(cat.phi + 4 * np.imag(alpha * np.conj(center)) / width))
    w *= 2 * cat.normalization ** 2 / (math.pi * width)
    return WignerGrid((float(re_range[0]), float(re_range[1])),
                      (float(im_range[0]), float(im_range[1])), int(resolution), w)


class ThresholdPrediction(NamedTuple):
    cycle_time: float
    branch: str  # "cutoff" or "thermal"


def predict_threshold(temperature: float, bath: BathSpec,
                      constants: PhysicalConstants = CODATA) -> ThresholdPrediction:
    """Largest cycle time for which kicks can still suppress decoherence.

    ``min(2 pi/omega_c, 1/(gamma (1 + 2 N(omega0))))``.
    """
    n0 = bose_occupation(bath.omega0, temperature, constants)
    cutoff = 2 * math.pi / bath.omega_cutoff
    thermal = 1.0 / (bath.gamma * (1 + 2 * n0))
    if cutoff <= thermal:
        return ThresholdPrediction(cutoff, "cutoff")
    return ThresholdPrediction(thermal, "thermal")


@dataclass(frozen=True, eq=False)
class ObservableSeries:
    """Time series of ``nu`` and ``eta`` with their Born-Markov references."""

    times: np.ndarray
    nu: np.ndarray
    eta: np.ndarray
    c00_abs2: np.ndarray
    nu_markov: np.ndarray
    eta_markov: np.ndarray
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.times)
        for name in ("nu", "eta", "c00_abs2", "nu_markov", "eta_markov"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} has length {len(getattr(self, name))}, expected {n}")

    def __len__(self):
        return len(self.times)


def cycles_within(total_time: float, cycle_time: float) -> int:
    """Number of complete cycles that fit in `total_time`."""
    return int(math.floor(total_time / cycle_time * (1 + 1e-12)))


def _series(bath, occ, rows, kind, schedule, extra_labels):
    times = np.array([r.elapsed for r in rows])
    weights = np.array([r.bath_weights for r in rows]).reshape(len(rows), -1)
    if weights.shape[1] != len(occ):
        raise ValueError(f"bath has {weights.shape[1]} modes but {len(occ)} occupations")
    nu = weights @ occ.occupations
    c00 = np.array([r.c00 for r in rows])
    n0 = bose_occupation(bath.omega0, occ.temperature, occ.constants)
    labels = {"mode": kind, "temperature_K": occ.temperature, "n_omega0": n0}
    if schedule is not None:
        labels.update(cycle_time_s=schedule.cycle_time, kick_duration_s=schedule.kick_duration,
                      frequency_shift_rad_s=schedule.frequency_shift)
    labels.update(extra_labels)
    return ObservableSeries(
        times=times,
        nu=nu,
        eta=np.atleast_1d(fringe_visibility(c00, nu)),
        c00_abs2=np.abs(c00) ** 2,
        nu_markov=np.atleast_1d(markov_heating(times, bath.gamma, n0)),
        eta_markov=np.atleast_1d(markov_visibility(times, bath.gamma, n0)),
        labels=labels,
    )


def _rows(bath, schedule, times, order):
    if schedule is not None:
        return stroboscopic_rows(cycle_matrix(bath, schedule, order), schedule.n_cycles)
    if times is None:
        raise ValueError("free evolution needs explicit times")
    return free_evolution_row(bath, times)


def heating_series(bath: BathSpec, occ: OccupationVector, schedule: KickSchedule | None = None,
                   times: Sequence[float] | None = None, order: str = "free-first") -> ObservableSeries:
    """Heating of an oscillator prepared in its ground state.

    With a `schedule` the series is stroboscopic at ``n*T_c`` for
    ``n = 0..schedule.n_cycles``; with ``schedule=None`` it is free
    evolution sampled at `times`.
    """
    kind = "kicked" if schedule is not None else "free"
    return _series(bath, occ, _rows(bath, schedule, times, order), kind, schedule,
                   {"initial_state": "ground"})


def decoherence_series(bath: BathSpec, occ: OccupationVector, cat: CatStateSpec,
                       schedule: KickSchedule | None = None,
                       times: Sequence[float] | None = None,
                       order: str = "free-first") -> ObservableSeries:
    """Fringe-visibility series for a cat-state oscillator.

    ``nu`` is computed as for the ground state: the initial cat amplitude
    only enters through ``C_00``, which ``eta`` already contains.
    """
    kind = "kicked" if schedule is not None else "free"
    return _series(bath, occ, _rows(bath, schedule, times, order), kind, schedule,
                   {"initial_state": "cat", "alpha0": repr(cat.alpha0), "phi": cat.phi})
