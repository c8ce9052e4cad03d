"""
Regression baselines for the kicked scenarios.

No tabulated reference values exist for the suppression factors, so
they are frozen from a pilot run of this code and checked in as
``data/baselines.json``. `compute_baselines` regenerates them.
"""
from __future__ import annotations

import json
from importlib import resources

import numpy as np

from .model import CatStateSpec, build_bath, build_occupations, make_schedule
from .observables import cycles_within, decoherence_series, heating_series
from .oracle import revival_check

__all__ = ["load_baselines", "compute_baselines", "BASELINE_RTOL"]

BASELINE_RTOL = 1e-6


def load_baselines() -> dict:
    text = resources.files("paritykick").joinpath("data/baselines.json").read_text()
    return json.loads(text)


def _pair(series_fn, bath, occ, tc, total, **kw):
    sch = make_schedule(tc, 1 / 7, cycles_within(total, tc))
    kicked = series_fn(bath, occ, schedule=sch, **kw)
    free = series_fn(bath, occ, times=[total], **kw)
    return kicked, free


def compute_baselines() -> dict:
    bath = build_bath()
    total = 1 / bath.gamma
    occ = build_occupations(bath, 0.01)
    kicked, free = _pair(heating_series, bath, occ, 157e-9, total)
    heating = {
        "cycle_time_s": 157e-9, "temperature_K": 0.01, "n_cycles": len(kicked) - 1,
        "t_final_s": float(kicked.times[-1]),
        "nu_kicked": float(kicked.nu[-1]), "nu_free": float(free.nu[-1]),
        "suppression_ratio": float(kicked.nu[-1] / free.nu[-1]),
    }
    kicked, free = _pair(decoherence_series, bath, occ, 78.5e-9, total, cat=CatStateSpec(2.0, 0.0))
    decoherence = {
        "cycle_time_s": 78.5e-9, "temperature_K": 0.01, "n_cycles": len(kicked) - 1,
        "t_final_s": float(kicked.times[-1]),
        "eta_kicked": float(kicked.eta[-1]), "eta_free": float(free.eta[-1]),
        "suppression_ratio": float(kicked.eta[-1] / free.eta[-1]),
    }
    rev = revival_check(bath)
    return {
        "provenance": ("pilot run of paritykick.baselines.compute_baselines on the default "
                       "201-mode bath (omega0=1e7 rad/s, gamma=1e5 rad/s, delta=1e5 rad/s, "
                       "CODATA constants, zero mode clamped, free-first cycles, tau=Tc/7); "
                       "kicked values taken at the last complete cycle n*Tc <= 1/gamma, free "
                       "values at exactly 1/gamma"),
        "numpy_version": np.__version__,
        "heating_suppression": heating,
        "decoherence_suppression": decoherence,
        "revival": {"max_abs_error": rev.max_abs_error, **rev.details},
    }
