"""
Scenario runners behind the ``simulate`` command.

Each ``run_*`` function takes a validated `RunConfig` and an output
directory, writes CSV and SVG files plus ``run_manifest.json``, and
returns the list of written paths. The pure computations they rely on
(`sweep`, `validation_reports`, ...) are importable on their own.
"""
from __future__ import annotations

import json
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .. import __version__
from ..model import (BathSpec, CatStateSpec, build_bath, build_occupations, bose_occupation,
                     make_schedule, with_couplings)
from ..observables import (ObservableSeries, cycles_within, decoherence_series, fringe_visibility,
                           heating_series, markov_visibility, wigner_cat)
from ..oracle import (OracleReport, convolution_L0k, max_rk4_step, revival_check, rk4_propagate)
from ..propagator import (build_generator, cycle_matrix, free_evolution_row, generator_for,
                          segment_unitary, stroboscopic_rows, unitarity_error)
from . import svgplot
from .config import RunConfig

__all__ = [
    "SweepResult",
    "sweep",
    "sweep_cycle_times",
    "kicked_and_free",
    "validation_reports",
    "run_heating",
    "run_decoherence",
    "run_sweep",
    "run_wigner",
    "run_validate",
    "write_csv",
]

MARKOV_WINDOW = (0.1, 3.0)  # in units of 1/gamma
MARKOV_RTOL = 0.05


def _num(v):
    return f"{float(v):.11e}"


def write_csv(path, header, columns):
    cols = [np.asarray(c, dtype=float) for c in columns]
    for name, c in zip(header, cols):
        if not np.all(np.isfinite(c)):
            raise ValueError(f"non-finite value in column {name}")
    lines = [",".join(header)]
    lines += [",".join(_num(c[i]) for c in cols) for i in range(len(cols[0]))]
    Path(path).write_text("\n".join(lines) + "\n")
    return Path(path)


def _manifest(out_dir, scenario, cfg, files, caught, extra=None):
    doc = {
        "scenario": scenario,
        "code_version": __version__,
        "config": cfg.raw,
        "constants": {"hbar": cfg.constants.hbar, "k_boltzmann": cfg.constants.k_boltzmann},
        "files": sorted(Path(f).name for f in files),
        "warnings": [str(w.message) for w in caught],
    }
    if extra:
        doc.update(extra)
    path = Path(out_dir) / "run_manifest.json"
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path


def _prepare(out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def kicked_and_free(bath: BathSpec, temperature: float, cycle_time: float, total_time: float,
                    cfg: RunConfig, cat: CatStateSpec | None = None):
    """Kicked series at ``n*T_c`` and free series sampled at the same times."""
    occ = build_occupations(bath, temperature, cfg.constants)
    schedule = make_schedule(cycle_time, cfg.kick_fraction, cycles_within(total_time, cycle_time))
    if cat is None:
        kicked = heating_series(bath, occ, schedule, order=cfg.cycle_order)
        free = heating_series(bath, occ, times=kicked.times)
    else:
        kicked = decoherence_series(bath, occ, cat, schedule, order=cfg.cycle_order)
        free = decoherence_series(bath, occ, cat, times=kicked.times)
    return kicked, free


def _time_plot(path, kicked: ObservableSeries, free: ObservableSeries, attr, markov_attr,
               title, ylabel, cfg):
    t_us = kicked.times * 1e6
    svgplot.line_plot(path, [
        svgplot.Curve(t_us, getattr(kicked, attr), "with kicks", marker="circle", line=False),
        svgplot.Curve(t_us, getattr(free, attr), "without kicks", marker="cross", line=False),
        svgplot.Curve(t_us, getattr(kicked, markov_attr), "Markov", dashed=True),
    ], title=title, xlabel="t [us]", ylabel=ylabel, ylog=cfg.plot["y_scale"] == "log")


def run_heating(cfg: RunConfig, out_dir) -> list[Path]:
    out = _prepare(out_dir)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        bath = cfg.bath()
        tc = cfg.cycle_time_for("heating")
        kicked, free = kicked_and_free(bath, cfg.temperature, tc, cfg.total_time_value, cfg)
    files = [
        write_csv(out / "heating.csv", ["t_s", "nu_kicked", "nu_free", "nu_markov"],
                  [kicked.times, kicked.nu, free.nu, kicked.nu_markov]),
        out / "heating.svg",
    ]
    _time_plot(files[1], kicked, free, "nu", "nu_markov",
               f"Mean vibrational number, T = {cfg.temperature:g} K, Tc = {tc * 1e9:.4g} ns",
               "nu", cfg)
    files.append(_manifest(out, "heating", cfg, files, caught, {"cycle_time_s": tc}))
    return files


def run_decoherence(cfg: RunConfig, out_dir) -> list[Path]:
    out = _prepare(out_dir)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        bath = cfg.bath()
        tc = cfg.cycle_time_for("decoherence")
        kicked, free = kicked_and_free(bath, cfg.temperature, tc, cfg.total_time_value, cfg,
                                       cat=cfg.cat_spec)
    files = [
        write_csv(out / "decoherence.csv", ["t_s", "eta_kicked", "eta_free", "eta_markov"],
                  [kicked.times, kicked.eta, free.eta, kicked.eta_markov]),
        out / "decoherence.svg",
    ]
    _time_plot(files[1], kicked, free, "eta", "eta_markov",
               f"Fringe visibility, T = {cfg.temperature:g} K, Tc = {tc * 1e9:.4g} ns",
               "eta", cfg)
    files.append(_manifest(out, "decoherence", cfg, files, caught, {"cycle_time_s": tc}))
    return files


@dataclass
class SweepResult:
    """Rows ``(T_c, omega_c T_c/2pi, T, value)`` sorted by ``(T, T_c)``.

    `free_values` maps each temperature to the value without kicks at
    `total_time`; `n_omega0` to ``N(omega0)``.
    """

    observable: str
    rows: list[tuple[float, float, float, float]]
    free_values: dict[float, float] = field(default_factory=dict)
    n_omega0: dict[float, float] = field(default_factory=dict)
    total_time: float = 0.0

    def curve(self, temperature):
        sel = [r for r in self.rows if r[2] == temperature]
        return (np.array([r[0] for r in sel]), np.array([r[1] for r in sel]),
                np.array([r[3] for r in sel]))


def sweep_cycle_times(bath: BathSpec, lo, hi, count, spacing="log", units="rescaled"):
    grid = np.geomspace(lo, hi, count) if spacing == "log" else np.linspace(lo, hi, count)
    if units == "rescaled":
        grid = grid * 2 * math.pi / bath.omega_cutoff
    return grid


def _sweep_point(bath, tc, total_time, occs, kick_fraction, order):
    schedule = make_schedule(tc, kick_fraction, cycles_within(total_time, tc))
    row = stroboscopic_rows(cycle_matrix(bath, schedule, order), schedule.n_cycles)[-1]
    w = row.bath_weights
    return [(float(occ.occupations @ w), row.c00) for occ in occs]


def sweep(bath: BathSpec, temperatures, cycle_times, total_time, observable, cfg: RunConfig,
          workers: int = 1) -> SweepResult:
    """Value of ``nu`` or ``eta`` after `total_time` for every ``(T_c, T)`` pair.

    Parameter points are independent; with ``workers > 1`` they run on a
    thread pool. Each cycle time needs one propagation shared by all
    temperatures.
    """
    if observable not in ("heating", "decoherence"):
        raise ValueError(f"unknown observable {observable!r}")
    temperatures = [float(t) for t in temperatures]
    occs = [build_occupations(bath, t, cfg.constants) for t in temperatures]
    task = lambda tc: _sweep_point(bath, tc, total_time, occs, cfg.kick_fraction,  # noqa: E731
                                   cfg.cycle_order)
    cycle_times = [float(tc) for tc in cycle_times]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(task, cycle_times))
    else:
        results = [task(tc) for tc in cycle_times]
    free_row = free_evolution_row(bath, [total_time])[0]
    res = SweepResult(observable, [], total_time=total_time)
    for j, (t, occ) in enumerate(zip(temperatures, occs)):
        nu_free = float(occ.occupations @ free_row.bath_weights)
        res.free_values[t] = (nu_free if observable == "heating"
                              else fringe_visibility(free_row.c00, nu_free))
        res.n_omega0[t] = bose_occupation(bath.omega0, t, cfg.constants)
        for tc, point in zip(cycle_times, results):
            nu, c00 = point[j]
            value = nu if observable == "heating" else fringe_visibility(c00, nu)
            res.rows.append((tc, tc * bath.omega_cutoff / (2 * math.pi), t, float(value)))
    res.rows.sort(key=lambda r: (r[2], r[0]))
    return res


def run_sweep(cfg: RunConfig, out_dir, observable: str) -> list[Path]:
    out = _prepare(out_dir)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        bath = cfg.bath()
        s = cfg.sweep
        grid = sweep_cycle_times(bath, s["min"], s["max"], s["count"], s["spacing"], s["units"])
        res = sweep(bath, cfg.temperatures, grid, cfg.total_time_value, observable, cfg,
                    workers=cfg.workers)
    rows = np.array(res.rows)
    files = [write_csv(out / f"sweep_{observable}.csv", ["Tc_s", "wcTc_over_2pi", "T_K", "value"],
                       rows.T)]
    symbol = "nu(1/gamma)" if observable == "heating" else "eta(1/gamma)"
    ylog = cfg.plot["y_scale"] == "log"
    normalized = []
    for t in sorted(res.free_values):
        _, x, v = res.curve(t)
        path = out / f"sweep_{observable}_T{t:g}K.svg"
        svgplot.line_plot(path, [
            svgplot.Curve(x, v, "with kicks", marker="circle"),
            svgplot.Curve(x, np.full_like(x, res.free_values[t]), "without kicks", dashed=True),
        ], title=f"{symbol} vs cycle time, T = {t:g} K", xlabel="omega_c Tc / 2pi",
            ylabel=symbol, xlog=True, ylog=ylog)
        files.append(path)
        scale = res.n_omega0[t] if observable == "heating" and res.n_omega0[t] > 0 else 1.0
        normalized.append(svgplot.Curve(x, v / scale, f"T = {t:g} K", marker="circle"))
    path = out / f"sweep_{observable}_normalized.svg"
    svgplot.line_plot(path, normalized,
                      title=(f"{symbol} / N(omega0)" if observable == "heating" else symbol)
                      + " for all temperatures",
                      xlabel="omega_c Tc / 2pi", ylabel="normalized value", xlog=True, ylog=ylog)
    files.append(path)
    files.append(_manifest(out, f"sweep-{observable}", cfg, files, caught, {
        "free_values": {f"{t:g}": v for t, v in sorted(res.free_values.items())},
        "n_omega0": {f"{t:g}": v for t, v in sorted(res.n_omega0.items())},
    }))
    return files


def run_wigner(cfg: RunConfig, out_dir) -> list[Path]:
    out = _prepare(out_dir)
    w = cfg.wigner
    cat = cfg.cat_spec
    files, info = [], {}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        bath = cfg.bath()
        tc = cfg.cycle_time_for("wigner")
        n_total = cycles_within(cfg.total_time_value, tc)
        cycles = sorted(set(w["cycles"] if w["cycles"] is not None else [0, 1, n_total]))
        occ = build_occupations(bath, cfg.temperature, cfg.constants)
        if w["mode"] == "kicked":
            schedule = make_schedule(tc, cfg.kick_fraction, max(cycles))
            all_rows = stroboscopic_rows(cycle_matrix(bath, schedule, cfg.cycle_order), max(cycles))
            rows = [all_rows[k] for k in cycles]
        else:
            rows = free_evolution_row(bath, [k * tc for k in cycles])
        for k, row in zip(cycles, rows):
            nu = float(occ.occupations @ row.bath_weights)
            grid = wigner_cat(w["re_range"], w["im_range"], w["resolution"], cat, row.c00, nu)
            eta = fringe_visibility(row.c00, nu)
            header = (f"# re_min={_num(grid.re_range[0])},re_max={_num(grid.re_range[1])},"
                      f"im_min={_num(grid.im_range[0])},im_max={_num(grid.im_range[1])},"
                      f"resolution={grid.resolution},mode={w['mode']},cycles={k},"
                      f"t_s={_num(row.elapsed)},rows=im,cols=re")
            body = "\n".join(",".join(_num(v) for v in line) for line in grid.values)
            path = out / f"wigner_N{k}.csv"
            path.write_text(header + "\n" + body + "\n")
            svg = out / f"wigner_N{k}.svg"
            svgplot.heatmap(svg, grid.values, grid.re_range, grid.im_range,
                            title=f"Wigner function after {k} cycles ({w['mode']})",
                            xlabel="Re alpha", ylabel="Im alpha")
            files += [path, svg]
            info[str(k)] = {"t_s": row.elapsed, "nu": nu, "eta": eta,
                            "c00_abs": abs(row.c00), "integral": grid.integral(),
                            "interference_weight": math.exp(-2 * abs(cat.alpha0) ** 2 * eta)}
    files.append(_manifest(out, "wigner", cfg, files, caught,
                           {"cycle_time_s": tc, "snapshots": info}))
    return files


def _reduced_bath(cfg: RunConfig, n_modes=11) -> BathSpec:
    """Small bath spanning the same band ``[0, 2 omega0]`` as the default."""
    half = (n_modes - 1) // 2
    bath = build_bath(cfg.omega0, cfg.gamma, n_modes, cfg.omega0 / half)
    if cfg.coupling_scale != 1.0:
        bath = with_couplings(bath, bath.couplings * cfg.coupling_scale)
    return bath


def _markov_reports(cfg: RunConfig, bath: BathSpec) -> list[OracleReport]:
    g = bath.gamma
    times = np.linspace(MARKOV_WINDOW[0] / g, MARKOV_WINDOW[1] / g, 300)
    rows = free_evolution_row(bath, times)
    c00_abs2 = np.array([abs(r.c00) ** 2 for r in rows])
    weights = np.array([r.bath_weights for r in rows])
    window = f"{MARKOV_WINDOW[0]:g}/gamma <= t <= {MARKOV_WINDOW[1]:g}/gamma"
    reports = [OracleReport(
        "markov_amplitude",
        float(np.max(np.abs(c00_abs2 / np.exp(-g * times) - 1))), MARKOV_RTOL,
        f"|C00|^2 vs exp(-gamma t), relative, {window}")]
    worst, where = 0.0, ""
    for t in cfg.temperatures:
        if t == 0:
            continue
        occ = build_occupations(bath, t, cfg.constants)
        n0 = bose_occupation(bath.omega0, t, cfg.constants)
        rel = np.abs(weights @ occ.occupations / (n0 * -np.expm1(-g * times)) - 1)
        i = int(np.argmax(rel))
        if rel[i] >= worst:
            worst, where = float(rel[i]), f"T={t:g} K, t={times[i] * g:.3g}/gamma"
    reports.append(OracleReport("markov_heating", worst, MARKOV_RTOL,
                                f"nu vs N(omega0)(1-exp(-gamma t)), relative, {window}; worst at {where}"))
    occ = build_occupations(bath, 0.01, cfg.constants)
    n0 = bose_occupation(bath.omega0, 0.01, cfg.constants)
    eta = fringe_visibility(np.sqrt(c00_abs2), weights @ occ.occupations)
    rel = np.abs(eta / markov_visibility(times, g, n0) - 1)
    reports.append(OracleReport("markov_visibility", float(rel.max()), MARKOV_RTOL,
                                f"eta vs Markov visibility at T=0.01 K, relative, {window}"))
    return reports


def validation_reports(cfg: RunConfig) -> list[OracleReport]:
    """Oracle suite: RK4, convolution quadrature, revival, unitarity, Markov regression."""
    reports = []
    small = _reduced_bath(cfg)
    t = 1 / small.gamma
    kick = make_schedule(78.5e-9, cfg.kick_fraction)
    divisor = cfg.validate["rk4_step_divisor"]
    for label, dw, dur in (("free", 0.0, t), ("kick", kick.frequency_shift, kick.kick_duration)):
        gen = build_generator(small, dw)
        exact = segment_unitary(gen, dur).entries
        h = max_rk4_step(gen) / divisor
        err = float(np.max(np.abs(rk4_propagate(gen, dur, h).entries - exact)))
        reports.append(OracleReport(f"rk4_{label}", err, 1e-8,
                                    f"{small.n_modes}-mode bath, dw={dw:.4g}, t={dur:.4g} s, step=max/{divisor:g}"))
        if label == "free":
            err2 = float(np.max(np.abs(rk4_propagate(gen, dur, h / 2).entries - exact)))
            ratio = err / err2
            reports.append(OracleReport("rk4_order", 1 / ratio, 1 / 12,
                                        f"error ratio on step halving = {ratio:.2f} (need >= 12)",
                                        {"ratio": ratio}))
        conv = max(abs(convolution_L0k(small, dw, k, dur, dur / 1e4) - exact[0, small.column(k)])
                   for k in small.mode_labels)
        reports.append(OracleReport(f"convolution_{label}", float(conv), 1e-6,
                                    f"{small.n_modes}-mode bath, all k, t={dur:.4g} s, step=t/1e4"))

    bath = cfg.bath()
    reports.append(revival_check(bath))
    worst = 0.0
    free_gen = generator_for(bath, 0.0)
    for tc in (157e-9, 78.5e-9):
        sch = make_schedule(tc, cfg.kick_fraction)
        worst = max(worst,
                    unitarity_error(segment_unitary(free_gen, sch.free_duration)),
                    unitarity_error(segment_unitary(generator_for(bath, sch.frequency_shift),
                                                    sch.kick_duration)),
                    unitarity_error(cycle_matrix(bath, sch, cfg.cycle_order)))
    worst = max(worst, unitarity_error(segment_unitary(free_gen, 1 / bath.gamma)))
    reports.append(OracleReport("unitarity", worst, 1e-10,
                                f"{bath.n_modes}-mode bath, segment and cycle matrices"))
    reports.extend(_markov_reports(cfg, bath))
    return reports


def run_validate(cfg: RunConfig, out_dir=None) -> tuple[bool, list[OracleReport]]:
    reports = validation_reports(cfg)
    for r in reports:
        print(r.line())
    ok = all(r.passed for r in reports)
    print("ALL PASS" if ok else f"{sum(not r.passed for r in reports)} check(s) FAILED")
    if out_dir is not None:
        out = _prepare(out_dir)
        doc = [{"name": r.name, "max_abs_error": r.max_abs_error, "tolerance": r.tolerance,
                "passed": r.passed, "instance": r.instance_descriptor, "details": r.details}
               for r in reports]
        (out / "validation.json").write_text(json.dumps(doc, indent=2) + "\n")
    return ok, reports
