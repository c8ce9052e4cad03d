"""
Sweeping the cycle time.

Suppression only works when kicks come faster than the inverse bath
cutoff. The heating curves normalized by N(omega0) coincide for every
temperature, whereas decoherence suppression degrades as T grows.
Writes CSV and SVG files to demos/out/sweeps.
"""
from pathlib import Path

from paritykick import predict_threshold
from paritykick.harness import parse_config
from paritykick.harness.scenarios import run_sweep, sweep, sweep_cycle_times

cfg = parse_config({"workers": 4})
bath = cfg.bath()
grid = sweep_cycle_times(bath, 0.05, 5.0, 24)

heat = sweep(bath, cfg.temperatures, grid, 1 / bath.gamma, "heating", cfg, workers=4)
for t in cfg.temperatures:
    _, x, v = heat.curve(t)
    ratio = v / heat.free_values[t]
    last = x[ratio < 0.1].max()
    print(f"T = {t:g} K: nu below 10% of free up to omega_c Tc/2pi = {last:.3f}")

deco = sweep(bath, cfg.temperatures, grid, 1 / bath.gamma, "decoherence", cfg, workers=4)
for t in cfg.temperatures:
    _, x, v = deco.curve(t)
    limit = predict_threshold(t, bath)
    print(f"T = {t:g} K: smallest eta = {v.min():.3f}, "
          f"predicted threshold Tc = {limit.cycle_time:.3g} s ({limit.branch})")

out = Path(__file__).parent / "out" / "sweeps"
for observable in ("heating", "decoherence"):
    files = run_sweep(cfg, out, observable)
    print("wrote", ", ".join(f.name for f in files))
