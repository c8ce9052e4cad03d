"""
A Schroedinger cat in the thermal bath.

The fringe visibility eta measures lost coherence between the two
components. With kicks every 78.5 ns the interference fringes of the
Wigner function survive up to 1/gamma; without kicks they are gone.
"""
import math
from pathlib import Path

from paritykick import (CatStateSpec, build_bath, build_occupations, decoherence_series,
                        make_schedule, wigner_cat)
from paritykick.harness import parse_config
from paritykick.harness.scenarios import run_wigner

bath = build_bath()
occ = build_occupations(bath, 0.01)
cat = CatStateSpec(2.0, 0.0)

schedule = make_schedule(78.5e-9, 1 / 7, 127)
kicked = decoherence_series(bath, occ, cat, schedule=schedule)
free = decoherence_series(bath, occ, cat, times=[kicked.times[-1]])
print(f"eta at t = {kicked.times[-1] * 1e6:.3f} us: kicked {kicked.eta[-1]:.4f}, free {free.eta[-1]:.4f}")

for label, series in (("kicked", kicked), ("free", free)):
    c00 = math.sqrt(series.c00_abs2[-1])
    grid = wigner_cat((-4, 4), (-4, 4), 121, cat, c00, series.nu[-1])
    print(f"{label:7s} Wigner: min {grid.values.min():+.4f}, integral {grid.integral():.4f}, "
          f"fringe weight exp(-2|alpha0|^2 eta) = {math.exp(-8 * series.eta[-1]):.3g}")
# the free state has spread to width ~sqrt(1 + 2 nu), far beyond the plotted square,
# so its integral over the grid falls well short of one

files = run_wigner(parse_config({"wigner": {"cycles": [0, 32, 127]}}),
                   Path(__file__).parent / "out" / "wigner")
print("wrote", ", ".join(f.name for f in files))
