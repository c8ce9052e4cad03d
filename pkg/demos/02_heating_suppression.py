"""
Parity kicks suppress the heating of a ground-state oscillator.

Kicks every 157 ns (a kick lasts Tc/7) keep the mean vibrational number
near zero while the free oscillator thermalizes towards N(omega0).
"""
import numpy as np

from paritykick import build_bath, build_occupations, heating_series, make_schedule
from paritykick.observables import cycles_within

bath = build_bath()
occ = build_occupations(bath, 0.01)
total = 1 / bath.gamma

schedule = make_schedule(157e-9, 1 / 7, cycles_within(total, 157e-9))
kicked = heating_series(bath, occ, schedule=schedule)
free = heating_series(bath, occ, times=kicked.times)

print(" t (us)   nu kicked   nu free   nu Markov")
for i in np.linspace(0, len(kicked) - 1, 8).astype(int):
    print(f"{kicked.times[i] * 1e6:7.3f}  {kicked.nu[i]:9.4f}  {free.nu[i]:9.3f}  {free.nu_markov[i]:9.3f}")
print(f"suppression after {schedule.n_cycles} cycles: {kicked.nu[-1] / free.nu[-1]:.4f}")

# reversing the order inside each cycle hardly matters
swapped = heating_series(bath, occ, schedule=schedule, order="kick-first")
print(f"kick-first ordering gives nu = {swapped.nu[-1]:.4f}")
