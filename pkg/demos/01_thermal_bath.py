"""
The discretized thermal bath.

A flat band of 201 modes around omega0 = 1e7 rad/s with spacing
delta = 1e5 rad/s and couplings fixed by the damping rate gamma.
"""
import numpy as np

from paritykick import bose_occupation, build_bath, build_occupations, without_zero_mode

bath = build_bath()
print(f"{bath.n_modes} modes from {bath.mode_frequencies[0]:g} to {bath.omega_cutoff:g} rad/s")
print(f"coupling per mode g_k = {bath.couplings[0]:.4g} rad/s")
print(f"revival time 2pi/delta = {bath.revival_time * 1e6:.2f} us, "
      f"validity horizon pi/delta = {bath.horizon * 1e6:.2f} us")

for t in (0.01, 0.1, 1.0):
    print(f"T = {t:5g} K   N(omega0) = {bose_occupation(bath.omega0, t):10.2f}")

# the omega = 0 mode has no finite Bose occupation; it is evaluated at omega = delta
occ = build_occupations(bath, 0.01)
print("lowest five occupations at 10 mK:", np.round(occ.occupations[:5], 1))
dropped = without_zero_mode(bath)
print(f"dropping the zero mode leaves {dropped.n_modes} modes")
