"""
Cross-checking the spectral propagator.

The eigendecomposition propagator is compared with brute-force RK4 and
with a convolution quadrature for the bath amplitudes, and the finite
bath shows its recurrence at 2pi/delta.
"""
from paritykick import build_bath
from paritykick.harness import parse_config
from paritykick.harness.scenarios import run_validate
from paritykick.oracle import revival_check

ok, reports = run_validate(parse_config({}))

rev = revival_check(build_bath())
d = rev.details
print(f"|C00| at 1/gamma {d['c00_at_relaxation']:.3f}, at half the revival time "
      f"{d['c00_at_half_revival']:.3f}, strongest recurrence {d['peak_recurrence']:.3f} "
      f"at {d['peak_recurrence_time_s'] * 1e6:.1f} us")

# a doubled coupling keeps the dynamics unitary but breaks the damping rate
print("\nwith coupling_scale = 2:")
_, faulty = run_validate(parse_config({"coupling_scale": 2.0}))
