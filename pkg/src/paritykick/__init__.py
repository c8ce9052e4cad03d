"""Parity-kick decoupling of a damped harmonic oscillator in a finite thermal bath."""
from .model import (CODATA, BathSpec, CatStateSpec, KickSchedule, OccupationVector,
                    PhysicalConstants, bose_occupation, build_bath, build_occupations,
                    make_schedule, with_couplings, without_zero_mode)
from .observables import (ObservableSeries, WignerGrid, decoherence_series, fringe_visibility,
                          heating_series, markov_heating, markov_visibility,
                          mean_vibrational_number, predict_threshold, wigner_cat)
from .propagator import (AmplitudeRow, GeneratorMatrix, HorizonWarning, PropagationError,
                         TransferMatrix, build_generator, cycle_matrix, free_evolution_row,
                         segment_unitary, stroboscopic_rows)

__version__ = "0.1.0"
