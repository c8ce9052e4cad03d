"""Config ingestion, scenario runners and file output for the ``simulate`` command."""
from .config import ConfigError, RunConfig, load_config, parse_config
from .scenarios import (SweepResult, run_decoherence, run_heating, run_sweep, run_validate,
                        run_wigner, sweep, sweep_cycle_times, validation_reports)
