"""
Command line entry point::

    simulate heating|decoherence|sweep-heating|sweep-decoherence|wigner|validate \
        --config run.json --out results/ [--override-horizon]
"""
import argparse
import logging
import sys

from .config import ConfigError, load_config
from . import scenarios

COMMANDS = {
    "heating": scenarios.run_heating,
    "decoherence": scenarios.run_decoherence,
    "sweep-heating": lambda cfg, out: scenarios.run_sweep(cfg, out, "heating"),
    "sweep-decoherence": lambda cfg, out: scenarios.run_sweep(cfg, out, "decoherence"),
    "wigner": scenarios.run_wigner,
}


def parse_args(argv=None):
    parser = argparse.ArgumentParser(
        prog="simulate",
        description="Parity-kick decoupling of a damped oscillator in a finite thermal bath.")
    parser.add_argument("command", choices=[*COMMANDS, "validate"])
    parser.add_argument("--config", default=None,
                        help="JSON run configuration (defaults reproduce the reference scenarios)")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--override-horizon", action="store_true",
                        help="allow total_time beyond pi/delta")
    return parser.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args.config, args.override_horizon)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    out = args.out or cfg.output_dir
    if args.command == "validate":
        ok, _ = scenarios.run_validate(cfg, out)
        return 0 if ok else 1
    if out is None:
        print("error: --out (or output_dir in the config) is required", file=sys.stderr)
        return 2
    try:
        files = COMMANDS[args.command](cfg, out)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 1
    for f in files:
        print(f)
    return 0


if __name__ == "__main__":
    sys.exit(main())
