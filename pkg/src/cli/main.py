import argparse
import logging
import sys

import yaml

from src.cli.commands import (DATASET_TABLES, SOLVATION, cmd_crossover, cmd_datasets, cmd_dynamics, cmd_fit,
                              cmd_lorentzian, cmd_spectral)
from src.cli.config import load_run_config, parse_overrides
from src.cli.output import write_table
from src.constants import LOG_LEVEL
from src.errors import EXIT_CONFIG, EXIT_NUMERIC, ChromoEnvError, ConfigError, InvalidParameterError
from src.fitting.multiexp import MAX_COMPONENTS, MIN_STARTS

logger = logging.getLogger(__name__)

CONFIG_COMMANDS = {
    "spectral": cmd_spectral,
    "lorentzian": cmd_lorentzian,
    "dynamics": cmd_dynamics,
    "crossover": cmd_crossover,
}


def _common_options(default):
    """Global flags; accepted before or after the sub-command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=str, default=default,
                        help='Flat YAML run configuration (see config/defaults.yaml)')
    common.add_argument('--out', type=str, default=default, help='Output CSV path (default: stdout)')
    common.add_argument('--tol', type=float, default=default, help='Relative quadrature tolerance (overrides rtol)')
    common.add_argument('--seed', type=int, default=default, help='Seed for the fit multi-start (overrides seed)')
    return common


def build_parser():
    # sub-command copies must not reset a value given before the sub-command
    common = _common_options(argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        parents=[_common_options(None)],
        description="Spectral densities, dephasing and solvation dynamics of a chromophore in a "
                    "protein / bound water / solvent environment.",
        epilog="Any RunConfig key can be overridden with --key value.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectral", parents=[common], help="J(w) on a frequency grid")
    sub.add_parser("lorentzian", parents=[common], help="Lorentzian parameters of the three components")
    sub.add_parser("dynamics", parents=[common], help="theta, Gamma, |rho_12|, nu and C(t) on a time grid")
    sub.add_parser("crossover", parents=[common], help="crossover frequencies and regime labels")

    fit = sub.add_parser("fit", parents=[common], help="multi-exponential fit of C(t) data")
    fit.add_argument('--input', type=str, required=True, help='Two or three columns: t_ps, C[, sigma]')
    fit.add_argument('--n', type=int, default=2, help=f'Number of exponentials (1..{MAX_COMPONENTS})')
    fit.add_argument('--energy-cm1', type=float, default=None, help='Reorganisation energy E_R for couplings')
    fit.add_argument('--starts', type=int, default=MIN_STARTS, help='Number of multi-start seeds')

    datasets = sub.add_parser("datasets", parents=[common], help="bundled reference tables")
    datasets.add_argument('--table', choices=DATASET_TABLES, default=SOLVATION)
    datasets.add_argument('--filter', type=str, default=None, help='Case-insensitive substring filter')
    return parser


def _overrides(args, extra):
    overrides = parse_overrides(extra)
    if args.tol is not None:
        overrides["rtol"] = args.tol
    if args.seed is not None:
        overrides["seed"] = args.seed
    return overrides


def run(args, extra):
    config = load_run_config(args.config, _overrides(args, extra))
    mapping = config.to_dict()
    allow_blank = ()
    if args.command in CONFIG_COMMANDS:
        logger.info("running %s for model %s", args.command, config.model)
        result = CONFIG_COMMANDS[args.command](config)
    elif args.command == "fit":
        mapping.update({"input": args.input, "n": args.n, "energy_cm1": args.energy_cm1, "starts": args.starts})
        result = cmd_fit(args.input, args.n, args.energy_cm1, seed=config.seed, n_starts=args.starts)
    else:
        mapping.update({"table": args.table, "filter": args.filter})
        result = cmd_datasets(args.table, args.filter)
        allow_blank = tuple(result.table.columns)
    write_table(result, args.command, mapping, args.out, allow_blank)
    if result.error is not None:
        raise result.error
    return result.exit_code


def main(argv=None):
    logging.basicConfig(level=LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    try:
        return run(args, extra)
    except ConfigError as e:
        print(f"ERROR: Invalid configuration: {e}", file=sys.stderr)
        return e.exit_code
    except InvalidParameterError as e:
        # configuration values are checked up front; anything left came out of a computation
        print(f"ERROR: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except ChromoEnvError as e:
        print(f"ERROR: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except FileNotFoundError as e:
        print(f"ERROR: Missing a required input file: {e.filename}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, yaml.YAMLError) as e:
        print(f"ERROR: A configuration file is empty or has an invalid format: {e}", file=sys.stderr)
        return EXIT_CONFIG
