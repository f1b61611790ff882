"""Main entry point for the quantum ring command-line tool"""

import argparse
import logging
import sys
from typing import Dict, List, Optional

from .core.errors import QuantumRingError
from .ui.workbench import RingWorkbench
from .utils.config import parse_config, split_assignments
from .utils.output import write_table

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per run mode"""
    parser = argparse.ArgumentParser(
        prog='qring',
        description='Quantum double-Y ring - scattering, localized states and flux switching')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='More logging (-v info, -vv debug)')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='INI configuration file (default: $QRING_CONFIG)')
    common.add_argument('--set', action='append', metavar='SECTION.KEY=VALUE', dest='assignments',
                        help='Override any configuration key, e.g. node_I.beta=0.25*pi')
    common.add_argument('--symmetric', action='store_true', default=None,
                        help='Copy node_I parameters onto node_II')
    common.add_argument('--d', type=str, help='Arm length; sets xi_I=d, xi_II=0')
    common.add_argument('--output', help='Output file (default: stdout)')
    common.add_argument('--format', choices=['csv', 'json'], help='Output format (default: csv)')

    sub = parser.add_subparsers(dest='command', required=True)

    smatrix = sub.add_parser('smatrix', parents=[common], help='Print S_I, S_II and S_R at one k')
    smatrix.add_argument('--k', type=str, help='Wavenumber')
    smatrix.add_argument('--theta-B', type=str, dest='theta_B', help='AB phase (default: 0)')

    sweep_k = sub.add_parser('sweep-k', parents=[common], help='R and T over a k range')
    _add_k_range(sweep_k)

    sweep_flux = sub.add_parser('sweep-flux', parents=[common],
                                help='R and T over theta_B at fixed k (symmetric rings)')
    sweep_flux.add_argument('--k', type=str, help='Fixed wavenumber')
    sweep_flux.add_argument('--flux-min', type=str, help='First theta_B')
    sweep_flux.add_argument('--flux-max', type=str, help='Last theta_B')
    sweep_flux.add_argument('--flux-points', type=str, help='Number of theta_B values')

    localized = sub.add_parser('localized', parents=[common],
                               help='Find localized states in a k range')
    _add_k_range(localized)
    localized.add_argument('--theta-B', type=str, dest='theta_B', help='AB phase (default: 0)')
    localized.add_argument('--wavefunction', dest='wavefunction_path',
                           help='CSV path for sampled wavefunctions ({n} is the state index)')

    verify = sub.add_parser('verify', parents=[common], help='Compare against the oracle solvers')
    verify.add_argument('--seed', type=str, help='Random seed')
    verify.add_argument('--samples', type=str, help='Random rings per check')
    return parser


def _add_k_range(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--k-min', type=str, help='Lower wavenumber')
    parser.add_argument('--k-max', type=str, help='Upper wavenumber')
    parser.add_argument('--points', type=str, help='Number of grid points')


# Flag attribute -> configuration key
_FLAG_KEYS = {
    'd': 'ring.d',
    'symmetric': 'ring.symmetric',
    'output': 'output.path',
    'format': 'output.format',
    'wavefunction_path': 'output.wavefunction_path',
    'k': 'sweep.k',
    'theta_B': 'sweep.theta_B',
    'k_min': 'sweep.k_min',
    'k_max': 'sweep.k_max',
    'points': 'sweep.points',
    'flux_min': 'sweep.flux_min',
    'flux_max': 'sweep.flux_max',
    'flux_points': 'sweep.flux_points',
    'seed': 'sweep.seed',
    'samples': 'sweep.samples',
}


def collect_overrides(args: argparse.Namespace) -> Dict[str, object]:
    """Command-line values keyed by ``section.key``; flags win over ``--set``"""
    overrides: Dict[str, object] = dict(split_assignments(args.assignments))
    for attribute, key in _FLAG_KEYS.items():
        value = getattr(args, attribute, None)
        if value is not None:
            overrides[key] = value
    return overrides


def run(args: argparse.Namespace) -> int:
    """Execute the parsed subcommand and return the exit status"""
    config = parse_config(args.config, collect_overrides(args))
    workbench = RingWorkbench(config)

    if args.command == 'verify':
        report = workbench.run_verify()
        for line in report.lines():
            print(line)
        return EXIT_OK if report.passed else EXIT_VERIFY_FAILED

    if args.command == 'smatrix':
        table = workbench.smatrix_report()
    elif args.command == 'sweep-k':
        table = workbench.run_sweep_k()
    elif args.command == 'sweep-flux':
        table = workbench.run_sweep_flux()
    else:
        table = workbench.run_localized()

    write_table(table, config.output_path, config.output_format, stream=sys.stdout)
    if config.output_path:
        print(f"Wrote {len(table)} rows to {config.output_path}")
    for path in workbench.wavefunction_files:
        print(f"Wrote wavefunction samples to {path}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main function"""
    parser = build_parser()
    args = parser.parse_args(argv)

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')

    try:
        return run(args)
    except QuantumRingError as exc:
        print(f"qring {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
