"""Command-line front end: ``pydtqw <command> [flags]``.

Commands
--------
evolve       Evolve an initial state and write densities, norms and other observables.
verify       Run one verification suite (or all) and write a JSON report.
sweep        Evaluate the evolve summary over a grid of dt, a, mass and wilson_r.
spectrum     Phase-sorted spectrum of a walk or Hamiltonian.
map-coeffs   Real-space coefficients of the momentum-space map and their decay.
gauge-check  Gauge covariance, field-strength invariance and large-shift checks.

Exit status is 0 on success, 1 when a verification fails and 2 on a
configuration error.
"""

from __future__ import annotations

import argparse
import sys

import yaml

from ..verify import SUITES, Verifier
from ..walkclient import WalkClient
from .commands import COMMANDS
from .config import FORMATS, SCHEMES, RunConfig, load_run_config

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def _common_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--scheme", choices=SCHEMES, help="Walk, gauged walk or Hamiltonian to use.")
    parent.add_argument("--n-sites", type=int, help="Number of non-staggered sites (even, >= 4).")
    parent.add_argument("--dt", type=float, help="Time step.")
    parent.add_argument("--a", type=float, help="Lattice spacing.")
    parent.add_argument("--mass", type=float, help="Fermion mass.")
    parent.add_argument("--wilson-r", type=float, help="Wilson parameter r.")
    parent.add_argument("--steps", type=int, help="Number of time steps.")
    parent.add_argument("--config", help="JSON or YAML run configuration; flags override its values.")
    parent.add_argument("--out-dir", help="Directory for output files.")
    parent.add_argument("--seed", type=int, help="Seed for every randomized input.")
    parent.add_argument("--format", choices=FORMATS, help="Output format.")
    parent.add_argument("--debug", action="store_true", help="Debug-level logging.")
    return parent


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser with one subcommand per entry in ``COMMANDS``.

    Returns
    -------
    argparse.ArgumentParser
    """
    parser = argparse.ArgumentParser(prog="pydtqw", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    subparsers = parser.add_subparsers(dest="command", required=True)
    parent = _common_flags()
    for name, command in COMMANDS.items():
        sub = subparsers.add_parser(name, parents=[parent], help=(command.__doc__ or "").strip().splitlines()[0])
        if name == "verify":
            sub.add_argument("suite", nargs="?", choices=SUITES, help="Suite to run; all suites when omitted.")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge ``--config`` with the flags given on the command line."""
    overrides = {
        "scheme": args.scheme,
        "n_sites": args.n_sites,
        "dt": args.dt,
        "a": args.a,
        "mass": args.mass,
        "wilson_r": args.wilson_r,
        "steps": args.steps,
        "out_dir": args.out_dir,
        "seed": args.seed,
        "format": args.format,
        "suite": getattr(args, "suite", None),
    }
    return load_run_config(args.config, overrides)


def main(argv: list[str] | None = None) -> int:
    """
    Entry point of the ``pydtqw`` console script.

    Parameters
    ----------
    argv : list[str] | None
        Arguments without the program name; defaults to ``sys.argv[1:]``.

    Returns
    -------
    int
        ``0`` on success, ``1`` when a verification fails, ``2`` on a configuration error.
    """
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        client = WalkClient.from_params(config.params, debug=args.debug, seed=config.seed, out_dir=config.out_dir)
        client.logger.info(f"pydtqw {args.command}: {config.params.to_dict()}")
        return COMMANDS[args.command](config, Verifier(walk_client=client))
    except (ValueError, IndexError, FileNotFoundError, yaml.YAMLError) as e:
        print(f"pydtqw {args.command}: error: {e}", file=sys.stderr)
        return EXIT_CONFIG


__all__ = ["main", "build_parser", "resolve_config", "RunConfig", "load_run_config", "EXIT_OK", "EXIT_FAILED", "EXIT_CONFIG"]
