"""
Module: Parsing command-line arguments

Public Functions:
    parse_argv: Parse command-line arguments into a resolved configuration

Public Constants:
    SUBCOMMANDS (dict[str, str]): Subcommand to experiment kind
"""

from __future__ import annotations

from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Any, Optional, Sequence

from .experiment.config import ExperimentConfig, resolve_config
from .storage.json_ import Json
from .utils.error import OutputPathError

SUBCOMMANDS = {
    "fig1": "fig1",
    "fig2": "fig2",
    "fig3": "fig3",
    "noise-sweep": "noise-sweep",
    "revival-sweep": "revival-sweep",
    "run": "custom",
}

_HELP = {
    "fig1": "one-magnon diffusion on the unmodulated ring",
    "fig2": "exact periodic revivals under the step phase schedule",
    "fig3": "revival fidelity under truncated Fourier phase schedules",
    "noise-sweep": "attenuation factors with and without modulation over a σ_η grid",
    "revival-sweep": "disorder-averaged revival fidelity over a σ_η grid",
    "run": "custom register, schedule and initial state from a config file",
}


def parse_argv(argv: Optional[Sequence[str]] = None) -> ExperimentConfig:
    """
    Parse command-line arguments

    Args:
        argv (Sequence[str] | None): Arguments; `sys.argv[1:]` if None

    Returns:
        (ExperimentConfig): Configuration with file values and flag overrides
    """
    parser = ArgumentParser(
        description="Simulate a qubit-ring quantum register under phase modulation"
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for command, help_ in _HELP.items():
        _add_common_arguments(subparsers.add_parser(command, help=help_))
    args = parser.parse_args(argv, namespace=_Args())

    _prepare_argv(args)

    file_data = args.config.read() if args.config is not None else None
    return resolve_config(SUBCOMMANDS[args.command], file_data, _overrides(args))


class _Args(Namespace):
    """
    Command-line arguments object, for type annotations only
    """

    command: str
    config: Optional[Json]
    out: Optional[Path]
    seed: Optional[int]
    workers: Optional[int]
    n_sites: Optional[int]
    coupling: Optional[float]
    field: Optional[float]
    period: Optional[float]
    theta0: Optional[float]


def _add_common_arguments(parser: ArgumentParser) -> None:
    parser.add_argument(
        "-c",
        "--config",
        type=_json,
        help="JSON experiment config path (Optional)",
        dest="config",
    )
    parser.add_argument(
        "-o",
        "--out",
        type=_output_path,
        help="output CSV path (Default: <experiment>.csv)",
        dest="out",
    )
    parser.add_argument("-s", "--seed", type=int, help="master seed", dest="seed")
    parser.add_argument(
        "-w", "--workers", type=int, help="worker process count", dest="workers"
    )
    parser.add_argument("--n-sites", type=int, help="number of qubits N", dest="n_sites")
    parser.add_argument("--coupling", type=float, help="coupling λ", dest="coupling")
    parser.add_argument("--field", type=float, help="field B", dest="field")
    parser.add_argument("--period", type=float, help="modulation period T", dest="period")
    parser.add_argument("--theta0", type=float, help="base phase θ₀", dest="theta0")


def _output_path(arg: str) -> Path:
    """
    Output CSV location, made absolute so the parent check sees the real
        directory

    Args:
        arg (str): Value of --out

    Returns:
        (pathlib.Path): Resolved output path
    """
    return Path(arg).resolve()


def _json(arg: str) -> Json:
    """
    Experiment config reader for --config

    Args:
        arg (str): Value of --config

    Returns:
        (Json): Reader of the resolved path
    """
    return Json(Path(arg).resolve())


def _overrides(args: _Args) -> dict[str, Any]:
    return {
        "output": None if args.out is None else str(args.out),
        "master_seed": args.seed,
        "workers": args.workers,
        "ring": {"n_sites": args.n_sites, "coupling": args.coupling, "field": args.field},
        "schedule": {"period": args.period, "theta0": args.theta0},
    }


def _prepare_argv(args: _Args) -> None:
    """
    Check arguments validity and make preparations

    Args:
        args (_Args): Parsed command-line args
    """
    if args.config is not None and not args.config.path.is_file():
        raise FileNotFoundError(f"`config` is not a file: {args.config.path}")

    if args.out is not None:
        if args.out.exists() and not args.out.is_file():
            raise OutputPathError(f"`out` exists but is not a file: {args.out}")
        args.out.parent.mkdir(parents=True, exist_ok=True)
