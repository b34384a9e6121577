"""Command line front end: gen, track, certify, project, and report."""

import argparse
from collections.abc import Callable, Sequence
import json
import logging
from pathlib import Path
import sys
from typing import Any

import numpy as np

from .bin.kind import FamilyKind
from .bin.pair_policy import PairPolicy
from .bin.strategy import Strategy
from .certification import (
    estimate_growth_constant,
    gronwall_check,
    holder_constant,
    verify_transfer_bound,
)
from .exceptions import (
    ContourHitsSpectrumException,
    DegenerateGridException,
    DimensionMismatchException,
    IncompatibleArtifactException,
    InvalidAlphaException,
    InvalidContourException,
    InvalidFamilySpecException,
    InvalidRunConfigException,
    NonLipschitzBranchException,
    NotHermitianException,
    OutOfDomainException,
    RankAmbiguousException,
    SpectraException,
)
from .families.base import ParamFamily
from .families.spec import family_from_spec, load_family_spec
from .hermitian import eig_ordered
from .projector import Contour, contour_projector, project_block
from .report import (
    CERTIFICATE_NOTE,
    SUMMARY_SUFFIX,
    aggregate_reports,
    build_grid,
    parse_grid,
    validate_run_config,
    write_branches_csv,
    write_json,
)
from .tracking import (
    continuous_selection,
    ordered_branches,
    sample_grid,
    track_family,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2

# Block eigenvalues must match the enclosed global eigenvalues this closely
BLOCK_AGREEMENT_TOLERANCE = 1e-8

INPUT_ERRORS = (
    DegenerateGridException,
    DimensionMismatchException,
    IncompatibleArtifactException,
    InvalidAlphaException,
    InvalidContourException,
    InvalidFamilySpecException,
    InvalidRunConfigException,
    NotHermitianException,
    OutOfDomainException,
)

_LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)

_LOGGER = logging.getLogger(__name__)

CommandResult = tuple[dict[str, Any], bool]


def cmd_gen(config: dict[str, Any]) -> CommandResult:
    """Echo the resolved family metadata."""
    return _load_family(config).summary(), True


def cmd_track(config: dict[str, Any]) -> CommandResult:
    """Write ordered branches, selections, and crossing events."""
    _family = _load_family(config)
    _result = track_family(
        _family,
        build_grid(config),
        strategy=Strategy.from_string(config["strategy"]),
        start_indices=config["start_indices"],
        crossing_tol=config["crossing_tol"],
        switch_tol=config["switch_tol"],
        refine=config["refine"],
    )

    _outputs = _outputs_dir(config)
    if _outputs is not None:
        write_branches_csv(
            _outputs / "branches.csv", _result.ordered + _result.selections
        )
        write_json(
            _outputs / "crossings.json",
            {"crossings": [event.to_dict() for event in _result.crossings]},
        )

    return {
        "family": _family.summary(),
        "nodes": len(_result.samples),
        "branches": len(_result.ordered),
        "selections": len(_result.selections),
        "switches": [len(selection.switch_points) for selection in _result.selections],
        "crossings": len(_result.crossings),
    }, True


def cmd_certify(config: dict[str, Any]) -> CommandResult:
    """
    Certify the branches of a family at exponent alpha.

    Without start indices the ordered branches are certified, otherwise the
    continuous selections starting there. The worst certificate is reported
    together with the transfer bound of the first selection and, at alpha 1,
    the Gronwall growth check of the worst branch.
    """
    _family = _load_family(config)
    _alpha = config["alpha"]
    _policy = PairPolicy.from_string(config["pair_policy"])
    _strategy = Strategy.from_string(config["strategy"])
    _samples = sample_grid(_family, build_grid(config))

    _selections = [
        continuous_selection(_samples, index, _strategy, config["switch_tol"])
        for index in config["start_indices"] or [1]
    ]
    _branches = _selections if config["start_indices"] else ordered_branches(_samples)
    _certificates = [
        holder_constant(branch, _alpha, _policy, config["claimed_bound"])
        for branch in _branches
    ]
    _worst = int(np.argmax([certificate.constant for certificate in _certificates]))
    _certificate = _certificates[_worst]
    _transfer = verify_transfer_bound(
        _family, _selections[0], _alpha, samples=_samples, pair_policy=_policy
    )

    _payload = {
        **_certificate.to_dict(),
        "index": int(_branches[_worst].indices[0]),
        "transfer": _transfer.to_dict(),
        "note": CERTIFICATE_NOTE,
    }
    _passed = _certificate.passed and _transfer.holds
    if _alpha == 1.0:
        _payload["gronwall"] = _gronwall_report(_branches[_worst])
        _passed = _passed and _payload["gronwall"]["holds"]

    _outputs = _outputs_dir(config)
    if _outputs is not None:
        write_json(_outputs / "certificate.json", _payload)
    return _payload, _passed


def cmd_project(config: dict[str, Any]) -> CommandResult:
    """Project onto a fixed contour at every grid node and compare blocks."""
    _family = _load_family(config)
    _grid = build_grid(config)
    _contour = _contour_from_config(config, _family, _grid)

    _nodes = []
    _failures = []
    _reference_rank = None
    for _t in _grid:
        _matrix = _family.eval(_t)
        _values = eig_ordered(_matrix).values
        try:
            _projector = contour_projector(_matrix, _contour)
        except (ContourHitsSpectrumException, RankAmbiguousException) as e:
            _LOGGER.warning("Projection failed at t=%s: %s", _t, e.message)
            _failures.append(float(_t))
            _nodes.append({"t": float(_t), "error": e.message})
            continue

        _block = eig_ordered(project_block(_matrix, _projector)).values
        _inside = _values[_contour.encloses(_values)]
        _error = None
        if _block.size == _inside.size:
            _error = float(np.abs(_block - _inside).max(initial=0.0))
        if _reference_rank is None:
            _reference_rank = _projector.rank
        if _projector.rank != _reference_rank or _error is None:
            _failures.append(float(_t))
        _nodes.append(
            {
                "t": float(_t),
                **_projector.diagnostics(),
                "block_eigenvalues": _block.tolist(),
                "block_error": _error,
            }
        )

    _errors = [
        node["block_error"] for node in _nodes if node.get("block_error") is not None
    ]
    _ranks = {node["rank"] for node in _nodes if "rank" in node}
    _max_error = max(_errors, default=0.0)
    _payload = {
        "contour": {
            "center": _contour.center,
            "radius": _contour.radius,
            "nodes": _contour.nodes,
        },
        "nodes": _nodes,
        "failures": _failures,
        "rank_constant": len(_ranks) <= 1,
        "max_block_error": _max_error,
    }
    _passed = not _failures and _max_error <= BLOCK_AGREEMENT_TOLERANCE

    _outputs = _outputs_dir(config)
    if _outputs is not None:
        write_json(_outputs / "projector_report.json", _payload)
    return _payload, _passed


COMMANDS: dict[str, Callable[[dict[str, Any]], CommandResult]] = {
    "gen": cmd_gen,
    "track": cmd_track,
    "certify": cmd_certify,
    "project": cmd_project,
}


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with one subcommand per pipeline."""
    _common = argparse.ArgumentParser(add_help=False)
    _common.add_argument(
        "-v", "--verbose", action="count", default=0, help="Increase log verbosity."
    )
    _common.add_argument("--out", type=str, help="Directory for the artifacts.")

    _family = argparse.ArgumentParser(add_help=False)
    _family.add_argument(
        "--spec", required=True, help="Family specification: JSON file or inline JSON."
    )
    _family.add_argument(
        "--seed", type=int, help="Seed for seeded families (random_holder)."
    )

    _run = argparse.ArgumentParser(add_help=False)
    _run.add_argument(
        "--grid", required=True, help="Grid as lo:hi:nodes or a comma separated list."
    )
    _run.add_argument("--alpha", type=float, default=1.0, help="Hölder exponent.")
    _run.add_argument(
        "--strategy",
        choices=[strategy.value for strategy in Strategy],
        default=Strategy.SECANT.value,
        help="Continuation strategy through crossings.",
    )
    _run.add_argument(
        "--pair-policy",
        choices=[policy.value for policy in PairPolicy],
        default=PairPolicy.AUTO.value,
        help="Pairs entering the Hölder supremum.",
    )
    _run.add_argument(
        "--start-index",
        type=int,
        action="append",
        default=None,
        help="Start a continuous selection on this ordered index. Repeatable.",
    )
    _run.add_argument(
        "--refine",
        action="store_true",
        help="Refine crossing brackets once before building selections.",
    )
    _run.add_argument("--tol-switch", type=float, help="Override switch_tol.")
    _run.add_argument("--tol-crossing", type=float, help="Override crossing_tol.")
    _run.add_argument(
        "--tol-claimed-bound",
        "--claimed-bound",
        dest="claimed_bound",
        type=float,
        help="Claimed Hölder bound to check the certificate against.",
    )
    _run.add_argument("--center", type=float, help="Contour center.")
    _run.add_argument("--radius", type=float, help="Contour radius.")

    _parser = argparse.ArgumentParser(
        prog="holder-spectra",
        description="Track, project, and certify eigenvalues of Hermitian families.",
    )
    _subparsers = _parser.add_subparsers(dest="command", required=True)
    _subparsers.add_parser(
        "gen", parents=[_common, _family], help="Echo the resolved family."
    )
    for _name, _help in (
        ("track", "Write ordered branches, selections, and crossings."),
        ("certify", "Certify Hölder regularity of branches."),
        ("project", "Track an eigenvalue group through a fixed contour."),
    ):
        _subparsers.add_parser(_name, parents=[_common, _family, _run], help=_help)
    _subparsers.add_parser(
        "report", parents=[_common], help="Aggregate the summaries in --out."
    )
    return _parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit code."""
    _args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=_LOG_LEVELS[min(_args.verbose, len(_LOG_LEVELS) - 1)],
        format="%(levelname)s %(name)s: %(message)s",
    )

    _outputs = Path(_args.out) if _args.out else None
    try:
        if _args.command == "report":
            if _outputs is None:
                raise InvalidRunConfigException("outputs", "report requires --out")
            _summary = aggregate_reports(_outputs)
            _passed = _summary["passed"]
        else:
            _config = validate_run_config(_config_from_args(_args))
            _summary, _passed = COMMANDS[_args.command](_config)
    except INPUT_ERRORS as e:
        _LOGGER.error("Invalid input: %s", e.message)
        _write_summary(_outputs, _args.command, {"error": e.message}, passed=False)
        return EXIT_BAD_INPUT
    except SpectraException as e:
        _LOGGER.error("Command %s failed: %s", _args.command, e.message)
        _write_summary(_outputs, _args.command, {"error": e.message}, passed=False)
        return EXIT_CHECK_FAILED
    except Exception:
        _LOGGER.exception("Unexpected error in command %s", _args.command)
        _write_summary(_outputs, _args.command, {"error": "unexpected"}, passed=False)
        raise

    if _args.command != "report":
        _write_summary(_outputs, _args.command, _summary, passed=_passed)
    sys.stdout.write(json.dumps(_summary, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if _passed else EXIT_CHECK_FAILED


def _config_from_args(args: argparse.Namespace) -> dict[str, Any]:
    """Translate parsed arguments into a run configuration."""
    _config: dict[str, Any] = {"family_spec": args.spec, "outputs": args.out}
    if args.seed is not None:
        _config["seed"] = args.seed
    if args.command == "gen":
        return _config

    _config.update(
        {
            "grid": parse_grid(args.grid),
            "alpha": args.alpha,
            "strategy": args.strategy,
            "pair_policy": args.pair_policy,
            "start_indices": args.start_index or [],
            "refine": args.refine,
            "switch_tol": args.tol_switch,
            "crossing_tol": args.tol_crossing,
            "claimed_bound": args.claimed_bound,
            "center": args.center,
            "radius": args.radius,
        }
    )
    return _config


def _load_family(config: dict[str, Any]) -> ParamFamily:
    """Build the family of a run configuration, applying --seed."""
    _spec = config["family_spec"]
    if isinstance(_spec, str):
        _spec = load_family_spec(_spec)
    _params = _spec.get("params") or {}
    if not isinstance(_params, dict):
        raise InvalidFamilySpecException("params", "expected a JSON object")
    _spec = {**_spec, "params": dict(_params)}
    if (
        config["seed"] is not None
        and FamilyKind.from_string(_spec.get("kind")) is FamilyKind.RANDOM_HOLDER
    ):
        _spec["params"]["seed"] = config["seed"]
    return family_from_spec(_spec)


def _contour_from_config(
    config: dict[str, Any], family: ParamFamily, grid: np.ndarray
) -> Contour:
    """Return the configured contour, or one around mu_1 at the first node."""
    if config["center"] is not None and config["radius"] is not None:
        return Contour(center=config["center"], radius=config["radius"])
    _values = eig_ordered(family.eval(grid[0])).values
    return Contour.around_group(_values, [1])


def _gronwall_report(branch) -> dict[str, Any]:
    """Estimate the growth model of a branch and check the Gronwall bound."""
    try:
        _model = estimate_growth_constant(branch)
    except NonLipschitzBranchException as e:
        return {"error": e.message, "holds": False}
    return {**_model.to_dict(), **gronwall_check(branch, _model).to_dict()}


def _outputs_dir(config: dict[str, Any]) -> Path | None:
    """Return the artifact directory of a run configuration."""
    return Path(config["outputs"]) if config["outputs"] else None


def _write_summary(
    outputs: Path | None, command: str, summary: dict[str, Any], passed: bool
):
    """Write the machine-readable command summary when an output dir is set."""
    if outputs is None:
        return
    write_json(
        outputs / f"{command}{SUMMARY_SUFFIX}",
        {**summary, "command": command, "passed": passed},
    )
