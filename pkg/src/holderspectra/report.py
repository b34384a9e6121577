"""Run configuration, artifact writers, and report aggregation for the CLI."""

import csv
import json
import logging
from pathlib import Path
from typing import Any

import numpy as np
from packaging.version import InvalidVersion, Version
import voluptuous as vol

from .bin.pair_policy import PairPolicy
from .bin.strategy import Strategy
from .const import FORMAT_VERSION
from .exceptions import IncompatibleArtifactException, InvalidRunConfigException
from .families.spec import ALPHA
from .tracking import Branch

BRANCHES_CSV_HEADER = ("t", "value", "index", "switched")

SUMMARY_SUFFIX = "_summary.json"
REPORT_FILENAME = "summary.json"

CERTIFICATE_NOTE = (
    "Hölder certificates cover the tested grid pairs on the given compact "
    "interval only; they are evidence, not proofs."
)

POSITIVE = vol.Any(
    None, vol.All(vol.Coerce(float), vol.Range(min=0.0, min_included=False))
)


def _ordered_range(grid: dict[str, Any]) -> dict[str, Any]:
    """Reject ranges whose lower end is not below the upper end."""
    if not grid["lo"] < grid["hi"]:
        raise vol.Invalid("lo must be below hi", path=["lo"])
    return grid


def _ascending(grid: list[float]) -> list[float]:
    """Reject explicit grids that are not strictly ascending."""
    if np.any(np.diff(grid) <= 0):
        raise vol.Invalid("explicit grid must be strictly ascending")
    return grid


GRID_RANGE_SCHEMA = vol.All(
    {
        vol.Required("lo"): vol.Coerce(float),
        vol.Required("hi"): vol.Coerce(float),
        vol.Required("nodes"): vol.All(int, vol.Range(min=2)),
    },
    _ordered_range,
)

GRID_LIST_SCHEMA = vol.All([vol.Coerce(float)], vol.Length(min=2), _ascending)

RUN_CONFIG_SCHEMA = vol.Schema(
    {
        vol.Required("family_spec"): vol.Any(str, dict),
        vol.Optional("grid", default=None): vol.Any(
            None, GRID_RANGE_SCHEMA, GRID_LIST_SCHEMA
        ),
        vol.Optional("alpha", default=1.0): ALPHA,
        vol.Optional("strategy", default=Strategy.SECANT.value): vol.In(
            [strategy.value for strategy in Strategy]
        ),
        vol.Optional("pair_policy", default=PairPolicy.AUTO.value): vol.In(
            [policy.value for policy in PairPolicy]
        ),
        vol.Optional("outputs", default=None): vol.Any(None, str),
        vol.Optional("seed", default=None): vol.Any(None, int),
        vol.Optional("start_indices", default=[]): [vol.All(int, vol.Range(min=1))],
        vol.Optional("refine", default=False): bool,
        vol.Optional("switch_tol", default=None): POSITIVE,
        vol.Optional("crossing_tol", default=None): POSITIVE,
        vol.Optional("claimed_bound", default=None): POSITIVE,
        vol.Optional("center", default=None): vol.Any(None, vol.Coerce(float)),
        vol.Optional("radius", default=None): POSITIVE,
    }
)

_LOGGER = logging.getLogger(__name__)


def validate_run_config(config: dict[str, Any]) -> dict[str, Any]:
    """Return the run configuration with defaults, or raise naming the bad field."""
    try:
        return RUN_CONFIG_SCHEMA(config)
    except vol.Invalid as e:
        _field = ".".join(str(part) for part in e.path) or "<root>"
        raise InvalidRunConfigException(_field, e.msg) from e


def parse_grid(text: str) -> dict[str, Any] | list[float]:
    """Parse "lo:hi:nodes" or a comma separated list of nodes."""
    try:
        if ":" in text:
            _lo, _hi, _nodes = text.split(":")
            return {"lo": float(_lo), "hi": float(_hi), "nodes": int(_nodes)}
        return [float(part) for part in text.split(",")]
    except ValueError as e:
        raise InvalidRunConfigException("grid", f"cannot parse '{text}'") from e


def build_grid(config: dict[str, Any]) -> np.ndarray:
    """Return the grid of a validated run configuration as an array."""
    _grid = config.get("grid")
    if _grid is None:
        raise InvalidRunConfigException("grid", "a grid is required")
    if isinstance(_grid, dict):
        return np.linspace(_grid["lo"], _grid["hi"], _grid["nodes"])
    return np.asarray(_grid, dtype=float)


def write_json(path: Path, payload: dict[str, Any]) -> Path:
    """Write a JSON artifact stamped with the format version."""
    _payload = {"format_version": FORMAT_VERSION, **payload}
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(_payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    _LOGGER.debug("Wrote %s", path)
    return path


def write_branches_csv(path: Path, branches: list[Branch]) -> Path:
    """Write branches one after another, one row per node."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as _file:
        _writer = csv.writer(_file, lineterminator="\n")
        _writer.writerow(BRANCHES_CSV_HEADER)
        for _branch in branches:
            for _t, _value, _index, _switched in _branch.rows():
                _writer.writerow(
                    [repr(_t), repr(_value), _index, "true" if _switched else "false"]
                )
    _LOGGER.debug("Wrote %s branches to %s", len(branches), path)
    return path


def read_artifact(path: Path) -> dict[str, Any]:
    """Read a JSON artifact, refusing incompatible format versions."""
    _payload = json.loads(path.read_text(encoding="utf-8"))
    _version = str(_payload.get("format_version"))
    try:
        _compatible = Version(_version).major == Version(FORMAT_VERSION).major
    except InvalidVersion:
        _compatible = False
    if not _compatible:
        raise IncompatibleArtifactException(str(path), _version)
    return _payload


def aggregate_reports(directory: Path) -> dict[str, Any]:
    """Collect every command summary in a directory into one report."""
    _commands = {}
    _artifacts = []
    for _path in sorted(directory.glob("*.json")):
        if _path.name == REPORT_FILENAME:
            continue
        _payload = read_artifact(_path)
        _artifacts.append(_path.name)
        if _path.name.endswith(SUMMARY_SUFFIX):
            _command = _payload.get("command", _path.name)
            _commands[_command] = bool(_payload.get("passed"))

    _report = {
        "artifacts": _artifacts,
        "commands": _commands,
        "passed": bool(_commands) and all(_commands.values()),
        "note": CERTIFICATE_NOTE,
    }
    write_json(directory / REPORT_FILENAME, _report)
    return _report
