"""JSON family specification: validation and construction."""

import json
import logging
from pathlib import Path
from typing import Any

import voluptuous as vol

from ..bin.kind import FamilyKind
from ..const import FAMILY_KIND_MAPPING
from ..exceptions import InvalidFamilySpecException
from .base import ParamFamily
from .matrix_path import DIAGONAL_FORMS
from .schrodinger import NAMED_POTENTIALS

_LOGGER = logging.getLogger(__name__)

ALPHA = vol.All(
    vol.Coerce(float), vol.Range(min=0.0, max=1.0, min_included=False)
)

FAMILY_SPEC_SCHEMA = vol.Schema(
    {
        vol.Required("kind"): vol.In([kind.value for kind in FAMILY_KIND_MAPPING]),
        vol.Optional("params", default={}): dict,
        vol.Optional("alpha", default=1.0): ALPHA,
    }
)

PARAMS_SCHEMAS: dict[FamilyKind, vol.Schema] = {
    FamilyKind.ROUGH_COUPLING: vol.Schema(
        {vol.Optional("scale", default=1.0): vol.Coerce(float)}
    ),
    FamilyKind.CROSSING_LINES: vol.Schema(
        {
            vol.Required("slopes"): vol.All([vol.Coerce(float)], vol.Length(min=2)),
            vol.Optional("offsets"): [vol.Coerce(float)],
            vol.Optional("mixer_seed"): vol.Any(None, int),
        }
    ),
    FamilyKind.SCHRODINGER: vol.Schema(
        {
            vol.Required("n"): vol.All(int, vol.Range(min=2)),
            vol.Optional("potential", default="zero"): vol.In(NAMED_POTENTIALS),
            vol.Optional("strength", default=1.0): vol.Coerce(float),
        }
    ),
    FamilyKind.RANDOM_HOLDER: vol.Schema(
        {
            vol.Required("seed"): int,
            vol.Required("N"): vol.All(int, vol.Range(min=1)),
            vol.Optional("terms", default=1): vol.All(int, vol.Range(min=0)),
        }
    ),
    FamilyKind.DIAGONAL_PATH: vol.Schema(
        {
            vol.Required("entries"): vol.All(
                [
                    {
                        vol.Optional("form", default="constant"): vol.In(
                            DIAGONAL_FORMS
                        ),
                        vol.Optional("coefficient", default=1.0): vol.Coerce(float),
                        vol.Optional("offset", default=0.0): vol.Coerce(float),
                    }
                ],
                vol.Length(min=1),
            )
        }
    ),
    FamilyKind.SHIFT: vol.Schema(
        {vol.Required("base"): vol.All([vol.Coerce(float)], vol.Length(min=1))}
    ),
}


def validate_family_spec(spec: dict[str, Any]) -> dict[str, Any]:
    """Return the family spec with defaults, or raise naming the bad field."""
    _spec = _validate(FAMILY_SPEC_SCHEMA, spec, prefix=[])
    _kind = FamilyKind.from_string(_spec["kind"])
    _spec["params"] = _validate(PARAMS_SCHEMAS[_kind], _spec["params"], ["params"])
    return _spec


def _validate(schema: vol.Schema, data: Any, prefix: list[str]) -> Any:
    """Run a schema, translating voluptuous errors into our own."""
    try:
        return schema(data)
    except vol.Invalid as e:
        _field = ".".join(str(part) for part in [*prefix, *e.path])
        raise InvalidFamilySpecException(_field or "<root>", e.msg) from e


def family_from_spec(spec: dict[str, Any]) -> ParamFamily:
    """Build a family from a JSON family specification."""
    _spec = validate_family_spec(spec)
    _kind = FamilyKind.from_string(_spec["kind"])
    _family = FAMILY_KIND_MAPPING[_kind].from_spec(_spec["params"], _spec["alpha"])
    _LOGGER.info("Built %s from specification", _family)
    return _family


def load_family_spec(source: str) -> dict[str, Any]:
    """Load a family specification from inline JSON or a JSON file path."""
    try:
        if source.lstrip().startswith("{"):
            _spec = json.loads(source)
        else:
            _spec = json.loads(Path(source).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidFamilySpecException("<root>", f"unreadable spec: {e}") from e

    if not isinstance(_spec, dict):
        raise InvalidFamilySpecException("<root>", "spec must be a JSON object")
    return _spec
