"""Defines the family kinds accepted by the JSON family specification."""

import enum


class FamilyKind(enum.Enum):
    """An Enum class for parametrized family kinds."""

    UNDEFINED = None
    ROUGH_COUPLING = "rough_coupling"
    CROSSING_LINES = "crossing_lines"
    SCHRODINGER = "schrodinger"
    RANDOM_HOLDER = "random_holder"
    DIAGONAL_PATH = "diagonal_path"
    SHIFT = "shift"
    PULLBACK = "pullback"
    MATRIX_PATH = "matrix_path"

    @classmethod
    def from_string(cls, kind_value: str | None) -> "FamilyKind":
        """Convert a kind string to a FamilyKind enum."""
        for kind in cls:
            if kind.value == kind_value:
                return kind
        return cls.UNDEFINED
