"""Defines the strategies for continuing an eigenvalue through a crossing."""

import enum


class Strategy(enum.Enum):
    """An Enum class for continuous selection strategies."""

    ORDERED = "ordered"
    SECANT = "secant"
    STRICT = "strict"

    @classmethod
    def from_string(cls, strategy_value: str | None) -> "Strategy":
        """Convert a strategy string to a Strategy enum, defaulting to secant."""
        for strategy in cls:
            if strategy.value == strategy_value:
                return strategy
        return cls.SECANT
