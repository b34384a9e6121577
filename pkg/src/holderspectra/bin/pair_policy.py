"""Defines which grid pairs enter a Hölder quotient supremum."""

import enum


class PairPolicy(enum.Enum):
    """An Enum class for pair selection policies."""

    AUTO = "auto"
    ALL = "all"
    DYADIC = "dyadic"

    @classmethod
    def from_string(cls, policy_value: str | None) -> "PairPolicy":
        """Convert a policy string to a PairPolicy enum."""
        for policy in cls:
            if policy.value == policy_value:
                return policy
        return cls.AUTO
