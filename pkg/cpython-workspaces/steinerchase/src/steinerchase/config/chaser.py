"""This module provides the ChaserConfig class, which selects the chasing
algorithm and its knobs.
"""

from .schema import check_value


class ChaserConfig:
    """
    Handles chaser configuration and validation.

    Attributes:
        algorithm (str): One of "steiner", "levelset", "greedy", "nested".
        substeps (int): Sub-requests per function request (m).
        r_policy (str): Level-set radius policy, "large" or "small".
        r_slack (float): Slack above OPT used by the small policy.
        greedy_steps (int): Subgradient steps the greedy baseline spends on a function request.
        CHASER_SCHEMA (dict): Validation schema for chaser configuration keys.
    """

    DEFAULTS: dict = {
        "algorithm": "steiner",
        "substeps": 1,
        "r_policy": "large",
        "r_slack": 0.01,
        "greedy_steps": 50,
    }

    CHASER_SCHEMA: dict = {
        "algorithm": {
            "type": str,
            "allowed_values": ["steiner", "levelset", "greedy", "nested"],
        },
        "substeps": {"type": int, "min": 1, "max": 4096},
        "r_policy": {"type": str, "allowed_values": ["large", "small"]},
        "r_slack": {"type": float, "min": 1e-12, "max": 1e6},
        "greedy_steps": {"type": int, "min": 1, "max": 1_000_000},
    }

    def __init__(self, chaser_dict: dict | None = None) -> None:
        """
        Initializes the ChaserConfig object with values from a dictionary.

        Args:
            chaser_dict (dict | None): Overrides for the defaults.

        Raises:
            KeyError: If the dictionary contains an unknown key.
            TypeError: If a value has the wrong type.
            ValueError: If a value is out of range.
        """
        values = dict(self.DEFAULTS)
        for key, value in (chaser_dict or {}).items():
            self.validate(key, value)
            values[key] = value

        self.algorithm: str = values["algorithm"]
        self.substeps: int = values["substeps"]
        self.r_policy: str = values["r_policy"]
        self.r_slack: float = values["r_slack"]
        self.greedy_steps: int = values["greedy_steps"]

    def validate(self, key: str, value) -> None:
        """
        Validates a chaser configuration value against its schema.

        Args:
            key (str): The configuration key to validate.
            value: The value to validate.

        Raises:
            KeyError: If the key is not a chaser setting.
            TypeError: If the value is not of the expected type.
            ValueError: If the value is out of the allowed range.
        """
        if key not in self.CHASER_SCHEMA:
            raise KeyError(key)
        check_value(self.CHASER_SCHEMA[key], value)

    def to_dict(self) -> dict:
        """Convert the settings to a dictionary for JSON serialization."""
        return {key: getattr(self, key) for key in self.DEFAULTS}
