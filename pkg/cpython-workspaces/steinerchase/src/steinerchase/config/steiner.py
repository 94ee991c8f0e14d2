"""This module provides the SteinerConfig class, the Monte-Carlo settings of the
Steiner point estimators.
"""

from .schema import check_value


class SteinerConfig:
    """
    Handles Steiner estimator configuration and validation.

    Attributes:
        samples (int): Number of direction draws M.
        seed (int): 64-bit seed of the counter-based random streams.
        antithetic (bool): Pair every draw with its reflection.
        common_random_numbers (bool): Reuse the same draws at every step of a run.
        STEINER_SCHEMA (dict): Validation schema for estimator configuration keys.
    """

    DEFAULTS: dict = {
        "samples": 4096,
        "seed": 0,
        "antithetic": True,
        "common_random_numbers": True,
    }

    STEINER_SCHEMA: dict = {
        "samples": {"type": int, "min": 2, "max": 100_000_000},
        "seed": {"type": int, "min": 0, "max": 2**64 - 1},
        "antithetic": {"type": bool},
        "common_random_numbers": {"type": bool},
    }

    def __init__(self, steiner_dict: dict | None = None) -> None:
        """
        Initializes the SteinerConfig object with values from a dictionary.

        Args:
            steiner_dict (dict | None): Overrides for the defaults.

        Raises:
            KeyError: If the dictionary contains an unknown key.
            TypeError: If a value has the wrong type.
            ValueError: If a value is out of range, or M is odd with antithetic sampling.
        """
        values = dict(self.DEFAULTS)
        for key, value in (steiner_dict or {}).items():
            self.validate(key, value)
            values[key] = value

        self.samples: int = values["samples"]
        self.seed: int = values["seed"]
        self.antithetic: bool = values["antithetic"]
        self.common_random_numbers: bool = values["common_random_numbers"]
        self.check_pairing()

    def validate(self, key: str, value) -> None:
        """
        Validates an estimator configuration value against its schema.

        Args:
            key (str): The configuration key to validate.
            value: The value to validate.

        Raises:
            KeyError: If the key is not an estimator setting.
            TypeError: If the value is not of the expected type.
            ValueError: If the value is out of the allowed range.
        """
        if key not in self.STEINER_SCHEMA:
            raise KeyError(key)
        check_value(self.STEINER_SCHEMA[key], value)

    def check_pairing(self) -> None:
        """Checks that antithetic sampling has an even sample count.

        Raises:
            ValueError: If antithetic is set and M is odd.
        """
        if self.antithetic and self.samples % 2 != 0:
            raise ValueError(f"antithetic sampling needs an even sample count, got {self.samples}")

    def with_samples(self, samples: int) -> "SteinerConfig":
        """Returns a copy with a different sample count.

        Args:
            samples: The new M.

        Returns:
            A new SteinerConfig.
        """
        values = self.to_dict()
        values["samples"] = samples
        return SteinerConfig(values)

    def to_dict(self) -> dict:
        """Convert the settings to a dictionary for JSON serialization."""
        return {key: getattr(self, key) for key in self.DEFAULTS}
