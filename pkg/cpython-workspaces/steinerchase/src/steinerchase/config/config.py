"""Run settings for steinerchase, read from an optional JSON file.

The file is split into the solver, steiner and chaser sections. Config routes
each key to the section that owns it, and the section checks the value against
its schema before it is stored.

**Usage:**
```python
config = Config("chase.json")
config.update_config("samples", 8192, temporary=True)
handle = WorkFunctionHandle(logger, instance, 0, config.solver)
```
"""

import json

from .chaser import ChaserConfig
from .solver import SolverConfig
from .steiner import SteinerConfig


class Config:
    """
    Configuration handler for steinerchase.

    The JSON file holds up to three sections, ``solver``, ``steiner`` and
    ``chaser``; omitted sections and keys take their defaults. Supports both
    temporary (memory-only) and permanent (file-persisted) updates.

    Attributes:
        config_file (str | None): Path to the configuration JSON file, if any.
        solver (SolverConfig): Work-function solver settings.
        steiner (SteinerConfig): Monte-Carlo estimator settings.
        chaser (ChaserConfig): Chasing algorithm settings.
    """

    SECTIONS = ("solver", "steiner", "chaser")

    def __init__(self, config_path: str | None = None) -> None:
        """
        Initializes the Config object, loading values from the given JSON file.

        Args:
            config_path (str | None): Path to the configuration JSON file. None
                gives the defaults.

        Raises:
            FileNotFoundError: If the configuration file does not exist.
            json.JSONDecodeError: If the configuration file is not valid JSON.
            KeyError: If the file has an unknown section or key.
            TypeError: If a value has the wrong type.
            ValueError: If a value is out of range.
        """
        self.config_file = config_path
        json_data: dict = {}
        if config_path is not None:
            with open(config_path, "r") as f:
                json_data = json.loads(f.read())

        for section in json_data:
            if section not in self.SECTIONS:
                raise KeyError(f"unknown configuration section: {section}")

        self.solver: SolverConfig = SolverConfig(json_data.get("solver"))
        self.steiner: SteinerConfig = SteinerConfig(json_data.get("steiner"))
        self.chaser: ChaserConfig = ChaserConfig(json_data.get("chaser"))

    def _section_for(self, key: str) -> tuple[str, SolverConfig | SteinerConfig | ChaserConfig]:
        """
        Finds the section that owns a key.

        Args:
            key (str): The configuration key.

        Returns:
            The section name and its configuration object.

        Raises:
            KeyError: If no section owns the key.
        """
        if key in self.solver.SOLVER_SCHEMA:
            return "solver", self.solver
        if key in self.steiner.STEINER_SCHEMA:
            return "steiner", self.steiner
        if key in self.chaser.CHASER_SCHEMA:
            return "chaser", self.chaser
        raise KeyError(key)

    def validate(self, key: str, value) -> None:
        """
        Validates a configuration value against its section schema.

        Args:
            key (str): Key to check.
            value: The value to validate.

        Raises:
            KeyError: If the key is unknown.
            TypeError: If the value is not of the expected type.
            ValueError: If the value is out of the allowed range.
        """
        _, section = self._section_for(key)
        section.validate(key, value)

    # permanently updates values
    def _save_config(self, section: str, key: str, value) -> None:
        """
        Writes one value into its section of the JSON file.

        Args:
            section (str): The section owning the key.
            key (str): Key to persist.
            value: The value to save.
        """
        json_data: dict = {}
        if self.config_file is None:
            raise ValueError("no configuration file to persist to")
        try:
            with open(self.config_file, "r") as f:
                json_data = json.loads(f.read())
        except FileNotFoundError:
            pass

        json_data.setdefault(section, {})[key] = value

        with open(self.config_file, "w") as f:
            f.write(json.dumps(json_data, indent=2, sort_keys=True))

    def update_config(self, key: str, value, temporary: bool) -> None:
        """
        Updates a configuration value, either temporarily (memory only) or permanently (persisted to file).

        Args:
            key (str): Key to change.
            value: The new value to set.
            temporary (bool): If True, update only in memory; if False, persist to file.

        Raises:
            KeyError: If the key is unknown.
            TypeError: If the value is not of the expected type.
            ValueError: If the value is out of the allowed range.
        """
        section_name, section = self._section_for(key)
        section.validate(key, value)
        if isinstance(section, SteinerConfig):
            # pairing spans two keys, so check the would-be section first
            SteinerConfig({**section.to_dict(), key: value})

        if not temporary:
            self._save_config(section_name, key, value)

        setattr(section, key, value)

    def to_dict(self) -> dict:
        """Convert every section to a dictionary for JSON serialization."""
        return {
            "solver": self.solver.to_dict(),
            "steiner": self.steiner.to_dict(),
            "chaser": self.chaser.to_dict(),
        }
