"""Schema checks shared by the configuration sections.

A schema entry is a dictionary with a required ``type`` and optional ``min``,
``max`` and ``allowed_values`` keys.
"""


def check_value(schema: dict, value) -> None:
    """
    Validates a value against one schema entry.

    Args:
        schema (dict): The schema entry.
        value: The value to validate.

    Raises:
        TypeError: If the value is not of the expected type.
        ValueError: If the value is out of the allowed range or not allowed.
    """
    expected_type = schema["type"]

    # bool is an int subclass; reject it where a number is expected
    if isinstance(value, bool) and bool not in _as_tuple(expected_type):
        raise TypeError(f"expected {expected_type}, got bool")

    if not isinstance(value, expected_type):
        raise TypeError(f"expected {expected_type}, got {type(value).__name__}")

    if "allowed_values" in schema and value not in schema["allowed_values"]:
        raise ValueError(f"{value!r} not in {schema['allowed_values']}")

    if isinstance(value, (int, float)) and not isinstance(value, bool):
        if "min" in schema and value < schema["min"]:
            raise ValueError(f"{value} below minimum {schema['min']}")
        if "max" in schema and value > schema["max"]:
            raise ValueError(f"{value} above maximum {schema['max']}")


def _as_tuple(expected_type) -> tuple:
    """Normalizes a schema type entry to a tuple of types."""
    if isinstance(expected_type, tuple):
        return expected_type
    return (expected_type,)
