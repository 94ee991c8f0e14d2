"""This module provides the Counter class used by the Logger to count errors
raised during a run.

The counter lives in process memory and is shared by every thread that logs
through the same Logger.
"""

import threading


class Counter:
    """
    Counter class for counting events across threads.

    Attributes:
        _name (str): The name of the counter.
        _value (int): The current count.
        _lock (threading.Lock): Guards increments from concurrent workers.
    """

    def __init__(self, name: str = "errors", start: int = 0) -> None:
        """
        Initializes a Counter instance.

        Args:
            name (str): The name of the counter.
            start (int): The initial value.

        Raises:
            ValueError: If the initial value is negative.
        """
        if start < 0:
            raise ValueError("counter cannot start below zero")

        self._name = name
        self._value = start
        self._lock = threading.Lock()

    def get(self) -> int:
        """
        Returns the value of the counter.

        Returns:
            int: The current value of the counter.
        """
        return self._value

    def increment(self) -> None:
        """
        Increases the counter by one.
        """
        with self._lock:
            self._value += 1

    def get_name(self) -> str:
        """
        get_name returns the name of the counter
        """
        return f"{self.__class__.__name__}_{self._name}"
