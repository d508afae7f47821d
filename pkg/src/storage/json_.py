"""
Module: Reading experiment configuration JSON

Public Classes:
    Json: JSON configuration input
"""

from json import JSONDecodeError, load as json_load
from pathlib import Path
from typing import Any

from progbar import clear_print

from ..utils.error import ConfigError


class Json:
    """
    JSON configuration input

    Args:
        path (pathlib.Path): JSON file path

    Public Attributes:
        path (pathlib.Path): JSON file path

    Public Methods:
        read: Read a JSON object
    """

    def __init__(self, path: Path) -> None:
        self.path = path

    def read(self) -> dict[str, Any]:
        """
        Read a JSON object

        Returns:
            (dict[str, Any]): Top-level object
        """
        clear_print(f"Reading config from {self.path}...")

        try:
            with self.path.open(encoding="utf-8") as fp:
                data = json_load(fp)
        except JSONDecodeError as err:
            raise ConfigError(f"{self.path} is not valid JSON: {err}") from err

        if not isinstance(data, dict):
            raise ConfigError(f"{self.path} must hold a JSON object")
        return data

