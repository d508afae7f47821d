"""
Module: Writing result tables to CSV

Every file starts with '#'-prefixed comment lines (artifact version,
experiment, master seed, resolved configuration as one-line JSON, then any
scalar summaries of the run), then a header row. Floats are written with 17
significant digits.

Public Classes:
    Csv: CSV result output

Public Functions:
    format_value: Render one cell
"""

from __future__ import annotations

import csv
from json import dumps as json_dumps
from pathlib import Path
from typing import Any, Iterable, Sequence

from progbar import clear_print

from .. import VERSION
from .atomic import atomic_open


def format_value(value: Any) -> str:
    """
    Render one cell; floats round-trip through 17 significant digits

    Args:
        value (Any): Cell value

    Returns:
        (str): Cell text
    """
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


class Csv:
    """
    CSV result output

    Args:
        path (pathlib.Path): CSV file path

    Public Attributes:
        path (pathlib.Path): CSV file path

    Public Methods:
        write: Write a header-commented table
    """

    def __init__(self, path: Path) -> None:
        self.path = path

    def write(
        self,
        columns: Sequence[str],
        rows: Iterable[Sequence[Any]],
        metadata: dict[str, Any],
        table_name: str,
    ) -> int:
        """
        Write a header-commented table, replacing the file only on success

        Args:
            columns    (Sequence[str])          : Column names
            rows       (Iterable[Sequence[Any]]): Table rows
            metadata   (dict[str, Any])         : Comment header entries; the
                "config" entry is rendered as one-line JSON
            table_name (str)                    : Table name. For printing only

        Returns:
            (int): Number of data rows written
        """
        clear_print(f"Writing {table_name} CSV to {self.path}...")

        count = 0
        with atomic_open(self.path) as fp:
            fp.write(f"# ring-register {VERSION}\n")
            for key, value in metadata.items():
                if key == "config":
                    value = json_dumps(value, sort_keys=True)
                else:
                    value = format_value(value)
                fp.write(f"# {key}: {value}\n")
            writer = csv.writer(fp, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_value(value) for value in row])
                count += 1

        clear_print(f"Wrote {count} rows")
        return count
