"""
Module: All-or-nothing file replacement

Public Functions:
    atomic_open: Write to a temporary sibling, rename over the target on success
"""

import os
from contextlib import contextmanager
from pathlib import Path
from tempfile import NamedTemporaryFile
from typing import Generator, TextIO

from ..utils.error import OutputPathError


@contextmanager
def atomic_open(path: Path) -> Generator[TextIO, None, None]:
    """
    Write to a temporary sibling, rename over the target on success

    Args:
        path (pathlib.Path): Final file path

    Yields:
        (TextIO): UTF-8 text stream of the temporary file
    """
    try:
        tmp = NamedTemporaryFile(
            "w",
            encoding="utf-8",
            newline="",
            dir=path.parent,
            prefix=f".{path.name}.",
            suffix=".tmp",
            delete=False,
        )
    except OSError as err:
        raise OutputPathError(f"Cannot write next to {path}: {err}") from err

    tmp_path = Path(tmp.name)
    try:
        with tmp:
            yield tmp
        os.replace(tmp_path, path)
    except BaseException:
        tmp_path.unlink(missing_ok=True)
        raise
