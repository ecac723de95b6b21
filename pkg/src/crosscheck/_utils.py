"""
Utility functions for crosscheck.
"""

import json

from collections.abc import Iterator
from datetime import UTC, datetime
from functools import cache
from pathlib import Path
from typing import Any

import numpy as np

from jinja2 import Template


PACKAGE_ROOT = Path(__file__).parent


@cache
def data_path(name: str) -> Path:
    """
    Returns the path to a file bundled in the package's `data` directory.

    Args:
        name (str): The file name, e.g. ``stopwords.txt``.

    Returns:
        Path: The absolute path to the bundled file.

    Raises:
        FileNotFoundError: If no such file ships with the package.
    """
    path = PACKAGE_ROOT / "data" / name
    if not path.exists():
        raise FileNotFoundError(f"No bundled data file named {name}.")
    return path


def templates_dir() -> Path:
    """Returns the directory holding the jinja2 templates."""
    return PACKAGE_ROOT / "templates"


def render_template(name: str, **context: Any) -> str:
    """
    Renders one of the bundled jinja2 templates.

    Args:
        name (str): The template file name, e.g. ``verdict.txt.j2``.
        **context: Template variables.

    Returns:
        str: The rendered text.
    """
    source = (templates_dir() / name).read_text(encoding="utf-8")
    template = Template(source, trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)
    return template.render(**context)


def write_json(path: Path, data: Any) -> None:
    """Writes a JSON."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data, indent=2) + "\n", encoding="utf-8")


def dumps(data: Any, *, indent: int | None = None) -> str:
    """
    Serializes to JSON with stable key order, so equal inputs give equal bytes.

    Args:
        data: Any JSON-compatible value.
        indent: Optional indentation; compact separators are used without it.

    Returns:
        str: The JSON text.
    """
    separators = (",", ": ") if indent is not None else (",", ":")
    return json.dumps(
        data, indent=indent, separators=separators, ensure_ascii=False, allow_nan=False
    )


def iter_text_lines(path: Path) -> Iterator[tuple[int, str]]:
    """
    Yields ``(line_number, line)`` pairs of a UTF-8 file, skipping blank lines.

    Invalid byte sequences are decoded to U+FFFD instead of raising.

    Args:
        path (Path): The file to read.

    Yields:
        tuple[int, str]: 1-based line number and the line without its newline.
    """
    raw = path.read_bytes()
    for number, line in enumerate(raw.decode("utf-8", errors="replace").splitlines(), start=1):
        if line.strip():
            yield number, line


def write_jsonl(path: Path, records: list[Any]) -> None:
    """Writes one compact JSON value per line."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(dumps(record) + "\n" for record in records), encoding="utf-8")


def parse_rfc3339(value: str) -> datetime:
    """
    Parses an RFC 3339 timestamp into a UTC datetime with second precision.

    Args:
        value (str): A timestamp such as ``2021-08-26T12:00:00Z``.

    Returns:
        datetime: The instant in UTC, microseconds dropped.

    Raises:
        ValueError: If the value is not a string, has no ``T`` separator, or carries no offset.
    """
    if not isinstance(value, str) or "T" not in value.upper():
        raise ValueError(f"not an RFC 3339 timestamp: {value!r}")
    parsed = datetime.fromisoformat(value.strip())
    if parsed.tzinfo is None:
        raise ValueError(f"timestamp has no UTC offset: {value!r}")
    return parsed.astimezone(UTC).replace(microsecond=0)


def format_rfc3339(instant: datetime) -> str:
    """Formats a UTC datetime as ``YYYY-MM-DDTHH:MM:SSZ``."""
    return instant.astimezone(UTC).strftime("%Y-%m-%dT%H:%M:%SZ")


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """
    Returns a generator seeded from ``(seed, *keys)``.

    Two calls with the same arguments give identical streams, which is what lets restarts and
    trees run in any order (or in parallel) and still produce the same model.

    Args:
        seed (int): The user-facing seed.
        *keys (int): Stream identifiers, e.g. a restart or tree index.

    Returns:
        np.random.Generator: A fresh PCG64 generator.
    """
    return np.random.default_rng(np.random.SeedSequence([seed, *keys]))
