# core/utils.py

import logging
import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, List, Union

PathLike = Union[str, Path]


def configure_logging(verbosity: int = 0) -> None:
    """Install a single stderr handler. verbosity: -1 quiet, 0 normal, 1+ debug."""
    if verbosity < 0:
        level = logging.WARNING
    elif verbosity == 0:
        level = logging.INFO
    else:
        level = logging.DEBUG
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    root.addHandler(handler)
    root.setLevel(level)


def read_text(path: PathLike) -> str:
    """Read a UTF-8 source file."""
    return Path(path).read_text(encoding='utf-8')


def atomic_write_text(path: PathLike, text: str) -> None:
    """Write text through a temp file in the target directory, then rename over the target."""
    target = Path(path)
    directory = target.parent if str(target.parent) else Path('.')
    directory.mkdir(parents=True, exist_ok=True)
    fd, temp_name = tempfile.mkstemp(prefix=f'.{target.name}.', suffix='.tmp', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
        os.replace(temp_name, target)
    except BaseException:
        if os.path.exists(temp_name):
            os.unlink(temp_name)
        raise


def format_value(value: Any) -> str:
    """Render a table cell; floats keep full precision so reruns are byte-identical."""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        if math.isnan(value):
            return 'nan'
        return repr(value)
    return str(value)


def json_safe(value: Any) -> Any:
    """Replace non-finite floats by None so the JSON stays standard."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(item) for item in value]
    return value


def split_csv_list(text: str) -> List[str]:
    """Split a comma separated option value, dropping blanks."""
    return [item.strip() for item in text.split(',') if item.strip()]


def levenshtein(first: str, second: str) -> int:
    """Edit distance with unit insert, delete and substitute costs."""
    if len(first) < len(second):
        first, second = second, first
    previous = list(range(len(second) + 1))
    for i, left in enumerate(first, start=1):
        current = [i]
        for j, right in enumerate(second, start=1):
            current.append(min(previous[j] + 1,
                               current[j - 1] + 1,
                               previous[j - 1] + (left != right)))
        previous = current
    return previous[-1]
