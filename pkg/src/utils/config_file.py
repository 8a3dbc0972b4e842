"""
Reading contest configuration documents (JSON)
"""

import json
import re
from pathlib import Path
from typing import Any, Optional, Union

from pydantic import ValidationError

from src.core.errors import ConfigError
from src.models.contest import ContestSpec


def _line_of(text: str, key: Any) -> Optional[int]:
    """First line mentioning a JSON key, used to locate validation errors"""
    if not isinstance(key, str):
        return None
    match = re.search(rf'"{re.escape(key)}"\s*:', text)
    if match is None:
        return None
    return text.count("\n", 0, match.start()) + 1


def parse_spec(text: str) -> ContestSpec:
    """Parse and validate a contest configuration document"""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, line=exc.lineno) from exc
    if not isinstance(document, dict):
        raise ConfigError("a contest configuration must be a JSON object", line=1)
    try:
        return ContestSpec.model_validate(document)
    except ValidationError as exc:
        error = exc.errors()[0]
        location = [str(part) for part in error["loc"]]
        top_level = error["loc"][0] if error["loc"] else None
        raise ConfigError(
            error["msg"],
            field=".".join(location) or None,
            line=_line_of(text, top_level),
        ) from exc


def load_spec(path: Union[str, Path]) -> ContestSpec:
    """Read a contest configuration file"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror or exc}") from exc
    return parse_spec(text)
