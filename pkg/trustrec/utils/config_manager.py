import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping

import yaml

logger = logging.getLogger(__name__)


def _is_key_value(line: str) -> bool:
    if "=" not in line:
        return False
    return ":" not in line or line.index("=") < line.index(":")


def parse_key_values(lines: Iterable[str]) -> Dict[str, Any]:
    """Read ``key=value`` lines; each value is typed by YAML (``false``, ``20``, ``null``)."""
    values: Dict[str, Any] = {}
    for line_number, raw_line in enumerate(lines, start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {line_number}: expected 'key=value', got {line!r}")
        key, value = line.split("=", 1)
        values[key.strip()] = _typed(value.strip())
    return values


def _typed(value: str) -> Any:
    if not value:
        return None
    try:
        return yaml.safe_load(value)
    except yaml.YAMLError:
        return value


def format_value(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(format_value(item) for item in value) + "]"
    return str(value)


def format_key_values(values: Mapping[str, Any]) -> str:
    return "".join(f"{key}={format_value(value)}\n" for key, value in values.items())


class ConfigManager:
    """Loads a config file: flat ``key=value`` text or a (possibly sectioned) YAML mapping."""

    def __init__(self, config_path: Path):
        self.config_path = Path(config_path)
        self.config = self.load_config()

    def load_config(self) -> Dict[str, Any]:
        if not self.config_path.exists():
            logger.warning("Config not found at %s. Using empty config.", self.config_path)
            return {}
        text = self.config_path.read_text(encoding='utf-8')
        content = [line.strip() for line in text.splitlines() if line.strip() and not line.strip().startswith('#')]
        if content and all(_is_key_value(line) for line in content):
            return parse_key_values(content)
        loaded = yaml.safe_load(text) or {}
        if not isinstance(loaded, dict):
            raise ValueError(f"Config file {self.config_path} must hold key=value lines or a mapping")
        return loaded

    def flat(self) -> Dict[str, Any]:
        """Fold one level of sections into a single mapping; dashes in keys become underscores."""
        flat: Dict[str, Any] = {}
        for key, value in self.config.items():
            if isinstance(value, dict):
                flat.update({str(k).replace('-', '_'): v for k, v in value.items()})
            else:
                flat[str(key).replace('-', '_')] = value
        return flat
