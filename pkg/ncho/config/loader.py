"""
Run configuration loader
Parses flat key=value run files into the mapping the validator checks
"""

from pathlib import Path
from typing import Any, Dict, Union

from ..errors import ConfigError

NULL_WORDS = {"none", "null", ""}
LIST_KEYS = {"suite"}
TOL_PREFIX = "tol."


def coerce_value(raw: str) -> Union[None, int, float, str]:
    """Turn a text value into None, int, float or str (in that order of preference)"""
    text = raw.strip()
    if text.lower() in NULL_WORDS:
        return None
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


def normalize_key(key: str) -> str:
    """CLI spelling (small-delta) to mapping spelling (small_delta)"""
    return key.strip().lower().replace("-", "_")


class ConfigLoader:
    """Loads run configuration files"""

    @staticmethod
    def load(config_path: str) -> Dict[str, Any]:
        """
        Load a key=value run file

        Lines starting with # are comments. ``tol.NAME = VAL`` entries are
        gathered into the ``tol`` mapping and ``suite`` takes a comma list.

        Args:
            config_path: Path to the run file

        Returns:
            Flat run mapping

        Raises:
            FileNotFoundError: If the file doesn't exist
            ConfigError: If a line is not of the form key=value
        """
        path = Path(config_path)
        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")

        config: Dict[str, Any] = {}
        with open(path, "r", encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                stripped = line.split("#", 1)[0].strip()
                if not stripped:
                    continue
                if "=" not in stripped:
                    raise ConfigError(f"{path.name}:{lineno}: expected key=value, got {stripped!r}")

                key, raw = stripped.split("=", 1)
                key = key.strip()
                if key.lower().startswith(TOL_PREFIX):
                    config.setdefault("tol", {})[key[len(TOL_PREFIX):].strip()] = coerce_value(raw)
                    continue

                key = normalize_key(key)
                if key in LIST_KEYS:
                    config[key] = [item.strip() for item in raw.split(",") if item.strip()]
                else:
                    config[key] = coerce_value(raw)

        return config
