"""
Run configuration validator

Checks a merged run mapping (preset, config file and flags) against the
packaged JSON Schema before any family is constructed.

Usage:
    validator = ConfigValidator()
    is_valid, errors = validator.validate(mapping)
"""

import json
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from jsonschema import Draft7Validator, ValidationError
from jsonschema.exceptions import SchemaError

from ..errors import ConfigError

SCHEMA_NAME = "run_config_schema.json"


def default_schema_path() -> Path:
    return Path(str(resources.files("ncho.config") / "schemas" / SCHEMA_NAME))


class ConfigValidator:
    """Validator for run configurations against JSON Schema"""

    def __init__(self, schema_path: Optional[str] = None):
        """
        Args:
            schema_path: Path to a JSON Schema file (defaults to the packaged schema)

        Raises:
            FileNotFoundError: If the schema file doesn't exist
            ConfigError: If the schema itself is invalid
        """
        self.schema_path = Path(schema_path) if schema_path else default_schema_path()
        self.schema = self._load_schema()
        self.validator = Draft7Validator(self.schema)

    def _load_schema(self) -> dict:
        if not self.schema_path.exists():
            raise FileNotFoundError(f"Schema file not found: {self.schema_path}")

        try:
            with open(self.schema_path, "r", encoding="utf-8") as f:
                schema = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Invalid JSON in schema file: {e}")

        try:
            Draft7Validator.check_schema(schema)
        except SchemaError as e:
            raise ConfigError(f"Invalid JSON Schema: {e.message}")

        return schema

    def validate(
        self, config: Dict[str, Any], verbose: bool = False
    ) -> Tuple[bool, Optional[List[str]]]:
        """
        Validate a run mapping

        Args:
            config: Flat run mapping
            verbose: Include expected/actual values in messages

        Returns:
            (is_valid, error_messages); error_messages is None when valid
        """
        errors = [self._format_error(e, verbose) for e in sorted(self.validator.iter_errors(config), key=str)]
        errors.extend(self._cross_field_errors(config))
        if errors:
            return False, errors
        return True, None

    @staticmethod
    def _cross_field_errors(config: Dict[str, Any]) -> List[str]:
        """Relations JSON Schema cannot express"""
        errors = []
        t_start, t_end = config.get("t_start"), config.get("t_end")
        if isinstance(t_start, (int, float)) and isinstance(t_end, (int, float)) and not t_end > t_start:
            errors.append(f"at 't_end': must exceed t_start ({t_end} <= {t_start})")
        has_theta = config.get("theta") is not None
        has_omega_nc = config.get("omega_nc") is not None
        if has_theta != has_omega_nc:
            errors.append("at root: theta and omega_nc must be given together")
        elif has_theta and config["theta"] * config["omega_nc"] > 0:
            errors.append(
                f"at 'theta': theta*omega_nc must be <= 0, got {config['theta'] * config['omega_nc']}"
            )
        if (config.get("mass") is None) != (config.get("omega") is None):
            errors.append("at root: mass and omega must be given together")
        return errors

    @staticmethod
    def _format_error(error: ValidationError, verbose: bool = False) -> str:
        if error.path:
            location = "at '" + " -> ".join(str(p) for p in error.path) + "'"
        else:
            location = "at root"

        message = f"{location}: {error.message}"
        if verbose and error.instance is not None:
            instance = str(error.instance)
            if len(instance) > 100:
                instance = instance[:97] + "..."
            message += f"\n  Got: {instance}"
        return message

    def require_valid(self, config: Dict[str, Any]) -> None:
        """
        Raises:
            ConfigError: Carrying every validation message
        """
        is_valid, errors = self.validate(config)
        if not is_valid:
            raise ConfigError(f"Invalid run configuration ({len(errors)} error(s))", errors)

    def print_validation_report(self, config: Dict[str, Any], show_valid: bool = True) -> bool:
        """
        Print a validation report for a run mapping

        Returns:
            True if valid, False otherwise
        """
        print("=" * 70)
        print("Run Configuration Validation Report")
        print("=" * 70)

        is_valid, errors = self.validate(config, verbose=True)
        if is_valid:
            if show_valid:
                print("Configuration is VALID")
                print(f"   Command: {config.get('command')}")
                print(f"   Family: {config.get('family')}")
                print(f"   State: n={config.get('n', 0)}, m={config.get('m', 0)}")
        else:
            print("Configuration is INVALID")
            print(f"Found {len(errors)} validation error(s):")
            print()
            for idx, error in enumerate(errors, 1):
                print(f"{idx}. {error}")
                print()

        print("=" * 70)
        return is_valid
