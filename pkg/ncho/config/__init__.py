"""Run configuration loading, validation and presets"""

from .loader import ConfigLoader
from .presets import PRESETS, preset_mapping
from .run_types import FamilyParameters, RunConfig, TimeGrid
from .settings import load_environment, quadrature_margin
from .validator import ConfigValidator

__all__ = [
    "ConfigLoader",
    "ConfigValidator",
    "FamilyParameters",
    "RunConfig",
    "TimeGrid",
    "PRESETS",
    "preset_mapping",
    "load_environment",
    "quadrature_margin",
]
