"""
Named parameter sets

fig1 and fig2 carry the exponential and rational energy-curve parameters;
static is the time-independent isotropic oscillator; roundtrip drives
nc-recover along a ramp of NC parameters.
"""

from typing import Any, Dict

from ..errors import ConfigError

PRESETS: Dict[str, Dict[str, Any]] = {
    "fig1": {
        "family": "exp",
        "sigma": 1.0,
        "delta": 1.25,
        "mu": 1.0,
        "gamma": 1.0,
        "cconst": 2.0,
        "kconst": 0.0,
        "n": 1,
        "m": 1,
        "t_start": 0.0,
        "t_end": 6.0,
        "samples": 61,
    },
    "fig2": {
        "family": "rational",
        "sigma": 1.0,
        "delta": 2.0,
        "mu": 1.0,
        "gamma": 1.0,
        "chi": 1.0,
        "korder": 1,
        "small_delta": 1.0,
        "n": 1,
        "m": 1,
        "t_start": 0.0,
        "t_end": 10.0,
        "samples": 101,
    },
    "static": {
        "family": "static",
        "n": 0,
        "m": 0,
        "t_start": 0.0,
        "t_end": 1.0,
        "samples": 11,
    },
    "roundtrip": {
        "family": "static",
        "mass": 1.0,
        "omega": 1.0,
        "theta": 0.2,
        "omega_nc": -0.8,
        "t_start": 0.0,
        "t_end": 1.0,
        "samples": 11,
    },
}


def preset_mapping(name: str) -> Dict[str, Any]:
    """
    Copy of a preset's run mapping

    Raises:
        ConfigError: If the preset is unknown
    """
    try:
        return dict(PRESETS[name])
    except KeyError:
        raise ConfigError(f"Unknown preset {name!r}; expected one of {sorted(PRESETS)}")
