"""
Data classes for validated run configurations
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np

from ..ep import EPFamily, ExponentialFamily, RationalFamily, static_family
from ..errors import ConfigError
from ..model import NCParams, OscillatorConstants

COMMANDS = ("verify", "energy", "uncertainty", "ep-check", "nc-recover")
FAMILY_KINDS = ("exp", "rational", "static")
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class FamilyParameters:
    """Family selector plus every parameter any family may need"""

    kind: str  # "exp", "rational" or "static"
    sigma: float = 1.0
    delta: float = 1.0
    mu: float = 1.0
    gamma: float = 1.0
    cconst: float = 2.0
    kconst: Optional[float] = None
    chi: float = 1.0
    korder: int = 1
    small_delta: float = 0.0

    def build(self, perturb: float = 0.0) -> EPFamily:
        """
        Construct the family

        Args:
            perturb: Fractional change of Delta applied after construction
                (skips constraint validation of the perturbed copy)

        Raises:
            ConstraintError: If the parameters violate the family constraint
        """
        if self.kind == "static":
            return static_family()
        if self.kind == "exp":
            family = ExponentialFamily(
                sigma=self.sigma,
                delta=self.delta,
                mu=self.mu,
                gamma=self.gamma,
                cconst=self.cconst,
                kconst=self.kconst,
            )
        elif self.kind == "rational":
            family = RationalFamily(
                sigma=self.sigma,
                delta=self.delta,
                mu=self.mu,
                gamma=self.gamma,
                chi=self.chi,
                korder=int(self.korder),
                small_delta=self.small_delta,
            )
        else:
            raise ConfigError(f"Unknown family {self.kind!r}; expected one of {FAMILY_KINDS}")
        return family.perturbed(perturb) if perturb else family


@dataclass(frozen=True)
class TimeGrid:
    t_start: float
    t_end: float
    samples: int

    def __post_init__(self):
        if self.samples < 2:
            raise ConfigError(f"Time grid needs at least 2 samples, got {self.samples}")
        if not self.t_end > self.t_start:
            raise ConfigError(f"Time grid needs t_end > t_start, got [{self.t_start}, {self.t_end}]")

    def times(self) -> List[float]:
        return [float(t) for t in np.linspace(self.t_start, self.t_end, self.samples)]


@dataclass(frozen=True)
class RunConfig:
    """Everything one ncho command needs"""

    command: str
    family: FamilyParameters
    n: int = 0
    m: int = 0
    grid: TimeGrid = field(default_factory=lambda: TimeGrid(0.0, 1.0, 11))
    output_format: str = "csv"
    out: Optional[str] = None
    tolerances: Dict[str, float] = field(default_factory=dict)
    suites: Tuple[str, ...] = ()
    perturb_constraint: float = 0.0
    mass: Optional[float] = None
    omega: Optional[float] = None
    theta: Optional[float] = None
    omega_nc: Optional[float] = None
    matrix_dim: int = 40
    workers: int = 1

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any]) -> "RunConfig":
        """Build from a mapping already checked by ConfigValidator"""
        family_keys = FamilyParameters.__dataclass_fields__.keys() - {"kind"}
        family = FamilyParameters(
            kind=mapping["family"],
            **{key: mapping[key] for key in family_keys if mapping.get(key) is not None},
        )
        return cls(
            command=mapping["command"],
            family=family,
            n=int(mapping.get("n", 0)),
            m=int(mapping.get("m", 0)),
            grid=TimeGrid(
                float(mapping.get("t_start", 0.0)),
                float(mapping.get("t_end", 1.0)),
                int(mapping.get("samples", 11)),
            ),
            output_format=mapping.get("format", "csv"),
            out=mapping.get("out"),
            tolerances=dict(mapping.get("tol") or {}),
            suites=tuple(mapping.get("suite") or ()),
            perturb_constraint=float(mapping.get("perturb_constraint", 0.0)),
            mass=mapping.get("mass"),
            omega=mapping.get("omega"),
            theta=mapping.get("theta"),
            omega_nc=mapping.get("omega_nc"),
            matrix_dim=int(mapping.get("matrix_dim", 40)),
            workers=int(mapping.get("workers", 1)),
        )

    def build_family(self) -> EPFamily:
        return self.family.build(self.perturb_constraint)

    @property
    def oscillator(self) -> Optional[OscillatorConstants]:
        if self.mass is None or self.omega is None:
            return None
        return OscillatorConstants(mass=self.mass, omega=self.omega)

    @property
    def nc_params(self) -> Optional[NCParams]:
        if self.theta is None or self.omega_nc is None:
            return None
        return NCParams(theta=self.theta, omega_nc=self.omega_nc)
