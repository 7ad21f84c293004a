"""
Verification suites

Each suite checks one group of closed-form results against an independent
oracle and records every case in a SuiteTracker. run_suites() executes a
selection and returns one SuiteResult per suite.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from ..ep import (
    EPFamily,
    ExponentialFamily,
    RationalFamily,
    chiellini_check,
    ep_residual,
)
from ..errors import NCHOError
from ..invariant import build_canonical, invariance_residual
from ..model import NCParams, OscillatorConstants, coefficients_from_nc, recover_nc_parameters
from ..qstate import (
    Observable,
    QuantumNumbers,
    StateContext,
    energy_expectation,
    energy_from_components,
    expect_angular,
    expect_angular_halves,
    expect_cross_bilinears,
    expect_p,
    expect_p_squared,
    expect_x,
    expect_x_squared,
    expect_xp_symmetric,
    gram_matrix,
    quadrature_expectation,
)
from ..specfun import (
    LaguerreIndex,
    appendix_identity_exact,
    appendix_identity_residual,
    laguerre_eval,
    orthonormality_check,
)
from .tracker import SuiteTracker

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCES: Dict[str, float] = {
    "ep-residual": 1e-10,
    "chiellini": 1e-12,
    "laguerre": 1e-10,
    "appendix-a": 1e-10,
    "orthonormality": 1e-8,
    "expectation": 1e-8,
    "energy-assembly": 1e-12,
    "invariance": 1e-6,
    "nc-roundtrip": 1e-10,
}

CHECK_TIMES = (0.5, 1.0, 2.0)
CHECK_STATES = (
    QuantumNumbers(0, 0),
    QuantumNumbers(1, 1),
    QuantumNumbers(2, 1),
    QuantumNumbers(3, 2),
)
LAGUERRE_MAX_DEGREE = 12
ROUNDTRIP_SAMPLES = 100
ROUNDTRIP_SEED = 20240601


@dataclass(frozen=True)
class VerifyOptions:
    """Knobs shared by all suites"""

    perturb: float = 0.0  # fractional Delta change injected into the families
    matrix_dim: int = 40
    step: float = 1e-4
    margin: Optional[int] = None
    seed: int = ROUNDTRIP_SEED


@dataclass(frozen=True)
class SuiteResult:
    name: str
    tolerance: float
    max_residual: float
    cases: int
    failures: List[Dict] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and not self.failures


SuiteFn = Callable[[SuiteTracker, str, float, VerifyOptions], None]


# =============================================================================
# Reference families
# =============================================================================

def exponential_reference() -> ExponentialFamily:
    """sigma = mu = Gamma = 1, Delta = 5/4, C = 2, k = 0"""
    return ExponentialFamily(sigma=1.0, delta=1.25, mu=1.0, gamma=1.0, cconst=2.0, kconst=0.0)


def rational_reference(korder: int = 1) -> RationalFamily:
    """All parameters 1 with Delta from the constraint (Delta = 2 for k = 1)"""
    return RationalFamily.constrained(sigma=1.0, mu=1.0, gamma=1.0, chi=1.0, korder=korder, small_delta=1.0)


def _reference_families(options: VerifyOptions) -> List[Tuple[str, EPFamily]]:
    families = [("exp", exponential_reference()), ("rational", rational_reference())]
    if options.perturb:
        families = [(f"{label}*", family.perturbed(options.perturb)) for label, family in families]
    return families


def _relative(value: float, expected: float) -> float:
    return abs(value - expected) / max(1.0, abs(expected))


# =============================================================================
# Suites
# =============================================================================

def suite_ep_residual(tracker: SuiteTracker, name: str, tol: float, options: VerifyOptions) -> None:
    """|EP residual| on 101 points of [0, 10] for both reference families"""
    for label, family in _reference_families(options):
        for t in np.linspace(0.0, 10.0, 101):
            tracker.mark_case(name, f"{label} t={t:.1f}", abs(ep_residual(family.sample(float(t)))), tol)


def suite_chiellini(tracker: SuiteTracker, name: str, tol: float, options: VerifyOptions) -> None:
    """Fitted (q, lambda_q) against (1/4, -2) and ((k+1)/(k+2)^2, -(k+2))"""
    cases = [("exp", exponential_reference(), 0.25, -2.0)]
    for k in range(1, 6):
        cases.append((f"rational k={k}", rational_reference(k), (k + 1) / (k + 2) ** 2, -(k + 2.0)))

    for label, family, q_expected, lambda_expected in cases:
        if options.perturb:
            family = family.perturbed(options.perturb)
        try:
            result = chiellini_check(family)
        except NCHOError as e:
            logger.info("Chiellini check failed for %s: %s", label, e)
            tracker.mark_case(name, f"{label} integrability", math.inf, tol)
            continue
        root = (-1 - math.sqrt(max(1 - 4 * result.q, 0.0))) / (2 * result.q)
        tracker.mark_case(name, f"{label} q", abs(result.q - q_expected), tol)
        tracker.mark_case(name, f"{label} lambda", abs(result.lambda_q - lambda_expected), tol)
        tracker.mark_case(name, f"{label} root", abs(result.lambda_q - root), tol)


def _lag(degree: int, order: int, z: float) -> float:
    return laguerre_eval(LaguerreIndex(degree, order), z) if degree >= 0 else 0.0


def suite_laguerre(tracker: SuiteTracker, name: str, tol: float, options: VerifyOptions) -> None:
    """Three-term recurrence and identity relation over degrees 0..12, orders -3..6"""
    for m in range(LAGUERRE_MAX_DEGREE + 1):
        for alpha in range(-3, 7):
            for z in (0.1, 1.0, 5.0):
                lhs = z * _lag(m - 1, alpha + 1, z)
                terms = ((m + alpha) * _lag(m - 1, alpha, z), m * _lag(m, alpha, z))
                scale = max(1.0, abs(lhs), *(abs(v) for v in terms))
                tracker.mark_case(
                    name, f"recurrence m={m} a={alpha} z={z}", abs(lhs - (terms[0] - terms[1])) / scale, tol
                )

                parts = (_lag(m, alpha, z), _lag(m, alpha + 1, z), _lag(m - 1, alpha + 1, z))
                scale = max(1.0, *(abs(v) for v in parts))
                tracker.mark_case(
                    name, f"identity m={m} a={alpha} z={z}", abs(parts[0] - (parts[1] - parts[2])) / scale, tol
                )


def suite_appendix_a(tracker: SuiteTracker, name: str, tol: float, options: VerifyOptions) -> None:
    """Laguerre integral identity for 2 <= m <= n <= 12, by quadrature and exactly"""
    for n in range(2, LAGUERRE_MAX_DEGREE + 1):
        for m in range(2, n + 1):
            tracker.mark_case(name, f"n={n} m={m}", appendix_identity_residual(n, m, options.margin), tol)
            tracker.mark_case(name, f"exact n={n} m={m}", abs(float(appendix_identity_exact(n, m))), tol)


def suite_orthonormality(tracker: SuiteTracker, name: str, tol: float, options: VerifyOptions) -> None:
    """Polynomial orthogonality and the wavefunction Gram matrix"""
    for n in range(LAGUERRE_MAX_DEGREE + 1):
        for m in range(n + 1):
            tracker.mark_case(name, f"laguerre n={n} m={m}", orthonormality_check(n, m, options.margin), tol)

    for label, family in _reference_families(options):
        for t in CHECK_TIMES:
            gram = gram_matrix(family, CHECK_STATES, t, options.margin)
            deviation = float(np.max(np.abs(gram - np.eye(len(CHECK_STATES)))))
            tracker.mark_case(name, f"gram {label} t={t}", deviation, tol)


def _closed_forms(ctx: StateContext, t: float) -> Dict[Observable, float]:
    x2p1, _ = expect_angular_halves(ctx, t)
    x1x2, p1p2 = expect_cross_bilinears(ctx, t)
    return {
        Observable.X1: expect_x(ctx, t),
        Observable.X2: expect_x(ctx, t),
        Observable.P1: expect_p(ctx, t),
        Observable.P2: expect_p(ctx, t),
        Observable.X1_SQ: expect_x_squared(ctx, t),
        Observable.X2_SQ: expect_x_squared(ctx, t),
        Observable.P1_SQ: expect_p_squared(ctx, t),
        Observable.P2_SQ: expect_p_squared(ctx, t),
        Observable.XP1: expect_xp_symmetric(ctx, t),
        Observable.XP2: expect_xp_symmetric(ctx, t),
        Observable.ANGULAR: expect_angular(ctx, t),
        Observable.X2P1: x2p1,
        Observable.X1P2: -x2p1,
        Observable.X1X2: x1x2,
        Observable.P1P2: p1p2,
    }


def suite_expectation(tracker: SuiteTracker, name: str, tol: float, options: VerifyOptions) -> None:
    """Closed-form expectation values against quadrature of the wavefunction"""
    for label, family in _reference_families(options):
        for t in CHECK_TIMES:
            for qn in CHECK_STATES:
                ctx = StateContext(qn, family)
                for observable, expected in _closed_forms(ctx, t).items():
                    measured = quadrature_expectation(ctx, t, observable, margin=options.margin)
                    tracker.mark_case(
                        name, f"{label} t={t} {qn} {observable.value}", _relative(measured, expected), tol
                    )


def suite_energy_assembly(tracker: SuiteTracker, name: str, tol: float, options: VerifyOptions) -> None:
    """<H> from component expectations against the energy closed form"""
    for label, family in _reference_families(options):
        for t in CHECK_TIMES:
            for qn in CHECK_STATES:
                ctx = StateContext(qn, family, c_supplier=lambda _t: 0.3)
                residual = _relative(energy_from_components(ctx, t), energy_expectation(ctx, t))
                tracker.mark_case(name, f"{label} t={t} {qn}", residual, tol)


def suite_invariance(tracker: SuiteTracker, name: str, tol: float, options: VerifyOptions) -> None:
    """dI/dt = 0 on the interior block for I and I'"""
    ops = build_canonical(options.matrix_dim)
    for label, family in _reference_families(options):
        for t in CHECK_TIMES:
            residual = invariance_residual(family, t, options.matrix_dim, options.step, ops=ops)
            tracker.mark_case(name, f"{label} I t={t}", residual, tol)
        residual = invariance_residual(
            family, 1.0, options.matrix_dim, options.step, c=0.7, which="alternative", ops=ops
        )
        tracker.mark_case(name, f"{label} I' c=0.7 t=1.0", residual, tol)


def _roundtrip_error(nc: NCParams, osc: OscillatorConstants) -> float:
    recovered = recover_nc_parameters(coefficients_from_nc(nc, osc), osc).nc
    error = max(abs(recovered.theta - nc.theta), abs(recovered.omega_nc - nc.omega_nc))
    scale = max(abs(nc.theta), abs(nc.omega_nc))
    return error / scale if scale > 0 else error


def suite_nc_roundtrip(tracker: SuiteTracker, name: str, tol: float, options: VerifyOptions) -> None:
    """Forward map followed by recovery on seeded random NC parameters"""
    unit = OscillatorConstants(mass=1.0, omega=1.0)
    tracker.mark_case(name, "commutative point", _roundtrip_error(NCParams(0.0, 0.0), unit), tol)
    tracker.mark_case(
        name,
        "theta=0.05 Omega=-0.3 M=2 w=0.7",
        _roundtrip_error(NCParams(0.05, -0.3), OscillatorConstants(mass=2.0, omega=0.7)),
        tol,
    )

    rng = np.random.default_rng(options.seed)
    for i in range(ROUNDTRIP_SAMPLES):
        theta, big_omega = rng.uniform(0.0, 1.0), -rng.uniform(0.0, 1.0)
        if rng.random() < 0.5:
            theta, big_omega = -theta, -big_omega
        try:
            error = _roundtrip_error(NCParams(float(theta), float(big_omega)), unit)
        except NCHOError as e:
            logger.info("Roundtrip %d failed: %s", i, e)
            error = math.inf
        tracker.mark_case(name, f"random #{i}", error, tol)


SUITES: Dict[str, SuiteFn] = {
    "ep-residual": suite_ep_residual,
    "chiellini": suite_chiellini,
    "laguerre": suite_laguerre,
    "appendix-a": suite_appendix_a,
    "orthonormality": suite_orthonormality,
    "expectation": suite_expectation,
    "energy-assembly": suite_energy_assembly,
    "invariance": suite_invariance,
    "nc-roundtrip": suite_nc_roundtrip,
}


def run_suites(
    names: Optional[Iterable[str]] = None,
    tolerances: Optional[Mapping[str, float]] = None,
    options: VerifyOptions = VerifyOptions(),
    tracker: Optional[SuiteTracker] = None,
) -> List[SuiteResult]:
    """
    Run verification suites in the requested order

    Args:
        names: Suites to run (default: all)
        tolerances: Per-suite overrides of DEFAULT_TOLERANCES
        options: Shared suite options

    Returns:
        One SuiteResult per suite; exceptions inside a suite become a
        failed result carrying the message
    """
    selected = list(SUITES) if not names else list(names)
    unknown = [n for n in selected if n not in SUITES]
    if unknown:
        raise KeyError(f"Unknown suite(s) {unknown}; available: {list(SUITES)}")
    limits = {**DEFAULT_TOLERANCES, **(tolerances or {})}
    tracker = tracker or SuiteTracker()

    results = []
    for name in selected:
        logger.info("Running suite %s", name)
        error = None
        try:
            SUITES[name](tracker, name, limits[name], options)
        except NCHOError as e:
            error = f"{type(e).__name__}: {e}"
            logger.warning("Suite %s aborted: %s", name, error)
        summary = tracker.get_suite_summary(name)
        results.append(
            SuiteResult(
                name=name,
                tolerance=limits[name],
                max_residual=summary["max_residual"],
                cases=summary["cases"],
                failures=tracker.failures(name),
                error=error,
            )
        )
    return results
