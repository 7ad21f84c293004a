"""
Pytest configuration for the ncho toolkit

Shared families, oscillator constants and operator matrices. The matrix
size and the quadrature margin can be changed from the command line.
"""

import sys
import pathlib

# Add project root to path for imports
project_root = pathlib.Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

import pytest
from ncho.ep import ExponentialFamily, RationalFamily, static_family
from ncho.model import OscillatorConstants
from ncho.operators import build_canonical
from ncho.qstate import QuantumNumbers

# States exercised by the parametrized oracle tests: (n, m)
ORACLE_STATES = [(0, 0), (1, 0), (1, 1), (2, 1), (3, 1), (3, 2)]


# =============================================================================
# CLI Options
# =============================================================================

def pytest_addoption(parser):
    """Add custom CLI options to pytest"""
    parser.addoption(
        "--quad-margin",
        type=int,
        default=None,
        help="Extra Gauss-Laguerre nodes for quadrature oracles (default: NCHO_QUAD_ORDER_MARGIN or 2)",
    )
    parser.addoption(
        "--matrix-dim",
        type=int,
        default=40,
        help="Fock basis size per mode for operator-matrix tests",
    )


# =============================================================================
# Fixtures - Options
# =============================================================================

@pytest.fixture(scope="session")
def quad_margin(request):
    """Quadrature margin from CLI option (None means the environment default)"""
    return request.config.getoption("--quad-margin")


@pytest.fixture(scope="session")
def matrix_dim(request):
    """Fock basis size per mode"""
    dim = request.config.getoption("--matrix-dim")
    if dim < 8:
        pytest.fail(f"--matrix-dim must be at least 8, got {dim}")
    return dim


# =============================================================================
# Fixtures - Families and Constants
# =============================================================================

@pytest.fixture(scope="session")
def exp_family():
    """Exponential family with Delta = 2, C = 2: kconst = 3/8 and rate 2"""
    return ExponentialFamily(sigma=1.0, delta=2.0, mu=1.0, gamma=1.0, cconst=2.0)


@pytest.fixture(scope="session")
def fig1_family():
    """Exponential family with Delta = 5/4 so that kconst = 0"""
    return ExponentialFamily(sigma=1.0, delta=1.25, mu=1.0, gamma=1.0, cconst=2.0, kconst=0.0)


@pytest.fixture(scope="session")
def rational_family():
    """Rational family k = 1 with Delta = 2 fixed by the constraint"""
    return RationalFamily.constrained(sigma=1.0, mu=1.0, gamma=1.0, chi=1.0, korder=1, small_delta=1.0)


@pytest.fixture(scope="session")
def static():
    return static_family()


@pytest.fixture(scope="session")
def unit_oscillator():
    return OscillatorConstants(mass=1.0, omega=1.0)


@pytest.fixture(scope="session")
def canonical_ops(matrix_dim):
    """Truncated canonical operators, built once per session"""
    return build_canonical(matrix_dim)


# =============================================================================
# Dynamic Parametrization
# =============================================================================

def pytest_generate_tests(metafunc):
    """
    Parametrize oracle tests over regular (n >= m) quantum numbers.

    Any test requesting ``quantum_numbers`` runs once per state in
    ORACLE_STATES.
    """
    if "quantum_numbers" in metafunc.fixturenames:
        states = [QuantumNumbers(n, m) for n, m in ORACLE_STATES]
        metafunc.parametrize("quantum_numbers", states, ids=[f"n{n}_m{m}" for n, m in ORACLE_STATES])


# =============================================================================
# Pytest Configuration
# =============================================================================

def pytest_configure(config):
    """Configure pytest and add custom markers"""
    config.addinivalue_line("markers", "slow: marks tests as slow (matrix builds, full suites)")
    config.addinivalue_line("markers", "closed_form: marks closed-form and hand-checked values")
    config.addinivalue_line("markers", "oracle: marks quadrature or matrix oracle comparisons")
    config.addinivalue_line("markers", "property: marks property-based tests")
    config.addinivalue_line("markers", "cli: marks command-line tests")
