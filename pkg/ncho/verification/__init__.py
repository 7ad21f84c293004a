"""Verification suites comparing closed forms with independent oracles"""

from .report import VerificationReport
from .suites import DEFAULT_TOLERANCES, SUITES, SuiteResult, VerifyOptions, run_suites
from .tracker import SuiteTracker

__all__ = [
    "DEFAULT_TOLERANCES",
    "SUITES",
    "SuiteResult",
    "SuiteTracker",
    "VerificationReport",
    "VerifyOptions",
    "run_suites",
]
