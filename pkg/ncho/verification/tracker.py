"""
Suite tracker - records every residual a verification suite checks
"""

import math
from collections import defaultdict
from typing import Any, Dict, List


class SuiteTracker:
    """Tracks checked cases and their residuals per suite; repeated labels count as separate cases"""

    def __init__(self):
        self.results: Dict[str, List[Dict[str, Any]]] = defaultdict(list)

    def mark_case(self, suite: str, label: str, residual: float, tolerance: float) -> bool:
        """
        Record one checked case

        Args:
            suite: Suite name (e.g., "ep-residual")
            label: Case description (e.g., "exp t=0.5")
            residual: Measured residual; nan counts as a failure
            tolerance: Threshold the residual must not exceed

        Returns:
            Whether the case passed
        """
        passed = bool(math.isfinite(residual) and residual <= tolerance)
        self.results[suite].append({"label": label, "residual": residual, "passed": passed})
        return passed

    def failures(self, suite: str) -> List[Dict[str, Any]]:
        return [case for case in self.results[suite] if not case["passed"]]

    def get_suite_summary(self, suite: str) -> Dict[str, Any]:
        """
        Returns:
            Case count, failure count and worst residual of one suite
        """
        cases = self.results[suite]
        residuals = [c["residual"] for c in cases]
        worst = max(residuals, key=lambda r: r if math.isfinite(r) else math.inf) if residuals else 0.0
        return {
            "cases": len(cases),
            "failures": len(self.failures(suite)),
            "max_residual": worst,
        }

    def get_summary(self) -> Dict[str, Any]:
        total = sum(len(cases) for cases in self.results.values())
        failed = sum(len(self.failures(suite)) for suite in self.results)
        return {
            "suites": len(self.results),
            "cases": total,
            "failed_cases": failed,
            "pass_percent": round((total - failed) / total * 100, 1) if total > 0 else 0,
        }
