"""
Console report for verification runs
"""

from typing import Dict, List, Sequence

from .suites import SuiteResult


class VerificationReport:
    """Format and print suite results"""

    SEPARATOR_WIDTH = 60
    MAX_LISTED_FAILURES = 5

    @staticmethod
    def print_summary(results: Sequence[SuiteResult], summary: Dict = None) -> None:
        """
        Print one line per suite followed by the failing cases

        Args:
            results: Suite results in run order
            summary: Optional SuiteTracker.get_summary() totals
        """
        if not results:
            print("No suites were run.")
            return

        VerificationReport._print_header(len(results))
        for result in results:
            VerificationReport._print_suite(result)
        print()
        VerificationReport._print_failures([r for r in results if not r.passed])
        if summary:
            VerificationReport._print_totals(summary)

    @staticmethod
    def _print_header(count: int) -> None:
        separator = "=" * VerificationReport.SEPARATOR_WIDTH
        print(f"\n{separator}")
        print(f"  Verification: {count} suite(s)")
        print(f"{separator}\n")

    @staticmethod
    def _print_suite(result: SuiteResult) -> None:
        mark = "✓" if result.passed else "✗"
        print(
            f"  {mark} {result.name:<16} max residual {result.max_residual:.3e}"
            f"  tol {result.tolerance:.1e}  ({result.cases} cases)"
        )

    @staticmethod
    def _print_failures(failed: List[SuiteResult]) -> None:
        for result in failed:
            print(f"Failures in {result.name}:")
            if result.error:
                print(f"  • {result.error}")
            for case in result.failures[: VerificationReport.MAX_LISTED_FAILURES]:
                print(f"  • {case['label']}: {case['residual']:.3e}")
            hidden = len(result.failures) - VerificationReport.MAX_LISTED_FAILURES
            if hidden > 0:
                print(f"  • ... and {hidden} more")
            print()

    @staticmethod
    def _print_totals(summary: Dict) -> None:
        print(
            f"Checked {summary['cases']} cases in {summary['suites']} suites: "
            f"{summary['failed_cases']} failed ({summary['pass_percent']}% passed)\n"
        )
