from __future__ import annotations
from .config import RunConfig
from .verification import CheckResult, VerificationReport, run_suite, suite_names
import pytest


def make_report_fixture(suite: str = "all",
                        config: RunConfig | None = None,
                        exclusions: set[str] = None):
    """Return a fixture that returns the VerificationReport of running
    suite with config, leaving out any check named in exclusions.
    """

    @pytest.fixture(scope="module")
    def report():
        run_config = config if config is not None else RunConfig()
        results: list[CheckResult] = []
        for name in suite_names(suite):
            results.extend(run_suite(name, run_config))
        if exclusions:
            results = [r for r in results if r.name not in exclusions]
        return VerificationReport(results)

    return report
