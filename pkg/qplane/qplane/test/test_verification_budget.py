from qplane.config import RunConfig
from qplane.report_fixture import make_report_fixture
from qplane.verification import CheckStatus, SUITE_BUDGETS

report = make_report_fixture("representations", RunConfig(trunc=32))


def test_exact_representations_within_budget(report) -> None:
    """Test that the exact suite at N = 32 finishes inside its budget."""
    assert "representations.budget" not in {result.name for result in report}
    assert sum(result.elapsed for result in report) < SUITE_BUDGETS["representations"]


def test_exact_representations_pass(report) -> None:
    assert report.filter({CheckStatus.PASS}) == {result.name for result in report}
