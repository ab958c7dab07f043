"""Per-criterion verdict lines for the acceptance suite.

Printed from the report hook, which runs outside test capture, so the
lines reach the real stdout in both verbose and quiet runs.
"""


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    import test_acceptance

    num, description = test_acceptance.CRITERIA[name]
    verdict = "PASS" if report.passed else "FAIL"
    print(f"\ncriterion {num:2d}: {verdict}  {description}", flush=True)
