import pytest


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    label = getattr(item.function, "_criterion", None)
    if label:
        verdict = "PASS" if report.passed else "FAIL"
        print(f"\n[acceptance] {label}: {verdict}")
