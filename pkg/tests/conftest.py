import pytest

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record pass/fail for an acceptance criterion from the test's outcome."""
    holder = {"id": None, "detail": ""}
    yield holder
    rep = getattr(request.node, "rep_call", None)
    if holder["id"] is not None and rep is not None:
        ACCEPTANCE[holder["id"]] = (rep.passed, holder["detail"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())
