import pytest

from geodetic import available_backends, use_backend

_ACCEPTANCE: dict = {}


@pytest.fixture(params=available_backends())
def backend(request):
    previous = use_backend(request.param)
    yield request.param
    use_backend(previous)


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion."""
    name = request.node.name
    _ACCEPTANCE[name] = "FAIL"
    yield
    rep = getattr(request.node, "rep_call", None)
    if rep is not None and rep.passed:
        _ACCEPTANCE[name] = "PASS"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in sorted(_ACCEPTANCE.items()):
        terminalreporter.write_line(f"{status}  {name}")
