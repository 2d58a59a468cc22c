import pytest

from tiltkit.cli.scenario import SEED_VARIABLE


def pytest_report_header(config):
    slow = "deselected" if "not slow" in (config.getoption("markexpr") or "") else "included"
    return [f"allow_skip: {config.getoption('--allow-skip')}", f"slow suites: {slow}"]


@pytest.fixture(autouse=True)
def unset_seed(monkeypatch):
    """
    Scenario defaults must not pick up a seed from the shell running the tests.
    """
    monkeypatch.delenv(SEED_VARIABLE, raising=False)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """
    Fails tests that skip, unless skipping is allowed for one of their marks via `--allow-skip`.
    """
    outcome = yield
    rep = outcome.get_result()

    allow_skip = item.config.getoption("--allow-skip")
    if allow_skip == "all":
        return

    test_marks = [mark.name for mark in item.iter_markers()]
    if allow_skip != "none" and any(mark in test_marks for mark in allow_skip.split(",")):
        return

    if rep.skipped and call.excinfo is not None and call.excinfo.errisinstance(pytest.skip.Exception):
        rep.outcome = "failed"
        rep.longrepr = f"Forbidden skipped test - {call.excinfo.value}"


def pytest_addoption(parser):
    parser.addoption(
        "--allow-skip",
        action="store",
        default="all",
        help="A comma-separated list of marks. Any test without a mark from the list will fail on skip."
        " If not passed, every test is permitted to skip."
        " Pass `none` to disallow any test from skipping.",
    )
