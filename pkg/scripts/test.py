import pytest


def _test(coverage: bool, slow: bool) -> int:
    """
    Run the tests located in `tests/`.
    Please keep in mind that:

    1. Suites over 100 seeded instances are marked `slow` and only run when `slow` is set.
    2. Coverage runs prohibit skipping.
    """
    test_coverage_threshold = 90

    args = ["tests/"]

    if not slow:
        args = ["-m", "not slow", *args]

    if coverage:
        args = [
            f"--cov-fail-under={test_coverage_threshold}",
            "--cov-report",
            "html",
            "--cov-report",
            "term",
            "--cov=tiltkit",
            "--allow-skip=none",
            *args,
        ]
    else:
        args = [
            "--tb=long",
            "-vv",
            "--cache-clear",
            "--allow-skip=all",
            *args,
        ]

    return pytest.main(args)


def test_no_cov():
    exit(_test(False, False))


def test_slow():
    exit(_test(False, True))


def test_all():
    exit(_test(True, True))
