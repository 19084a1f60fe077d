from pathlib import Path

import pytest

TESTS = Path(__file__).parent
FIXTURES = TESTS / "fixtures"
GOLDEN = TESTS / "golden"
SCHEMA = TESTS.parent / "schemas" / "report.json"


def pytest_addoption(parser):
    parser.addoption(
        "--update-golden",
        action="store_true",
        default=False,
        help="rewrite tests/golden/* from the current output instead of comparing",
    )


@pytest.fixture
def golden(request):
    """Compare text to ``tests/golden/<name>`` byte for byte (or rewrite it)."""
    update = request.config.getoption("--update-golden")

    def check(name, text):
        path = GOLDEN / name
        if update:
            path.write_bytes(text.encode("utf-8"))
            return
        assert path.exists(), f"missing golden file {path}; run pytest --update-golden"
        assert text.encode("utf-8") == path.read_bytes(), f"output differs from {path}"

    return check


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


_CRITERIA = {}


@pytest.fixture
def criterion(capsys):
    """``criterion(n, ok, detail)`` records and prints one PASS/FAIL line, then asserts."""

    def record(n, ok, detail):
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        _CRITERIA[n] = line
        with capsys.disabled():
            print(f"\n{line}")
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[n])
