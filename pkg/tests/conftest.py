import pathlib

import hypothesis
import pytest

hypothesis.settings.register_profile(
    "default", max_examples=60, deadline=None
)
hypothesis.settings.load_profile("default")

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
MINIWEB = FIXTURES / "miniweb"


@pytest.fixture(scope="session")
def miniweb_path() -> pathlib.Path:
    return MINIWEB


@pytest.fixture(scope="session")
def miniweb_provider():
    from ctms.corpus import FixtureProvider, load_fixture

    return FixtureProvider(load_fixture(MINIWEB))


_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def record_acceptance(name: str, passed: bool) -> None:
    _ACCEPTANCE_RESULTS.append((name, "PASS" if passed else "FAIL"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, status in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{status}] {name}")
