import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mirrorsmith.exact import field_from_name  # noqa: E402
from mirrorsmith.worked_example import compiled, example_algebras, presentation_text  # noqa: E402


@pytest.fixture(scope="session")
def ex_f2():
    return example_algebras("F2")


@pytest.fixture(scope="session")
def ex_q():
    return example_algebras("Q")


@pytest.fixture(scope="session")
def ex_f7():
    return example_algebras("F7")


@pytest.fixture(scope="session")
def data_text():
    return presentation_text


@pytest.fixture(scope="session")
def F2():
    return field_from_name("F2")


@pytest.fixture(scope="session")
def QQ():
    return field_from_name("Q")


@pytest.fixture(scope="session")
def algebra():
    return compiled


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
