from pathlib import Path

import pytest

from in2test.datasets import example_run
from in2test.rules import generate_rule_set

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def run1():
    return example_run("qa-run-1")


@pytest.fixture
def run2():
    return example_run("qa-run-2")


@pytest.fixture(scope="session")
def rule_set():
    return generate_rule_set()


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(line)
