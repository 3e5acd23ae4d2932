import random

import pytest

from fvslab.harness import named_corpus

# criterion number -> (passed, detail); filled by test_acceptance
CRITERIA = {}


@pytest.fixture(scope="session")
def named():
    return named_corpus()


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def criteria():
    return CRITERIA


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
