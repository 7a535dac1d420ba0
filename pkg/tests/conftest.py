import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nilclean import construct_ring, parse_spec  # noqa: E402


@pytest.fixture(scope="session")
def ring():
    cache = {}

    def build(text):
        if text not in cache:
            cache[text] = construct_ring(parse_spec(text))
        return cache[text]

    return build


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
