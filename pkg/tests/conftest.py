import random

import pytest
from hypothesis import settings

from fgq import word

settings.register_profile("fgq", deadline=None, max_examples=100)
settings.load_profile("fgq")

ACCEPTANCE_RESULTS: list[tuple[str, str, str]] = []


@pytest.fixture(autouse=True)
def debug_normal_form(request):
    """Re-verify the normal form after every word operation, except in the
    timed acceptance module."""
    if request.module.__name__.endswith("test_acceptance"):
        yield
        return
    old = word.DEBUG
    word.DEBUG = True
    yield
    word.DEBUG = old


@pytest.fixture
def rng():
    return random.Random(20251015)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome, note in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{outcome:4}  {label}  {note}".rstrip())
