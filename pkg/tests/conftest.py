import itertools

import pytest
from hypothesis import settings

from nilgraph.perm import Permutation

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def perms_of(n):
    return [Permutation(p) for p in itertools.permutations(range(n))]


@pytest.fixture(scope="session")
def s4():
    from nilgraph.group import make_group

    return make_group("S4")


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        name, ok, secs, limit = ACCEPTANCE[num]
        terminalreporter.write_line(
            f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {name}  ({secs:.2f}s, limit {limit:g}s)"
        )
