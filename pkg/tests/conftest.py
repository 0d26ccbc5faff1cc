import functools
import sys

import pytest

from kanforge.corpus import abelian_two_groups, exhaustive_groupoids, groupoid_corpus, random_groupoids
from kanforge.groupoid import group_groupoid, nerve_groupoid, pair_groupoid
from kanforge.corpus import cyclic


@functools.lru_cache(maxsize=None)
def corpus():
    return tuple(groupoid_corpus())


@pytest.fixture(scope="session")
def full_corpus():
    return corpus()


@pytest.fixture(scope="session")
def z2():
    return group_groupoid(cyclic(2))


@pytest.fixture(scope="session")
def z2_nerve(z2):
    return nerve_groupoid(z2, 4)


@pytest.fixture(scope="session")
def pair2():
    return pair_groupoid(2)


@pytest.fixture(scope="session")
def two_groups():
    return abelian_two_groups()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
