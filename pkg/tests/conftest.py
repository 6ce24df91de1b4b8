import sys

import pytest

from cable_cosmetic.diagrams import parse_braid
from cable_cosmetic.knots import Leaf, parse_leaf_class


@pytest.fixture
def figure_eight():
    return Leaf("4_1", parse_braid("BR[3; 1,-2,1,-2]"), parse_leaf_class("hyperbolic"), 0)


@pytest.fixture
def five_two():
    return Leaf("5_2", parse_braid("BR[3; 1,1,1,2,-1,2]"), parse_leaf_class("hyperbolic"))


@pytest.fixture
def hyperbolic_leaf():
    return Leaf("h", None, parse_leaf_class("hyperbolic"))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", [])
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
