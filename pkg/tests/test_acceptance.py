"""The eleven acceptance criteria, one test each.

Every test prints a single PASS/FAIL line; the lines are also collected and
repeated in the terminal summary.  Run alone with::

    pytest tests/test_acceptance.py -v
"""
import pytest

from hurlab.acceptance import CRITERIA

ACCEPTANCE_LINES = []


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    result = CRITERIA[number](seed=0)
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.passed, line
