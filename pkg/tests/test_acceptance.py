"""One PASS/FAIL line per acceptance criterion.

Under pytest the lines are repeated in the terminal summary; run this
file directly to print them without pytest.
"""

import sys

import pytest

from ppaq.acceptance import CRITERIA

LINES = {}


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number):
    c = CRITERIA[number - 1]()
    LINES[number] = c.line()
    print(LINES[number])
    assert c.number == number
    assert c.ok, LINES[number]


if __name__ == "__main__":
    results = [fn() for fn in CRITERIA]
    for c in results:
        print(c.line())
    sys.exit(0 if all(c.ok for c in results) else 1)
