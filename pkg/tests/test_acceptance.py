"""One test per acceptance criterion; each prints its PASS/FAIL line."""

import pytest

from lingrowth.acceptance import CRITERIA, TIME_LIMITS


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = CRITERIA[number]()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
    assert result.seconds < TIME_LIMITS[number], f"took {result.seconds:.1f}s"
