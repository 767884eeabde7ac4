"""One pass/fail line per acceptance criterion (run with -s to see them)."""
import pytest

from snfy.acceptance import criteria, run_check

CRITERIA = criteria()


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[name for name, _ in CRITERIA])
def test_criterion(name, fn):
    result = run_check(name, fn)
    print(result.line())
    assert result.status == "pass", result.line()
