"""AC1..AC10 at their stated tolerances and time limits, one line per criterion.

The lines are echoed in the terminal summary (see conftest.py) so they show
up without ``-s``.
"""
import pytest

from kseeker import acceptance

RESULTS = {}


@pytest.fixture(scope="module", autouse=True)
def _compiled():
    acceptance.warm_up()


@pytest.mark.parametrize("cid", list(acceptance.CRITERIA))
def test_criterion(cid):
    r = acceptance.run_one(cid)
    RESULTS[cid] = f"{r.id:<5} {'PASS' if r.passed else 'FAIL'} ({r.seconds:.2f}s / {r.limit:.0f}s) {r.title}: {r.detail}"
    print(RESULTS[cid])
    assert r.passed, r.detail
