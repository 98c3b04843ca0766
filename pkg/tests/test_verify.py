import pytest

from qspace.errors import ValidationError
from qspace.verify import SUITES, lemma1, projection, prop22, run_suite


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "all"])
def test_each_suite_passes_at_defaults(suite):
    recs = run_suite(suite, q=None if suite == "field" else 2)
    assert recs and all(r["ok"] for r in recs)


def test_all_suite_runs_everything():
    recs = run_suite("all", q=2)
    assert {r["suite"] for r in recs} == set(SUITES) - {"all"}


def test_suites_at_other_parameters():
    assert lemma1(3, 3)["ok"]
    assert lemma1(2, 5, samples=5, seed=1)["ok"]
    assert projection(3, 3, 1)["ok"]
    assert prop22(6, qs=(7, 9))["ok"]
    assert run_suite("fstar", n=7, k=3, r=3)[0]["ok"]
    assert run_suite("lemma24", n=5, k=3, r=3)[0]["ok"]


def test_unknown_suite():
    with pytest.raises(ValidationError):
        run_suite("nonsense")
