from fractions import Fraction

import pytest

from qspace import subspace as sp
from qspace.audit import (
    CHAIN_IDS,
    pair_threshold,
    cross_intersecting_bound,
    family_size_bound,
    family_size_report,
    general_threshold,
    threshold_audit,
    _family_value,
    _tail_exponent,
)
from qspace.errors import RangeViolation, ValidationError
from qspace.family import build_F_X_k, covering_number
from qspace.gfq import field_new
from qspace.qbinom import gauss_binom as g
from qspace.search import sample_maximal_families


def test_cross_bound_value():
    # [3,1][1,1]^{-1}[3,1][2,1] at q=2
    assert cross_intersecting_bound(3, 2, 1, 1, 6, 2) == 7 * 7 * 3
    assert cross_intersecting_bound(3, 2, 1, 1, 6, 2, form="derived") == 7 * 7 * g(4, 1, 2)


def test_cross_bound_collapses_when_s_equals_ell_minus_one():
    assert cross_intersecting_bound(4, 3, 2, 1, 9, 2) == g(4, 2, 2) * g(4, 2, 2) * g(3, 0, 2)
    assert cross_intersecting_bound(5, 3, 2, 1, 12, 2) == g(5, 2, 2) ** 2 * g(5, 1, 2)


def test_cross_bound_covers_intersecting_families_at_desk_scale():
    bound = cross_intersecting_bound(3, 2, 1, 1, 6, 2)
    fams = [build_F_X_k(sp.coordinate(field_new(2), 6, range(3)), 3)]
    fams += list(sample_maximal_families(6, 3, 2, 2, 1, seed=5, iterations=6))
    for fam in fams:
        assert covering_number(fam, 1).tau >= 2
        assert len(fam) <= bound


def test_cross_bound_preconditions():
    with pytest.raises(RangeViolation):
        cross_intersecting_bound(3, 1, 1, 1, 6, 2)
    with pytest.raises(RangeViolation):
        cross_intersecting_bound(3, 2, 1, 1, 4, 2)
    # [s, ell-1] = [1, 2] vanishes
    with pytest.raises(RangeViolation):
        cross_intersecting_bound(4, 3, 1, 1, 17, 2)
    with pytest.raises(ValidationError):
        cross_intersecting_bound(3, 2, 1, 1, 6, 2, form="tight")


def test_cross_bound_is_monotone_in_n():
    for k, ell, s, t in [(3, 2, 1, 1), (4, 3, 2, 1), (5, 3, 3, 2)]:
        values = [cross_intersecting_bound(k, ell, s, t, n, 2) for n in range(2 * k - s, 2 * k + 10)]
        assert values == sorted(values)


def test_size_bound_collapses_at_r2():
    for k, t, n in [(3, 1, 8), (5, 2, 12), (6, 1, 20)]:
        assert family_size_bound(k, 2, t, n, 3) == g(k, t, 3) ** 2 * g(n - k - 1, k - t - 1, 3)


def test_size_bound_preconditions():
    with pytest.raises(RangeViolation):
        family_size_bound(4, 2, 1, 5, 2)
    with pytest.raises(ValidationError):
        family_size_bound(4, 1, 1, 9, 2)


def test_size_bound_holds_for_k3():
    rep = family_size_report(8, 3, 2, 1, 2)
    assert rep.lhs == 435 and rep.rhs == 735 and rep.holds


@pytest.mark.parametrize("n, size, bound", [(8, 4371, 1575), (17, 1252485811, 628684875)])
def test_size_bound_fails_for_k4(n, size, bound):
    rep = family_size_report(n, 4, 2, 1, 2)
    assert (rep.lhs, rep.rhs) == (size, bound)
    assert not rep.holds
    assert size <= family_size_bound(4, 2, 1, n, 2, form="derived")
    assert "derived bound" in rep.note and "holds" in rep.note


def test_audit_is_exact():
    for rep in threshold_audit(17, 4, 2, 1, 2):
        assert isinstance(rep.lhs, Fraction) and isinstance(rep.rhs, Fraction)
        assert rep.holds == (rep.lhs < rep.rhs)
        rec = rep.to_record()
        assert isinstance(rec["lhs"], str) and rec["direction"] == "<"


def test_degenerate_chain_uses_log_estimate():
    reps = {r.named_bound: r for r in threshold_audit(17, 4, 2, 1, 2)}
    assert reps["lemma2.6"].basis == "log-relaxation"
    assert reps["lemma2.6"].lhs == 2**63
    r3 = {r.named_bound: r for r in threshold_audit(60, 5, 3, 1, 2)}
    assert r3["lemma2.6"].basis == "exact"


def test_chain_m_ranges():
    reps = threshold_audit(72, 6, 2, 1, 2)
    assert sorted(r.m for r in reps if r.named_bound == "lemma3.4") == [4, 5, 6, 7]
    assert sorted(r.m for r in reps if r.named_bound == "lemma3.5") == [2]
    reps = threshold_audit(100, 6, 3, 2, 2)
    assert sorted(r.m for r in reps if r.named_bound == "lemma3.5") == [3, 4]


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize("t", [1, 2])
def test_chains_hold_at_general_threshold(q, r, t):
    for k in range(r + t - 1, 7):
        n = general_threshold(k, r, t)
        for rep in threshold_audit(n, k, r, t, q):
            assert rep.holds, rep.to_record()


def test_chains_fail_at_tiny_n():
    reps = threshold_audit(6, 4, 2, 1, 2)
    assert not all(r.holds for r in reps)
    assert all("n <= 2k" in r.note for r in reps)


def test_pair_threshold():
    assert pair_threshold(4) == 17
    assert general_threshold(4, 2, 1) == 72


def test_lower_side_log_estimate_is_a_relaxation():
    for n, k, r, t in [(17, 4, 2, 1), (72, 4, 2, 1), (60, 5, 3, 1), (100, 6, 3, 2)]:
        for rep in threshold_audit(n, k, r, t, 2):
            assert rep.lower_relaxation_ok


def test_upper_log_estimate_understates_size_bound_power():
    # the estimate uses (r+t-2)(k-r-t+1) for log [k, r+t-2], which is too small
    n, k, r, t = 17, 4, 2, 1
    assert _family_value(k, r, t, n, 2) ** r > Fraction(2) ** _tail_exponent(n, k, r, t)
    reps = [x for x in threshold_audit(n, k, r, t, 2) if x.basis == "exact"]
    assert reps and not any(x.upper_relaxation_ok for x in reps)


def test_derived_form_at_pair_threshold():
    reps = threshold_audit(17, 4, 2, 1, 2, form="derived")
    assert {r.named_bound for r in reps} == set(CHAIN_IDS)
    assert not all(r.holds for r in reps)
    assert all(r.holds for r in threshold_audit(72, 4, 2, 1, 2, form="derived"))
