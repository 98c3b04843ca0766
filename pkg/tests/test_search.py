import random
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from qspace import subspace as sp
from qspace.errors import InfeasibleScale, ValidationError
from qspace.family import build_F_X_k, build_F_star_X_k, is_maximal, is_r_wise_t_intersecting
from qspace.gfq import field_new
from qspace.search import (
    enumerate_maximal_families_r2,
    extremal_report,
    greedy_closure,
    maximal_cliques,
    sample_maximal_families,
    sandwich_witness,
)

F2 = field_new(2)


@given(st.integers(1, 14), st.floats(0.1, 0.9), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_clique_listing_matches_networkx(n, p, seed):
    graph = nx.gnp_random_graph(n, p, seed=seed)
    adj = [sum(1 << u for u in graph[v]) for v in range(n)]
    ours = {frozenset(c) for c in maximal_cliques(adj)}
    assert len(ours) == len(maximal_cliques(adj))
    assert ours == {frozenset(c) for c in nx.find_cliques(graph)}


def test_all_planes_form_the_only_maximal_family():
    fams = list(enumerate_maximal_families_r2(3, 2, 2, 1))
    assert len(fams) == 1 and len(fams[0]) == 7


def test_lines_of_projective_three_space():
    fams = list(enumerate_maximal_families_r2(4, 2, 2, 1))
    assert len(fams) == 30
    assert Counter(len(f) for f in fams) == {7: 30}
    assert fams == sorted(fams, key=lambda f: f.key())


def test_exhaustive_guard():
    with pytest.raises(InfeasibleScale):
        list(enumerate_maximal_families_r2(7, 3, 2, 1))


def test_smallest_report():
    res = extremal_report(3, 2, 2, 2, 1)
    assert res.best_count == 28 == res.n_trk
    assert res.distinct == 1
    assert res.sandwiches == [sp.full(F2, 3)]


def test_report_below_asymptotic_range():
    res = extremal_report(4, 2, 2, 2, 1)
    assert res.examined == 30 and res.best_count == 28
    assert len(res.witnesses) == 15
    assert all(x is not None for x in res.sandwiches)
    assert res.taus == {1: 15, 2: 15}
    assert res.pairwise_level_ok


def test_sampled_mode_is_deterministic():
    a = [f.key() for f in sample_maximal_families(5, 2, 2, 2, 1, seed=11, iterations=5)]
    b = [f.key() for f in sample_maximal_families(5, 2, 2, 2, 1, seed=11, iterations=5)]
    assert a == b


@pytest.mark.parametrize("r, t", [(2, 1), (3, 1), (2, 2)])
def test_samples_are_maximal(r, t):
    for fam in sample_maximal_families(5, 3, 2, r, t, seed=r + t, iterations=4):
        assert is_r_wise_t_intersecting(fam, r, t)
        assert is_maximal(fam, r, t)


def test_zero_iterations():
    res = extremal_report(5, 2, 2, 2, 1, mode="sampled", iterations=0)
    assert res.examined == 0 and res.best_count == 0 and res.witnesses == []


def test_closure_from_star_family():
    x = sp.coordinate(F2, 6, range(3))
    star, full = build_F_star_X_k(x, 3), build_F_X_k(x, 3)
    for seed in range(3):
        grown = greedy_closure(star, 2, 1, random.Random(seed))
        assert star.issubset(grown)
        assert is_maximal(grown, 2, 1)
        # the only admissible addition is X itself
        assert grown == full
        assert sandwich_witness(grown, 2, 1) == x


def test_sandwich_witness_rejects_outsiders():
    x = sp.coordinate(F2, 5, range(3))
    full = build_F_X_k(x, 3)
    assert sandwich_witness(full, 2, 1) == x
    assert sandwich_witness(full.without(full.members[-1]), 2, 1) in (None, x)
    stray = sp.coordinate(F2, 5, [2, 3, 4])
    assert sandwich_witness(full.with_members([stray]), 2, 1) is None


def test_exhaustive_mode_needs_r2():
    with pytest.raises(ValidationError):
        extremal_report(4, 2, 2, 3, 1)
    with pytest.raises(ValidationError):
        extremal_report(4, 2, 2, 2, 1, mode="random")


def test_shadow_observations_are_recorded():
    res = extremal_report(6, 3, 2, 2, 1, mode="sampled", seed=1, iterations=5)
    assert res.shadow
    for obs in res.shadow:
        assert obs["tau"] >= 3
        assert obs["below_n_trk"] == (int(obs["count"]) < res.n_trk)


def test_report_independent_of_workers():
    a = extremal_report(6, 3, 2, 2, 1, mode="sampled", seed=2, iterations=3, workers=1).to_record()
    b = extremal_report(6, 3, 2, 2, 1, mode="sampled", seed=2, iterations=3, workers=3).to_record()
    assert a == b
