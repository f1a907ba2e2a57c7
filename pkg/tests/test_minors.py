import itertools

import numpy as np
import pytest

from blobbing.blobs import MinorModel
from graphs.graph import Graph
from minors import Outcome, SearchBudget, find_minor, naive_minor, validate_model
from tests.mocks.graph_catalogue import GraphCatalogue


def _assert_agrees_with_naive(h: Graph, g: Graph):
    result = find_minor(h, g)
    assert result.outcome is not Outcome.INCONCLUSIVE, (h, g)
    expected = naive_minor(h, g)
    assert (result.outcome is Outcome.MODEL) == expected, (h, g)
    if result.outcome is Outcome.MODEL:
        check = validate_model(result.model, h, g)
        assert check, check.reason


# --- find_minor examples ---

def test_path_in_triangle():
    result = find_minor(GraphCatalogue.path(3), GraphCatalogue.complete(3))
    assert result.outcome is Outcome.MODEL
    assert validate_model(result.model, GraphCatalogue.path(3), GraphCatalogue.complete(3))


def test_triangle_in_five_cycle():
    result = find_minor(GraphCatalogue.complete(3), GraphCatalogue.cycle(5))
    assert result.outcome is Outcome.MODEL
    assert sum(len(x) for x in result.model.branch_sets) >= 3
    assert validate_model(result.model, GraphCatalogue.complete(3), GraphCatalogue.cycle(5))


def test_k4_not_in_five_cycle():
    result = find_minor(GraphCatalogue.complete(4), GraphCatalogue.cycle(5))
    assert result.outcome is Outcome.NO_MINOR
    assert result.model is None


def test_k5_in_petersen():
    result = find_minor(GraphCatalogue.complete(5), GraphCatalogue.petersen())
    assert result.outcome is Outcome.MODEL
    assert validate_model(result.model, GraphCatalogue.complete(5), GraphCatalogue.petersen())


def test_k33_in_petersen_but_not_in_k5():
    k33 = GraphCatalogue.complete_bipartite(3, 3)
    assert find_minor(k33, GraphCatalogue.petersen()).outcome is Outcome.MODEL
    assert find_minor(k33, GraphCatalogue.complete(5)).outcome is Outcome.NO_MINOR


def test_quick_rejections_skip_the_search():
    assert find_minor(GraphCatalogue.complete(4), GraphCatalogue.complete(3)).nodes == 0
    result = find_minor(GraphCatalogue.complete(4), GraphCatalogue.path(6))
    assert result.outcome is Outcome.NO_MINOR
    assert result.nodes == 0


def test_empty_h_is_rejected():
    with pytest.raises(ValueError):
        find_minor(Graph.empty(0), GraphCatalogue.complete(3))


def test_node_limit_gives_inconclusive():
    result = find_minor(GraphCatalogue.complete(4), GraphCatalogue.complete(5), SearchBudget(node_limit=1))
    assert result.outcome is Outcome.INCONCLUSIVE
    assert result.model is None
    assert result.nodes == 2
    assert "node limit" in result.reason


@pytest.mark.parametrize("node_limit, time_limit", [(0, 1.0), (10, 0.0)])
def test_budget_rejects_non_positive_limits(node_limit, time_limit):
    with pytest.raises(ValueError):
        SearchBudget(node_limit, time_limit)


def test_search_is_deterministic():
    h = GraphCatalogue.complete(4)
    g = GraphCatalogue.random(9, 0.5, seed=3)
    first, second = find_minor(h, g), find_minor(h, g)
    assert first.outcome == second.outcome
    assert first.model == second.model
    assert first.nodes == second.nodes


def test_result_serialises_model_as_sorted_lists():
    result = find_minor(GraphCatalogue.complete(3), GraphCatalogue.cycle(4))
    payload = result.to_dict()
    assert payload["outcome"] == "model"
    assert all(branch == sorted(branch) for branch in payload["model"])


# --- Properties ---

def test_minor_relation_is_reflexive():
    for g in GraphCatalogue.atlas(6):
        result = find_minor(g, g)
        assert result.outcome is Outcome.MODEL, g
        assert validate_model(result.model, g, g)


def test_adding_an_edge_keeps_a_model():
    rng = np.random.default_rng(17)
    for trial in range(40):
        g = GraphCatalogue.random(7, 0.35, seed=trial)
        h = GraphCatalogue.random(4, 0.6, seed=trial, stream=1)
        missing = [(u, v) for u, v in itertools.combinations(range(g.n), 2) if not g.has_edge(u, v)]
        if find_minor(h, g).outcome is not Outcome.MODEL or not missing:
            continue
        u, v = missing[int(rng.integers(len(missing)))]
        assert find_minor(h, g.add_edge(u, v)).outcome is Outcome.MODEL


def test_agreement_with_naive_on_small_atlas():
    for g in GraphCatalogue.atlas(5):
        for h in GraphCatalogue.atlas(3):
            _assert_agrees_with_naive(h, g)


@pytest.mark.slow
def test_agreement_with_naive_on_full_atlas():
    for g in GraphCatalogue.atlas(6):
        for h in GraphCatalogue.atlas(4):
            _assert_agrees_with_naive(h, g)


@pytest.mark.slow
def test_agreement_with_naive_on_random_pairs():
    rng = np.random.default_rng(8)
    for i in range(10_000):
        n = int(rng.integers(1, 9))
        t = int(rng.integers(1, min(n, 5) + 1))
        g = GraphCatalogue.random(n, float(rng.uniform(0.2, 0.8)), seed=i)
        h = GraphCatalogue.random(t, float(rng.uniform(0.3, 1.0)), seed=i, stream=1)
        _assert_agrees_with_naive(h, g)


# --- naive_minor ---

def test_naive_finds_k2_in_any_graph_with_an_edge():
    assert naive_minor(GraphCatalogue.complete(2), Graph.from_edges(5, [(1, 3)]))
    assert not naive_minor(GraphCatalogue.complete(2), Graph.empty(5))


def test_naive_rejects_k3_in_trees():
    assert not naive_minor(GraphCatalogue.complete(3), GraphCatalogue.path(7))
    assert not naive_minor(GraphCatalogue.complete(3), GraphCatalogue.complete_bipartite(1, 6))


def test_naive_refuses_large_hosts():
    with pytest.raises(ValueError):
        naive_minor(GraphCatalogue.complete(2), GraphCatalogue.petersen())


# --- validate_model ---

def test_identity_model_of_triangle():
    k3 = GraphCatalogue.complete(3)
    assert validate_model(MinorModel.of([{0}, {1}, {2}]), k3, k3)


def test_overlapping_branch_sets_are_rejected():
    k3 = GraphCatalogue.complete(3)
    check = validate_model(MinorModel.of([{0, 1}, {1}, {2}]), k3, k3)
    assert not check
    assert "share" in check.reason


def test_petersen_matching_contracts_to_k5():
    model = MinorModel.of([{0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}])
    assert validate_model(model, GraphCatalogue.complete(5), GraphCatalogue.petersen())


@pytest.mark.parametrize(
    "branch_sets, fragment",
    [
        ([{0}, {1}], "expected 3 branch sets"),
        ([{0}, set(), {2}], "empty"),
        ([{0}, {1}, {7}], "outside G"),
        ([{0, 2}, {1}, {3}], "not connected"),
        ([{0}, {1}, {3}], "no edge of G"),
    ],
)
def test_validator_reports_first_violation(branch_sets, fragment):
    k3 = GraphCatalogue.complete(3)
    check = validate_model(MinorModel.of(branch_sets), k3, GraphCatalogue.path(5))
    assert not check
    assert fragment in check.reason
