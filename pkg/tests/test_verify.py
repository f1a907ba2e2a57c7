import itertools
import json
import math
from dataclasses import replace
from fractions import Fraction

import pytest

from graphs.errors import BudgetExceededError, RetriesExhaustedError
from graphs.graph import non_adjacent
from graphs.graph_io import format_graph
from params.derive import derive_params, lemma_params
from randgen.samplers import sample_gnp
from randgen.seeds import Seed
from tests.mocks.graph_catalogue import GraphCatalogue
from verify import (
    StarMode,
    chernoff_lower_tail,
    construct_g0,
    edge_threshold,
    empirical_lower_tail,
    star_pair_count,
    star_threshold,
    star_union_bound,
    verify_star,
)


@pytest.fixture
def params16():
    """d = 16, p = 1/2: floor(ell) = 1 and s = 8."""
    return lemma_params(0.5, 0.5, 4 / 9, 16, 40)


@pytest.fixture
def params16_pairs(params16):
    """d = 16 with ell = 2 and s = 4, so pairs of vertices count as ell-sets."""
    return replace(params16, ell=2.0, s=4)


def _tiny_params(d, ell, s):
    return replace(lemma_params(0.5, 0.5, 0.5, d, d + 1), ell=float(ell), s=s)


def _all_collections(d, cap, s):
    subsets = [frozenset(c) for k in range(1, cap + 1) for c in itertools.combinations(range(d), k)]
    for combo in itertools.combinations(subsets, s):
        if sum(len(x) for x in combo) == len(frozenset().union(*combo)):
            yield combo


# --- Chernoff ---

def test_chernoff_golden_value():
    assert chernoff_lower_tail(100, 0.5, 0.2) == pytest.approx(math.exp(-1), abs=1e-12)


def test_chernoff_tends_to_one_for_small_delta():
    assert chernoff_lower_tail(100, 0.5, 1e-9) == pytest.approx(1.0)


@pytest.mark.parametrize("n, p, delta", [(0, 0.5, 0.2), (10, 0.0, 0.2), (10, 1.5, 0.2), (10, 0.5, 0.0), (10, 0.5, 1.0)])
def test_chernoff_rejects_bad_arguments(n, p, delta):
    with pytest.raises(ValueError):
        chernoff_lower_tail(n, p, delta)


def test_empirical_tail_is_below_the_bound():
    check = empirical_lower_tail(100, 0.5, 0.2, 100_000, Seed(2024))
    assert check.frequency < check.bound
    assert check.frequency == pytest.approx(0.0284, abs=0.005)
    assert check.respects_bound


@pytest.mark.parametrize("n", [20, 200])
@pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
@pytest.mark.parametrize("delta", [0.1, 0.5])
def test_empirical_tail_respects_bound_on_a_grid(n, p, delta):
    assert empirical_lower_tail(n, p, delta, 5000, Seed(n)).respects_bound


@pytest.mark.slow
@pytest.mark.parametrize("n, p, delta", [(100, 0.5, 0.2), (200, 0.3, 0.3), (50, 0.71532, 0.25)])
def test_empirical_tail_respects_bound_at_full_sample_size(n, p, delta):
    check = empirical_lower_tail(n, p, delta, 100_000, Seed(2024))
    assert check.samples == 100_000
    assert check.respects_bound
    assert check.bound == pytest.approx(chernoff_lower_tail(n, p, delta))


def test_empirical_tail_is_reproducible():
    assert empirical_lower_tail(50, 0.3, 0.4, 1000, Seed(5)) == empirical_lower_tail(50, 0.3, 0.4, 1000, Seed(5))


# --- star_pair_count ---

def test_pair_count_on_empty_and_complete_graphs():
    sets = [{0}, {1, 2}, {3}, {4, 5}]
    assert star_pair_count(sets, GraphCatalogue.empty(6)) == math.comb(4, 2)
    assert star_pair_count(sets, GraphCatalogue.complete(6)) == 0


def test_pair_count_on_c4_antipodes():
    assert star_pair_count([{0}, {2}], GraphCatalogue.cycle(4)) == 1


def test_pair_count_plus_adjacent_pairs_is_all_pairs():
    g0 = GraphCatalogue.random(12, 0.4, seed=9)
    sets = [{0, 1}, {2}, {3, 4}, {5}, {6, 7}, {8}]
    adjacent = sum(1 for a, b in itertools.combinations(sets, 2) if not non_adjacent(g0, a, b))
    assert star_pair_count(sets, g0) + adjacent == math.comb(len(sets), 2)


@pytest.mark.parametrize(
    "sets, ell",
    [
        ([{0, 1}, {1, 2}], None),
        ([{0}, set()], None),
        ([{0, 1, 2}, {3}], 2.5),
        ([{0}, {9}], None),
    ],
)
def test_pair_count_rejects_invalid_collections(sets, ell):
    with pytest.raises(ValueError):
        star_pair_count(sets, GraphCatalogue.cycle(6), ell)


# --- verify_star ---

def test_threshold_is_exact_half_of_the_scaled_pair_count(params16_pairs):
    threshold = star_threshold(params16_pairs)
    assert threshold == Fraction(params16_pairs.d_neg_alpha) * 6 / 2
    assert float(threshold) == pytest.approx(0.5 * 16 ** (-4 / 9) * 6)


@pytest.mark.parametrize("mode", list(StarMode))
def test_empty_g0_passes_in_every_mode(params16, mode):
    verdict = verify_star(GraphCatalogue.empty(16), params16, mode=mode, seed=Seed(1), samples=200, restarts=20)
    assert verdict.passed
    assert verdict.count == math.comb(params16.s, 2)
    assert verdict.proves is (mode is StarMode.EXHAUSTIVE)


@pytest.mark.parametrize("mode", list(StarMode))
def test_complete_g0_fails_with_a_witness(params16, mode):
    g0 = GraphCatalogue.complete(16)
    verdict = verify_star(g0, params16, mode=mode, seed=Seed(1), samples=50, restarts=5)
    assert not verdict.passed
    assert verdict.count == 0
    assert len(verdict.witness) == params16.s
    assert star_pair_count(verdict.witness, g0, params16.ell) == 0


def test_vacuous_when_no_ell_set_exists():
    params = derive_params(0.5, 4, 8)
    verdict = verify_star(GraphCatalogue.complete(4), params, mode="exhaustive")
    assert verdict.vacuous
    assert verdict.passed
    assert verdict.witness is None


def test_g0_must_have_d_vertices(params16):
    with pytest.raises(ValueError):
        verify_star(GraphCatalogue.empty(15), params16)


def test_exhaustive_respects_budget(params16_pairs):
    g0 = sample_gnp(16, 0.5, Seed(42))
    with pytest.raises(BudgetExceededError) as excinfo:
        verify_star(g0, params16_pairs, mode=StarMode.EXHAUSTIVE, budget=1000)
    assert excinfo.value.estimate == math.comb(16 + 120, 4)


def test_exhaustive_matches_independent_enumeration():
    params = _tiny_params(6, 2, 3)
    for seed in range(5):
        g0 = sample_gnp(6, 0.5, Seed(seed))
        expected = min(star_pair_count(c, g0) for c in _all_collections(6, 2, 3))
        verdict = verify_star(g0, params, mode=StarMode.EXHAUSTIVE)
        assert verdict.count == expected
        assert verdict.coverage == sum(1 for _ in _all_collections(6, 2, 3))
        assert star_pair_count(verdict.witness, g0) == verdict.count


@pytest.mark.parametrize("d, ell, s", [(4, 1, 2), (5, 2, 2)])
def test_sampled_agrees_with_exhaustive_when_coverage_is_complete(d, ell, s):
    params = _tiny_params(d, ell, s)
    total = sum(1 for _ in _all_collections(d, ell, s))
    for seed in range(3):
        g0 = sample_gnp(d, 0.5, Seed(seed))
        exhaustive = verify_star(g0, params, mode=StarMode.EXHAUSTIVE)
        sampled = verify_star(g0, params, mode=StarMode.SAMPLED, seed=Seed(seed), samples=5000)
        assert sampled.coverage == total
        assert sampled.count == exhaustive.count
        assert sampled.passed == exhaustive.passed


def test_sampled_verdict_is_reproducible(params16_pairs):
    g0 = sample_gnp(16, 0.5, Seed(42))
    first = verify_star(g0, params16_pairs, mode=StarMode.SAMPLED, seed=Seed(42), samples=500)
    second = verify_star(g0, params16_pairs, mode=StarMode.SAMPLED, seed=Seed(42), samples=500)
    assert first.to_json() == second.to_json()
    assert first.to_dict()["threshold"] == (
        f"{first.threshold.numerator}/{first.threshold.denominator}"
    )


def test_sampled_verdict_matches_frozen_record(params16_pairs, golden):
    g0 = sample_gnp(16, 0.5, Seed(42))
    verdict = verify_star(g0, params16_pairs, mode=StarMode.SAMPLED, seed=Seed(42), samples=500)
    golden("star_d16_sampled_seed42.json", verdict.to_json() + "\n")


@pytest.mark.slow
def test_sampled_verdict_is_independent_of_worker_count(params16_pairs):
    g0 = sample_gnp(16, 0.5, Seed(42))
    serial = verify_star(g0, params16_pairs, mode=StarMode.SAMPLED, seed=Seed(7), samples=400)
    parallel = verify_star(g0, params16_pairs, mode=StarMode.SAMPLED, seed=Seed(7), samples=400, workers=3)
    assert serial.to_dict() == parallel.to_dict()


def test_adversarial_witness_is_self_consistent(params16_pairs):
    for seed in range(3):
        g0 = sample_gnp(16, 0.5, Seed(seed))
        verdict = verify_star(g0, params16_pairs, mode=StarMode.ADVERSARIAL, seed=Seed(seed), restarts=20)
        assert star_pair_count(verdict.witness, g0, params16_pairs.ell) == verdict.count


def test_adversarial_never_beats_exhaustive():
    params = _tiny_params(6, 2, 3)
    g0 = sample_gnp(6, 0.6, Seed(11))
    exhaustive = verify_star(g0, params, mode=StarMode.EXHAUSTIVE)
    adversarial = verify_star(g0, params, mode=StarMode.ADVERSARIAL, seed=Seed(11), restarts=30)
    assert adversarial.count >= exhaustive.count


def test_union_bound_is_consistent():
    bound = star_union_bound(derive_params(0.5, 16, 100))
    assert bound.log_union == pytest.approx(bound.log_count + bound.log_tail)
    assert bound.below_half is (bound.log_union < -math.log(2))
    assert not bound.below_half


# --- construct_g0 ---

def test_edge_threshold_for_sixteen_vertices():
    params = derive_params(0.5, 16, 100)
    assert params.p == pytest.approx(0.71532, abs=1e-5)
    assert edge_threshold(params) == pytest.approx(68.7, abs=0.05)


def test_construct_g0_is_seeded_by_value_only():
    params = derive_params(0.5, 16, 100)
    first = construct_g0(params, Seed(42, 0), mode=StarMode.SAMPLED, samples=2000)
    second = construct_g0(params, Seed(42, 5), mode=StarMode.SAMPLED, samples=2000)
    assert first.graph == second.graph
    assert first.attempts == second.attempts
    assert first.edge_check.passed
    assert first.graph.edge_count > edge_threshold(params)


def test_construct_g0_reports_complete_graph_honestly(mocker):
    params = replace(derive_params(0.5, 4, 8), ell=1.0, s=2)
    sampler = mocker.patch("verify.construction.sample_gnp", return_value=GraphCatalogue.complete(4))

    with pytest.raises(RetriesExhaustedError) as excinfo:
        construct_g0(params, Seed(0), mode=StarMode.EXHAUSTIVE, max_retries=3)

    assert sampler.call_count == 3
    err = excinfo.value
    assert err.attempts == 3
    assert err.best_graph == GraphCatalogue.complete(4)
    assert not err.best_verdict.passed
    assert err.best_verdict.count == 0
    assert len(err.best_verdict.witness) == 2


def test_construct_g0_matches_frozen_run(golden):
    params = derive_params(0.5, 16, 100)
    construction = construct_g0(params, Seed(42), mode=StarMode.SAMPLED, samples=2000)
    record = {
        "attempts": construction.attempts,
        "edges": construction.graph.edge_count,
        "verdict": construction.verdict.to_dict(),
    }
    golden("construct_g0_d16_seed42.json", json.dumps(record, sort_keys=True) + "\n")
    golden("construct_g0_d16_seed42_graph.txt", format_graph(construction.graph))
