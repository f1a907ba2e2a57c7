import json
import math
import os
from fractions import Fraction
from pathlib import Path

import pandas as pd
import pytest

from blobbing.blobs import MinorModel
from blobbing.counting import enumerate_blobbings, good_pair_threshold
from graphs.errors import ConfigError, FeasibilityError, RetriesExhaustedError
from graphs.graph import average_degree
from harness.bounds import (
    bound_chain_grid,
    compatibility_probability_bound,
    direct_union_bound,
    log_union_bound,
    union_bound_estimate,
)
from harness.cli import main
from harness.estimate import estimate_minor_probability, trial_graph, wilson_interval
from harness.experiment import ExperimentConfig, load_config, replay_host_stats, run_experiment
from harness.host import build_host
from harness.records import ExperimentRecord, append_record, read_records
from minors import Outcome, SearchBudget, naive_minor, validate_model
from params.derive import derive_params
from randgen.samplers import sample_gnp
from randgen.seeds import Seed
from tests.mocks.graph_catalogue import GraphCatalogue
from verify.construction import G0Construction, check_edges
from verify.star import StarMode, StarVerdict

TEST_DATA = Path(__file__).parent / "test_data"

DESK_CONFIG = {
    "epsilon": 0.5,
    "d": 4,
    "t": 8,
    "trials": 6,
    "seed": 2024,
    "mode": "exhaustive",
}


@pytest.fixture(autouse=True)
def no_seed_env(mocker):
    mocker.patch.dict(os.environ, {"MINORS_SEED": ""})


@pytest.fixture
def desk_params():
    """d = 4, t = 8: floor(ell) = 0, r = 2, an 8-vertex host."""
    return derive_params(0.5, 4, 8)


@pytest.fixture
def desk_host(desk_params):
    host, _ = build_host(desk_params, Seed(2024), mode=StarMode.EXHAUSTIVE)
    return host


# --- Compatibility bound ---

def test_compatibility_with_no_good_pairs_is_certain():
    params = derive_params(0.5, 16, 40)
    assert compatibility_probability_bound(params, 50, 0).exact_ratio == 1


def test_compatibility_with_no_edges_is_certain():
    bound = compatibility_probability_bound(derive_params(0.5, 16, 40), 0, 30)
    assert bound.exact_ratio == 1
    assert bound.relaxed_bound == 1
    assert bound.exponential_bound == 1


def test_compatibility_exact_ratio_small_case():
    params = derive_params(0.5, 3, 4)
    assert compatibility_probability_bound(params, 3, 2).exact_ratio == Fraction(1, 5)


@pytest.mark.parametrize("m, q", [(0, 7), (7, 0), (-1, 0)])
def test_compatibility_rejects_out_of_range_counts(m, q):
    with pytest.raises(ValueError):
        compatibility_probability_bound(derive_params(0.5, 3, 4), m, q)


@pytest.mark.parametrize("d, t", [(4, 8), (16, 40), (16, 100)])
def test_compatibility_chain_holds_wherever_it_applies(d, t):
    grid = bound_chain_grid(derive_params(0.5, d, t))
    applied = grid[grid["chain_applies"]]
    assert len(applied) > 0
    assert applied["chain_holds"].all()
    assert (grid["relaxed_bound"] <= grid["exponential_bound"] + 1e-15).all()


def test_compatibility_chain_holds_on_a_wide_grid():
    frames = []
    for epsilon, d, t in [(0.5, 4, 8), (0.5, 16, 40), (0.3, 16, 60), (0.7, 9, 30), (0.5, 25, 50)]:
        params = derive_params(epsilon, d, t)
        pairs = math.comb(t, 2)
        base = math.ceil(good_pair_threshold(params))
        q_values = sorted({base + k * (pairs - base) // 5 for k in range(6)})
        m_values = sorted({k * pairs // 8 for k in range(9)})
        frames.append(bound_chain_grid(params, m_values, q_values))
    grid = pd.concat(frames, ignore_index=True)
    applied = grid[grid["chain_applies"]]
    assert len(applied) >= 100
    assert applied["chain_holds"].all()


def test_chain_below_the_good_pair_threshold_is_not_evaluated():
    params = derive_params(0.5, 16, 40)
    bound = compatibility_probability_bound(params, 10, 0)
    assert not bound.chain_applies
    assert bound.chain_holds is None


# --- Union bound ---

def test_log_union_bound_formula():
    params = derive_params(0.5, 16, 40)
    expected = 40 * params.ell * math.log(64) - 0.25 * 40 * 16 ** (1 - params.alpha) / 400
    assert log_union_bound(params) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("d, t", [(4, 8), (16, 40), (16, 100), (64, 80)])
def test_log_space_matches_direct_evaluation(d, t):
    params = derive_params(0.5, d, t)
    assert union_bound_estimate(params).bound == pytest.approx(direct_union_bound(params), rel=1e-9)


def test_small_d_bound_is_reported_above_one():
    estimate = union_bound_estimate(derive_params(0.5, 16, 100))
    assert estimate.bound > 1
    assert not estimate.below_c_t


def test_overflow_is_reported_as_infinity():
    params = derive_params(0.5, 16, 1000)
    assert union_bound_estimate(params).bound == math.inf
    with pytest.raises(OverflowError):
        direct_union_bound(params)


def test_union_bound_drops_below_c_to_the_t_only_for_huge_d():
    million = derive_params(0.5, 10**6, 10**6 + 1)
    assert union_bound_estimate(million).log_bound > 0
    trillion = derive_params(0.5, 10**12, 10**12 + 1)
    estimate = union_bound_estimate(trillion, c=0.5)
    assert estimate.log_bound < 0
    assert estimate.below_c_t


@pytest.mark.parametrize("c", [0.0, 1.0])
def test_union_bound_rejects_bad_c(c):
    with pytest.raises(ValueError):
        union_bound_estimate(derive_params(0.5, 16, 40), c)


# --- build_host ---

def test_build_host_on_desk_instance(desk_params):
    host, report = build_host(desk_params, Seed(2024), mode=StarMode.EXHAUSTIVE)
    assert report.vertices == 8
    assert report.edges == report.g0_edges * 4
    assert average_degree(host.graph) == 2 * average_degree(host.base)
    assert report.edge_check.passed
    assert report.verdict.vacuous
    assert not report.vertex_bound_holds


def test_build_host_ignores_the_stream_id(desk_params):
    first, _ = build_host(desk_params, Seed(2024, 0), mode=StarMode.EXHAUSTIVE)
    second, _ = build_host(desk_params, Seed(2024, 9), mode=StarMode.EXHAUSTIVE)
    assert first.graph == second.graph


def test_build_host_blows_up_by_r(mocker):
    params = derive_params(0.5, 16, 100)
    g0 = sample_gnp(16, params.p, Seed(3))
    verdict = StarVerdict(StarMode.SAMPLED, True, Fraction(1), vacuous=True)
    mocker.patch(
        "harness.host.construct_g0",
        return_value=G0Construction(g0, verdict, check_edges(g0, params), 1),
    )

    host, report = build_host(params, Seed(0))

    assert params.r == 5
    assert report.vertices == 80
    assert report.edges == g0.edge_count * 25
    assert average_degree(host.graph) == 5 * average_degree(g0)
    expected = 5 * average_degree(g0)
    assert report.average_degree == f"{expected.numerator}/{expected.denominator}"


def test_build_host_propagates_construction_failure(mocker, desk_params):
    mocker.patch("harness.host.construct_g0", side_effect=RetriesExhaustedError("no luck", attempts=2))
    with pytest.raises(RetriesExhaustedError):
        build_host(desk_params, Seed(0))


# --- estimate_minor_probability ---

def test_wilson_interval_edges():
    low, high = wilson_interval(0, 10)
    assert low == pytest.approx(0.0, abs=1e-12)
    assert 0 < high < 0.35
    low, high = wilson_interval(5, 10)
    assert low == pytest.approx(1 - high)
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


def test_feasibility_guard_refuses_large_hosts():
    params = derive_params(0.5, 16, 100)
    with pytest.raises(FeasibilityError):
        estimate_minor_probability(params, 3, Seed(0))


def test_k_t_is_drawn_when_t_is_d_plus_one():
    params = derive_params(0.5, 4, 5)
    assert all(trial_graph(params, Seed(1), i) == GraphCatalogue.complete(5) for i in range(5))


def test_h_larger_than_host_never_is_a_minor():
    params = derive_params(0.5, 4, 10)
    estimate = estimate_minor_probability(params, 5, Seed(1), mode=StarMode.EXHAUSTIVE)
    assert estimate.no_minor == 5
    assert estimate.model == 0
    assert estimate.interval[0] == pytest.approx(0.0, abs=1e-12)
    assert all(o.outcome is Outcome.NO_MINOR for o in estimate.outcomes)


def test_estimate_agrees_with_naive_oracle(desk_params, desk_host):
    seed = Seed(2024)
    estimate = estimate_minor_probability(desk_params, 10, seed, host=desk_host)
    assert estimate.inconclusive == 0
    for outcome in estimate.outcomes:
        h = trial_graph(desk_params, seed, outcome.index)
        assert (outcome.outcome is Outcome.MODEL) == naive_minor(h, desk_host.graph)


def test_inconclusive_trials_are_counted_separately(desk_params, desk_host):
    estimate = estimate_minor_probability(desk_params, 4, Seed(1), SearchBudget(node_limit=1), host=desk_host)
    assert estimate.model + estimate.no_minor + estimate.inconclusive == 4
    assert estimate.summary()["inconclusive_fraction"] == estimate.inconclusive / 4


# --- Config ---

def test_config_missing_t_names_the_field():
    with pytest.raises(ConfigError) as excinfo:
        ExperimentConfig.from_dict({"epsilon": 0.5, "d": 4})
    assert excinfo.value.field == "t"


@pytest.mark.parametrize(
    "extra, field",
    [
        ({"ell": 2}, "ell"),
        ({"gamma": 1}, "gamma"),
        ({"d": "4"}, "d"),
        ({"trials": True}, "trials"),
        ({"mode": "psychic"}, "mode"),
        ({"trials": 0}, "trials"),
        ({"time_limit": -1}, "time_limit"),
    ],
)
def test_config_rejects_bad_keys(extra, field):
    with pytest.raises(ConfigError) as excinfo:
        ExperimentConfig.from_dict({**DESK_CONFIG, **extra})
    assert excinfo.value.field == field


def test_config_coerces_integer_floats():
    config = ExperimentConfig.from_dict({**DESK_CONFIG, "epsilon": 1, "time_limit": 5})
    assert isinstance(config.epsilon, float)
    assert config.time_limit == 5.0


def test_load_config_from_yaml(fs):
    fs.create_file("/experiments/desk.yaml", contents="epsilon: 0.5\nd: 4\nt: 8\nmode: exhaustive\n")
    config = load_config(Path("/experiments/desk.yaml"))
    assert config.d == 4
    assert config.mode == "exhaustive"


def test_load_config_rejects_broken_yaml(fs):
    fs.create_file("/experiments/broken.yaml", contents="epsilon: [0.5\n")
    with pytest.raises(ConfigError):
        load_config(Path("/experiments/broken.yaml"))


def test_checked_in_configs_are_valid():
    root = Path(__file__).parent.parent / "config" / "experiments"
    for path in root.glob("*.yaml"):
        load_config(path)


# --- Records ---

def test_records_round_trip_on_fake_fs(fs):
    record = ExperimentRecord(version="0.1.0", config=dict(DESK_CONFIG), seed={"value": 1, "stream_id": 0})
    record.add_failure("estimate", FeasibilityError("too big"))
    append_record(Path("/results/run.jsonl"), record)
    append_record(Path("/results/run.jsonl"), record)
    loaded = read_records(Path("/results/run.jsonl"))
    assert len(loaded) == 2
    assert loaded[0].status == "failed"
    assert loaded[0].failures == [{"stage": "estimate", "error_type": "FeasibilityError", "message": "too big"}]


def test_read_records_reports_bad_lines(fs):
    fs.create_file("/results/bad.jsonl", contents='{"version": "0.1.0"}\n')
    with pytest.raises(ValueError):
        read_records(Path("/results/bad.jsonl"))


# --- run_experiment ---

def test_run_experiment_writes_a_complete_record(tmp_path):
    out = tmp_path / "records.jsonl"
    record = run_experiment(ExperimentConfig.from_dict(DESK_CONFIG), out)
    assert record.status == "ok"
    assert record.params["r"] == 2
    assert record.host_stats["vertices"] == 8
    assert len(record.trials) == 6
    assert record.estimate["trials"] == 6
    assert set(record.bounds) == {"union", "compatibility"}
    assert record.seed["g0"] == {"value": 2024, "stream_id": 0}
    assert read_records(out)[0].replayable() == record.replayable()


def test_run_experiment_is_replayable(tmp_path):
    out = tmp_path / "records.jsonl"
    config = ExperimentConfig.from_dict(DESK_CONFIG)
    run_experiment(config, out)
    run_experiment(config, out)
    first, second = read_records(out)
    assert first.replayable() == second.replayable()
    assert first.timestamps != {} and "finished" in first.timestamps
    assert replay_host_stats(first) == first.host_stats


@pytest.mark.slow
@pytest.mark.parametrize("t", [6, 8, 10])
def test_desk_sweep_replays_and_reports_the_union_bound(tmp_path, t):
    out = tmp_path / "sweep.jsonl"
    config = ExperimentConfig.from_dict({**DESK_CONFIG, "t": t, "trials": 50, "node_limit": 10**6})
    run_experiment(config, out)
    run_experiment(config, out)
    first, second = read_records(out)
    assert first.status == "ok"
    assert first.replayable() == second.replayable()
    assert first.estimate["trials"] == 50
    assert first.estimate["inconclusive"] == 0

    p = first.params
    expected = t * p["ell"] * math.log(16) - 0.25 * t * 4 ** (1 - p["alpha"]) / 400
    assert first.bounds["union"]["log_bound"] == pytest.approx(expected, rel=1e-12)


@pytest.mark.slow
def test_model_fraction_does_not_grow_with_t_on_a_fixed_host(desk_host):
    fractions = []
    for t in (6, 7, 8, 9):
        estimate = estimate_minor_probability(derive_params(0.5, 4, t), 50, Seed(2024), host=desk_host)
        assert estimate.inconclusive == 0
        fractions.append(estimate.model_fraction)
    assert fractions[-1] == 0.0
    for smaller, larger in zip(fractions, fractions[1:]):
        slack = 2 * math.sqrt((smaller * (1 - smaller) + larger * (1 - larger)) / 50)
        assert larger <= smaller + slack, fractions


def test_stream_id_changes_trials_but_not_the_host(tmp_path, desk_params):
    out = tmp_path / "records.jsonl"
    a = run_experiment(ExperimentConfig.from_dict({**DESK_CONFIG, "stream_id": 0}), out)
    b = run_experiment(ExperimentConfig.from_dict({**DESK_CONFIG, "stream_id": 1}), out)
    assert a.g0 == b.g0
    assert a.host_stats == b.host_stats
    trial_graphs = [
        [trial_graph(desk_params, Seed(2024, stream), i) for i in range(6)] for stream in (0, 1)
    ]
    assert trial_graphs[0] != trial_graphs[1]


def test_command_line_seed_overrides_config(tmp_path):
    record = run_experiment(ExperimentConfig.from_dict(DESK_CONFIG), tmp_path / "r.jsonl", seed=7)
    assert record.seed["value"] == 7


def test_failed_host_stage_is_recorded(mocker, tmp_path):
    mocker.patch("harness.experiment.build_host", side_effect=RetriesExhaustedError("no G0", attempts=50))
    out = tmp_path / "records.jsonl"
    record = run_experiment(ExperimentConfig.from_dict(DESK_CONFIG), out)
    assert record.status == "failed"
    assert [f["stage"] for f in record.failures] == ["build_host"]
    assert record.estimate is None
    assert record.bounds is not None
    assert read_records(out)[0].failures[0]["error_type"] == "RetriesExhaustedError"


def test_failed_estimate_stage_is_recorded(mocker, tmp_path):
    mocker.patch("harness.experiment.estimate_minor_probability", side_effect=FeasibilityError("too big"))
    record = run_experiment(ExperimentConfig.from_dict(DESK_CONFIG), tmp_path / "r.jsonl")
    assert [f["stage"] for f in record.failures] == ["estimate"]
    assert record.host_stats is not None


def test_failed_derivation_skips_dependent_stages(tmp_path):
    record = run_experiment(ExperimentConfig.from_dict({**DESK_CONFIG, "t": 4}), tmp_path / "r.jsonl")
    assert [f["stage"] for f in record.failures] == ["derive_params"]
    assert record.params is None
    assert record.host_stats is None
    assert record.bounds is None


# --- CLI ---

def test_cli_lambda_prints_the_constant(capsys, tmp_path):
    out = tmp_path / "lambda.jsonl"
    assert main(["lambda", "--out", str(out)]) == 0
    assert "0.638" in capsys.readouterr().out
    payload = json.loads(out.read_text().splitlines()[0])
    assert payload["command"] == "lambda"


def test_cli_usage_error_exits_with_three():
    with pytest.raises(SystemExit) as excinfo:
        main(["derive-params", "--epsilon", "0.5"])
    assert excinfo.value.code == 3


def test_cli_bad_parameters_exit_with_three():
    assert main(["derive-params", "--epsilon", "1.5", "--d", "16", "--t", "100"]) == 3


@pytest.mark.parametrize(
    "h, g, extra, code",
    [
        ("k5.txt", "petersen.txt", [], 0),
        ("k5.txt", "c4.txt", [], 1),
        ("c4.txt", "k5.txt", ["--node-limit", "1"], 2),
    ],
)
def test_cli_minor_test_exit_codes(h, g, extra, code):
    assert main(["minor-test", str(TEST_DATA / h), str(TEST_DATA / g), *extra]) == code


def test_cli_minor_test_prints_branch_sets(capsys):
    main(["minor-test", str(TEST_DATA / "k5.txt"), str(TEST_DATA / "petersen.txt")])
    captured = capsys.readouterr()
    lines = captured.out.splitlines()
    assert len(lines) == 5
    branch_sets = [[int(v) for v in line.split()] for line in lines]
    assert all(branch == sorted(branch) for branch in branch_sets)
    assert validate_model(MinorModel.of(branch_sets), GraphCatalogue.complete(5), GraphCatalogue.petersen())
    assert "model" in captured.err


def test_cli_count_blobbings_reports_the_good_pair_minimum(tmp_path, capsys):
    g0 = tmp_path / "g0.txt"
    g0.write_text("3 1\n0 1\n")
    out = tmp_path / "blobbings.jsonl"
    args = ["count-blobbings", "--d", "3", "--t", "4", "--r", "2", "--g0", str(g0), "--epsilon", "0.5", "--ell", "1"]
    assert main([*args, "--out", str(out)]) == 0
    assert "min_good_pairs" in capsys.readouterr().out
    payload = json.loads(out.read_text())
    assert payload["count"] == enumerate_blobbings(3, 4, 6, 2).count
    assert payload["good_pairs"]["exhaustive"]
    assert len(payload["good_pairs"]["witness"]) == 4


def test_cli_count_blobbings_needs_epsilon_with_g0(tmp_path):
    g0 = tmp_path / "g0.txt"
    g0.write_text("3 0\n")
    assert main(["count-blobbings", "--d", "3", "--t", "4", "--r", "2", "--g0", str(g0)]) == 3


def test_cli_missing_graph_file_exits_with_three(tmp_path):
    assert main(["minor-test", str(tmp_path / "nope.txt"), str(TEST_DATA / "k5.txt")]) == 3


def test_cli_count_blobbings_over_budget_exits_with_two():
    assert main(["count-blobbings", "--d", "4", "--t", "4", "--r", "2", "--budget", "1000"]) == 2


def test_cli_g_count(capsys):
    assert main(["g-count", "--d", "2", "--t", "2", "--n", "2"]) == 0
    assert " 4 " in capsys.readouterr().out


def test_cli_blowup_writes_the_host(tmp_path):
    output = tmp_path / "host.txt"
    assert main(["blowup", str(TEST_DATA / "c4.txt"), "--r", "2", "--output", str(output)]) == 0
    assert output.read_text().splitlines()[0] == "8 16"


def test_cli_run_with_invalid_config_exits_with_three(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("epsilon: 0.5\nd: 4\n")
    assert main(["run", str(path)]) == 3


def test_cli_bounds_emits_grid(tmp_path):
    out = tmp_path / "bounds.jsonl"
    assert main(["bounds", "--epsilon", "0.5", "--d", "16", "--t", "40", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["grid"]
    assert payload["union"]["bound"] > 1
