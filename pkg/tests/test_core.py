import json
import math

import pytest

from beds.core import (
    BedsParams,
    EnergyModel,
    FluxSpec,
    GaussianBelief,
    Observation,
    PeriodicArrival,
    PoissonArrival,
    ProblemSpec,
    ScheduleArrival,
    Scenario,
    TargetSpec,
    ValidationError,
    scenario_from_dict,
    scenario_from_json,
    scenario_to_dict,
    scenario_to_json,
    scenario_violations,
    validate_scenario,
)
from beds.scenarios import (
    dissipation_only,
    drifting_tracking,
    static_crystallizing,
    steady_state,
)


def make_scenario(**kwargs) -> Scenario:
    base = dict(
        beds=BedsParams(gamma=0.5, epsilon=1e-4, initial_belief=GaussianBelief(0.0, 1.0)),
        flux_spec=FluxSpec(arrival=PoissonArrival(rate=2.0), obs_precision=1.0, noise="noisy"),
        problem=ProblemSpec(
            target=TargetSpec(kind="static", theta0=1.0, velocity=0.0, target_variance=0.5),
            delta=0.1,
            p_max=1.0,
            t0=1.0,
        ),
        energy_model=EnergyModel(kind="landauer_min", fixed_cost_value=0.0, kBT=1.0),
        horizon=10.0,
        sample_dt=0.1,
        seed=7,
    )
    base.update(kwargs)
    return Scenario(**base)


def test_valid_scenario_passes_and_is_identity():
    scenario = make_scenario()
    assert validate_scenario(scenario) is scenario


def test_validation_is_idempotent():
    scenario = make_scenario()
    once = validate_scenario(scenario)
    assert validate_scenario(once) is once


@pytest.mark.parametrize(
    "bad, field",
    [
        (dict(beds=BedsParams(gamma=0.0, epsilon=1e-4, initial_belief=GaussianBelief(0.0, 1.0))), "beds.gamma"),
        (dict(beds=BedsParams(gamma=0.5, epsilon=0.0, initial_belief=GaussianBelief(0.0, 1.0))), "beds.epsilon"),
        (dict(beds=BedsParams(gamma=0.5, epsilon=1e-4, initial_belief=GaussianBelief(0.0, -1.0))), "beds.initial_belief.precision"),
        (dict(flux_spec=FluxSpec(arrival=PoissonArrival(rate=0.0), obs_precision=1.0, noise="noisy")), "flux_spec.arrival.rate"),
        (dict(flux_spec=FluxSpec(arrival=PoissonArrival(rate=1.0), obs_precision=0.0, noise="noisy")), "flux_spec.obs_precision"),
        (dict(horizon=-1.0), "horizon"),
    ],
)
def test_non_positive_parameters_are_reported(bad, field):
    with pytest.raises(ValidationError) as excinfo:
        validate_scenario(make_scenario(**bad))
    assert any(v.code == "non_positive_parameter" and v.field == field for v in excinfo.value.violations)


def test_static_target_with_velocity_is_inconsistent():
    problem = ProblemSpec(
        target=TargetSpec(kind="static", theta0=0.0, velocity=1.0, target_variance=0.5),
        delta=0.1,
        p_max=1.0,
        t0=0.0,
    )
    violations = scenario_violations(make_scenario(problem=problem))
    assert [v.code for v in violations] == ["inconsistent_target"]


def test_degenerate_horizon():
    violations = scenario_violations(make_scenario(sample_dt=10.0))
    assert [v.code for v in violations] == ["degenerate_horizon"]
    violations = scenario_violations(make_scenario(sample_dt=11.0))
    assert [v.code for v in violations] == ["degenerate_horizon"]


def test_all_violations_are_collected_not_just_first():
    scenario = make_scenario(
        beds=BedsParams(gamma=0.0, epsilon=0.0, initial_belief=GaussianBelief(0.0, 1.0)),
        sample_dt=10.0,
    )
    violations = scenario_violations(scenario)
    fields = {v.field for v in violations}
    assert {"beds.gamma", "beds.epsilon", "sample_dt"} <= fields
    assert len(violations) >= 3


def test_unknown_kinds_are_invalid():
    scenario = make_scenario(
        energy_model=EnergyModel(kind="free_lunch", fixed_cost_value=0.0, kBT=1.0),
        flux_spec=FluxSpec(arrival=PoissonArrival(rate=1.0), obs_precision=1.0, noise="maybe"),
    )
    codes = {(v.code, v.field) for v in scenario_violations(scenario)}
    assert ("invalid_value", "energy_model.kind") in codes
    assert ("invalid_value", "flux_spec.noise") in codes


def test_fixed_cost_requires_positive_value():
    scenario = make_scenario(energy_model=EnergyModel(kind="fixed_cost", fixed_cost_value=0.0, kBT=1.0))
    assert any(v.field == "energy_model.fixed_cost_value" for v in scenario_violations(scenario))


def test_seed_must_fit_64_bits():
    assert any(v.field == "seed" for v in scenario_violations(make_scenario(seed=2**64)))
    assert any(v.field == "seed" for v in scenario_violations(make_scenario(seed=-1)))
    assert scenario_violations(make_scenario(seed=2**64 - 1)) == []


def test_schedule_times_must_be_non_decreasing():
    flux = FluxSpec(arrival=ScheduleArrival(times=(2.0, 1.0)), obs_precision=1.0, noise="exact")
    assert any(v.field == "flux_spec.arrival.times" for v in scenario_violations(make_scenario(flux_spec=flux)))


@pytest.mark.parametrize("value", [math.nan, math.inf, -math.inf])
def test_constructors_reject_non_finite_reals(value):
    with pytest.raises(ValueError):
        GaussianBelief(mean=value, precision=1.0)
    with pytest.raises(ValueError):
        GaussianBelief(mean=0.0, precision=value)
    with pytest.raises(ValueError):
        Observation(time=0.0, value=value, obs_precision=1.0)
    with pytest.raises(ValueError):
        BedsParams(gamma=value, epsilon=1.0, initial_belief=GaussianBelief(0.0, 1.0))
    with pytest.raises(ValueError):
        TargetSpec(kind="static", theta0=0.0, velocity=0.0, target_variance=value)
    with pytest.raises(ValueError):
        EnergyModel(kind="landauer_min", fixed_cost_value=0.0, kBT=value)
    with pytest.raises(ValueError):
        ProblemSpec(
            target=TargetSpec(kind="static", theta0=0.0, velocity=0.0, target_variance=1.0),
            delta=value,
            p_max=1.0,
        )
    with pytest.raises(ValueError):
        PoissonArrival(rate=value)
    with pytest.raises(ValueError):
        make_scenario(horizon=value)


def test_seed_must_be_integer():
    with pytest.raises(ValueError):
        make_scenario(seed=1.5)


@pytest.mark.parametrize(
    "builder", [static_crystallizing, drifting_tracking, steady_state]
)
def test_json_round_trip_is_exact(builder):
    scenario = builder()
    restored = scenario_from_json(scenario_to_json(scenario))
    assert restored == scenario
    assert scenario_to_dict(restored) == scenario_to_dict(scenario)


def test_round_trip_preserves_noneven_floats():
    scenario = make_scenario(horizon=10.1, sample_dt=0.012345678901234567)
    assert scenario_from_json(scenario_to_json(scenario)) == scenario


def test_unknown_fields_rejected():
    raw = scenario_to_dict(make_scenario())
    raw["extra"] = 1
    with pytest.raises(ValueError, match="extra"):
        scenario_from_dict(raw)
    raw = scenario_to_dict(make_scenario())
    raw["beds"]["typo"] = 1
    with pytest.raises(ValueError, match="typo"):
        scenario_from_dict(raw)


def test_missing_fields_rejected():
    raw = scenario_to_dict(make_scenario())
    del raw["problem"]["delta"]
    with pytest.raises(ValueError, match="delta"):
        scenario_from_dict(raw)


def test_arrival_variants_round_trip():
    for arrival in (PoissonArrival(2.0), PeriodicArrival(0.5), ScheduleArrival((0.5, 1.0, 1.0))):
        scenario = make_scenario(
            flux_spec=FluxSpec(arrival=arrival, obs_precision=1.0, noise="exact")
        )
        assert scenario_from_json(scenario_to_json(scenario)).flux_spec.arrival == arrival


def test_shipped_scenario_files_match_builders():
    import pathlib

    root = pathlib.Path(__file__).resolve().parent.parent / "scenarios"
    for name, builder in [
        ("dissipation_only", dissipation_only),
        ("static_crystallizing", static_crystallizing),
        ("steady_state", steady_state),
        ("drifting_tracking", drifting_tracking),
    ]:
        text = (root / f"{name}.json").read_text()
        assert scenario_from_json(text) == builder()


def test_to_json_emits_sorted_stable_document():
    scenario = make_scenario()
    first = scenario_to_json(scenario)
    second = scenario_to_json(scenario)
    assert first == second
    assert json.loads(first)["seed"] == 7
