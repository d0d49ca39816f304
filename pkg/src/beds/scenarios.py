"""Canonical example scenarios.

These builders back the JSON files shipped under scenarios/ and the
self-verification suite; tests pin their behavior, so treat parameter
changes as interface changes.
"""

from __future__ import annotations

from .analysis import required_rate
from .core import (
    BedsParams,
    EnergyModel,
    FluxSpec,
    GaussianBelief,
    PeriodicArrival,
    PoissonArrival,
    ProblemSpec,
    ScheduleArrival,
    Scenario,
    TargetSpec,
)

__all__ = [
    "dissipation_only",
    "static_crystallizing",
    "steady_state",
    "drifting_tracking",
    "tracking_sweep_base",
]


def dissipation_only(seed: int = 1) -> Scenario:
    """No observations at all: precision decays from 1 to exp(-1) over the horizon."""

    return Scenario(
        beds=BedsParams(gamma=0.1, epsilon=1e-6, initial_belief=GaussianBelief(0.0, 1.0)),
        flux_spec=FluxSpec(arrival=ScheduleArrival(times=()), obs_precision=1.0, noise="exact"),
        problem=ProblemSpec(
            target=TargetSpec(kind="static", theta0=0.0, velocity=0.0, target_variance=1.0),
            delta=0.5,
            p_max=1.0,
            t0=0.0,
        ),
        energy_model=EnergyModel(kind="landauer_min", fixed_cost_value=0.0, kBT=1.0),
        horizon=10.0,
        sample_dt=0.1,
        seed=seed,
    )


def static_crystallizing(seed: int = 20260808) -> Scenario:
    """Static target under a dense noisy flux; crystallizes well before the horizon."""

    return Scenario(
        beds=BedsParams(gamma=0.05, epsilon=1e-4, initial_belief=GaussianBelief(0.0, 1.0)),
        flux_spec=FluxSpec(arrival=PoissonArrival(rate=40.0), obs_precision=50.0, noise="noisy"),
        problem=ProblemSpec(
            target=TargetSpec(kind="static", theta0=5.0, velocity=0.0, target_variance=0.01),
            delta=0.05,
            p_max=5.0,
            t0=2.0,
        ),
        energy_model=EnergyModel(kind="landauer_min", fixed_cost_value=0.0, kBT=1.0),
        horizon=20.0,
        sample_dt=0.05,
        seed=seed,
    )


def steady_state(
    gamma: float = 0.1,
    tau_star: float = 100.0,
    tau_d: float = 10.0,
    seed: int = 42,
) -> Scenario:
    """Poisson flux at exactly the balance rate, for long-run precision checks."""

    return Scenario(
        beds=BedsParams(gamma=gamma, epsilon=1e-6, initial_belief=GaussianBelief(0.0, 1.0)),
        flux_spec=FluxSpec(
            arrival=PoissonArrival(rate=required_rate(gamma, tau_star, tau_d)),
            obs_precision=tau_d,
            noise="noisy",
        ),
        problem=ProblemSpec(
            target=TargetSpec(
                kind="static", theta0=0.0, velocity=0.0, target_variance=1.0 / tau_star
            ),
            delta=5.0,
            p_max=1.0,
            t0=1000.0,
        ),
        energy_model=EnergyModel(kind="landauer_min", fixed_cost_value=0.0, kBT=1.0),
        horizon=10000.0,
        sample_dt=1.0,
        seed=seed,
    )


def drifting_tracking(seed: int = 7) -> Scenario:
    """Drifting target tracked by a dense periodic flux: maintainable, never crystallizes.

    Exact observation values make the run deterministic; the belief settles
    into a constant lag of roughly velocity / gamma behind the target.
    """

    return Scenario(
        beds=BedsParams(gamma=2.0, epsilon=1e-3, initial_belief=GaussianBelief(0.0, 1.0)),
        flux_spec=FluxSpec(arrival=PeriodicArrival(period=0.0625), obs_precision=0.5, noise="exact"),
        problem=ProblemSpec(
            target=TargetSpec(kind="drifting", theta0=0.0, velocity=1.0, target_variance=0.25),
            delta=1.0,
            p_max=2.0,
            t0=5.0,
        ),
        energy_model=EnergyModel(kind="landauer_min", fixed_cost_value=0.0, kBT=1.0),
        horizon=50.0,
        sample_dt=0.05,
        seed=seed,
    )


def tracking_sweep_base(seed: int = 314159) -> Scenario:
    """Base scenario for velocity/rate sweeps over drifting targets.

    Sweeps override problem.target.velocity and flux_spec.arrival.period;
    seeds vary across replicates through the noisy observation values.
    Strong dissipation keeps the tracking lag (velocity / gamma) small
    enough that the divergence threshold discriminates on observation rate.
    """

    return Scenario(
        beds=BedsParams(gamma=4.0, epsilon=1e-6, initial_belief=GaussianBelief(0.0, 1.0)),
        flux_spec=FluxSpec(arrival=PeriodicArrival(period=0.125), obs_precision=4.0, noise="noisy"),
        problem=ProblemSpec(
            target=TargetSpec(kind="drifting", theta0=0.0, velocity=1.0, target_variance=0.25),
            delta=1.8,
            p_max=50.0,
            t0=5.0,
        ),
        energy_model=EnergyModel(kind="landauer_min", fixed_cost_value=0.0, kBT=1.0),
        horizon=40.0,
        sample_dt=0.05,
        seed=seed,
    )
