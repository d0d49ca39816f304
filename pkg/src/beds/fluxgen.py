"""Seed-reproducible generation of observation fluxes.

All randomness is drawn from a single seeded uniform stream (PCG64), with
exponential inter-arrivals obtained by inverse transform, -ln(u)/rate, and
Gaussian noise by the Box-Muller map sqrt(-2 ln u1) * cos(2 pi u2). Each
observation consumes a fixed number of uniforms (one per Poisson arrival,
plus two when values are noisy), so identical (spec, target, horizon, seed)
always yields an identical flux.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    EmptySpec,
    FluxSpec,
    NonPositiveHorizon,
    Observation,
    PeriodicArrival,
    PoissonArrival,
    ScheduleArrival,
    TargetSpec,
)
from .io import format_float

__all__ = ["generate_flux", "target_mean_at", "flux_to_csv", "flux_from_csv"]

_TWO_PI = 2.0 * math.pi


def target_mean_at(target: TargetSpec, t: float) -> float:
    """Target mean at time t: theta0 + velocity * t (velocity is 0 for static targets)."""

    return target.theta0 + target.velocity * t


def _uniform_nonzero(rng: np.random.Generator) -> float:
    # 1 - U maps [0, 1) onto (0, 1], keeping log() finite.
    return 1.0 - rng.random()


def _standard_normal(rng: np.random.Generator) -> float:
    u1 = _uniform_nonzero(rng)
    u2 = rng.random()
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(_TWO_PI * u2)


def _arrival_times(spec: FluxSpec, horizon: float, rng: np.random.Generator) -> list[float]:
    arrival = spec.arrival
    if isinstance(arrival, PoissonArrival):
        times = []
        t = 0.0
        while True:
            t += -math.log(_uniform_nonzero(rng)) / arrival.rate
            if t > horizon:
                break
            times.append(t)
        return times
    if isinstance(arrival, PeriodicArrival):
        count = int(math.floor(horizon / arrival.period * (1.0 + 1e-12)))
        return [k * arrival.period for k in range(1, count + 1)]
    if isinstance(arrival, ScheduleArrival):
        return [t for t in arrival.times if 0.0 <= t <= horizon]
    raise EmptySpec(f"flux spec has no usable arrival: {arrival!r}")


def generate_flux(
    spec: FluxSpec, target: TargetSpec, horizon: float, seed: int
) -> list[Observation]:
    """Generate the time-ordered observation stream for one run.

    Values are the target mean at the arrival time, plus (for noisy specs)
    Gaussian noise of variance 1/obs_precision, matching the likelihood
    precision the belief update assumes.
    """

    if spec.arrival is None:
        raise EmptySpec("flux spec has no arrival")
    if horizon <= 0:
        raise NonPositiveHorizon(f"horizon must be > 0, got {horizon!r}")
    rng = np.random.Generator(np.random.PCG64(seed))
    noisy = spec.noise == "noisy"
    noise_scale = 1.0 / math.sqrt(spec.obs_precision) if noisy else 0.0
    observations = []
    for t in _arrival_times(spec, horizon, rng):
        value = target_mean_at(target, t)
        if noisy:
            value += noise_scale * _standard_normal(rng)
        observations.append(Observation(time=t, value=value, obs_precision=spec.obs_precision))
    return observations


def flux_to_csv(observations: list[Observation]) -> str:
    """Render a flux as CSV (time, value, obs_precision) for replay elsewhere."""

    lines = ["time,value,obs_precision"]
    for obs in observations:
        lines.append(
            ",".join((format_float(obs.time), format_float(obs.value), format_float(obs.obs_precision)))
        )
    return "\n".join(lines) + "\n"


def flux_from_csv(text: str) -> list[Observation]:
    """Parse a flux CSV produced by :func:`flux_to_csv` (or any external trace)."""

    lines = [line for line in text.strip().splitlines() if line]
    if not lines or lines[0].replace(" ", "") != "time,value,obs_precision":
        raise ValueError("flux CSV must start with header 'time,value,obs_precision'")
    observations = []
    for line in lines[1:]:
        t, value, tau_d = (float(part) for part in line.split(","))
        observations.append(Observation(time=t, value=value, obs_precision=tau_d))
    return observations
