"""Pure belief-state evolution.

Between observations the belief's precision decays exponentially at the
dissipation rate while the mean stays put; at an observation the belief
absorbs the datum through the conjugate Gaussian update. Crystallization is
the variance dropping below the threshold, after which the system reports
its mean and halts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import GaussianBelief, NegativeDt, NonPositiveObsPrecision, Observation

__all__ = [
    "PRECISION_FLOOR",
    "CrystallizationOutcome",
    "propagate",
    "bayes_update",
    "is_crystallized",
    "check_crystallization",
]

# Lower clamp on precision: keeps the positivity invariant on pathological
# horizons without changing any realistic result. Engine traces flag runs
# that hit it.
PRECISION_FLOOR = 1e-300


@dataclass(frozen=True)
class CrystallizationOutcome:
    """Result of a crystallization check; detail fields are None unless it fired."""

    crystallized: bool
    time: float | None = None
    output_mean: float | None = None
    accurate: bool | None = None


def propagate(belief: GaussianBelief, dt: float, gamma: float) -> GaussianBelief:
    """Evolve a belief through ``dt`` time units of pure dissipation.

    The mean is unchanged; precision is multiplied by exp(-gamma * dt),
    clamped below at PRECISION_FLOOR. dt = 0 returns the input unchanged.
    """

    if dt < 0:
        raise NegativeDt(f"dt must be >= 0, got {dt!r}")
    if dt == 0:
        return belief
    decayed = belief.precision * math.exp(-gamma * dt)
    return GaussianBelief(mean=belief.mean, precision=max(decayed, PRECISION_FLOOR))


def bayes_update(belief: GaussianBelief, obs: Observation) -> GaussianBelief:
    """Conjugate update of a Gaussian belief by a Gaussian-likelihood observation.

    Exact closed form: precisions add, and the new mean is the
    precision-weighted average of the prior mean and the observed value.
    """

    if obs.obs_precision <= 0:
        raise NonPositiveObsPrecision(f"obs_precision must be > 0, got {obs.obs_precision!r}")
    precision = belief.precision + obs.obs_precision
    mean = (belief.precision * belief.mean + obs.obs_precision * obs.value) / precision
    return GaussianBelief(mean=mean, precision=precision)


def is_crystallized(belief: GaussianBelief, epsilon: float) -> bool:
    """True iff the belief variance is strictly below the threshold."""

    return 1.0 / belief.precision < epsilon


def check_crystallization(
    belief: GaussianBelief,
    t: float,
    epsilon: float,
    target_mean_at_t: float,
    delta: float,
) -> CrystallizationOutcome:
    """Evaluate the halting condition and, when it fires, the accuracy of the output.

    ``accurate`` records whether the reported mean lies within ``delta`` of
    the target mean at the crystallization instant.
    """

    if not is_crystallized(belief, epsilon):
        return CrystallizationOutcome(crystallized=False)
    return CrystallizationOutcome(
        crystallized=True,
        time=t,
        output_mean=belief.mean,
        accurate=abs(belief.mean - target_mean_at_t) < delta,
    )
