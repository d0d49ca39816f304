"""Information-theoretic and thermodynamic accounting.

Entropies and information gains are measured in nats throughout, and the
thermodynamic minimum for an observation that gains ``I`` nats is
``kBT * I``. Entries priced below that bound (possible under the fixed-cost
model) are recorded with a ``sub_landauer`` flag rather than rejected, so
sub-thermodynamic configurations remain explorable but never silent.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

from .core import EnergyModel, GaussianBelief, NonMonotonicTime, NonPositivePrecision

__all__ = [
    "LedgerEntry",
    "EnergyLedger",
    "gaussian_entropy",
    "info_gain",
    "landauer_min_energy",
    "observation_cost",
    "windowed_power",
]

_HALF_LN_2PIE = 0.5 * math.log(2.0 * math.pi * math.e)


def gaussian_entropy(belief: GaussianBelief) -> float:
    """Differential entropy of the belief in nats: (1/2) ln(2 pi e) - (1/2) ln(precision)."""

    return _HALF_LN_2PIE - 0.5 * math.log(belief.precision)


def info_gain(tau: float, tau_d: float) -> float:
    """Information gained (nats) by an observation of precision ``tau_d`` on a prior of precision ``tau``.

    Equals the entropy drop of the conjugate update, (1/2) ln(1 + tau_d/tau),
    and is strictly positive for positive arguments.
    """

    if tau <= 0:
        raise NonPositivePrecision(f"tau must be > 0, got {tau!r}")
    if tau_d <= 0:
        raise NonPositivePrecision(f"tau_d must be > 0, got {tau_d!r}")
    return 0.5 * math.log1p(tau_d / tau)


def landauer_min_energy(info_nats: float, kBT: float = 1.0) -> float:
    """Minimum energy required to acquire ``info_nats`` nats of information."""

    return kBT * info_nats


def observation_cost(model: EnergyModel, tau_before: float, tau_d: float) -> tuple[float, float]:
    """Price one observation, returning ``(energy, info)``.

    ``info`` is the information gained at the pre-update precision; energy is
    its thermodynamic minimum under ``landauer_min``, or the flat
    ``fixed_cost_value`` under ``fixed_cost``.
    """

    info = info_gain(tau_before, tau_d)
    if model.kind == "fixed_cost":
        return model.fixed_cost_value, info
    return landauer_min_energy(info, model.kBT), info


@dataclass(frozen=True)
class LedgerEntry:
    time: float
    energy: float
    info_gain: float
    entropy_reduction: float  # equals info_gain for Gaussian updates
    sub_landauer: bool


class EnergyLedger:
    """Append-only, time-ordered record of per-observation energy charges.

    Cumulative energy and information always equal the sums over entries.
    ``kBT`` is kept so each charge can be checked against its thermodynamic
    minimum at entry time.
    """

    def __init__(self, kBT: float = 1.0):
        self.kBT = kBT
        self.entries: list[LedgerEntry] = []
        self.cumulative_energy = 0.0
        self.cumulative_info = 0.0
        self._times: list[float] = []
        self._cumulative: list[float] = []  # running energy totals, aligned with entries

    def __len__(self) -> int:
        return len(self.entries)

    def charge(self, t: float, energy: float, info: float) -> "EnergyLedger":
        """Append a charge at time ``t``; times must be non-decreasing."""

        if self._times and t < self._times[-1]:
            raise NonMonotonicTime(
                f"charge at t={t!r} precedes last entry at t={self._times[-1]!r}"
            )
        entry = LedgerEntry(
            time=t,
            energy=energy,
            info_gain=info,
            entropy_reduction=info,
            sub_landauer=energy < self.kBT * info,
        )
        self.entries.append(entry)
        self.cumulative_energy += energy
        self.cumulative_info += info
        self._times.append(t)
        self._cumulative.append(self.cumulative_energy)
        return self

    def windowed_power(self, t_end: float, window: float) -> float:
        """Average power over the half-open window (t_end - window, t_end]."""

        if window <= 0:
            raise ValueError(f"window must be > 0, got {window!r}")
        hi = bisect_right(self._times, t_end)
        lo = bisect_right(self._times, t_end - window)
        if hi == lo:
            return 0.0
        energy = self._cumulative[hi - 1] - (self._cumulative[lo - 1] if lo else 0.0)
        return energy / window

    def energy_up_to(self, t: float) -> float:
        """Cumulative energy of all entries with time <= t."""

        hi = bisect_right(self._times, t)
        return self._cumulative[hi - 1] if hi else 0.0

    def to_csv(self) -> str:
        """Render as CSV: time, energy, info_gain, cumulative_energy, sub_landauer."""

        from .io import format_float  # local import to avoid a cycle at module load

        lines = ["time,energy,info_gain,cumulative_energy,sub_landauer"]
        for entry, cum in zip(self.entries, self._cumulative):
            lines.append(
                ",".join(
                    (
                        format_float(entry.time),
                        format_float(entry.energy),
                        format_float(entry.info_gain),
                        format_float(cum),
                        "true" if entry.sub_landauer else "false",
                    )
                )
            )
        return "\n".join(lines) + "\n"


def windowed_power(ledger: EnergyLedger, t_end: float, window: float) -> float:
    """Module-level alias for :meth:`EnergyLedger.windowed_power`."""

    return ledger.windowed_power(t_end, window)
