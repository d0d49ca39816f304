#!/usr/bin/env python3
"""Steady-state power laws: closed forms against long stochastic runs.

Holding precision tau* against dissipation gamma needs observations at rate
gamma * tau* / tau_d; with thermodynamic pricing the minimum power is that
rate times kBT/2 * ln(1 + tau_d/tau*), which flattens to gamma * kBT / 2
when observations are small. With flat per-observation pricing, power is
proportional to the held precision: halving the uncertainty (variance)
costs four times the power.
"""

import numpy as np

import beds
from beds.scenarios import steady_state

print("-- closed forms at gamma=0.1, tau*=100, tau_d=10, kBT=1 --")
prediction = beds.steady_state_prediction(0.1, 100.0, 10.0, 1.0)
print(f"required observation rate: {prediction.lambda_required:.3f} /time")
print(f"minimum energy per observation: {prediction.e_obs_min:.6f}")
print(f"exact minimum power: {prediction.p_min_exact:.6f}")
print(f"small-observation limit gamma*kBT/2: {prediction.p_min_linear:.6f}")

print("\n-- does simulation hold the predicted precision? (5 seeds) --")
held = []
for seed in range(5):
    trace = beds.run(steady_state(gamma=0.1, tau_star=100.0, tau_d=10.0, seed=seed))
    held.append(trace.summary.mean_precision_after_t0)
print(f"time-averaged precision per seed: {np.round(held, 2)}")
print(f"mean {np.mean(held):.2f} vs target 100")

print("\n-- quadrupling: fixed cost 1 per observation, tau* = 25 vs 100 (3 seeds) --")
powers = {}
for tau_star in (25.0, 100.0):
    rate = beds.required_rate(0.1, tau_star, 10.0)
    raw = beds.scenario_to_dict(steady_state(gamma=0.1, tau_star=tau_star, tau_d=10.0))
    raw["flux_spec"]["arrival"]["rate"] = rate
    raw["energy_model"] = {"kind": "fixed_cost", "fixed_cost_value": 1.0, "kBT": 1.0}
    runs = []
    for seed in range(3):
        raw["seed"] = seed
        runs.append(beds.run(beds.scenario_from_dict(raw)).summary.mean_windowed_power_after_t0)
    powers[tau_star] = float(np.mean(runs))
    print(f"tau*={tau_star:5.0f}: predicted power {rate:.3f}, simulated {powers[tau_star]:.3f}")
print(f"simulated power ratio: {powers[100.0] / powers[25.0]:.3f} (prediction: exactly 4)")
