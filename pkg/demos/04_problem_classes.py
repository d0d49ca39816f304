#!/usr/bin/env python3
"""Problem classes: attainable, maintainable, crystallizable.

Three scenarios, three different verdicts. A static target under a dense
flux crystallizes (and is therefore attainable). A drifting target can be
tracked forever within the divergence budget, but never crystallizes: the
target never stands still long enough. A starved flux achieves nothing.
"""

import beds
from beds.scenarios import dissipation_only, drifting_tracking, static_crystallizing


def show(title: str, scenario) -> None:
    trace = beds.run(scenario)
    verdict = beds.classify_run(trace, scenario.problem)
    print(f"\n== {title} ==")
    print(f"attainable={verdict.attainable}  maintainable={verdict.maintainable}"
          f"  crystallizable={verdict.crystallizable}")
    ev = verdict.evidence
    print(f"final divergence to target: {ev.final_kl:.4f} nats (delta={scenario.problem.delta})")
    print(f"peak windowed power after burn-in: {ev.max_windowed_power_after_t0:.4f}"
          f" (p_max={scenario.problem.p_max})")
    if ev.crystallized:
        print(f"crystallized at t={ev.crystallization_time:.3f},"
              f" output accurate: {ev.crystallization_accurate}")
    else:
        print("never crystallized")


show("static target, dense noisy flux", static_crystallizing())
show("drifting target, dense periodic flux", drifting_tracking())

starved = beds.scenario_from_dict(
    {
        **beds.scenario_to_dict(dissipation_only()),
        "problem": {
            "target": {"kind": "static", "theta0": 0.0, "velocity": 0.0, "target_variance": 0.01},
            "delta": 0.01,
            "p_max": 1.0,
            "t0": 1.0,
        },
    }
)
show("no observations at all, tight accuracy demand", starved)

print("\nCrystallizable always implies attainable: a crystallized run stops")
print("spending energy, so its total cost is finite by construction.")
