"""Half the roster defects at round 500.

Nine rational workers converge to honesty; at round 500 workers 0-4 turn
malicious, keeping the reputations they earned.  Whether the system even
notices depends on how the switched camp's aggregate reputation compares
with the loyal camp's at that moment -- and on how fast the scheme tears
the defectors' reputations back down.
"""
import numpy as np

from repsim import detect_convergence, get_scenario, run_scenario

for scheme in ("type1", "type2"):
    name = f"dynamic500-{scheme}"
    cfg = get_scenario(name)
    summary, traces = run_scenario(name)
    reconv = [detect_convergence(traces[s], cfg.p_a_min, start=500)
              for s in sorted(traces)]
    broken = [s for s in sorted(traces)
              if any(not o.accepted_correct for o in traces[s][500:])]
    hit = [c for c in reconv if c is not None]
    print(f"{scheme}: disruption actually seen in {len(broken)}/10 seeds; "
          f"re-convergence {len(hit)}/10, mean round {np.mean(hit):.0f}")
    print(f"   per-seed: {reconv}")

print()
print("a '500' entry means the defectors were already outweighed when they")
print("switched, so the vote never broke.  when it does break, the")
print("exponential scheme recovers after a couple of audits, while the")
print("linear one rides a long p_a spike before settling again.")
