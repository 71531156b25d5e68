"""Nine covered rational workers learn that honesty pays.

Every worker starts fully cheating (p_c = 1).  The master audits half the
time at first, punishes by withholding the reward, and the aspiration-driven
update walks each worker's cheat probability down to zero.  The master then
relaxes auditing to its 1% floor -- eventual correctness at almost no cost.
"""
import numpy as np

from repsim import run_scenario

summary, traces = run_scenario("rational9-type2-pc1")

print("nine rational workers, exponential reputation, p_c(0) = 1")
print(f"seeds: {summary.seeds}")
print()
print("round   mean p_a   mean p_c   correct-rate")
for r in (0, 10, 50, 100, 200, 500, 999):
    print(f"{r:5d}   {summary.p_a[r]:8.3f}   {summary.p_c[:, r].mean():8.3f}"
          f"   {summary.correct_rate[r]:8.2f}")

print()
conv = [c for c in summary.convergence_rounds if c is not None]
print(f"convergence (100 correct rounds with p_a at the floor) in "
      f"{len(conv)}/{len(summary.seeds)} seeds; "
      f"rounds {min(conv)}..{max(conv)}, median {int(np.median(conv))}")
print(f"final audit probability: {summary.p_a[-1]:.3f} "
      f"(floor is 0.01)")
print(f"audits per 1000-round run: {summary.total_audits:.1f}")
