"""One covered worker among nine: which schemes still work?

A worker is "covered" when the reward is worth the effort (wby >= a + wct).
Here only worker 0 is covered; the other eight earn a token 0.1 and keep
cheating no matter what.  Eventual correctness then hinges on the scheme
pinning the eight cheaters' reputations below the single honest worker's.
"""
import numpy as np

from repsim import run_scenario

for scheme in ("type1", "type2", "type3"):
    summary, _ = run_scenario(f"cov1of9-{scheme}-tau0.5")
    conv = [c for c in summary.convergence_rounds if c is not None]
    tail = float(np.mean(summary.correct_rate[-500:]))
    covered_pc = summary.p_c[0, -1]
    others_pc = summary.p_c[1:, -1].mean()
    print(f"{scheme}: converged {len(conv)}/10, "
          f"trailing correct-rate {tail:.3f}, "
          f"final p_c covered {covered_pc:.2f} / uncovered {others_pc:.2f}")

print()
print("the linear ratio (type 1) cannot push a cheater's reputation low")
print("enough: eight lukewarm cheaters keep outvoting one honest worker.")
print("the exponential and error-rate schemes zero the cheaters out.")
