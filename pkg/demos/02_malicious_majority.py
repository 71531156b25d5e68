"""Five malicious workers against four rational ones.

With a reputation scheme the master learns to distrust the malicious camp:
after a handful of audits their aggregate weight collapses and the four
honest workers carry every vote.  Without reputation (constant weights) the
majority is simply wrong forever, and the only fix the master has is to
audit in essentially every round.
"""
import numpy as np

from repsim import run_scenario

for scheme in ("type1", "type2", "type3", "none"):
    summary, _ = run_scenario(f"mal5-rat4-{scheme}")
    conv = [c for c in summary.convergence_rounds if c is not None]
    tail_pa = float(np.mean(summary.p_a[900:]))
    tail_correct = float(np.mean(summary.correct_rate[900:]))
    line = (f"{scheme:5s}  converged {len(conv)}/10"
            f"  tail p_a {tail_pa:5.2f}"
            f"  tail correct-rate {tail_correct:5.2f}")
    if conv:
        line += f"  (median convergence round {int(np.median(conv))})"
    print(line)

print()
print("'none' never converges cheaply: the master is forced to keep p_a")
print("near 1, paying an audit every round to stay correct.")
