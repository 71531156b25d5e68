"""Trace metrics: reputation ratio, convergence detection, summaries."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


def reputation_ratio(outcome) -> float:
    """Signed mean reputation: sum of rho_i * (+1 honest / -1 cheat) over n."""
    n = len(outcome.reputations_after)
    return sum(r * (-1.0 if i in outcome.cheater_set else 1.0)
               for i, r in enumerate(outcome.reputations_after)) / n


def detect_convergence(trace: Sequence, p_a_min: float, window: int = 100,
                       p_a_slack: float = 0.005, start: int = 0) -> Optional[int]:
    """Earliest round r >= start opening a full window of correct, cheap rounds.

    A round qualifies when the accepted value is correct and the audit
    probability sits within `p_a_slack` of its floor.  Returns None when no
    window fits before the end of the trace.
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    ok = [o.accepted_correct and o.p_a_after <= p_a_min + p_a_slack for o in trace]
    best = None
    run = 0
    for r in range(len(ok) - 1, start - 1, -1):
        run = run + 1 if ok[r] else 0
        if run >= window:
            best = r
    return best


@dataclass
class ScenarioSummary:
    """Seed-averaged per-round series plus per-seed convergence diagnostics."""

    name: str
    seeds: tuple
    p_a: np.ndarray                 # (horizon,)
    audit_rate: np.ndarray
    correct_rate: np.ndarray
    reputation_ratio: np.ndarray
    p_c: np.ndarray                 # (n, horizon)
    rho: np.ndarray                 # (n, horizon)
    convergence_rounds: tuple       # per-seed Optional[int]
    total_audits: float             # mean over seeds
    total_reward: float             # mean gross reward paid per run


def gross_reward_paid(outcome, wbys) -> float:
    """Reward the master pays out this round (pre-cost, never negative)."""
    if outcome.audited:
        earners = set(range(len(wbys))) - set(outcome.cheater_set)
    else:
        earners = outcome.majority_set
    return sum(wbys[i] for i in earners)


def summarize(name: str, config, traces: dict) -> ScenarioSummary:
    """Arithmetic per-round means of the per-seed traces."""
    seeds = tuple(traces)
    horizon = config.horizon
    n = config.n
    wbys = [w.wby for w in config.workers]
    p_a = np.zeros(horizon)
    audit = np.zeros(horizon)
    correct = np.zeros(horizon)
    ratio = np.zeros(horizon)
    p_c = np.zeros((n, horizon))
    rho = np.zeros((n, horizon))
    conv = []
    audits_total = 0.0
    reward_total = 0.0
    for seed in seeds:
        trace = traces[seed]
        for r, o in enumerate(trace):
            p_a[r] += o.p_a_after
            audit[r] += 1.0 if o.audited else 0.0
            correct[r] += 1.0 if o.accepted_correct else 0.0
            ratio[r] += reputation_ratio(o)
            for i in range(n):
                p_c[i, r] += o.p_c_after[i]
                rho[i, r] += o.reputations_after[i]
            audits_total += 1.0 if o.audited else 0.0
            reward_total += gross_reward_paid(o, wbys)
        conv.append(detect_convergence(trace, config.p_a_min))
    k = len(seeds)
    return ScenarioSummary(name=name, seeds=seeds, p_a=p_a / k,
                           audit_rate=audit / k, correct_rate=correct / k,
                           reputation_ratio=ratio / k, p_c=p_c / k, rho=rho / k,
                           convergence_rounds=tuple(conv),
                           total_audits=audits_total / k,
                           total_reward=reward_total / k)
