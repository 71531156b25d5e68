"""Round loop: strategy draws, auditing, weighted majority and learning.

The actual state update lives in `round_successor`, a pure function of
(state, cheater set, audited flag, tie coin).  The stochastic engine and the
exact Markov enumerator both call it, so their successor states agree
bit-for-bit.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from . import reputation as rep
from .model import (FIXED_PC, MasterState, RoundOutcome, SystemConfig,
                    WorkerState, WorkerType, clamp, compute_payoffs)


@dataclass
class SimulationState:
    """Mutable run state; mirrors the chain vector (p_a, aud, p_c*, v*, beta*)."""

    master: MasterState
    workers: list
    round: int = 0
    rng: random.Random = field(default_factory=random.Random)


def decide_strategies(state: SimulationState) -> frozenset:
    """Draw this round's cheater set, one uniform per worker in index order.

    Altruistic and malicious workers hold p_c at 0 and 1, so the same
    Bernoulli draw covers all three types (and keeps the stream length
    independent of the type mix).
    """
    return frozenset(i for i, w in enumerate(state.workers)
                     if state.rng.random() < w.p_c)


def weighted_majority(scheme, workers, aud: int, cheaters: frozenset):
    """Aggregate reputations of the two camps.

    Returns (rho_honest, rho_cheat, tie).  All cheaters return one identical
    wrong value, so the vote is camp-against-camp.
    """
    rho_honest = rep.aggregate(scheme, ((w.v, w.beta) for i, w in enumerate(workers)
                                        if i not in cheaters), aud)
    rho_cheat = rep.aggregate(scheme, ((w.v, w.beta) for i, w in enumerate(workers)
                                       if i in cheaters), aud)
    return rho_honest, rho_cheat, rho_honest == rho_cheat


def master_update(master: MasterState, rho_cheat: float, rho_total: float) -> MasterState:
    """Audit-probability reinforcement; call only after an audit."""
    if rho_total <= 0:
        raise ValueError("total reputation must be positive in an audited round")
    p_a = clamp(master.p_a + master.alpha_m * (rho_cheat / rho_total - master.tau),
                master.p_a_min, 1.0)
    return replace(master, p_a=p_a, aud=master.aud + 1)


def worker_update(worker: WorkerState, payoff: float, cheated: bool,
                  alpha_w: float) -> WorkerState:
    """Aspiration-based probability update; non-rational workers pass through."""
    if worker.wtype is not WorkerType.RATIONAL:
        return worker
    s = -1.0 if cheated else 1.0
    p_c = clamp(worker.p_c - alpha_w * (payoff - worker.aspiration) * s, 0.0, 1.0)
    return replace(worker, p_c=p_c)


def round_successor(config: SystemConfig, master: MasterState, workers,
                    cheaters: frozenset, audited: bool, tie_coin=None):
    """Pure one-round transition.

    `tie_coin` resolves a reputation tie in an unaudited round (True: the
    honest camp wins); it must be provided iff a tie actually occurs.
    Returns (master', workers', outcome) where outcome.round is left at -1
    for the caller to fill in.
    """
    scheme = config.scheme
    n = len(workers)
    wbys = [w.wby for w in workers]

    if audited:
        new_workers = []
        for i, w in enumerate(workers):
            v, beta = rep.audit_update(scheme, w.v, w.beta, truthful=i not in cheaters)
            new_workers.append(replace(w, v=v, beta=beta))
        aud_next = master.aud + 1
        rho_cheat = rep.aggregate(scheme, ((w.v, w.beta) for i, w in enumerate(new_workers)
                                           if i in cheaters), aud_next)
        rho_total = rep.aggregate(scheme, ((w.v, w.beta) for w in new_workers), aud_next)
        new_master = master_update(master, rho_cheat, rho_total)
        majority = frozenset()
        accepted_correct, tie_broken = True, False
    else:
        rho_honest, rho_cheat, tie = weighted_majority(scheme, workers, master.aud, cheaters)
        if tie:
            if tie_coin is None:
                raise ValueError("tie occurred but no tie outcome was supplied")
            honest_win, tie_broken = bool(tie_coin), True
        else:
            honest_win, tie_broken = rho_honest > rho_cheat, False
        all_workers = frozenset(range(n))
        majority = all_workers - cheaters if honest_win else frozenset(cheaters)
        accepted_correct = honest_win
        new_workers = list(workers)
        new_master = master

    payoffs = compute_payoffs(n, cheaters, audited, majority, wbys,
                              config.wpc, config.wct)
    new_workers = [worker_update(w, payoffs[i], cheated=i in cheaters,
                                 alpha_w=config.alpha_w)
                   for i, w in enumerate(new_workers)]

    outcome = RoundOutcome(
        round=-1,
        cheater_set=cheaters,
        audited=audited,
        majority_set=majority,
        tie_broken=tie_broken,
        accepted_correct=accepted_correct,
        payoffs=payoffs,
        reputations_after=tuple(rep.value(scheme, w.v, new_master.aud, w.beta)
                                for w in new_workers),
        p_a_after=new_master.p_a,
        p_c_after=tuple(w.p_c for w in new_workers),
    )
    return new_master, new_workers, outcome


def run_round(state: SimulationState, config: SystemConfig) -> RoundOutcome:
    """Execute one round in place.

    RNG draw order is fixed: n strategy uniforms (ascending index), one
    audit uniform, then one tie uniform only if a tie actually occurs.
    """
    cheaters = decide_strategies(state)
    audited = state.rng.random() < state.master.p_a
    tie_coin = None
    if not audited:
        _, _, tie = weighted_majority(config.scheme, state.workers,
                                      state.master.aud, cheaters)
        if tie:
            tie_coin = state.rng.random() < 0.5
    state.master, state.workers, outcome = round_successor(
        config, state.master, state.workers, cheaters, audited, tie_coin)
    outcome.round = state.round
    state.round += 1
    return outcome


def apply_role_changes(state: SimulationState, config: SystemConfig):
    """Swap worker types scheduled for the current round.

    Validation counts and error rates are retained; only the type (and, for
    the predefined types, the cheat probability) changes.
    """
    for rc in config.role_changes:
        if rc.round == state.round:
            w = state.workers[rc.worker]
            p_c = FIXED_PC.get(rc.new_type, w.p_c)
            state.workers[rc.worker] = replace(w, wtype=rc.new_type, p_c=p_c)


def initial_state(config: SystemConfig, seed: int) -> SimulationState:
    return SimulationState(master=config.initial_master(),
                           workers=config.initial_workers(),
                           round=0, rng=random.Random(seed))


def run_simulation(config: SystemConfig, seed: int) -> list:
    """Full deterministic run: one trace of RoundOutcome per round."""
    config.validate()
    state = initial_state(config, seed)
    trace = []
    for _ in range(config.horizon):
        apply_role_changes(state, config)
        trace.append(run_round(state, config))
    return trace
