import random

import pytest
from hypothesis import given, settings, strategies as st

from repsim import engine
from repsim.model import MasterState, RoleChange, WorkerSpec, WorkerType
from conftest import make_config

TOL = 1e-12


def successor(cfg, cheaters, audited, tie_coin=None):
    return engine.round_successor(cfg, cfg.initial_master(),
                                  cfg.initial_workers(),
                                  frozenset(cheaters), audited, tie_coin)


class TestLearningDeltas:
    """The six one-round cheat-probability updates, at the default knobs.

    Rosters use the constant reputation scheme so the majority is decided
    by camp size alone (3 workers: two cheaters win, one loses).
    """

    # (cheater set, audited, worker index, expected p_c delta)
    CASES = [
        (frozenset({0}), True, 0, -0.01),        # caught cheating
        (frozenset({0}), True, 1, -0.08),        # honest under audit
        (frozenset({0, 1}), False, 0, +0.09),    # cheated, cheaters won
        (frozenset({0}), False, 0, -0.01),       # cheated, cheaters lost
        (frozenset({0, 1}), False, 2, +0.02),    # honest, honest lost
        (frozenset({0}), False, 2, -0.08),       # honest, honest won
    ]

    @pytest.mark.parametrize("cheaters,audited,idx,delta", CASES)
    def test_delta(self, cheaters, audited, idx, delta):
        cfg = make_config(n=3, scheme="none", p_c0=0.5)
        _, workers, _ = successor(cfg, cheaters, audited)
        assert abs(workers[idx].p_c - (0.5 + delta)) < TOL

    def test_punishment_deepens_caught_penalty(self):
        cfg = make_config(n=3, scheme="none", p_c0=0.5, wpc=1.0)
        _, workers, _ = successor(cfg, {0}, True)
        assert abs(workers[0].p_c - (0.5 - 0.11)) < TOL

    def test_probabilities_clamped(self):
        cfg = make_config(n=3, scheme="none", p_c0=0.995)
        _, workers, _ = successor(cfg, {0, 1}, False)
        assert workers[0].p_c == 1.0
        low = make_config(n=3, scheme="none", p_c0=0.005)
        _, workers, _ = successor(low, {0}, True)
        assert workers[1].p_c == 0.0

    def test_non_rational_workers_never_learn(self):
        cfg = make_config(n=3, scheme="none")
        cfg.workers[0] = WorkerSpec(wtype=WorkerType.MALICIOUS)
        cfg.workers[1] = WorkerSpec(wtype=WorkerType.ALTRUISTIC)
        _, workers, _ = successor(cfg, {0}, True)
        assert workers[0].p_c == 1.0
        assert workers[1].p_c == 0.0


class TestMasterUpdate:
    def test_reinforcement(self):
        m = MasterState(p_a=0.5, aud=3, tau=0.5, alpha_m=0.1)
        out = engine.master_update(m, rho_cheat=0.9, rho_total=1.0)
        assert abs(out.p_a - (0.5 + 0.1 * (0.9 - 0.5))) < TOL
        assert out.aud == 4

    def test_floor_and_ceiling(self):
        m = MasterState(p_a=0.011, aud=0, p_a_min=0.01, tau=0.5, alpha_m=0.1)
        assert engine.master_update(m, 0.0, 1.0).p_a == 0.01
        m = MasterState(p_a=0.99, aud=0, tau=0.0, alpha_m=1.0)
        assert engine.master_update(m, 1.0, 1.0).p_a == 1.0

    def test_zero_total_rejected(self):
        with pytest.raises(ValueError):
            engine.master_update(MasterState(), 0.0, 0.0)

    def test_audit_refreshes_reputations_before_ratio(self):
        # first audit, worker 0 caught: the ratio uses the post-audit values
        # 0.5/(0.5+1), not the uniform pre-audit 0.5/1.0
        cfg = make_config(n=2, scheme="type2", p_c0=0.5)
        master, workers, _ = successor(cfg, {0}, True)
        assert abs(master.p_a - 0.48333333333333334) < TOL
        assert (workers[0].v, workers[1].v) == (0, 1)


class TestRoundRng:
    """Draw order: n strategy uniforms, one audit uniform, tie coin on demand."""

    def test_no_tie_draw_count(self):
        cfg = make_config(n=3, scheme="none", p_c0=0.0, p_a0=0.5)
        state = engine.initial_state(cfg, seed=11)
        engine.run_round(state, cfg)
        mirror = random.Random(11)
        for _ in range(4):
            mirror.random()
        assert state.rng.random() == mirror.random()

    def test_tie_consumes_extra_draw(self):
        cfg = make_config(n=2, scheme="none", p_c0=1.0, p_a0=0.0, p_a_min=0.0)
        cfg.workers[1] = WorkerSpec(wtype=WorkerType.ALTRUISTIC)
        state = engine.initial_state(cfg, seed=11)
        out = engine.run_round(state, cfg)
        assert out.tie_broken
        mirror = random.Random(11)
        for _ in range(4):
            mirror.random()
        assert state.rng.random() == mirror.random()

    def test_missing_tie_coin_rejected(self):
        cfg = make_config(n=2, scheme="none")
        with pytest.raises(ValueError):
            successor(cfg, {0}, False)


def test_role_change_keeps_audit_record():
    cfg = make_config(n=2, scheme="type2", p_c0=0.3)
    cfg.role_changes = [RoleChange(round=0, worker=0,
                                   new_type=WorkerType.MALICIOUS)]
    state = engine.initial_state(cfg, seed=1)
    state.workers[0].v = 4
    engine.apply_role_changes(state, cfg)
    assert state.workers[0].wtype is WorkerType.MALICIOUS
    assert state.workers[0].p_c == 1.0
    assert state.workers[0].v == 4


def test_run_simulation_deterministic():
    cfg = make_config(n=4, scheme="type2", p_c0=1.0, horizon=60)
    a = engine.run_simulation(cfg, seed=5)
    b = engine.run_simulation(cfg, seed=5)
    assert a == b
    c = engine.run_simulation(cfg, seed=6)
    assert a != c


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 4),
       p_c0=st.floats(0.0, 1.0),
       scheme=st.sampled_from(["type1", "type2", "type3", "none"]),
       seed=st.integers(0, 10_000))
def test_run_invariants(n, p_c0, scheme, seed):
    cfg = make_config(n=n, scheme=scheme, p_c0=p_c0, horizon=30)
    trace = engine.run_simulation(cfg, seed)
    assert len(trace) == 30
    for o in trace:
        assert cfg.p_a_min <= o.p_a_after <= 1.0
        assert all(0.0 <= p <= 1.0 for p in o.p_c_after)
        assert all(0.0 <= r <= 1.0 for r in o.reputations_after)
        assert len(o.payoffs) == n
        if o.audited:
            assert o.accepted_correct and not o.majority_set
