"""Reputation-based master-worker computing: simulator and exact oracle."""

from .model import (ConfigError, MasterState, PayoffParams, RoleChange,
                    RoundOutcome, SystemConfig, WorkerSpec, WorkerState,
                    WorkerType, compute_payoffs, is_covered)
from .reputation import (NoReputation, Type1, Type2, Type3,
                         check_property1, find_property2_counterexample,
                         scheme_from_name)
from .engine import (SimulationState, initial_state, run_round, run_simulation)
from .oracle import (ExactState, OracleBoundError, TransitionDistribution,
                     check_closed, compare_engine_distribution,
                     enumerate_transitions, find_escape, reach_probability,
                     state_from_config)
from .metrics import ScenarioSummary, detect_convergence, reputation_ratio
from .scenarios import get_scenario, list_scenarios, run_scenario

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
