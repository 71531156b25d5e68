"""Reputation schemes and their ordering-property checkers.

Three metrics are supported plus a constant baseline:

* type 1 -- linear validation ratio (v+1)/(aud+2)
* type 2 -- exponential decay epsilon^(aud-v)
* type 3 -- error-rate driven: the audit outcome moves an error rate beta
  (truthful: beta *= 0.95, cheating: beta += 0.1) and reputation is
  1 - sqrt(beta/A), pinned at 0.001 once beta exceeds the bound A
* none   -- constant 0.5, reducing weighted majority to simple majority

All functions here are pure and operate on plain counts so the engine and
the exact enumerator evaluate reputation identically.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class Type1:
    pass


@dataclass(frozen=True)
class Type2:
    epsilon: float = 0.5


@dataclass(frozen=True)
class Type3:
    error_bound: float = 0.05
    beta_init: float = 0.1
    decay: float = 0.95
    increment: float = 0.1


@dataclass(frozen=True)
class NoReputation:
    pass


SCHEME_NAMES = ("type1", "type2", "type3", "none")


def scheme_from_name(name: str, *, epsilon: float = 0.5, error_bound: float = 0.05,
                     beta_init: float = 0.1, decay: float = 0.95,
                     increment: float = 0.1):
    name = name.strip().lower()
    if name == "type1":
        return Type1()
    if name == "type2":
        return Type2(epsilon=epsilon)
    if name == "type3":
        return Type3(error_bound=error_bound, beta_init=beta_init,
                     decay=decay, increment=increment)
    if name == "none":
        return NoReputation()
    raise ValueError(f"unknown reputation scheme {name!r}; choose from {SCHEME_NAMES}")


def scheme_name(scheme) -> str:
    return {Type1: "type1", Type2: "type2", Type3: "type3",
            NoReputation: "none"}[type(scheme)]


def validate_scheme(scheme):
    if isinstance(scheme, Type2) and not 0.0 < scheme.epsilon < 1.0:
        raise ValueError("type 2 epsilon must lie strictly inside (0, 1)")
    if isinstance(scheme, Type3):
        if scheme.error_bound <= 0:
            raise ValueError("type 3 error bound must be positive")
        if scheme.beta_init < 0:
            raise ValueError("type 3 initial error rate must be non-negative")
    return scheme


def value(scheme, v: int, aud: int, beta: float = 0.0) -> float:
    """Reputation of a single worker given its audit counts.

    Before the first audit every scheme reports 0.5, matching the uniform
    initialization of the master's algorithm.
    """
    if v > aud:
        raise ValueError(f"validation count {v} exceeds audit count {aud}")
    if isinstance(scheme, Type1):
        return (v + 1) / (aud + 2)
    if isinstance(scheme, Type2):
        return 0.5 if aud == 0 else scheme.epsilon ** (aud - v)
    if isinstance(scheme, Type3):
        if aud == 0:
            return 0.5
        if beta > scheme.error_bound:
            return 0.001
        return 1.0 - math.sqrt(beta / scheme.error_bound)
    if isinstance(scheme, NoReputation):
        return 0.5
    raise TypeError(f"not a reputation scheme: {scheme!r}")


def audit_update(scheme, v: int, beta: float, truthful: bool):
    """Post-audit counts for one worker: returns (v', beta')."""
    if truthful:
        v += 1
    if isinstance(scheme, Type3):
        beta = beta * scheme.decay if truthful else beta + scheme.increment
    return v, beta


def aggregate(scheme, members: Iterable, aud: int) -> float:
    """Sum of value() over (v, beta) pairs; empty set aggregates to 0."""
    return sum(value(scheme, v, aud, beta) for v, beta in members)


def check_property1(scheme, x_size: int, y_size: int, horizon: int,
                    prefix_cheats_x: int = 0) -> bool:
    """Limit-ordering check under the always-audit witness schedule.

    X workers are truthful in every audit and Y workers never are, after an
    optional prefix in which even the X workers cheat.  True iff there is an
    r* within the horizon after which the aggregate reputation of X strictly
    exceeds that of Y through the horizon.
    """
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    beta0 = getattr(scheme, "beta_init", 0.0)
    x = [(0, beta0)] * x_size
    y = [(0, beta0)] * y_size
    last_violation = 0
    for r in range(1, horizon + 1):
        x_truthful = r > prefix_cheats_x
        x = [audit_update(scheme, v, b, truthful=x_truthful) for v, b in x]
        y = [audit_update(scheme, v, b, truthful=False) for v, b in y]
        if aggregate(scheme, x, r) <= aggregate(scheme, y, r):
            last_violation = r
    return last_violation < horizon


@dataclass(frozen=True)
class Property2Counterexample:
    """State where one all-truthful audit flips the aggregate ordering."""

    aud: int
    x_counts: tuple          # per-worker (v, beta)
    y_counts: tuple
    rho_x_before: float
    rho_y_before: float
    rho_x_after: float
    rho_y_after: float


def _ordering_flips(scheme, aud, x_counts, y_counts) -> Optional[Property2Counterexample]:
    rho_x = aggregate(scheme, x_counts, aud)
    rho_y = aggregate(scheme, y_counts, aud)
    if rho_x <= rho_y:
        return None
    x_after = [audit_update(scheme, v, b, truthful=True) for v, b in x_counts]
    y_after = [audit_update(scheme, v, b, truthful=True) for v, b in y_counts]
    rho_x_after = aggregate(scheme, x_after, aud + 1)
    rho_y_after = aggregate(scheme, y_after, aud + 1)
    if rho_x_after > rho_y_after:
        return None
    return Property2Counterexample(aud, tuple(x_counts), tuple(y_counts),
                                   rho_x, rho_y, rho_x_after, rho_y_after)


def _count_multisets(values: Sequence, max_set_size: int):
    for size in range(1, max_set_size + 1):
        yield from itertools.combinations_with_replacement(values, size)


def find_property2_counterexample(scheme, max_aud: int = 10,
                                  max_set_size: int = 3,
                                  beta_depth: int = 40):
    """Search for a state violating order preservation under a joint audit.

    For the count-based schemes the search is exhaustive over all audit
    counts aud <= max_aud and per-worker validation counts v <= aud, with
    X and Y running over multisets of at most max_set_size workers.  For
    type 3, reputation depends only on the per-worker error rate, so the
    search runs over error rates reachable by all-truthful decay histories
    of length <= beta_depth (cheating only pushes the rate further above the
    bound, where reputation is pinned).  Returns the first counterexample
    found, or None.
    """
    if max_aud < 1 or max_set_size < 1:
        raise ValueError("bounds must be at least 1")
    if isinstance(scheme, NoReputation):
        return None
    if isinstance(scheme, Type3):
        betas = [scheme.beta_init * scheme.decay ** k for k in range(beta_depth + 1)]
        candidates = [(0, b) for b in betas]
        for x_counts in _count_multisets(candidates, max_set_size):
            for y_counts in _count_multisets(candidates, max_set_size):
                hit = _ordering_flips(scheme, 1, x_counts, y_counts)
                if hit is not None:
                    return hit
        return None
    for aud in range(1, max_aud + 1):
        counts = [(v, 0.0) for v in range(aud + 1)]
        for x_counts in _count_multisets(counts, max_set_size):
            for y_counts in _count_multisets(counts, max_set_size):
                hit = _ordering_flips(scheme, aud, x_counts, y_counts)
                if hit is not None:
                    return hit
    return None
