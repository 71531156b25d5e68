"""Named experiment presets and the scenario runner.

The catalog packages the simulation grid: rational-only rosters, malicious
against rational mixes, altruistic against malicious mixes, partial-coverage
variants and the round-500 dynamic role change.  Scenario names of the
presets follow `<roster>-<scheme>[-knobs]`; `list_scenarios()` enumerates
them all.
"""
from __future__ import annotations

from dataclasses import replace

from . import metrics, reputation as rep
from .engine import run_simulation
from .model import RoleChange, SystemConfig, WorkerSpec, WorkerType

SCHEMES = ("type1", "type2", "type3", "none")

#: Initial cheat probability used by the partial-coverage presets: the
#: exponential scheme is exercised from the worst case, the others from 0.5.
_COVERAGE_PC0 = {"type1": 0.5, "type2": 1.0, "type3": 0.5, "none": 0.5}

UNCOVERED_WBY = 0.1


def _workers(entries):
    out = []
    for wtype, count, p_c0, wby in entries:
        out += [WorkerSpec(wtype=wtype, p_c0=p_c0, wby=wby) for _ in range(count)]
    return out


def _config(scheme_name, workers, **overrides):
    return SystemConfig(scheme=rep.scheme_from_name(scheme_name),
                        workers=workers, **overrides)


def _build_catalog():
    cat = {}
    rat, mal, alt = WorkerType.RATIONAL, WorkerType.MALICIOUS, WorkerType.ALTRUISTIC

    for scheme in SCHEMES:
        for p_c0, tag in ((0.5, "pc05"), (1.0, "pc1")):
            cat[f"rational9-{scheme}-{tag}"] = _config(
                scheme, _workers([(rat, 9, p_c0, 1.0)]))

        for n_mal, n_rat in ((4, 5), (5, 4), (8, 1)):
            cat[f"mal{n_mal}-rat{n_rat}-{scheme}"] = _config(
                scheme, _workers([(mal, n_mal, 1.0, 1.0), (rat, n_rat, 1.0, 1.0)]))

        for n_alt, n_mal in ((5, 4), (4, 5), (1, 8)):
            cat[f"alt{n_alt}-mal{n_mal}-{scheme}"] = _config(
                scheme, _workers([(alt, n_alt, 0.0, 1.0), (mal, n_mal, 1.0, 1.0)]))

        p_c0 = _COVERAGE_PC0[scheme]
        for tau in (0.1, 0.5):
            for wpc in (0.0, 1.0):
                knobs = f"tau{tau:g}" + ("" if wpc == 0.0 else "-wpc1")
                cat[f"cov1of9-{scheme}-{knobs}"] = _config(
                    scheme, _workers([(rat, 1, p_c0, 1.0),
                                      (rat, 8, p_c0, UNCOVERED_WBY)]),
                    tau=tau, wpc=wpc)
                cat[f"cov5of9-{scheme}-{knobs}"] = _config(
                    scheme, _workers([(rat, 5, p_c0, 1.0),
                                      (rat, 4, p_c0, UNCOVERED_WBY)]),
                    tau=tau, wpc=wpc)
                cat[f"mal4rat5cov1-{scheme}-{knobs}"] = _config(
                    scheme, _workers([(mal, 4, 1.0, 1.0),
                                      (rat, 1, p_c0, 1.0),
                                      (rat, 4, p_c0, UNCOVERED_WBY)]),
                    tau=tau, wpc=wpc)

        cat[f"dynamic500-{scheme}"] = _config(
            scheme, _workers([(rat, 9, 1.0, 1.0)]), horizon=2000,
            role_changes=[RoleChange(round=500, worker=i, new_type=mal)
                          for i in range(5)])
    return cat


_CATALOG = _build_catalog()


def list_scenarios() -> list:
    return sorted(_CATALOG)


def _normalize(name: str) -> str:
    return name.strip().replace("τ", "tau")


def get_scenario(name: str) -> SystemConfig:
    """Fresh config for a named preset; unknown names list the alternatives."""
    key = _normalize(name)
    if key not in _CATALOG:
        raise KeyError(f"unknown scenario {name!r}; known scenarios:\n  "
                       + "\n  ".join(list_scenarios()))
    cfg = _CATALOG[key]
    return replace(cfg, workers=list(cfg.workers),
                   role_changes=list(cfg.role_changes))


def run_scenario(name_or_config, seeds=None):
    """Run every seed and aggregate. Returns (ScenarioSummary, traces dict)."""
    if isinstance(name_or_config, SystemConfig):
        config, name = name_or_config, "custom"
    else:
        config, name = get_scenario(name_or_config), _normalize(name_or_config)
    config.validate()
    if seeds is not None:
        config = replace(config, seeds=tuple(seeds))
    traces = {seed: run_simulation(config, seed) for seed in config.seeds}
    return metrics.summarize(name, config, traces), traces
