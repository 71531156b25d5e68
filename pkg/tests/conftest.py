import pytest

from repsim.model import SystemConfig, WorkerSpec, WorkerType
from repsim.reputation import scheme_from_name


def make_config(n=3, scheme="none", p_c0=0.5, wby=1.0, **overrides):
    """Small roster with uniform workers; keyword overrides go to SystemConfig."""
    workers = [WorkerSpec(wtype=WorkerType.RATIONAL, p_c0=p_c0, wby=wby)
               for _ in range(n)]
    cfg = SystemConfig(workers=workers, scheme=scheme_from_name(scheme), **overrides)
    return cfg.validate()


@pytest.fixture
def three_workers():
    return make_config()
