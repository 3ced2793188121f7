import time
from dataclasses import dataclass

import pytest

from evosoft import recipes


@dataclass
class Ensemble:
    replicates: list     # (in-degrees, out-degrees, trajectory) triples
    build_seconds: float


@pytest.fixture(scope="session")
def critical_ensemble():
    """The standard 20-replicate critical growth ensemble (m=1, p=1, q=1,
    N=1e4), shared by the acceptance criteria that pool over it."""
    start = time.perf_counter()
    reps = recipes.critical_ensemble(seed=1000)
    return Ensemble(replicates=reps,
                    build_seconds=time.perf_counter() - start)
