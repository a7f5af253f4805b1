import functools

import numpy as np
import pytest

from holonomic.lab import build_setup

TAU = 0.1


@functools.lru_cache(maxsize=64)
def cached_setup(gate: str, a: float = 4.0, cp: bool = False, steps: int = 8000):
    return build_setup(gate, a=a, b=a, cp=cp, tau=TAU, steps=steps)


@pytest.fixture
def setup():
    return cached_setup


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
