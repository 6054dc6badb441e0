"""Shared helpers: seeded random objects and independent float-arithmetic
reference implementations used to cross-check the exact integer routines."""
from __future__ import annotations

import cmath

import numpy as np
import pytest

from lfqec import CycloInt, LogicFunction


def rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_function(gen: np.random.Generator, p: int, n: int) -> LogicFunction:
    return LogicFunction(p, n, gen.integers(0, p, p**n).astype(np.int64))


def random_cyclo(gen: np.random.Generator, p: int, lo=-9, hi=10) -> CycloInt:
    return CycloInt(p, tuple(int(v) for v in gen.integers(lo, hi, p)))


def as_complex(z: CycloInt) -> complex:
    zeta = cmath.exp(2j * cmath.pi / z.p)
    return sum(c * zeta**j for j, c in enumerate(z.coeffs))


def close(a: complex, b: complex, tol: float = 1e-9) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


@pytest.fixture
def gen():
    return rng(20260817)
