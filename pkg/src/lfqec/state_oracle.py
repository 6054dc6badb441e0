"""Exact state-vector verification of error-correction conditions.

Amplitudes live in Z[zeta_p]: a state over n qudits is an (p^n, p) int64
array whose row x holds the exponent histogram of the amplitude at |x>.
Nothing here is floating point, so a verdict is a proof, not an estimate.

The displacement operator for a label e = (a, b) acts as

    E'_e |x> = zeta^(b.x) |x + a>

(no global phase factor), and a weight-w error is any E'_e with w nonzero
qudit positions. A basis {|psi_i>} detects all errors up to weight d-1 iff
for every label e of weight < d the Gram matrix G_e[i][j] = <psi_i|E'_e|psi_j>
is scalar: off-diagonal entries vanish and diagonal entries agree. For a
one-dimensional space the convention is stricter: G_e[0][0] must itself be 0.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ._tables import digit_table, shifted_indices
from .errors import InputError
from .fp_algebra import (
    MAX_STATE,
    CycloInt,
    PauliLabel,
    iter_labels_of_weight,
    table_size,
)


@dataclass(frozen=True)
class StateVector:
    p: int
    n: int
    amps: np.ndarray  # (p^n, p) int64; row x = exponent histogram at |x>

    def __post_init__(self):
        N = table_size(self.p, self.n, cap=MAX_STATE)
        a = np.asarray(self.amps, dtype=np.int64)
        if a.shape != (N, self.p):
            raise InputError(f"amplitude array must be {(N, self.p)}, got {a.shape}")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    def is_zero(self) -> bool:
        return bool(np.all(self.amps == self.amps[:, :1]))

    def __eq__(self, other) -> bool:
        """Exact equality in Z[zeta_p]: the difference row at each basis
        state must have all-equal coordinates (the one relation zeta^0 +
        ... + zeta^(p-1) = 0)."""
        if not isinstance(other, StateVector) or (self.p, self.n) != (other.p, other.n):
            return NotImplemented
        d = self.amps - other.amps
        return bool(np.all(d == d[:, :1]))

    def __hash__(self):
        raise TypeError("StateVector is not hashable")

    def to_complex(self) -> np.ndarray:
        zeta = np.exp(2j * np.pi / self.p)
        return self.amps @ zeta ** np.arange(self.p)


def state_from_function(f) -> StateVector:
    """|psi_f> = sum_x zeta^(f(x)) |x>, as exact one-hot histograms."""
    N = table_size(f.p, f.n, cap=MAX_STATE)
    amps = np.zeros((N, f.p), dtype=np.int64)
    amps[np.arange(N), np.asarray(f.table, dtype=np.int64)] = 1
    return StateVector(f.p, f.n, amps)


def apply_error(e: PauliLabel, state: StateVector) -> StateVector:
    """E'_e acts by new[x + a] = zeta^(b.x) * old[x]."""
    if (e.p, e.n) != (state.p, state.n):
        raise InputError("label does not match the state")
    p, n = state.p, state.n
    N = p**n
    rot = digit_table(p, n) @ np.array(e.b, dtype=np.int64) % p
    cols = (np.arange(p)[None, :] - rot[:, None]) % p
    rotated = state.amps[np.arange(N)[:, None], cols]
    out = np.empty_like(state.amps)
    out[shifted_indices(p, n, e.a)] = rotated
    return StateVector(p, n, out)


def _conj(amps: np.ndarray, p: int) -> np.ndarray:
    """Complex conjugation reverses exponents: coeff j -> coeff (-j) mod p."""
    return amps[:, (-np.arange(p)) % p]


def inner_product(u: StateVector, v: StateVector) -> CycloInt:
    """<u|v> = sum_x conj(u_x) v_x, exact in Z[zeta_p]."""
    if (u.p, u.n) != (v.p, v.n):
        raise InputError("states live on different spaces")
    p = u.p
    uc = _conj(u.amps, p)
    hist = np.zeros(p, dtype=np.int64)
    for j in range(p):
        for k in range(p):
            hist[(j + k) % p] += int(uc[:, j] @ v.amps[:, k])
    return CycloInt(p, tuple(int(h) for h in hist))


def gram_matrix(basis, e: PauliLabel):
    """G_e[i][j] = <psi_i| E'_e |psi_j> for every basis pair."""
    shifted = [apply_error(e, psi) for psi in basis]
    return [[inner_product(u, w) for w in shifted] for u in basis]


@dataclass(frozen=True)
class KLFailure:
    a: tuple
    b: tuple
    kind: str  # "offdiag_nonzero" | "diag_unequal"
    i: int
    j: int

    def to_dict(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "kind": self.kind, "i": self.i, "j": self.j}


@dataclass(frozen=True)
class VerifyReport:
    p: int
    n: int
    K: int
    max_weight: int
    verdict: str  # "pass" | "fail"
    failures: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "K": self.K,
            "max_weight": self.max_weight,
            "verdict": self.verdict,
            "failures": [f.to_dict() for f in self.failures],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _label_failure(basis, e: PauliLabel) -> KLFailure | None:
    """First scalar-Gram violation for one label, or None. One-dimensional
    spaces must have G_e[0][0] = 0 outright."""
    G = gram_matrix(basis, e)
    K = len(basis)
    if K == 1:
        if not G[0][0].is_zero():
            return KLFailure(e.a, e.b, "diag_unequal", 0, 0)
        return None
    for i in range(K):
        for j in range(K):
            if i != j and not G[i][j].is_zero():
                return KLFailure(e.a, e.b, "offdiag_nonzero", i, j)
    for j in range(1, K):
        if G[j][j] != G[0][0]:
            return KLFailure(e.a, e.b, "diag_unequal", 0, j)
    return None


def _check_basis(basis):
    if not basis:
        raise InputError("basis must be nonempty")
    p, n = basis[0].p, basis[0].n
    for s in basis:
        if (s.p, s.n) != (p, n):
            raise InputError("basis states live on different spaces")
    return p, n


def kl_verify(basis, max_weight: int) -> VerifyReport:
    """Check every error label of weight 1..max_weight, in increasing weight
    and a fixed deterministic order within each weight. Records one failure
    entry per failing label; verdict is "pass" iff there are none."""
    p, n = _check_basis(basis)
    if not 0 <= max_weight <= n:
        raise InputError(f"max_weight must lie in [0, {n}]")
    failures = []
    for w in range(1, max_weight + 1):
        for e in iter_labels_of_weight(p, n, w):
            bad = _label_failure(basis, e)
            if bad is not None:
                failures.append(bad)
    verdict = "pass" if not failures else "fail"
    return VerifyReport(p, n, len(basis), max_weight, verdict, tuple(failures))


def min_distance(basis, cap: int | None = None):
    """Smallest weight at which some label breaks the scalar-Gram condition,
    or the string "> cap" when every weight up to the cap is clean."""
    p, n = _check_basis(basis)
    if cap is None:
        cap = n
    if not 1 <= cap <= n:
        raise InputError(f"cap must lie in [1, {n}]")
    for w in range(1, cap + 1):
        for e in iter_labels_of_weight(p, n, w):
            if _label_failure(basis, e) is not None:
                return w
    return f"> {cap}"
