"""Exact arithmetic over prime fields F_p and the ring Z[zeta_p].

Three pillars used everywhere else:

- CycloInt: an integer coefficient vector (c_0, ..., c_{p-1}) standing for
  sum_j c_j * zeta^j with zeta a primitive p-th root of unity. Since
  1 + zeta + ... + zeta^{p-1} = 0, adding a constant to all coefficients is
  the zero element; the canonical form subtracts the minimum so at least one
  coefficient is 0. A value is zero exactly when its coefficients are all
  equal, which makes character-sum zero tests pure integer comparisons.
- PauliLabel: (a|b) in F_p^n x F_p^n naming the phase-free error X_a Z_b,
  with symplectic weight and product.
- F_p linear algebra: rank, solve with nullspace basis, over small matrices.

Capacities keep everything desk-scale: p <= 13, truth tables to 2^24
entries, state vectors to 2^20, dense operators to dimension 1024.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapacityError, InputError

PRIMES = (2, 3, 5, 7, 11, 13)

MAX_TABLE = 2**24
MAX_STATE = 2**20
MAX_OPERATOR_DIM = 1024


def validate_prime(p) -> int:
    p = int(p)
    if p not in PRIMES:
        raise InputError(f"p must be one of {PRIMES}, got {p}")
    return p


def table_size(p: int, n: int, cap: int = MAX_TABLE) -> int:
    """p^n after validating the prime, the arity, and the size cap."""
    p = validate_prime(p)
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    N = p**n
    if N > cap:
        raise CapacityError(f"p^n = {N} exceeds cap {cap}")
    return N


# ---------------------------------------------------------------------------
# cyclotomic integers


@dataclass(frozen=True)
class CycloInt:
    """Element of Z[zeta_p], canonicalized so min(coeffs) == 0."""

    p: int
    coeffs: tuple

    def __post_init__(self):
        validate_prime(self.p)
        if len(self.coeffs) != self.p:
            raise InputError(f"need {self.p} coefficients, got {len(self.coeffs)}")
        m = min(self.coeffs)
        object.__setattr__(self, "coeffs", tuple(int(c) - m for c in self.coeffs))

    @classmethod
    def zero(cls, p: int) -> "CycloInt":
        return cls(p, (0,) * p)

    @classmethod
    def integer(cls, p: int, k: int) -> "CycloInt":
        return cls(p, (k,) + (0,) * (p - 1))

    @classmethod
    def zeta_power(cls, p: int, e: int, mult: int = 1) -> "CycloInt":
        c = [0] * p
        c[e % p] = mult
        return cls(p, tuple(c))

    def _check(self, other: "CycloInt"):
        if self.p != other.p:
            raise InputError(f"mixed fields p={self.p} and p={other.p}")

    def __add__(self, other: "CycloInt") -> "CycloInt":
        self._check(other)
        return CycloInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycloInt") -> "CycloInt":
        self._check(other)
        return CycloInt(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "CycloInt") -> "CycloInt":
        self._check(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[(i + j) % p] += a * b
        return CycloInt(p, tuple(out))

    def scale(self, k: int) -> "CycloInt":
        return CycloInt(self.p, tuple(k * c for c in self.coeffs))

    def rotate(self, e: int) -> "CycloInt":
        """Multiplication by zeta^e."""
        p = self.p
        e %= p
        return CycloInt(p, tuple(self.coeffs[(j - e) % p] for j in range(p)))

    def conj(self) -> "CycloInt":
        p = self.p
        return CycloInt(p, tuple(self.coeffs[(p - j) % p] for j in range(p)))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_integer(self) -> int | None:
        """The rational integer this value equals, or None. In canonical
        form an integer looks like (c0, c, c, ..., c) and equals c0 - c."""
        tail = self.coeffs[1:]
        if any(c != tail[0] for c in tail):
            return None
        return self.coeffs[0] - (tail[0] if tail else 0)

    def to_complex(self) -> complex:
        """Float evaluation at zeta = exp(2*pi*i/p); cross-checks only."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.p)
        return sum(c * z**j for j, c in enumerate(self.coeffs))


def cyclo_is_zero(z: CycloInt) -> bool:
    """True iff the raw coefficient vector is constant, i.e. the value is 0."""
    return z.is_zero()


def cyclo_from_histogram(p: int, hist) -> CycloInt:
    """CycloInt from exponent counts: hist[j] occurrences of zeta^j."""
    return CycloInt(p, tuple(int(h) for h in hist))


# ---------------------------------------------------------------------------
# error labels


@dataclass(frozen=True)
class PauliLabel:
    """(a|b) naming X_a Z_b; a and b are residue tuples of equal length."""

    p: int
    a: tuple
    b: tuple

    def __post_init__(self):
        validate_prime(self.p)
        if len(self.a) == 0 or len(self.a) != len(self.b):
            raise InputError("a and b must be nonempty tuples of equal length")
        object.__setattr__(self, "a", tuple(int(v) % self.p for v in self.a))
        object.__setattr__(self, "b", tuple(int(v) % self.p for v in self.b))

    @property
    def n(self) -> int:
        return len(self.a)

    def weight(self) -> int:
        return symplectic_weight(self)

    def __neg__(self) -> "PauliLabel":
        return PauliLabel(self.p, tuple(-v % self.p for v in self.a), tuple(-v % self.p for v in self.b))

    def __add__(self, other: "PauliLabel") -> "PauliLabel":
        if self.p != other.p or self.n != other.n:
            raise InputError("label mismatch")
        return PauliLabel(
            self.p,
            tuple((x + y) % self.p for x, y in zip(self.a, other.a)),
            tuple((x + y) % self.p for x, y in zip(self.b, other.b)),
        )


def symplectic_weight(e: PauliLabel) -> int:
    """Number of positions where (a_i, b_i) != (0, 0)."""
    return sum(1 for ai, bi in zip(e.a, e.b) if ai or bi)


def symplectic_product(u: PauliLabel, v: PauliLabel) -> int:
    """a_u . b_v - a_v . b_u mod p; antisymmetric and bilinear."""
    if u.p != v.p or u.n != v.n:
        raise InputError("label mismatch")
    s = sum(x * y for x, y in zip(u.a, v.b)) - sum(x * y for x, y in zip(v.a, u.b))
    return s % u.p


def iter_labels_of_weight(p: int, n: int, w: int):
    """All labels of symplectic weight w, in the fixed total order:
    support lexicographic, then a-part lexicographic, then b-part
    lexicographic (each support position allows b = 0 only when a != 0)."""
    for supp in itertools.combinations(range(n), w):
        for avals in itertools.product(range(p), repeat=w):
            branges = [range(p) if av else range(1, p) for av in avals]
            for bvals in itertools.product(*branges):
                a = [0] * n
                b = [0] * n
                for pos, av, bv in zip(supp, avals, bvals):
                    a[pos] = av
                    b[pos] = bv
                yield PauliLabel(p, tuple(a), tuple(b))


def iter_labels(p: int, n: int, max_weight: int):
    """Nonzero labels in increasing weight, deterministic within weight."""
    for w in range(1, max_weight + 1):
        yield from iter_labels_of_weight(p, n, w)


# ---------------------------------------------------------------------------
# F_p matrices and linear algebra


@dataclass(frozen=True)
class FpMatrix:
    p: int
    entries: tuple  # tuple of row tuples, residues mod p

    def __post_init__(self):
        validate_prime(self.p)
        rows = tuple(tuple(int(v) % self.p for v in row) for row in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise InputError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, p: int, rows) -> "FpMatrix":
        return cls(p, tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def submatrix(self, row_idx, col_idx) -> "FpMatrix":
        return FpMatrix(self.p, tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx))

    def hstack(self, other: "FpMatrix") -> "FpMatrix":
        if self.p != other.p or self.rows != other.rows:
            raise InputError("hstack shape mismatch")
        return FpMatrix(self.p, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def is_symmetric(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        ) and self.rows == self.cols

    def has_zero_diagonal(self) -> bool:
        return self.rows == self.cols and all(self.entries[i][i] == 0 for i in range(self.rows))


def _eliminate(rows: list, p: int):
    """In-place reduced row echelon form; returns pivot column list."""
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(M: FpMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    rows = [list(r) for r in M.entries]
    return len(_eliminate(rows, M.p))


@dataclass(frozen=True)
class LinearSolution:
    particular: tuple
    nullspace: tuple  # tuple of basis vectors


def solve_linear(M: FpMatrix, rhs) -> LinearSolution | None:
    """Solve M x = rhs over F_p. Returns a particular solution plus a
    nullspace basis, or None when the system is inconsistent."""
    p = M.p
    rhs = tuple(int(v) % p for v in rhs)
    if len(rhs) != M.rows:
        raise InputError("rhs length mismatch")
    ncols = M.cols
    aug = [list(r) + [v] for r, v in zip(M.entries, rhs)]
    if not aug:
        return LinearSolution((), ())
    pivots = _eliminate(aug, p)
    if ncols in pivots:
        return None  # pivot in the rhs column: inconsistent
    pivot_rows = {c: i for i, c in enumerate(pivots)}
    x = [0] * ncols
    for c, i in pivot_rows.items():
        x[c] = aug[i][ncols]
    free = [c for c in range(ncols) if c not in pivot_rows]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for c, i in pivot_rows.items():
            v[c] = (-aug[i][fc]) % p
        basis.append(tuple(v))
    return LinearSolution(tuple(x), tuple(basis))
