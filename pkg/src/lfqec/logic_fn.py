"""Logic functions F_p^n -> F_p: truth tables, algebraic normal form,
character autocorrelation, APC distance, the zero-product shift set, bent
detection, and the coboundary solver that recovers quadratic functions from
difference constraints.

Truth tables are dense int64 arrays indexed by index(x) = sum_i x_i p^(n-i)
(x_1 most significant). ANF monomials are sorted tuples of 0-based variable
indices with repetition as exponent; () is the constant monomial.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from ._tables import digit_table, place_values, shifted_indices, vector_at
from .errors import InputError
from .fp_algebra import (
    CycloInt,
    FpMatrix,
    PauliLabel,
    cyclo_from_histogram,
    iter_labels_of_weight,
    rank,
    solve_linear,
    table_size,
)


@dataclass(frozen=True)
class LogicFunction:
    p: int
    n: int
    table: np.ndarray
    anf: tuple | None = None  # ((coeff, monomial), ...) or None

    def __post_init__(self):
        N = table_size(self.p, self.n)
        t = np.asarray(self.table, dtype=np.int64) % self.p
        if t.shape != (N,):
            raise InputError(f"table must have {N} entries, got shape {t.shape}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def from_table(cls, p: int, n: int, values) -> "LogicFunction":
        return cls(p, n, np.asarray(list(values), dtype=np.int64))

    @classmethod
    def from_anf(cls, p: int, n: int, terms) -> "LogicFunction":
        """terms: iterable of (coeff, monomial). Exponents must already be
        reduced below p; coefficients are reduced mod p and zero terms drop."""
        canon = _canonical_terms(p, n, terms)
        D = digit_table(p, n)
        N = p**n
        acc = np.zeros(N, dtype=np.int64)
        for coeff, mono in canon:
            term = np.full(N, coeff, dtype=np.int64)
            for v in mono:
                term = term * D[:, v] % p
            acc += term
        return cls(p, n, acc % p, anf=canon)

    def value(self, x) -> int:
        idx = int(np.asarray(x, dtype=np.int64) @ place_values(self.p, self.n))
        return int(self.table[idx])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LogicFunction)
            and self.p == other.p
            and self.n == other.n
            and bool(np.array_equal(self.table, other.table))
        )

    def __hash__(self):
        return hash((self.p, self.n, self.table.tobytes()))


def _canonical_terms(p: int, n: int, terms) -> tuple:
    acc: dict = {}
    for coeff, mono in terms:
        mono = tuple(sorted(int(v) for v in mono))
        if any(v < 0 or v >= n for v in mono):
            raise InputError(f"variable index out of range in monomial {mono}")
        for v in set(mono):
            if mono.count(v) >= p:
                raise InputError(f"exponent of x{v + 1} must be < p in ANF")
        acc[mono] = (acc.get(mono, 0) + int(coeff)) % p
    canon = tuple(
        (c, m) for m, c in sorted(acc.items(), key=lambda kv: (len(kv[0]), kv[0])) if c != 0
    )
    return canon


# ---------------------------------------------------------------------------
# ANF text parsing and rendering


_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])(\d+)|(\*\*|[-+*^()]))")


class _Parser:
    """Polynomials in x1..xn (y aliases), with +, -, *, ^, parentheses and
    implicit multiplication by juxtaposition. Exponents reduce by x^p = x."""

    def __init__(self, text: str, p: int, n: int):
        self.text = text
        self.p = p
        self.n = n
        self.pos = 0
        self.tok = None
        self._advance()

    def _advance(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            self.tok = ("end", None)
            return
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            raise InputError(f"syntax error at position {self.pos}: {self.text[self.pos:]!r}")
        self.pos = m.end()
        if m.group(1) is not None:
            self.tok = ("int", int(m.group(1)))
        elif m.group(2) is not None:
            idx = int(m.group(3))
            if not 1 <= idx <= self.n:
                raise InputError(f"variable index {idx} out of range 1..{self.n}")
            self.tok = ("var", idx - 1)
        else:
            op = m.group(4)
            self.tok = ("op", "^" if op == "**" else op)

    def parse(self) -> dict:
        poly = self._expr()
        if self.tok[0] != "end":
            raise InputError(f"unexpected token {self.tok[1]!r} at position {self.pos}")
        return poly

    def _expr(self) -> dict:
        kind, val = self.tok
        neg = False
        if kind == "op" and val in "+-":
            neg = val == "-"
            self._advance()
        poly = self._term()
        if neg:
            poly = _poly_scale(poly, -1, self.p)
        while self.tok[0] == "op" and self.tok[1] in "+-":
            op = self.tok[1]
            self._advance()
            rhs = self._term()
            if op == "-":
                rhs = _poly_scale(rhs, -1, self.p)
            poly = _poly_add(poly, rhs, self.p)
        return poly

    def _term(self) -> dict:
        poly = self._power()
        while True:
            kind, val = self.tok
            if kind == "op" and val == "*":
                self._advance()
                poly = _poly_mul(poly, self._power(), self.p)
            elif kind in ("int", "var") or (kind == "op" and val == "("):
                poly = _poly_mul(poly, self._power(), self.p)
            else:
                return poly

    def _power(self) -> dict:
        base = self._atom()
        if self.tok == ("op", "^"):
            self._advance()
            kind, val = self.tok
            if kind != "int":
                raise InputError(f"exponent must be an integer at position {self.pos}")
            self._advance()
            out = {(0,) * self.n: 1}
            for _ in range(_reduce_exponent(val, self.p)):
                out = _poly_mul(out, base, self.p)
            return out
        return base

    def _atom(self) -> dict:
        kind, val = self.tok
        if kind == "int":
            self._advance()
            return {(0,) * self.n: val % self.p}
        if kind == "var":
            self._advance()
            e = [0] * self.n
            e[val] = 1
            return {tuple(e): 1}
        if kind == "op" and val == "(":
            self._advance()
            poly = self._expr()
            if self.tok != ("op", ")"):
                raise InputError(f"missing ')' at position {self.pos}")
            self._advance()
            return poly
        raise InputError(f"unexpected token at position {self.pos}")


def _reduce_exponent(e: int, p: int) -> int:
    """x^p = x pointwise, so exponents e >= 1 reduce to ((e-1) mod (p-1)) + 1."""
    if e < 0:
        raise InputError("negative exponents are not allowed")
    if e == 0:
        return 0
    return (e - 1) % (p - 1) + 1 if p > 2 else 1


def _poly_add(a: dict, b: dict, p: int) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = (out.get(k, 0) + v) % p
    return {k: v for k, v in out.items() if v}


def _poly_scale(a: dict, s: int, p: int) -> dict:
    return {k: (v * s) % p for k, v in a.items() if (v * s) % p}


def _poly_mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(_reduce_exponent(ea + eb, p) if ea + eb else 0 for ea, eb in zip(ka, kb))
            out[k] = (out.get(k, 0) + va * vb) % p
    return {k: v for k, v in out.items() if v}


def parse_anf(text: str, p: int, n: int) -> LogicFunction:
    """Parse a polynomial in x1..xn (aliases y1..yn) into a LogicFunction
    with both the reduced ANF and the expanded table."""
    table_size(p, n)
    poly = _Parser(text, p, n).parse()
    terms = []
    for expvec, coeff in poly.items():
        mono = tuple(v for v, e in enumerate(expvec) for _ in range(e))
        terms.append((coeff, mono))
    return LogicFunction.from_anf(p, n, terms)


def anf_text(f: LogicFunction) -> str:
    """Canonical ANF string, e.g. 'x1*x2 + 2*x3 + 1'. Requires f.anf."""
    if f.anf is None:
        raise InputError("function carries no ANF")
    if not f.anf:
        return "0"
    parts = []
    for coeff, mono in f.anf:
        factors = []
        for v in sorted(set(mono)):
            e = mono.count(v)
            factors.append(f"x{v + 1}" + (f"^{e}" if e > 1 else ""))
        if not factors:
            parts.append(str(coeff))
        elif coeff == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{coeff}*" + "*".join(factors))
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# constructors used by the code builders


def quadratic_form(A: FpMatrix) -> LogicFunction:
    """f(x) = sum_{i<j} A_ij x_i x_j for symmetric zero-diagonal A."""
    if not A.is_symmetric():
        raise InputError("matrix must be symmetric")
    if not A.has_zero_diagonal():
        raise InputError("matrix must have zero diagonal")
    n = A.rows
    terms = [(A.entries[i][j], (i, j)) for i in range(n) for j in range(i + 1, n)]
    return LogicFunction.from_anf(A.p, n, terms)


def add_affine(f: LogicFunction, beta, c: int = 0) -> LogicFunction:
    """g(x) = f(x) + beta . x + c, with the ANF updated when present."""
    beta = tuple(int(v) % f.p for v in beta)
    if len(beta) != f.n:
        raise InputError("beta length mismatch")
    D = digit_table(f.p, f.n)
    table = (f.table + D @ np.array(beta, dtype=np.int64) + int(c)) % f.p
    anf = None
    if f.anf is not None:
        extra = [(b, (j,)) for j, b in enumerate(beta)] + [(c, ())]
        anf = _canonical_terms(f.p, f.n, list(f.anf) + extra)
    return LogicFunction(f.p, f.n, table, anf=anf)


def weight_support(f: LogicFunction):
    """(M, support): count and index-ordered list of x with f(x) != 0."""
    idx = np.nonzero(f.table)[0]
    return len(idx), [vector_at(f.p, f.n, int(i)) for i in idx]


# ---------------------------------------------------------------------------
# character sums


def apc_sum(f: LogicFunction, e: PauliLabel) -> CycloInt:
    """sum_x zeta^( f(x) - f(x-a) + b.x ) as an exact exponent histogram."""
    if e.p != f.p or e.n != f.n:
        raise InputError("label mismatch")
    neg_a = tuple(-v % f.p for v in e.a)
    sh = shifted_indices(f.p, f.n, neg_a)  # index of x - a
    D = digit_table(f.p, f.n)
    exps = (f.table - f.table[sh] + D @ np.array(e.b, dtype=np.int64)) % f.p
    return cyclo_from_histogram(f.p, np.bincount(exps, minlength=f.p))


@dataclass(frozen=True)
class ApcResult:
    distance: int
    witness: PauliLabel


def apc_distance(f: LogicFunction) -> ApcResult:
    """Smallest symplectic weight of a nonzero label whose character sum does
    not vanish, searched in increasing weight with a deterministic witness.

    A full-support row always produces a nonvanishing sum, so the search
    terminates at weight <= n.
    """
    for w in range(1, f.n + 1):
        for e in iter_labels_of_weight(f.p, f.n, w):
            if not apc_sum(f, e).is_zero():
                return ApcResult(w, e)
    raise RuntimeError("unreachable: weight-n labels always include a nonvanishing sum")


def autocorrelation(f: LogicFunction, a) -> CycloInt:
    """sum_x zeta^( f(x) - f(x+a) ); the plain integer correlation at p = 2."""
    a = tuple(int(v) % f.p for v in a)
    if len(a) != f.n:
        raise InputError("shift length mismatch")
    sh = shifted_indices(f.p, f.n, a)
    exps = (f.table - f.table[sh]) % f.p
    return cyclo_from_histogram(f.p, np.bincount(exps, minlength=f.p))


def _fwht(v: np.ndarray) -> np.ndarray:
    """In-place style Walsh-Hadamard transform on int64, exact."""
    v = v.copy()
    h = 1
    while h < len(v):
        v = v.reshape(-1, 2 * h)
        left = v[:, :h].copy()
        right = v[:, h:].copy()
        v[:, :h] = left + right
        v[:, h:] = left - right
        v = v.reshape(-1)
        h *= 2
    return v


def autocorrelation_spectrum(f: LogicFunction, method: str = "auto") -> np.ndarray:
    """All integer correlations sum_x (-1)^(f(x)+f(x+a)) for p = 2, indexed
    by the shift a. 'transform' uses the Walsh-Hadamard identity
    r = FWHT(FWHT(s)^2) / 2^n with s = (-1)^f; 'direct' sums shift by shift.
    Both are exact and must agree (cross-checked in the tests)."""
    if f.p != 2:
        raise InputError("spectrum is defined for p = 2")
    if method not in ("auto", "direct", "transform"):
        raise InputError(f"unknown method {method!r}")
    if method == "direct" or (method == "auto" and f.n > 16):
        N = 2**f.n
        out = np.empty(N, dtype=np.int64)
        for idx in range(N):
            a = vector_at(2, f.n, idx)
            sh = shifted_indices(2, f.n, a)
            out[idx] = np.sum(1 - 2 * ((f.table + f.table[sh]) % 2))
        return out
    s = 1 - 2 * f.table
    w = _fwht(s)
    return _fwht(w * w) // (2**f.n)


# ---------------------------------------------------------------------------
# zero-product shift set and bent detection


def zset(f: LogicFunction) -> set:
    """Shifts a with sum_x f(x) * f(x+a) = 0, the sum taken over the
    integers. Defined for p = 2."""
    if f.p != 2:
        raise InputError("zset is defined for p = 2")
    out = set()
    N = 2**f.n
    for idx in range(N):
        a = vector_at(2, f.n, idx)
        sh = shifted_indices(2, f.n, a)
        if int(np.sum(f.table * f.table[sh])) == 0:
            out.add(a)
    return out


def zset_via_autocorrelation(f: LogicFunction) -> set:
    """{a : r_f(a) = 2^n - 4M}, which equals zset(f) whenever the weight M
    is at most 2^(n-1). That bound is a precondition here."""
    if f.p != 2:
        raise InputError("defined for p = 2")
    M = int(np.sum(f.table))
    if M > 2 ** (f.n - 1):
        raise InputError(f"weight {M} exceeds 2^(n-1) = {2 ** (f.n - 1)}")
    target = 2**f.n - 4 * M
    spec = autocorrelation_spectrum(f)
    return {vector_at(2, f.n, int(i)) for i in np.nonzero(spec == target)[0]}


def is_bent(f: LogicFunction) -> bool:
    """True iff every nonzero shift has zero correlation (p = 2, n even).
    On a positive answer the support size is checked against the only two
    values a flat spectrum allows."""
    if f.p != 2:
        raise InputError("bent detection is defined for p = 2")
    if f.n % 2:
        raise InputError("bent functions require even n")
    spec = autocorrelation_spectrum(f)
    bent = bool(np.all(spec[1:] == 0))
    if bent:
        M = int(np.sum(f.table))
        half = 2 ** (f.n - 1)
        quarter = 2 ** (f.n // 2 - 1)
        if M not in (half - quarter, half + quarter):
            raise RuntimeError(f"flat spectrum with impossible support size {M}")
    return bent


# ---------------------------------------------------------------------------
# coboundary solver


def solve_coboundary(pairs, p: int, n: int) -> LogicFunction | None:
    """Find a quadratic f (no square terms, constant normalized to 0) with

        f(x + alpha_i) - f(x) = beta_i . x + t_i   for all x and every i.

    pairs is a list of (alpha_i, beta_i, t_i). Returns None when no such
    quadratic exists. The alpha_i must be linearly independent.
    """
    table_size(p, n)
    pairs = [
        (tuple(int(v) % p for v in a), tuple(int(v) % p for v in b), int(t) % p)
        for a, b, t in pairs
    ]
    for a, b, _ in pairs:
        if len(a) != n or len(b) != n:
            raise InputError("alpha/beta length mismatch")
    alpha_mat = FpMatrix.from_rows(p, [a for a, _, _ in pairs])
    if rank(alpha_mat) != len(pairs):
        raise InputError("the alpha_i must be linearly independent")

    # unknowns: lambda_1..lambda_n then q_{jk} for j < k
    quad_idx = {pair: n + i for i, pair in enumerate(itertools.combinations(range(n), 2))}
    nunk = n + len(quad_idx)
    rows, rhs = [], []
    for alpha, beta, t in pairs:
        # coefficient of x_m:  sum_{k != m} q_{mk} alpha_k  =  beta_m
        for m in range(n):
            row = [0] * nunk
            for k in range(n):
                if k != m:
                    row[quad_idx[(min(m, k), max(m, k))]] = alpha[k] % p
            rows.append(row)
            rhs.append(beta[m])
        # constant:  lambda . alpha + sum_{j<k} q_{jk} alpha_j alpha_k  =  t
        row = [0] * nunk
        for m in range(n):
            row[m] = alpha[m]
        for (j, k), col in quad_idx.items():
            row[col] = alpha[j] * alpha[k] % p
        rows.append(row)
        rhs.append(t)

    sol = solve_linear(FpMatrix.from_rows(p, rows), rhs)
    if sol is None:
        return None
    x = sol.particular
    terms = [(x[m], (m,)) for m in range(n)]
    terms += [(x[col], (j, k)) for (j, k), col in quad_idx.items()]
    return LogicFunction.from_anf(p, n, terms)


# ---------------------------------------------------------------------------
# function file format (shared by the command-line tools)


def parse_function_file(text: str) -> LogicFunction:
    """Two content lines: 'p n' then either 'anf: <polynomial>' or
    'tt: <p^n residues in index order>'. Truth-table residues may be a
    compact digit string or whitespace/comma separated values. Blank lines
    and lines starting with '#' are skipped."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 2:
        raise InputError("function file needs a 'p n' line and a body line")
    head = lines[0].split()
    if len(head) != 2:
        raise InputError(f"first line must be 'p n', got {lines[0]!r}")
    p, n = int(head[0]), int(head[1])
    N = table_size(p, n)
    body = lines[1]
    if body.startswith("anf:"):
        return parse_anf(body[4:].strip(), p, n)
    if body.startswith("tt:"):
        payload = body[3:].strip()
        if re.fullmatch(r"[0-9]+", payload) and len(payload) == N:
            vals = [int(ch) for ch in payload]
        else:
            vals = [int(tok) for tok in re.split(r"[\s,]+", payload) if tok]
        if len(vals) != N:
            raise InputError(f"truth table needs {N} residues, got {len(vals)}")
        if any(v < 0 or v >= p for v in vals):
            raise InputError("truth table residues must lie in [0, p)")
        return LogicFunction.from_table(p, n, vals)
    raise InputError("body line must start with 'anf:' or 'tt:'")
