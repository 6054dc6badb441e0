"""Codes from weighted graphs over F_p.

A graph Gamma on n vertices with symmetric zero-diagonal F_p weights carries
the quadratic function f(x) = sum_{u<v} Gamma_uv x_u x_v, whose state is
stabilized by X at each vertex paired with Z along its weighted row. Code
spaces are spanned by f plus indicator linear parts chosen from "class"
vertex sets; the distance condition is a purely combinatorial coverage test
on symmetric differences of classes.

A vertex set T is *coverable* with budget w when T = delta XOR N(omega) for
some vertex sets omega, delta with |omega union delta| <= w, where N(omega)
is the set of vertices whose total edge weight into omega is nonzero mod p.
The degree-d family D_d(Gamma) collects the nonempty sets that are NOT
coverable with budget d-1; pairwise symmetric differences of classes must
land in it.

Vertices are 1-based in every public signature; bitmasks stay internal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .codespec import CodeSpec
from .errors import CapacityError, InputError
from .fp_algebra import FpMatrix, PauliLabel, rank, solve_linear
from .logic_fn import LogicFunction, add_affine, quadratic_form
from .state_oracle import apply_error, state_from_function

MAX_COVERAGE_VERTICES = 20


@dataclass(frozen=True)
class WeightedGraph:
    p: int
    n: int
    adj: FpMatrix

    def __post_init__(self):
        if self.adj.p != self.p or self.adj.rows != self.n or self.adj.cols != self.n:
            raise InputError("adjacency matrix shape/field mismatch")
        if not self.adj.is_symmetric():
            raise InputError("adjacency matrix must be symmetric")
        if not self.adj.has_zero_diagonal():
            raise InputError("self-loops are not allowed")

    def weight(self, u: int, v: int) -> int:
        self._check_vertex(u)
        self._check_vertex(v)
        return self.adj.entries[u - 1][v - 1]

    def _check_vertex(self, v: int):
        if not 1 <= v <= self.n:
            raise InputError(f"vertex {v} out of range 1..{self.n}")

    def function(self) -> LogicFunction:
        return quadratic_form(self.adj)


def parse_graph_file(text: str) -> WeightedGraph:
    """'p n' then one 'u v [w]' line per edge (1-based vertices, weight
    default 1). Blank lines and '#' comments are skipped; repeating an edge
    is an error."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("graph file needs a 'p n' line")
    head = lines[0].split()
    if len(head) != 2:
        raise InputError(f"first line must be 'p n', got {lines[0]!r}")
    p, n = int(head[0]), int(head[1])
    if n < 1:
        raise InputError("graph needs at least one vertex")
    entries = [[0] * n for _ in range(n)]
    seen = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) not in (2, 3):
            raise InputError(f"edge line must be 'u v [w]', got {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        w = int(parts[2]) if len(parts) == 3 else 1
        if not (1 <= u <= n and 1 <= v <= n):
            raise InputError(f"edge {u}-{v} out of range 1..{n}")
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"edge {u}-{v} given twice")
        if not (1 <= w <= p - 1):
            raise InputError(f"edge {u}-{v} weight must lie in 1..{p - 1}, got {w}")
        seen.add(key)
        entries[u - 1][v - 1] = entries[v - 1][u - 1] = w
    return WeightedGraph(p, n, FpMatrix(p, tuple(tuple(r) for r in entries)))


# ---------------------------------------------------------------------------
# neighborhoods and coverage


def neighborhood(G: WeightedGraph, omega) -> frozenset:
    """Union of neighbor sets: vertices joined by a nonzero edge to at
    least one vertex of omega."""
    omega = _as_vertex_set(G, omega)
    out = set()
    for v in omega:
        row = G.adj.entries[v - 1]
        out.update(u + 1 for u in range(G.n) if row[u] != 0)
    return frozenset(out)


def _as_vertex_set(G: WeightedGraph, vs) -> frozenset:
    vs = frozenset(int(v) for v in vs)
    for v in vs:
        G._check_vertex(v)
    return vs


def _mask(vs) -> int:
    return sum(1 << (v - 1) for v in vs)


def _unmask(mask: int, n: int) -> frozenset:
    return frozenset(v + 1 for v in range(n) if mask >> v & 1)


def _parity_neighborhood_masks(G: WeightedGraph) -> tuple:
    """mask of {u : Gamma_uv != 0 mod p} for each vertex v; a set omega's
    parity neighborhood is computed by accumulating weighted rows mod p."""
    return tuple(
        sum(1 << u for u in range(G.n) if G.adj.entries[v][u]) for v in range(G.n)
    )


def _parity_mask_of(G: WeightedGraph, omega_mask: int) -> int:
    """Vertices with nonzero total weight into omega, as a bitmask."""
    totals = [0] * G.n
    for v in range(G.n):
        if omega_mask >> v & 1:
            row = G.adj.entries[v]
            for u in range(G.n):
                totals[u] = (totals[u] + row[u]) % G.p
    return sum(1 << u for u in range(G.n) if totals[u])


@lru_cache(maxsize=128)
def _coverage_map(G: WeightedGraph, budget: int) -> dict:
    """mask(T) -> (omega, delta) masks for every T coverable within the
    budget; first witness in deterministic order wins."""
    if G.n > MAX_COVERAGE_VERTICES:
        raise CapacityError(f"coverage search limited to {MAX_COVERAGE_VERTICES} vertices")
    cov: dict = {}
    for s in range(budget + 1):
        for supp in itertools.combinations(range(G.n), s):
            # roles: 1 = omega only, 2 = delta only, 3 = both
            for roles in itertools.product((1, 2, 3), repeat=s):
                om = de = 0
                for v, role in zip(supp, roles):
                    if role & 1:
                        om |= 1 << v
                    if role & 2:
                        de |= 1 << v
                t = de ^ _parity_mask_of(G, om)
                cov.setdefault(t, (om, de))
    return cov


def is_uncoverable(G: WeightedGraph, T, d: int) -> bool:
    """T lies in D_d(Gamma): nonempty and not expressible as
    delta XOR N(omega) with |omega union delta| < d."""
    T = _as_vertex_set(G, T)
    if d < 1:
        raise InputError("d must be >= 1")
    if not T:
        return False
    return _mask(T) not in _coverage_map(G, d - 1)


def coverage_witness(G: WeightedGraph, T, d: int):
    """(omega, delta) demonstrating coverage of T within budget d-1, or
    None when T is uncoverable."""
    T = _as_vertex_set(G, T)
    hit = _coverage_map(G, d - 1).get(_mask(T))
    if hit is None:
        return None
    om, de = hit
    return _unmask(om, G.n), _unmask(de, G.n)


def uncoverable_family(G: WeightedGraph, d: int) -> set:
    """D_d(Gamma) in full: every nonempty vertex set that survives the
    coverage test. Exponential in n; guarded by the vertex cap."""
    if d < 1:
        raise InputError("d must be >= 1")
    cov = _coverage_map(G, d - 1)
    return {
        _unmask(m, G.n) for m in range(1, 1 << G.n) if m not in cov
    }


# ---------------------------------------------------------------------------
# graph code construction and stabilizer check


def build_graph_code(G: WeightedGraph, classes, d: int) -> CodeSpec:
    """Span of g_i = f + chi(C_i).x over the given vertex classes, claiming
    distance d. Requires the empty class to be present and every pairwise
    symmetric difference to be uncoverable; a violation reports the pair and
    a coverage witness."""
    classes = [_as_vertex_set(G, c) for c in classes]
    if d < 1:
        raise InputError("d must be >= 1")
    if frozenset() not in classes:
        raise InputError("the empty class must be included")
    if len(set(classes)) != len(classes):
        raise InputError("classes must be pairwise distinct")
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            diff = classes[i] ^ classes[j]
            if not is_uncoverable(G, diff, d):
                wit = coverage_witness(G, diff, d)
                detail = ""
                if wit is not None:
                    om, de = wit
                    detail = f"; witness omega={sorted(om)} delta={sorted(de)}"
                raise InputError(
                    f"classes {sorted(classes[i])} and {sorted(classes[j])}: "
                    f"symmetric difference {sorted(diff)} is coverable below "
                    f"weight {d}{detail}"
                )
    f = G.function()
    basis = []
    for c in classes:
        chi = [1 if v + 1 in c else 0 for v in range(G.n)]
        basis.append(add_affine(f, chi))
    return CodeSpec(G.p, G.n, tuple(basis), claimed_d=d, provenance="graph-code")


def graph_to_stabilizer_rows(G: WeightedGraph) -> list:
    """One label per vertex: X there, Z with the row's weights elsewhere."""
    rows = []
    for v in range(G.n):
        a = tuple(1 if u == v else 0 for u in range(G.n))
        rows.append(PauliLabel(G.p, a, tuple(G.adj.entries[v])))
    return rows


def verify_stabilizer(G: WeightedGraph) -> bool:
    """Exact check that every vertex operator fixes the graph state."""
    psi = state_from_function(G.function())
    return all(apply_error(row, psi) == psi for row in graph_to_stabilizer_rows(G))


# ---------------------------------------------------------------------------
# matrix-shaped distance conditions (rank route and kernel route)


@dataclass(frozen=True)
class MatrixCheckResult:
    accepted: bool
    condition: str | None = None  # which test failed
    erased: tuple | None = None  # the qudit index set E (0-based into A)
    vector: tuple | None = None  # kernel witness, when the kernel route failed
    warning: str | None = None

    def __bool__(self) -> bool:
        return self.accepted


def _split_blocks(A: FpMatrix, k: int, d: int):
    m = A.rows
    if A.cols != m:
        raise InputError("matrix must be square")
    if not 0 <= k < m:
        raise InputError(f"k must lie in [0, {m - 1}]")
    if d < 1:
        raise InputError("d must be >= 1")
    qudits = list(range(k, m))
    if d - 1 > len(qudits):
        raise InputError(f"d = {d} needs at least {d - 1} qudit indices, have {len(qudits)}")
    warning = None
    if len(qudits) < k + 2 * (d - 1):
        warning = (
            f"only {len(qudits)} qudits for k = {k}, d = {d}; "
            f"the construction expects at least k + 2(d-1) = {k + 2 * (d - 1)}"
        )
    return list(range(k)), qudits, warning


def matrix_code_check(A: FpMatrix, k: int, d: int) -> MatrixCheckResult:
    """Rank conditions for a distance-d code on the qudit block, classes on
    the first k indices. For every erasure set E of d-1 qudit indices with
    complement I:

      (i)  the E-rows restricted to I-columns have full rank d-1;
      (ii) adjoining the class columns to the I-rows-over-E-columns block
           raises the rank by exactly k.
    """
    cls, qudits, warning = _split_blocks(A, k, d)
    for E in itertools.combinations(qudits, d - 1):
        I = [q for q in qudits if q not in E]
        if rank(A.submatrix(E, I)) != d - 1:
            return MatrixCheckResult(False, "selector_rank", E, None, warning)
        joint = A.submatrix(I, cls).hstack(A.submatrix(I, E))
        if rank(joint) != rank(A.submatrix(I, E)) + k:
            return MatrixCheckResult(False, "joint_rank", E, None, warning)
    return MatrixCheckResult(True, None, None, None, warning)


def _iter_nullspace(M: FpMatrix):
    """Every nonzero vector of the kernel of M, via the solved basis."""
    sol = solve_linear(M, [0] * M.rows)
    basis = sol.nullspace
    p = M.p
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if not any(coeffs):
            continue
        vec = [0] * M.cols
        for c, bvec in zip(coeffs, basis):
            for idx in range(M.cols):
                vec[idx] = (vec[idx] + c * bvec[idx]) % p
        yield tuple(vec)


def matrix_kernel_check(A: FpMatrix, k: int, d: int) -> MatrixCheckResult:
    """Kernel conditions, checked by enumerating nullspaces outright: for
    every erasure set E of d-1 qudit indices with complement I, each nonzero
    kernel vector of [A_I,class | A_I,E] must

      (a) vanish on the class coordinates, and
      (b) be annihilated by the class rows over the E columns.

    This is a separate route from matrix_code_check and is strictly
    stronger; the two are never merged.
    """
    cls, qudits, warning = _split_blocks(A, k, d)
    for E in itertools.combinations(qudits, d - 1):
        I = [q for q in qudits if q not in E]
        M = A.submatrix(I, cls).hstack(A.submatrix(I, list(E)))
        for vec in _iter_nullspace(M):
            if any(vec[:k]):
                return MatrixCheckResult(False, "kernel_class_component", E, vec, warning)
            dE = vec[k:]
            for x in cls:
                acc = sum(A.entries[x][e] * dv for e, dv in zip(E, dE)) % A.p
                if acc:
                    return MatrixCheckResult(False, "kernel_class_action", E, vec, warning)
    return MatrixCheckResult(True, None, None, None, warning)
