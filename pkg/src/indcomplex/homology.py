"""Exact integral homology and fundamental-group heuristics.

Everything here works over Python ints; there is no floating point.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Union

from .complex import Presentation, SimplicialComplex

INF = math.inf

DEFAULT_TIETZE_BUDGET = 10_000
DEFAULT_MAX_RELATOR_LENGTH = 10_000


# --------------------------------------------------------------------------
# integer matrices
# --------------------------------------------------------------------------

@dataclass
class IntMatrix:
    rows: int
    cols: int
    data: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.data:
            self.data = [[0] * self.cols for _ in range(self.rows)]
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("matrix data does not match its dimensions")

    @classmethod
    def from_rows(cls, rows: list[list[int]], cols: Optional[int] = None) -> "IntMatrix":
        ncols = len(rows[0]) if rows else (cols or 0)
        return cls(len(rows), ncols, [list(map(int, r)) for r in rows])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [list(r) for r in self.data])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols_b = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = [[sum(a * b for a, b in zip(row, col)) for col in cols_b] for row in self.data]
        return IntMatrix(self.rows, other.cols, out) if self.rows else IntMatrix(0, other.cols)

    def __eq__(self, other):
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def diagonal(self) -> list[int]:
        return [self.data[i][i] for i in range(min(self.rows, self.cols))]


def determinant(a: IntMatrix) -> int:
    """Bareiss fraction-free elimination."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    n = a.rows
    m = [list(r) for r in a.data]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (D, U, V) with U @ A @ V == D, U and V unimodular, and D
    diagonal with non-negative entries d1 | d2 | ...

    Pivots are chosen with minimal absolute value to keep entries small.
    """
    d = a.copy().data
    m, n = a.rows, a.cols
    u = IntMatrix.identity(m).data
    v = IntMatrix.identity(n).data

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if not any(d[i][j] for i in range(t, m) for j in range(t, n)):
            break
    for i in range(min(m, n)):
        if d[i][i] < 0:
            d[i] = [-x for x in d[i]]
            u[i] = [-x for x in u[i]]
    return IntMatrix(m, n, d), IntMatrix(m, m, u), IntMatrix(n, n, v)


def _normalize_factors(diag: list[int]) -> list[int]:
    """Turn any diagonal form into the divisibility chain of invariant factors."""
    vals = sorted(abs(x) for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                a, b = vals[i], vals[j]
                if b % a:
                    g = math.gcd(a, b)
                    vals[i], vals[j] = g, a * b // g
                    changed = True
        vals.sort()
    return vals


def invariant_factors(entries: dict[tuple[int, int], int]) -> list[int]:
    """Non-zero invariant factors of a sparse integer matrix given as {(row, col): value}.

    Sparse elimination without transform tracking; the number of factors is the rank.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), x in entries.items():
        if x:
            rows.setdefault(i, {})[j] = x
            cols.setdefault(j, set()).add(i)

    def set_entry(i, j, x):
        if x:
            rows.setdefault(i, {})[j] = x
            cols.setdefault(j, set()).add(i)
        else:
            r = rows.get(i)
            if r is not None and j in r:
                del r[j]
                if not r:
                    del rows[i]
                cols[j].discard(i)
                if not cols[j]:
                    del cols[j]

    diag: list[int] = []
    while rows:
        # unit pivots first, then the smallest magnitude available
        pi = pj = None
        best = None
        pivot_cost = 0
        for i, r in rows.items():
            for j, x in r.items():
                ax = abs(x)
                if best is None or ax < best or (ax == best and len(r) + len(cols[j]) < pivot_cost):
                    best, pi, pj = ax, i, j
                    pivot_cost = len(r) + len(cols[j])
            if best == 1 and pivot_cost <= 4:
                break
        while True:
            p = rows[pi][pj]
            # clear column pj
            for i in list(cols[pj]):
                if i == pi:
                    continue
                q = rows[i][pj] // p
                for j, x in list(rows[pi].items()):
                    set_entry(i, j, rows.get(i, {}).get(j, 0) - q * x)
            # clear row pi
            for j in list(rows[pi]):
                if j == pj:
                    continue
                q = rows[pi][j] // p
                for i in list(cols[pj]):
                    x = rows[i][pj]
                    set_entry(i, j, rows.get(i, {}).get(j, 0) - q * x)
            others = [(abs(rows[i][pj]), i, pj) for i in cols[pj] if i != pi]
            others += [(abs(x), pi, j) for j, x in rows[pi].items() if j != pj]
            if not others:
                break
            _, ni, nj = min(others)
            if abs(rows[ni][nj]) < abs(p):
                pi, pj = ni, nj
        diag.append(rows[pi][pj])
        set_entry(pi, pj, 0)
    return _normalize_factors(diag)


# --------------------------------------------------------------------------
# simplicial homology
# --------------------------------------------------------------------------

def _boundary_entries(k: SimplicialComplex, dim: int) -> tuple[dict, int, int]:
    """Sparse augmented boundary map C_dim -> C_{dim-1}; C_{-1} is Z."""
    if k.is_empty():
        if dim == 0:
            return {}, 1, 0
        return {}, 0, 0
    if dim > k.dim + 1 or dim < 0:
        return {}, 0, 0
    cols = k.faces(dim)
    if dim == 0:
        return {(0, j): 1 for j in range(len(cols))}, 1, len(cols)
    rows = k.faces(dim - 1)
    row_index = {f: i for i, f in enumerate(rows)}
    out = {}
    for j, f in enumerate(cols):
        for i in range(len(f)):
            out[row_index[f[:i] + f[i + 1:]], j] = -1 if i % 2 else 1
    return out, len(rows), len(cols)


def boundary_matrix(k: SimplicialComplex, dim: int) -> IntMatrix:
    """Dense boundary operator; rows are (dim-1)-faces, columns dim-faces.

    dim = 0 gives the 1 x V augmentation row. Out-of-range dimensions give
    empty matrices.
    """
    if dim > k.dim + 1 or dim < 0:
        return IntMatrix(0, 0)
    entries, nr, nc = _boundary_entries(k, dim)
    m = IntMatrix(nr, nc)
    for (i, j), x in entries.items():
        m.data[i][j] = x
    return m


@dataclass
class HomologySummary:
    """Reduced integral homology, one entry per dimension 0..dim."""

    betti: list[int]
    torsion: list[list[int]]

    def is_trivial_through(self, k: Union[int, float]) -> bool:
        top = len(self.betti) - 1 if k == INF else min(int(k), len(self.betti) - 1)
        return all(self.betti[i] == 0 and not self.torsion[i] for i in range(top + 1))

    def is_trivial(self) -> bool:
        return self.is_trivial_through(INF)

    def lines(self) -> list[str]:
        return [
            f"{k}: betti={b} torsion=[{','.join(map(str, t))}]"
            for k, (b, t) in enumerate(zip(self.betti, self.torsion))
        ]

    def __str__(self):
        return "\n".join(self.lines())


def reduced_homology(k: SimplicialComplex) -> HomologySummary:
    if k.is_empty():
        return HomologySummary([], [])
    ranks = []
    factors = []
    for dim in range(k.dim + 2):
        entries, _, _ = _boundary_entries(k, dim)
        fs = invariant_factors(entries)
        ranks.append(len(fs))
        factors.append(fs)
    counts = k.f_vector()
    betti, torsion = [], []
    for dim in range(k.dim + 1):
        betti.append(counts[dim] - ranks[dim] - ranks[dim + 1])
        torsion.append([f for f in factors[dim + 1] if f > 1])
    return HomologySummary(betti, torsion)


def homological_connectivity(k: SimplicialComplex, summary: Optional[HomologySummary] = None):
    """-2 for the empty complex, otherwise the largest k with reduced H_i = 0 for
    all i <= k (so -1 means H_0 is non-trivial); +inf when everything vanishes."""
    if k.is_empty():
        return -2
    h = summary if summary is not None else reduced_homology(k)
    for i, (b, t) in enumerate(zip(h.betti, h.torsion)):
        if b or t:
            return i - 1
    return INF


# --------------------------------------------------------------------------
# fundamental group
# --------------------------------------------------------------------------

def is_connected(k: SimplicialComplex) -> bool:
    if k.is_empty():
        return False
    parent = list(range(k.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in k.facets:
        for v in f[1:]:
            parent[find(v)] = find(f[0])
    return len({find(v) for v in range(k.n_vertices)}) == 1


def edge_path_presentation(k: SimplicialComplex) -> Presentation:
    """Presentation of pi_1(k): one generator per edge outside a BFS spanning
    tree of the 1-skeleton, one relator per triangle."""
    if not is_connected(k):
        raise ValueError("edge-path group needs a non-empty connected complex")
    edges = k.faces(1)
    adj: dict[int, list[int]] = {v: [] for v in range(k.n_vertices)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    tree = set()
    seen = {0}
    queue = [0]
    for x in queue:
        for y in sorted(adj[x]):
            if y not in seen:
                seen.add(y)
                queue.append(y)
                tree.add((min(x, y), max(x, y)))
    gen = {}
    for e in edges:
        if e not in tree:
            gen[e] = len(gen) + 1
    rels = []
    for a, b, c in k.faces(2):
        word = []
        for e, sign in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
            if e in gen:
                word.append(sign * gen[e])
        rels.append(tuple(word))
    return Presentation(len(gen), tuple(rels))


def abelian_invariants(p: Presentation) -> tuple[int, list[int]]:
    """(free rank, torsion coefficients > 1) of the abelianisation of p."""
    entries: dict[tuple[int, int], int] = {}
    for i, r in enumerate(p.relators):
        for x in r:
            key = (i, abs(x) - 1)
            entries[key] = entries.get(key, 0) + (1 if x > 0 else -1)
    fs = invariant_factors(entries)
    return p.n_gens - len(fs), [f for f in fs if f > 1]


def free_reduce(word) -> tuple[int, ...]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word) -> tuple[int, ...]:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def _invert(word):
    return tuple(-x for x in reversed(word))


def _cyclic_key(word) -> tuple[int, ...]:
    """Least rotation of the word or its inverse; identifies relators that
    define the same normal subgroup element up to conjugation and inversion."""
    if not word:
        return ()
    cands = []
    for w in (word, _invert(word)):
        cands.extend(w[i:] + w[:i] for i in range(len(w)))
    return min(cands)


@dataclass
class SimplifyResult:
    presentation: Presentation
    steps: int
    exhausted: bool


def simplify_presentation(
    p: Presentation,
    budget: int = DEFAULT_TIETZE_BUDGET,
    max_length: int = DEFAULT_MAX_RELATOR_LENGTH,
    detail: bool = False,
):
    """Tietze-simplify p: free and cyclic reduction, removal of trivial and
    duplicate relators, and elimination of a generator occurring exactly once
    in some relator. Stops at a fixpoint or when ``budget`` moves have been
    spent or a relator would exceed ``max_length`` letters.

    Returns a Presentation (or a SimplifyResult with ``detail=True``).
    """
    gens = list(range(1, p.n_gens + 1))
    rels = [tuple(r) for r in p.relators]
    steps = 0
    exhausted = False

    def tidy(rs):
        out, keys = [], set()
        for r in rs:
            r = cyclic_reduce(r)
            key = _cyclic_key(r)
            if r and key not in keys:
                keys.add(key)
                out.append(r)
        return out

    rels = tidy(rels)
    while True:
        if steps >= budget:
            exhausted = True
            break
        choice = None
        for ri, r in sorted(enumerate(rels), key=lambda t: (len(t[1]), t[0])):
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            once = sorted(g for g, c in counts.items() if c == 1)
            if once:
                choice = (ri, once[0])
                break
        if choice is None:
            break
        ri, g = choice
        r = rels[ri]
        pos = next(i for i, x in enumerate(r) if abs(x) == g)
        rot = r[pos:] + r[:pos]
        rest = rot[1:]
        # rot = g^e * rest = 1  =>  g = rest^-1 (e = +1) or g = rest (e = -1)
        image = _invert(rest) if rot[0] > 0 else rest
        image_inv = _invert(image)
        new_rels = []
        too_long = False
        for j, s in enumerate(rels):
            if j == ri:
                continue
            w = []
            for x in s:
                if x == g:
                    w.extend(image)
                elif x == -g:
                    w.extend(image_inv)
                else:
                    w.append(x)
            if len(w) > max_length:
                too_long = True
                break
            new_rels.append(tuple(w))
        if too_long:
            exhausted = True
            break
        gens.remove(g)
        rels = tidy(new_rels)
        steps += 1
    # renumber surviving generators 1..k
    renum = {g: i for i, g in enumerate(gens, 1)}
    final = Presentation(
        len(gens),
        tuple(tuple((1 if x > 0 else -1) * renum[abs(x)] for x in r) for r in rels),
    )
    if detail:
        return SimplifyResult(final, steps, exhausted)
    return final


@dataclass
class TriState:
    """Outcome of the simple-connectivity check: 'yes', 'no' or 'unknown'.

    'no' always carries a witness: the non-trivial first homology
    (free rank, torsion) or a disconnection note.
    """

    status: str
    witness: Optional[str] = None

    @classmethod
    def yes(cls):
        return cls("yes")

    @classmethod
    def no(cls, witness: str):
        return cls("no", witness)

    @classmethod
    def unknown(cls, why: str):
        return cls("unknown", why)

    def __str__(self):
        return self.status if self.witness is None else f"{self.status} ({self.witness})"


def simple_connectivity(
    k: SimplicialComplex,
    budget: int = DEFAULT_TIETZE_BUDGET,
    max_length: int = DEFAULT_MAX_RELATOR_LENGTH,
    summary: Optional[HomologySummary] = None,
) -> TriState:
    """Partial decider for pi_1(k) = 1.

    No general procedure exists, so 'unknown' is a legitimate answer: it is
    returned when H_1 vanishes but Tietze moves do not reach the empty
    presentation within budget.
    """
    if k.is_empty():
        return TriState.no("empty complex")
    if not is_connected(k):
        return TriState.no("disconnected")
    h = summary if summary is not None else reduced_homology(k)
    if len(h.betti) > 1 and (h.betti[1] or h.torsion[1]):
        return TriState.no(f"H1 betti={h.betti[1]} torsion={h.torsion[1]}")
    res = simplify_presentation(edge_path_presentation(k), budget, max_length, detail=True)
    if res.presentation.is_empty():
        return TriState.yes()
    why = "budget exhausted" if res.exhausted else "no further Tietze moves"
    return TriState.unknown(
        f"{why}: {res.presentation.n_gens} generators, {len(res.presentation.relators)} relators"
    )


# --------------------------------------------------------------------------
# collapsibility
# --------------------------------------------------------------------------

def is_collapsible(k: SimplicialComplex) -> bool:
    """Greedy elementary collapses, always taking the smallest free face
    (by size, then lexicographically). True iff a single vertex remains.

    Collapsibility depends on the order in general, so False only means this
    strategy got stuck.
    """
    if k.is_empty():
        return False
    faces = set(k.face_set)
    up: dict[tuple, int] = {f: 0 for f in faces}
    for f in faces:
        if len(f) > 1:
            for sub in combinations(f, len(f) - 1):
                up[sub] += 1
    verts = range(k.n_vertices)

    def coface(f):
        fs = set(f)
        for v in verts:
            if v not in fs:
                g = tuple(sorted(f + (v,)))
                if g in faces:
                    return g
        return None

    heap = [(len(f), f) for f in faces]
    heapq.heapify(heap)

    def drop(f):
        faces.discard(f)
        if len(f) > 1:
            for sub in combinations(f, len(f) - 1):
                up[sub] -= 1
                heapq.heappush(heap, (len(sub), sub))
                if len(sub) > 1:
                    for s2 in combinations(sub, len(sub) - 1):
                        heapq.heappush(heap, (len(s2), s2))

    while heap and len(faces) > 1:
        _, f = heapq.heappop(heap)
        if f not in faces or up[f] != 1:
            continue
        g = coface(f)
        if up[g] != 0:
            continue
        drop(g)
        drop(f)
    return len(faces) == 1
