"""The recursive invariant psi(G) in Z u {+inf}.

    psi(empty graph)          = -2
    psi(non-empty, no edges)  = +inf
    psi(G)                    = max over edges e of min(psi(G - e), psi(G \\ e) + 1)

Values are Python ints, with ``math.inf`` standing in for +inf; ``inf + 1``,
``min`` and ``max`` then behave as the extended integers require.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Optional, Union

from .graph import (
    Graph,
    canonical_form,
    delete_edge,
    exclude_edge,
    has_isolated_vertex,
    write_graph6,
)

INF = math.inf
ExtInt = Union[int, float]

NAIVE_MAX_N = 7


def fmt_ext(x: ExtInt) -> str:
    return "+inf" if x == INF else str(int(x))


def parse_ext(s: str) -> ExtInt:
    return INF if s in ("+inf", "inf") else int(s)


class PsiMemo:
    """Canonical key -> psi value. Entries are write-once.

    Concurrent get-or-compute is allowed to compute a key twice; both writers
    store the same value.
    """

    def __init__(self):
        self._table: dict[bytes, ExtInt] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: bytes) -> Optional[ExtInt]:
        val = self._table.get(key)
        if val is None:
            self.misses += 1
        else:
            self.hits += 1
        return val

    def put(self, key: bytes, value: ExtInt) -> None:
        with self._lock:
            old = self._table.setdefault(key, value)
        if old != value:
            raise RuntimeError(f"memo conflict for {key!r}: {old} vs {value}")

    def __len__(self):
        return len(self._table)

    @property
    def hit_rate(self) -> float:
        total = self.hits + self.misses
        return self.hits / total if total else 0.0


def psi(g: Graph, memo: Optional[PsiMemo] = None, prune_isolated: bool = True) -> ExtInt:
    """Exact psi with canonical-key memoisation.

    Plain recursion; depth is at most |E| + |V|, fine for n <= 16.
    """
    if memo is None:
        memo = PsiMemo()
    return _psi(g, memo, prune_isolated)


def _psi(g: Graph, memo: PsiMemo, prune: bool) -> ExtInt:
    if g.n == 0:
        return -2
    if not g.edges:
        return INF
    if prune and has_isolated_vertex(g):
        return INF
    key = canonical_form(g)
    cached = memo.get(key)
    if cached is not None:
        return cached
    best: ExtInt = -INF
    for e in g.sorted_edges:
        excl = _psi(exclude_edge(g, e), memo, prune) + 1
        dele = _psi(delete_edge(g, e), memo, prune)
        best = max(best, min(dele, excl))
        if best == INF:
            break
    memo.put(key, best)
    return best


def psi_naive(g: Graph, max_n: int = NAIVE_MAX_N) -> ExtInt:
    """Direct evaluation of the recursion: no isomorphism reduction, no pruning,
    no relabeling, no short-circuit.

    Works on (vertex set, edge set) pairs so that it shares no code with
    :func:`psi` beyond the input type. Results are cached per call on the exact
    labeled subgraph only; without that, K5 alone takes ~25 s.
    """
    if g.n > max_n:
        raise ValueError(f"psi_naive guard: n={g.n} exceeds {max_n}")
    return _naive(frozenset(range(g.n)), frozenset(g.edges), {})


def _naive(verts: frozenset, edges: frozenset, seen: dict) -> ExtInt:
    if (verts, edges) in seen:
        return seen[verts, edges]
    if not verts:
        return -2
    if not edges:
        return INF
    best: ExtInt = -INF
    for e in edges:
        u, v = e
        nbhd = {u, v}
        for a, b in edges:
            if a == u or a == v:
                nbhd.add(b)
            if b == u or b == v:
                nbhd.add(a)
        rest = verts - nbhd
        excl_edges = frozenset((a, b) for a, b in edges if a in rest and b in rest)
        val = min(_naive(verts, edges - {e}, seen), _naive(rest, excl_edges, seen) + 1)
        best = max(best, val)
    seen[verts, edges] = best
    return best


# --------------------------------------------------------------------------
# derivation trees
# --------------------------------------------------------------------------

@dataclass
class TraceStep:
    edge: tuple[int, int]
    deleted: "TraceNode"
    excluded: "TraceNode"

    @property
    def value(self) -> ExtInt:
        return min(self.deleted.value, self.excluded.value + 1)


@dataclass
class TraceNode:
    graph: Graph
    value: ExtInt
    base: Optional[str] = None
    steps: list[TraceStep] = field(default_factory=list)

    @property
    def best_edge(self) -> Optional[tuple[int, int]]:
        """First edge (in sorted order) attaining the maximum."""
        for s in self.steps:
            if s.value == self.value:
                return s.edge
        return None


def psi_trace(g: Graph) -> TraceNode:
    """Full derivation of psi(G) following the bare definition.

    Isomorphic subgraphs share one node, so the result is a DAG whose size is
    the number of isomorphism classes reached.
    """
    shared: dict[bytes, TraceNode] = {}

    def build(h: Graph) -> TraceNode:
        if h.n == 0:
            return TraceNode(h, -2, base="empty graph")
        if not h.edges:
            return TraceNode(h, INF, base="discrete graph")
        key = canonical_form(h)
        if key in shared:
            return shared[key]
        steps = [
            TraceStep(e, build(delete_edge(h, e)), build(exclude_edge(h, e)))
            for e in h.sorted_edges
        ]
        node = TraceNode(h, max(s.value for s in steps), steps=steps)
        shared[key] = node
        return node

    return build(g)


def replay_trace(node: TraceNode) -> ExtInt:
    """Recompute psi from a trace, checking every step against the graph operations."""
    checked: dict[int, ExtInt] = {}

    def check(t: TraceNode) -> ExtInt:
        if id(t) in checked:
            return checked[id(t)]
        h = t.graph
        if h.n == 0:
            val = -2
        elif not h.edges:
            val = INF
        else:
            if [s.edge for s in t.steps] != list(h.sorted_edges):
                raise ValueError("trace does not cover every edge")
            val = -INF
            for s in t.steps:
                if canonical_form(s.deleted.graph) != canonical_form(delete_edge(h, s.edge)):
                    raise ValueError(f"bad deletion child at edge {s.edge}")
                if canonical_form(s.excluded.graph) != canonical_form(exclude_edge(h, s.edge)):
                    raise ValueError(f"bad exclusion child at edge {s.edge}")
                val = max(val, min(check(s.deleted), check(s.excluded) + 1))
        if val != t.value:
            raise ValueError(f"trace value {t.value} disagrees with replay {val}")
        checked[id(t)] = val
        return val

    return check(node)


def format_trace(node: TraceNode) -> str:
    """Indented text rendering; repeated subtrees are printed once and then referenced."""
    lines: list[str] = []
    seen: set[int] = set()

    def emit(t: TraceNode, depth: int, label: str):
        pad = "  " * depth
        g6 = write_graph6(t.graph)
        head = f"{pad}{label}{g6} psi={fmt_ext(t.value)}"
        if t.base:
            lines.append(f"{head} [{t.base}]")
            return
        if id(t) in seen:
            lines.append(f"{head} (see above)")
            return
        seen.add(id(t))
        lines.append(f"{head} best_edge={t.best_edge}")
        for s in t.steps:
            lines.append(
                f"{pad}  edge {s.edge}: min({fmt_ext(s.deleted.value)}, "
                f"{fmt_ext(s.excluded.value)}+1) = {fmt_ext(s.value)}"
            )
            emit(s.deleted, depth + 2, "G-e: ")
            emit(s.excluded, depth + 2, "G\\e: ")

    emit(node, 0, "")
    return "\n".join(lines)
