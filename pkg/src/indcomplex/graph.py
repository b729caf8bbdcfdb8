"""Finite simple graphs on vertices 0..n-1.

Includes the two edge operations used by the psi recursion, a canonical
labeling for isomorphism-keyed caches, graph6 / edge-list I/O and an
exhaustive enumerator of small graphs up to isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_CANONICAL_N = 16
MAX_GRAPH6_N = 62
MAX_ENUMERATE_N = 8

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``."""

    n: int
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative vertex count {self.n}")
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        out = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            out.add(norm_edge(u, v))
        return cls(n, frozenset(out))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset(combinations(range(n), 2)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood bitmask per vertex."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def neighbors(self, v: int) -> list[int]:
        mask = self.adj[v]
        return [w for w in range(self.n) if mask >> w & 1]

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm is not a permutation of the vertices")
        return Graph(self.n, frozenset(norm_edge(perm[u], perm[v]) for u, v in self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.sorted_edges)})"


def _check_edge(g: Graph, e: Sequence[int]) -> Edge:
    u, v = e
    edge = norm_edge(u, v)
    if edge not in g.edges:
        raise ValueError(f"edge {tuple(e)} not in graph")
    return edge


def delete_edge(g: Graph, e: Sequence[int]) -> Graph:
    """G - e: same vertices, one edge fewer."""
    edge = _check_edge(g, e)
    return Graph(g.n, g.edges - {edge})


def induced_subgraph(g: Graph, keep: Iterable[int], with_map: bool = False):
    """Subgraph induced on ``keep``, relabeled 0..k-1 preserving vertex order.

    With ``with_map`` returns ``(graph, old_to_new)``.
    """
    keep = sorted(set(keep))
    for v in keep:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(keep)}
    edges = frozenset(
        (index[u], index[v]) for u, v in g.edges if u in index and v in index
    )
    sub = Graph(len(keep), edges)
    return (sub, index) if with_map else sub


def exclude_edge(g: Graph, e: Sequence[int], with_map: bool = False):
    """G \\ e: induced subgraph on vertices adjacent to neither endpoint of e.

    Both endpoints are dropped too, since each is adjacent to the other.
    """
    u, v = _check_edge(g, e)
    gone = g.adj[u] | g.adj[v]
    keep = [w for w in range(g.n) if not gone >> w & 1]
    return induced_subgraph(g, keep, with_map=with_map)


def is_discrete(g: Graph) -> bool:
    return not g.edges


def has_isolated_vertex(g: Graph) -> bool:
    return any(mask == 0 for mask in g.adj)


def connected_components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp_mask = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for w in range(g.n):
                if frontier >> w & 1:
                    nxt |= g.adj[w]
            frontier = nxt & ~comp_mask
            comp_mask |= nxt
        seen |= comp_mask
        comps.append([w for w in range(g.n) if comp_mask >> w & 1])
    return comps


# --------------------------------------------------------------------------
# canonical labeling
# --------------------------------------------------------------------------

def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition.

    Each round splits every cell by the vector of neighbour counts into all
    current cells; sub-cells are ordered by that vector so the result only
    depends on structure.
    """
    while True:
        masks = []
        for cell in cells:
            mk = 0
            for v in cell:
                mk |= 1 << v
            masks.append(mk)
        new_cells = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple(bin(adj[v] & mk).count("1") for mk in masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _certificate(adj: Sequence[int], order: Sequence[int]) -> tuple[int, ...]:
    """Upper-triangle adjacency bits (graph6 order) of the graph relabeled so
    that ``order[i]`` becomes vertex ``i``."""
    n = len(order)
    bits = []
    for j in range(1, n):
        aj = adj[order[j]]
        for i in range(j):
            bits.append(aj >> order[i] & 1)
    return tuple(bits)


def canonical_labeling(g: Graph) -> list[int]:
    """Return ``order`` such that relabeling ``order[i] -> i`` gives the canonical graph.

    Individualisation-refinement search taking the lexicographically
    largest certificate. Vertices with equal open or closed neighbourhoods
    (twins) inside a cell are interchangeable by an automorphism, so only one
    per twin class is individualised.
    """
    if g.n > MAX_CANONICAL_N:
        raise ValueError(f"canonical form supports n <= {MAX_CANONICAL_N}, got {g.n}")
    if g.n == 0:
        return []
    adj = g.adj
    best_cert = None
    best_order = None

    def search(cells):
        nonlocal best_cert, best_order
        cells = _refine(adj, cells)
        if len(cells) == g.n:
            order = [c[0] for c in cells]
            cert = _certificate(adj, order)
            if best_cert is None or cert > best_cert:
                best_cert, best_order = cert, order
            return
        # first smallest non-singleton cell
        target = min(
            (i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: len(cells[i])
        )
        cell = cells[target]
        tried_open: set[int] = set()
        tried_closed: set[int] = set()
        for v in cell:
            open_nb = adj[v]
            closed_nb = adj[v] | (1 << v)
            if open_nb in tried_open or closed_nb in tried_closed:
                continue
            tried_open.add(open_nb)
            tried_closed.add(closed_nb)
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search([list(range(g.n))])
    return best_order


def canonical_graph(g: Graph) -> Graph:
    order = canonical_labeling(g)
    perm = [0] * g.n
    for new, old in enumerate(order):
        perm[old] = new
    return g.relabel(perm)


def canonical_form(g: Graph) -> bytes:
    """Isomorphism-invariant key: graph6 bytes of the canonical relabeling."""
    return write_graph6(canonical_graph(g)).encode("ascii")


# --------------------------------------------------------------------------
# graph6 / edge-list I/O
# --------------------------------------------------------------------------

class GraphFormatError(ValueError):
    pass


def write_graph6(g: Graph) -> str:
    if g.n > MAX_GRAPH6_N:
        raise GraphFormatError(f"graph6 short form supports n <= {MAX_GRAPH6_N}")
    bits = []
    for j in range(1, g.n):
        aj = g.adj[j]
        for i in range(j):
            bits.append(aj >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = val << 1 | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"character {ch!r} outside graph6 range")
    if s[0] == "~":
        raise GraphFormatError("graph6 long form (n > 62) is not supported")
    n = ord(s[0]) - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(s) - 1 != nbytes:
        raise GraphFormatError(
            f"graph6 length mismatch: n={n} needs {nbytes} data bytes, got {len(s) - 1}"
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(s[1 + k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, frozenset(edges))


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse ``<n> [<m>]`` (or ``n <count>``) then one ``u v`` per line; ``#`` comments."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if header is None:
            if toks[0] == "n":
                toks = toks[1:]
            try:
                nums = [int(t) for t in toks]
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad header {raw!r}") from None
            if len(nums) not in (1, 2) or nums[0] < 0:
                raise GraphFormatError(f"line {lineno}: bad header {raw!r}")
            header = (nums[0], nums[1] if len(nums) == 2 else None, lineno)
            continue
        try:
            u, v = (int(t) for t in toks)
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw!r}") from None
        if u == v or not (0 <= u < header[0] and 0 <= v < header[0]):
            raise GraphFormatError(f"line {lineno}: invalid edge {u} {v}")
        edges.append(norm_edge(u, v))
    if header is None:
        raise GraphFormatError("missing header line")
    n, m, lineno = header
    g = Graph(n, frozenset(edges))
    if m is not None and m != g.m:
        raise GraphFormatError(f"line {lineno}: header says {m} edges, found {g.m}")
    return g


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------

def enumerate_graphs(n: int) -> Iterator[Graph]:
    """One canonically labeled representative per isomorphism class on n vertices,
    sorted by canonical key."""
    if not 1 <= n <= MAX_ENUMERATE_N:
        raise ValueError(f"enumerate_graphs supports 1 <= n <= {MAX_ENUMERATE_N}")
    pairs = list(combinations(range(n), 2))
    level = {canonical_form(Graph(n)): canonical_graph(Graph(n))}
    found = dict(level)
    for _ in pairs:
        nxt: dict[bytes, Graph] = {}
        for g in level.values():
            for e in pairs:
                if e in g.edges:
                    continue
                h = canonical_graph(Graph(n, g.edges | {e}))
                key = write_graph6(h).encode("ascii")
                if key not in nxt:
                    nxt[key] = h
        found.update(nxt)
        level = nxt
    for key in sorted(found):
        yield found[key]
