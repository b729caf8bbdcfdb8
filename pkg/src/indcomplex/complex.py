"""Finite abstract simplicial complexes stored by facets.

Builds independence complexes, barycentric subdivisions, the face-poset
incomparability graph of a complex and 2-complexes realising finite group
presentations; also a small backtracking isomorphism test.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Hashable, Iterable, Optional, Sequence

from .graph import Graph

Face = tuple[int, ...]


class SimplicialComplex:
    """Vertices are opaque labels, indexed internally 0..V-1.

    Only facets are stored. Non-maximal input faces are discarded, so every
    non-empty subset of a facet is implicitly a face and nothing else is.
    """

    def __init__(self, facets: Iterable[Iterable[Hashable]], vertex_order: Optional[Sequence[Hashable]] = None):
        index: dict[Hashable, int] = {}
        labels: list[Hashable] = []
        if vertex_order is not None:
            for lab in vertex_order:
                if lab in index:
                    raise ValueError(f"duplicate vertex label {lab!r}")
                index[lab] = len(labels)
                labels.append(lab)
        raw: set[Face] = set()
        for facet in facets:
            idx = []
            for lab in facet:
                if lab not in index:
                    if vertex_order is not None:
                        raise ValueError(f"label {lab!r} not in vertex_order")
                    index[lab] = len(labels)
                    labels.append(lab)
                idx.append(index[lab])
            face = tuple(sorted(set(idx)))
            if face:
                raw.add(face)
        # keep maximal faces only
        by_size = sorted(raw, key=len, reverse=True)
        kept: list[frozenset] = []
        for f in by_size:
            fs = frozenset(f)
            if not any(fs < k for k in kept):
                kept.append(fs)
        used = set().union(*kept) if kept else set()
        if len(used) != len(labels):
            # drop labels that lie in no facet and compact the indexing
            keep = sorted(used)
            remap = {old: new for new, old in enumerate(keep)}
            labels = [labels[i] for i in keep]
            kept = [frozenset(remap[v] for v in k) for k in kept]
        self.labels: tuple = tuple(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.facets: tuple[Face, ...] = tuple(sorted(tuple(sorted(k)) for k in kept))

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_empty(self) -> bool:
        return not self.facets

    @cached_property
    def face_set(self) -> frozenset[Face]:
        out = set()
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(combinations(f, k))
        return frozenset(out)

    @cached_property
    def all_faces(self) -> tuple[Face, ...]:
        """Every face, dimension-major then lexicographic."""
        return tuple(sorted(self.face_set, key=lambda f: (len(f), f)))

    def faces(self, k: int) -> list[Face]:
        """Faces of dimension k (k+1 vertices), lexicographically sorted."""
        if k < 0:
            return []
        return sorted(f for f in self.face_set if len(f) == k + 1)

    def f_vector(self) -> list[int]:
        counts = [0] * (self.dim + 1)
        for f in self.face_set:
            counts[len(f) - 1] += 1
        return counts

    def facet_labels(self) -> list[tuple]:
        return [tuple(self.labels[v] for v in f) for f in self.facets]

    def relabel(self, mapping) -> "SimplicialComplex":
        return SimplicialComplex(
            [[mapping[lab] for lab in facet] for facet in self.facet_labels()]
        )

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(map(frozenset, self.facet_labels())) == set(
            map(frozenset, other.facet_labels())
        )

    def __hash__(self):
        return hash(frozenset(map(frozenset, self.facet_labels())))

    def __repr__(self):
        return f"SimplicialComplex({self.facet_labels()!r})"


def simplex(n_vertices: int) -> SimplicialComplex:
    return SimplicialComplex([range(n_vertices)])


def simplex_boundary(n_vertices: int) -> SimplicialComplex:
    return SimplicialComplex(combinations(range(n_vertices), n_vertices - 1))


def cone(k: SimplicialComplex, apex: Hashable = "apex") -> SimplicialComplex:
    return SimplicialComplex([list(f) + [apex] for f in k.facet_labels()] or [[apex]])


def projective_plane() -> SimplicialComplex:
    """Six-vertex triangulation of the real projective plane."""
    return SimplicialComplex([
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
        (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
    ])


# --------------------------------------------------------------------------
# constructions
# --------------------------------------------------------------------------

def maximal_independent_sets(g: Graph) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with pivoting on the complement graph."""
    full = (1 << g.n) - 1
    non_adj = [full & ~(g.adj[v] | 1 << v) for v in range(g.n)]
    out: list[tuple[int, ...]] = []

    def bk(r: int, p: int, x: int):
        if not p and not x:
            out.append(tuple(v for v in range(g.n) if r >> v & 1))
            return
        px = p | x
        pivot = max(
            (u for u in range(g.n) if px >> u & 1),
            key=lambda u: bin(p & non_adj[u]).count("1"),
        )
        cand = p & ~non_adj[pivot]
        for v in range(g.n):
            if cand >> v & 1:
                bk(r | 1 << v, p & non_adj[v], x & non_adj[v])
                p &= ~(1 << v)
                x |= 1 << v

    if g.n:
        bk(0, full, 0)
    return sorted(out)


def independence_complex(g: Graph) -> SimplicialComplex:
    """Faces are the non-empty independent vertex sets of g; vertex labels are 0..n-1."""
    return SimplicialComplex(maximal_independent_sets(g), vertex_order=range(g.n))


def barycentric_subdivision(k: SimplicialComplex) -> SimplicialComplex:
    """Vertices are faces of k (labelled by tuples of k's labels), facets are
    maximal chains of faces."""

    def lab(face):
        return tuple(k.labels[v] for v in face)

    chains = []
    for facet in k.facets:
        for perm in permutations(facet):
            chains.append([lab(tuple(sorted(perm[:i]))) for i in range(1, len(perm) + 1)])
    return SimplicialComplex(chains, vertex_order=[lab(f) for f in k.all_faces])


def complex_to_graph(k: SimplicialComplex) -> Graph:
    """Graph on the faces of k (dimension-major, lexicographic order) joining
    each pair of faces where neither contains the other."""
    faces = k.all_faces
    sets = [frozenset(f) for f in faces]
    edges = []
    for i, j in combinations(range(len(faces)), 2):
        a, b = sets[i], sets[j]
        if not (a <= b or b <= a):
            edges.append((i, j))
    return Graph(len(faces), frozenset(edges))


def face_labels(k: SimplicialComplex) -> list[tuple]:
    """Face labels in the vertex order used by :func:`complex_to_graph`."""
    return [tuple(k.labels[v] for v in f) for f in k.all_faces]


# --------------------------------------------------------------------------
# isomorphism
# --------------------------------------------------------------------------

class IsomorphismBudgetExceeded(RuntimeError):
    """The search gave up; the answer is unknown, not 'non-isomorphic'."""


DEFAULT_ISO_MAX_VERTICES = 512
DEFAULT_ISO_NODE_BUDGET = 20_000


def find_isomorphism(
    k1: SimplicialComplex,
    k2: SimplicialComplex,
    max_vertices: int = DEFAULT_ISO_MAX_VERTICES,
    node_budget: int = DEFAULT_ISO_NODE_BUDGET,
) -> Optional[dict[int, int]]:
    """Vertex-index bijection carrying facets of k1 onto facets of k2, or None."""
    if max(k1.n_vertices, k2.n_vertices) > max_vertices:
        raise IsomorphismBudgetExceeded(
            f"{max(k1.n_vertices, k2.n_vertices)} vertices exceeds limit {max_vertices}"
        )
    if k1.n_vertices != k2.n_vertices or len(k1.facets) != len(k2.facets):
        return None
    if sorted(map(len, k1.facets)) != sorted(map(len, k2.facets)):
        return None
    if k1.n_vertices == 0:
        return {}

    # disjoint union of the two vertex/facet incidence graphs
    nv = k1.n_vertices
    nf = len(k1.facets)
    # nodes: [0, nv) vertices of k1, [nv, 2nv) vertices of k2, then facets
    f1 = 2 * nv
    f2 = 2 * nv + nf
    total = 2 * nv + 2 * nf
    nbrs: list[list[int]] = [[] for _ in range(total)]
    for side, (k, voff, foff) in enumerate(((k1, 0, f1), (k2, nv, f2))):
        for fi, facet in enumerate(k.facets):
            for v in facet:
                nbrs[voff + v].append(foff + fi)
                nbrs[foff + fi].append(voff + v)
    facet_sets2 = set(k2.facets)

    def refine(colors: list[int]) -> Optional[list[int]]:
        ncol = len(set(colors))
        while True:
            sigs = [
                (colors[x], tuple(sorted(colors[y] for y in nbrs[x]))) for x in range(total)
            ]
            palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
            colors = [palette[s] for s in sigs]
            if not _balanced(colors):
                return None
            if len(palette) == ncol:
                return colors
            ncol = len(palette)

    def _balanced(colors):
        c1 = sorted(colors[:nv]) == sorted(colors[nv:2 * nv])
        return c1 and sorted(colors[f1:f2]) == sorted(colors[f2:])

    nodes = 0

    def search(colors: list[int]) -> Optional[dict[int, int]]:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise IsomorphismBudgetExceeded(f"search exceeded {node_budget} nodes")
        groups: dict[int, list[int]] = {}
        for x in range(nv):
            groups.setdefault(colors[x], []).append(x)
        cell = min((g for g in groups.values() if len(g) > 1), key=len, default=None)
        if cell is None:
            where = {colors[nv + y]: y for y in range(nv)}
            mapping = {x: where[colors[x]] for x in range(nv)}
            image = {tuple(sorted(mapping[v] for v in f)) for f in k1.facets}
            return mapping if image == facet_sets2 else None
        c = colors[cell[0]]
        v = cell[0]
        fresh = max(colors) + 1
        for w in range(nv):
            if colors[nv + w] != c:
                continue
            trial = list(colors)
            trial[v] = fresh
            trial[nv + w] = fresh
            refined = refine(trial)
            if refined is None:
                continue
            found = search(refined)
            if found is not None:
                return found
        return None

    start = [0] * (2 * nv) + [1] * (2 * nf)
    colors = refine(start)
    if colors is None:
        return None
    return search(colors)


def is_isomorphic(k1: SimplicialComplex, k2: SimplicialComplex, **budget) -> bool:
    """True iff some vertex bijection maps facets onto facets.

    Raises :class:`IsomorphismBudgetExceeded` when the search is cut off.
    """
    return find_isomorphism(k1, k2, **budget) is not None


# --------------------------------------------------------------------------
# presentations
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    """Generators 1..g; relator letters are +i / -i for generator i or its inverse."""

    n_gens: int
    relators: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.n_gens < 0:
            raise ValueError("negative generator count")
        rels = []
        for r in self.relators:
            r = tuple(int(x) for x in r)
            for x in r:
                if x == 0 or abs(x) > self.n_gens:
                    raise ValueError(f"letter {x} does not name one of {self.n_gens} generators")
            if r:
                rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    def is_empty(self) -> bool:
        return self.n_gens == 0 and not self.relators

    def __str__(self):
        def word(r):
            return " ".join(f"x{abs(x)}" + ("^-1" if x < 0 else "") for x in r)
        gens = ", ".join(f"x{i}" for i in range(1, self.n_gens + 1))
        return f"< {gens} | {', '.join(word(r) for r in self.relators)} >"


def presentation_complex(p: Presentation) -> SimplicialComplex:
    """2-complex whose edge-path group is the group presented by p.

    Each generator i is a 3-edge loop ``b -> a{i}_1 -> a{i}_2 -> b`` at the
    base vertex ``b``. A relator of length L is a disk whose boundary polygon
    (3L vertices) runs once around the loops it spells. For L = 1 the polygon
    has distinct vertices and is simply coned off. For L >= 2 polygon vertices
    repeat, so a collar of fresh vertices ``r{j}_q{t}`` is inserted before
    coning from ``r{j}_c``; every disk triangle then carries a fresh vertex
    and no unintended identifications occur.
    """
    for r in p.relators:
        if not r:
            raise ValueError("empty relator")
    facets: list[tuple[str, ...]] = []
    base = "b"

    def loop(i):
        return [base, f"a{i}_1", f"a{i}_2"]

    for i in range(1, p.n_gens + 1):
        a, b, c = loop(i)
        facets += [(a, b), (b, c), (c, a)]
    if p.n_gens == 0:
        facets.append((base,))

    for j, rel in enumerate(p.relators, 1):
        boundary: list[str] = []
        for x in rel:
            pts = loop(abs(x))
            boundary += pts if x > 0 else [pts[0], pts[2], pts[1]]
        size = len(boundary)
        centre = f"r{j}_c"
        if len(rel) == 1:
            for t in range(size):
                facets.append((boundary[t], boundary[(t + 1) % size], centre))
            continue
        ring = [f"r{j}_q{t}" for t in range(size)]
        for t in range(size):
            nxt = (t + 1) % size
            facets.append((boundary[t], boundary[nxt], ring[t]))
            facets.append((boundary[nxt], ring[t], ring[nxt]))
            facets.append((centre, ring[t], ring[nxt]))
    return SimplicialComplex(facets)


# --------------------------------------------------------------------------
# file formats
# --------------------------------------------------------------------------

class ComplexFormatError(ValueError):
    pass


def parse_facets(text: str) -> SimplicialComplex:
    facets = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            facets.append(line.split())
    return SimplicialComplex(facets)


def _token(label) -> str:
    if isinstance(label, tuple):
        return "{" + ",".join(_token(x) for x in label) + "}"
    return str(label)


def write_facets(k: SimplicialComplex) -> str:
    lines = [" ".join(_token(k.labels[v]) for v in f) for f in k.facets]
    return "".join(line + "\n" for line in lines)


def parse_presentation(text: str) -> Presentation:
    n_gens = None
    rels = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if n_gens is None:
            if len(toks) != 2 or toks[0] != "gens":
                raise ComplexFormatError(f"line {lineno}: expected 'gens <g>', got {raw!r}")
            try:
                n_gens = int(toks[1])
            except ValueError:
                raise ComplexFormatError(f"line {lineno}: bad generator count") from None
            continue
        try:
            word = tuple(int(t) for t in toks)
        except ValueError:
            raise ComplexFormatError(f"line {lineno}: relator must be signed integers") from None
        for x in word:
            if x == 0 or abs(x) > n_gens:
                raise ComplexFormatError(f"line {lineno}: letter {x} out of range")
        rels.append(word)
    if n_gens is None:
        raise ComplexFormatError("missing 'gens <g>' line")
    return Presentation(n_gens, tuple(rels))


def write_presentation(p: Presentation) -> str:
    lines = [f"gens {p.n_gens}"] + [" ".join(map(str, r)) for r in p.relators]
    return "\n".join(lines) + "\n"
