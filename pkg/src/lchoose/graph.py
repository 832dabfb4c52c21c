"""Simple undirected graphs, generators, joins, line graphs and plane embeddings.

Vertices are the dense integers ``0..n-1``.  Edges are stored as sorted pairs
``(u, v)`` with ``u < v`` in a sorted tuple, so the edge order (and every edge
index derived from it) is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...] = ()
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = norm_edge(u, v)
            if e in seen:
                raise ValueError(f"parallel edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise ValueError("labels must name every vertex")
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels=None) -> "Graph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges), labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edge_index

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def arcs(self) -> list[Edge]:
        """Both orientations of every edge (the symmetric digraph view)."""
        out = []
        for u, v in self.edges:
            out.append((u, v))
            out.append((v, u))
        return out

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices``; returns it with the old index of each new vertex."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        labels = None if self.labels is None else tuple(self.labels[v] for v in keep)
        return Graph(len(keep), tuple(edges), labels), keep

    def edge_subgraph(self, edge_ids: Iterable[int]) -> "Graph":
        """Spanning subgraph keeping only the listed edge indices."""
        return Graph(self.n, tuple(self.edges[i] for i in edge_ids))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, tuple(norm_edge(perm[u], perm[v]) for u, v in self.edges))

    def spanning_forest(self) -> list[int]:
        """Edge indices of a BFS spanning forest (deterministic)."""
        seen = [False] * self.n
        tree = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            queue = [s]
            for x in queue:
                for y in sorted(self.adj[x]):
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
                        tree.append(self.edge_index[norm_edge(x, y)])
        return sorted(tree)

    def k_core(self, k: int) -> list[int]:
        """Vertices surviving repeated deletion of vertices of degree < k."""
        deg = [len(a) for a in self.adj]
        alive = [True] * self.n
        stack = [v for v in range(self.n) if deg[v] < k]
        while stack:
            v = stack.pop()
            if not alive[v]:
                continue
            alive[v] = False
            for w in self.adj[v]:
                if alive[w]:
                    deg[w] -= 1
                    if deg[w] < k:
                        stack.append(w)
        return [v for v in range(self.n) if alive[v]]


@dataclass(frozen=True)
class VertexPartition:
    blocks: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "VertexPartition":
        return cls(tuple(frozenset(b) for b in blocks))

    def check(self, n: int) -> None:
        seen: set[int] = set()
        for b in self.blocks:
            if seen & b:
                raise ValueError("blocks are not disjoint")
            seen |= b
        if seen != set(range(n)):
            raise ValueError("blocks do not cover the vertex set")

    def block_of(self) -> dict[int, int]:
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def is_independent(self, g: Graph) -> bool:
        where = self.block_of()
        return all(where[u] != where[v] for u, v in g.edges)


# ---------------------------------------------------------------- generators

def make_empty(n: int) -> Graph:
    return Graph(n)


def make_complete(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def make_path(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def make_complete_bipartite(m: int, n: int) -> Graph:
    return Graph(m + n, tuple((i, m + j) for i in range(m) for j in range(n)))


def make_complete_multipartite(sizes: Sequence[int]) -> Graph:
    return join([make_empty(s) for s in sizes])


def make_wheel(k: int) -> Graph:
    """Cycle C_k plus a hub (vertex k) adjacent to every rim vertex."""
    rim = make_cycle(k)
    return Graph(k + 1, rim.edges + tuple((i, k) for i in range(k)))


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    edges, off = [], 0
    for p in parts:
        edges.extend((u + off, v + off) for u, v in p.edges)
        off += p.n
    return Graph(off, tuple(edges))


@dataclass(frozen=True)
class Join:
    graph: Graph
    part_of: tuple[int, ...]
    offsets: tuple[int, ...]


def join_with_parts(parts: Sequence[Graph]) -> Join:
    """Disjoint union plus every edge between distinct parts, with the part index of each vertex."""
    if not parts:
        raise ValueError("join needs at least one part")
    part_of, offsets, off = [], [], 0
    for i, p in enumerate(parts):
        offsets.append(off)
        part_of.extend([i] * p.n)
        off += p.n
    edges = list(disjoint_union(parts).edges)
    for u in range(off):
        for v in range(u + 1, off):
            if part_of[u] != part_of[v]:
                edges.append((u, v))
    return Join(Graph(off, tuple(edges)), tuple(part_of), tuple(offsets))


def join(parts: Sequence[Graph]) -> Graph:
    return join_with_parts(parts).graph


@dataclass(frozen=True)
class LineGraph:
    graph: Graph
    source_edges: tuple[Edge, ...]


def line_graph(g: Graph) -> LineGraph:
    """Vertex i of the result is edge ``g.edges[i]``; adjacent iff the edges share an endpoint."""
    inc: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        inc[u].append(i)
        inc[v].append(i)
    edges = set()
    for lst in inc:
        for a, b in itertools.combinations(lst, 2):
            edges.add(norm_edge(a, b))
    labels = tuple(f"{u}-{v}" for u, v in g.edges)
    return LineGraph(Graph(g.m, tuple(edges), labels), g.edges)


# ---------------------------------------------------------------- canonical forms

def _connected_canonical(g: Graph) -> tuple:
    n = g.n
    if n > 10:
        raise ValueError("canonical forms are only supported for components of at most 10 vertices")
    # Colour refinement; only permutations inside the stable classes are tried.
    colour = [0] * n
    for _ in range(n):
        sig = [(colour[v], tuple(sorted(colour[w] for w in g.adj[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if new == colour:
            break
        colour = new
    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(colour[v], []).append(v)
    ordered = [classes[c] for c in sorted(classes)]
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in ordered)):
        perm = [0] * n
        pos = 0
        for block in choice:
            for v in block:
                perm[v] = pos
                pos += 1
        key = tuple(sorted(norm_edge(perm[u], perm[v]) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return (n, best)


def canonical_form(g: Graph) -> tuple:
    """Isomorphism-invariant key: the sorted canonical forms of the connected components."""
    keys = []
    for comp in g.components():
        sub, _ = g.induced(comp)
        keys.append(_connected_canonical(sub))
    return tuple(sorted(keys))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_form(g) == canonical_form(h)


def graphs_up_to_iso(n: int) -> list[Graph]:
    """All graphs on exactly ``n`` vertices up to isomorphism (edge count, then key order)."""
    pairs = list(itertools.combinations(range(n), 2))
    found: dict[tuple, Graph] = {}
    for bits in range(1 << len(pairs)):
        es = tuple(p for i, p in enumerate(pairs) if bits >> i & 1)
        g = Graph(n, es)
        found.setdefault(canonical_form(g), g)
    return sorted(found.values(), key=lambda g: (g.m, g.edges))


def graphs_with_edges(max_edges: int) -> list[Graph]:
    """All graphs with at most ``max_edges`` edges and no isolated vertices, up to isomorphism."""
    level = {canonical_form(Graph(0)): Graph(0)}
    out = list(level.values())
    for _ in range(max_edges):
        nxt: dict[tuple, Graph] = {}
        for g in level.values():
            cands = [(u, v) for u, v in itertools.combinations(range(g.n), 2) if not g.has_edge(u, v)]
            cands += [(u, g.n) for u in range(g.n)]
            cands.append((g.n, g.n + 1))
            for u, v in cands:
                h = Graph(max(g.n, u + 1, v + 1), g.edges + ((u, v),))
                nxt.setdefault(canonical_form(h), h)
        level = nxt
        out.extend(sorted(level.values(), key=lambda g: (g.n, g.edges)))
    return out


# ---------------------------------------------------------------- plane embeddings

def _succ(rot: Sequence[int], x: int) -> int:
    i = rot.index(x)
    return rot[(i + 1) % len(rot)]


def trace_faces(n: int, rotation: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Face walks of a rotation system.

    The walk leaving dart ``(u, v)`` continues with ``(v, w)`` where ``w``
    follows ``u`` in the rotation at ``v``.  Each face is reported as its
    vertex sequence, rotated to start at its smallest dart.
    """
    used: set[Edge] = set()
    faces = []
    for u in range(n):
        for v in rotation[u]:
            if (u, v) in used:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in used:
                used.add((a, b))
                walk.append((a, b))
                a, b = b, _succ(rotation[b], a)
            start = walk.index(min(walk))
            walk = walk[start:] + walk[:start]
            faces.append(tuple(d[0] for d in walk))
    return sorted(faces)


def face_darts(face: Sequence[int]) -> list[Edge]:
    return [(face[i], face[(i + 1) % len(face)]) for i in range(len(face))]


@dataclass(frozen=True)
class EmbeddedGraph:
    """A graph with a rotation system (cyclic neighbour order at each vertex)."""

    graph: Graph
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rot = tuple(tuple(r) for r in self.rotation)
        object.__setattr__(self, "rotation", rot)
        if len(rot) != self.graph.n:
            raise ValueError("rotation must list every vertex")
        for v, r in enumerate(rot):
            if len(set(r)) != len(r) or set(r) != self.graph.adj[v]:
                raise ValueError(f"rotation at {v} must list each incident edge exactly once")

    @cached_property
    def face_list(self) -> list[tuple[int, ...]]:
        return trace_faces(self.graph.n, self.rotation)

    def euler_characteristic(self) -> int:
        return self.graph.n - self.graph.m + len(self.face_list)

    def is_planar_embedding(self) -> bool:
        """V - E + F = 1 + (number of components)."""
        comps = len(self.graph.components()) if self.graph.n else 0
        return self.euler_characteristic() == 1 + comps


def faces(e: EmbeddedGraph) -> list[tuple[int, ...]]:
    if not e.graph.is_connected():
        raise ValueError("face tracing requires a connected graph")
    return list(e.face_list)


@dataclass(frozen=True)
class DualGraph:
    """Multigraph view of the dual: one vertex per face, one edge per primal edge.

    ``edges[i]`` joins the two faces on either side of primal edge ``i``; a
    bridge gives a loop ``(f, f)``.
    """

    faces: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.faces)

    def degrees(self, edge_ids: Iterable[int] | None = None) -> list[int]:
        deg = [0] * self.n
        ids = range(len(self.edges)) if edge_ids is None else edge_ids
        for i in ids:
            a, b = self.edges[i]
            deg[a] += 1
            deg[b] += 1
        return deg


def dual(e: EmbeddedGraph) -> DualGraph:
    fl = faces(e)
    where: dict[Edge, int] = {}
    for i, f in enumerate(fl):
        for d in face_darts(f):
            where[d] = i
    edges = tuple((where[(u, v)], where[(v, u)]) for u, v in e.graph.edges)
    return DualGraph(tuple(fl), edges)


@dataclass
class PlaneBuilder:
    """Mutable, single-owner builder that keeps a rotation system planar by construction."""

    rotation: list[list[int]] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)

    @classmethod
    def triangle(cls, labels=("u", "v", "w")) -> "PlaneBuilder":
        # Rotations chosen so the two faces are (0,1,2) and (0,2,1).
        return cls([[1, 2], [2, 0], [0, 1]], list(labels))

    @classmethod
    def from_embedding(cls, e: EmbeddedGraph) -> "PlaneBuilder":
        labels = list(e.graph.labels) if e.graph.labels else [str(i) for i in range(e.graph.n)]
        return cls([list(r) for r in e.rotation], labels)

    @property
    def n(self) -> int:
        return len(self.rotation)

    def faces(self) -> list[tuple[int, ...]]:
        return trace_faces(self.n, self.rotation)

    def find_face(self, required: Iterable[int], size: int | None = None) -> tuple[int, ...]:
        req = set(required)
        hits = [f for f in self.faces() if req <= set(f) and (size is None or len(f) == size)]
        if len(hits) != 1:
            raise ValueError(f"expected one face through {sorted(req)}, found {len(hits)}")
        return hits[0]

    def add_vertex_in_face(self, face: Sequence[int], corners: Iterable[int], label: str | None = None) -> int:
        """Place a new vertex inside ``face`` adjacent to the given corners of it."""
        corners = set(corners)
        x = self.n
        darts = face_darts(face)
        order = []
        for (p, c) in [(darts[i - 1][0], darts[i][0]) for i in range(len(darts))]:
            if c not in corners:
                continue
            r = self.rotation[c]
            r.insert(r.index(p) + 1, x)
            order.append(c)
        # Around x the corners appear in the reverse of the walk order.
        self.rotation.append(order[::-1])
        self.labels.append(label if label is not None else str(x))
        return x

    def freeze(self) -> EmbeddedGraph:
        edges = {norm_edge(u, v) for u, r in enumerate(self.rotation) for v in r}
        g = Graph(self.n, tuple(edges), tuple(self.labels))
        return EmbeddedGraph(g, tuple(tuple(r) for r in self.rotation))


def embed_cycle(n: int) -> EmbeddedGraph:
    g = make_cycle(n)
    rot = tuple(((i + 1) % n, (i - 1) % n) for i in range(n))
    return EmbeddedGraph(g, rot)


def embed_k4() -> EmbeddedGraph:
    b = PlaneBuilder.triangle(("0", "1", "2"))
    b.add_vertex_in_face(b.faces()[0], [0, 1, 2], "3")
    return b.freeze()
