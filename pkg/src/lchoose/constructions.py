"""Explicit graphs: a uniquely 4-colourable triangulation, a planar graph that is not
{1,3}-choosable, and round-robin matchings of K_n for edge lambda-colouring."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .assignments import LambdaAssignment, ListAssignment, validate_lambda
from .graph import EmbeddedGraph, Graph, PlaneBuilder, make_complete, norm_edge
from .partitions import IntPartition, as_partition
from .solver import (count_colorings, is_proper_edge_coloring, solve_k, solve_list,
                     solve_list_edges)

DEFAULT_SEED = 2024
TRIANGULATION_FACES = 24
COUNT_NODE_BUDGET = 1_000_000


class ConstructionError(AssertionError):
    """A built object failed its own verification."""


def build_unique_triangulation(seed: int = DEFAULT_SEED) -> EmbeddedGraph:
    """Stack vertices into random faces of a triangle until there are 24 faces.

    Every insertion joins the new vertex to all three corners, so the colouring
    stays unique up to renaming (24 colourings with four colours); this is
    recounted after every insertion.
    """
    rng = random.Random(seed)
    b = PlaneBuilder.triangle()
    while len(b.faces()) < TRIANGULATION_FACES:
        face = rng.choice(b.faces())
        b.add_vertex_in_face(face, face, f"x{b.n - 2}")
        count = count_colorings(b.freeze().graph, 4)
        if count != 24:
            raise ConstructionError(f"{count} colourings after inserting vertex {b.n - 1}")
    return b.freeze()


def all_four_colorings(g: Graph) -> list[tuple[int, ...]]:
    """Every 4-colouring of a uniquely 4-colourable graph, sorted."""
    base = solve_k(g, 4)
    if not base.colorable:
        raise ConstructionError("graph is not 4-colourable")
    out = sorted({tuple(p[c - 1] for c in base.witness) for p in itertools.permutations(range(1, 5))})
    if count_colorings(g, 4, node_budget=COUNT_NODE_BUDGET) != len(out):
        raise ConstructionError("graph is not uniquely 4-colourable")
    return out


@dataclass(frozen=True)
class Correspondence:
    """Designated faces, each paired with a colouring that uses 1, 2, 3 on it."""

    faces: tuple[tuple[int, ...], ...]
    coloring_of: tuple[tuple[int, ...], ...]
    extra: tuple[int, ...]   # vertices added to move faces onto colours {1,2,3}

    def corner(self, index: int, color: int) -> int:
        """The vertex of face ``index`` that its colouring gives ``color``."""
        (v,) = [x for x in self.faces[index] if self.coloring_of[index][x] == color]
        return v

    def check(self, g: Graph) -> None:
        if len(set(self.faces)) != len(self.faces) or len(set(self.coloring_of)) != len(self.faces):
            raise ConstructionError("pairing is not a bijection")
        for f, phi in zip(self.faces, self.coloring_of):
            if {phi[v] for v in f} != {1, 2, 3}:
                raise ConstructionError(f"face {f} is not coloured 1, 2, 3")


def build_correspondence(e: EmbeddedGraph) -> tuple[EmbeddedGraph, Correspondence]:
    """Pair sorted faces with sorted colourings, moving faces that see colour 4.

    For such a face a vertex z is added adjacent to its corners; z is forced
    to the missing colour, and the sub-face through z avoiding the colour-4
    corner takes the face's place.
    """
    fl = e.face_list
    colorings = all_four_colorings(e.graph)
    if len(fl) != len(colorings):
        raise ConstructionError(f"{len(fl)} faces but {len(colorings)} colourings")
    b = PlaneBuilder.from_embedding(e)
    chosen: list[tuple[int, ...]] = []
    forced: list[dict[int, int]] = []
    extra = []
    for i, (f, phi) in enumerate(zip(fl, colorings)):
        used = {phi[v] for v in f}
        if used == {1, 2, 3}:
            chosen.append(f)
            forced.append({})
            continue
        (missing,) = {1, 2, 3} - used
        z = b.add_vertex_in_face(f, f, f"z{i}")
        extra.append(z)
        keep = [v for v in f if phi[v] != 4]
        chosen.append(b.find_face([z, *keep], size=3))
        forced.append({z: missing})
    out = b.freeze()
    final = all_four_colorings(out.graph)
    if len(final) != 24:
        raise ConstructionError("added vertices broke unique colourability")
    # Each original colouring extends uniquely; find that extension.
    by_prefix = {c[: e.graph.n]: c for c in final}
    coloring_of = []
    for phi, fz in zip(colorings, forced):
        ext = by_prefix[phi]
        for z, c in fz.items():
            if ext[z] != c:
                raise ConstructionError(f"vertex {z} is not forced to colour {c}")
        coloring_of.append(ext)
    corr = Correspondence(tuple(chosen), tuple(coloring_of), tuple(extra))
    faces_now = set(out.face_list)
    if not all(f in faces_now for f in corr.faces):
        raise ConstructionError("a designated face is not a face of the result")
    corr.check(out.graph)
    return out, corr


CORE_LIST = frozenset({1, 2, 3, 4})
GADGET_LISTS = {"a": frozenset({1, 2, 4, 5}), "b": frozenset({1, 3, 4, 5}), "c": frozenset({2, 3, 4, 5})}
UNIT_GROUP = frozenset({4})
TRIPLE_GROUP = frozenset({1, 2, 3, 5})


@dataclass(frozen=True)
class Non13Instance:
    embedding: EmbeddedGraph
    assignment: LambdaAssignment
    core: tuple[int, ...]
    correspondence: Correspondence


def build_non_13_choosable(seed: int = DEFAULT_SEED) -> Non13Instance:
    """A planar graph with a {1,3}-assignment it cannot be coloured from.

    Each designated face (v1, v2, v3), named by the colours its colouring
    uses, receives a triangle a, b, c with a ~ v1, v2, b ~ v1, v3 and
    c ~ v2, v3.  Core vertices get {1,2,3,4}; a, b, c get lists that leave
    only {4, 5} once the face is coloured 1, 2, 3.
    """
    core_emb, corr = build_correspondence(build_unique_triangulation(seed))
    b = PlaneBuilder.from_embedding(core_emb)
    ncore = core_emb.graph.n
    kinds = {}
    for i, face in enumerate(corr.faces):
        v1, v2, v3 = (corr.corner(i, c) for c in (1, 2, 3))
        a = b.add_vertex_in_face(face, [v1, v2], f"a{i}")
        quad = b.find_face([v1, v2, v3, a], size=4)
        bb = b.add_vertex_in_face(quad, [v1, v3, a], f"b{i}")
        quad = b.find_face([a, v2, v3, bb], size=4)
        c = b.add_vertex_in_face(quad, [a, v2, v3, bb], f"c{i}")
        kinds.update({a: "a", bb: "b", c: "c"})
    emb = b.freeze()
    lists = tuple(CORE_LIST if v < ncore else GADGET_LISTS[kinds[v]] for v in range(emb.graph.n))
    la = LambdaAssignment(ListAssignment(lists), IntPartition((3, 1)), (TRIPLE_GROUP, UNIT_GROUP))
    if not validate_lambda(la):  # pragma: no cover
        raise ConstructionError("assignment is not a {1,3}-assignment")
    if not emb.is_planar_embedding():  # pragma: no cover
        raise ConstructionError("embedding violates Euler's formula")
    return Non13Instance(emb, la, tuple(range(ncore)), corr)


def verify_non_13(inst: Non13Instance):
    """Solve core-first; returns the verdict (expected: not colourable, 24 core completions)."""
    return solve_list(inst.embedding.graph, inst.assignment.lists, first=inst.core)


# ---------------------------------------------------------------- K_n matchings

@dataclass(frozen=True)
class RotationScheme:
    n: int
    matchings: tuple[tuple[tuple[int, int], ...], ...]

    def union(self, indices: Sequence[int]) -> Graph:
        """Subgraph of K_n formed by M_i for the given 1-based indices."""
        edges = [e for i in indices for e in self.matchings[i - 1]]
        return Graph.from_edges(self.n, edges)

    def check(self) -> None:
        seen = set()
        for m in self.matchings:
            verts = [x for e in m for x in e]
            if sorted(verts) != list(range(self.n)):
                raise ConstructionError("a matching is not perfect")
            seen.update(m)
        if len(seen) != self.n * (self.n - 1) // 2:
            raise ConstructionError("matchings do not partition the edges")


def rotation_matchings(n: int) -> RotationScheme:
    """Round-robin 1-factorisation: rotate a starter matching around v0."""
    if n % 2 or n < 4:
        raise ValueError("n must be even and at least 4")
    m1 = [(0, 1)] + [(n - i, i + 1) for i in range(1, n // 2)]

    def rot(v: int, t: int) -> int:
        return v if v == 0 else (v - 1 + t) % (n - 1) + 1

    ms = tuple(tuple(sorted(norm_edge(rot(u, t), rot(v, t)) for u, v in m1)) for t in range(n - 1))
    scheme = RotationScheme(n, ms)
    scheme.check()
    return scheme


def edge_lambda_color_kn(n: int, lam, a: LambdaAssignment) -> list[int]:
    """Colour E(K_n) from a lambda-assignment on its edges (indexed as in ``make_complete(n)``).

    Group i colours the edges of the next ``lam[i]`` consecutive matchings.
    """
    lam = as_partition(lam)
    if lam.total != n - 1 or max(lam.parts) > 3:
        raise ValueError("lambda must partition n-1 into parts of size at most 3")
    if a.partition != lam:
        raise ValueError(f"assignment is for {a.partition!r}, not {lam!r}")
    rep = validate_lambda(a)
    if not rep:
        raise ValueError(rep.problem)
    kn = make_complete(n)
    if len(a.lists) != kn.m:
        raise ValueError(f"need one list per edge of K_{n}")
    scheme = rotation_matchings(n)
    out = [0] * kn.m
    start = 1
    for i, k in enumerate(lam.parts):
        sub = scheme.union(range(start, start + k))
        start += k
        ids = [kn.edge_index[e] for e in sub.edges]
        verdict = solve_list_edges(sub, [a.lists[j] & a.groups[i] for j in ids])
        if not verdict.colorable:
            raise ConstructionError(f"edges of group {i} could not be coloured")
        for j, c in zip(ids, verdict.witness):
            out[j] = c
    if not is_proper_edge_coloring(kn, out) or any(out[j] not in a.lists[j] for j in range(kn.m)):
        raise ConstructionError("edge colouring failed verification")
    return out
