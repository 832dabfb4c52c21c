"""Slow, independent reference deciders used to cross-check the search-based ones.

None of these use the constraint solver, k-core pruning or switching
reductions; they enumerate the whole space (with numpy for the inner loop).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .graph import Graph, canonical_form
from .gsg import PermSet
from .signed import NK, ZK, SignedGraph, palette


def naive_list_colorable(g: Graph, lists: Sequence[Iterable[int]]) -> bool:
    """Try every element of the product of the lists."""
    ls = [sorted(l) for l in lists]
    for f in itertools.product(*ls):
        if all(f[u] != f[v] for u, v in g.edges):
            return True
    return False


def _list_colorings(g: Graph, lists: Sequence[Sequence[int]], order: Sequence[int]) -> Iterator[dict[int, int]]:
    f: dict[int, int] = {}

    def rec(i: int):
        if i == len(order):
            yield dict(f)
            return
        v = order[i]
        for c in lists[v]:
            if all(f.get(u) != c for u in g.adj[v]):
                f[v] = c
                yield from rec(i + 1)
                del f[v]

    yield from rec(0)


def _canonical_lists(count: int, k: int) -> Iterator[list[tuple[int, ...]]]:
    """k-lists for ``count`` vertices up to renaming colours: new colours appear in increasing order."""
    def rec(prefix: list[tuple[int, ...]], used: int):
        if len(prefix) == count:
            yield list(prefix)
            return
        for fresh in range(k + 1):
            for old in itertools.combinations(range(1, used + 1), k - fresh):
                lst = old + tuple(range(used + 1, used + fresh + 1))
                prefix.append(lst)
                yield from rec(prefix, used + fresh)
                prefix.pop()

    yield from rec([], 0)


def naive_k_choosable(g: Graph, k: int) -> bool:
    """Exhaustive k-choosability.

    Lists of all but the last vertex are enumerated up to colour renaming.
    The last vertex v can be given a bad list exactly when some k colours
    appear on N(v) in every colouring of the rest (or the rest has none).
    """
    if g.n == 0:
        return True
    if k == 0:
        return False
    last = g.n - 1
    rest = list(range(last))
    nbrs = sorted(g.adj[last])
    for lists in _canonical_lists(last, k):
        common: set[int] | None = None
        for f in _list_colorings(g, lists, rest):
            seen = {f[u] for u in nbrs}
            common = seen if common is None else common & seen
            if len(common) < k:
                break
        if common is None or len(common) >= k:
            return False
    return True


# ---------------------------------------------------------------- signed and permutation signatures

def _component_graphs(g: Graph) -> list[Graph]:
    return [g.induced(c)[0] for c in g.components() if len(c) > 1]


def _all_maps(values: Sequence[int], n: int) -> np.ndarray:
    return np.array(list(itertools.product(values, repeat=n)), dtype=np.int64).reshape(-1, n)


def _signed_edge_tables(h: Graph, k: int, mode: str) -> tuple[np.ndarray, np.ndarray]:
    cols = _all_maps(palette(k, mode), h.n)
    pos, neg = [], []
    for u, v in h.edges:
        a, b = cols[:, u], cols[:, v]
        pos.append(a != b)
        neg.append(a != -b if mode == NK else (a + b) % k != 0)
    return np.array(pos), np.array(neg)


def brute_signed_colorable(sg: SignedGraph, k: int, mode: str) -> bool:
    """Every map V -> palette, checked edge by edge."""
    h = sg.graph
    if h.n == 0:
        return True
    pos, neg = _signed_edge_tables(h, k, mode)
    ok = np.ones(pos.shape[1] if h.m else 1, dtype=bool)
    for e, s in enumerate(sg.sigma):
        ok &= pos[e] if s > 0 else neg[e]
    return bool(ok.any())


@lru_cache(maxsize=None)
def _signed_component_all(form: tuple, n: int, edges: tuple, k: int, mode: str) -> bool:
    h = Graph(n, edges)
    pos, neg = _signed_edge_tables(h, k, mode)
    for signs in itertools.product((False, True), repeat=h.m):
        ok = np.ones(pos.shape[1], dtype=bool)
        for e, s in enumerate(signs):
            ok &= neg[e] if s else pos[e]
            if not ok.any():
                return False
    return True


def naive_signed_all(g: Graph, k: int, mode: str) -> bool:
    """Whether every one of the 2^m signatures is colourable, without switching."""
    if mode not in (NK, ZK):
        raise ValueError(f"unknown mode {mode!r}")
    for h in _component_graphs(g):
        form = canonical_form(h)
        if not _signed_component_all(form, h.n, h.edges, k, mode):
            return False
    return True


def _perm_tables(h: Graph, s: PermSet, k: int) -> np.ndarray:
    cols = _all_maps(range(1, k + 1), h.n)
    out = np.zeros((h.m, len(s), cols.shape[0]), dtype=bool)
    for e, (u, v) in enumerate(h.edges):
        for i, p in enumerate(s.members):
            img = np.array(p.images, dtype=np.int64) + 1
            out[e, i] = img[cols[:, u] - 1] != cols[:, v]
    return out


def _combine(tables: np.ndarray) -> np.ndarray:
    acc = np.ones((1, tables.shape[-1]), dtype=bool)
    for t in tables:
        acc = (acc[:, None, :] & t[None, :, :]).reshape(-1, tables.shape[-1])
    return acc


def naive_gsg_all(g: Graph, s: PermSet, k: int) -> bool:
    """Whether every S-signature (one member of ``s`` per edge) admits a colouring.

    Edges are split into two halves; the colourable signatures are the
    nonzero entries of the product of the two halves' feasibility matrices.
    """
    if s.k != k:
        raise ValueError("permutation set and k disagree")
    for h in _component_graphs(g):
        tables = _perm_tables(h, s, k)
        half = h.m // 2
        a = _combine(tables[:half]).astype(np.float32)
        b = _combine(tables[half:]).astype(np.float32)
        if (a @ b.T == 0).any():
            return False
    return True
