"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

import itertools

from hypothesis import strategies as st

from lchoose.assignments import LambdaAssignment, ListAssignment
from lchoose.graph import Graph
from lchoose.partitions import IntPartition


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 6) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def partitions(draw, max_total: int = 8) -> IntPartition:
    total = draw(st.integers(1, max_total))
    parts, left = [], total
    while left:
        p = draw(st.integers(1, left))
        parts.append(p)
        left -= p
    return IntPartition.of(parts)


@st.composite
def lambda_assignments(draw, n: int, lam: IntPartition, spare: int = 2) -> LambdaAssignment:
    groups, off = [], 1
    for k in lam.parts:
        groups.append(list(range(off, off + k + spare)))
        off += k + spare
    lists = []
    for _ in range(n):
        picked = set()
        for grp, k in zip(groups, lam.parts):
            picked |= set(draw(st.lists(st.sampled_from(grp), min_size=k, max_size=k, unique=True)))
        lists.append(frozenset(picked))
    return LambdaAssignment(ListAssignment(tuple(lists)), lam, tuple(frozenset(g) for g in groups))


@st.composite
def list_assignments(draw, n: int, size: int = 2, palette: int = 4) -> ListAssignment:
    cols = list(range(1, palette + 1))
    return ListAssignment(tuple(
        frozenset(draw(st.lists(st.sampled_from(cols), min_size=size, max_size=size, unique=True)))
        for _ in range(n)))
