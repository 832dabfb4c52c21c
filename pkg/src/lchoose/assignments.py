"""List assignments, lambda-assignments and their canonical enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .graph import Graph
from .partitions import IntPartition, as_partition


class BudgetExceeded(RuntimeError):
    pass


DEFAULT_CELL_LIMIT = 24


@dataclass(frozen=True)
class ListAssignment:
    lists: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, lists: Iterable[Iterable[int]]) -> "ListAssignment":
        return cls(tuple(frozenset(int(c) for c in l) for l in lists))

    @classmethod
    def constant(cls, n: int, colors: Iterable[int]) -> "ListAssignment":
        s = frozenset(colors)
        return cls((s,) * n)

    def __len__(self) -> int:
        return len(self.lists)

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v]

    def colors(self) -> frozenset[int]:
        return frozenset().union(*self.lists) if self.lists else frozenset()

    def uniform_size(self) -> int | None:
        sizes = {len(l) for l in self.lists}
        return sizes.pop() if len(sizes) == 1 else None

    def restrict(self, vertices: Sequence[int]) -> "ListAssignment":
        return ListAssignment(tuple(self.lists[v] for v in vertices))

    def intersect(self, group: Iterable[int]) -> "ListAssignment":
        g = frozenset(group)
        return ListAssignment(tuple(l & g for l in self.lists))


@dataclass(frozen=True)
class LambdaAssignment:
    """A list assignment together with colour groups aligned with ``partition.parts``."""

    base: ListAssignment
    partition: IntPartition
    groups: tuple[frozenset[int], ...]

    @classmethod
    def from_groups(cls, lists, groups, partition=None) -> "LambdaAssignment":
        """Build from groups in any order; each group's part is read off the first list."""
        base = lists if isinstance(lists, ListAssignment) else ListAssignment.of(lists)
        gs = [frozenset(g) for g in groups]
        if not base.lists:
            raise ValueError("cannot infer group sizes for an empty graph")
        sizes = [len(base.lists[0] & g) for g in gs]
        order = sorted(range(len(gs)), key=lambda i: -sizes[i])
        inferred = IntPartition(tuple(sizes[i] for i in order)) if all(sizes) else None
        if partition is not None:
            partition = as_partition(partition)
            if inferred != partition:
                raise ValueError(f"groups induce {inferred!r}, not {partition!r}")
        if inferred is None:
            raise ValueError("some colour group misses the first list entirely")
        return cls(base, inferred, tuple(gs[i] for i in order))

    @property
    def lists(self) -> tuple[frozenset[int], ...]:
        return self.base.lists

    def group_index(self, part: int) -> int:
        """Index of the first group whose part equals ``part``."""
        return self.partition.parts.index(part)

    def restrict(self, vertices: Sequence[int]) -> "LambdaAssignment":
        return LambdaAssignment(self.base.restrict(vertices), self.partition, self.groups)


@dataclass(frozen=True)
class Validation:
    ok: bool
    problem: str | None = None
    vertex: int | None = None
    group: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_lambda(a: LambdaAssignment) -> Validation:
    if len(a.groups) != a.partition.q:
        return Validation(False, f"{len(a.groups)} groups for {a.partition.q} parts")
    for i, j in itertools.combinations(range(len(a.groups)), 2):
        if a.groups[i] & a.groups[j]:
            return Validation(False, f"groups {i} and {j} overlap", group=i)
    stray = a.base.colors() - frozenset().union(*a.groups)
    if stray:
        return Validation(False, f"colours {sorted(stray)} lie in no group")
    for v, lst in enumerate(a.lists):
        for i, (grp, k) in enumerate(zip(a.groups, a.partition.parts)):
            got = len(lst & grp)
            if got != k:
                return Validation(False, f"vertex {v} meets group {i} in {got} colours, expected {k}",
                                  vertex=v, group=i)
    return Validation(True)


def list_complexity(a: ListAssignment | LambdaAssignment) -> int:
    lists = a.lists
    return len(set(lists))


# ---------------------------------------------------------------- unit-part normal form

@dataclass(frozen=True)
class Specialized:
    """A special lambda-assignment plus the map back to the original lists."""

    assignment: LambdaAssignment
    original: LambdaAssignment
    shared: Mapping[int, int]          # group index -> the one colour kept
    own: tuple[Mapping[int, int], ...]  # per vertex: shared colour -> original colour

    def translate(self, coloring: Sequence[int]) -> list[int]:
        return [self.own[v].get(c, c) for v, c in enumerate(coloring)]


def specialize(a: LambdaAssignment) -> Specialized:
    """Collapse every unit-part group to one shared colour (its smallest)."""
    unit = [i for i, k in enumerate(a.partition.parts) if k == 1]
    shared = {i: min(a.groups[i]) for i in unit}
    new_lists, own = [], []
    for lst in a.lists:
        out = set(lst)
        back = {}
        for i in unit:
            (mine,) = lst & a.groups[i]
            out.discard(mine)
            out.add(shared[i])
            back[shared[i]] = mine
        new_lists.append(frozenset(out))
        own.append(back)
    groups = tuple(frozenset([shared[i]]) if i in shared else g for i, g in enumerate(a.groups))
    special = LambdaAssignment(ListAssignment(tuple(new_lists)), a.partition, groups)
    return Specialized(special, a, shared, tuple(own))


def is_special(a: LambdaAssignment) -> bool:
    return all(len(g) == 1 for g, k in zip(a.groups, a.partition.parts) if k == 1)


# ---------------------------------------------------------------- canonical enumeration

def _mask_key(mask: int, n: int) -> int:
    # Vertex 0 is the most significant position.
    return int(format(mask, f"0{n}b")[::-1], 2) if n else 0


@lru_cache(maxsize=64)
def coverage_multisets(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Multisets of non-empty vertex masks covering every vertex exactly ``k`` times.

    A colour group up to renaming of its colours is exactly such a multiset:
    each colour is recorded by the set of vertices whose list contains it.
    Masks come out in non-increasing key order, the all-vertices mask first.
    """
    rem = [k] * n
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def rec(prev_key: int) -> None:
        live = [v for v in range(n) if rem[v] > 0]
        if not live:
            out.append(tuple(chosen))
            return
        first = live[0]
        avail = 0
        for v in live[1:]:
            avail |= 1 << v
        subs = []
        sub = avail
        while True:
            subs.append(sub | (1 << first))
            if sub == 0:
                break
            sub = (sub - 1) & avail
        subs.sort(key=lambda m: -_mask_key(m, n))
        for m in subs:
            key = _mask_key(m, n)
            if key > prev_key:
                continue
            bits = [v for v in range(n) if m >> v & 1]
            for v in bits:
                rem[v] -= 1
            chosen.append(m)
            rec(key)
            chosen.pop()
            for v in bits:
                rem[v] += 1

    rec(1 << n)
    return tuple(out)


def _group_lists(masks: Sequence[int], n: int, offset: int) -> tuple[list[set[int]], frozenset[int]]:
    lists: list[set[int]] = [set() for _ in range(n)]
    for j, m in enumerate(masks):
        for v in range(n):
            if m >> v & 1:
                lists[v].add(offset + j)
    return lists, frozenset(range(offset, offset + len(masks)))


def count_cells(n: int, lam: IntPartition) -> int:
    return n * lam.total


def enumerate_lambda_assignments(g: Graph | int, lam, special: bool = False,
                                 cell_limit: int = DEFAULT_CELL_LIMIT,
                                 override: bool = False) -> Iterator[LambdaAssignment]:
    """Yield lambda-assignments of ``g`` up to colour renaming inside each group.

    Group ``i`` draws from its own block of ``parts[i] * n`` colours, which is
    enough for any assignment once unused colours are dropped.  Groups with
    equal parts are emitted in non-decreasing canonical order, so swapping
    them yields nothing new.  With ``special`` every unit part is a single
    colour shared by all vertices.  The first assignment yielded gives every
    vertex the same list.
    """
    n = g if isinstance(g, int) else g.n
    lam = as_partition(lam)
    if n == 0:
        return
    if not override and count_cells(n, lam) > cell_limit:
        raise BudgetExceeded(f"{n} vertices x total {lam.total} exceeds the cell limit {cell_limit}")
    full = (1 << n) - 1
    per_part: list[tuple[tuple[int, ...], ...]] = []
    for k in lam.parts:
        if special and k == 1:
            per_part.append(((full,),))
        else:
            per_part.append(coverage_multisets(n, k))
    offsets, off = [], 1
    for k in lam.parts:
        offsets.append(off)
        off += k * n
    # Equal parts are adjacent because parts are sorted.
    runs: list[list[int]] = []
    for i, k in enumerate(lam.parts):
        if runs and lam.parts[runs[-1][0]] == k:
            runs[-1].append(i)
        else:
            runs.append([i])
    run_iters = [itertools.combinations_with_replacement(range(len(per_part[r[0]])), len(r)) for r in runs]
    for choice in itertools.product(*[list(it) for it in run_iters]):
        lists: list[set[int]] = [set() for _ in range(n)]
        groups = []
        for run, idxs in zip(runs, choice):
            for i, idx in zip(run, idxs):
                part_lists, grp = _group_lists(per_part[i][idx], n, offsets[i])
                for v in range(n):
                    lists[v] |= part_lists[v]
                groups.append(grp)
        yield LambdaAssignment(ListAssignment(tuple(frozenset(l) for l in lists)), lam, tuple(groups))


def count_lambda_assignments(n: int, lam, special: bool = False) -> int:
    from math import comb

    lam = as_partition(lam)
    total = 1
    i = 0
    parts = lam.parts
    while i < len(parts):
        j = i
        while j < len(parts) and parts[j] == parts[i]:
            j += 1
        size = 1 if (special and parts[i] == 1) else len(coverage_multisets(n, parts[i]))
        total *= comb(size + (j - i) - 1, j - i)
        i = j
    return total


def merge_groups(a: LambdaAssignment, coarse: IntPartition, certificate) -> LambdaAssignment:
    """View ``a`` as a ``coarse``-assignment by uniting the groups in each certificate block.

    ``certificate.grouping[i]`` lists the part indices of ``a.partition`` merged
    into block ``i``, as returned by ``is_refinement(a.partition, coarse)``.
    """
    groups = tuple(frozenset().union(*(a.groups[j] for j in block)) for block in certificate.grouping)
    return LambdaAssignment(a.base, coarse, groups)


# ---------------------------------------------------------------- symmetric assignments

@dataclass(frozen=True)
class SymmetricAssignment:
    lists: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, lists: Iterable[Iterable[int]]) -> "SymmetricAssignment":
        return cls(tuple(frozenset(int(c) for c in l) for l in lists))


def is_symmetric(a: SymmetricAssignment | ListAssignment) -> bool:
    return all(0 not in l and all(-c in l for c in l) for l in a.lists)


def symmetric_to_plain(a: SymmetricAssignment) -> ListAssignment:
    if not is_symmetric(a):
        raise ValueError("assignment is not symmetric")
    return ListAssignment(a.lists)
