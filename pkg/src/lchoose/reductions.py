"""Executable colour transfers between instance types, each with a checkable output."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, prod
from typing import Callable, Iterable, Mapping, Sequence

from .assignments import (LambdaAssignment, ListAssignment, SymmetricAssignment, is_symmetric,
                          specialize, validate_lambda)
from .graph import (EmbeddedGraph, Graph, VertexPartition, dual, join_with_parts,
                    make_complete, disjoint_union)
from .gsg import Permutation, PermSignature
from .partitions import IntPartition, as_partition, leq
from .signed import SignedGraph
from .solver import Coloring, solve_list, verify_list_coloring


class ReductionError(ValueError):
    """An input violates the precondition of a transfer."""


@dataclass(frozen=True)
class TransferMap:
    """Turns a colouring of the target instance into a colouring of the source."""

    description: str
    apply: Callable[[Sequence[int]], list[int]]

    def __call__(self, coloring: Sequence[int]) -> list[int]:
        return self.apply(list(coloring))


# ---------------------------------------------------------------- separating instances

SEPARATOR_MAX_VERTICES = 600


@dataclass(frozen=True)
class SeparatorInstance:
    graph: Graph
    assignment: LambdaAssignment
    family_size: int
    lam: IntPartition
    lambda_prime: IntPartition
    part_of: tuple[int, ...]       # which lambda part (G_i) a vertex belongs to
    copy_of: tuple[int, ...]       # which member of the family its clique uses
    color_groups: tuple[frozenset[int], ...]
    faithful: bool = True          # False when fewer copies than family members were used


def build_separator(lam, lambda_prime, *, force: bool = False, copies: int | None = None,
                    max_vertices: int = SEPARATOR_MAX_VERTICES) -> SeparatorInstance:
    """A lam-choosable graph with a lambda_prime-assignment it cannot be coloured from.

    Part i is ``n`` disjoint cliques of size ``lam[i]`` and the graph is the
    join of the parts.  Colour group j has ``2 * lambda_prime[j] - 1``
    colours, and the t-th clique of every part gets the t-th tuple of the
    product of the ``lambda_prime[j]``-subsets of the groups.  With
    ``copies`` smaller than the family size only a prefix of the family is
    used and the result is marked unfaithful.  ``force`` allows comparable
    pairs (the instance is then colourable, which the diagnostics exploit).
    """
    lam, lp = as_partition(lam), as_partition(lambda_prime)
    if leq(lam, lp)[0] and not force:
        raise ReductionError(f"{lam!r} <= {lp!r}; no separating instance exists")
    groups, off = [], 1
    for kp in lp.parts:
        groups.append(tuple(range(off, off + 2 * kp - 1)))
        off += 2 * kp - 1
    family_size = prod(comb(2 * kp - 1, kp) for kp in lp.parts)
    n = family_size if copies is None else min(copies, family_size)
    if n * lam.total > max_vertices:
        raise ReductionError(f"{n * lam.total} vertices exceed the limit {max_vertices}")
    family = list(itertools.islice(
        itertools.product(*(itertools.combinations(g, kp) for g, kp in zip(groups, lp.parts))), n))
    parts = [disjoint_union([make_complete(ki)] * n) for ki in lam.parts]
    j = join_with_parts(parts)
    copy_of, lists = [], []
    for v in range(j.graph.n):
        i = j.part_of[v]
        t = (v - j.offsets[i]) // lam.parts[i]
        copy_of.append(t)
        lists.append(frozenset(c for subset in family[t] for c in subset))
    cg = tuple(frozenset(g) for g in groups)
    a = LambdaAssignment(ListAssignment(tuple(lists)), lp, cg)
    return SeparatorInstance(j.graph, a, family_size, lam, lp, j.part_of, tuple(copy_of), cg,
                             faithful=n == family_size)


def occupancy(inst: SeparatorInstance, coloring: Sequence[int | None]) -> list[set[int]]:
    """``J_i``: groups j of which part i uses at least ``lambda_prime[j]`` colours.

    Works on partial colourings; ``None`` marks an uncoloured vertex.
    """
    used = [set() for _ in inst.lam.parts]
    for v, c in enumerate(coloring):
        if c is not None:
            used[inst.part_of[v]].add(c)
    return [{j for j, (g, kp) in enumerate(zip(inst.color_groups, inst.lambda_prime.parts))
             if len(used[i] & g) >= kp} for i in range(inst.lam.q)]


def occupancy_disjoint(J: Sequence[set[int]]) -> bool:
    return all(not (a & b) for a, b in itertools.combinations(J, 2))


def occupancy_sums(inst: SeparatorInstance, J: Sequence[set[int]]) -> list[bool]:
    """For each part i, whether the occupied groups carry at least ``lam[i]`` in total."""
    return [sum(inst.lambda_prime.parts[j] for j in Ji) >= ki for Ji, ki in zip(J, inst.lam.parts)]


def certificate_from_coloring(inst: SeparatorInstance, coloring: Sequence[int]):
    """Read an order certificate off a proper colouring of a (forced) separator instance.

    Returns the grouping of ``lambda_prime``'s part indices, one block per
    part of ``lam``, or None if the occupancy sets fail either check.
    """
    J = occupancy(inst, coloring)
    if not occupancy_disjoint(J) or not all(occupancy_sums(inst, J)):
        return None
    blocks = [sorted(Ji) for Ji in J]
    spare = sorted(set(range(inst.lambda_prime.q)) - set().union(*J))
    blocks[0] = sorted(blocks[0] + spare)
    return tuple(tuple(b) for b in blocks)


# ---------------------------------------------------------------- joins

def split_groups(joined: LambdaAssignment, partitions: Sequence[IntPartition]) -> list[list[int]]:
    """Hand each part the indices of groups whose sizes spell its partition."""
    free = list(range(len(joined.groups)))
    out = []
    for p in partitions:
        mine = []
        for k in p.parts:
            for idx in free:
                if joined.partition.parts[idx] == k:
                    mine.append(idx)
                    free.remove(idx)
                    break
            else:
                raise ReductionError(f"no group of size {k} left for {p!r}")
        out.append(mine)
    if free:
        raise ReductionError("the joined partition is not the union of the parts")
    return out


def join_coloring(parts: Sequence[tuple[Graph, IntPartition | LambdaAssignment]],
                  joined: LambdaAssignment) -> Coloring:
    """Colour a join part by part, each from its own colour groups."""
    graphs = [g for g, _ in parts]
    lams = [x.partition if isinstance(x, LambdaAssignment) else as_partition(x) for _, x in parts]
    j = join_with_parts(graphs)
    if len(joined.lists) != j.graph.n:
        raise ReductionError("the assignment does not cover the join")
    if not validate_lambda(joined):
        raise ReductionError("the joined assignment is not valid")
    owned = split_groups(joined, lams)
    out = [0] * j.graph.n
    for i, g in enumerate(graphs):
        palette = frozenset().union(*(joined.groups[x] for x in owned[i]))
        off = j.offsets[i]
        lists = [joined.lists[off + v] & palette for v in range(g.n)]
        verdict = solve_list(g, lists)
        if not verdict.colorable:
            raise ReductionError(f"part {i} is not colourable from its groups")
        for v, c in enumerate(verdict.witness):
            out[off + v] = c
    if not verify_list_coloring(j.graph, joined.lists, out):  # pragma: no cover
        raise AssertionError("join colouring is not proper")
    return Coloring(tuple(out))


# ---------------------------------------------------------------- symmetric 4-lists -> signed

def _levels(lst: Iterable[int]) -> tuple[int, int]:
    mags = sorted({abs(c) for c in lst})
    return mags[0], mags[-1]


def symmetric_to_signed(g: Graph, a: SymmetricAssignment) -> tuple[SignedGraph, TransferMap]:
    """Signature whose signed 4-colourings pull back to colourings from ``a``.

    Each list is {+-p, +-q} with p < q.  An edge is negative exactly when the
    low level of one end equals the high level of the other.
    """
    if len(a.lists) != g.n:
        raise ReductionError("one list per vertex is required")
    if not is_symmetric(a) or any(len(l) != 4 or len({abs(c) for c in l}) != 2 for l in a.lists):
        raise ReductionError("lists must be symmetric with two magnitude levels")
    lv = [_levels(l) for l in a.lists]
    sig = []
    for u, v in g.edges:
        neg = lv[u][0] == lv[v][1] or lv[v][0] == lv[u][1]
        sig.append(-1 if neg else 1)
    sg = SignedGraph(g, tuple(sig))

    # f=2 -> high, f=1 -> -high, f=-2 -> low, f=-1 -> -low
    def apply(f: Sequence[int]) -> list[int]:
        out = []
        for v, x in enumerate(f):
            lo, hi = lv[v]
            if x == 2:
                out.append(hi)
            elif x == 1:
                out.append(-hi)
            elif x == -2:
                out.append(lo)
            elif x == -1:
                out.append(-lo)
            else:
                _bad(x)
        return out

    return sg, TransferMap("signed 4-colouring to symmetric list colouring", apply)


def _bad(x):
    raise ReductionError(f"value {x} is outside the palette")


# ---------------------------------------------------------------- {1,1,2} -> Z_4

def z4_to_112(g: Graph, a: LambdaAssignment) -> tuple[SignedGraph, TransferMap]:
    """Signature whose Z_4-colourings pull back to colourings from a {1,1,2}-assignment.

    Unit groups are first collapsed to two shared colours c0, c1.  With
    ``L'(v)`` the two remaining colours, 0 and 2 map to c0 and c1, 1 to
    ``min L'(v)`` and 3 to ``max L'(v)``; edges where the low colour of one
    end is the high colour of the other are negative.
    """
    if a.partition != IntPartition((2, 1, 1)):
        raise ReductionError(f"expected a {{1,1,2}}-assignment, got {a.partition!r}")
    rep = validate_lambda(a)
    if not rep:
        raise ReductionError(rep.problem)
    sp = specialize(a)
    s = sp.assignment
    pair_idx = s.partition.parts.index(2)
    unit = [i for i, k in enumerate(s.partition.parts) if k == 1]
    c0, c1 = (sp.shared[i] for i in unit)
    rest = [sorted(l & s.groups[pair_idx]) for l in s.lists]
    sig = []
    for u, v in g.edges:
        neg = rest[u][0] == rest[v][-1] or rest[v][0] == rest[u][-1]
        sig.append(-1 if neg else 1)
    sg = SignedGraph(g, tuple(sig))

    def apply(f: Sequence[int]) -> list[int]:
        phi = []
        for v, x in enumerate(f):
            x %= 4
            phi.append({0: c0, 2: c1, 1: rest[v][0], 3: rest[v][-1]}[x])
        return sp.translate(phi)

    return sg, TransferMap("Z_4-colouring to {1,1,2}-list colouring", apply)


# ---------------------------------------------------------------- lambda -> Young signature

def group_major(a: LambdaAssignment) -> list[list[int]]:
    """Each list ordered by group index (groups aligned with the partition), then by colour."""
    where = {c: i for i, grp in enumerate(a.groups) for c in grp}
    return [sorted(l, key=lambda c: (where[c], c)) for l in a.lists]


def lambda_to_young_signature(g: Graph, a: LambdaAssignment) -> tuple[PermSignature, TransferMap]:
    """S_lambda-signature whose k-colourings pull back to colourings from ``a``.

    On arc (x, y) position l goes to the position of the same colour in
    L(y); positions with no match are filled in increasing order inside
    their block.
    """
    rep = validate_lambda(a)
    if not rep:
        raise ReductionError(rep.problem)
    if len(a.lists) != g.n:
        raise ReductionError("one list per vertex is required")
    ordered = group_major(a)
    pos = [{c: i for i, c in enumerate(o)} for o in ordered]
    blocks = a.partition.intervals()
    perms = []
    for x, y in g.edges:
        img = [-1] * a.partition.total
        for blk in blocks:
            taken = set()
            for l in blk:
                j = pos[y].get(ordered[x][l])
                if j is not None:
                    img[l] = j
                    taken.add(j)
            spare = iter(sorted(set(blk) - taken))
            for l in blk:
                if img[l] < 0:
                    img[l] = next(spare)
        perms.append(Permutation(tuple(img)))
    sig = PermSignature(g, tuple(perms))

    def apply(f: Sequence[int]) -> list[int]:
        return [ordered[v][x - 1] for v, x in enumerate(f)]

    return sig, TransferMap("S_lambda colouring to list colouring", apply)


# ---------------------------------------------------------------- two distinct 4-lists

def two_list_normal_form(a: ListAssignment) -> tuple[ListAssignment, list[dict[int, int]]]:
    """Rename colours so the lists become {1,2,3,4} and {i,...,i+3}.

    Returns the renamed assignment and, per vertex, the map from new colours
    back to original ones.
    """
    distinct = sorted({tuple(sorted(l)) for l in a.lists})
    if len(distinct) > 2 or any(len(l) != 4 for l in distinct):
        raise ReductionError("needs at most two distinct lists of four colours")
    A = set(distinct[0])
    B = set(distinct[-1])
    t = len(A & B)
    ren: dict[int, int] = {}
    for i, c in enumerate(sorted(A - B)):
        ren[c] = 1 + i
    for i, c in enumerate(sorted(A & B)):
        ren[c] = 5 - t + i
    for i, c in enumerate(sorted(B - A)):
        ren[c] = 5 + i
    inv = {v: c for c, v in ren.items()}
    new = ListAssignment(tuple(frozenset(ren[c] for c in l) for l in a.lists))
    return new, [inv] * len(a.lists)


def _in_normal_form(lists: Sequence[frozenset[int]]) -> bool:
    base = frozenset(range(1, 5))
    for l in set(lists):
        if l == base:
            continue
        lo = min(l)
        if l != frozenset(range(lo, lo + 4)):
            return False
    return len(set(lists) - {base}) <= 1


def two_list_translate(g: Graph, a: ListAssignment, base: Sequence[int]) -> Coloring:
    """Move a proper colouring with colours 1..4 onto lists of consecutive colours, by residue mod 4."""
    if not _in_normal_form(a.lists):
        raise ReductionError("lists must be {1,2,3,4} and one run {i,...,i+3}")
    if any(not 1 <= c <= 4 for c in base):
        raise ReductionError("the base colouring must use colours 1..4")
    psi = []
    for v, c in enumerate(base):
        (x,) = [y for y in a.lists[v] if (y - c) % 4 == 0]
        psi.append(x)
    if not verify_list_coloring(g, a, psi):
        raise ReductionError("the base colouring is not proper")
    return Coloring(tuple(psi))


def two_list_color(g: Graph, a: ListAssignment, base: Sequence[int]) -> Coloring:
    """Normalise arbitrary lists (at most two distinct 4-sets), translate, and rename back."""
    norm, back = two_list_normal_form(a)
    psi = two_list_translate(g, norm, base)
    return Coloring(tuple(back[v][c] for v, c in enumerate(psi)))


# ---------------------------------------------------------------- three distinct 4-lists

@dataclass(frozen=True)
class RewriteStep:
    old: frozenset[int]
    new: frozenset[int]
    removed: int
    added: int
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class Normalized:
    case: str                      # "112", "symmetric" or "two-lists"
    lists: ListAssignment          # the rewritten plain lists
    steps: tuple[RewriteStep, ...]
    original: ListAssignment
    lambda_assignment: LambdaAssignment | None = None
    symmetric: SymmetricAssignment | None = None
    renaming: Mapping[int, int] | None = None   # plain colour -> signed colour

    def translate_back(self, coloring: Sequence[int]) -> list[int]:
        """Colouring of the reduced lists (signed colours in the symmetric case) to one of the original."""
        f = list(coloring)
        if self.renaming is not None:
            inv = {s: c for c, s in self.renaming.items()}
            f = [inv[x] for x in f]
        for step in reversed(self.steps):
            for v in step.vertices:
                if f[v] == step.added:
                    f[v] = step.removed
        return f


def distinct_colors(a: ListAssignment) -> int:
    return len(a.colors())


def three_list_normalize(g: Graph, a: ListAssignment) -> Normalized:
    """Rewrite three distinct 4-lists until each pairwise difference lies in the third list.

    A colour of X outside Y and Z is swapped for a colour of Y or Z outside
    X; every step drops one colour from the union.  Afterwards two lists
    share three colours ({1,1,2}-case, the two common colours become unit
    groups) or two (the colours pair up, and the pairs are renamed +-1, +-3,
    +-5).
    """
    lists = [frozenset(l) for l in a.lists]
    if len(set(lists)) != 3 or any(len(l) != 4 for l in lists):
        raise ReductionError("needs exactly three distinct lists of four colours")
    steps = []
    while True:
        kinds = sorted(set(lists), key=sorted)
        if len(kinds) < 3:
            return Normalized("two-lists", ListAssignment(tuple(lists)), tuple(steps), a)
        move = None
        for X, Y, Z in itertools.permutations(kinds):
            if not (X - Y) <= Z:
                i = min(X - (Y | Z))
                i2 = min((Y | Z) - X)
                move = (X, i, i2)
                break
        if move is None:
            break
        X, i, i2 = move
        X2 = (X - {i}) | {i2}
        steps.append(RewriteStep(X, X2, i, i2, tuple(v for v, l in enumerate(lists) if l == X)))
        lists = [X2 if l == X else l for l in lists]
    A, B, C = sorted(set(lists), key=sorted)
    out = ListAssignment(tuple(lists))
    if len(A | B) == 5:
        common = sorted(A & B & C)
        if len(common) != 2:  # pragma: no cover - excluded by the rewriting invariant
            raise AssertionError("expected two common colours")
        rest = (A | B | C) - set(common)
        la = LambdaAssignment.from_groups(out, [{common[0]}, {common[1]}, rest])
        return Normalized("112", out, tuple(steps), a, lambda_assignment=la)
    pairs = sorted([sorted(A & B), sorted(A & C), sorted(B & C)])
    ren = {}
    for j, (lo, hi) in enumerate(pairs, start=1):
        ren[lo] = 2 * j - 1
        ren[hi] = -(2 * j - 1)
    sym = SymmetricAssignment(tuple(frozenset(ren[c] for c in l) for l in lists))
    return Normalized("symmetric", out, tuple(steps), a, symmetric=sym, renaming=ren)


# ---------------------------------------------------------------- 3-chromatic, {1,3}

def color_3chromatic_13(g: Graph, parts: VertexPartition, a: LambdaAssignment,
                        unit_block: int = 2) -> Coloring:
    """Colour two classes from the 3-colour group and the remaining class from the unit group."""
    if a.partition != IntPartition((3, 1)):
        raise ReductionError(f"expected a {{1,3}}-assignment, got {a.partition!r}")
    rep = validate_lambda(a)
    if not rep:
        raise ReductionError(rep.problem)
    parts.check(g.n)
    if len(parts.blocks) != 3 or not parts.is_independent(g):
        raise ReductionError("need three independent vertex classes")
    big, unit = a.groups[0], a.groups[1]
    third = parts.blocks[unit_block]
    rest = sorted(set(range(g.n)) - third)
    sub, keep = g.induced(rest)
    verdict = solve_list(sub, [a.lists[v] & big for v in keep])
    if not verdict.colorable:
        raise ReductionError("the two-class subgraph is not colourable from the 3-colour group")
    out = [0] * g.n
    for i, v in enumerate(keep):
        out[v] = verdict.witness[i]
    for v in third:
        (out[v],) = a.lists[v] & unit
    if not verify_list_coloring(g, a.base, out):  # pragma: no cover
        raise AssertionError("colouring is not proper")
    return Coloring(tuple(out))


# ---------------------------------------------------------------- Eulerian dual subgraph, {2,2}

class DualConditionError(ReductionError):
    def __init__(self, kind: str, detail: str):
        super().__init__(f"{kind}: {detail}")
        self.kind = kind


@dataclass(frozen=True)
class DualSplit:
    regions: tuple[tuple[int, ...], ...]
    region_side: tuple[int, ...]
    X: tuple[int, ...]
    Y: tuple[int, ...]


def _tree_or_even_unicyclic(g: Graph) -> bool:
    for comp in g.components():
        sub, _ = g.induced(comp)
        extra = sub.m - (sub.n - 1)
        if extra > 1:
            return False
        if extra == 1:
            # the unique cycle is odd exactly when the component is not bipartite
            side = {0: 0}
            queue = [0]
            for x in queue:
                for y in sub.adj[x]:
                    if y not in side:
                        side[y] = 1 - side[x]
                        queue.append(y)
                    elif side[y] == side[x]:
                        return False
    return True


def dual_split(e: EmbeddedGraph, h_edges: Iterable[int]) -> DualSplit:
    """Split V(G) into X, Y from a dual subgraph given by primal edge indices.

    The vertices of G inside each face of h form a region (a component of G
    minus the edges crossed by h).  Regions are 2-coloured along crossed
    edges; each class must induce trees and even unicyclic components.
    """
    g = e.graph
    h = sorted(set(h_edges))
    if any(not 0 <= i < g.m for i in h):
        raise DualConditionError("not-spanning", "h uses an edge outside the dual")
    d = dual(e)
    odd = [f for f, deg in enumerate(d.degrees(h)) if deg % 2]
    if odd:
        raise DualConditionError("odd-degree", f"faces {odd} have odd degree in h")
    crossed = set(h)
    kept = Graph(g.n, tuple(g.edges[i] for i in range(g.m) if i not in crossed))
    regions = [tuple(c) for c in kept.components()]
    region_of = {v: r for r, c in enumerate(regions) for v in c}
    side = [-1] * len(regions)
    adj: list[set[int]] = [set() for _ in regions]
    for i in h:
        u, v = g.edges[i]
        ru, rv = region_of[u], region_of[v]
        if ru == rv:
            raise DualConditionError("region", f"edge {g.edges[i]} crosses h inside one region")
        adj[ru].add(rv)
        adj[rv].add(ru)
    for s in range(len(regions)):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = [s]
        for r in queue:
            for t in adj[r]:
                if side[t] < 0:
                    side[t] = 1 - side[r]
                    queue.append(t)
                elif side[t] == side[r]:
                    raise DualConditionError("region", "regions cannot be 2-coloured")
    X = sorted(v for r, c in enumerate(regions) if side[r] == 0 for v in c)
    Y = sorted(v for r, c in enumerate(regions) if side[r] == 1 for v in c)
    for cls in (X, Y):
        if not _tree_or_even_unicyclic(g.induced(cls)[0]):
            raise DualConditionError("region", "a class induces an odd cycle or two cycles")
    return DualSplit(tuple(regions), tuple(side), tuple(X), tuple(Y))


def color_eulerian_dual_22(e: EmbeddedGraph, h_edges: Iterable[int], a: LambdaAssignment) -> Coloring:
    """Colour X from the first 2-group and Y from the second."""
    if a.partition != IntPartition((2, 2)):
        raise ReductionError(f"expected a {{2,2}}-assignment, got {a.partition!r}")
    rep = validate_lambda(a)
    if not rep:
        raise ReductionError(rep.problem)
    split = dual_split(e, h_edges)
    g = e.graph
    out = [0] * g.n
    for cls, grp in ((split.X, a.groups[0]), (split.Y, a.groups[1])):
        if not cls:
            continue
        sub, keep = g.induced(cls)
        verdict = solve_list(sub, [a.lists[v] & grp for v in keep])
        if not verdict.colorable:  # pragma: no cover - trees and even unicyclic graphs are 2-choosable
            raise ReductionError("a class is not colourable from its group")
        for i, v in enumerate(keep):
            out[v] = verdict.witness[i]
    if not verify_list_coloring(g, a.base, out):  # pragma: no cover
        raise AssertionError("colouring is not proper")
    return Coloring(tuple(out))


DUAL_SEARCH_MAX_EDGES = 12


def find_eulerian_dual(e: EmbeddedGraph) -> tuple[int, ...] | None:
    """Smallest-first search over even dual subgraphs for one passing every condition."""
    if e.graph.m > DUAL_SEARCH_MAX_EDGES:
        raise ValueError(f"dual search is limited to {DUAL_SEARCH_MAX_EDGES} edges")
    for r in range(e.graph.m + 1):
        for h in itertools.combinations(range(e.graph.m), r):
            try:
                dual_split(e, h)
            except DualConditionError:
                continue
            return h
    return None
