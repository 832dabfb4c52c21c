"""Permutation signatures: S-sets, Young sets and S-k-colourability."""

from __future__ import annotations

import itertools
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

from .graph import Graph, norm_edge
from .partitions import IntPartition, as_partition
from .solver import BUDGET_EXHAUSTED, NOT_COLORABLE, BinaryCSP, SearchVerdict, solve_csp

ALL_COLORABLE = "all-colorable"
SOME_FAIL = "some-signature-fails"
INCONCLUSIVE = "inconclusive"

YOUNG_MAX_K = 8
DEFAULT_SIGNATURE_BUDGET = 1 << 20


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..k}; ``images[i-1]`` is the image of ``i`` minus one."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(k)))

    @classmethod
    def from_one_line(cls, values: Sequence[int]) -> "Permutation":
        """From 1-based images, e.g. ``[2, 1, 4, 3]``."""
        return cls(tuple(int(x) - 1 for x in values))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], k: int) -> "Permutation":
        img = list(range(k))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = [int(x) for x in cyc]
            for x in cyc:
                if not 1 <= x <= k:
                    raise ValueError(f"point {x} outside 1..{k}")
                if x in seen:
                    raise ValueError(f"point {x} appears in two cycles")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return cls(tuple(img))

    @property
    def k(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1] + 1

    def inverse(self) -> "Permutation":
        inv = [0] * self.k
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """``self`` after ``other``."""
        return Permutation(tuple(self.images[j] for j in other.images))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def fixed_points(self) -> set[int]:
        return {i + 1 for i, j in enumerate(self.images) if i == j}

    def one_line(self) -> list[int]:
        return [j + 1 for j in self.images]

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for s in range(self.k):
            if s in seen or self.images[s] == s:
                continue
            cyc, x = [], s
            while x not in seen:
                seen.add(x)
                cyc.append(x + 1)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        sep = "" if self.k < 10 else " "
        return "".join("(" + sep.join(map(str, c)) + ")" for c in cyc)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, k: int | None = None) -> Permutation:
    """Parse cycle notation ``"(12)(34)"`` or a one-line image list ``"2,1,4,3"``."""
    t = text.strip()
    if t.startswith("("):
        if _CYCLE.sub("", t).strip():
            raise ValueError(f"bad cycle notation {text!r}")
        cycles = []
        for body in _CYCLE.findall(t):
            body = body.strip()
            if not body:
                continue
            toks = re.split(r"[\s,]+", body) if re.search(r"[\s,]", body) else list(body)
            cycles.append([int(x) for x in toks])
        top = max((x for c in cycles for x in c), default=1)
        if k is None:
            k = top
        return Permutation.from_cycles(cycles, k)
    try:
        vals = [int(x) for x in re.split(r"[\s,]+", t) if x]
    except ValueError:
        raise ValueError(f"bad permutation literal {text!r}") from None
    if k is not None and len(vals) != k:
        raise ValueError(f"expected {k} images, got {len(vals)}")
    return Permutation.from_one_line(vals)


def is_inverse_closed(members: Iterable[Permutation]) -> bool:
    ms = set(members)
    return all(p.inverse() in ms for p in ms)


def is_group(members: Iterable[Permutation]) -> bool:
    ms = set(members)
    if not ms:
        return False
    k = next(iter(ms)).k
    if Permutation.identity(k) not in ms:
        return False
    return all(a.compose(b) in ms for a in ms for b in ms)


@dataclass(frozen=True)
class PermSet:
    k: int
    members: tuple[Permutation, ...]

    def __post_init__(self):
        ms = tuple(sorted(set(self.members)))
        if not ms:
            raise ValueError("a permutation set must be non-empty")
        if any(p.k != self.k for p in ms):
            raise ValueError(f"all members must act on 1..{self.k}")
        if not is_inverse_closed(ms):
            raise ValueError("the set must be closed under inverses")
        object.__setattr__(self, "members", ms)

    @classmethod
    def of(cls, perms: Iterable[Permutation], close: bool = False) -> "PermSet":
        ps = list(perms)
        if not ps:
            raise ValueError("a permutation set must be non-empty")
        if close:
            ps += [p.inverse() for p in ps]
        return cls(ps[0].k, tuple(ps))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, p: Permutation) -> bool:
        return p in set(self.members)

    @property
    def is_group(self) -> bool:
        return is_group(self.members)


def conjugate(s: PermSet, pi: Permutation) -> PermSet:
    inv = pi.inverse()
    return PermSet(s.k, tuple(pi.compose(x).compose(inv) for x in s.members))


def fixes_each_point(s: PermSet | Iterable[Permutation]) -> bool:
    ms = list(s.members if isinstance(s, PermSet) else s)
    k = ms[0].k
    return all(any(p(i) == i for p in ms) for i in range(1, k + 1))


def identity_set(k: int) -> PermSet:
    return PermSet(k, (Permutation.identity(k),))


def symmetric_group(k: int) -> PermSet:
    if k > YOUNG_MAX_K:
        raise ValueError(f"refusing to enumerate S_{k}")
    return PermSet(k, tuple(Permutation(p) for p in itertools.permutations(range(k))))


def cyclic_group(k: int) -> PermSet:
    """Powers of the k-cycle (1 2 ... k)."""
    return PermSet(k, tuple(Permutation(tuple((i + r) % k for i in range(k))) for r in range(k)))


@dataclass(frozen=True)
class YoungSet:
    partition: IntPartition
    blocks: tuple[tuple[int, ...], ...]  # 1-based
    members: PermSet

    @property
    def size(self) -> int:
        return len(self.members)


def young_set(lam) -> YoungSet:
    """All permutations of 1..k that map each interval block to itself."""
    lam = as_partition(lam)
    k = lam.total
    if k > YOUNG_MAX_K:
        raise ValueError(f"Young sets are enumerated only for k <= {YOUNG_MAX_K}")
    blocks = tuple(tuple(i + 1 for i in r) for r in lam.intervals())
    perms = []
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        img = [0] * k
        for b, imgs in zip(blocks, choice):
            for x, y in zip(b, imgs):
                img[x - 1] = y - 1
        perms.append(Permutation(tuple(img)))
    ys = YoungSet(lam, blocks, PermSet(k, tuple(perms)))
    assert ys.size == prod(factorial(p) for p in lam.parts)
    return ys


def preserves_blocks(p: Permutation, blocks: Sequence[Sequence[int]]) -> bool:
    return all({p(x) for x in b} == set(b) for b in blocks)


# ---------------------------------------------------------------- signatures

@dataclass(frozen=True)
class PermSignature:
    """One permutation per edge, read on the arc from the smaller to the larger end."""

    graph: Graph
    perms: tuple[Permutation, ...]

    def __post_init__(self):
        if len(self.perms) != self.graph.m:
            raise ValueError(f"{len(self.perms)} permutations for {self.graph.m} edges")
        ks = {p.k for p in self.perms}
        if len(ks) > 1:
            raise ValueError("all permutations must act on the same 1..k")

    @classmethod
    def from_arcs(cls, g: Graph, arcs: dict[tuple[int, int], Permutation]) -> "PermSignature":
        """Build from arc labels; listing both directions requires them to be mutually inverse."""
        perms: list[Permutation | None] = [None] * g.m
        for (u, v), p in arcs.items():
            i = g.edge_index[norm_edge(u, v)]
            fwd = p if u < v else p.inverse()
            if perms[i] is not None and perms[i] != fwd:
                raise ValueError(f"arcs of edge {norm_edge(u, v)} are not inverse to each other")
            perms[i] = fwd
        if any(p is None for p in perms):
            raise ValueError("every edge needs a permutation")
        return cls(g, tuple(perms))

    @classmethod
    def identity(cls, g: Graph, k: int) -> "PermSignature":
        return cls(g, (Permutation.identity(k),) * g.m)

    def arc(self, u: int, v: int) -> Permutation:
        p = self.perms[self.graph.edge_index[norm_edge(u, v)]]
        return p if u < v else p.inverse()

    def in_set(self, s: "PermSet | YoungSet") -> bool:
        if isinstance(s, YoungSet):
            s = s.members
        ms = set(s.members)
        return all(p in ms for p in self.perms)


def gsg_csp(g: Graph, sig: PermSignature, k: int) -> BinaryCSP:
    if sig.graph != g:
        raise ValueError("signature belongs to another graph")
    csp = BinaryCSP([tuple(range(1, k + 1))] * g.n)
    for (u, v), p in zip(g.edges, sig.perms):
        if p.k != k:
            raise ValueError(f"permutation on {p.k} points used with k={k}")
        csp.add_inequality(u, v, p)
    return csp


def is_gsg_coloring(g: Graph, sig: PermSignature, k: int, f: Sequence[int]) -> bool:
    if len(f) != g.n or any(not 1 <= x <= k for x in f):
        return False
    for u, v in g.edges:
        if sig.arc(u, v)(f[u]) == f[v] or sig.arc(v, u)(f[v]) == f[u]:
            return False
    return True


def solve_gsg(g: Graph, sig: PermSignature, k: int, node_budget: int | None = None) -> SearchVerdict:
    """Search f: V -> 1..k with sigma(xy)(f(x)) != f(y) on every arc."""
    v = solve_csp(gsg_csp(g, sig, k), node_budget=node_budget)
    if v.witness is not None and not is_gsg_coloring(g, sig, k, v.witness):
        raise AssertionError("witness failed verification")  # pragma: no cover
    return v


def switch_vertex(sig: PermSignature, x: int, pi: Permutation) -> PermSignature:
    """Relabel colours at ``x`` by ``pi``; every arc out of ``x`` is precomposed with pi^-1."""
    g = sig.graph
    perms = list(sig.perms)
    inv = pi.inverse()
    for y in g.adj[x]:
        i = g.edge_index[norm_edge(x, y)]
        out = sig.arc(x, y).compose(inv)
        perms[i] = out if x < y else out.inverse()
    return PermSignature(g, tuple(perms))


@dataclass(frozen=True)
class GSGDecision:
    status: str
    failing: PermSignature | None = None
    checked: int = 0
    total: int = 0
    reduced: bool = False
    reason: str | None = None

    @property
    def holds(self) -> bool | None:
        if self.status == INCONCLUSIVE:
            return None
        return self.status == ALL_COLORABLE

    def __bool__(self) -> bool:
        return self.status == ALL_COLORABLE


def _free_edges(g: Graph, reduce: bool) -> list[int]:
    if not reduce:
        return list(range(g.m))
    tree = set(g.spanning_forest())
    return [i for i in range(g.m) if i not in tree]


def _signature_at(g: Graph, s: PermSet, free: Sequence[int], index: int) -> PermSignature:
    ident = Permutation.identity(s.k)
    perms = [ident] * g.m
    base = len(s.members)
    for e in free:
        index, r = divmod(index, base)
        perms[e] = s.members[r]
    return PermSignature(g, tuple(perms))


def _scan_signatures(args):
    g, s, free, start, stop, node_budget = args
    for i in range(start, stop):
        v = solve_gsg(g, _signature_at(g, s, free, i), s.k, node_budget)
        if v.status == NOT_COLORABLE:
            return i, "fail"
        if v.status == BUDGET_EXHAUSTED:
            return i, "budget"
    return stop, "ok"


def decide_s_colorable(g: Graph, s: PermSet, *, reduce: bool | None = None,
                       budget: int | None = None, node_budget: int | None = None,
                       jobs: int = 1, chunk: int = 2048) -> GSGDecision:
    """Is ``g`` colourable under every signature with values in ``s``?

    When ``s`` is a group, switching at a vertex by a member of ``s`` keeps the
    signature inside ``s`` and preserves colourability, so spanning-forest
    edges can be fixed to the identity.  For other sets every edge ranges over
    ``s``.
    """
    use = s.is_group if reduce is None else (reduce and s.is_group)
    if reduce and not s.is_group:
        raise ValueError("switching reduction needs a group")
    free = _free_edges(g, use)
    total = len(s.members) ** len(free)
    cap = DEFAULT_SIGNATURE_BUDGET if budget is None else budget
    if total > cap:
        return GSGDecision(INCONCLUSIVE, None, 0, total, use, f"{total} signatures exceed the budget {cap}")
    ranges = [(g, s, free, a, min(a + chunk, total), node_budget) for a in range(0, total, chunk)]
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        results = pool.map(_scan_signatures, ranges) if pool else map(_scan_signatures, ranges)
        for idx, tag in results:
            if tag == "ok":
                continue
            if tag == "budget":
                return GSGDecision(INCONCLUSIVE, None, idx, total, use, "node budget spent")
            return GSGDecision(SOME_FAIL, _signature_at(g, s, free, idx), idx + 1, total, use)
    finally:
        if pool is not None:
            pool.shutdown()
    return GSGDecision(ALL_COLORABLE, None, total, total, use)


@dataclass(frozen=True)
class CorpusReport:
    checked: int
    counterexample: tuple[int, PermSignature] | None
    inconclusive: tuple[int, ...] = ()

    @property
    def message(self) -> str:
        if self.counterexample is not None:
            return f"graph {self.counterexample[0]} has a failing signature"
        if self.inconclusive:
            return f"no counterexample found; {len(self.inconclusive)} graphs were over budget"
        return "no counterexample found in corpus"


def corpus_check(s: PermSet, graphs: Iterable[Graph], **kw) -> CorpusReport:
    """Run ``decide_s_colorable`` over user-supplied graphs and stop at the first failure."""
    over = []
    n = 0
    for i, g in enumerate(graphs):
        n += 1
        d = decide_s_colorable(g, s, **kw)
        if d.status == SOME_FAIL:
            return CorpusReport(n, (i, d.failing), tuple(over))
        if d.status == INCONCLUSIVE:
            over.append(i)
    return CorpusReport(n, None, tuple(over))


def signatures(g: Graph, s: PermSet) -> Iterator[PermSignature]:
    """Every signature of ``g`` with values in ``s`` (no reduction)."""
    for combo in itertools.product(s.members, repeat=g.m):
        yield PermSignature(g, combo)
