"""Integer partitions, refinement and the increase-then-refine order."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class IntPartition:
    """A multiset of positive parts, stored non-increasing."""

    parts: tuple[int, ...]

    def __post_init__(self):
        ps = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if not ps:
            raise ValueError("a partition needs at least one part")
        if ps[-1] < 1:
            raise ValueError("parts must be positive")
        object.__setattr__(self, "parts", ps)

    @classmethod
    def of(cls, *parts: int) -> "IntPartition":
        if len(parts) == 1 and not isinstance(parts[0], int):
            parts = tuple(parts[0])
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "IntPartition":
        """Parse ``"1+1+3"`` (any order, optional spaces or braces)."""
        body = text.strip().strip("{}").replace(",", "+")
        try:
            parts = tuple(int(tok) for tok in body.split("+") if tok.strip())
        except ValueError:
            raise ValueError(f"bad partition literal {text!r}") from None
        return cls(parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def q(self) -> int:
        return len(self.parts)

    def intervals(self) -> list[range]:
        """Consecutive blocks of ``range(total)`` of sizes parts[0], parts[1], ... (0-based)."""
        out, s = [], 0
        for p in self.parts:
            out.append(range(s, s + p))
            s += p
        return out

    def union(self, other: "IntPartition") -> "IntPartition":
        return IntPartition(self.parts + other.parts)

    def __str__(self) -> str:
        return "+".join(map(str, self.parts))

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, sorted(self.parts))) + "}"


@dataclass(frozen=True)
class OrderCertificate:
    """Grouping of the finer partition's parts, one block per part of the coarser one.

    ``grouping[i]`` holds indices into ``lambda_prime.parts``; the block sums
    form the intermediate partition, which dominates ``matched_part[i]``.
    """

    lam: IntPartition
    lambda_prime: IntPartition
    grouping: tuple[tuple[int, ...], ...]

    @property
    def matched_part(self) -> tuple[int, ...]:
        return self.lam.parts

    @property
    def block_sums(self) -> tuple[int, ...]:
        return tuple(sum(self.lambda_prime.parts[j] for j in b) for b in self.grouping)

    @property
    def intermediate(self) -> IntPartition:
        return IntPartition(self.block_sums)

    def check(self, exact: bool = False) -> bool:
        used = sorted(j for b in self.grouping for j in b)
        if used != list(range(self.lambda_prime.q)):
            return False
        if len(self.grouping) != self.lam.q or any(not b for b in self.grouping):
            return False
        ok = (lambda s, k: s == k) if exact else (lambda s, k: s >= k)
        return all(ok(s, k) for s, k in zip(self.block_sums, self.lam.parts))


def _match_blocks(targets: Sequence[int], items: Sequence[int], exact: bool):
    """Assign every item to one of the target blocks.

    Every block must be non-empty, and its sum must equal (``exact``) or reach
    its target.  Items are placed largest first; blocks with equal targets are
    opened in order, which removes their permutation symmetry.  Returns the
    blocks as lists of item indices, or None.
    """
    q = len(targets)
    order = sorted(range(len(items)), key=lambda j: -items[j])
    vals = [items[j] for j in order]
    suffix = [0] * (len(vals) + 1)
    for i in range(len(vals) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + vals[i]
    if len(vals) < q:
        return None
    if exact and suffix[0] != sum(targets):
        return None
    if suffix[0] < sum(targets):
        return None

    @lru_cache(maxsize=None)
    def feasible(i: int, sums: tuple[int, ...]) -> bool:
        if i == len(vals):
            return all(s > 0 for s in sums) and all(
                (s == t) if exact else (s >= t) for s, t in zip(sums, targets))
        empty = sum(1 for s in sums if s == 0)
        if empty > len(vals) - i:
            return False
        deficit = sum(max(0, t - s) for s, t in zip(sums, targets))
        if deficit > suffix[i]:
            return False
        x = vals[i]
        tried = set()
        for b in range(q):
            if exact and sums[b] + x > targets[b]:
                continue
            key = (targets[b], sums[b])
            if key in tried:
                continue
            tried.add(key)
            nxt = sums[:b] + (sums[b] + x,) + sums[b + 1:]
            if feasible(i + 1, _canon(nxt)):
                return True
        return False

    # Blocks with equal targets are interchangeable: keep their sums sorted.
    groups: dict[int, list[int]] = {}
    for b, t in enumerate(targets):
        groups.setdefault(t, []).append(b)

    def _canon(sums: tuple[int, ...]) -> tuple[int, ...]:
        out = list(sums)
        for idx in groups.values():
            if len(idx) > 1:
                for b, s in zip(idx, sorted((sums[b] for b in idx), reverse=True)):
                    out[b] = s
        return tuple(out)

    start = (0,) * q
    if not feasible(0, start):
        return None
    # Replay the memoised search to recover an explicit grouping.
    blocks: list[list[int]] = [[] for _ in range(q)]
    sums = list(start)
    for i, x in enumerate(vals):
        for b in range(q):
            if exact and sums[b] + x > targets[b]:
                continue
            nxt = tuple(sums[:b] + [sums[b] + x] + sums[b + 1:])
            if feasible(i + 1, _canon(nxt)):
                blocks[b].append(order[i])
                sums = list(nxt)
                break
        else:  # pragma: no cover - feasible() promised a continuation
            raise AssertionError("inconsistent block search")
    return [sorted(b) for b in blocks]


def leq(lam: IntPartition, lambda_prime: IntPartition) -> tuple[bool, OrderCertificate | None]:
    """Decide ``lam <= lambda_prime``: raise some parts of ``lam``, then refine.

    Equivalently the parts of ``lambda_prime`` split into exactly ``lam.q``
    non-empty blocks matched to the parts of ``lam`` with each block sum at
    least its part.  Raising a part by zero is allowed, so the relation is
    reflexive.
    """
    if lam.total > lambda_prime.total:
        return False, None
    blocks = _match_blocks(lam.parts, lambda_prime.parts, exact=False)
    if blocks is None:
        return False, None
    return True, OrderCertificate(lam, lambda_prime, tuple(tuple(b) for b in blocks))


def is_refinement(fine: IntPartition, coarse: IntPartition) -> tuple[bool, OrderCertificate | None]:
    """True iff the parts of ``fine`` group into blocks summing exactly to the parts of ``coarse``."""
    if fine.total != coarse.total:
        return False, None
    blocks = _match_blocks(coarse.parts, fine.parts, exact=True)
    if blocks is None:
        return False, None
    return True, OrderCertificate(coarse, fine, tuple(tuple(b) for b in blocks))


# ---------------------------------------------------------------- oracle

ORACLE_MAX_TOTAL = 12


def _sub_multisets(counts: Counter, target: int, values: list[int], i: int = 0):
    if target == 0:
        yield Counter()
        return
    if i == len(values):
        return
    v = values[i]
    for take in range(min(counts[v], target // v), -1, -1):
        for rest in _sub_multisets(counts, target - take * v, values, i + 1):
            if take:
                rest = rest.copy()
                rest[v] += take
            yield rest


def _refines_brute(fine: Counter, coarse: list[int]) -> bool:
    if not coarse:
        return sum(fine.values()) == 0
    head, tail = coarse[0], coarse[1:]
    values = sorted((v for v in fine if fine[v] > 0), reverse=True)
    for chunk in _sub_multisets(fine, head, values):
        if sum(chunk.values()) == 0:
            continue
        if _refines_brute(fine - chunk, tail):
            return True
    return False


def _dominating(parts: tuple[int, ...], extra: int):
    if len(parts) == 1:
        yield (parts[0] + extra,)
        return
    for e in range(extra + 1):
        for rest in _dominating(parts[1:], extra - e):
            yield (parts[0] + e,) + rest


def brute_leq_oracle(lam: IntPartition, lambda_prime: IntPartition) -> bool:
    """Definition-chasing check of ``lam <= lambda_prime`` for small totals.

    Enumerates every intermediate partition obtained by raising parts of
    ``lam`` up to the total of ``lambda_prime``, and tests refinement by
    peeling sub-multisets off ``lambda_prime``.
    """
    if max(lam.total, lambda_prime.total) > ORACLE_MAX_TOTAL:
        raise ValueError(f"oracle is limited to totals <= {ORACLE_MAX_TOTAL}")
    extra = lambda_prime.total - lam.total
    if extra < 0:
        return False
    fine = Counter(lambda_prime.parts)
    for mid in set(_dominating(lam.parts, extra)):
        if _refines_brute(fine, sorted(mid, reverse=True)):
            return True
    return False


# ---------------------------------------------------------------- enumeration

MAX_ENUMERATED_TOTAL = 20


def enumerate_partitions(k: int) -> list[IntPartition]:
    """All partitions of ``k``, fewest parts first, larger leading parts first."""
    if k < 1:
        raise ValueError("k must be positive")
    if k > MAX_ENUMERATED_TOTAL:
        raise ValueError(f"refusing to enumerate partitions of k > {MAX_ENUMERATED_TOTAL}")

    def gen(rest: int, cap: int):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, cap), 0, -1):
            for tail in gen(rest - p, p):
                yield (p,) + tail

    return sorted((IntPartition(ps) for ps in gen(k, k)), key=lambda p: (p.q, [-x for x in p.parts]))


def partitions_up_to(k: int) -> list[IntPartition]:
    return [p for t in range(1, k + 1) for p in enumerate_partitions(t)]


def ones(k: int) -> IntPartition:
    return IntPartition((1,) * k)


def as_partition(x: IntPartition | str | Iterable[int]) -> IntPartition:
    if isinstance(x, IntPartition):
        return x
    if isinstance(x, str):
        return IntPartition.parse(x)
    return IntPartition(tuple(x))
