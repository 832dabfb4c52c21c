"""Reading and writing graphs, assignments, signed graphs and permutation sets."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .assignments import LambdaAssignment, ListAssignment, validate_lambda
from .graph import EmbeddedGraph, Graph, norm_edge
from .gsg import Permutation, PermSet, parse_permutation
from .partitions import IntPartition
from .signed import SignedGraph


class InputError(ValueError):
    """A malformed or invalid input file."""

    def __init__(self, message: str, *, source: str | None = None, line: int | None = None,
                 field: str | None = None):
        where = []
        if source:
            where.append(source)
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field!r}")
        super().__init__(f"{': '.join([', '.join(where), message]) if where else message}")
        self.message = message
        self.source = source
        self.line = line
        self.field = field

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"error": "input", "message": self.message}
        for key in ("source", "line", "field"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


def digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read file ({exc.strerror})", source=str(path)) from None


def _load_json(text: str, source: str | None) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, source=source, line=exc.lineno) from None


def _int(value: Any, field: str, source: str | None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"expected an integer, got {value!r}", source=source, field=field)
    return value


# ---------------------------------------------------------------- graphs

def parse_dimacs(text: str, source: str | None = None) -> Graph:
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "edge" or n is not None:
                raise InputError("expected a single header 'p edge N M'", source=source, line=lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise InputError("header counts must be integers", source=source, line=lineno) from None
        elif parts[0] == "e":
            if n is None:
                raise InputError("edge line before the header", source=source, line=lineno)
            if len(parts) != 3:
                raise InputError("expected 'e U V'", source=source, line=lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise InputError("edge endpoints must be integers", source=source, line=lineno) from None
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise InputError(f"bad edge {u} {v} for {n} vertices", source=source, line=lineno)
            edges.append(norm_edge(u - 1, v - 1))
        else:
            raise InputError(f"unknown line type {parts[0]!r}", source=source, line=lineno)
    if n is None:
        raise InputError("missing 'p edge' header", source=source)
    if len(set(edges)) != len(edges):
        raise InputError("repeated edge", source=source)
    if m != len(edges):
        raise InputError(f"header announces {m} edges, found {len(edges)}", source=source)
    return Graph.from_edges(n, edges)


def graph_from_json(obj: Any, source: str | None = None) -> Graph | EmbeddedGraph:
    if not isinstance(obj, dict):
        raise InputError("graph must be a JSON object", source=source)
    if "n" not in obj:
        raise InputError("missing vertex count", source=source, field="n")
    n = _int(obj["n"], "n", source)
    raw_edges = obj.get("edges", [])
    if not isinstance(raw_edges, list):
        raise InputError("edges must be a list", source=source, field="edges")
    edges = []
    for i, e in enumerate(raw_edges):
        if not isinstance(e, list) or len(e) != 2:
            raise InputError(f"edge {i} must be a pair", source=source, field="edges")
        u, v = (_int(x, "edges", source) for x in e)
        edges.append((u, v))
    if len({norm_edge(u, v) for u, v in edges}) != len(edges):
        raise InputError("repeated edge", source=source, field="edges")
    labels = obj.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise InputError("labels must list one string per vertex", source=source, field="labels")
    try:
        g = Graph.from_edges(n, edges, tuple(str(x) for x in labels) if labels is not None else None)
    except ValueError as exc:
        raise InputError(str(exc), source=source, field="edges") from None
    if "rotation" not in obj or obj["rotation"] is None:
        return g
    rot = obj["rotation"]
    if not isinstance(rot, list) or len(rot) != n:
        raise InputError("rotation must list every vertex", source=source, field="rotation")
    nb = []
    for v, order in enumerate(rot):
        if not isinstance(order, list):
            raise InputError(f"rotation at {v} must be a list", source=source, field="rotation")
        row = []
        for idx in order:
            idx = _int(idx, "rotation", source)
            if not 0 <= idx < g.m or v not in g.edges[idx]:
                raise InputError(f"edge {idx} is not incident to vertex {v}", source=source, field="rotation")
            a, b = g.edges[idx]
            row.append(b if a == v else a)
        nb.append(tuple(row))
    try:
        return EmbeddedGraph(g, tuple(nb))
    except ValueError as exc:
        raise InputError(str(exc), source=source, field="rotation") from None


def graph_to_json(g: Graph | EmbeddedGraph) -> dict[str, Any]:
    emb = g if isinstance(g, EmbeddedGraph) else None
    base = emb.graph if emb else g
    out: dict[str, Any] = {"n": base.n, "edges": [list(e) for e in base.edges]}
    if base.labels is not None:
        out["labels"] = list(base.labels)
    if emb is not None:
        idx = base.edge_index
        out["rotation"] = [[idx[norm_edge(v, w)] for w in r] for v, r in enumerate(emb.rotation)]
    return out


def parse_graph_text(text: str, source: str | None = None) -> Graph | EmbeddedGraph:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return graph_from_json(_load_json(text, source), source)
    return parse_dimacs(text, source)


def parse_graph(path: str | Path) -> Graph | EmbeddedGraph:
    """JSON graph (optionally with a rotation) or DIMACS edge format."""
    return parse_graph_text(_read(path), str(path))


def plain_graph(g: Graph | EmbeddedGraph) -> Graph:
    return g.graph if isinstance(g, EmbeddedGraph) else g


# ---------------------------------------------------------------- assignments

def assignment_from_json(obj: Any, n: int | None = None,
                         source: str | None = None) -> ListAssignment | LambdaAssignment:
    """Lists keyed by vertex (object or array); ``lambda`` and ``groups`` make it a lambda-assignment."""
    if not isinstance(obj, dict) or "lists" not in obj:
        raise InputError("assignment must be an object with 'lists'", source=source)
    raw = obj["lists"]
    if isinstance(raw, dict):
        try:
            keyed = {int(k): v for k, v in raw.items()}
        except ValueError:
            raise InputError("list keys must be vertex numbers", source=source, field="lists") from None
        count = n if n is not None else (max(keyed) + 1 if keyed else 0)
        missing = [v for v in range(count) if v not in keyed]
        if missing or any(not 0 <= v < count for v in keyed):
            raise InputError(f"lists must cover vertices 0..{count - 1} exactly", source=source, field="lists")
        seq = [keyed[v] for v in range(count)]
    elif isinstance(raw, list):
        seq = raw
    else:
        raise InputError("lists must be an object or an array", source=source, field="lists")
    if n is not None and len(seq) != n:
        raise InputError(f"{len(seq)} lists for {n} vertices", source=source, field="lists")
    lists = []
    for v, l in enumerate(seq):
        if not isinstance(l, list):
            raise InputError(f"list of vertex {v} must be an array", source=source, field="lists")
        cols = [_int(c, "lists", source) for c in l]
        if len(set(cols)) != len(cols):
            raise InputError(f"list of vertex {v} repeats a colour", source=source, field="lists")
        lists.append(frozenset(cols))
    base = ListAssignment(tuple(lists))
    if "groups" not in obj and "lambda" not in obj:
        return base
    if "groups" not in obj:
        raise InputError("a lambda-assignment needs colour groups", source=source, field="groups")
    groups = []
    for i, grp in enumerate(obj["groups"]):
        if not isinstance(grp, list):
            raise InputError(f"group {i} must be an array", source=source, field="groups")
        groups.append(frozenset(_int(c, "groups", source) for c in grp))
    for i in range(len(groups)):
        for j in range(i + 1, len(groups)):
            if groups[i] & groups[j]:
                raise InputError(f"colour groups {i} and {j} are not disjoint", source=source, field="groups")
    lam = None
    if obj.get("lambda") is not None:
        try:
            lam = IntPartition.parse(str(obj["lambda"]))
        except ValueError as exc:
            raise InputError(str(exc), source=source, field="lambda") from None
    try:
        la = LambdaAssignment.from_groups(base, groups, lam)
    except ValueError as exc:
        raise InputError(str(exc), source=source, field="groups") from None
    rep = validate_lambda(la)
    if not rep:
        raise InputError(rep.problem, source=source, field="lists")
    return la


def assignment_to_json(a: ListAssignment | LambdaAssignment) -> dict[str, Any]:
    out: dict[str, Any] = {"lists": {str(v): sorted(l) for v, l in enumerate(a.lists)}}
    if isinstance(a, LambdaAssignment):
        out["lambda"] = str(a.partition)
        out["groups"] = [sorted(g) for g in a.groups]
    return out


def parse_assignment(path: str | Path, n: int | None = None) -> ListAssignment | LambdaAssignment:
    return assignment_from_json(_load_json(_read(path), str(path)), n, str(path))


# ---------------------------------------------------------------- signed graphs

def signed_from_json(obj: Any, source: str | None = None) -> SignedGraph:
    """Graph object plus ``signs`` triples; unlisted edges are positive."""
    g = plain_graph(graph_from_json(obj, source))
    signs = [1] * g.m
    seen = set()
    for t in obj.get("signs", []):
        if not isinstance(t, list) or len(t) != 3:
            raise InputError("each sign must be [u, v, +1 or -1]", source=source, field="signs")
        u, v, s = (_int(x, "signs", source) for x in t)
        e = norm_edge(u, v)
        if e not in g.edge_index:
            raise InputError(f"sign given for non-edge {e}", source=source, field="signs")
        if s not in (1, -1):
            raise InputError(f"sign of {e} must be +1 or -1", source=source, field="signs")
        if e in seen:
            raise InputError(f"edge {e} signed twice", source=source, field="signs")
        seen.add(e)
        signs[g.edge_index[e]] = s
    return SignedGraph(g, tuple(signs))


def signed_to_json(sg: SignedGraph) -> dict[str, Any]:
    out = graph_to_json(sg.graph)
    out["signs"] = [list(t) for t in sg.triples()]
    return out


def parse_signed(path: str | Path) -> SignedGraph:
    return signed_from_json(_load_json(_read(path), str(path)), str(path))


# ---------------------------------------------------------------- permutation sets

def permset_from_json(obj: Any, source: str | None = None) -> PermSet:
    """``{"k": 3, "perms": ["(12)", "2,1,3"], "close": false}``."""
    if isinstance(obj, list):
        obj = {"perms": obj}
    if not isinstance(obj, dict) or not isinstance(obj.get("perms"), list):
        raise InputError("expected an object with a 'perms' array", source=source)
    k = obj.get("k")
    if k is not None:
        k = _int(k, "k", source)
    perms: list[Permutation] = []
    texts = [",".join(map(str, t)) if isinstance(t, list) else str(t) for t in obj["perms"]]
    for text in texts:
        try:
            perms.append(parse_permutation(text, k))
        except ValueError as exc:
            raise InputError(str(exc), source=source, field="perms") from None
    if k is None and perms:
        k = max(p.k for p in perms)
        perms = [parse_permutation(t, k) for t in texts]
    try:
        return PermSet.of(perms, close=bool(obj.get("close", False)))
    except ValueError as exc:
        raise InputError(str(exc), source=source, field="perms") from None


def permset_to_json(s: PermSet) -> dict[str, Any]:
    return {"k": s.k, "perms": [",".join(map(str, p.one_line())) for p in s.members]}


def parse_permset(path: str | Path) -> PermSet:
    return permset_from_json(_load_json(_read(path), str(path)), str(path))
