"""Colored regular multigraphs and the two coloring axioms.

Colors are GF(2) bitsets (see :mod:`skeleta.gf2`).  Every edge contributes one
dart (half-edge) at each endpoint, so the star ``E_p`` of a vertex is the list
of edge ids incident to it, parallel edges included.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from . import gf2
from .gf2 import format_bits, parse_bits


class SkeletonError(ValueError):
    """Structurally malformed skeleton or document."""


class DocumentParseError(SkeletonError):
    """The input is not JSON at all."""


class P2Violation(SkeletonError):
    pass


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    color: int

    def other(self, p: str) -> str:
        if p == self.u:
            return self.v
        if p == self.v:
            return self.u
        raise KeyError(f"{p!r} is not an endpoint of edge {self.id!r}")


@dataclass(frozen=True, eq=False)
class ColoredSkeleton:
    k: int
    n: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.k < 1:
            raise SkeletonError("rank k must be at least 1")
        if len(set(self.vertices)) != len(self.vertices):
            raise SkeletonError("duplicate vertex ids")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            dup = sorted(i for i, c in Counter(ids).items() if c > 1)[0]
            raise SkeletonError(f"duplicate edge id {dup!r}")
        known = set(self.vertices)
        degree: Counter[str] = Counter()
        for e in self.edges:
            for p in (e.u, e.v):
                if p not in known:
                    raise SkeletonError(f"edge {e.id!r}: unknown vertex {p!r}")
            if e.u == e.v:
                raise SkeletonError(f"edge {e.id!r}: loop at vertex {e.u!r}")
            if e.color == 0:
                raise SkeletonError(f"edge {e.id!r}: zero color is not allowed")
            if e.color >> self.k:
                raise SkeletonError(f"edge {e.id!r}: color does not fit in rank {self.k}")
            degree[e.u] += 1
            degree[e.v] += 1
        for p in self.vertices:
            if degree[p] != self.n:
                raise SkeletonError(f"vertex {p!r} has valence {degree[p]}, expected {self.n}")

    @classmethod
    def build(cls, k: int, n: int, vertices: Iterable[str], edges: Iterable[tuple[str, str, str, int]]) -> "ColoredSkeleton":
        """Construct from ``(id, u, v, color)`` tuples; vertices and edges are sorted."""
        return cls(
            k,
            n,
            tuple(sorted(vertices)),
            tuple(sorted((Edge(*e) for e in edges), key=lambda e: e.id)),
        )

    @cached_property
    def edge(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def star(self) -> dict[str, tuple[str, ...]]:
        """Edge ids at each vertex, sorted."""
        acc: dict[str, list[str]] = {p: [] for p in self.vertices}
        for e in self.edges:
            acc[e.u].append(e.id)
            acc[e.v].append(e.id)
        return {p: tuple(sorted(ids)) for p, ids in acc.items()}

    @property
    def darts(self) -> list[tuple[str, str]]:
        return [(p, eid) for p in self.vertices for eid in self.star[p]]

    def alpha(self, eid: str) -> int:
        return self.edge[eid].color

    def colors_at(self, p: str) -> list[int]:
        return [self.edge[eid].color for eid in self.star[p]]

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        """Underlying simple graph."""
        acc: dict[str, set[str]] = {p: set() for p in self.vertices}
        for e in self.edges:
            acc[e.u].add(e.v)
            acc[e.v].add(e.u)
        return {p: frozenset(s) for p, s in acc.items()}

    def components(self) -> list[list[str]]:
        seen: set[str] = set()
        out = []
        for p in self.vertices:
            if p in seen:
                continue
            comp, stack = [], [p]
            seen.add(p)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adjacency[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def recolor(self, colors: Mapping[str, int]) -> "ColoredSkeleton":
        """Copy with some edge colors replaced."""
        unknown = set(colors) - set(self.edge)
        if unknown:
            raise SkeletonError(f"unknown edge ids {sorted(unknown)}")
        edges = tuple(Edge(e.id, e.u, e.v, colors.get(e.id, e.color)) for e in self.edges)
        return ColoredSkeleton(self.k, self.n, self.vertices, edges)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "vertices": list(self.vertices),
            "edges": [
                {"id": e.id, "ends": [e.u, e.v], "color": format_bits(e.color, self.k)}
                for e in self.edges
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def __repr__(self) -> str:
        return f"ColoredSkeleton(k={self.k}, n={self.n}, |V|={len(self.vertices)}, |E|={len(self.edges)})"


def _require(doc: Mapping, key: str, kind: type, where: str):
    if key not in doc:
        raise SkeletonError(f"{where}: missing field {key!r}")
    value = doc[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise SkeletonError(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def from_json(doc: Mapping) -> ColoredSkeleton:
    if not isinstance(doc, Mapping):
        raise SkeletonError("document must be a JSON object")
    k = _require(doc, "k", int, "document")
    n = _require(doc, "n", int, "document")
    vertices = _require(doc, "vertices", list, "document")
    raw_edges = _require(doc, "edges", list, "document")
    if k < 1 or n < k:
        raise SkeletonError(f"document: need 1 <= k <= n, got k={k}, n={n}")
    for i, p in enumerate(vertices):
        if not isinstance(p, str):
            raise SkeletonError(f"vertices[{i}]: vertex ids must be strings")
    edges = []
    for i, raw in enumerate(raw_edges):
        where = f"edges[{i}]"
        if not isinstance(raw, Mapping):
            raise SkeletonError(f"{where}: must be an object")
        eid = _require(raw, "id", str, where)
        ends = _require(raw, "ends", list, where)
        if len(ends) != 2 or not all(isinstance(x, str) for x in ends):
            raise SkeletonError(f"{where}: 'ends' must be two vertex ids")
        color = _require(raw, "color", str, where)
        try:
            c = parse_bits(color, k)
        except ValueError as exc:
            raise SkeletonError(f"{where}: bad color {color!r}: {exc}") from None
        edges.append((eid, ends[0], ends[1], c))
    try:
        return ColoredSkeleton.build(k, n, vertices, edges)
    except SkeletonError as exc:
        raise SkeletonError(f"document: {exc}") from None


def load(document: str | bytes) -> ColoredSkeleton:
    """Parse a JSON skeleton document.  Only structure is checked, not the axioms."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(f"JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_json(doc)


def load_file(path) -> ColoredSkeleton:
    with open(path, "rb") as fh:
        return load(fh.read())


@dataclass
class ValidationReport:
    p1_ok: bool
    p1_failures: list[str]
    p2_ok: bool
    p2_failures: list[str]
    regular_ok: bool
    loopless_ok: bool
    independence_level: int
    two_independent_valence_bound_ok: bool
    vertex_levels: dict[str, int] = field(repr=False, default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.p1_ok and self.p2_ok and self.regular_ok and self.loopless_ok

    def to_json(self) -> dict:
        return {
            "valid": self.ok,
            "p1_ok": self.p1_ok,
            "p1_failures": self.p1_failures,
            "p2_ok": self.p2_ok,
            "p2_failures": self.p2_failures,
            "regular_ok": self.regular_ok,
            "loopless_ok": self.loopless_ok,
            "independence_level": self.independence_level,
            "two_independent_valence_bound_ok": self.two_independent_valence_bound_ok,
        }


def quotient_multiset(colors: Iterable[int], mod: int) -> list[int]:
    return sorted(gf2.quotient_rep(c, mod) for c in colors)


def p2_holds(s: ColoredSkeleton, eid: str) -> bool:
    e = s.edge[eid]
    return quotient_multiset(s.colors_at(e.u), e.color) == quotient_multiset(s.colors_at(e.v), e.color)


def validate(s: ColoredSkeleton) -> ValidationReport:
    degree = Counter()
    for e in s.edges:
        degree[e.u] += 1
        degree[e.v] += 1
    p1_failures = [p for p in s.vertices if gf2.rank(s.colors_at(p)) != s.k]
    p2_failures = [e.id for e in s.edges if not p2_holds(s, e.id)]
    levels = {p: gf2.independence_level(s.colors_at(p)) for p in s.vertices}
    level = min(levels.values(), default=s.n)
    return ValidationReport(
        p1_ok=not p1_failures,
        p1_failures=p1_failures,
        p2_ok=not p2_failures,
        p2_failures=p2_failures,
        regular_ok=all(degree[p] == s.n for p in s.vertices),
        loopless_ok=all(e.u != e.v for e in s.edges),
        independence_level=level,
        two_independent_valence_bound_ok=level < 2 or s.n <= (1 << s.k) - 1,
        vertex_levels=levels,
    )


def independence_level(s: ColoredSkeleton) -> int:
    return min((gf2.independence_level(s.colors_at(p)) for p in s.vertices), default=s.n)


@dataclass(frozen=True)
class Connection:
    """Bijection from the star of ``p`` to the star of ``q`` along ``edge``."""

    edge: str
    p: str
    q: str
    mapping: dict[str, str]
    ambiguous: bool
    choice_vertices: tuple[str, ...]

    def __call__(self, eid: str) -> str:
        return self.mapping[eid]


def connection(s: ColoredSkeleton, eid: str, source: str | None = None) -> Connection:
    """The connection along ``eid`` from ``source`` (default: its first endpoint).

    Darts are matched within cosets of ``<alpha(e)>``; when some coset holds
    more than one dart the greedy match over sorted darts is one of several
    admissible choices and the result is flagged ambiguous.
    """
    e = s.edge[eid]
    p = source if source is not None else e.u
    q = e.other(p)
    mod = e.color

    def classes(vertex: str) -> dict[int, list[str]]:
        acc: dict[int, list[str]] = defaultdict(list)
        for x in s.star[vertex]:
            if x != eid:
                acc[gf2.quotient_rep(s.alpha(x), mod)].append(x)
        return acc

    at_p, at_q = classes(p), classes(q)
    if {c: len(v) for c, v in at_p.items()} != {c: len(v) for c, v in at_q.items()}:
        raise P2Violation(f"edge {eid!r}: stars of {p!r} and {q!r} differ modulo its color")
    mapping = {eid: eid}
    ambiguous = False
    for rep in sorted(at_p):
        xs, ys = sorted(at_p[rep]), sorted(at_q[rep])
        if len(xs) > 1:
            ambiguous = True
        mapping.update(zip(xs, ys))
    return Connection(eid, p, q, mapping, ambiguous, tuple(sorted({p, q})) if ambiguous else ())
