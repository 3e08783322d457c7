"""Search for small skeletons with prescribed properties.

Graphs are loopless regular multigraphs on ``0..V-1`` enumerated up to
isomorphism.  Colorings are built edge by edge with pruning on the span
axiom, the independence constraint and (partial) congruence checks; the
color sequence at vertex 0 is kept minimal in its GL(k, 2)-orbit and
parallel edges carry nondecreasing colors, which removes symmetric copies
without losing any coloring up to relabeling.
"""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator

import networkx as nx

from . import gf2
from .connectivity import disconnected_face_pair, vertex_connectivity
from .faces import enumerate_faces, extend_face, faces_through
from .obstruction import LocalizationSum, SymmetricExpr, realizability_check
from .skeleton import ColoredSkeleton, validate

INDEPENDENCE_KINDS = ("any", "not-2-independent", "at-least", "exactly")
TARGETS = ("valid", "obstructed", "no-face-extension", "disconnected-face-intersection")


class SearchSpecError(ValueError):
    pass


@dataclass
class SearchSpec:
    k: int
    n: int
    vertex_counts: list[int]
    independence: str = "any"
    level: int | None = None
    target: str = "valid"
    f: str | None = None
    face_dim: int | None = None
    min_connectivity: int | None = None
    max_nodes: int = 5_000_000
    max_seconds: float = 300.0
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise SearchSpecError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if not self.vertex_counts or min(self.vertex_counts) < 2:
            raise SearchSpecError("vertex counts must be at least 2")
        if self.independence not in INDEPENDENCE_KINDS:
            raise SearchSpecError(f"independence must be one of {INDEPENDENCE_KINDS}")
        if self.independence in ("at-least", "exactly") and not self.level:
            raise SearchSpecError(f"independence {self.independence!r} needs a level")
        if self.level is not None and not 1 <= self.level <= self.n:
            raise SearchSpecError(f"level {self.level} out of range 1..{self.n}")
        if self.target not in TARGETS:
            raise SearchSpecError(f"target must be one of {TARGETS}")
        if self.target == "obstructed" and not self.f:
            raise SearchSpecError("target 'obstructed' needs an f expression")
        if self.max_nodes <= 0 or self.max_seconds <= 0:
            raise SearchSpecError("budget must be strictly positive")

    @classmethod
    def from_json(cls, doc: dict) -> "SearchSpec":
        doc = dict(doc)
        budget = doc.pop("budget", {}) or {}
        vc = doc.pop("vertices", doc.pop("vertex_counts", None))
        if vc is None:
            raise SearchSpecError("missing 'vertices'")
        if isinstance(vc, int):
            vc = [vc]
        known = {f for f in cls.__dataclass_fields__} - {"vertex_counts", "max_nodes", "max_seconds"}
        unknown = set(doc) - known
        if unknown:
            raise SearchSpecError(f"unknown fields {sorted(unknown)}")
        return cls(
            vertex_counts=list(vc),
            max_nodes=budget.get("nodes", cls.max_nodes),
            max_seconds=budget.get("seconds", cls.max_seconds),
            **doc,
        )


@dataclass
class Found:
    skeleton: ColoredSkeleton
    witness: dict
    nodes: int
    seconds: float

    def __bool__(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {"found": True, "witness": self.witness, "nodes": self.nodes, "skeleton": self.skeleton.to_json()}


@dataclass
class Exhausted:
    reason: str
    nodes: int
    seconds: float

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"found": False, "reason": self.reason, "nodes": self.nodes}


class _Budget:
    def __init__(self, spec: SearchSpec):
        self.max_nodes = spec.max_nodes
        self.deadline = time.monotonic() + spec.max_seconds
        self.start = time.monotonic()
        self.nodes = 0

    def tick(self) -> bool:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            return False
        if self.nodes & 0x3FF == 0 and time.monotonic() > self.deadline:
            return False
        return True

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.start


class BudgetExceeded(Exception):
    pass


def regular_multigraphs(V: int, n: int, connected: bool = True) -> Iterator[list[tuple[int, int, int]]]:
    """Loopless ``n``-regular multigraphs on ``V`` vertices, one per isomorphism
    class, as ``(u, v, multiplicity)`` lists with ``u < v``."""
    if (V * n) % 2:
        return
    pairs = [(i, j) for i in range(V) for j in range(i + 1, V)]
    seen: dict[str, list[nx.MultiGraph]] = {}

    def fill(idx: int, remaining: list[int], mult: list[int]) -> Iterator[list[int]]:
        if idx == len(pairs):
            if not any(remaining):
                yield list(mult)
            return
        i, j = pairs[idx]
        # vertex i sees no later pair once all (i, *) pairs are done
        last_for_i = all(p[0] != i for p in pairs[idx + 1:])
        hi = min(remaining[i], remaining[j])
        lo = remaining[i] if last_for_i else 0
        for m in range(hi, lo - 1, -1):
            remaining[i] -= m
            remaining[j] -= m
            mult.append(m)
            yield from fill(idx + 1, remaining, mult)
            mult.pop()
            remaining[i] += m
            remaining[j] += m

    for mult in fill(0, [n] * V, []):
        g = nx.Graph()
        g.add_nodes_from(range(V))
        for (i, j), m in zip(pairs, mult):
            if m:
                g.add_edge(i, j, m=m)
        if connected and not nx.is_connected(g):
            continue
        h = nx.weisfeiler_lehman_graph_hash(g, edge_attr="m")
        bucket = seen.setdefault(h, [])
        if any(nx.is_isomorphic(g, other, edge_match=lambda a, b: a["m"] == b["m"]) for other in bucket):
            continue
        bucket.append(g)
        yield [(i, j, m) for (i, j), m in zip(pairs, mult) if m]


def _gl_group(k: int) -> list[list[int]]:
    """Every invertible linear map of GF(2)^k as a lookup table on bitsets."""
    vectors = range(1, 1 << k)
    maps = []
    for images in product(vectors, repeat=k):
        if gf2.rank(images) != k:
            continue
        table = [0] * (1 << k)
        for v in range(1 << k):
            acc = 0
            for b in range(k):
                if (v >> (k - 1 - b)) & 1:
                    acc ^= images[b]
            table[v] = acc
        maps.append(table)
    return maps


class _Colorer:
    def __init__(self, V: int, graph: list[tuple[int, int, int]], spec: SearchSpec, budget: _Budget):
        self.V, self.k, self.n = V, spec.k, spec.n
        self.spec = spec
        self.budget = budget
        self.edges: list[tuple[int, int]] = []
        self.group_start: list[int] = []  # index of the first parallel sibling
        for u, v, m in graph:
            start = len(self.edges)
            for _ in range(m):
                self.group_start.append(start)
                self.edges.append((u, v))
        self.star: list[list[int]] = [[] for _ in range(V)]
        for idx, (u, v) in enumerate(self.edges):
            self.star[u].append(idx)
            self.star[v].append(idx)
        self.last_edge = [max(s) for s in self.star]
        self.vertex0_groups = []
        for u, v, m in graph:
            if u == 0:
                start = self.edges.index((u, v))
                self.vertex0_groups.append(range(start, start + m))
        self.gl = _gl_group(self.k) if self.k <= 3 else None
        self.min_level = spec.level if spec.independence in ("at-least", "exactly") else 1
        order = list(range(1, 1 << self.k))
        random.Random(spec.seed).shuffle(order)
        self.order = order
        self.colors = [0] * len(self.edges)

    def _assigned(self, v: int, upto: int) -> list[int]:
        return [self.colors[x] for x in self.star[v] if x <= upto]

    def _vertex_ok(self, v: int) -> bool:
        cols = [self.colors[x] for x in self.star[v]]
        if gf2.rank(cols) != self.k:
            return False
        if self.min_level > 1 and gf2.independence_level(cols) < self.min_level:
            return False
        return True

    def _congruence_ok(self, idx: int) -> bool:
        """Partial congruence at both ends of edge ``idx`` against finished neighbors."""
        for v in self.edges[idx]:
            for e in self.star[v]:
                if e > idx:
                    continue
                w = self.edges[e][0] if self.edges[e][1] == v else self.edges[e][1]
                if self.last_edge[w] > idx:
                    continue
                c = self.colors[e]
                mine = Counter(gf2.quotient_rep(x, c) for x in self._assigned(v, idx))
                theirs = Counter(gf2.quotient_rep(self.colors[x], c) for x in self.star[w])
                if mine - theirs:
                    return False
        return True

    def _vertex0_canonical(self) -> bool:
        current = [sorted(self.colors[x] for x in g) for g in self.vertex0_groups]
        flat = [c for g in current for c in g]
        for table in self.gl:
            image = [c for g in current for c in sorted(table[x] for x in g)]
            if image < flat:
                return False
        return True

    def run(self) -> Iterator[list[int]]:
        E = len(self.edges)

        def assign(idx: int) -> Iterator[list[int]]:
            if idx == E:
                yield list(self.colors)
                return
            lower = self.colors[idx - 1] if idx and self.group_start[idx] != idx else 1
            for c in self.order:
                if c < lower:
                    continue
                if not self.budget.tick():
                    raise BudgetExceeded
                self.colors[idx] = c
                ok = True
                for v in self.edges[idx]:
                    if self.last_edge[v] == idx and not self._vertex_ok(v):
                        ok = False
                        break
                if ok and self.gl is not None and self.last_edge[0] == idx and not self._vertex0_canonical():
                    ok = False
                if ok and not self._congruence_ok(idx):
                    ok = False
                if ok:
                    yield from assign(idx + 1)
            self.colors[idx] = 0

        yield from assign(0)

    def skeleton(self, colors: list[int]) -> ColoredSkeleton:
        width = len(str(len(colors) - 1))
        edges = [(f"e{i:0{width}d}", str(u), str(v), colors[i]) for i, (u, v) in enumerate(self.edges)]
        return ColoredSkeleton.build(self.k, self.n, [str(v) for v in range(self.V)], edges)


def _independence_ok(spec: SearchSpec, level: int) -> bool:
    if spec.independence == "not-2-independent":
        return level < 2
    if spec.independence == "at-least":
        return level >= spec.level
    if spec.independence == "exactly":
        return level == spec.level
    return True


def check_target(s: ColoredSkeleton, spec: SearchSpec) -> dict | None:
    """Re-run the target predicate; returns the witness description or None."""
    report = validate(s)
    if not report.ok or not s.is_connected() or not _independence_ok(spec, report.independence_level):
        return None
    if spec.min_connectivity is not None and vertex_connectivity(s).vertex_connectivity < spec.min_connectivity:
        return None
    witness: dict = {"independence_level": report.independence_level}
    if spec.target == "valid":
        return witness
    if spec.target == "obstructed":
        f = SymmetricExpr.parse(spec.f)
        total = LocalizationSum(s)(f)
        if total.is_polynomial():
            return None
        witness.update({"f": str(f), "sum": str(total)})
        return witness
    if spec.target == "no-face-extension":
        m = spec.face_dim or s.k
        for p in s.vertices:
            for E in combinations(s.star[p], m):
                if gf2.rank(s.alpha(x) for x in E) != m:
                    continue
                if extend_face(s, p, E):
                    continue
                if faces_through(s, p, E, limit=1):
                    continue
                witness.update({"vertex": p, "edges": list(E)})
                return witness
        return None
    if spec.target == "disconnected-face-intersection":
        dims = [spec.face_dim] if spec.face_dim else [1, 2]
        faces = [F for d in dims for F in enumerate_faces(s, d)]
        pair = disconnected_face_pair(faces)
        if pair is None:
            return None
        witness.update({"faces": [F.to_json() for F in pair],
                        "connectivity": vertex_connectivity(s).vertex_connectivity})
        return witness
    raise SearchSpecError(f"unknown target {spec.target!r}")


def search_all(spec: SearchSpec, limit: int | None = None) -> Iterator[Found | Exhausted]:
    """Yield every witness in enumeration order; ends with an :class:`Exhausted`
    record when the space or the budget runs out."""
    budget = _Budget(spec)
    count = 0
    try:
        for V in sorted(spec.vertex_counts):
            for graph in regular_multigraphs(V, spec.n):
                colorer = _Colorer(V, graph, spec, budget)
                for colors in colorer.run():
                    s = colorer.skeleton(colors)
                    witness = check_target(s, spec)
                    if witness is None:
                        continue
                    count += 1
                    yield Found(s, witness, budget.nodes, budget.elapsed)
                    if limit is not None and count >= limit:
                        return
    except BudgetExceeded:
        yield Exhausted("budget", budget.nodes, budget.elapsed)
        return
    yield Exhausted("space", budget.nodes, budget.elapsed)


def search(spec: SearchSpec) -> Found | Exhausted:
    """First witness in the canonical enumeration order, or :class:`Exhausted`."""
    return next(search_all(spec, limit=1))


def load_spec(path) -> SearchSpec:
    with open(path) as fh:
        return SearchSpec.from_json(json.load(fh))
