"""Faces: recognition, extension from edges at a vertex, enumeration and
intersections."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from . import gf2
from .gf2 import GF2Subspace
from .skeleton import ColoredSkeleton, independence_level, quotient_multiset


class FaceError(ValueError):
    pass


class EnumerationRefused(FaceError):
    pass


class InvariantViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class Face:
    host: ColoredSkeleton = field(compare=False, repr=False, hash=False)
    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    dim: int
    span: GF2Subspace = field(compare=False)

    @property
    def key(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        return (self.vertices, self.edges)

    def edges_at(self, p: str) -> list[str]:
        eset = set(self.edges)
        return [x for x in self.host.star[p] if x in eset]

    def contains(self, other: "Face") -> bool:
        return set(other.vertices) <= set(self.vertices) and set(other.edges) <= set(self.edges)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": list(self.vertices),
            "edges": list(self.edges),
            "span": self.span.bitstrings(),
        }


@dataclass(frozen=True)
class NoFace:
    """Extension failure; ``condition`` is the first failed check."""

    vertex: str
    seed_edges: tuple[str, ...]
    condition: str
    detail: str

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {
            "face": None,
            "vertex": self.vertex,
            "seed_edges": list(self.seed_edges),
            "condition": self.condition,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class FaceCheck:
    ok: bool
    dim: int | None = None
    span: GF2Subspace | None = None
    condition: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _components(vertices: Iterable[str], edges: Iterable[str], s: ColoredSkeleton) -> list[tuple[list[str], list[str]]]:
    vset = set(vertices)
    adj: dict[str, list[tuple[str, str]]] = {p: [] for p in vset}
    for eid in edges:
        e = s.edge[eid]
        adj[e.u].append((eid, e.v))
        adj[e.v].append((eid, e.u))
    seen: set[str] = set()
    out = []
    for p in sorted(vset):
        if p in seen:
            continue
        seen.add(p)
        cv, ce, stack = [], set(), [p]
        while stack:
            x = stack.pop()
            cv.append(x)
            for eid, y in adj[x]:
                ce.add(eid)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        out.append((sorted(cv), sorted(ce)))
    return out


def _check_face(s: ColoredSkeleton, vertices: Sequence[str], edges: Sequence[str], k_span: GF2Subspace | None = None) -> FaceCheck:
    """Regularity, then constant span, then congruence (connectivity is the caller's job)."""
    eset = set(edges)
    local = {p: [x for x in s.star[p] if x in eset] for p in vertices}
    degrees = Counter(len(v) for v in local.values())
    if len(degrees) != 1:
        bad = next(p for p in vertices if len(local[p]) != len(local[vertices[0]]))
        return FaceCheck(False, condition="regularity", detail=f"vertex {bad!r} has {len(local[bad])} face edges, vertex {vertices[0]!r} has {len(local[vertices[0]])}")
    m = degrees.most_common(1)[0][0]
    spans = {p: gf2.span((s.alpha(x) for x in local[p]), s.k) for p in vertices}
    K = k_span if k_span is not None else spans[vertices[0]]
    for p in vertices:
        if spans[p] != K:
            return FaceCheck(False, condition="span", detail=f"colors at {p!r} span {spans[p]}, expected {K}")
    for eid in sorted(eset):
        e = s.edge[eid]
        c = e.color
        if quotient_multiset((s.alpha(x) for x in local[e.u]), c) != quotient_multiset((s.alpha(x) for x in local[e.v]), c):
            return FaceCheck(False, condition="congruence", detail=f"face edge {eid!r} violates the congruence")
    return FaceCheck(True, dim=m, span=K)


def is_face(s: ColoredSkeleton, vertex_set: Iterable[str], edge_set: Iterable[str]) -> FaceCheck:
    vertices = sorted(set(vertex_set))
    edges = sorted(set(edge_set))
    if not vertices:
        return FaceCheck(False, condition="empty", detail="no vertices")
    vset = set(vertices)
    for eid in edges:
        e = s.edge[eid]
        if e.u not in vset or e.v not in vset:
            raise FaceError(f"edge {eid!r} leaves the vertex set")
    if len(_components(vertices, edges, s)) != 1:
        return FaceCheck(False, condition="connectivity", detail="subgraph is disconnected")
    return _check_face(s, vertices, edges)


def make_face(s: ColoredSkeleton, vertex_set: Iterable[str], edge_set: Iterable[str]) -> Face:
    vertices, edges = sorted(set(vertex_set)), sorted(set(edge_set))
    check = is_face(s, vertices, edges)
    if not check:
        raise FaceError(f"not a face: {check.condition}: {check.detail}")
    return Face(s, tuple(vertices), tuple(edges), check.dim, check.span)


def _seed(s: ColoredSkeleton, p: str, E: Iterable[str]) -> tuple[str, ...]:
    if p not in s.star:
        raise FaceError(f"unknown vertex {p!r}")
    seed = tuple(sorted(set(E)))
    for eid in seed:
        if eid not in s.star[p]:
            raise FaceError(f"edge {eid!r} is not at vertex {p!r}")
    if len(seed) > s.n:
        raise FaceError(f"{len(seed)} edges requested but the valence is {s.n}")
    return seed


def vertex_face(s: ColoredSkeleton, p: str) -> Face:
    return Face(s, (p,), (), 0, gf2.span((), s.k))


def extend_face(s: ColoredSkeleton, p: str, E: Iterable[str]) -> Face | NoFace:
    """The face through ``p`` spanned by the edges ``E`` at ``p``.

    Taken as the connected component through ``p`` of the edges whose colors
    lie in ``K = span(alpha(E))``; for ``len(E)`` below the independence level
    this is the unique such face.
    """
    seed = _seed(s, p, E)
    if not seed:
        return vertex_face(s, p)
    K = gf2.span((s.alpha(x) for x in seed), s.k)
    m = len(seed)
    in_k = {e.id for e in s.edges if e.color in K}
    vertices, edges = [p], set()
    seen = {p}
    queue = deque([p])
    while queue:
        x = queue.popleft()
        for eid in s.star[x]:
            if eid in in_k:
                edges.add(eid)
                y = s.edge[eid].other(x)
                if y not in seen:
                    seen.add(y)
                    vertices.append(y)
                    queue.append(y)
    vertices.sort()
    for v in vertices:
        count = sum(1 for x in s.star[v] if x in in_k)
        if count != m:
            return NoFace(p, seed, "regularity", f"vertex {v!r} carries {count} edges colored in {K}, expected {m}")
    check = _check_face(s, vertices, sorted(edges), K)
    if not check:
        return NoFace(p, seed, check.condition, check.detail)
    return Face(s, tuple(vertices), tuple(sorted(edges)), m, K)


def frontier_extend(s: ColoredSkeleton, p: str, E: Iterable[str], order: str = "bfs") -> Face | NoFace:
    """Edge-by-edge propagation: across each chosen edge pick the unique
    ``m``-subset at the far end with the same span and congruent colors."""
    seed = _seed(s, p, E)
    if not seed:
        return vertex_face(s, p)
    m = len(seed)
    K = gf2.span((s.alpha(x) for x in seed), s.k)
    chosen: dict[str, frozenset[str]] = {p: frozenset(seed)}
    pending: deque[str] = deque([p])
    while pending:
        v = pending.popleft() if order == "bfs" else pending.pop()
        here = chosen[v]
        for eid in sorted(here):
            c = s.alpha(eid)
            q = s.edge[eid].other(v)
            target = quotient_multiset((s.alpha(x) for x in here), c)
            candidates = [
                frozenset(F)
                for F in combinations(s.star[q], m)
                if eid in F
                and gf2.span((s.alpha(x) for x in F), s.k) == K
                and quotient_multiset((s.alpha(x) for x in F), c) == target
            ]
            if len(candidates) != 1:
                what = "no" if not candidates else "several"
                return NoFace(p, seed, "propagation", f"{what} admissible edge sets at {q!r} across {eid!r}")
            if q in chosen:
                if chosen[q] != candidates[0]:
                    return NoFace(p, seed, "propagation", f"inconsistent edge sets at {q!r}")
                continue
            chosen[q] = candidates[0]
            pending.append(q)
    edges = sorted(set().union(*chosen.values()))
    return Face(s, tuple(sorted(chosen)), tuple(edges), m, K)


def faces_through(s: ColoredSkeleton, p: str, E: Iterable[str], limit: int | None = None) -> list[Face]:
    """Every face containing the edges ``E`` at ``p`` with exactly those edges at ``p``.

    Exhaustive backtracking over edge subsets; meant for small skeletons and as
    an oracle where extension is not guaranteed to be unique.
    """
    seed = _seed(s, p, E)
    if not seed:
        return [vertex_face(s, p)]
    m = len(seed)
    K = gf2.span((s.alpha(x) for x in seed), s.k)
    found: list[Face] = []

    def consistent(chosen: dict[str, frozenset[str]], q: str, F: frozenset[str]) -> bool:
        for eid in s.star[q]:
            r = s.edge[eid].other(q)
            if r in chosen and (eid in F) != (eid in chosen[r]):
                return False
        for eid in F:
            r = s.edge[eid].other(q)
            if r in chosen:
                c = s.alpha(eid)
                if quotient_multiset((s.alpha(x) for x in F), c) != quotient_multiset((s.alpha(x) for x in chosen[r]), c):
                    return False
        return True

    def frontier(chosen: dict[str, frozenset[str]]) -> str | None:
        for v in sorted(chosen):
            for eid in sorted(chosen[v]):
                q = s.edge[eid].other(v)
                if q not in chosen:
                    return q
        return None

    def walk(chosen: dict[str, frozenset[str]]) -> bool:
        q = frontier(chosen)
        if q is None:
            edges = sorted(set().union(*chosen.values()))
            found.append(Face(s, tuple(sorted(chosen)), tuple(edges), m, K))
            return limit is not None and len(found) >= limit
        for F in combinations(s.star[q], m):
            F = frozenset(F)
            if gf2.span((s.alpha(x) for x in F), s.k) != K or not consistent(chosen, q, F):
                continue
            chosen[q] = F
            stop = walk(chosen)
            del chosen[q]
            if stop:
                return True
        return False

    walk({p: frozenset(seed)})
    return sorted(set(found), key=lambda f: f.key)


def enumeration_allowed(s: ColoredSkeleton, m: int, level: int | None = None) -> bool:
    level = independence_level(s) if level is None else level
    return m <= 1 or m < level or m == s.n or s.k == s.n


def enumerate_faces(s: ColoredSkeleton, dim: int | None = None, force: bool = False) -> list[Face]:
    """All faces of dimension ``dim`` (every dimension when omitted).

    Dimensions where extension is not known to be unique are refused unless
    ``force`` is set, in which case seeds that do not extend are skipped.
    """
    level = independence_level(s)
    dims = range(s.n + 1) if dim is None else [dim]
    out: list[Face] = []
    for m in dims:
        if not 0 <= m <= s.n:
            raise FaceError(f"dimension {m} out of range 0..{s.n}")
        unique = enumeration_allowed(s, m, level)
        if not unique and not force:
            raise EnumerationRefused(
                f"{m}-faces are not guaranteed unique: independence level is {level} and k={s.k} != n={s.n}; use force"
            )
        found: dict[tuple, Face] = {}
        by_vertex: dict[str, list[Face]] = {}
        for p in s.vertices:
            for E in combinations(s.star[p], m):
                if unique and any(set(E) <= set(f.edges) for f in by_vertex.get(p, ())):
                    continue
                face = extend_face(s, p, E)
                if not face:
                    continue
                if face.key not in found:
                    found[face.key] = face
                    for v in face.vertices:
                        by_vertex.setdefault(v, []).append(face)
        out.extend(sorted(found.values(), key=lambda f: f.key))
    return out


def face_intersection(*faces: Face) -> list[Face]:
    """Connected components of the common part of ``faces``, each checked to be a face."""
    if not faces:
        raise FaceError("need at least one face")
    s = faces[0].host
    vertices = set(faces[0].vertices)
    edges = set(faces[0].edges)
    for f in faces[1:]:
        vertices &= set(f.vertices)
        edges &= set(f.edges)
    out = []
    for cv, ce in _components(vertices, edges, s):
        check = _check_face(s, cv, ce)
        if not check:
            raise InvariantViolation(f"intersection component {cv} is not a face: {check.condition}: {check.detail}")
        out.append(Face(s, tuple(cv), tuple(ce), check.dim, check.span))
    return sorted(out, key=lambda f: f.key)


def intersection_components(*faces: Face) -> int:
    """Number of connected components of the intersection (no face check)."""
    s = faces[0].host
    vertices = set.intersection(*(set(f.vertices) for f in faces))
    edges = set.intersection(*(set(f.edges) for f in faces))
    return len(_components(vertices, edges, s))


def facets_containing(s: ColoredSkeleton, F: Face) -> list[Face]:
    """The ``n - m`` facets through a vertex of ``F`` that contain ``F``'s edges there."""
    if s.k != s.n:
        raise FaceError("facets_containing needs a skeleton of type (n, n)")
    if F.dim >= s.n:
        raise FaceError("the face must have dimension below n")
    p = F.vertices[0]
    inside = set(F.edges_at(p))
    facets = []
    for x in s.star[p]:
        if x in inside:
            continue
        facet = extend_face(s, p, [y for y in s.star[p] if y != x])
        if not facet:
            raise InvariantViolation(f"edges at {p!r} without {x!r} do not extend to a facet: {facet.detail}")
        facets.append(facet)
    if F not in face_intersection(*facets):
        raise InvariantViolation(f"face {F.key} is not a component of the intersection of its facets")
    return facets
