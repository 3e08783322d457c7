"""Type (n, n) skeletons: facet normals, recovering colors from them, and the
simplicial poset of faces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import gf2
from .faces import Face, InvariantViolation, enumerate_faces, facets_containing, intersection_components
from .gf2 import GF2Subspace, format_bits
from .skeleton import ColoredSkeleton


class DualityError(ValueError):
    pass


def _require_nn(s: ColoredSkeleton, what: str) -> None:
    if s.k != s.n:
        raise DualityError(f"{what} needs a skeleton of type (n, n); got ({s.k}, {s.n})")
    if not s.is_connected():
        raise DualityError(f"{what} needs a connected skeleton")


def face_span(F: Face) -> GF2Subspace:
    """Span of every edge color of ``F``; equals the span at each of its vertices."""
    s = F.host
    if s.k != s.n:
        raise DualityError("face_span is defined for type (n, n) skeletons")
    K = gf2.span((s.alpha(x) for x in F.edges), s.k)
    if K.rank != F.dim:
        raise InvariantViolation(f"face {F.key} has dimension {F.dim} but its colors span rank {K.rank}")
    for p in F.vertices:
        if gf2.span((s.alpha(x) for x in F.edges_at(p)), s.k) != K:
            raise InvariantViolation(f"span at {p!r} differs from the face span")
    return K


@dataclass(frozen=True)
class CharacteristicFunction:
    n: int
    facets: Mapping[str, tuple[tuple[str, ...], tuple[str, ...]]]
    values: Mapping[str, int]

    def __getitem__(self, facet_id: str) -> int:
        return self.values[facet_id]

    def to_json(self) -> dict:
        return {
            "facets": [
                {"id": fid, "vertices": list(self.facets[fid][0]), "edges": list(self.facets[fid][1]),
                 "lambda": format_bits(self.values[fid], self.n)}
                for fid in self.facets
            ]
        }


def facet_ids(facets: Sequence[Face]) -> dict[str, Face]:
    width = len(str(max(len(facets) - 1, 0)))
    return {f"F{i:0{width}d}": F for i, F in enumerate(facets)}


def characteristic_function(s: ColoredSkeleton) -> CharacteristicFunction:
    """Assign each facet the nonzero dual vector killing its color span."""
    _require_nn(s, "characteristic_function")
    facets = facet_ids(enumerate_faces(s, s.n - 1))
    values = {}
    for fid, F in facets.items():
        ann = gf2.annihilator(face_span(F))
        if ann.rank != 1:
            raise InvariantViolation(f"facet {fid} has annihilator of rank {ann.rank}")
        values[fid] = ann.basis[0]
    for p in s.vertices:
        through = [values[fid] for fid, F in facets.items() if p in F.vertices]
        if len(through) != s.n or gf2.rank(through) != s.n:
            raise InvariantViolation(f"facet normals at {p!r} do not form a basis")
    return CharacteristicFunction(
        s.n, {fid: (F.vertices, F.edges) for fid, F in facets.items()}, values
    )


def reconstruct_alpha(edges: Iterable[str], lam: CharacteristicFunction) -> dict[str, int]:
    """Recover the coloring: each edge gets the nonzero vector killed by the
    normals of the ``n - 1`` facets containing it."""
    n = lam.n
    containing: dict[str, list[str]] = {}
    for fid, (_, fedges) in lam.facets.items():
        for eid in fedges:
            containing.setdefault(eid, []).append(fid)
    alpha = {}
    for eid in edges:
        fids = containing.get(eid, [])
        if len(fids) != n - 1:
            raise DualityError(f"edge {eid!r} lies in {len(fids)} facets, expected {n - 1}")
        normals = gf2.span((lam[f] for f in fids), n)
        if normals.rank != n - 1:
            raise DualityError(f"facet normals around edge {eid!r} are dependent")
        alpha[eid] = gf2.annihilator(normals).basis[0]
    return alpha


@dataclass
class SimplicialPoset:
    rank: int
    elements: list[Face]
    covers: list[tuple[int, int]]
    f_vector: list[int]

    @property
    def bottom(self) -> Face:
        return self.elements[0]

    def ids(self) -> list[str]:
        width = len(str(max(len(self.elements) - 1, 0)))
        return [f"c{i:0{width}d}" for i in range(len(self.elements))]

    def to_json(self) -> dict:
        ids = self.ids()
        return {
            "rank": self.rank,
            "elements": [
                {"id": ids[i], "dim": F.dim, "vertices": list(F.vertices), "edges": list(F.edges)}
                for i, F in enumerate(self.elements)
            ],
            "covers": [[ids[a], ids[b]] for a, b in self.covers],
            "f_vector": self.f_vector,
        }


def _check_boolean_interval(s: ColoredSkeleton, a: Face, below: list[Face]) -> None:
    codim = s.n - a.dim
    if len(below) != 1 << codim:
        raise InvariantViolation(f"interval below {a.key} has {len(below)} elements, expected {1 << codim}")
    if codim == 0:
        return
    facets = facets_containing(s, a)
    labels = {}
    for G in below:
        labels[G.key] = frozenset(i for i, F in enumerate(facets) if F.contains(G))
    if len(set(labels.values())) != len(below):
        raise InvariantViolation(f"interval below {a.key} is not boolean: facet labels collide")
    for G in below:
        for H in below:
            if G.contains(H) != (labels[G.key] <= labels[H.key]):
                raise InvariantViolation(f"interval below {a.key} is not order-isomorphic to a boolean lattice")


def simplicial_poset(s: ColoredSkeleton) -> SimplicialPoset:
    """All faces ordered by reversed inclusion, the whole skeleton first.

    Every lower interval is checked to be boolean of rank equal to the
    codimension, via the facets meeting there.
    """
    _require_nn(s, "simplicial_poset")
    faces = sorted(enumerate_faces(s), key=lambda F: (-F.dim, F.key))
    if not faces or faces[0].dim != s.n:
        raise InvariantViolation("no top-dimensional face")
    for a in faces:
        _check_boolean_interval(s, a, [G for G in faces if G.contains(a)])
    index = {F.key: i for i, F in enumerate(faces)}
    covers = []
    for i, a in enumerate(faces):
        for j, b in enumerate(faces):
            if b.dim == a.dim - 1 and a.contains(b):
                covers.append((i, j))
    f_vector = [sum(1 for F in faces if F.dim == s.n - i - 1) for i in range(s.n)]
    assert len(index) == len(faces)
    return SimplicialPoset(s.n, faces, covers, f_vector)


@dataclass(frozen=True)
class ComplexCheck:
    ok: bool
    witness: tuple[str, ...] = ()
    components: int = 0

    def __bool__(self) -> bool:
        return self.ok


def is_simplicial_complex_poset(s: ColoredSkeleton) -> ComplexCheck:
    """True iff every nonempty intersection of facets is connected.

    Subsets are walked depth-first in increasing index order, pruning as soon as
    the intersection empties, so the witness is the lexicographically least.
    """
    _require_nn(s, "is_simplicial_complex_poset")
    facets = facet_ids(enumerate_faces(s, s.n - 1))
    ids = list(facets)
    found: list[ComplexCheck] = []

    def walk(start: int, chosen: list[str], vertices: set[str], edges: set[str]) -> bool:
        for j in range(start, len(ids)):
            F = facets[ids[j]]
            v = vertices & set(F.vertices) if chosen else set(F.vertices)
            if not v:
                continue
            e = edges & set(F.edges) if chosen else set(F.edges)
            picked = chosen + [ids[j]]
            if len(picked) > 1:
                parts = intersection_components(*(facets[x] for x in picked))
                if parts > 1:
                    found.append(ComplexCheck(False, tuple(picked), parts))
                    return True
            if walk(j + 1, picked, v, e):
                return True
        return False

    walk(0, [], set(), set())
    return found[0] if found else ComplexCheck(True)


def manifold3_check(s: ColoredSkeleton) -> tuple[bool, list[int]]:
    """Evaluate ``f1 == f0 + f3`` on the f-vector of a type (4, 4) skeleton."""
    if s.k != 4 or s.n != 4:
        raise DualityError(f"manifold3_check needs type (4, 4); got ({s.k}, {s.n})")
    f = simplicial_poset(s).f_vector
    return f[1] == f[0] + f[3], f
