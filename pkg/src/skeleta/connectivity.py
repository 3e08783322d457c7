"""Vertex connectivity by exhaustive deletion, and the 2- and n-connectedness
criteria for skeletons with 3-independent colorings."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .faces import Face, enumerate_faces, intersection_components
from .skeleton import ColoredSkeleton, independence_level


class PreconditionError(ValueError):
    pass


COMPLETE_GRAPH = "complete-graph case"


@dataclass(frozen=True)
class ConnectivityReport:
    vertex_connectivity: int
    min_cut_witness: tuple[str, ...] | str
    whitney_checked_up_to: int
    n: int

    @property
    def at_least_n(self) -> bool:
        return self.vertex_connectivity >= self.n

    def to_json(self) -> dict:
        return {
            "connectivity": self.vertex_connectivity,
            "at_least_n": self.at_least_n,
            "witness": self.min_cut_witness if isinstance(self.min_cut_witness, str) else list(self.min_cut_witness),
            "whitney_checked_up_to": self.whitney_checked_up_to,
        }


def _connected_without(adj: Mapping[str, frozenset[str]], removed: set[str]) -> bool:
    rest = [p for p in adj if p not in removed]
    if len(rest) <= 1:
        return True
    seen = {rest[0]}
    stack = [rest[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen and y not in removed:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(rest)


def vertex_connectivity(s: ColoredSkeleton) -> ConnectivityReport:
    """Smallest separating vertex set, searched by size in lexicographic order.

    Sizes up to ``n`` are tried (the valence bounds the connectivity of the
    underlying simple graph from above).  When nothing separates the graph it
    is complete and its connectivity is ``|V| - 1``.
    """
    adj = s.adjacency
    vertices = sorted(adj)
    if not _connected_without(adj, set()):
        return ConnectivityReport(0, (), 0, s.n)
    limit = min(s.n, len(vertices) - 2)
    for d in range(1, limit + 1):
        for cut in combinations(vertices, d):
            if not _connected_without(adj, set(cut)):
                return ConnectivityReport(d, cut, d, s.n)
    return ConnectivityReport(len(vertices) - 1, COMPLETE_GRAPH, max(limit, 0), s.n)


@dataclass(frozen=True)
class TwoConnected:
    ok: bool
    certificate: tuple[str, ...] = ()


def _require_three_independent(s: ColoredSkeleton, what: str) -> int:
    if not s.is_connected():
        raise PreconditionError(f"{what} needs a connected skeleton")
    level = independence_level(s)
    if level < 3:
        raise PreconditionError(f"{what} needs a 3-independent coloring; independence level is {level}")
    return level


def check_two_connected(s: ColoredSkeleton) -> TwoConnected:
    """Connectivity at least 2; the certificate is a cut vertex when it fails."""
    _require_three_independent(s, "check_two_connected")
    report = vertex_connectivity(s)
    if report.vertex_connectivity >= 2:
        return TwoConnected(True)
    return TwoConnected(False, tuple(report.min_cut_witness))


@dataclass(frozen=True)
class NConnectedResult:
    hypothesis_holds: bool
    violating_pair: tuple[Face, Face] | None
    connectivity: ConnectivityReport

    @property
    def connectivity_conclusion(self) -> bool:
        return self.connectivity.at_least_n

    def to_json(self) -> dict:
        out = {
            "hypothesis_holds": self.hypothesis_holds,
            "violating_pair": [f.to_json() for f in self.violating_pair] if self.violating_pair else None,
            "connectivity_conclusion": self.connectivity_conclusion,
        }
        out.update(self.connectivity.to_json())
        return out


def disconnected_face_pair(faces: list[Face]) -> tuple[Face, Face] | None:
    for a, b in combinations(faces, 2):
        if intersection_components(a, b) > 1:
            return a, b
    return None


def n_connected_criterion(s: ColoredSkeleton) -> NConnectedResult:
    """Check that any two faces of dimension 1 or 2 meet in a connected set or
    not at all, and measure the connectivity either way."""
    _require_three_independent(s, "n_connected_criterion")
    faces = enumerate_faces(s, 1) + enumerate_faces(s, 2)
    pair = disconnected_face_pair(faces)
    return NConnectedResult(pair is None, pair, vertex_connectivity(s))
