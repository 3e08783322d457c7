"""Canonical skeletons: simplices, cubes, single-color graphs and products."""

from __future__ import annotations

from collections import Counter
from itertools import product
from typing import Iterable, Sequence

from .duality import CharacteristicFunction, reconstruct_alpha
from .gf2 import basis_vector
from .skeleton import ColoredSkeleton, SkeletonError, validate


def _checked(s: ColoredSkeleton) -> ColoredSkeleton:
    report = validate(s)
    if not report.ok:
        raise RuntimeError(f"generator produced an invalid skeleton: {report.to_json()}")
    return s


def _simplex_edge_id(i: int, j: int, n: int) -> str:
    return f"{i}{j}" if n < 10 else f"{i}-{j}"


def gen_simplex(n: int) -> ColoredSkeleton:
    """Complete graph on ``n + 1`` vertices colored through its facet normals:
    facet ``F_i`` omits vertex ``i``, ``lambda(F_i) = e_i`` and
    ``lambda(F_0) = e_1 + ... + e_n``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    vertices = [str(i) for i in range(n + 1)]
    pairs = [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)]
    edge_ids = {pair: _simplex_edge_id(*pair, n) for pair in pairs}
    facets = {}
    values = {}
    for omit in range(n + 1):
        fid = f"F{omit}"
        facets[fid] = (
            tuple(v for v in vertices if v != str(omit)),
            tuple(sorted(eid for (i, j), eid in edge_ids.items() if omit not in (i, j))),
        )
        values[fid] = (1 << n) - 1 if omit == 0 else basis_vector(omit, n)
    if n == 1:
        # facets are the two vertices; the one edge lies in none of them
        colors = {edge_ids[(0, 1)]: 1}
    else:
        colors = reconstruct_alpha(edge_ids.values(), CharacteristicFunction(n, facets, values))
    edges = [(eid, str(i), str(j), colors[eid]) for (i, j), eid in edge_ids.items()]
    return _checked(ColoredSkeleton.build(n, n, vertices, edges))


def gen_cube(n: int) -> ColoredSkeleton:
    """``{0,1}^n`` with the direction-``i`` edges colored ``r_i``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    vertices = ["".join(bits) for bits in product("01", repeat=n)]
    edges = []
    for v in vertices:
        for i in range(n):
            if v[i] == "0":
                w = v[:i] + "1" + v[i + 1:]
                edges.append((f"{v}/{i + 1}", v, w, basis_vector(i + 1, n)))
    return _checked(ColoredSkeleton.build(n, n, vertices, edges))


def gen_k1(vertices: Iterable[str], edges: Iterable[Sequence[str]]) -> ColoredSkeleton:
    """Color a loopless regular multigraph with the single nonzero character.

    Edges are ``(id, u, v)`` or ``(u, v)`` (ids are then assigned ``e0, e1, ...``).
    """
    vertices = list(vertices)
    raw = []
    for i, e in enumerate(edges):
        if len(e) == 3:
            raw.append((e[0], e[1], e[2], 1))
        elif len(e) == 2:
            raw.append((f"e{i}", e[0], e[1], 1))
        else:
            raise SkeletonError(f"edge {e!r} must be (id, u, v) or (u, v)")
    degree = Counter()
    for _, u, v, _ in raw:
        degree[u] += 1
        degree[v] += 1
    valences = {degree[p] for p in vertices}
    if len(valences) != 1:
        raise SkeletonError(f"graph is not regular: valences {sorted(valences)}")
    n = valences.pop()
    if n < 1:
        raise SkeletonError("graph has no edges")
    return _checked(ColoredSkeleton.build(1, n, vertices, raw))


def gen_cycle(length: int) -> ColoredSkeleton:
    vertices = [str(i) for i in range(length)]
    return gen_k1(vertices, [(f"e{i}", str(i), str((i + 1) % length)) for i in range(length)])


def gen_product(a: ColoredSkeleton, b: ColoredSkeleton) -> ColoredSkeleton:
    """Cartesian product; ``a``'s colors occupy the first ``a.k`` coordinates."""
    for s in (a, b):
        if not validate(s).ok:
            raise SkeletonError("gen_product needs valid skeletons")
    vertices = [f"{p}|{q}" for p in a.vertices for q in b.vertices]
    edges = []
    for e in a.edges:
        for q in b.vertices:
            edges.append((f"{e.id}|{q}", f"{e.u}|{q}", f"{e.v}|{q}", e.color << b.k))
    for p in a.vertices:
        for e in b.edges:
            edges.append((f"{p}|{e.id}", f"{p}|{e.u}", f"{p}|{e.v}", e.color))
    return _checked(ColoredSkeleton.build(a.k + b.k, a.n + b.n, vertices, edges))
