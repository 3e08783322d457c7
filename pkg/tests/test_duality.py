from __future__ import annotations

from itertools import combinations

import pytest

from skeleta.duality import (
    DualityError,
    characteristic_function,
    is_simplicial_complex_poset,
    manifold3_check,
    reconstruct_alpha,
    simplicial_poset,
)
from skeleta.faces import enumerate_faces, extend_face, face_intersection, facets_containing
from skeleta.generators import gen_cube, gen_product, gen_simplex
from skeleta.gf2 import dot


def test_round_trip_on_corpus(corpus):
    for name, s in corpus.items():
        lam = characteristic_function(s)
        alpha = reconstruct_alpha([e.id for e in s.edges], lam)
        assert alpha == {e.id: e.color for e in s.edges}, name


def test_lambda_is_dual_basis_at_vertices(corpus):
    for name, s in corpus.items():
        lam = characteristic_function(s)
        for p in s.vertices:
            for eid in s.star[p]:
                for fid, (verts, edges) in lam.facets.items():
                    if p not in verts:
                        continue
                    expected = 0 if eid in edges else 1
                    assert dot(lam[fid], s.alpha(eid)) == expected, name


def test_facets_around_faces(q4, k5):
    """A face is the component through a vertex of the intersection of the facets containing it."""
    for s in (q4, k5):
        for F in enumerate_faces(s):
            if F.dim >= s.n:
                continue
            facets = facets_containing(s, F)
            assert len(facets) == s.n - F.dim
            if facets:
                parts = face_intersection(*facets)
                assert F in parts


def test_poset_k5_q4(k5, q4):
    P = simplicial_poset(k5)
    assert P.rank == 4
    assert P.f_vector == [5, 10, 10, 5]
    assert P.bottom.dim == 4
    Q = simplicial_poset(q4)
    assert Q.f_vector == [8, 24, 32, 16]
    assert len(Q.elements) == 16 + 32 + 24 + 8 + 1


def test_poset_covers_are_codimension_one(q4):
    P = simplicial_poset(q4)
    for a, b in P.covers:
        big, small = P.elements[a], P.elements[b]
        assert big.dim == small.dim + 1
        assert big.contains(small)


def test_complex_check(k5, q4, disconnected_witness):
    assert is_simplicial_complex_poset(k5)
    assert is_simplicial_complex_poset(q4)
    check = is_simplicial_complex_poset(disconnected_witness.skeleton)
    assert not check
    assert len(check.witness) == 2 and check.components == 2


def test_manifold_criterion(k5, q4, disconnected_witness):
    assert manifold3_check(k5) == (True, [5, 10, 10, 5])
    assert manifold3_check(q4) == (True, [8, 24, 32, 16])
    ok, f = manifold3_check(gen_product(gen_simplex(2), gen_simplex(2)))
    assert ok and f == [6, 15, 18, 9]
    ok, f = manifold3_check(gen_product(disconnected_witness.skeleton, gen_cube(1)))
    assert not ok and f == [5, 12, 16, 8]


def test_requires_type_nn():
    s = gen_product(gen_simplex(2), gen_simplex(1))
    characteristic_function(s)
    with pytest.raises(DualityError):
        manifold3_check(gen_cube(3))


def test_json_shapes(q4):
    doc = characteristic_function(q4).to_json()
    assert len(doc["facets"]) == 8
    assert all(len(f["lambda"]) == 4 for f in doc["facets"])
    pdoc = simplicial_poset(q4).to_json()
    assert pdoc["elements"][0]["dim"] == 4
