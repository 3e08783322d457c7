from __future__ import annotations

import json
from collections import Counter

import pytest

from skeleta.generators import gen_cube, gen_simplex
from skeleta.gf2 import basis_vector, parse_bits
from skeleta.skeleton import (
    ColoredSkeleton,
    DocumentParseError,
    P2Violation,
    SkeletonError,
    connection,
    load,
    validate,
)


def p2_oracle(s: ColoredSkeleton, eid: str) -> bool:
    """Direct check: the two color multisets agree after adding alpha(e) where needed."""
    e = s.edge[eid]
    a = e.color

    def classes(p):
        return Counter(frozenset({c, c ^ a}) for c in s.colors_at(p))

    return classes(e.u) == classes(e.v)


@pytest.mark.parametrize("make,n", [(gen_simplex, 3), (gen_simplex, 4), (gen_cube, 3), (gen_cube, 4)])
def test_generators_satisfy_axioms(make, n):
    report = validate(make(n))
    assert report.ok
    assert report.independence_level == n
    assert report.two_independent_valence_bound_ok


def test_simplex_colors():
    s = gen_simplex(3)
    colors = {e.id: format(e.color, "03b") for e in s.edges}
    assert colors == {"01": "100", "02": "010", "03": "001", "12": "110", "13": "101", "23": "011"}


def test_q3_single_recolor_breaks_p2_at_its_endpoints():
    q3 = gen_cube(3)
    for e in q3.edges:
        for j in range(1, 4):
            c = basis_vector(j, 3)
            if c == e.color:
                continue
            bad = q3.recolor({e.id: c})
            report = validate(bad)
            assert not report.p2_ok
            failures = set(report.p2_failures)
            assert failures == {x.id for x in bad.edges if not p2_oracle(bad, x.id)}
            for fid in failures:
                f = bad.edge[fid]
                assert {f.u, f.v} & {e.u, e.v}


def test_validate_reports_p1():
    s = ColoredSkeleton.build(2, 2, ["a", "b"], [("x", "a", "b", 1), ("y", "a", "b", 1)])
    report = validate(s)
    assert not report.p1_ok
    assert report.p1_failures == ["a", "b"]
    assert report.independence_level == 1


def test_structural_errors():
    with pytest.raises(SkeletonError, match="loop"):
        ColoredSkeleton.build(1, 2, ["a", "b"], [("x", "a", "a", 1), ("y", "a", "b", 1)])
    with pytest.raises(SkeletonError, match="zero color"):
        ColoredSkeleton.build(1, 1, ["a", "b"], [("x", "a", "b", 0)])
    with pytest.raises(SkeletonError, match="valence"):
        ColoredSkeleton.build(1, 2, ["a", "b"], [("x", "a", "b", 1)])
    with pytest.raises(SkeletonError, match="duplicate edge"):
        ColoredSkeleton.build(1, 2, ["a", "b"], [("x", "a", "b", 1), ("x", "a", "b", 1)])
    with pytest.raises(SkeletonError, match="unknown vertex"):
        ColoredSkeleton.build(1, 1, ["a", "b"], [("x", "a", "c", 1)])


def test_json_round_trip():
    s = gen_cube(3)
    t = load(s.dumps())
    assert t.to_json() == s.to_json()
    assert json.loads(s.dumps())["edges"][0]["color"] in {"100", "010", "001"}


def test_load_errors():
    with pytest.raises(DocumentParseError):
        load("{")
    with pytest.raises(SkeletonError, match="missing field 'k'"):
        load('{"n": 1, "vertices": [], "edges": []}')
    with pytest.raises(SkeletonError, match="bad color"):
        load('{"k": 2, "n": 2, "vertices": ["a", "b"], "edges": [{"id": "x", "ends": ["a", "b"], "color": "1"}]}')


def test_connection_matches_cosets():
    s = gen_simplex(3)
    theta = connection(s, "01")
    assert theta.p == "0" and theta.q == "1"
    assert theta("02") == "12"
    assert theta("03") == "13"
    assert not theta.ambiguous
    for x, y in theta.mapping.items():
        a = s.alpha("01")
        assert s.alpha(y) in (s.alpha(x), s.alpha(x) ^ a)


def test_connection_ambiguous_without_three_independence():
    s = ColoredSkeleton.build(2, 3, ["a", "b"], [
        ("x", "a", "b", parse_bits("10")),
        ("y", "a", "b", parse_bits("01")),
        ("z", "a", "b", parse_bits("11")),
    ])
    assert validate(s).ok
    assert connection(s, "x").ambiguous


def test_connection_raises_on_p2_violation():
    bad = gen_cube(3).recolor({"000/1": basis_vector(2, 3)})
    with pytest.raises(P2Violation):
        connection(bad, "000/2")
