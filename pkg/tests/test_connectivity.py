from __future__ import annotations

import networkx as nx
import pytest

from skeleta.connectivity import (
    COMPLETE_GRAPH,
    PreconditionError,
    check_two_connected,
    n_connected_criterion,
    vertex_connectivity,
)
from skeleta.duality import is_simplicial_complex_poset
from skeleta.faces import intersection_components
from skeleta.generators import gen_cube, gen_cycle, gen_k1, gen_product, gen_simplex


def flow_connectivity(s) -> int:
    g = nx.Graph()
    g.add_nodes_from(s.vertices)
    g.add_edges_from((e.u, e.v) for e in s.edges)
    return nx.node_connectivity(g)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_simplex_and_cube(n):
    for s in (gen_simplex(n), gen_cube(n)):
        report = vertex_connectivity(s)
        assert report.vertex_connectivity == n
        assert report.vertex_connectivity == flow_connectivity(s)
        assert report.at_least_n


def test_simplex_is_complete_graph_case():
    assert vertex_connectivity(gen_simplex(4)).min_cut_witness == COMPLETE_GRAPH
    witness = vertex_connectivity(gen_cube(3)).min_cut_witness
    assert len(witness) == 3


@pytest.mark.parametrize("make", [
    lambda: gen_cycle(6),
    lambda: gen_product(gen_simplex(2), gen_cube(2)),
    lambda: gen_product(gen_cycle(5), gen_cycle(4)),
    lambda: gen_k1([str(i) for i in range(6)], [("0", "1"), ("1", "2"), ("2", "0"), ("3", "4"), ("4", "5"), ("5", "3")]),
])
def test_agrees_with_max_flow(make):
    s = make()
    assert vertex_connectivity(s).vertex_connectivity == flow_connectivity(s)


def test_two_connected_under_three_independence(corpus):
    for s in corpus.values():
        if s.n >= 3:
            assert check_two_connected(s).ok


def test_precondition():
    with pytest.raises(PreconditionError):
        check_two_connected(gen_cycle(4))


def test_criterion_on_k5_q4(k5, q4):
    for s in (k5, q4):
        result = n_connected_criterion(s)
        assert result.hypothesis_holds
        assert result.connectivity_conclusion
        assert result.connectivity.vertex_connectivity >= s.n


def test_criterion_implies_n_connected_on_corpus(corpus):
    for name, s in corpus.items():
        if s.n < 3:
            continue
        result = n_connected_criterion(s)
        if result.hypothesis_holds:
            assert result.connectivity_conclusion, name
        if is_simplicial_complex_poset(s):
            assert vertex_connectivity(s).vertex_connectivity >= s.n, name


def test_converse_fails(disconnected_witness):
    assert disconnected_witness
    s = disconnected_witness.skeleton
    assert (s.k, s.n) == (3, 3)
    result = n_connected_criterion(s)
    assert result.connectivity.vertex_connectivity >= 3
    assert not result.hypothesis_holds
    a, b = result.violating_pair
    assert intersection_components(a, b) >= 2
    assert vertex_connectivity(s).vertex_connectivity == flow_connectivity(s)


def test_report_json(q4):
    doc = vertex_connectivity(q4).to_json()
    assert doc["connectivity"] == 4 and doc["at_least_n"] is True
