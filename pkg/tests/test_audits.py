import networkx as nx
import pytest

from twistcube.audits import (
    adjacent_pair_identity_audit,
    book_lemma_check,
    edge_bound,
    local_structure_audit,
    neighborhood_bound_audit,
    p2_isolating_family_audit,
    star_family_edge_audit,
    vertex_bound,
)
from twistcube.structures import Shape
from twistcube.topology import ImplicitTopology, build_recursive

from test_oracles import GraphTopology


@pytest.mark.parametrize("shape, vb, eb", [
    ("k13", 2, 3), ("k14", 2, 4), ("k11", 2, 4), ("p1", 1, None), ("p2", 1, None),
    ("p3", 2, 2), ("p4", 2, 3), ("p5", 3, 4), ("p6", 3, 4), ("p7", 4, 5), ("p8", 4, 6),
])
def test_bounds(shape, vb, eb):
    s = Shape.parse(shape)
    assert vertex_bound(s) == vb and edge_bound(s) == eb


@pytest.mark.parametrize("n", [3, 4, 5])
def test_neighborhood_bounds_exhaustive(n):
    topo = build_recursive(n)
    shapes = [Shape("star", r) for r in range(1, n + 1)] + [Shape("path", k) for k in range(1, n + 1)]
    for s in shapes:
        r = neighborhood_bound_audit(topo, s)
        assert r.passed, r.witness
        assert r.details["vertex_max"] <= r.details["vertex_bound"]


def test_neighborhood_bounds_sampled_large():
    r = neighborhood_bound_audit(ImplicitTopology(40), "p7", samples=40, seed=5)
    assert r.passed and r.params["mode"] == "sampled" and r.details["instances"] == 40


def test_audit_catches_star_violation():
    # b0 outside the star sees all three leaves of K_{3,3}
    g = nx.complete_bipartite_graph(3, 3)
    r = neighborhood_bound_audit(GraphTopology(g), "k13")
    assert not r.passed and r.witness["count"] == 3


def test_audit_catches_edge_touching_center():
    g = nx.Graph([(0, 1), (0, 2), (0, 3), (4, 1), (4, 2), (4, 5), (5, 3), (5, 0)])
    r = neighborhood_bound_audit(GraphTopology(g), "k13")
    assert not r.passed and "edge" in r.witness


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_star_family_edge_audit(n):
    r = star_family_edge_audit(build_recursive(n))
    assert r.passed and r.details["widest_star"] <= 4


def test_star_family_edge_audit_sampled():
    assert star_family_edge_audit(ImplicitTopology(30), samples=20).passed


def test_book_lemma_both_regimes():
    small = book_lemma_check(6)
    assert small.passed and small.params["regime"] == "c4-book"
    big = book_lemma_check(100, samples=20, seed=1)
    assert big.passed and big.params["regime"] == "no-book"


def test_p2_family_audit_domain():
    assert p2_isolating_family_audit(85, samples=10).passed
    with pytest.raises(ValueError):
        p2_isolating_family_audit(20)


@pytest.mark.parametrize("n", range(1, 9))
def test_local_structure_exhaustive(n):
    r = local_structure_audit(build_recursive(n))
    assert r.passed
    if n >= 2:
        assert r.details["max_common"] == 2


def test_local_structure_catches_triangle():
    r = local_structure_audit(GraphTopology(nx.complete_graph(4)))
    assert not r.passed


@pytest.mark.parametrize("n", range(2, 9))
def test_adjacent_pair_identity_exhaustive(n):
    assert adjacent_pair_identity_audit(build_recursive(n)).passed


def test_reports_are_seeded():
    a = neighborhood_bound_audit(build_recursive(6), "k14", samples=100, seed=9)
    b = neighborhood_bound_audit(build_recursive(6), "k14", samples=100, seed=9)
    assert a.to_dict() | {"elapsed_ms": 0} == b.to_dict() | {"elapsed_ms": 0}
