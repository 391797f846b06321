from itertools import permutations
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from rankgray import hypergraph as hg

GOLDEN = Path(__file__).parent / "golden"
SIZES = range(3, 13)


def test_triangle_canonical_form():
    t = hg.Triangle.of(3, 1, 2)
    assert (t.a, t.b, t.c) == (1, 2, 3)
    assert hg.Triangle.of(2, 3, 1) == t
    assert hg.Triangle.of(1, 3, 2) != t
    assert t.vertices == {(1, 2), (2, 3), (3, 1)}
    assert hg.triangle_of(t.vertices) == t
    assert t.rotated_to((3, 1)) == (2, 3, 1)
    with pytest.raises(ValueError):
        hg.Triangle.of(1, 1, 2)
    with pytest.raises(ValueError):
        t.rotated_to((1, 3))


@pytest.mark.parametrize("n", SIZES)
def test_build_acyclic(n):
    h = hg.build_acyclic(n)
    assert hg.is_acyclic(h)
    assert len(hg.components(h)) == 2
    assert len(h.hyperedges) == (n * n - n - 2) // 2
    assert set(h.sizes()) == {3}
    covered = set().union(*h.hyperedges)
    assert covered == set(permutations(range(1, n + 1), 2))
    # the triangle on {1, 2, 3} against the orientation stays on its own
    lone = hg.Triangle.of(3, 2, 1).vertices
    assert lone in h.edge_set()
    assert lone in hg.components(h)


@pytest.mark.parametrize("n", SIZES)
def test_closed_form_matches(n):
    assert hg.closed_form(n).edge_set() == hg.build_acyclic(n).edge_set()


@pytest.mark.parametrize("n", [n for n in SIZES if n >= 5])
def test_build_connected(n):
    h = hg.build_connected(n)
    assert hg.is_acyclic(h)
    assert hg.is_connected(h)
    assert len(h.hyperedges) == (n * n - n - 4) // 2
    assert h.sizes().count(6) == 1 and set(h.sizes()) == {3, 6}


@pytest.mark.parametrize("n", [n for n in SIZES if n >= 5])
def test_order_prefix_intersection(n):
    for abcde in [hg.CANONICAL_TUPLE, tuple(range(n - 4, n + 1))]:
        order = hg.order_hyperedges(hg.build_connected(n, abcde))
        assert len(order[0]) == 6
        seen = set(order[0])
        for e in order[1:]:
            assert len(e & seen) == 1
            seen |= e
        assert seen == set(permutations(range(1, n + 1), 2))
        assert hg.shared_vertices(order)[0] is None


@given(st.integers(5, 9).flatmap(lambda n: st.permutations(list(range(1, n + 1))).map(lambda p: (len(p), tuple(p[:5])))))
def test_relabelled_connected_is_still_a_tree(case):
    n, abcde = case
    h = hg.build_connected(n, abcde)
    assert hg.is_acyclic(h) and hg.is_connected(h)
    a, b, c, d, e = abcde
    big = hg.Triangle.of(a, b, e).vertices | hg.Triangle.of(c, d, e).vertices
    assert big in h.edge_set()


def test_cycle_detected():
    a = hg.Triangle.of(1, 2, 3)
    b = hg.Triangle.of(1, 2, 4)
    c = hg.Triangle.of(3, 1, 5)
    d = hg.Triangle.of(4, 1, 5)
    # a-b share (1,2), b-d share (4,1), d-c share (1,5), c-a share (3,1)
    assert hg.is_acyclic(hg.Hypergraph.from_triangles(5, [a, b, c]))
    assert not hg.is_acyclic(hg.Hypergraph.from_triangles(5, [a, b, c, d]))
    with pytest.raises(ValueError):
        hg.order_hyperedges(hg.Hypergraph.from_triangles(5, [a, b, c, d]))


def test_bad_tuple_rejected():
    with pytest.raises(ValueError):
        hg.build_connected(5, (1, 1, 2, 3, 4))
    with pytest.raises(ValueError):
        hg.build_connected(4)


def test_dump_n3():
    assert hg.dump_hypergraph(hg.build_acyclic(3)) == "1,2 ; 2,3 ; 3,1\n1,3 ; 2,1 ; 3,2\n"


def test_golden_order_n5():
    text = hg.dump(hg.order_hyperedges(hg.build_connected(5)))
    assert text == (GOLDEN / "hypergraph_n5_order.txt").read_text()
