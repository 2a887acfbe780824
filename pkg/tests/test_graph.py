from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antimagic_join.errors import InvalidInput, InvalidParameter, MergeConflict, SizeLimitExceeded
from antimagic_join.graph import (
    Graph,
    Kind,
    VertexTag,
    chromatic_number,
    disjoint_copies,
    is_k_colorable,
    join,
    make_matching,
    make_null,
    merge_vertices,
)


@st.composite
def small_graphs(draw, max_order=8):
    n = draw(st.integers(0, max_order))
    verts = [VertexTag.u(i) for i in range(1, n + 1)]
    pairs = list(itertools.combinations(verts, 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(verts, chosen)


def set_partitions(items):
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[head]] + part
        for idx in range(len(part)):
            yield part[:idx] + [[head] + part[idx]] + part[idx + 1:]


def naive_chromatic(g: Graph) -> int:
    # fewest independent sets covering the vertices, over all set partitions
    best = g.order
    for part in set_partitions(list(g.vertices)):
        if len(part) < best and all(
            not g.has_edge(a, b) for block in part for a, b in itertools.combinations(block, 2)
        ):
            best = len(part)
    return best


def test_tag_strings_and_json():
    tags = [
        VertexTag.u(3),
        VertexTag.v(1),
        VertexTag.xflat(2),
        VertexTag.xcopy(3, 2),
        VertexTag.merged([(5, 1), (1, 1), (9, 1)]),
    ]
    assert [str(t) for t in tags] == ["u3", "v1", "x2", "x3,2", "x{1,1;5,1;9,1}"]
    for t in tags:
        assert VertexTag.from_json(t.to_json()) == t
    assert VertexTag.u(1).to_json() == {"kind": "U", "i": 1}


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(kind=Kind.U, i=0),
        dict(kind=Kind.V, i=1, j=2),
        dict(kind=Kind.XFLAT, j=0),
        dict(kind=Kind.XCOPY, i=1),
        dict(kind=Kind.MERGED),
        dict(kind=Kind.MERGED, members=((2, 1), (1, 1))),
    ],
)
def test_malformed_tags(kwargs):
    with pytest.raises(InvalidInput):
        VertexTag(**kwargs)


def test_from_json_rejects_unknown_kind():
    with pytest.raises(InvalidInput):
        VertexTag.from_json({"kind": "W", "i": 1})


def test_graph_rejects_bad_edges():
    a, b = VertexTag.u(1), VertexTag.v(1)
    with pytest.raises(InvalidInput):
        Graph([a, b], [(a, a)])
    with pytest.raises(InvalidInput):
        Graph([a, b], [(a, b), (b, a)])
    with pytest.raises(InvalidInput):
        Graph([a], [(a, b)])
    with pytest.raises(InvalidInput):
        Graph([a, a])


def test_constructors():
    assert make_null(4).size == 0 and make_null(4).order == 4
    m = make_matching(3)
    assert m.size == 3 and m.regular_degree() == 1
    assert len(m.components()) == 3
    with pytest.raises(InvalidParameter):
        make_null(0)
    with pytest.raises(InvalidParameter):
        make_matching(0)


@given(st.integers(1, 5), st.integers(1, 6))
def test_join_size(a, m):
    g, h = make_matching(a), make_null(m)
    j = join(g, h)
    assert j.order == g.order + h.order
    assert j.size == g.size + h.size + g.order * h.order


def test_join_rejects_shared_tags():
    with pytest.raises(InvalidInput):
        join(make_null(2), make_null(3))


@given(st.integers(1, 5), st.integers(1, 4))
@settings(max_examples=30)
def test_copies_order_and_size(k, n):
    even = disjoint_copies(2 * k + 1, join(make_matching(1), make_null(2 * n)))
    assert even.order == (2 * k + 1) * (2 * n + 2)
    assert even.size == (2 * k + 1) * (4 * n + 1)
    odd = disjoint_copies(2 * k + 1, join(make_matching(1), make_null(2 * n + 1)))
    assert odd.order == (2 * k + 1) * (2 * n + 3)
    assert odd.size == (2 * k + 1) * (4 * n + 3)
    assert len(odd.components()) == 2 * k + 1


def test_copies_tag_convention():
    g = disjoint_copies(3, join(make_matching(1), make_null(2)))
    assert VertexTag.u(3) in g and VertexTag.xcopy(3, 2) in g
    assert g.has_edge(VertexTag.v(2), VertexTag.xcopy(2, 1))
    assert not g.has_edge(VertexTag.v(2), VertexTag.xcopy(1, 1))


def test_merge_preserves_size():
    g = disjoint_copies(3, join(make_matching(1), make_null(2)))
    groups = [[VertexTag.xcopy(i, j) for i in (1, 2, 3)] for j in (1, 2)]
    merged = merge_vertices(g, groups)
    assert merged.size == g.size
    assert merged.order == g.order - 4
    x1 = VertexTag.merged([(1, 1), (2, 1), (3, 1)])
    assert merged.degree(x1) == 6
    assert merged.is_connected()


def test_merge_conflicts():
    g = disjoint_copies(2, join(make_matching(1), make_null(2)))
    with pytest.raises(MergeConflict):
        merge_vertices(g, [[VertexTag.u(1), VertexTag.u(2)]])
    with pytest.raises(MergeConflict):
        merge_vertices(g, [[VertexTag.xcopy(1, 1)], [VertexTag.xcopy(1, 1), VertexTag.xcopy(2, 1)]])
    with pytest.raises(MergeConflict):
        merge_vertices(g, [[VertexTag.xcopy(9, 9)]])
    # x_{1,1} and x_{1,2} share u_1, so merging them would double an edge
    with pytest.raises(MergeConflict):
        merge_vertices(g, [[VertexTag.xcopy(1, 1), VertexTag.xcopy(1, 2)]])
    with pytest.raises(MergeConflict):
        merge_vertices(g, [[]])


@given(small_graphs())
@settings(max_examples=80, deadline=None)
def test_chromatic_number_matches_naive(g):
    chi = chromatic_number(g)
    assert chi == naive_chromatic(g)
    assert is_k_colorable(g, chi)
    if chi > 0:
        assert not is_k_colorable(g, chi - 1)


def test_chromatic_number_of_joins():
    for a, m in [(1, 1), (3, 2), (5, 4), (9, 5)]:
        assert chromatic_number(join(make_matching(a), make_null(m))) == 3
    assert chromatic_number(make_null(3)) == 1
    assert chromatic_number(Graph([])) == 0
    verts = [VertexTag.u(i) for i in range(1, 6)]
    k5 = Graph(verts, itertools.combinations(verts, 2))
    assert chromatic_number(k5) == 5
    odd_cycle = Graph(verts, [(verts[i], verts[(i + 1) % 5]) for i in range(5)])
    assert chromatic_number(odd_cycle) == 3


def test_chromatic_number_limit():
    with pytest.raises(SizeLimitExceeded):
        chromatic_number(make_null(70))
    assert chromatic_number(make_null(70), max_order=100) == 1


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_regular_join(k):
    g = join(make_matching(2 * k + 1), make_null(4 * k + 1))
    assert g.is_connected()
    assert g.regular_degree() == 4 * k + 2


def test_graph_equality_and_index():
    a = join(make_matching(2), make_null(2))
    b = join(make_matching(2), make_null(2))
    assert a == b and hash(a) == hash(b)
    for k, e in enumerate(a.edges):
        assert a.edge_index(e) == k
    assert sum(a.degree_sequence()) == 2 * a.size
