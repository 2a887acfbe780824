from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antimagic_join.constructions import (
    EVEN,
    ODD,
    RowRole,
    apply_matrix,
    even_matrix,
    label_join,
    label_matrix,
    odd_matrix,
    pair_sum_constant,
    predicted_colors,
    s_sequence,
)
from antimagic_join.errors import InvalidParameter
from antimagic_join.graph import VertexTag, edge_key
from antimagic_join.labeling import is_local_antimagic

nk = st.tuples(st.integers(1, 10), st.integers(1, 10))
parity = st.sampled_from([EVEN, ODD])


def test_five_row_matrix():
    mat = even_matrix(1, 4)
    assert [list(r) for r in mat.rows] == [
        [45, 43, 41, 39, 37, 44, 42, 40, 38],
        [23, 24, 25, 26, 27, 19, 20, 21, 22],
        [1, 2, 3, 4, 5, 6, 7, 8, 9],
        [14, 15, 16, 17, 18, 10, 11, 12, 13],
        [36, 34, 32, 30, 28, 35, 33, 31, 29],
    ]
    assert mat.shape == (5, 9)


def test_seven_row_matrix():
    mat = odd_matrix(1, 1)
    assert mat.shape == (7, 3)
    assert mat.is_bijective()
    assert str(mat.roles[0]) == "f(u_i x_i,1)"
    assert mat.roles[3] == RowRole("uv")


@given(nk, parity)
@settings(max_examples=60, deadline=None)
def test_matrix_bijective_and_shaped(nk_, par):
    n, k = nk_
    mat = label_matrix(n, k, par)
    rows = 4 * n + 1 if par == EVEN else 4 * n + 3
    assert mat.shape == (rows, 2 * k + 1)
    assert sorted(mat.entries()) == list(range(1, mat.q + 1))


@given(nk, parity)
@settings(max_examples=60, deadline=None)
def test_column_sums_and_s_totals(nk_, par):
    n, k = nk_
    mat = label_matrix(n, k, par)
    pred = predicted_colors(n, k, par)
    heads, tails = mat.column_sums()
    assert set(heads) == {pred.u_color}
    assert set(tails) == {pred.v_color}
    c = pair_sum_constant(n, k, par)
    for j in range(1, mat.m + 1):
        seq = s_sequence(n, k, par, j, mat)
        assert sum(seq) == (2 * k + 1) * c
        steps = {b - a for a, b in zip(seq, seq[1:])}
        assert len(steps) <= 1  # arithmetic


def test_even_s_sequences_by_row():
    # n >= 2: rows 2 and 2n-1 decrease by one, the rest are constant
    n, k = 3, 2
    c = pair_sum_constant(n, k, EVEN)
    for j in range(1, 2 * n + 1):
        seq = s_sequence(n, k, EVEN, j)
        if j in (2, 2 * n - 1):
            assert seq[0] == 5 * k + 3 + n * (8 * k + 4) and seq[-1] == 3 * k + 3 + n * (8 * k + 4)
        else:
            assert set(seq) == {c}
    assert s_sequence(1, k, EVEN, 1) == list(range(13 * k + 7, 11 * k + 6, -1))


@given(nk, parity)
@settings(max_examples=40, deadline=None)
def test_join_is_three_colored(nk_, par):
    n, k = nk_
    graph, lab, triple = label_join(n, k, par)
    verdict = is_local_antimagic(lab)
    assert verdict and verdict.coloring.distinct_count == 3
    assert triple == predicted_colors(n, k, par)
    m = 2 * n if par == EVEN else 2 * n + 1
    assert graph.order == 2 * (2 * k + 1) + m


def test_golden_triples():
    assert tuple(label_join(2, 4, EVEN)[2]) == (819, 205, 169)
    assert tuple(label_join(2, 4, ODD)[2]) == (981, 390, 165)
    assert tuple(label_join(1, 4, EVEN)[2]) == (495, 69, 51)


def test_apply_matrix_places_entries():
    mat = even_matrix(2, 4)
    graph, lab = apply_matrix(mat)
    assert lab[edge_key(VertexTag.u(1), VertexTag.xcopy(1, 1))] == 77
    assert lab[edge_key(VertexTag.u(9), VertexTag.v(9))] == 9
    assert lab[edge_key(VertexTag.v(6), VertexTag.xcopy(6, 4))] == 72


def test_unmerged_small_case_is_not_local_antimagic():
    # copies of P2 v O2 at k = 1: v_3 and x_{3,1} collide before merging
    graph, lab = apply_matrix(even_matrix(1, 1))
    verdict = is_local_antimagic(lab)
    assert not verdict
    assert {str(t) for t in verdict.witness} == {"v3", "x3,1"}


@pytest.mark.parametrize("bad", [(0, 1), (1, 0), (-2, 3)])
def test_invalid_parameters(bad):
    with pytest.raises(InvalidParameter):
        even_matrix(*bad)
    with pytest.raises(InvalidParameter):
        odd_matrix(*bad)
    with pytest.raises(InvalidParameter):
        predicted_colors(*bad, EVEN)


def test_bad_parity_and_index():
    with pytest.raises(InvalidParameter):
        label_matrix(1, 1, "neither")
    with pytest.raises(InvalidParameter):
        s_sequence(1, 1, EVEN, 3)


def test_distinct_over_grid():
    for n in range(1, 13):
        for k in range(1, 13):
            for par in (EVEN, ODD):
                assert predicted_colors(n, k, par).distinct
