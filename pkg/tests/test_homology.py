from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from singularize.builders import build_genus_chain, build_sphere, build_torus, canonical_loop, link_loop
from singularize.complex import build_from_cells, component_count, euler_count
from singularize.homology import HomologyProfile, betti_numbers, boundary_matrices, z2_rank
from singularize.surgery import SingularComplex, collapse


def _span_size(rows):
    """Number of distinct Z2 combinations of ``rows`` (= 2 ** rank)."""
    span = {0}
    for r in rows:
        span |= {x ^ r for x in span}
    return len(span)


def _transpose(rows, ncols):
    return [sum(((r >> j) & 1) << i for i, r in enumerate(rows)) for j in range(ncols)]


def test_rank_examples():
    assert z2_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert z2_rank([[0, 0], [0, 0]]) == 0
    assert z2_rank([[1, 1], [1, 1]]) == 1
    assert z2_rank([]) == 0


@given(st.lists(st.integers(0, 2**8 - 1), max_size=10))
def test_rank_matches_span_enumeration(rows):
    assert 2 ** z2_rank(rows) == _span_size(rows)


@given(st.lists(st.integers(0, 2**7 - 1), max_size=9))
def test_row_rank_equals_column_rank(rows):
    assert z2_rank(rows) == z2_rank(_transpose(rows, 7))


def test_profile_rejects_wrong_chi():
    with pytest.raises(ValueError):
        HomologyProfile(1, 0, 1, 3)
    with pytest.raises(ValueError):
        HomologyProfile.from_betti(-1, 0, 0)
    assert HomologyProfile.from_betti(1, 2, 1).chi == 0


def test_triangle_boundary():
    c = build_from_cells([0, 1, 2], {0: (0, 1), 1: (1, 2), 2: (0, 2)}, {0: [(0, True), (1, True), (2, False)]})
    cc = boundary_matrices(c)
    assert cc.dense(2) == [[1], [1], [1]]
    assert cc.boundary_squared_is_zero()
    assert betti_numbers(c).betti == (1, 0, 0)


def test_octahedron_shapes():
    cc = boundary_matrices(build_sphere(0))
    assert cc.d1_shape == (6, 12)
    assert cc.d2_shape == (12, 8)
    assert cc.boundary_squared_is_zero()


def test_pinched_torus_drops_four_edge_rows():
    c = build_torus()
    s = collapse(SingularComplex.smooth(c), canonical_loop(c, "handle", 1))
    smooth, pinched = boundary_matrices(c), boundary_matrices(s.carrier)
    assert smooth.d2_shape[0] - pinched.d2_shape[0] == 4
    assert pinched.boundary_squared_is_zero()


def test_betti_examples():
    assert betti_numbers(build_sphere(0)).betti == (1, 0, 1)
    assert betti_numbers(build_torus()).betti == (1, 2, 1)
    s = build_sphere(0)
    eight = collapse(SingularComplex.smooth(s), link_loop(s, 4)).carrier
    assert betti_numbers(eight) == HomologyProfile(1, 0, 2, 3)


@pytest.mark.parametrize("g", range(0, 9))
def test_smooth_surfaces_have_profile_one_2g_one(g):
    c = build_genus_chain(g)
    p = betti_numbers(c)
    assert p.betti == (1, 2 * g, 1)
    assert p.chi == euler_count(c) == 2 - 2 * g
    assert p.beta0 == component_count(c)


def test_faces_walking_a_merged_edge_twice_contribute_zero():
    # a torus as one square: both faces walk edges a and b once each way
    edges = {0: (0, 0), 1: (0, 0), 2: (0, 0)}
    faces = {0: [(0, True), (1, True), (2, False)], 1: [(2, True), (1, False), (0, False)]}
    c = build_from_cells([0], edges, faces)
    cc = boundary_matrices(c)
    assert cc.boundary_squared_is_zero()
    assert betti_numbers(c).betti == (1, 2, 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 4))
def test_dense_and_bitset_ranks_agree(g):
    cc = boundary_matrices(build_genus_chain(g))
    assert z2_rank(cc.dense(1)) == z2_rank(cc.d1)
    assert z2_rank(cc.dense(2)) == z2_rank(cc.d2)
