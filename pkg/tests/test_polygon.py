import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gzkit.errors import DegenerateDiagonalError, EmptyModuliError, InvalidTriangulationError
from gzkit.polygon import (PolygonConfig, TriangulationSpec, bend, build_polygon, canonicalize,
                           diagonal_lengths, fan, polygon_polytope, rotation, sample_polygon)
from gzkit.polytope import bounding_box, members, membership, vertices

SQUARE = PolygonConfig([[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0]], [1, 1, 1, 1])


def test_square_diagonal():
    np.testing.assert_allclose(diagonal_lengths(SQUARE, TriangulationSpec(4)), [np.sqrt(2)])


def test_folded_quadrilateral():
    P = PolygonConfig([[1, 0, 0], [-1, 0, 0], [1, 0, 0], [-1, 0, 0]], [1, 1, 1, 1])
    np.testing.assert_allclose(diagonal_lengths(P, TriangulationSpec(4)), [0])
    with pytest.raises(DegenerateDiagonalError):
        bend(P, (1, 2), 0.3)


def test_diagonal_lengths_rotation_invariant():
    T = TriangulationSpec(5)
    P = sample_polygon([1, 1, 1, 1, 1], T, 3)
    R = rotation(np.array([1.0, 2.0, 2.0]) / 3, 0.8)
    Q = PolygonConfig(P.edges @ R.T, P.lengths)
    np.testing.assert_allclose(diagonal_lengths(P, T), diagonal_lengths(Q, T), atol=1e-14)


def test_bend_square_by_half_turn():
    B = bend(SQUARE, (1, 2), np.pi)
    # rotating e1, e2 by pi about (1, 1, 0) swaps them
    np.testing.assert_allclose(B.edges[:2], [[0, 1, 0], [1, 0, 0]], atol=1e-15)
    np.testing.assert_allclose(B.edges[2:], SQUARE.edges[2:])


def test_bend_zero_angle_is_identity():
    assert bend(SQUARE, (1, 2), 0.0) is SQUARE


def test_bend_preserves_invariants():
    T = TriangulationSpec(6, [(1, 2), (1, 3), (4, 5)])
    P = sample_polygon([1, 1, 1, 1, 1, 1], T, 0)
    d = diagonal_lengths(P, T)
    for diag in T.diagonals:
        Q = bend(P, diag, 1.1)
        np.testing.assert_allclose(np.linalg.norm(Q.edges, axis=1), P.lengths, atol=1e-12)
        assert np.max(np.abs(Q.edges.sum(axis=0))) <= 1e-12
        np.testing.assert_allclose(diagonal_lengths(Q, T), d, atol=1e-10)


def test_bends_commute():
    T = TriangulationSpec(5)
    P = sample_polygon([1, 1, 1, 1, 1], T, 11)
    a, b = T.diagonals
    ab = bend(bend(P, a, 0.7), b, 1.9)
    ba = bend(bend(P, b, 1.9), a, 0.7)
    assert np.max(np.abs(ab.edges - ba.edges)) <= 1e-8


def test_rotation_is_orthogonal():
    R = rotation(np.array([0.0, 0.6, 0.8]), 1.234)
    np.testing.assert_allclose(R @ R.T, np.eye(3), atol=1e-15)
    np.testing.assert_allclose(R @ [0.0, 0.6, 0.8], [0.0, 0.6, 0.8], atol=1e-15)


def test_canonicalize():
    P = PolygonConfig(SQUARE.edges @ rotation(np.array([0.0, 0.0, 1.0]), 1.0).T, SQUARE.lengths)
    C = canonicalize(P)
    np.testing.assert_allclose(C.edges, SQUARE.edges, atol=1e-14)


def test_polygon_polytope_quadrilateral():
    S = polygon_polytope([2, 1, 1, 1], TriangulationSpec(4))
    # oracle: |r1 - r2| <= d <= r1 + r2 and d <= r3 + r4
    np.testing.assert_allclose(bounding_box(S), ([1], [2]))


def test_polygon_polytope_equilateral_pentagon():
    S = polygon_polytope([1] * 5, TriangulationSpec(5))
    assert S.layout == ((1, 2), (1, 3))
    # oracle: 0 <= d1 <= 2, |d1 - 1| <= d2 <= d1 + 1, d2 <= 2
    pts = np.random.default_rng(0).uniform(-0.5, 2.5, (2000, 2))
    for d1, d2 in pts:
        expected = 0 <= d1 <= 2 and abs(d1 - 1) <= d2 <= min(d1 + 1, 2)
        assert membership(S, [d1, d2], 0.0) == expected


def test_polygon_polytope_triangle_has_no_variables():
    assert polygon_polytope([1, 1, 1], TriangulationSpec(3)).dim == 0
    assert not membership(polygon_polytope([1, 1, 3], TriangulationSpec(3)), [], 0.0)


def test_triangulation_validation():
    assert fan(6) == [(1, 2), (1, 3), (1, 4)]
    with pytest.raises(InvalidTriangulationError):
        TriangulationSpec(5, [(1, 2), (2, 3)])
    with pytest.raises(InvalidTriangulationError):
        TriangulationSpec(5, [(1, 2)])
    with pytest.raises(InvalidTriangulationError):
        TriangulationSpec(5, [(1, 4), (1, 2)])
    T = TriangulationSpec(6, [(2, 3), (2, 4), (2, 5)])
    assert len(T.triangles()) == 4


def test_build_polygon_hits_requested_lengths():
    r = [1, 1, 1, 1, 1]
    T = TriangulationSpec(5)
    P = build_polygon(r, T, [1.2, 0.9])
    np.testing.assert_allclose(diagonal_lengths(P, T), [1.2, 0.9], atol=1e-12)


def test_sample_polygon_deterministic_and_valid():
    r = [1, 2, 1.5, 1, 2]
    T = TriangulationSpec(5)
    P, Q = sample_polygon(r, T, 4), sample_polygon(r, T, 4)
    assert np.array_equal(P.edges, Q.edges)
    assert membership(polygon_polytope(r, T), diagonal_lengths(P, T))


def test_empty_moduli():
    with pytest.raises(EmptyModuliError):
        sample_polygon([10, 1, 1, 1], TriangulationSpec(4), 0)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(4, 7))
def test_sampled_lengths_lie_in_polytope(seed, n):
    T = TriangulationSpec(n)
    r = np.ones(n)
    P = sample_polygon(r, T, seed)
    assert members(polygon_polytope(r, T), diagonal_lengths(P, T), 1e-9)[0]


def test_equilateral_pentagon_vertices():
    V = vertices(polygon_polytope([1] * 5, TriangulationSpec(5)))
    expected = [(0.0, 1.0), (1.0, 0.0), (1.0, 2.0), (2.0, 1.0), (2.0, 2.0)]
    assert sorted(tuple(np.round(v, 9)) for v in V) == expected
