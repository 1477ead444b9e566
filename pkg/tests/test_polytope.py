import itertools

import numpy as np
import pytest

from gzkit.errors import DimMismatchError, DimTooLargeError, UnboundedError
from gzkit.orbits import OrbitSpec
from gzkit.polytope import (InequalitySystem, SimplexCertificate, bounding_box, certify_simplex,
                            cut, edges, image_polytope, max_simplex_width, members, membership,
                            momentum_image, sample_members, search_simplex, su2_image, vertices,
                            width_lower_bound)

SQUARE = InequalitySystem(2, [([1, 0], 1), ([-1, 0], 0), ([0, 1], 1), ([0, -1], 0)])


def as_set(points):
    return sorted(tuple(np.round(p, 9)) for p in points)


def test_membership_examples():
    assert membership(SQUARE, [0.5, 0.5])
    assert membership(SQUARE, [1, 1])
    assert membership(SQUARE, [1 + 1e-10, 0])
    assert not membership(SQUARE, [1.1, 0])
    assert not membership(SQUARE, [1 + 1e-6, 0], 0.0)
    with pytest.raises(DimMismatchError):
        membership(SQUARE, [1, 2, 3])


def test_members_agrees_with_membership():
    X = np.random.default_rng(0).uniform(-0.5, 1.5, (500, 2))
    assert list(members(SQUARE, X)) == [membership(SQUARE, x) for x in X]


def test_image_polytope_of_small_orbit():
    S = image_polytope(OrbitSpec("u", 3, (4, 2, 0)))
    assert S.layout == ((1, 1), (2, 1), (2, 2))
    # oracle: hand-written interlacing conditions
    def inside(x11, x21, x22):
        return 2 <= x21 <= 4 and 0 <= x22 <= 2 and x22 <= x11 <= x21
    grid = np.linspace(-0.5, 4.5, 11)
    for x in itertools.product(grid, repeat=3):
        assert membership(S, x, 0.0) == inside(*x)


def test_image_polytope_u2_is_interval():
    S = image_polytope(OrbitSpec("u", 2, (3, 1)))
    assert as_set(vertices(S)) == [(1.0,), (3.0,)]


def test_image_polytope_so3():
    S = image_polytope(OrbitSpec("so", 3, (2,)))
    np.testing.assert_allclose(bounding_box(S), ([0], [2]))


def test_vertices_of_u3_orbit_image():
    S = image_polytope(OrbitSpec("u", 3, (2, 1, 0)))
    # oracle: vertices are interlacing patterns with every middle entry at an end of its range
    expected = set()
    for x21, x22 in itertools.product((1, 2), (0, 1)):
        for x11 in (x22, x21):
            expected.add((float(x11), float(x21), float(x22)))
    assert as_set(vertices(S)) == sorted(expected)


def test_trapezoid_vertices_and_edges():
    S = su2_image([([-1.0], -1.0), ([1.0], 2.0)])
    V = vertices(S)
    assert as_set(V) == [(-2.0, 2.0), (-1.0, 1.0), (1.0, 1.0), (2.0, 2.0)]
    assert len(edges(S, V)) == 4


def test_point_polytope():
    S = image_polytope(OrbitSpec("u", 2, (1, 1)))
    V = vertices(S)
    assert as_set(V) == [(1.0,)]
    assert edges(S, V) == []


def test_cut_u2_momentum_set():
    k = 1.0
    S = momentum_image("u", 2, [([-1, 0], 0.0), ([0, 1], 0.0)], levels=(2,))
    S = cut(S, [0, -1], k)
    for x1, x2 in itertools.product(np.linspace(-2, 2, 17), repeat=2):
        assert membership(S, [x1, x2], 0.0) == (0 <= x1 and -k <= x2 <= 0)
    with pytest.raises(UnboundedError):
        vertices(S)  # x1 is unbounded above


def test_cut_three_dimensional_image():
    k = 1.0
    S = momentum_image("u", 2, [([-1, 0], 0.0), ([0, 1], 0.0)])
    S = cut(S, [0, 0, -1], k)
    assert S.layout == ((1, 1), (2, 1), (2, 2))
    for x in itertools.product(np.linspace(-2, 2, 9), repeat=3):
        x0, x1, x2 = x
        assert membership(S, x, 0.0) == (x2 <= x0 <= x1 and 0 <= x1 and -k <= x2 <= 0)


def test_bounding_box_empty_and_unbounded():
    empty = InequalitySystem(1, [([1], 0), ([-1], -1)])
    assert bounding_box(empty) is None
    assert vertices(empty) == []
    with pytest.raises(UnboundedError):
        bounding_box(InequalitySystem(1, [([1], 0)]))


def test_vertices_dimension_limit():
    with pytest.raises(DimTooLargeError):
        vertices(InequalitySystem(7, []))


def test_sample_members():
    X = sample_members(SQUARE, 200, 3)
    assert X.shape == (200, 2)
    assert np.all(members(SQUARE, X, 0.0))
    assert np.array_equal(X, sample_members(SQUARE, 200, 3))


@pytest.mark.parametrize("spectrum,expected", [((3, 2, 0), 2 * np.pi), ((1, 1, 1), 0.0),
                                               ((5, 0, -0.5), np.pi), ((2, 0), 4 * np.pi)])
def test_width_lower_bound(spectrum, expected):
    assert width_lower_bound(spectrum) == pytest.approx(expected, rel=1e-15)


def test_certify_simplex_examples():
    cert = SimplexCertificate([0, 0], 1.0)
    assert certify_simplex(SQUARE, cert)
    assert not certify_simplex(SQUARE, SimplexCertificate([0, 0], 1.01))
    assert not certify_simplex(SQUARE, SimplexCertificate([0.5, 0.5], 1.0))
    with pytest.raises(DimMismatchError):
        certify_simplex(SQUARE, SimplexCertificate([0, 0, 0], 1.0))


def test_max_simplex_width():
    assert max_simplex_width(SQUARE, [0, 0], np.eye(2)) == pytest.approx(1.0)
    assert max_simplex_width(SQUARE, [1, 1], -np.eye(2)) == pytest.approx(1.0)
    assert max_simplex_width(SQUARE, [2, 2], np.eye(2)) == -np.inf


@pytest.mark.parametrize("spectrum,width", [((4, 2, 0), 2.0), ((3, 0, -1), 1.0), ((2, 1, 0), 1.0)])
def test_search_simplex_finds_gap_sized_simplex(spectrum, width):
    S = image_polytope(OrbitSpec("u", 3, spectrum))
    cert = search_simplex(S)
    assert cert.width == pytest.approx(width, rel=1e-9)
    assert certify_simplex(S, cert)
    bigger = SimplexCertificate(cert.anchor, cert.width * 1.001, cert.directions)
    assert not certify_simplex(S, bigger)
