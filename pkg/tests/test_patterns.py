import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gzkit.errors import ShapeMismatchError, UnsupportedPairError
from gzkit.orbits import MatrixPoint, random_group_element
from gzkit.patterns import (ChainSpec, GZPattern, branching_inequalities, check_interlacing,
                            gz_map, is_regular, random_interlacing_pattern)
from gzkit.polytope import membership
from gzkit.suites import random_hermitian, random_skew


def test_two_by_two_pattern_matches_characteristic_polynomial():
    A = MatrixPoint.hermitian([[2, 1], [1, 2]])
    p = gz_map(A)
    # oracle: roots of x^2 - tr x + det
    roots = np.sort(np.roots([1, -4, 3]).real)[::-1]
    np.testing.assert_allclose(p.rows[0], [2])
    np.testing.assert_allclose(p.rows[1], roots)


def test_pattern_of_diagonal_matrix():
    p = gz_map(MatrixPoint.hermitian(np.diag([1.0, 3.0, 2.0])))
    np.testing.assert_allclose(p.rows[0], [1])
    np.testing.assert_allclose(p.rows[1], [3, 1])
    np.testing.assert_allclose(p.rows[2], [3, 2, 1])


def test_partial_chain():
    A = MatrixPoint.hermitian(np.diag([1.0, 3.0, 2.0]))
    p = gz_map(A, ChainSpec("u", 3, (1, 3)))
    assert p.levels == (1, 3)
    with pytest.raises(UnsupportedPairError):
        check_interlacing(p)


def test_so_pattern_levels():
    rng = np.random.default_rng(0)
    p = gz_map(random_skew(5, rng))
    assert p.levels == (2, 3, 4, 5)
    assert [r.size for r in p.rows] == [1, 1, 2, 2]
    assert check_interlacing(p)


@pytest.mark.parametrize("rows,expected", [
    ([[1], [2, 0]], True),
    ([[2], [2, 0]], True),
    ([[3], [2, 0]], False),
    ([[1], [2, 0], [3, 1.5, -1]], True),
    ([[1], [2, 0], [3, 2.5, -1]], False),
])
def test_unitary_interlacing_examples(rows, expected):
    assert check_interlacing(GZPattern("u", rows)) is expected


@pytest.mark.parametrize("rows,expected", [
    ([[1], [2]], True),            # so(2) in so(3): 0 <= eta <= xi
    ([[3], [2]], False),
    ([[1], [2], [3, 0.5]], True),  # so(3) in so(4): xi_2 <= eta <= xi_1, any sign
    ([[1], [2], [0.5, -0.2]], False),
    ([[1], [2], [3, 0.5], [4, 1]], True),
    ([[1], [2], [3, 0.5], [4, 0.3]], False),
])
def test_orthogonal_interlacing_examples(rows, expected):
    assert check_interlacing(GZPattern("so", rows)) is expected


def test_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        GZPattern("u", [[1], [1, 2, 3]])


@pytest.mark.parametrize("group,k,count", [("u", 1, 2), ("u", 3, 6), ("so", 2, 2), ("so", 3, 2),
                                           ("so", 4, 4), ("so", 5, 4)])
def test_branching_row_counts(group, k, count):
    S = branching_inequalities(group, k)
    assert len(S.rows) == count
    assert np.all(S.kappa == 0)


def test_branching_rejects_out_of_range():
    with pytest.raises(UnsupportedPairError):
        branching_inequalities("u", 3, n=3)
    with pytest.raises(UnsupportedPairError):
        branching_inequalities("so", 1)
    with pytest.raises(UnsupportedPairError):
        branching_inequalities("sp", 2)


@pytest.mark.parametrize("seed", range(1000))
def test_cauchy_interlacing_on_random_matrices(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    A = random_hermitian(n, rng) if seed % 3 else random_skew(n, rng)
    assert check_interlacing(gz_map(A), 1e-10)


def test_pattern_invariant_under_block_diagonal_conjugation():
    rng = np.random.default_rng(4)
    A = random_hermitian(4, rng)
    g = np.eye(4, dtype=complex)
    g[:2, :2] = random_group_element("u", 2, rng)
    p = gz_map(A)
    B = gz_map(MatrixPoint.hermitian(g @ A.entries @ g.conj().T))
    # the top two levels are fixed; the lower ones may move
    for a, b in zip(p.rows[2:], B.rows[2:]):
        np.testing.assert_allclose(a, b, atol=1e-12)
    g = np.eye(4, dtype=complex)
    g[3, 3] = np.exp(0.7j)
    B = gz_map(MatrixPoint.hermitian(g @ A.entries @ g.conj().T))
    for a, b in zip(p.rows, B.rows):
        np.testing.assert_allclose(a, b, atol=1e-12)


row_values = st.lists(st.floats(-10, 10, allow_nan=False), min_size=1, max_size=6)


@settings(max_examples=300, deadline=None)
@given(data=st.data(), group=st.sampled_from(["u", "so"]), k=st.integers(1, 6))
def test_predicate_agrees_with_branching_rows(data, group, k):
    if group == "so" and k < 2:
        k = 2
    S = branching_inequalities(group, k)
    low_n = (k if group == "u" else k // 2)
    high_n = (k + 1 if group == "u" else (k + 1) // 2)
    vals = st.floats(-5, 5, allow_nan=False).map(lambda v: round(v * 4) / 4)
    low = sorted(data.draw(st.lists(vals, min_size=low_n, max_size=low_n)), reverse=True)
    high = sorted(data.draw(st.lists(vals, min_size=high_n, max_size=high_n)), reverse=True)
    levels = (k, k + 1)
    p = GZPattern(group, [low, high], levels)
    assert check_interlacing(p, 0.0) == membership(S, np.concatenate([low, high]), 0.0)


def test_is_regular_examples():
    assert is_regular(GZPattern("u", [[1], [2, 0]]))
    assert not is_regular(GZPattern("u", [[2], [2, 0]]))
    assert not is_regular(GZPattern("u", [[1], [1, 1]]))
    assert is_regular(GZPattern("u", [[0.5], [1, 0], [2, 0.7, -1]]))


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 7))
def test_random_patterns_interlace(seed, n):
    p = random_interlacing_pattern(n, np.random.default_rng(seed))
    assert p.levels == tuple(range(1, n + 1))
    assert check_interlacing(p, 0.0)
