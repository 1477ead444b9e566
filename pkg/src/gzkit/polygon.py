"""Bending flows on moduli of closed polygons in R^3.

A polygon is a list of edge vectors ``e_1..e_n`` with ``|e_k| = r_k`` and
``sum e_k = 0``. A diagonal ``(i, j)`` (1-based, ``i < j``) stands for the
partial sum ``e_i + ... + e_j``; its length is a Hamiltonian whose flow (the
bending flow) rotates edges ``i..j`` rigidly about that partial sum.

Every chord of the polygon with vertices ``v_0..v_{n-1}`` (``e_k`` running
from ``v_{k-1}`` to ``v_k``) has a unique diagonal ``(i, j)`` with
``1 <= i < j <= n - 1`` and ``2 <= j - i + 1 <= n - 2``; two chords cross iff
their index intervals overlap without nesting.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateDiagonalError, EmptyModuliError, GZError,
                     InvalidTriangulationError)
from .polytope import InequalitySystem, members

MAX_DRAWS = 10**5


@dataclass(frozen=True)
class PolygonConfig:
    edges: np.ndarray
    lengths: np.ndarray

    def __post_init__(self):
        e = np.array(self.edges, dtype=float).reshape(-1, 3)
        r = np.array(self.lengths, dtype=float).reshape(-1)
        if r.size != len(e):
            raise GZError("one length per edge required")
        if np.any(r <= 0):
            raise GZError("edge lengths must be positive")
        tol = 1e-9 * (1 + np.max(r))
        if np.max(np.abs(np.linalg.norm(e, axis=1) - r)) > tol:
            raise GZError("edge vectors do not have the prescribed lengths")
        if np.max(np.abs(e.sum(axis=0))) > tol:
            raise GZError("polygon does not close")
        e.setflags(write=False)
        r.setflags(write=False)
        object.__setattr__(self, "edges", e)
        object.__setattr__(self, "lengths", r)

    @property
    def n(self) -> int:
        return len(self.lengths)

    def vertices(self) -> np.ndarray:
        """Polygon vertices ``v_0 = 0, v_k = e_1 + ... + e_k`` (``n`` points)."""
        return np.vstack([np.zeros(3), np.cumsum(self.edges, axis=0)[:-1]])


def fan(n: int) -> list:
    return [(1, j) for j in range(2, n - 1)]


@dataclass(frozen=True)
class TriangulationSpec:
    n: int
    diagonals: tuple = None

    def __post_init__(self):
        n = self.n
        if n < 3:
            raise InvalidTriangulationError("polygons need at least 3 edges")
        diags = fan(n) if self.diagonals is None else [tuple(int(v) for v in d) for d in self.diagonals]
        if len(diags) != n - 3 or len(set(diags)) != len(diags):
            raise InvalidTriangulationError(f"need {n - 3} distinct diagonals, got {diags}")
        for i, j in diags:
            if not (1 <= i < j <= n - 1 and j - i + 1 <= n - 2):
                raise InvalidTriangulationError(f"({i}, {j}) is not a diagonal of a {n}-gon")
        for a, b in ((a, b) for a in diags for b in diags if a < b):
            nested = (a[0] <= b[0] and b[1] <= a[1]) or (b[0] <= a[0] and a[1] <= b[1])
            disjoint = a[1] < b[0] or b[1] < a[0]
            if not (nested or disjoint):
                raise InvalidTriangulationError(f"diagonals {a} and {b} cross")
        object.__setattr__(self, "diagonals", tuple(diags))

    @property
    def root(self) -> tuple:
        return (1, self.n - 1)

    def triangles(self) -> list:
        """``(parent, left, right)`` interval triples, one per triangle."""
        leaves = [(k, k) for k in range(1, self.n)]
        nodes = [self.root, *self.diagonals]
        pool = set(nodes) | set(leaves)
        out = []
        for X in nodes:
            inner = [Y for Y in pool if Y != X and X[0] <= Y[0] and Y[1] <= X[1]]
            maximal = [Y for Y in inner
                       if not any(Z != Y and Z[0] <= Y[0] and Y[1] <= Z[1] for Z in inner)]
            maximal.sort()
            if len(maximal) != 2 or maximal[0][1] + 1 != maximal[1][0]:
                raise InvalidTriangulationError(f"{X} does not split into two pieces")
            out.append((X, maximal[0], maximal[1]))
        return out


def _partial_sum(edges: np.ndarray, d) -> np.ndarray:
    i, j = d
    return edges[i - 1:j].sum(axis=0)


def diagonal_lengths(P: PolygonConfig, T: TriangulationSpec) -> np.ndarray:
    return np.array([np.linalg.norm(_partial_sum(P.edges, d)) for d in T.diagonals])


def rotation(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation about a unit axis."""
    x, y, z = axis
    K = np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
    return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * (K @ K)


def bend(P: PolygonConfig, diagonal, angle: float) -> PolygonConfig:
    """Rotate edges ``i..j`` about their partial sum by ``angle``."""
    i, j = diagonal
    if not 1 <= i < j <= P.n:
        raise GZError(f"({i}, {j}) is not an edge interval")
    axis = _partial_sum(P.edges, diagonal)
    norm = np.linalg.norm(axis)
    if norm <= 1e-8:
        raise DegenerateDiagonalError(f"diagonal {(i, j)} has length {norm:.3g}")
    if angle == 0:
        return P
    e = P.edges.copy()
    e[i - 1:j] = e[i - 1:j] @ rotation(axis / norm, angle).T
    return PolygonConfig(e, P.lengths)


def canonicalize(P: PolygonConfig) -> PolygonConfig:
    """Rotate so ``e_1`` points along +x and ``e_2`` lies in the upper xy half-plane."""
    x = P.edges[0] / np.linalg.norm(P.edges[0])
    y = P.edges[1] - (P.edges[1] @ x) * x
    if np.linalg.norm(y) <= 1e-12 * P.lengths[1]:
        # e_2 parallel to e_1: any perpendicular completes the frame
        y = np.cross(x, [0.0, 0.0, 1.0])
        if np.linalg.norm(y) <= 1e-12:
            y = np.cross(x, [0.0, 1.0, 0.0])
    y /= np.linalg.norm(y)
    R = np.vstack([x, y, np.cross(x, y)])
    return PolygonConfig(P.edges @ R.T, P.lengths)


def _side(X, r, index):
    """Constant length or variable slot of interval ``X``."""
    if X[0] == X[1]:
        return r[X[0] - 1], None
    if X == (1, len(r) - 1):
        return r[-1], None
    return 0.0, index[X]


def polygon_polytope(r, T: TriangulationSpec) -> InequalitySystem:
    """Triangle inequalities on every triangle of ``T`` plus ``d >= 0``.

    Variables are the diagonal lengths in the order of ``T.diagonals``.
    """
    r = np.asarray(r, dtype=float).reshape(-1)
    if np.any(r <= 0):
        raise GZError("edge lengths must be positive")
    if r.size != T.n:
        raise InvalidTriangulationError(f"triangulation is for {T.n}-gons, got {r.size} lengths")
    index = {d: k for k, d in enumerate(T.diagonals)}
    dim = len(index)
    rows = []
    for tri in T.triangles():
        sides = [_side(X, r, index) for X in tri]
        for long in range(3):
            a, kappa = np.zeros(dim), 0.0
            for s, (const, slot) in enumerate(sides):
                sign = 1.0 if s == long else -1.0
                if slot is None:
                    kappa -= sign * const
                else:
                    a[slot] += sign
            if np.any(a) or kappa < 0:
                rows.append((a, kappa))
    for k in range(dim):
        a = np.zeros(dim)
        a[k] = -1.0
        rows.append((a, 0.0))
    unique = []
    for a, kappa in rows:
        if not any(np.array_equal(a, b) and kappa == c for b, c in unique):
            unique.append((a, kappa))
    return InequalitySystem(dim, unique, tuple(T.diagonals))


def _planar_split(v: np.ndarray, a: float, b: float):
    """Vectors ``(y, v - y)`` with ``|y| = a``, ``|v - y| = b`` in the xy-plane, y to the left."""
    L = np.linalg.norm(v)
    if a == 0.0:
        return np.zeros(3), v.copy()
    if L <= 1e-15:
        y = np.array([a, 0.0, 0.0])
        return y, v - y
    u = v / L
    w = np.array([-u[1], u[0], 0.0])
    cos = np.clip((L * L + a * a - b * b) / (2 * L * a), -1.0, 1.0)
    y = a * (cos * u + np.sqrt(1 - cos * cos) * w)
    return y, v - y


def build_polygon(r, T: TriangulationSpec, lengths) -> PolygonConfig:
    """Planar polygon with the given diagonal lengths, triangles glued with positive orientation."""
    r = np.asarray(r, dtype=float).reshape(-1)
    known = {T.root: np.array([r[-1], 0.0, 0.0])}
    size = {d: float(x) for d, x in zip(T.diagonals, lengths)}
    size.update({(k, k): r[k - 1] for k in range(1, T.n)})
    for X, Y, Z in sorted(T.triangles(), key=lambda t: t[0][1] - t[0][0], reverse=True):
        known[Y], known[Z] = _planar_split(known[X], size[Y], size[Z])
    edges = np.array([known[(k, k)] for k in range(1, T.n)] + [-known[T.root]])
    # renormalise to absorb round-off in the law of cosines
    norms = np.linalg.norm(edges, axis=1)
    edges[:-1] *= (r[:-1] / norms[:-1])[:, None]
    edges[-1] = -edges[:-1].sum(axis=0)
    return PolygonConfig(edges, r)


def sample_polygon(r, T: TriangulationSpec, seed: int) -> PolygonConfig:
    """Random closed polygon: diagonal lengths uniform in the polytope, then random bends."""
    r = np.asarray(r, dtype=float).reshape(-1)
    S = polygon_polytope(r, T)
    rng = np.random.default_rng(seed)
    hi = np.array([min(r[i - 1:j].sum(), r.sum() - r[i - 1:j].sum()) for i, j in T.diagonals])
    drawn = 0
    while True:
        if drawn >= MAX_DRAWS:
            raise EmptyModuliError(f"no closable polygon found in {MAX_DRAWS} draws")
        batch = min(256, MAX_DRAWS - drawn)
        X = hi * rng.random((batch, S.dim))
        drawn += batch
        ok = members(S, X, 0.0)
        if np.any(ok):
            d = X[np.argmax(ok)]
            break
    P = build_polygon(r, T, d)
    for diag in T.diagonals:
        theta = rng.uniform(0.0, 2 * np.pi)
        if np.linalg.norm(_partial_sum(P.edges, diag)) > 1e-8:
            P = bend(P, diag, theta)
    return P
