"""Affine inequality systems and the polytopes built from them.

An :class:`InequalitySystem` is a finite list of rows ``a . x <= kappa``.
Besides membership and halfspace cuts this module assembles the image of a
Gelfand-Zeitlin map (interlacing rows with the top row either pinned to an
orbit's spectrum or constrained by user-supplied momentum-set rows),
enumerates vertices at small dimension and certifies lattice simplices for
Gromov-width lower bounds.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .errors import (DimMismatchError, DimTooLargeError, GZError, UnboundedError,
                     UnsupportedGroupError)
from .tolerances import current

MAX_VERTEX_DIM = 6


@dataclass(frozen=True)
class InequalitySystem:
    dim: int
    rows: tuple = ()
    layout: tuple = None
    A: np.ndarray = field(init=False, repr=False, compare=False)
    kappa: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = []
        for a, k in self.rows:
            a = np.array(a, dtype=float).reshape(-1)
            if a.size != self.dim:
                raise DimMismatchError(f"row of length {a.size} in a {self.dim}-dimensional system")
            a.setflags(write=False)
            rows.append((a, float(k)))
        layout = tuple(self.layout) if self.layout is not None else tuple(range(self.dim))
        if len(layout) != self.dim:
            raise DimMismatchError("layout length must equal dim")
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "layout", layout)
        A = np.array([a for a, _ in rows]).reshape(len(rows), self.dim)
        kappa = np.array([k for _, k in rows], dtype=float)
        A.setflags(write=False)
        kappa.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "kappa", kappa)

    def __len__(self):
        return len(self.rows)


def _point(S: InequalitySystem, x) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != S.dim:
        raise DimMismatchError(f"point of dimension {x.size} for a {S.dim}-dimensional system")
    return x


def membership(S: InequalitySystem, x, slack: float | None = None) -> bool:
    """``a . x <= kappa + slack * (1 + |x|_inf)`` for every row."""
    x = _point(S, x)
    if slack is None:
        slack = current().membership_slack
    if not S.rows:
        return True
    bound = slack * (1.0 + (np.max(np.abs(x)) if x.size else 0.0))
    return bool(np.all(S.A @ x <= S.kappa + bound))


def members(S: InequalitySystem, X, slack: float | None = None) -> np.ndarray:
    """Vectorised :func:`membership` over the rows of ``X``."""
    X = np.asarray(X, dtype=float).reshape(-1, S.dim)
    if slack is None:
        slack = current().membership_slack
    if not S.rows:
        return np.ones(len(X), dtype=bool)
    scale = 1.0 + (np.max(np.abs(X), axis=1) if S.dim else np.zeros(len(X)))
    return np.all(X @ S.A.T <= S.kappa + slack * scale[:, None], axis=1)


def cut(S: InequalitySystem, a, kappa: float) -> InequalitySystem:
    """Append the halfspace ``a . x <= kappa``."""
    a = np.asarray(a, dtype=float).reshape(-1)
    if a.size != S.dim:
        raise DimMismatchError(f"cut of length {a.size} for a {S.dim}-dimensional system")
    return InequalitySystem(S.dim, S.rows + ((a, kappa),), S.layout)


def bounding_box(S: InequalitySystem):
    """Coordinate-wise ``(lower, upper)`` bounds, or ``None`` if ``S`` is empty."""
    lo, hi = np.empty(S.dim), np.empty(S.dim)
    A_ub = S.A if S.rows else None
    b_ub = S.kappa if S.rows else None
    bounds = [(None, None)] * S.dim
    for i in range(S.dim):
        for sign, out in ((1.0, lo), (-1.0, hi)):
            c = np.zeros(S.dim)
            c[i] = sign
            res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
            if res.status == 2:
                return None
            if res.status == 3:
                raise UnboundedError(f"coordinate {S.layout[i]} is unbounded")
            if res.status != 0:
                raise GZError(f"linear program failed: {res.message}")
            out[i] = sign * res.fun
    return lo, hi


def vertices(S: InequalitySystem) -> list:
    """All vertices of a bounded system with ``dim <= 6`` (brute force over row subsets)."""
    if S.dim > MAX_VERTEX_DIM:
        raise DimTooLargeError(f"vertex enumeration is limited to dim <= {MAX_VERTEX_DIM}")
    tol = current()
    if S.dim == 0:
        return [np.zeros(0)] if membership(S, np.zeros(0), tol.membership_slack) else []
    if bounding_box(S) is None:
        return []
    found = []
    for idx in itertools.combinations(range(len(S.rows)), S.dim):
        M = S.A[list(idx)]
        if np.linalg.matrix_rank(M) < S.dim:
            continue
        x = np.linalg.solve(M, S.kappa[list(idx)])
        if not membership(S, x, tol.membership_slack):
            continue
        if any(np.max(np.abs(x - y)) <= tol.dedup * (1 + np.max(np.abs(y))) for y in found):
            continue
        found.append(x + 0.0)
    found.sort(key=tuple)
    return found


def tight_rows(S: InequalitySystem, x, tol: float | None = None) -> np.ndarray:
    if tol is None:
        tol = current().dedup
    x = _point(S, x)
    return np.abs(S.A @ x - S.kappa) <= tol * (1 + np.max(np.abs(x), initial=0.0))


def edges(S: InequalitySystem, verts) -> list:
    """Index pairs of vertices joined by an edge of the polytope."""
    tight = [tight_rows(S, v) for v in verts]
    out = []
    for i, j in itertools.combinations(range(len(verts)), 2):
        common = tight[i] & tight[j]
        rank = np.linalg.matrix_rank(S.A[common]) if np.any(common) else 0
        if rank == S.dim - 1:
            out.append((i, j))
    return out


def sample_members(S: InequalitySystem, count: int, seed: int, max_draws: int = 10**7) -> np.ndarray:
    """Uniform points of a bounded system by rejection from its bounding box."""
    box = bounding_box(S)
    if box is None:
        raise GZError("cannot sample an empty system")
    lo, hi = box
    rng = np.random.default_rng(seed)
    kept, drawn = [], 0
    batch = max(1024, 8 * count)
    while sum(len(k) for k in kept) < count:
        if drawn >= max_draws:
            raise GZError(f"rejection sampling exhausted {max_draws} draws")
        X = lo + (hi - lo) * rng.random((batch, S.dim))
        drawn += batch
        kept.append(X[members(S, X, 0.0)])
    return np.concatenate(kept)[:count]


# ---------------------------------------------------------------- images

def _pattern_layout(group, levels):
    from .orbits import chamber_rank

    return [(k, i + 1) for k in levels for i in range(chamber_rank(group, k))]


def _chain_rows(group, levels, index, pinned):
    """Branching rows for consecutive ``levels``.

    ``index`` maps a (level, i) coordinate to its variable slot; coordinates in
    ``pinned`` are constants moved to the right-hand side.
    """
    from .patterns import _pair_rows

    dim = len(index)
    rows = []
    for k in levels[:-1]:
        coords = _pattern_layout(group, (k, k + 1))
        for eta, xi in _pair_rows(group, k):
            a, kappa = np.zeros(dim), 0.0
            for c, coef in zip(coords, np.concatenate([eta, xi])):
                if coef == 0:
                    continue
                if c in pinned:
                    kappa -= coef * pinned[c]
                else:
                    a[index[c]] += coef
            if np.any(a) or kappa < 0:
                rows.append((a, kappa))
    return rows


def _check_chain(spec_group, chain):
    from .orbits import Group

    if chain.group is not Group.parse(spec_group):
        raise UnsupportedGroupError("chain group differs from the orbit group")
    if not chain.consecutive:
        raise UnsupportedGroupError("only consecutive chains ending at n are supported")


def image_polytope(spec, chain=None) -> InequalitySystem:
    """Image of the Gelfand-Zeitlin map on the orbit ``spec``.

    Variables are the pattern coordinates strictly below the top row, ordered
    by ascending level; the top row is pinned to ``spec.spectrum``.
    """
    from .patterns import ChainSpec

    if chain is None:
        chain = ChainSpec(spec.group, spec.n)
    _check_chain(spec.group, chain)
    if chain.n != spec.n:
        raise UnsupportedGroupError("chain does not end at the orbit's n")
    layout = _pattern_layout(spec.group, chain.levels[:-1])
    index = {c: i for i, c in enumerate(layout)}
    pinned = {(spec.n, i + 1): v for i, v in enumerate(spec.spectrum)}
    rows = _chain_rows(spec.group, chain.levels, index, pinned)
    return InequalitySystem(len(layout), rows, layout)


def momentum_image(group, n: int, momentum_rows=(), levels=None) -> InequalitySystem:
    """Image of the map on a Hamiltonian manifold with momentum set given by rows.

    ``momentum_rows`` are ``(alpha, upsilon)`` pairs over the top-row
    coordinates. Variables are all pattern coordinates, ascending level, the
    top row last.
    """
    from .orbits import chamber_rank
    from .patterns import ChainSpec

    chain = ChainSpec(group, n, levels)
    _check_chain(chain.group, chain)
    layout = _pattern_layout(chain.group, chain.levels)
    index = {c: i for i, c in enumerate(layout)}
    rows = _chain_rows(chain.group, chain.levels, index, {})
    r_top = chamber_rank(chain.group, n)
    for alpha, upsilon in momentum_rows:
        alpha = np.asarray(alpha, dtype=float).reshape(-1)
        if alpha.size != r_top:
            raise DimMismatchError(f"momentum row needs {r_top} coefficients")
        a = np.zeros(len(layout))
        a[len(layout) - r_top:] = alpha
        rows.append((a, upsilon))
    return InequalitySystem(len(layout), rows, layout)


def su2_image(momentum_rows=(), with_torus_level: bool = True) -> InequalitySystem:
    """Image for SU(2) with the chain t < su(2).

    The su(2) chamber coordinate ``y >= 0`` corresponds to the Hermitian
    spectrum ``(y, -y)``; the torus coordinate ``x`` interlaces it, so
    ``-y <= x <= y``. Variables are ``(x, y)``; momentum rows act on ``y``.
    """
    rows = []
    if with_torus_level:
        rows = [(np.array([1.0, -1.0]), 0.0), (np.array([-1.0, -1.0]), 0.0)]
        layout = [(1, 1), (2, 1)]
    else:
        layout = [(2, 1)]
    for alpha, upsilon in momentum_rows:
        alpha = np.asarray(alpha, dtype=float).reshape(-1)
        if alpha.size != 1:
            raise DimMismatchError("su(2) momentum rows have one coefficient")
        a = np.zeros(len(layout))
        a[-1] = alpha[0]
        rows.append((a, upsilon))
    return InequalitySystem(len(layout), rows, layout)


# ---------------------------------------------------------------- widths

def width_lower_bound(spectrum) -> float:
    """``2 pi`` times the smallest positive gap of a u(n) spectrum (0 for a point orbit)."""
    v = np.asarray(spectrum, dtype=float).reshape(-1)
    diffs = [a - b for a in v for b in v if a > b]
    return 2 * math.pi * min(diffs) if diffs else 0.0


@dataclass(frozen=True)
class SimplexCertificate:
    anchor: np.ndarray
    width: float
    directions: np.ndarray = None

    def __post_init__(self):
        anchor = np.asarray(self.anchor, dtype=float).reshape(-1)
        dirs = np.eye(anchor.size) if self.directions is None else np.asarray(self.directions, dtype=float)
        dirs = dirs.reshape(-1, anchor.size)
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "directions", dirs)
        object.__setattr__(self, "width", float(self.width))

    def simplex(self) -> np.ndarray:
        return np.vstack([self.anchor, self.anchor + self.width * self.directions])


def certify_simplex(S: InequalitySystem, cert: SimplexCertificate, slack: float | None = None) -> bool:
    """Every vertex of the simplex lies in ``S``."""
    if cert.anchor.size != S.dim:
        raise DimMismatchError("certificate dimension differs from the system")
    if slack is None:
        slack = current().membership_slack
    return all(membership(S, v, slack) for v in cert.simplex())


def max_simplex_width(S: InequalitySystem, anchor, directions) -> float:
    """Largest ``w`` with ``anchor + w * d`` in ``S`` for every direction ``d``.

    Returns ``-inf`` if the anchor is not a member.
    """
    anchor = _point(S, anchor)
    if not membership(S, anchor):
        return -math.inf
    if not S.rows:
        return math.inf
    room = np.maximum(S.kappa - S.A @ anchor, 0.0)
    best = math.inf
    for d in np.asarray(directions, dtype=float).reshape(-1, S.dim):
        rate = S.A @ d
        pos = rate > 1e-15
        if np.any(pos):
            best = min(best, float(np.min(room[pos] / rate[pos])))
    return best


def search_simplex(S: InequalitySystem, grid: int = 5) -> SimplexCertificate:
    """Grid search for the widest signed-axis simplex inside ``S``.

    Anchors range over the vertices of ``S`` and a ``grid**dim`` lattice of
    its bounding box; directions over all sign choices ``+-e_i``.
    """
    box = bounding_box(S)
    if box is None:
        raise GZError("empty system")
    lo, hi = box
    anchors = list(vertices(S)) if S.dim <= MAX_VERTEX_DIM else []
    axes = [np.linspace(l, h, grid) for l, h in zip(lo, hi)]
    anchors += [np.array(p) for p in itertools.product(*axes)]
    best = SimplexCertificate(anchors[0] if anchors else np.zeros(S.dim), 0.0)
    best_w = -math.inf
    eye = np.eye(S.dim)
    for signs in itertools.product((1.0, -1.0), repeat=S.dim):
        dirs = eye * np.array(signs)[:, None]
        for x in anchors:
            w = max_simplex_width(S, x, dirs)
            if w > best_w:
                best_w = w
                best = SimplexCertificate(x, w, dirs)
    return best
