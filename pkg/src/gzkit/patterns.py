"""Gelfand-Zeitlin patterns: the forward map, interlacing and branching rows.

A pattern stores, for each level ``k`` of a chain of leading principal blocks,
the sweep of the ``k x k`` block. For u(n) the full chain is ``1..n``; for
so(n) it is ``2..n`` since so(1) is trivial.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GZError, ShapeMismatchError, UnsupportedPairError
from .orbits import Group, MatrixPoint, chamber_rank, sweep
from .polytope import InequalitySystem
from .tolerances import current, scale_of


def default_levels(group: Group, n: int) -> tuple:
    start = 1 if Group.parse(group) is Group.UNITARY else 2
    return tuple(range(start, n + 1))


@dataclass(frozen=True)
class ChainSpec:
    group: Group
    n: int
    levels: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "group", Group.parse(self.group))
        levels = default_levels(self.group, self.n) if self.levels is None else tuple(int(k) for k in self.levels)
        if not levels or levels[-1] != self.n:
            raise GZError("chain must end at n")
        if any(a >= b for a, b in zip(levels, levels[1:])):
            raise GZError("chain levels must be strictly increasing")
        lowest = 1 if self.group is Group.UNITARY else 2
        if levels[0] < lowest:
            raise GZError(f"{self.group.value} chains start at level {lowest}")
        object.__setattr__(self, "levels", levels)

    @property
    def consecutive(self) -> bool:
        return all(b == a + 1 for a, b in zip(self.levels, self.levels[1:]))


@dataclass(frozen=True)
class GZPattern:
    group: Group
    rows: tuple
    levels: tuple = None

    def __post_init__(self):
        group = Group.parse(self.group)
        object.__setattr__(self, "group", group)
        rows = tuple(np.array(r, dtype=float).reshape(-1) for r in self.rows)
        if self.levels is None:
            if group is Group.UNITARY:
                levels = tuple(range(1, len(rows) + 1))
            else:
                levels = tuple(range(2, len(rows) + 2))
        else:
            levels = tuple(int(k) for k in self.levels)
        if len(levels) != len(rows):
            raise ShapeMismatchError("one row per level required")
        for k, r in zip(levels, rows):
            if r.size != chamber_rank(group, k):
                raise ShapeMismatchError(
                    f"level {k} row has {r.size} entries, expected {chamber_rank(group, k)}")
            r.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "levels", levels)

    @property
    def n(self) -> int:
        return self.levels[-1] if self.levels else 0

    @property
    def top(self) -> np.ndarray:
        return self.rows[-1]

    def flat(self) -> np.ndarray:
        return np.concatenate(self.rows) if self.rows else np.zeros(0)

    @property
    def scale(self) -> float:
        return scale_of(self.flat())

    def __eq__(self, other):
        if not isinstance(other, GZPattern):
            return NotImplemented
        return (self.group is other.group and self.levels == other.levels
                and all(np.array_equal(a, b) for a, b in zip(self.rows, other.rows)))

    __hash__ = None


def gz_map(A: MatrixPoint, chain: ChainSpec | None = None) -> GZPattern:
    """Sweep of every leading principal block named by ``chain``."""
    if chain is None:
        chain = ChainSpec(A.group, A.n)
    if chain.group is not A.group or chain.n != A.n:
        raise GZError("chain does not match the matrix")
    rows = [sweep(A.block(k)) for k in chain.levels[:-1]]
    rows.append(sweep(A))
    return GZPattern(A.group, rows, chain.levels)


def _require_consecutive(p: GZPattern):
    if any(b != a + 1 for a, b in zip(p.levels, p.levels[1:])):
        raise UnsupportedPairError("interlacing is only defined between consecutive levels")


def check_interlacing(p: GZPattern, slack: float | None = None) -> bool:
    """Closed interlacing between every pair of consecutive rows."""
    _require_consecutive(p)
    if slack is None:
        slack = current().interlacing_slack
    eps = slack * p.scale
    for k, low, high in zip(p.levels, p.rows, p.rows[1:]):
        if p.group is Group.UNITARY or k % 2 == 1:
            # len(high) == len(low) + 1
            if np.any(low > high[:-1] + eps) or np.any(low < high[1:] - eps):
                return False
        else:
            # so(2m) in so(2m+1): equal lengths, last entry bounded below by 0
            if np.any(low > high + eps) or np.any(low[:-1] < high[1:] - eps):
                return False
            if low[-1] < -eps:
                return False
    return True


def _pair_rows(group: Group, k: int):
    """Branching rows ``(eta_coeffs, xi_coeffs)`` for levels ``k`` and ``k+1``."""
    r_low, r_high = chamber_rank(group, k), chamber_rank(group, k + 1)
    rows = []

    def row(eta=None, xi=None):
        a, b = np.zeros(r_low), np.zeros(r_high)
        for i, c in (eta or ()):
            a[i] += c
        for i, c in (xi or ()):
            b[i] += c
        rows.append((a, b))

    if group is Group.UNITARY or k % 2 == 1:
        for i in range(r_low):
            row(eta=[(i, 1.0)], xi=[(i, -1.0)])
            row(eta=[(i, -1.0)], xi=[(i + 1, 1.0)])
    else:
        for i in range(r_low):
            row(eta=[(i, 1.0)], xi=[(i, -1.0)])
            if i + 1 < r_high:
                row(eta=[(i, -1.0)], xi=[(i + 1, 1.0)])
        row(eta=[(r_low - 1, -1.0)])
    return rows


def branching_inequalities(group, k: int, n: int | None = None) -> InequalitySystem:
    """Interlacing cone of the pair (level ``k``, level ``k + 1``) in ``a.x <= 0`` form.

    Variables are the level-``k`` coordinates followed by the level-``k+1``
    coordinates.
    """
    try:
        group = Group.parse(group)
    except GZError:
        raise UnsupportedPairError(f"no branching rows for group {group!r}") from None
    lowest = 1 if group is Group.UNITARY else 2
    if k < lowest or (n is not None and k >= n):
        raise UnsupportedPairError(f"level {k} has no successor pair in {group.value}")
    layout = [(k, i + 1) for i in range(chamber_rank(group, k))]
    layout += [(k + 1, i + 1) for i in range(chamber_rank(group, k + 1))]
    rows = [(np.concatenate([a, b]), 0.0) for a, b in _pair_rows(group, k)]
    return InequalitySystem(len(layout), rows, layout)


def is_regular(p: GZPattern, gap_tol: float | None = None) -> bool:
    """True when every interlacing inequality is strict and rows have no repeats.

    Margins are compared against ``gap_tol * (1 + max|p|)``.
    """
    _require_consecutive(p)
    if gap_tol is None:
        gap_tol = current().regularity_gap
    eps = gap_tol * p.scale
    for r in p.rows:
        if r.size > 1 and np.any(r[:-1] - r[1:] <= eps):
            return False
    for k, low, high in zip(p.levels, p.rows, p.rows[1:]):
        x = np.concatenate([low, high])
        for a, b in _pair_rows(p.group, k):
            if -(np.concatenate([a, b]) @ x) <= eps:
                return False
    return True


def random_interlacing_pattern(n: int, rng: np.random.Generator, low: float = -5.0,
                               high: float = 5.0) -> GZPattern:
    """u(n) pattern with a random top row, each lower entry uniform in its interval."""
    top = np.sort(rng.uniform(low, high, n))[::-1]
    rows = [top]
    for _ in range(n - 1):
        above = rows[0]
        rows.insert(0, rng.uniform(above[1:], above[:-1]))
    return GZPattern(Group.UNITARY, rows)
