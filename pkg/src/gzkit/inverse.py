"""Hermitian matrices with a prescribed Gelfand-Zeitlin pattern.

Given ``A_k`` with eigenpairs ``(mu_i, u_i)`` and a target spectrum ``lam``
of length ``k + 1`` interlacing ``mu``, the bordered matrix

    [[A_k, b], [b^H, c]],   b = sum_i beta_i exp(i phi_i) u_i,
    c = sum(lam) - trace(A_k),
    beta_i**2 = -prod_j (mu_i - lam_j) / prod_{j != i} (mu_i - mu_j)

has spectrum ``lam``. Folding this step over the rows of a pattern realizes
every interlacing pattern; the phases sweep out the fibre.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (NegativeRadicandError, NotInterlacingError, NotRegularError,
                     UnsupportedGroupError)
from .orbits import Group, MatrixPoint, check_symmetry
from .patterns import GZPattern, check_interlacing, is_regular
from .tolerances import current, scale_of

TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class PhaseVector:
    phases: tuple

    def __post_init__(self):
        ph = tuple(np.mod(np.asarray(p, dtype=float).reshape(-1), TWO_PI) for p in self.phases)
        for k, p in enumerate(ph, start=1):
            if p.size != k:
                raise ValueError(f"level {k} needs {k} phases, got {p.size}")
        object.__setattr__(self, "phases", ph)

    @classmethod
    def zeros(cls, n: int) -> "PhaseVector":
        return cls([np.zeros(k) for k in range(1, n)])

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "PhaseVector":
        return cls([rng.uniform(0.0, TWO_PI, k) for k in range(1, n)])


def _canonical_eigh(a: np.ndarray):
    """Descending eigenpairs; each eigenvector's largest entry made real positive."""
    w, V = np.linalg.eigh(a)
    w, V = w[::-1], V[:, ::-1]
    idx = np.argmax(np.abs(V), axis=0)
    pivots = V[idx, np.arange(V.shape[1])]
    return w, V * (np.abs(pivots) / pivots)


def _interlaces(mu, lam, eps) -> bool:
    return bool(np.all(mu <= lam[:-1] + eps) and np.all(mu >= lam[1:] - eps))


def border_weights(mu, lam, scale: float):
    """Squared border components ``beta_i**2`` with exact deflation of ties.

    Each ``mu_i`` within the tie tolerance of an unused ``lam_j`` is paired
    with it and gets weight 0; the remaining values interlace strictly and
    the product formula is applied to them.
    """
    tol = current()
    tie = tol.tie * scale
    mu = np.asarray(mu, dtype=float)
    lam = np.asarray(lam, dtype=float)
    used = np.zeros(lam.size, dtype=bool)
    free = []
    for i, m in enumerate(mu):
        gaps = np.where(used, np.inf, np.abs(lam - m))
        j = int(np.argmin(gaps)) if lam.size else -1
        if j >= 0 and gaps[j] < tie:
            used[j] = True
        else:
            free.append(i)
    beta2 = np.zeros(mu.size)
    mu_f = mu[free]
    lam_f = lam[~used]
    for pos, i in enumerate(free):
        num = -np.prod(mu[i] - lam_f)
        den = np.prod(np.delete(mu[i] - mu_f, pos))
        ratio = num / den
        if ratio < -tol.radicand * scale:
            raise NegativeRadicandError(
                f"border weight {ratio:.3g} for eigenvalue {mu[i]:.6g}")
        beta2[i] = max(ratio, 0.0)
    return beta2


def border_once(A_k: MatrixPoint, target, phases=None) -> MatrixPoint:
    """Extend ``A_k`` by one row and column so the result has spectrum ``target``."""
    if A_k.group is not Group.UNITARY:
        raise UnsupportedGroupError("bordering is implemented for u(n) only")
    check_symmetry(A_k)
    k = A_k.n
    lam = np.sort(np.asarray(target, dtype=float).reshape(-1))[::-1]
    if lam.size != k + 1:
        raise NotInterlacingError(f"target must have {k + 1} entries")
    phases = np.zeros(k) if phases is None else np.asarray(phases, dtype=float).reshape(-1)
    mu, U = _canonical_eigh(A_k.entries)
    scale = scale_of(np.concatenate([lam, mu]))
    if not _interlaces(mu, lam, current().interlacing_slack * scale):
        raise NotInterlacingError(f"{lam} does not interlace {mu}")
    beta = np.sqrt(border_weights(mu, lam, scale))
    b = U @ (beta * np.exp(1j * phases))
    c = lam.sum() - np.trace(A_k.entries).real
    out = np.empty((k + 1, k + 1), dtype=complex)
    out[:k, :k] = A_k.entries
    out[:k, k] = b
    out[k, :k] = b.conj()
    out[k, k] = c
    return MatrixPoint(Group.UNITARY, out)


def inverse_gz(p: GZPattern, phases: PhaseVector | None = None) -> MatrixPoint:
    """Hermitian matrix whose Gelfand-Zeitlin pattern is ``p``.

    With zero phases the result is real symmetric.
    """
    if p.group is not Group.UNITARY:
        raise UnsupportedGroupError("inverse construction exists for u(n) only")
    if p.levels != tuple(range(1, p.n + 1)):
        raise UnsupportedGroupError("inverse requires the full chain 1..n")
    if not check_interlacing(p):
        raise NotInterlacingError("pattern rows do not interlace")
    if phases is None:
        phases = PhaseVector.zeros(p.n)
    if len(phases.phases) != p.n - 1:
        raise ValueError(f"need phases for levels 1..{p.n - 1}")
    A = MatrixPoint(Group.UNITARY, np.array([[p.rows[0][0]]], dtype=complex))
    for k in range(1, p.n):
        A = border_once(A, p.rows[k], phases.phases[k - 1])
    return A


def sample_fibre(p: GZPattern, count: int, seed: int) -> list:
    """``count`` points of the fibre over a regular pattern, random phases.

    Element ``i`` draws its phases from the stream seeded by ``(seed, i)``.
    """
    if not is_regular(p, 1e-8):
        raise NotRegularError("fibre sampling requires a regular pattern")
    out = []
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        out.append(inverse_gz(p, PhaseVector.random(p.n, rng)))
    return out
