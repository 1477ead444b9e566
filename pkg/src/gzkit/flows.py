"""Circle actions generated by the Gelfand-Zeitlin functions on u(n)*.

The eigenvalue ``lambda_i`` of the leading ``k x k`` block generates the flow

    A -> exp(i theta P) A exp(-i theta P),   P = u u^H (+) 0_{n-k},

where ``u`` is the unit eigenvector of that block for ``lambda_i``. The flow
fixes the whole leading block, is ``2 pi``-periodic, and flows belonging to
different (level, index) pairs commute on the regular set.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .errors import DegenerateLevelError, GZError, UnsupportedGroupError
from .orbits import Group, MatrixPoint, check_symmetry
from .tolerances import current


@dataclass(frozen=True)
class FlowSpec:
    level: int
    index: int
    angle: float = 0.0

    def __post_init__(self):
        if not 1 <= self.index <= self.level:
            raise GZError(f"flow index {self.index} outside 1..{self.level}")

    def with_angle(self, angle: float) -> "FlowSpec":
        return FlowSpec(self.level, self.index, angle)


def flow_projector(A: MatrixPoint, level: int, index: int) -> np.ndarray:
    """Rank-one spectral projector of the leading block, padded to ``n x n``."""
    if A.group is not Group.UNITARY:
        raise UnsupportedGroupError("flows are implemented for u(n) only")
    if not 1 <= index <= level <= A.n:
        raise GZError(f"flow ({level}, {index}) does not fit n = {A.n}")
    w, V = np.linalg.eigh(A.entries[:level, :level])
    w, V = w[::-1], V[:, ::-1]
    i = index - 1
    gaps = np.abs(np.delete(w, i) - w[i])
    if gaps.size and np.min(gaps) <= current().flow_gap * A.scale:
        raise DegenerateLevelError(
            f"eigenvalue {index} of block {level} is not simple (gap {np.min(gaps):.3g})")
    u = np.zeros(A.n, dtype=complex)
    u[:level] = V[:, i]
    return np.outer(u, u.conj())


def gz_flow(A: MatrixPoint, f: FlowSpec) -> MatrixPoint:
    """Flow ``A`` by angle ``f.angle`` along the circle action of ``(f.level, f.index)``."""
    check_symmetry(A)
    P = flow_projector(A, f.level, f.index)
    if f.angle == 0:
        return A
    # exp(i theta P) = I + (e^{i theta} - 1) P for a projector
    c = np.expm1(1j * f.angle)
    a = A.entries
    PA = P @ a
    out = a + c * PA + np.conj(c) * PA.conj().T + abs(c) ** 2 * (PA @ P)
    out = 0.5 * (out + out.conj().T)
    return MatrixPoint(Group.UNITARY, out)


def verify_commutation(A: MatrixPoint, f: FlowSpec, g: FlowSpec) -> float:
    """Max-norm discrepancy between ``g . f`` and ``f . g`` applied to ``A``."""
    fg = gz_flow(gz_flow(A, f), g).entries
    gf = gz_flow(gz_flow(A, g), f).entries
    return float(np.max(np.abs(fg - gf)))


def torus_specs(n: int) -> list:
    """(level, index) pairs acting non-trivially: levels ``1..n-1``."""
    return [FlowSpec(k, i) for k in range(1, n) for i in range(1, k + 1)]


def torus_flow(A: MatrixPoint, angles, specs=None) -> MatrixPoint:
    """Compose the flows of ``specs`` (default :func:`torus_specs`) with ``angles``."""
    specs = torus_specs(A.n) if specs is None else specs
    for s, t in zip(specs, angles):
        A = gz_flow(A, s.with_angle(t))
    return A


def find_connecting_flow(A: MatrixPoint, B: MatrixPoint, grid: int = 8, specs=None):
    """Search torus angles moving ``A`` onto ``B``.

    Coarse grid over the torus, then least-squares refinement from the best
    few grid points. Returns ``(angles, residual)`` with the max-norm residual.
    """
    specs = torus_specs(A.n) if specs is None else specs
    target = B.entries

    def resid(theta):
        d = torus_flow(A, theta, specs).entries - target
        return np.concatenate([d.real.ravel(), d.imag.ravel()])

    ticks = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
    scored = []
    for theta in itertools.product(ticks, repeat=len(specs)):
        r = resid(np.array(theta))
        scored.append((float(np.max(np.abs(r))), theta))
    scored.sort(key=lambda s: s[0])
    best_theta, best = np.array(scored[0][1]), scored[0][0]
    for _, theta in scored[:4]:
        sol = least_squares(resid, np.array(theta), xtol=1e-15, ftol=1e-15, gtol=1e-15)
        err = float(np.max(np.abs(sol.fun)))
        if err < best:
            best, best_theta = err, np.mod(sol.x, 2 * np.pi)
    return best_theta, best
