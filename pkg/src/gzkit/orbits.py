"""Matrix models of u(n)* and so(n)*: spectra, the sweeping map, orbit sampling.

A point of u(n)* is stored as a Hermitian matrix, a point of so(n)* as a real
skew-symmetric matrix. The sweeping map sends a matrix to the representative
of its orbit in the closed positive chamber:

* u(n): eigenvalues sorted weakly decreasing;
* so(n): the block parameters ``mu_1 >= ... >= mu_m >= 0`` (``m = n // 2``)
  of the real normal form ``diag(mu_1 J, ..., mu_m J[, 0])`` with
  ``J = [[0, 1], [-1, 0]]``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import GZError, NonSymmetricError
from .tolerances import current, scale_of


class Group(str, enum.Enum):
    UNITARY = "u"
    SPECIAL_ORTHOGONAL = "so"

    @classmethod
    def parse(cls, value) -> "Group":
        if isinstance(value, Group):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise GZError(f"unknown group {value!r}") from None


def chamber_rank(group: Group, n: int) -> int:
    """Number of sweeping coordinates of the level-``n`` algebra."""
    return n if Group.parse(group) is Group.UNITARY else n // 2


@dataclass(frozen=True)
class MatrixPoint:
    group: Group
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "group", Group.parse(self.group))
        dtype = complex if self.group is Group.UNITARY else None
        a = np.array(self.entries, dtype=dtype)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GZError(f"expected a square matrix, got shape {a.shape}")
        if self.group is Group.SPECIAL_ORTHOGONAL and np.iscomplexobj(a):
            if np.any(a.imag != 0):
                raise NonSymmetricError("so(n) matrices must be real")
            a = a.real
        a = a.astype(complex if self.group is Group.UNITARY else float)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def hermitian(cls, entries) -> "MatrixPoint":
        return cls(Group.UNITARY, entries)

    @classmethod
    def skew(cls, entries) -> "MatrixPoint":
        return cls(Group.SPECIAL_ORTHOGONAL, entries)

    def block(self, k: int) -> "MatrixPoint":
        """Leading principal ``k x k`` submatrix."""
        return MatrixPoint(self.group, self.entries[:k, :k])

    @property
    def scale(self) -> float:
        return scale_of(self.entries)


@dataclass(frozen=True)
class OrbitSpec:
    group: Group
    n: int
    spectrum: tuple

    def __post_init__(self):
        object.__setattr__(self, "group", Group.parse(self.group))
        spec = tuple(float(v) for v in self.spectrum)
        object.__setattr__(self, "spectrum", spec)
        if self.n < 1:
            raise GZError("n must be positive")
        if len(spec) != chamber_rank(self.group, self.n):
            raise GZError(
                f"spectrum of length {len(spec)} does not fit {self.group.value}({self.n})")
        if any(a < b for a, b in zip(spec, spec[1:])):
            raise GZError("spectrum must be weakly decreasing")
        if self.group is Group.SPECIAL_ORTHOGONAL and any(v < 0 for v in spec):
            raise GZError("so(n) chamber coordinates must be non-negative")


def check_symmetry(A: MatrixPoint) -> None:
    a = A.entries
    sign = 1.0 if A.group is Group.UNITARY else -1.0
    defect = np.max(np.abs(a - sign * a.conj().T)) if a.size else 0.0
    if defect > current().symmetry * A.scale:
        kind = "Hermitian" if A.group is Group.UNITARY else "skew-symmetric"
        raise NonSymmetricError(f"matrix is not {kind} (defect {defect:.3g})")


def normal_form(group: Group, n: int, values) -> np.ndarray:
    """Diagonal (u) or 2x2-block (so) matrix with the given chamber values."""
    group = Group.parse(group)
    values = np.asarray(values, dtype=float)
    if group is Group.UNITARY:
        return np.diag(values).astype(complex)
    D = np.zeros((n, n))
    for j, mu in enumerate(values):
        D[2 * j, 2 * j + 1] = mu
        D[2 * j + 1, 2 * j] = -mu
    return D


def _skew_decomposition(a: np.ndarray):
    n = a.shape[0]
    if n == 0:
        return np.zeros(0), np.eye(0)
    T, Z = linalg.schur(a, output="real")
    blocks, zeros = [], []
    i = 0
    while i < n:
        if i + 1 < n and T[i + 1, i] != 0.0:
            mu = 0.5 * (T[i, i + 1] - T[i + 1, i])
            cols = (i, i + 1) if mu >= 0 else (i + 1, i)
            blocks.append((abs(mu), cols))
            i += 2
        else:
            zeros.append(i)
            i += 1
    for j in range(0, len(zeros) - 1, 2):
        blocks.append((0.0, (zeros[j], zeros[j + 1])))
    blocks.sort(key=lambda b: -b[0])
    order = [c for _, cols in blocks for c in cols]
    if len(zeros) % 2:
        order.append(zeros[-1])
    mus = np.array([mu for mu, _ in blocks])
    return mus, Z[:, order]


def spectral_decomposition(A: MatrixPoint):
    """Return ``(values, frame)`` with ``A = frame @ normal_form(values) @ frame^H``.

    For u(n) the values are the eigenvalues in descending order; for so(n)
    they are the non-negative block parameters, also descending.
    """
    check_symmetry(A)
    if A.group is Group.UNITARY:
        w, V = np.linalg.eigh(A.entries)
        return w[::-1].copy(), V[:, ::-1].copy()
    return _skew_decomposition(A.entries)


def sweep(A: MatrixPoint) -> np.ndarray:
    """Chamber representative of the orbit through ``A``."""
    check_symmetry(A)
    if A.n == 0:
        return np.zeros(0)
    if A.group is Group.UNITARY:
        return np.linalg.eigvalsh(A.entries)[::-1].copy()
    m = A.n // 2
    w = np.linalg.eigvalsh(1j * A.entries)[::-1]
    # eigenvalues of iA come in pairs +-mu
    return np.sort(np.abs(w[:m]))[::-1].copy()


def random_group_element(group: Group, n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary / orthogonal matrix (QR of a Gaussian matrix)."""
    group = Group.parse(group)
    if group is Group.UNITARY:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    else:
        g = rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def sample_orbit(spec: OrbitSpec, seed: int) -> MatrixPoint:
    """Seeded random point ``Q D Q^H`` on the orbit fixed by ``spec``."""
    rng = np.random.default_rng(seed)
    Q = random_group_element(spec.group, spec.n, rng)
    a = Q @ normal_form(spec.group, spec.n, spec.spectrum) @ Q.conj().T
    if spec.group is Group.UNITARY:
        a = 0.5 * (a + a.conj().T)
    else:
        a = 0.5 * (a - a.T)
    return MatrixPoint(spec.group, a)
