"""Default numerical tolerances.

All values are relative: a check against ``tol`` on a matrix ``A`` compares
with ``tol * (1 + max|A|)``. The CLI flag ``--tolerance-scale`` multiplies
every entry uniformly via :func:`scaled_tolerances`.
"""
from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    symmetry: float = 1e-12
    reconstruction: float = 1e-10
    equality: float = 1e-9
    regularity_gap: float = 1e-6
    interlacing_slack: float = 1e-10
    tie: float = 1e-9
    radicand: float = 1e-8
    flow_gap: float = 1e-8
    membership_slack: float = 1e-9
    dedup: float = 1e-8

    def scaled(self, factor: float) -> "Tolerances":
        return replace(self, **{f.name: getattr(self, f.name) * factor for f in fields(self)})


_current: contextvars.ContextVar[Tolerances] = contextvars.ContextVar("gz_tolerances", default=Tolerances())


def current() -> Tolerances:
    return _current.get()


@contextlib.contextmanager
def scaled_tolerances(factor: float):
    token = _current.set(Tolerances().scaled(factor))
    try:
        yield current()
    finally:
        _current.reset(token)


def scale_of(x) -> float:
    """``1 + max|x|`` for any array-like (0-size arrays give 1)."""
    import numpy as np

    a = np.asarray(x)
    return 1.0 + (float(np.max(np.abs(a))) if a.size else 0.0)
