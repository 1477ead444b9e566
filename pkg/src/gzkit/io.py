"""JSON encodings of the toolkit's values.

Schemas::

    MatrixPoint        {"group": "u"|"so", "n": N, "entries": [[[re, im], ...], ...]}
    ChamberPoint       {"values": [...]}
    OrbitSpec          {"group": ..., "n": N, "spectrum": [...]}
    GZPattern          {"group": ..., "rows": [[...], ...], "levels": [...]}   (levels optional)
    InequalitySystem   {"dim": d, "rows": [{"a": [...], "k": kappa}, ...], "layout": [...]}
    PhaseVector        {"phases": [[...], ...]}
    FlowSpec           {"level": k, "index": i, "angle": theta}
    SimplexCertificate {"anchor": [...], "width": w, "directions": [[...], ...]}
    PolygonConfig      {"lengths": [...], "edges": [[x, y, z], ...]}
    TriangulationSpec  {"diagonals": [[i, j], ...]}

Decoders raise :class:`~gzkit.errors.SchemaError` on malformed input.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import GZError, SchemaError
from .flows import FlowSpec
from .inverse import PhaseVector
from .orbits import Group, MatrixPoint, OrbitSpec
from .patterns import GZPattern
from .polygon import PolygonConfig, TriangulationSpec
from .polytope import InequalitySystem, SimplexCertificate


def _floats(v):
    return [float(x) for x in np.asarray(v, dtype=float).reshape(-1)]


def _get(obj, key):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing key {key!r}")
    return obj[key]


def _decoding(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SchemaError:
            raise
        except (GZError, TypeError, ValueError, KeyError, IndexError) as exc:
            raise SchemaError(f"{fn.__name__}: {exc}") from exc

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def matrix_to_json(A: MatrixPoint) -> dict:
    a = np.asarray(A.entries, dtype=complex)
    return {"group": A.group.value, "n": A.n,
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in a]}


@_decoding
def matrix_from_json(obj) -> MatrixPoint:
    group = Group.parse(_get(obj, "group"))
    n = int(_get(obj, "n"))
    raw = np.asarray(_get(obj, "entries"), dtype=float)
    if raw.shape != (n, n, 2):
        raise SchemaError(f"entries must have shape ({n}, {n}, 2), got {raw.shape}")
    return MatrixPoint(group, raw[..., 0] + 1j * raw[..., 1])


def chamber_to_json(values) -> dict:
    return {"values": _floats(values)}


@_decoding
def chamber_from_json(obj) -> np.ndarray:
    return np.asarray(_get(obj, "values"), dtype=float)


def orbit_to_json(spec: OrbitSpec) -> dict:
    return {"group": spec.group.value, "n": spec.n, "spectrum": list(spec.spectrum)}


@_decoding
def orbit_from_json(obj) -> OrbitSpec:
    return OrbitSpec(_get(obj, "group"), int(_get(obj, "n")), _get(obj, "spectrum"))


def pattern_to_json(p: GZPattern) -> dict:
    return {"group": p.group.value, "rows": [_floats(r) for r in p.rows], "levels": list(p.levels)}


@_decoding
def pattern_from_json(obj) -> GZPattern:
    return GZPattern(_get(obj, "group"), _get(obj, "rows"), obj.get("levels"))


def _layout_item(c):
    return list(c) if isinstance(c, tuple) else c


def system_to_json(S: InequalitySystem) -> dict:
    return {"dim": S.dim,
            "rows": [{"a": _floats(a), "k": float(k)} for a, k in S.rows],
            "layout": [_layout_item(c) for c in S.layout]}


@_decoding
def system_from_json(obj) -> InequalitySystem:
    dim = int(_get(obj, "dim"))
    rows = [(_get(r, "a"), float(_get(r, "k"))) for r in _get(obj, "rows")]
    layout = obj.get("layout")
    if layout is not None:
        layout = [tuple(c) if isinstance(c, list) else c for c in layout]
    return InequalitySystem(dim, rows, layout)


def phases_to_json(ph: PhaseVector) -> dict:
    return {"phases": [_floats(p) for p in ph.phases]}


@_decoding
def phases_from_json(obj) -> PhaseVector:
    return PhaseVector(_get(obj, "phases"))


def flow_to_json(f: FlowSpec) -> dict:
    return {"level": f.level, "index": f.index, "angle": float(f.angle)}


@_decoding
def flow_from_json(obj) -> FlowSpec:
    return FlowSpec(int(_get(obj, "level")), int(_get(obj, "index")), float(_get(obj, "angle")))


def certificate_to_json(c: SimplexCertificate) -> dict:
    return {"anchor": _floats(c.anchor), "width": float(c.width),
            "directions": [_floats(d) for d in c.directions]}


@_decoding
def certificate_from_json(obj) -> SimplexCertificate:
    return SimplexCertificate(_get(obj, "anchor"), float(_get(obj, "width")), obj.get("directions"))


def polygon_to_json(P: PolygonConfig) -> dict:
    return {"lengths": _floats(P.lengths), "edges": [_floats(e) for e in P.edges]}


@_decoding
def polygon_from_json(obj) -> PolygonConfig:
    return PolygonConfig(_get(obj, "edges"), _get(obj, "lengths"))


def triangulation_to_json(T: TriangulationSpec) -> dict:
    return {"diagonals": [list(d) for d in T.diagonals]}


@_decoding
def triangulation_from_json(obj, n: int | None = None) -> TriangulationSpec:
    diags = [tuple(d) for d in _get(obj, "diagonals")]
    return TriangulationSpec(len(diags) + 3 if n is None else n, diags)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
