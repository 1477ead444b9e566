"""Seeded invariant suites shared by ``gz verify`` and the test-suite.

Each suite returns a :class:`RunReport`. Case ``i`` of a suite draws from the
generator seeded by ``(seed, suite_id, i)`` so results do not depend on the
order cases are evaluated in.
"""
from __future__ import annotations

import itertools
import time
import zlib
from dataclasses import asdict, dataclass, field

import numpy as np

from . import flows, inverse, orbits, patterns, polygon, polytope
from .errors import GZError
from .orbits import Group, MatrixPoint, OrbitSpec

SUITES = ("interlacing", "roundtrip", "flows", "convexity", "polygon")

COMMUTATION_TOL = 1e-6
PATTERN_TOL = 1e-8
PERIOD_TOL = 1e-9
ROUNDTRIP_TOL = 1e-7
CONTAINMENT_SLACK = 1e-8
POLYGON_ISOMETRY_TOL = 1e-12
POLYGON_DIAGONAL_TOL = 1e-10
POLYGON_COMMUTE_TOL = 1e-8
COVERAGE_RADIUS = 0.05
COVERAGE_MIN_SAMPLES = 10_000


@dataclass
class RunReport:
    suite: str
    cases: int = 0
    failures: list = field(default_factory=list)
    max_discrepancy: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, invariant: str, case, value: float, tol: float):
        """Track ``value`` for ``invariant``; log a failure when it exceeds ``tol``."""
        value = float(value)
        prev = self.max_discrepancy.get(invariant, 0.0)
        if not (value <= prev):
            self.max_discrepancy[invariant] = value
        if not (value <= tol):
            self.failures.append({"case": str(case), "invariant": invariant, "discrepancy": value})

    def fail(self, invariant: str, case, message: str):
        self.failures.append({"case": str(case), "invariant": invariant, "discrepancy": None,
                              "message": message})

    def merge(self, other: "RunReport"):
        self.cases += other.cases
        self.failures += [{**f, "case": f"{other.suite}:{f['case']}"} for f in other.failures]
        for k, v in other.max_discrepancy.items():
            self.max_discrepancy[f"{other.suite}.{k}"] = v
        self.wall_time += other.wall_time

    def to_json(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out

    def summary(self) -> str:
        lines = [f"suite {self.suite}: {self.cases} cases, {len(self.failures)} failures, "
                 f"{self.wall_time:.2f} s"]
        for k, v in sorted(self.max_discrepancy.items()):
            lines.append(f"  max {k}: {v:.3e}")
        for f in self.failures[:20]:
            lines.append(f"  FAIL {f['invariant']} case {f['case']}: {f.get('discrepancy')}")
        return "\n".join(lines)


def case_rng(seed: int, suite: str, i: int) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(suite.encode()), i])


def random_hermitian(n: int, rng) -> MatrixPoint:
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return MatrixPoint(Group.UNITARY, 0.5 * (g + g.conj().T))


def random_skew(n: int, rng) -> MatrixPoint:
    g = rng.standard_normal((n, n))
    return MatrixPoint(Group.SPECIAL_ORTHOGONAL, 0.5 * (g - g.T))


def random_spectrum(n: int, rng, low=-5.0, high=5.0, min_gap=0.05) -> tuple:
    while True:
        v = np.sort(rng.uniform(low, high, n))[::-1]
        if n < 2 or np.min(v[:-1] - v[1:]) > min_gap:
            return tuple(v)


def regular_orbit_sample(n: int, rng, gap: float = 1e-6) -> MatrixPoint:
    """Random u(n) matrix whose pattern is regular at ``gap``."""
    while True:
        spec = OrbitSpec(Group.UNITARY, n, random_spectrum(n, rng))
        A = orbits.sample_orbit(spec, int(rng.integers(2**63)))
        if patterns.is_regular(patterns.gz_map(A), gap):
            return A


def interlacing_violation(p) -> float:
    """Largest violation of the closed interlacing rows (<= 0 when interlacing)."""
    worst = -np.inf
    for k, low, high in zip(p.levels, p.rows, p.rows[1:]):
        x = np.concatenate([low, high])
        for a, b in patterns._pair_rows(p.group, k):
            worst = max(worst, float(np.concatenate([a, b]) @ x))
    return worst


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.wall_time = time.perf_counter() - t0
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def interlacing_suite(n: int, samples: int, seed: int, groups=("u", "so")) -> RunReport:
    """Cauchy interlacing of gz_map on random Hermitian / skew matrices."""
    report = RunReport("interlacing")
    for i in range(samples):
        rng = case_rng(seed, "interlacing", i)
        for g in groups:
            if g == "so" and n < 2:
                continue
            A = random_hermitian(n, rng) if g == "u" else random_skew(n, rng)
            p = patterns.gz_map(A)
            report.cases += 1
            if not patterns.check_interlacing(p):
                report.fail("interlacing", f"{g}-{i}", "check_interlacing returned False")
            report.record(f"{g}.violation/scale", f"{g}-{i}",
                          max(interlacing_violation(p), 0.0) / A.scale, 1e-10)
    return report


@_timed
def roundtrip_suite(n: int, samples: int, seed: int) -> RunReport:
    """gz_map(inverse_gz(p, phi)) == p for random strict patterns and phases."""
    report = RunReport("roundtrip")
    for i in range(samples):
        rng = case_rng(seed, "roundtrip", i)
        p = patterns.random_interlacing_pattern(n, rng)
        report.cases += 1
        try:
            A0 = inverse.inverse_gz(p)
            A1 = inverse.inverse_gz(p, inverse.PhaseVector.random(n, rng))
        except GZError as exc:
            report.fail("roundtrip", i, str(exc))
            continue
        q0, q1 = patterns.gz_map(A0).flat(), patterns.gz_map(A1).flat()
        report.record("roundtrip/scale", i, np.max(np.abs(q1 - p.flat())) / p.scale, ROUNDTRIP_TOL)
        report.record("phase_dependence/scale", i, np.max(np.abs(q1 - q0)) / p.scale, ROUNDTRIP_TOL)
        report.record("zero_phase_imag", i, np.max(np.abs(A0.entries.imag)), 0.0)
    return report


@_timed
def flows_suite(n: int, samples: int, seed: int) -> RunReport:
    """Pattern invariance, periodicity, group law and pairwise commutation of the flows."""
    report = RunReport("flows")
    specs = [flows.FlowSpec(k, i) for k in range(1, n + 1) for i in range(1, k + 1)]
    for s in range(samples):
        rng = case_rng(seed, "flows", s)
        A = regular_orbit_sample(n, rng)
        scale = A.scale
        p = patterns.gz_map(A).flat()
        report.cases += 1
        for f in specs:
            theta = rng.uniform(0, 2 * np.pi)
            B = flows.gz_flow(A, f.with_angle(theta))
            tag = f"{s}:({f.level},{f.index})"
            report.record("pattern_invariance/scale", tag,
                          np.max(np.abs(patterns.gz_map(B).flat() - p)) / scale, PATTERN_TOL)
            report.record("block_fixed/scale", tag,
                          np.max(np.abs(B.entries[:f.level, :f.level] - A.entries[:f.level, :f.level])) / scale,
                          1e-10)
            full = flows.gz_flow(A, f.with_angle(2 * np.pi))
            report.record("periodicity/scale", tag, np.max(np.abs(full.entries - A.entries)) / scale,
                          PERIOD_TOL)
            t2 = rng.uniform(0, 2 * np.pi)
            two = flows.gz_flow(B, f.with_angle(t2))
            one = flows.gz_flow(A, f.with_angle(theta + t2))
            report.record("group_law/scale", tag, np.max(np.abs(two.entries - one.entries)) / scale,
                          PERIOD_TOL)
        for f, g in itertools.combinations(specs, 2):
            d = flows.verify_commutation(A, f.with_angle(rng.uniform(0, 2 * np.pi)),
                                         g.with_angle(rng.uniform(0, 2 * np.pi)))
            report.record("commutation/scale", f"{s}:({f.level},{f.index})x({g.level},{g.index})",
                          d / scale, COMMUTATION_TOL)
    return report


@_timed
def convexity_suite(n: int, samples: int, seed: int, spectrum=None) -> RunReport:
    """Image of the orbit equals its interlacing polytope.

    Containment of sampled images, attainment of random polytope members,
    and membership plus attainment of midpoints of image pairs.
    """
    report = RunReport("convexity")
    if n < 2 or samples == 0:
        return report
    rng = case_rng(seed, "convexity-setup", 0)
    spec = OrbitSpec(Group.UNITARY, n, spectrum if spectrum is not None else random_spectrum(n, rng))
    S = polytope.image_polytope(spec)
    top = np.asarray(spec.spectrum)
    images = []
    for i in range(samples):
        A = orbits.sample_orbit(spec, int(case_rng(seed, "convexity", i).integers(2**63)))
        x = patterns.gz_map(A).flat()[:S.dim]
        images.append(x)
        report.cases += 1
        if not polytope.membership(S, x, CONTAINMENT_SLACK):
            report.fail("containment", i, "image point outside the polytope")

    def attain(x, tag):
        p = patterns.GZPattern(Group.UNITARY, _split_rows(np.concatenate([x, top]), n))
        try:
            B = inverse.inverse_gz(p, inverse.PhaseVector.random(n, rng))
        except GZError as exc:
            report.fail(tag, len(report.failures), str(exc))
            return
        report.record(f"{tag}/scale", "", np.max(np.abs(patterns.gz_map(B).flat() - p.flat())) / p.scale,
                      ROUNDTRIP_TOL)

    for x in polytope.sample_members(S, samples, int(rng.integers(2**63))):
        report.cases += 1
        attain(x, "attainment")
    for i in range(samples):
        a, b = rng.choice(len(images), 2, replace=False) if len(images) > 1 else (0, 0)
        mid = 0.5 * (images[a] + images[b])
        report.cases += 1
        if not polytope.membership(S, mid, CONTAINMENT_SLACK):
            report.fail("midpoint_membership", i, "midpoint outside the polytope")
        attain(mid, "midpoint_attainment")
    return report


def _split_rows(flat, n):
    rows, pos = [], 0
    for k in range(1, n + 1):
        rows.append(flat[pos:pos + k])
        pos += k
    return rows


@_timed
def polygon_suite(n: int, samples: int, seed: int, lengths=None) -> RunReport:
    """Bending flows on equilateral ``n``-gons (``n >= 4``).

    Vertex coverage of the diagonal-length polytope is enforced only when
    ``samples >= 10_000``; below that it is reported but not judged.
    """
    report = RunReport("polygon")
    n = max(n, 4)
    r = np.ones(n) if lengths is None else np.asarray(lengths, dtype=float)
    T = polygon.TriangulationSpec(len(r))
    S = polygon.polygon_polytope(r, T)
    verts = polytope.vertices(S) if S.dim <= polytope.MAX_VERTEX_DIM else []
    nearest = np.full(len(verts), np.inf)
    for i in range(samples):
        P = polygon.sample_polygon(r, T, int(case_rng(seed, "polygon", i).integers(2**63)))
        rng = case_rng(seed, "polygon-bend", i)
        d = polygon.diagonal_lengths(P, T)
        report.cases += 1
        if not polytope.membership(S, d, CONTAINMENT_SLACK):
            report.fail("sample_membership", i, "diagonal lengths outside the polytope")
        if verts:
            nearest = np.minimum(nearest, [np.max(np.abs(d - v)) for v in verts])
        usable = [dg for dg, length in zip(T.diagonals, d) if length > 1e-6]
        for dg in usable:
            Q = polygon.bend(P, dg, rng.uniform(0, 2 * np.pi))
            report.record("edge_lengths", i, np.max(np.abs(np.linalg.norm(Q.edges, axis=1) - r)),
                          POLYGON_ISOMETRY_TOL)
            report.record("closure", i, np.max(np.abs(Q.edges.sum(axis=0))), POLYGON_ISOMETRY_TOL)
            report.record("diagonal_lengths", i, np.max(np.abs(polygon.diagonal_lengths(Q, T) - d)),
                          POLYGON_DIAGONAL_TOL)
        for a, b in itertools.combinations(usable, 2):
            ta, tb = rng.uniform(0, 2 * np.pi, 2)
            ab = polygon.bend(polygon.bend(P, a, ta), b, tb).edges
            ba = polygon.bend(polygon.bend(P, b, tb), a, ta).edges
            report.record("commutation", i, np.max(np.abs(ab - ba)), POLYGON_COMMUTE_TOL)
    if verts and samples:
        tol = COVERAGE_RADIUS if samples >= COVERAGE_MIN_SAMPLES else np.inf
        report.record("vertex_coverage", "all", float(np.max(nearest)), tol)
    return report


def run_suite(name: str, n: int, samples: int, seed: int) -> RunReport:
    runners = {"interlacing": interlacing_suite, "roundtrip": roundtrip_suite,
               "flows": flows_suite, "convexity": convexity_suite, "polygon": polygon_suite}
    if name == "all":
        report = RunReport("all")
        for s in SUITES:
            report.merge(runners[s](n, samples, seed))
        return report
    if name not in runners:
        raise GZError(f"unknown suite {name!r}")
    return runners[name](n, samples, seed)
