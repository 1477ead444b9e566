"""``gz`` command-line front end.

Exit codes: 0 success, 1 failed verification, 2 schema/usage error,
3 NON_SYMMETRIC input, 4 UNBOUNDED or DIM_TOO_LARGE, 5 any other domain
error. Errors are written to stderr as ``error: <TAG>: <message>``.
"""
from __future__ import annotations

import argparse
import csv
import io as _stdio
import os
import sys

import numpy as np

from . import flows, inverse, io, orbits, patterns, polygon, polytope, suites
from .errors import (DimTooLargeError, GZError, NonSymmetricError, SchemaError,
                     UnboundedError)
from .tolerances import scaled_tolerances

EXIT_CODES = {SchemaError: 2, NonSymmetricError: 3, UnboundedError: 4, DimTooLargeError: 4}


def _exit_code(exc: GZError) -> int:
    for cls, code in EXIT_CODES.items():
        if isinstance(exc, cls):
            return code
    return 5


def _default_seed() -> int:
    return int(os.environ.get("GZ_SEED", "0"))


def _csv_floats(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise SchemaError(f"expected comma-separated numbers, got {text!r}") from None


def _row(text: str):
    """Parse ``"a1,a2,...;kappa"``."""
    if ";" not in text:
        raise SchemaError(f"expected 'a1,a2,...;kappa', got {text!r}")
    a, k = text.rsplit(";", 1)
    return _csv_floats(a), float(k)


def _read_json(path: str):
    try:
        with open(path) if path != "-" else sys.stdin as fh:
            return io.loads(fh.read())
    except OSError as exc:
        raise SchemaError(str(exc)) from exc


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _emit_json(args, obj):
    _write(getattr(args, "out", None), io.dumps(obj) + "\n")


def _diagonals(text, n):
    if text is None:
        return polygon.TriangulationSpec(n)
    pairs = []
    for item in text.split(","):
        i, _, j = item.partition("-")
        pairs.append((int(i), int(j)))
    return polygon.TriangulationSpec(n, pairs)


# ---------------------------------------------------------------- commands

def cmd_map(args):
    A = io.matrix_from_json(_read_json(args.input))
    chain = patterns.ChainSpec(A.group, A.n, _csv_floats(args.levels) if args.levels else None)
    _emit_json(args, io.pattern_to_json(patterns.gz_map(A, chain)))


def build_polytope(group: str, spectrum=None, n=None, momentum=(), cuts=(), levels=None):
    """The system written by ``gz polytope``."""
    if group == "su":
        if n not in (None, 2) or spectrum is not None:
            raise GZError("--group su supports n = 2 with momentum rows only")
        with_torus = levels is None or list(levels) == [1, 2]
        S = polytope.su2_image(momentum, with_torus_level=with_torus)
    elif spectrum is not None:
        if momentum:
            raise SchemaError("--momentum rows need a free top row (use --n instead of --spectrum)")
        g = orbits.Group.parse(group)
        values = sorted(spectrum, reverse=True)
        size = len(values) if g is orbits.Group.UNITARY else (n or 2 * len(values))
        spec = orbits.OrbitSpec(g, size, values)
        chain = patterns.ChainSpec(g, size, levels) if levels else None
        S = polytope.image_polytope(spec, chain)
    else:
        if n is None:
            raise SchemaError("give --spectrum or --n")
        S = polytope.momentum_image(group, n, momentum, levels)
    for a, k in cuts:
        S = polytope.cut(S, a, k)
    return S


def cmd_polytope(args):
    spectrum = _csv_floats(args.spectrum) if args.spectrum is not None else None
    levels = [int(v) for v in _csv_floats(args.levels)] if args.levels else None
    S = build_polytope(args.group, spectrum, args.n, [_row(m) for m in args.momentum],
                       [_row(c) for c in args.cut], levels)
    _emit_json(args, io.system_to_json(S))
    if args.vertices:
        verts = polytope.vertices(S)
        _write(args.vertices, io.dumps({"vertices": [[float(v) for v in x] for x in verts]}) + "\n")


def cmd_inverse(args):
    p = io.pattern_from_json(_read_json(args.input))
    ph = io.phases_from_json(_read_json(args.phases)) if args.phases else None
    _emit_json(args, io.matrix_to_json(inverse.inverse_gz(p, ph)))


def cmd_flow(args):
    A = io.matrix_from_json(_read_json(args.input))
    if args.spec:
        f = io.flow_from_json(_read_json(args.spec))
    else:
        f = flows.FlowSpec(args.level, args.index, args.angle)
    _emit_json(args, io.matrix_to_json(flows.gz_flow(A, f)))


def cmd_sample(args):
    seed = args.seed if args.seed is not None else _default_seed()
    if args.fibre:
        p = io.pattern_from_json(_read_json(args.fibre))
        pts = inverse.sample_fibre(p, args.count, seed)
        _emit_json(args, [io.matrix_to_json(A) for A in pts])
        return
    if args.spectrum is None:
        raise SchemaError("give --spectrum or --fibre")
    values = sorted(_csv_floats(args.spectrum), reverse=True)
    g = orbits.Group.parse(args.group)
    n = args.n or (len(values) if g is orbits.Group.UNITARY else 2 * len(values))
    spec = orbits.OrbitSpec(g, n, values)
    if args.count == 1:
        _emit_json(args, io.matrix_to_json(orbits.sample_orbit(spec, seed)))
    else:
        rng = np.random.SeedSequence(seed)
        seeds = [int(s.generate_state(1)[0]) for s in rng.spawn(args.count)]
        _emit_json(args, [io.matrix_to_json(orbits.sample_orbit(spec, s)) for s in seeds])


def cmd_width(args):
    values = sorted(_csv_floats(args.spectrum), reverse=True)
    out = {"lower_bound": polytope.width_lower_bound(values)}
    if args.certify:
        S = polytope.image_polytope(orbits.OrbitSpec("u", len(values), values))
        cert = polytope.search_simplex(S, grid=args.grid)
        out["certificate"] = io.certificate_to_json(cert)
        out["certified"] = polytope.certify_simplex(S, cert)
        out["certified_bound"] = 2 * np.pi * cert.width
    _emit_json(args, out)


def cmd_verify(args):
    seed = args.seed if args.seed is not None else _default_seed()
    report = suites.run_suite(args.suite, args.n, args.samples, seed)
    print(report.summary(), file=sys.stderr)
    out = report.to_json()
    out.pop("wall_time")
    _emit_json(args, out)
    return 0 if report.passed else 1


def _csv_text(header, rows) -> str:
    buf = _stdio.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt(v) -> str:
    return repr(float(v))


def cmd_plot_data(args):
    obj = _read_json(args.input)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.what == "polytope":
        S = io.system_from_json(obj)
        verts = polytope.vertices(S)
        coords = [f"x{i}" for i in range(S.dim)]
        rows = [["vertex", k, "", "", *map(_fmt, v)] for k, v in enumerate(verts)]
        rows += [["edge", k, i, j, *[""] * S.dim] for k, (i, j) in enumerate(polytope.edges(S, verts))]
        text = _csv_text(["kind", "id", "i", "j", *coords], rows)
    elif args.what == "pattern-cloud":
        spec = io.orbit_from_json(obj)
        S = polytope.image_polytope(spec)
        ss = np.random.SeedSequence(seed).spawn(args.samples)
        rows = []
        for s in ss:
            A = orbits.sample_orbit(spec, int(s.generate_state(1)[0]))
            rows.append([_fmt(v) for v in patterns.gz_map(A).flat()[:S.dim]])
        text = _csv_text([f"x_{k}_{i}" for k, i in S.layout], rows)
    elif args.what == "polygon":
        P = io.polygon_from_json(obj)
        text = _csv_text(["x", "y", "z"], [[_fmt(c) for c in v] for v in P.vertices()])
    else:
        raise SchemaError(f"unknown plot kind {args.what!r}")
    _write(args.out, text)


def cmd_polygon(args):
    if args.action == "sample":
        r = _csv_floats(args.lengths)
        seed = args.seed if args.seed is not None else _default_seed()
        P = polygon.sample_polygon(r, _diagonals(args.diagonals, len(r)), seed)
        _emit_json(args, io.polygon_to_json(P))
    elif args.action == "polytope":
        r = _csv_floats(args.lengths)
        S = polygon.polygon_polytope(r, _diagonals(args.diagonals, len(r)))
        _emit_json(args, io.system_to_json(S))
    elif args.action == "bend":
        P = io.polygon_from_json(_read_json(args.input))
        i, j = (int(v) for v in _csv_floats(args.diagonal))
        _emit_json(args, io.polygon_to_json(polygon.bend(P, (i, j), args.angle)))
    elif args.action == "lengths":
        P = io.polygon_from_json(_read_json(args.input))
        T = _diagonals(args.diagonals, P.n)
        _emit_json(args, {"diagonals": [list(d) for d in T.diagonals],
                          "lengths": [float(v) for v in polygon.diagonal_lengths(P, T)]})


# ---------------------------------------------------------------- parser

PLOT_HELP = """\
CSV columns:
  polytope       kind,id,i,j,x0..x{d-1}: 'vertex' rows carry coordinates,
                 'edge' rows carry the vertex ids i,j they join
  pattern-cloud  one row per orbit sample, columns x_<level>_<index> for the
                 pattern coordinates below the top row (--in is an OrbitSpec)
  polygon        x,y,z of the polygon vertices v_0..v_{n-1}
"""


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gz", description=__doc__.splitlines()[0])
    ap.add_argument("--tolerance-scale", type=float, default=1.0,
                    help="multiply every default tolerance by this factor")
    sub = ap.add_subparsers(dest="command", required=True)

    def out_arg(p):
        p.add_argument("-o", "--out", help="output file (default stdout)")

    p = sub.add_parser("map", help="Gelfand-Zeitlin pattern of a matrix")
    p.add_argument("input", help="MatrixPoint JSON file ('-' for stdin)")
    p.add_argument("--levels", help="chain levels, comma-separated (default full chain)")
    out_arg(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("polytope", help="image polytope as an inequality system")
    p.add_argument("--group", choices=["u", "so", "su"], default="u")
    p.add_argument("--spectrum", help="orbit spectrum, comma-separated (pins the top row)")
    p.add_argument("--n", type=int, help="size of the top level when the top row is free")
    p.add_argument("--momentum", action="append", default=[], metavar="A;K",
                   help="momentum-set row over the top-row coordinates (repeatable)")
    p.add_argument("--cut", action="append", default=[], metavar="A;K",
                   help="halfspace a.x <= K over all variables (repeatable)")
    p.add_argument("--levels", help="chain levels, comma-separated")
    p.add_argument("--vertices", metavar="FILE", help="also write the vertex list here")
    out_arg(p)
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("inverse", help="matrix realizing a u(n) pattern")
    p.add_argument("input", help="GZPattern JSON")
    p.add_argument("--phases", help="PhaseVector JSON (default zero phases)")
    out_arg(p)
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("flow", help="apply one circle flow")
    p.add_argument("input", help="MatrixPoint JSON")
    p.add_argument("--spec", help="FlowSpec JSON (overrides --level/--index/--angle)")
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--index", type=int, default=1)
    p.add_argument("--angle", type=float, default=0.0)
    out_arg(p)
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("sample", help="random orbit points or fibre points")
    p.add_argument("--group", choices=["u", "so"], default="u")
    p.add_argument("--spectrum")
    p.add_argument("--n", type=int, help="matrix size for so (default 2*len(spectrum))")
    p.add_argument("--fibre", help="GZPattern JSON: sample its fibre instead")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, help="default: $GZ_SEED or 0")
    out_arg(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("width", help="Gromov width lower bound of a u(n) orbit")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--certify", action="store_true", help="search and certify an inscribed simplex")
    p.add_argument("--grid", type=int, default=5)
    out_arg(p)
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=[*suites.SUITES, "all"], default="all")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, help="default: $GZ_SEED or 0")
    out_arg(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot-data", help="emit CSV for figures",
                       epilog=PLOT_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--what", choices=["polytope", "pattern-cloud", "polygon"], required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_plot_data)

    p = sub.add_parser("polygon", help="polygon spaces and bending flows")
    psub = p.add_subparsers(dest="action", required=True)
    q = psub.add_parser("sample")
    q.add_argument("--lengths", required=True)
    q.add_argument("--diagonals", help="e.g. '1-2,1-3' (default fan)")
    q.add_argument("--seed", type=int)
    out_arg(q)
    q = psub.add_parser("polytope")
    q.add_argument("--lengths", required=True)
    q.add_argument("--diagonals")
    out_arg(q)
    q = psub.add_parser("bend")
    q.add_argument("input")
    q.add_argument("--diagonal", required=True, help="i,j")
    q.add_argument("--angle", type=float, required=True)
    out_arg(q)
    q = psub.add_parser("lengths")
    q.add_argument("input")
    q.add_argument("--diagonals")
    out_arg(q)
    p.set_defaults(func=cmd_polygon)
    return ap


_VALUE_OPTIONS = ("--momentum", "--cut", "--spectrum", "--angle", "--lengths")


def _join_negative_values(argv):
    """Rewrite ``--cut -1,0;2`` as ``--cut=-1,0;2`` so argparse keeps the value."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        with scaled_tolerances(args.tolerance_scale):
            code = args.func(args)
    except GZError as exc:
        print(f"error: {exc.tag}: {exc.message}", file=sys.stderr)
        return _exit_code(exc)
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
