"""Command-line front end.

Subcommands: ``cap`` (geometry families), ``caph``/``cape`` (hyperbolic and
elliptic capacity), ``map`` (geometry JSON file), ``oracle`` (closed forms),
``table`` (named result tables), ``contour`` (strip-slit capacity grids).
Reports are emitted as JSON objects or CSV rows; exit codes are 0 on
success, 1 on usage errors, 2 on convergence failures and 3 on geometry
errors.
"""

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .annmap import annq
from .boundary import domain_from_dict, rectangle, circle, amoeba
from .capacity import CapacityReport, cap_family, caph, cape, caph_interval, cape_interval, exact_oracle
from .errors import ArgumentError, ConvergenceError, GeometryError, NoOracleError, RingcapError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONVERGENCE = 2
EXIT_GEOMETRY = 3

CSV_COLUMNS = ["family", "params", "n", "value", "q", "iterations", "residual",
               "runtime_ms", "exact", "rel_error"]

# CLI flag names per family (kebab-case on the command line)
FAMILY_FLAGS = {
    "two_circles": ("a", "r"),
    "confocal_ellipses": ("r1", "r2"),
    "square_in_square": ("a",),
    "polygon_in_polygon": ("m", "q"),
    "segment_circle": ("a", "r"),
    "segment_ellipse": ("c", "d", "r"),
    "segment_polygon": ("a", "r", "m"),
    "rect_pair": ("d",),
    "rect_halfplane_vertical": ("d",),
    "rect_halfplane_horizontal": ("d",),
    "rect_strip": ("d",),
    "strip_slit": ("za", "zb"),
}

ORACLE_FLAGS = {
    "two_circles": ("a", "r"),
    "confocal_ellipses": ("r1", "r2"),
    "square_in_square": ("a",),
    "polygon_in_polygon": ("m", "q"),
    "two_segments": ("c", "d"),
    "segment_circle": ("a", "r"),
    "segment_ellipse": ("c", "d", "r"),
    "halfplane_slit": ("s", "r"),
    "strip_slit": ("s",),
    "rect_pair": ("d",),
    "rect_halfplane_vertical": ("d",),
    "rect_halfplane_horizontal": ("d",),
    "rect_strip": ("d",),
}


class _Parser(argparse.ArgumentParser):
    """argparse variant with the documented usage exit code (1, not 2)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_complex(text: str) -> complex:
    """Complex arguments use the pair syntax 'x,y'."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ArgumentError(f"expected a complex 'x,y' pair, got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def _family_cli_name(name: str) -> str:
    return name.replace("_", "-")


def _family_from_cli(name: str) -> str:
    return name.replace("-", "_")


def _params_from_args(family: str, args, flags) -> dict:
    """Collect family parameters; one flag may carry a comma sweep."""
    sweeps = []
    fixed = {}
    for flag in flags:
        raw = getattr(args, flag, None)
        if raw is None:
            raise ArgumentError(f"missing required parameter --{flag}")
        if flag in ("za", "zb"):
            key = {"za": "a", "zb": "b"}[flag]
            fixed[key] = _parse_complex(raw)
            continue
        key = {"q": "scale"}.get(flag, flag)
        vals = [float(v) for v in str(raw).split(",")]
        if flag == "m":
            vals = [int(v) for v in vals]
        if len(vals) == 1:
            fixed[key] = vals[0]
        else:
            sweeps.append((key, vals))
    if len(sweeps) > 1:
        raise ArgumentError("only one parameter may be swept per invocation")
    if not sweeps:
        return [fixed]
    key, vals = sweeps[0]
    return [dict(fixed, **{key: v}) for v in vals]


def _params_text(params: dict) -> str:
    def fmt(v):
        if isinstance(v, complex):
            return f"{v.real:g},{v.imag:g}"
        return f"{v:g}" if isinstance(v, float) else str(v)

    return ";".join(f"{k}={fmt(v)}" for k, v in sorted(params.items()))


def _report_row(report: CapacityReport) -> list:
    return [
        report.family,
        _params_text(report.params),
        report.n,
        repr(report.value),
        repr(report.q) if report.q is not None else "",
        report.iterations,
        repr(report.residual),
        f"{report.runtime_ms:.3f}",
        repr(report.exact) if report.exact is not None else "",
        repr(report.rel_error) if report.rel_error is not None else "",
    ]


def _emit_reports(reports, fmt: str, output):
    if fmt == "json":
        payload = [r.to_dict() for r in reports]
        text = json.dumps(payload[0] if len(payload) == 1 else payload, indent=2)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in reports:
            writer.writerow(_report_row(r))
        text = buf.getvalue().rstrip("\n")
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cache_key(family: str, params: dict, n, tol) -> str:
    blob = json.dumps([family, _params_text(params), n, tol], sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _cache_lookup(path, key):
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        for row in csv.reader(fh):
            if row and row[0] == key:
                return CapacityReport.from_dict(json.loads(row[1]))
    return None


def _cache_store(path, key, report):
    if not path:
        return
    new = not os.path.exists(path)
    with open(path, "a", newline="") as fh:
        writer = csv.writer(fh)
        if new:
            writer.writerow(["key", "report_json"])
        writer.writerow([key, json.dumps(report.to_dict())])


def _run_cap(args) -> int:
    family = _family_from_cli(args.family)
    if family not in FAMILY_FLAGS:
        raise ArgumentError(f"unknown family {args.family!r}")
    param_sets = _params_from_args(family, args, FAMILY_FLAGS[family])
    transform = None
    if args.scale is not None and args.scale != 1.0:
        transform = (complex(args.scale), 0j)
    reports = []
    for params in param_sets:
        key = _cache_key(family, params, args.n, args.tol)
        cached = _cache_lookup(args.cache, key) if args.cache else None
        if cached is not None:
            reports.append(cached)
            continue
        rep = cap_family(
            family,
            params,
            n=args.n,
            tol=args.tol,
            maxit=args.maxit,
            compare_oracle=args.compare_oracle,
            transform=transform,
        )
        _cache_store(args.cache, key, rep)
        reports.append(rep)
    _emit_reports(reports, args.format, args.output)
    return EXIT_OK


def _run_caph_cape(args, elliptic: bool) -> int:
    t0 = time.perf_counter()
    n = args.n
    shape_name = args.shape
    if shape_name == "disk":
        r = args.r
        if elliptic:
            value = cape(circle(0.0, r), n=n)
        else:
            value = caph(circle(0.0, r), n=n, alpha=(1.0 + r) / 2.0, z2=0.0)
        params = {"shape": "disk", "r": r}
    elif shape_name == "square":
        r = args.r
        curve = rectangle(-r, r, -r, r)
        value = cape(curve, n=n) if elliptic else caph(curve, n=n, z2=0.0)
        params = {"shape": "square", "r": r}
    elif shape_name == "amoeba":
        if elliptic:
            value = cape(amoeba(), n=n, z1=0.25 + 0.5j)
        else:
            value = caph(amoeba(), n=n, alpha=0.0, z2=0.25 + 0.5j)
        params = {"shape": "amoeba"}
    elif shape_name == "interval":
        r = args.r
        value = cape_interval(r, n=n) if elliptic else caph_interval(r, n=n)
        params = {"shape": "interval", "r": r}
    else:
        raise ArgumentError(f"unknown shape {shape_name!r}")
    label = "cape" if elliptic else "caph"
    rep = CapacityReport(
        value=value,
        q=value**2 if elliptic else value,
        family=label,
        params=params,
        n=n,
        iterations=0,
        residual=0.0,
        runtime_ms=1000.0 * (time.perf_counter() - t0),
    )
    _emit_reports([rep], args.format, args.output)
    return EXIT_OK


def _run_map(args) -> int:
    t0 = time.perf_counter()
    with open(args.geometry) as fh:
        data = json.load(fh)
    dom = domain_from_dict(data)
    amap = annq(dom, n=args.n, tol=args.tol, maxit=args.maxit)
    rep = CapacityReport(
        value=amap.capacity,
        q=amap.q,
        family="custom",
        params={"geometry": os.path.basename(args.geometry)},
        n=args.n,
        iterations=amap.solution.iterations,
        residual=amap.solution.residual,
        runtime_ms=1000.0 * (time.perf_counter() - t0),
    )
    _emit_reports([rep], args.format, args.output)
    return EXIT_OK


def _run_oracle(args) -> int:
    family = _family_from_cli(args.family)
    if family not in ORACLE_FLAGS:
        raise ArgumentError(f"no oracle registered for family {args.family!r}")
    param_sets = _params_from_args(family, args, ORACLE_FLAGS[family])
    values = []
    for params in param_sets:
        try:
            values.append(exact_oracle(family, params))
        except NoOracleError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    for v in values:
        print(repr(v))
    return EXIT_OK


_TABLES = {
    # square-in-square sweep over the side ratio
    "hrv1": ("square_in_square", [{"a": round(0.1 * k, 1)} for k in range(1, 10)], 4096),
    # polygon-in-polygon over the vertex count
    "bsv1": ("polygon_in_polygon", [{"m": m} for m in (3, 4, 5, 7, 9, 15, 30)], None),
    "seg-cir": (
        "segment_circle",
        [
            {"r": 0.1, "a": 1.2},
            {"r": 0.1, "a": 2.2},
            {"r": 0.1, "a": 5.2},
            {"r": 1.0, "a": 2.1},
            {"r": 3.0, "a": 4.1},
            {"r": 5.0, "a": 6.1},
        ],
        2048,
    ),
    "two-rec": ("rect_pair", [{"d": d} for d in (0.4, 0.3, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005)], 4096),
    "rec-half": ("rect_halfplane_vertical", [{"d": d} for d in (0.4, 0.3, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005)], 4096),
    "rec-half-h": ("rect_halfplane_horizontal", [{"d": d} for d in (0.4, 0.3, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005)], 4096),
    "rec-strip": ("rect_strip", [{"d": d} for d in (0.4, 0.3, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005)], 4096),
    "strip-seg": ("strip_slit", [{"a": 0j, "b": complex(s)} for s in (0.1, 0.5, 1.0, 2.0, 3.0, 5.0)], 2048),
}


def _run_table(args) -> int:
    try:
        family, rows, n_default = _TABLES[args.name]
    except KeyError:
        raise ArgumentError(f"unknown table {args.name!r}; choose from {sorted(_TABLES)}") from None
    n = args.n or n_default
    reports = []
    for params in rows:
        reports.append(
            cap_family(family, params, n=n, tol=args.tol, maxit=args.maxit, compare_oracle=True)
        )
    _emit_reports(reports, args.format, args.output)
    return EXIT_OK


def _contour_cell(z1: complex, x: float, y: float, n: int, eps: float):
    z2 = complex(x, y)
    if z2 == z1 or max(abs(z2.imag), abs(z1.imag)) >= 0.5 * np.pi:
        return float("nan")
    try:
        rep = cap_family("strip_slit", {"a": z1, "b": z2}, n=n, preimage_eps=eps)
        return rep.value
    except RingcapError:
        return float("nan")


def _run_contour(args) -> int:
    z1 = _parse_complex(args.z1)
    if abs(z1.imag) >= 0.5 * np.pi:
        raise GeometryError("z1 must lie strictly inside the strip |Im z| < pi/2")
    xs = np.linspace(args.xmin, args.xmax, args.nx)
    ys = np.linspace(args.ymin, args.ymax, args.ny)
    cells = [(x, y) for y in ys for x in xs]
    workers = max(1, args.workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        values = list(pool.map(lambda c: _contour_cell(z1, c[0], c[1], args.n, args.eps), cells))
    lines = ["x,y,capacity"]
    for (x, y), v in zip(cells, values):
        lines.append(f"{x!r},{y!r},{'nan' if np.isnan(v) else repr(v)}")
    text = "\n".join(lines)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _add_common(p, n_default=None):
    p.add_argument("--n", type=int, default=n_default, help="nodes per boundary component")
    p.add_argument("--tol", type=float, default=1e-14, help="linear solver tolerance")
    p.add_argument("--maxit", type=int, default=100, help="linear solver iteration cap")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> _Parser:
    parser = _Parser(prog="ringcap", description="Conformal capacity of ring domains")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cap = sub.add_parser("cap", help="capacity of a geometry family")
    p_cap.add_argument("family", help="family name, e.g. two-circles or square-in-square")
    for flag in ("a", "r", "r1", "r2", "c", "d", "q", "s"):
        p_cap.add_argument(f"--{flag}")
    p_cap.add_argument("--m")
    p_cap.add_argument("--za", help="slit endpoint as 'x,y'")
    p_cap.add_argument("--zb", help="slit endpoint as 'x,y'")
    p_cap.add_argument("--scale", type=float, help="apply a similarity scale before solving")
    p_cap.add_argument("--compare-oracle", action="store_true")
    p_cap.add_argument("--cache", help="append-only result cache (CSV)")
    _add_common(p_cap)

    for label in ("caph", "cape"):
        p_h = sub.add_parser(label, help=f"{label} of a compact set")
        p_h.add_argument("shape", choices=("disk", "square", "amoeba", "interval"))
        p_h.add_argument("--r", type=float, default=0.5)
        _add_common(p_h, n_default=1024)

    p_map = sub.add_parser("map", help="capacity of a geometry JSON file")
    p_map.add_argument("geometry", help="path to the geometry JSON")
    _add_common(p_map, n_default=1024)

    p_orc = sub.add_parser("oracle", help="closed-form capacity values")
    p_orc.add_argument("family")
    for flag in ("a", "r", "r1", "r2", "c", "d", "q", "s"):
        p_orc.add_argument(f"--{flag}")
    p_orc.add_argument("--m")

    p_tab = sub.add_parser("table", help="reproduce a named result table")
    p_tab.add_argument("name")
    _add_common(p_tab)

    p_cnt = sub.add_parser("contour", help="strip-slit capacity grid (CSV)")
    p_cnt.add_argument("--z1", required=True, help="fixed endpoint as 'x,y'")
    p_cnt.add_argument("--xmin", type=float, required=True)
    p_cnt.add_argument("--xmax", type=float, required=True)
    p_cnt.add_argument("--ymin", type=float, required=True)
    p_cnt.add_argument("--ymax", type=float, required=True)
    p_cnt.add_argument("--nx", type=int, required=True)
    p_cnt.add_argument("--ny", type=int, required=True)
    p_cnt.add_argument("--eps", type=float, default=1e-11, help="preimage iteration target")
    p_cnt.add_argument("--workers", type=int, default=1)
    p_cnt.add_argument("--n", type=int, default=1024)
    p_cnt.add_argument("--output")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "cap": _run_cap,
        "caph": lambda a: _run_caph_cape(a, elliptic=False),
        "cape": lambda a: _run_caph_cape(a, elliptic=True),
        "map": _run_map,
        "oracle": _run_oracle,
        "table": _run_table,
        "contour": _run_contour,
    }
    try:
        return handlers[args.command](args)
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except GeometryError as exc:
        print(f"geometry error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except (ArgumentError, NoOracleError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
