"""Command-line entry point: ``polyifs <subcommand> --n N --r R --phi P/Q|FLOAT``.

Angles containing '/' are exact rationals; anything else is a float and
switches tie detection to tolerance mode.  Exit status: 0 success, 1 domain
error, 2 usage error or failed verification.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .core import DEFAULT_BUDGET, IfsParams, default_depth, enumerate_cloud, format_angle, parse_angle
from .errors import InvalidParamsError, PolyIfsError, RationalRequiredError
from .extreme import DEFAULT_POINT_CAP, DEFAULT_TIE_TOLERANCE, SupportQuery, extreme_points, support_value
from .oracle import verify
from .rational import (
    RationalIfsParams,
    convexity_necessary,
    face_is_interval,
    hull_polygon,
    theta_set,
)
from .render import render_constellations, render_limit_set

NON_SUFFICIENCY = (
    "note: this bound is necessary, not sufficient; faces can all be intervals "
    "while the limit set still has holes (e.g. the Sierpinski triangle, n=3, r=1/2)"
)


def _add_params(p, rational_only=False):
    p.add_argument("--n", type=int, required=True, help="number of maps (>= 2)")
    p.add_argument("--r", type=float, required=True, help="modulus of c, 0 < r < 1")
    p.add_argument(
        "--phi",
        required=True,
        help="argument of c in turns; 'p/q' is exact" + ("" if rational_only else ", a decimal is float mode"),
    )


def _add_format(p, csv_ok=True):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="machine-readable JSON output")
    if csv_ok:
        g.add_argument("--csv", action="store_true", help="CSV output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyifs",
        description="Limit sets, extreme points and convex hulls of z -> c z + xi^j.",
        epilog=f"POLYIFS_BUDGET overrides the point budget (default {DEFAULT_BUDGET}).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("points", help="enumerate the depth-m point cloud")
    _add_params(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--out", help="write to this file instead of stdout")
    _add_format(p)

    p = sub.add_parser("extreme", help="extreme words and points at a support angle")
    _add_params(p)
    p.add_argument("--theta", required=True, help="support angle in turns, p/q or float")
    p.add_argument("--depth", type=int, help="steps to scan (default: tail bound < 1e-9)")
    p.add_argument("--cap", type=int, default=DEFAULT_POINT_CAP, help="max points evaluated (default %(default)s)")
    p.add_argument("--tol", type=float, default=DEFAULT_TIE_TOLERANCE,
                   help="float-mode tie tolerance (default %(default)s)")
    _add_format(p, csv_ok=False)

    p = sub.add_parser("theta", help="list the face angles (rational phi)")
    _add_params(p, rational_only=True)
    _add_format(p, csv_ok=False)

    p = sub.add_parser("hull", help="exact convex-hull polygon (rational phi)")
    _add_params(p, rational_only=True)
    _add_format(p)

    p = sub.add_parser("check-convex", help="necessary convexity bound (rational phi)")
    _add_params(p, rational_only=True)
    _add_format(p, csv_ok=False)

    p = sub.add_parser("verify", help="cross-check against a brute-force cloud")
    _add_params(p)
    p.add_argument("--depth", type=int, required=True, help="cloud depth")
    p.add_argument("--grid", type=int, default=360, help="uniform angle samples (default %(default)s)")
    _add_format(p, csv_ok=False)

    p = sub.add_parser("render", help="write an SVG figure")
    _add_params(p)
    p.add_argument("--out", required=True, help="output .svg path")
    p.add_argument("--depth", type=int, default=7, help="cloud depth (default %(default)s)")
    p.add_argument("--hull", action="store_true", help="overlay the hull polygon (rational phi)")
    p.add_argument("--support-lines", action="store_true", help="draw supporting lines")
    p.add_argument("--constellations", metavar="K0..K1",
                   help="render constellation panels for steps K0..K1 instead of the cloud")
    p.add_argument("--theta", action="append",
                   help="support angle (repeatable); highlights choices in constellation mode")

    p = sub.add_parser("scan", help="CSV table of hull structure over an r grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r-range", required=True, metavar="A:B:STEP", help="inclusive r grid")
    p.add_argument("--phi-list", required=True, help="comma-separated p/q angles")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default %(default)s)")
    return parser


def _params(args) -> IfsParams:
    return IfsParams.parse(args.n, args.r, args.phi)


def _rational(args) -> RationalIfsParams:
    params = _params(args)
    if not params.exact:
        raise RationalRequiredError(f"'{args.command}'")
    return RationalIfsParams.from_params(params)


def _emit(text, out=None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_points(args):
    cloud = enumerate_cloud(_params(args), args.depth)
    if args.csv:
        _emit(cloud.to_csv(), args.out)
    elif args.json:
        _emit(cloud.to_json() + "\n", args.out)
    else:
        lines = [f"{len(cloud)} points, depth {cloud.depth}, tail bound {cloud.tail_bound:.6g}"]
        lines += [f"{z.real:.17g} {z.imag:.17g}" for z in cloud.points[:10].tolist()]
        if len(cloud) > 10:
            lines.append("...")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_extreme(args):
    params = _params(args)
    query = SupportQuery(parse_angle(args.theta), args.tol)
    depth = args.depth if args.depth is not None else default_depth(params)
    ep = extreme_points(params, query, depth, cap=args.cap)
    sv = support_value(params, query, depth)
    d = ep.to_dict()
    d.update(support_value=sv.value, error_bar=sv.error_bar, depth=depth)
    if args.json:
        print(json.dumps(d))
    else:
        print(f"theta={format_angle(ep.theta)} classification={ep.classification}")
        print(f"support value {sv.value:.15g} +/- {sv.error_bar:.3g} (depth {depth})")
        ties = ep.pair_positions
        print(f"tie steps: {ties[:20]}{' ...' if len(ties) > 20 else ''}")
        for z in ep.points:
            print(f"  {z.real:.15g} {z.imag:+.15g}i")
        if ep.truncated:
            print(f"  (truncated at {args.cap} points)")
    return 0


def cmd_theta(args):
    thetas = theta_set(_rational(args))
    if args.json:
        print(json.dumps([format_angle(t) for t in thetas]))
    else:
        for t in thetas:
            print(format_angle(t))
    return 0


def cmd_hull(args):
    poly = hull_polygon(_rational(args))
    if args.json:
        print(json.dumps(poly.to_dict()))
    elif args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re", "im"])
        for z in poly.vertices:
            w.writerow([f"{z.real:.17g}", f"{z.imag:.17g}"])
        sys.stdout.write(buf.getvalue())
    else:
        rp = poly.params
        print(f"b={rp.b} a={rp.a} faces={len(poly.faces)} lambda={rp.r ** rp.b:.6g}"
              f" {'interval' if face_is_interval(rp) else 'cantor'} faces"
              f"{' (degenerate)' if poly.degenerate else ''}")
        for f in poly.faces:
            print(f"theta={format_angle(f.theta)}  [{f.endpoint_lo:.9f}, {f.endpoint_hi:.9f}]")
    return 0


def cmd_check_convex(args):
    rp = _rational(args)
    res = convexity_necessary(rp)
    res.update(b=rp.b, face_is_interval=face_is_interval(rp), note=NON_SUFFICIENCY)
    if args.json:
        print(json.dumps(res))
    else:
        verdict = "satisfied" if res["satisfied"] else "NOT satisfied (limit set is not convex)"
        print(f"b={rp.b} bound 2^(-1/b)={res['bound']:.12g} r={rp.r}: {verdict}")
        print(NON_SUFFICIENCY)
    return 0


def cmd_verify(args):
    report = verify(_params(args), args.depth, grid=args.grid)
    print(json.dumps(report.to_dict()) if args.json else report.summary())
    return 0 if report.passed else 2


def _parse_k_range(text):
    a, sep, b = text.partition("..")
    if not sep:
        raise InvalidParamsError(f"--constellations expects K0..K1, got {text!r}")
    return range(int(a), int(b) + 1)


def cmd_render(args):
    params = _params(args)
    thetas = [parse_angle(t) for t in args.theta] if args.theta else None
    if args.constellations:
        svg = render_constellations(params, _parse_k_range(args.constellations),
                                    theta=thetas[0] if thetas else None)
    else:
        if args.hull and not params.exact:
            raise RationalRequiredError("--hull")
        svg = render_limit_set(params, args.depth, hull=args.hull,
                               support_lines=args.support_lines, thetas=thetas)
    _emit(svg, args.out)
    return 0


def scan_row(n, r, phi):
    rp = RationalIfsParams.from_params(IfsParams(n, r, phi))
    conv = convexity_necessary(rp)
    return (r, format_angle(phi), rp.b, rp.face_count,
            "interval" if face_is_interval(rp) else "cantor", conv["bound"], conv["satisfied"])


def r_grid(text: str) -> list:
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise InvalidParamsError(f"--r-range expects A:B:STEP, got {text!r}") from None
    if step <= 0 or b < a:
        raise InvalidParamsError("--r-range needs STEP > 0 and A <= B")
    count = int((b - a) / step + 1e-9) + 1
    return [round(a + i * step, 12) for i in range(count)]


def cmd_scan(args):
    phis = [parse_angle(s) for s in args.phi_list.split(",") if s.strip()]
    if not all(isinstance(p, Fraction) for p in phis):
        raise RationalRequiredError("'scan'")
    grid = [(args.n, r, phi) for r in r_grid(args.r_range) for phi in phis]
    for _, r, _ in grid:
        IfsParams(args.n, r, 0)  # validate up front
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(scan_row, *zip(*grid)))
    else:
        rows = [scan_row(*g) for g in grid]
    rows.sort(key=lambda row: (row[0], Fraction(row[1])))
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["r", "phi", "b", "nb", "face_type", "convexity_bound", "satisfied"])
    for r, phi, b, nb, kind, bound, ok in rows:
        w.writerow([f"{r:.12g}", phi, b, nb, kind, f"{bound:.12g}", str(ok).lower()])
    return 0


COMMANDS = {
    "points": cmd_points,
    "extreme": cmd_extreme,
    "theta": cmd_theta,
    "hull": cmd_hull,
    "check-convex": cmd_check_convex,
    "verify": cmd_verify,
    "render": cmd_render,
    "scan": cmd_scan,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvalidParamsError as exc:
        parser.error(str(exc))
    except PolyIfsError as exc:
        print(f"polyifs: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
