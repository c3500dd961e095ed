"""Command line front end.

Subcommands:
  pell --d D                               fundamental Pell solution
  dp6 enumerate|count|lift|alpha|liouville|figures
  toric check|collections|delta|alpha <fan-file>

Exit codes: 0 success, 2 validation error, 1 internal error.
"""

from __future__ import annotations

import argparse
import importlib.resources
import sys
from fractions import Fraction

from . import arith, curves, delpezzo6, figures, metrics, toric


def _parser():
    p = argparse.ArgumentParser(prog="intapprox")
    p.add_argument("--seed", type=int, default=0, help="unused (deterministic)")
    sub = p.add_subparsers(dest="command", required=True)

    pell = sub.add_parser("pell", help="fundamental solution of m^2 - d n^2 = 1")
    pell.add_argument("--d", type=int, required=True)

    dp6 = sub.add_parser("dp6", help="del Pezzo degree-6 surface operations")
    dsub = dp6.add_subparsers(dest="dp6_command", required=True)

    def _common(sp, family=False, bound=True):
        if bound:
            sp.add_argument("--height-bound", type=int, required=True)
        if family:
            sp.add_argument(
                "--family",
                choices=["line1", "line2", "conic", "nodal", "cuspidal"],
                required=True,
            )
            sp.add_argument("--a", type=int, default=1)
            sp.add_argument("--b", type=int, default=1)

    d_enum = dsub.add_parser("enumerate")
    _common(d_enum)
    d_enum.add_argument("--out")
    d_enum.add_argument("--workers", type=int, default=1)
    d_enum.add_argument(
        "--skip-fibers",
        action="store_true",
        help="drop the four fiber lines through the blown-up points",
    )

    d_count = dsub.add_parser("count")
    _common(d_count, family=True)

    d_lift = dsub.add_parser("lift")
    d_lift.add_argument("--modulus", type=int, required=True)
    d_lift.add_argument("--residue", required=True, help="a0,a1,b0,b1")

    d_alpha = dsub.add_parser("alpha")
    _common(d_alpha, family=True)
    d_alpha.add_argument("--noise-floor", type=int, default=30)

    d_liou = dsub.add_parser("liouville")
    _common(d_liou)
    d_liou.add_argument("--workers", type=int, default=1)

    d_fig = dsub.add_parser("figures")
    _common(d_fig)
    d_fig.add_argument("--which", type=int, choices=[1, 2], required=True)
    d_fig.add_argument("--out")
    d_fig.add_argument("--svg")
    d_fig.add_argument("--workers", type=int, default=1)

    tor = sub.add_parser("toric", help="toric fan operations")
    tsub = tor.add_subparsers(dest="toric_command", required=True)
    for name in ("check", "collections", "delta", "alpha"):
        sp = tsub.add_parser(name)
        sp.add_argument("fan_file", help="fan JSON path or a bundled name (p1, p2, ...)")
        if name == "delta":
            sp.add_argument("--collection", type=int, required=True)
        if name == "alpha":
            sp.add_argument("--boundary-ray", type=int, default=None)
            sp.add_argument("--height-bound", type=int, required=True)
    return p


def _load_fan(spec_path):
    try:
        return toric.load_fan(spec_path)
    except FileNotFoundError:
        ref = importlib.resources.files("intapprox") / "fans" / f"{spec_path}.json"
        if ref.is_file():
            return toric.load_fan(str(ref))
        raise


def _dp6_points(args):
    pts = delpezzo6.enumerate_integral(
        args.height_bound,
        include_fiber_lines=not getattr(args, "skip_fibers", False),
        workers=getattr(args, "workers", 1),
    )
    return pts


def _report_estimate(est, extra=""):
    print(
        f"estimate ratio_sup={est.ratio_sup:.4f} "
        f"frontier_slope={est.frontier_slope:.4f} points={est.point_count}{extra}"
    )


def run(args):
    if args.command == "pell":
        sol = arith.pell_fundamental(args.d)
        print(f"{sol.m} {sol.n}")
        return 0

    if args.command == "dp6":
        return _run_dp6(args)
    if args.command == "toric":
        return _run_toric(args)
    raise AssertionError(args.command)


def _run_dp6(args):
    cmd = args.dp6_command
    if cmd == "enumerate":
        pts = _dp6_points(args)
        rows = figures.point_rows(pts, delpezzo6.X_TARGET)
        if args.out:
            figures.write_csv(rows, args.out)
            print(f"{len(rows)} points -> {args.out}")
        else:
            for r in rows:
                print(",".join(str(c) for c in r[:5]))
        return 0

    if cmd == "count":
        fam = delpezzo6.dp6_family(args.family, args.a, args.b)
        n = delpezzo6.count_N(fam, args.height_bound)
        print(f"N({args.family};{args.height_bound}) = {n}")
        return 0

    if cmd == "lift":
        parts = [int(x) for x in args.residue.split(",")]
        if len(parts) != 4:
            raise ValueError("--residue needs a0,a1,b0,b1")
        rc = delpezzo6.ResidueClass(args.modulus, *parts)
        y = delpezzo6.strong_approx_lift(rc)
        print(" ".join(str(c) for c in y.quadruple))
        return 0

    if cmd == "alpha":
        pts = curves.family_integral_points(
            args.family, args.a, args.b, height_bound=args.height_bound
        )
        x = delpezzo6.X_TARGET
        triples = []
        for y in pts:
            d = metrics.dp6_distance(y, x)
            if d > 0:
                triples.append((y, metrics.dp6_height(y), d))
        est = metrics.estimate_alpha(x, triples, noise_floor=args.noise_floor)
        _report_estimate(est, extra=f" family={args.family}")
        return 0

    if cmd == "liouville":
        pts = delpezzo6.enumerate_integral(
            args.height_bound, include_fiber_lines=False, workers=args.workers
        )
        x = delpezzo6.X_TARGET
        recs = []
        off_lines = []
        for y in pts:
            d = metrics.dp6_distance(y, x)
            if 0 < d < Fraction(1, 2):
                h = metrics.dp6_height(y)
                recs.append((h, d))
                if y.s.coords != (1, 1) and y.t.coords != (1, 1):
                    off_lines.append((h, d))
        for label, data, e in (("d*H", recs, 1), ("d^2*H off lines", off_lines, 2)):
            scan = metrics.liouville_scan(data, Fraction(e))
            line = " ".join(f"2^{k}:{float(v):.3f}" for k, v in scan)
            print(f"{label}: {line}")
        return 0

    if cmd == "figures":
        rows = delpezzo6.figure_data(args.height_bound)
        out = args.out or f"figure{args.which}_B{args.height_bound}.csv"
        figures.write_csv(rows, out)
        msg = f"{len(rows)} rows -> {out}"
        if args.svg:
            figures.render_figure(args.which, rows, args.svg)
            msg += f", plot -> {args.svg}"
        print(msg)
        return 0
    raise AssertionError(cmd)


def _run_toric(args):
    fan, ample, boundary = _load_fan(args.fan_file)
    cmd = args.toric_command

    if cmd == "check":
        problems = toric.validate_fan(fan)
        if problems:
            for p in problems:
                print(p)
            return 2
        sigma0 = toric.simplicial_effective_cone(fan)
        print(
            f"valid: {fan.n_rays} rays, {len(fan.max_cones)} maximal cones, "
            f"effective cone {'simplicial ' + str(sigma0) if sigma0 else 'not simplicial'}"
        )
        return 0

    if cmd == "collections":
        central, other = toric.central_primitive_collections(fan)
        for c in central:
            print(f"central: {c}")
        for c in other:
            print(f"non-central: {c}")
        return 0

    if ample is None:
        raise ValueError("fan file has no ample coefficients")
    L = toric.LineBundleData(ample)

    if cmd == "delta":
        central, _ = toric.central_primitive_collections(fan)
        if not 0 <= args.collection < len(central):
            raise ValueError(
                f"collection index out of range (have {len(central)} central)"
            )
        print(f"delta_P{central[args.collection]} = {toric.delta_P(fan, L, central[args.collection])}")
        return 0

    if cmd == "alpha":
        rho = args.boundary_ray
        if rho is None:
            if not boundary:
                raise ValueError("no --boundary-ray and none in the fan file")
            rho = boundary[0]
        x = toric.CoxPoint(
            tuple(0 if i == rho else 1 for i in range(fan.n_rays))
        )
        res = toric.toric_alpha_experiment(fan, L, (rho,), x, args.height_bound)
        _report_estimate(res.estimate, extra=f" delta_P={res.delta}")
        line = " ".join(f"2^{k}:{float(v):.3f}" for k, v in res.scan)
        print(f"d^{res.delta}*H minima: {line}")
        return 0
    raise AssertionError(cmd)


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return run(args)
    except (ValueError, ArithmeticError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # pragma: no cover - internal errors
        print(f"internal error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
