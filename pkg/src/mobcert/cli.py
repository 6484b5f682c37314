"""Command line interface.

Subcommands: certify, region, scan, compare-lambda, cusps, burau-annulus.
Complex flags accept RE+IMi notation ("1.5-0.25i"; "j" works too), orders
accept integers or "inf".  Exit codes: 0 success, 2 argument/parse errors
(argparse), 3 unsupported or invalid parameter combinations.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .burau import annulus_report, faithful_certificate, mu_coordinates
from .certificates import cert_combined
from .farey import FAREY_WORDS, SLOPES, cusp_residue, solve_cusp
from .kernels import BACKENDS
from .lambda_region import lambda_from_rho
from .mobius import (
    GroupSpec,
    InvalidInputError,
    PreconditionError,
    UnsupportedError,
    gamma_of,
    symmetry_image,
)
from .render import (
    compare_lambda_csv,
    compare_lambda_data,
    compare_lambda_svg,
    region_json,
    region_svg,
    scan_csv,
    scan_pgm,
    scan_svg,
)
from .scan import MODES, PartialScanError, ScanJob, Window, run_scan


def _complex_arg(text: str) -> complex:
    cleaned = text.strip().replace(" ", "").replace("i", "j").replace("I", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from None


def _order_arg(text: str):
    if text.strip().lower() in {"inf", "infinity", "oo"}:
        return math.inf
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"order must be an integer or 'inf', got {text!r}") from None


def _window_arg(text: str) -> Window:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("window must be re_min,re_max,im_min,im_max")
    try:
        a, b, c, d = (float(v) for v in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse window {text!r}") from None
    try:
        return Window(a, b, c, d)
    except InvalidInputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pair(z: complex | None):
    if z is None:
        return None
    z = complex(z)
    return [z.real, z.imag]


def _emit(payload, out_path: str | None) -> None:
    data = payload.encode("utf-8") if isinstance(payload, str) else payload
    if out_path is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        with open(out_path, "wb") as fh:
            fh.write(data)


def _json_line(doc) -> str:
    return json.dumps(doc, allow_nan=True) + "\n"


def cmd_certify(args) -> int:
    lines = []
    if args.burau:
        if not args.mu:
            raise InvalidInputError("certify --burau needs at least one --mu")
        for mu in args.mu:
            cert = faithful_certificate(mu)
            pt = None
            if abs(mu) > 0:
                pt = mu_coordinates(mu)
            doc = {
                "input": {"mu": _pair(mu)},
                "verdict": cert.verdict,
                "witness": cert.witness,
                "slack": cert.slack,
                "z": _pair(pt.z if pt else None),
                "rho": _pair(pt.rho if pt else None),
                "lambda_branches": [_pair(pt.lam), _pair(pt.lam_other)] if pt else None,
            }
            lines.append(_json_line(doc))
    else:
        if args.p is None or args.q is None or not args.rho:
            raise InvalidInputError("certify needs --p, --q and at least one --rho")
        for rho in args.rho:
            spec = GroupSpec(args.p, args.q, rho)
            cert = cert_combined(spec, search=not args.no_search)
            finite = args.p != math.inf and args.q != math.inf
            branches = None
            if finite and not (args.p == 2 and args.q == 2):
                branches = [_pair(b) for b in lambda_from_rho(spec)]
            doc = {
                "input": {"p": str(args.p) if args.p == math.inf else args.p,
                          "q": str(args.q) if args.q == math.inf else args.q,
                          "rho": _pair(rho)},
                "verdict": cert.verdict,
                "witness": cert.witness,
                "slack": cert.slack,
                "gamma": _pair(gamma_of(spec)),
                "symmetry_image": _pair(symmetry_image(spec)) if finite else None,
                "lambda_branches": branches,
            }
            lines.append(_json_line(doc))
    _emit("".join(lines), args.out)
    return 0


def cmd_region(args) -> int:
    payload = region_json(args.p, args.q) if args.format == "json" else region_svg(args.p, args.q)
    _emit(payload, args.out)
    return 0


def cmd_scan(args) -> int:
    job = ScanJob(p=args.p, q=args.q, window=args.window, resolution=args.res, mode=args.mode)
    try:
        result = run_scan(job, backend=args.backend, workers=args.workers)
    except PartialScanError as exc:
        print(f"error: {exc} (completed_rows={exc.completed_rows})", file=sys.stderr)
        return 1
    csv_path = args.out + ".csv"
    raster_path = args.out + "." + args.format
    with open(csv_path, "wb") as fh:
        fh.write(scan_csv(result))
    raster = scan_svg(result).encode("utf-8") if args.format == "svg" else scan_pgm(result)
    with open(raster_path, "wb") as fh:
        fh.write(raster)
    print(_json_line({"csv": csv_path, "raster": raster_path, "metadata": result.metadata}), end="")
    return 0


def cmd_compare_lambda(args) -> int:
    rows = compare_lambda_data(args.p, args.q, args.angles)
    if args.format == "csv":
        _emit(compare_lambda_csv(rows), args.out)
    elif args.format == "json":
        _emit(_json_line({"p": args.p, "q": args.q, "rows": rows}), args.out)
    else:
        _emit(compare_lambda_svg(args.p, args.q, rows), args.out)
    return 0


def cmd_cusps(args) -> int:
    from .omega import boundary_cusps

    doc = {
        "p": args.p,
        "q": args.q,
        "boundary_cusps": [_pair(z) for z in boundary_cusps(args.p, args.q)],
        "slopes": {},
    }
    for slope in SLOPES:
        roots = solve_cusp(slope, args.p, args.q)
        doc["slopes"]["{}/{}".format(*slope)] = {
            "word": FAREY_WORDS[slope],
            "roots": [_pair(z) for z in roots],
            "residues": [cusp_residue(slope, args.p, args.q, z) for z in roots],
        }
    _emit(_json_line(doc), args.out)
    return 0


def cmd_burau_annulus(args) -> int:
    lines = []
    for mu in args.mu:
        rep = annulus_report(mu)
        cert = faithful_certificate(mu)
        doc = {
            "input": {"mu": _pair(mu)},
            "abs_mu": rep.abs_mu,
            "in_proved_annulus": rep.in_proved_annulus,
            "in_conjectured_annulus": rep.in_conjectured_annulus,
            "certified_faithful": rep.certified_faithful,
            "slack": rep.slack,
            "verdict": cert.verdict,
        }
        lines.append(_json_line(doc))
    _emit("".join(lines), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mobcert",
        description="Certified discreteness for two-generator Mobius groups.",
    )
    parser.add_argument("--version", action="version", version=f"mobcert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    cert = sub.add_parser("certify", help="run the combined certificate on a marked pair")
    cert.add_argument("--p", type=_order_arg)
    cert.add_argument("--q", type=_order_arg)
    cert.add_argument("--rho", type=_complex_arg, action="append", default=[])
    cert.add_argument("--burau", action="store_true", help="certify Burau faithfulness instead")
    cert.add_argument("--mu", type=_complex_arg, action="append", default=[])
    cert.add_argument("--no-search", action="store_true", help="skip the anchor search step")
    cert.add_argument("--out")
    cert.set_defaults(func=cmd_certify)

    region = sub.add_parser("region", help="emit the Omega figure for (p, q)")
    region.add_argument("--p", type=int, required=True)
    region.add_argument("--q", type=int, required=True)
    region.add_argument("--format", choices=("svg", "json"), default="svg")
    region.add_argument("--out")
    region.set_defaults(func=cmd_region)

    scan = sub.add_parser("scan", help="scan certificate codes over a window")
    scan.add_argument("--p", type=_order_arg, required=True)
    scan.add_argument("--q", type=_order_arg, required=True)
    scan.add_argument("--window", type=_window_arg, required=True)
    scan.add_argument("--res", type=int, required=True)
    scan.add_argument("--mode", choices=MODES, default="combined")
    scan.add_argument("--out", required=True, help="output base path (suffixes are appended)")
    scan.add_argument("--format", choices=("svg", "pgm"), default="svg")
    scan.add_argument("--workers", type=int, default=1)
    scan.add_argument("--backend", choices=BACKENDS, default=None)
    scan.set_defaults(func=cmd_scan)

    cmp_ = sub.add_parser("compare-lambda", help="disk vs lambda certificate comparison")
    cmp_.add_argument("--p", type=int, required=True)
    cmp_.add_argument("--q", type=int, required=True)
    cmp_.add_argument("--angles", type=int, default=360)
    cmp_.add_argument("--format", choices=("svg", "csv", "json"), default="svg")
    cmp_.add_argument("--out")
    cmp_.set_defaults(func=cmd_compare_lambda)

    cusps = sub.add_parser("cusps", help="Farey cusps on the Omega boundary")
    cusps.add_argument("--p", type=int, required=True)
    cusps.add_argument("--q", type=int, required=True)
    cusps.add_argument("--out")
    cusps.set_defaults(func=cmd_cusps)

    bur = sub.add_parser("burau-annulus", help="Burau faithfulness/annulus report")
    bur.add_argument("--mu", type=_complex_arg, action="append", required=True)
    bur.add_argument("--out")
    bur.set_defaults(func=cmd_burau_annulus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UnsupportedError, InvalidInputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
