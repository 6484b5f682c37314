"""Deterministic figure and file emission.

All output here is a pure function of its inputs: fixed coordinate scale
(1 unit = 60 px, y pointing up via an explicit flip), fixed colors (region
fill #cccccc, exclusion disks #d33 at 40% opacity), fixed float formatting
(12 significant digits in CSV, '.' decimal separator, '\\n' line endings).
Running the same job twice, or with different worker counts, produces
byte-identical files.
"""

from __future__ import annotations

import cmath
import json
import math

import numpy as np

from .certificates import disk_centers_elliptic
from .lambda_region import lambda_from_rho_array, lambda_slack_array, rho_boundary
from .mobius import EPS_ALG, InvalidInputError, sigma_pq
from .omega import OmegaRegion, boundary_cusps, build_omega, rho_star, x_pq
from .scan import ScanResult

SCALE = 60.0  # px per unit
REGION_FILL = "#cccccc"
DISK_FILL = "#d33"
DISK_OPACITY = 0.4

#: Scan palette, one fixed color per certificate code.
PALETTE = {
    0: "#ffffff",
    1: "#9ecae1",
    2: "#4292c6",
    3: "#41ab5d",
    4: "#fd8d3c",
    5: "#807dba",
}


def _fmt(v: float) -> str:
    """Fixed 3-decimal pixel coordinate (enough for byte-stable SVG)."""
    out = f"{float(v):.3f}"
    return "0.000" if out == "-0.000" else out


def _g12(v: float) -> str:
    """12-significant-digit decimal used by all CSV writers."""
    return f"{float(v):.12g}"


class _Frame:
    """Maps complex plane coordinates to a y-flipped pixel frame."""

    def __init__(self, x_min, x_max, y_min, y_max, pad=0.5):
        self.x_min = x_min - pad
        self.x_max = x_max + pad
        self.y_min = y_min - pad
        self.y_max = y_max + pad
        self.width = (self.x_max - self.x_min) * SCALE
        self.height = (self.y_max - self.y_min) * SCALE

    def to_px(self, z: complex) -> tuple[float, float]:
        return ((z.real - self.x_min) * SCALE, (self.y_max - z.imag) * SCALE)

    def header(self) -> str:
        w, h = _fmt(self.width), _fmt(self.height)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
            f'viewBox="0 0 {w} {h}">'
        )


def _intersect(l1, l2) -> complex | None:
    d1, d2 = l1.direction, l2.direction
    cross = d1.real * d2.imag - d1.imag * d2.real
    if abs(cross) < 1e-12:
        return None
    w = l2.point - l1.point
    t = (w.real * d2.imag - w.imag * d2.real) / cross
    return l1.point + t * d1


def region_polygon(region: OmegaRegion) -> list[complex]:
    """Vertices of the convex region Omega, in counterclockwise order."""
    lines = region.lines
    pts: list[complex] = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            z = _intersect(lines[i], lines[j])
            if z is None:
                continue
            if all(ln.margin(z) >= -1e-9 for ln in lines):
                if not any(abs(z - w) < 1e-9 for w in pts):
                    pts.append(z)
    center = sum(pts) / len(pts)
    pts.sort(key=lambda z: math.atan2((z - center).imag, (z - center).real))
    return pts


def _clip_line(line, frame: _Frame) -> tuple[complex, complex] | None:
    """Liang-Barsky clip of an infinite line against the frame rectangle."""
    p, d = line.point, line.direction
    t_lo, t_hi = -math.inf, math.inf
    for num, den in (
        (frame.x_min - p.real, d.real),
        (p.real - frame.x_max, -d.real),
        (frame.y_min - p.imag, d.imag),
        (p.imag - frame.y_max, -d.imag),
    ):
        if abs(den) < 1e-15:
            if num > 0:
                return None
            continue
        t = num / den
        if den > 0:
            t_lo = max(t_lo, t)
        else:
            t_hi = min(t_hi, t)
    if t_lo >= t_hi:
        return None
    return p + t_lo * d, p + t_hi * d


def _svg_circle(frame, center, r_units, fill, opacity=None, stroke=None) -> str:
    cx, cy = frame.to_px(center)
    bits = [
        f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r_units * SCALE)}"',
        f' fill="{fill}"',
    ]
    if opacity is not None:
        bits.append(f' fill-opacity="{opacity}"')
    if stroke is not None:
        bits.append(f' stroke="{stroke}"')
    bits.append("/>")
    return "".join(bits)


def region_svg(p, q) -> str:
    """The Omega figure: region fill, Omega sides, disks, cusps, markers.

    Contains exactly one <line> element per side of Omega (six when p = q).
    The four disks drawn are the exclusion disks of the (p, q) marking in
    the order given, so (3, 7) and (7, 3) share Omega but differ in disks.
    """
    region = build_omega(p, q)
    poly = region_polygon(region)
    disks = disk_centers_elliptic(p, q)
    cusps = boundary_cusps(p, q)
    rs = rho_star(p, q)
    x0 = x_pq(p, q)

    xs = [z.real for z in poly] + [c.real + s for c in disks for s in (-2, 2)] + [x0]
    ys = [z.imag for z in poly] + [c.imag + s for c in disks for s in (-2, 2)]
    frame = _Frame(min(xs), max(xs), min(ys), max(ys))

    out = [frame.header()]
    out.append(
        f'<rect x="0" y="0" width="{_fmt(frame.width)}" height="{_fmt(frame.height)}" fill="#ffffff"/>'
    )
    pts = " ".join("{},{}".format(*map(_fmt, frame.to_px(z))) for z in poly)
    out.append(f'<polygon points="{pts}" fill="{REGION_FILL}"/>')
    for c in disks:
        out.append(_svg_circle(frame, c, 2.0, DISK_FILL, opacity=DISK_OPACITY))
    for ln in region.lines:
        seg = _clip_line(ln, frame)
        if seg is None:  # pragma: no cover - every Omega side crosses the frame
            continue
        (x1, y1), (x2, y2) = frame.to_px(seg[0]), frame.to_px(seg[1])
        out.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="#333333" stroke-width="1.5"/>'
        )
    for z in cusps:
        out.append(_svg_circle(frame, z, 0.07, "#000000"))
    out.append(_svg_circle(frame, rs, 0.07, "#b8860b"))
    out.append(_svg_circle(frame, complex(x0, 0.0), 0.07, "#006400"))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def region_json(p, q) -> str:
    """The Omega figure as data, matching the documented schema."""
    region = build_omega(p, q)
    rs = rho_star(p, q)
    doc = {
        "p": int(p),
        "q": int(q),
        "omega": {
            "lines": [
                {
                    "point": [ln.point.real, ln.point.imag],
                    "dir": [ln.direction.real, ln.direction.imag],
                    "side": ln.side,
                }
                for ln in region.lines
            ]
        },
        "disks": [{"center": [c.real, c.imag], "r": 2.0} for c in disk_centers_elliptic(p, q)],
        "cusps": [[z.real, z.imag] for z in boundary_cusps(p, q)],
        "rho_star": [rs.real, rs.imag],
        "x_pq": x_pq(p, q),
    }
    return json.dumps(doc, indent=2) + "\n"


def scan_csv(result: ScanResult) -> bytes:
    """Rows x,y,code with 12-significant-digit coordinates."""
    meta = result.metadata
    re_min, re_max, im_min, im_max = meta["window"]
    res = meta["resolution"]
    w = (re_max - re_min) / res
    h = (im_max - im_min) / res
    lines = ["x,y,code"]
    for i in range(res):
        y = im_min + (i + 0.5) * h
        ys = _g12(y)
        row = result.codes[i]
        for j in range(res):
            x = re_min + (j + 0.5) * w
            lines.append(f"{_g12(x)},{ys},{int(row[j])}")
    return ("\n".join(lines) + "\n").encode("ascii")


def scan_svg(result: ScanResult) -> str:
    """Run-length encoded raster of the code grid (code 0 left white)."""
    meta = result.metadata
    re_min, re_max, im_min, im_max = meta["window"]
    res = meta["resolution"]
    pw = (re_max - re_min) * SCALE / res
    ph = (im_max - im_min) * SCALE / res
    width = pw * res
    height = ph * res
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="#ffffff"/>',
    ]
    for i in range(res):
        top = (res - 1 - i) * ph
        row = result.codes[i]
        j = 0
        while j < res:
            code = int(row[j])
            k = j
            while k < res and int(row[k]) == code:
                k += 1
            if code != 0:
                out.append(
                    f'<rect x="{_fmt(j * pw)}" y="{_fmt(top)}" width="{_fmt((k - j) * pw)}" '
                    f'height="{_fmt(ph)}" fill="{PALETTE.get(code, "#000000")}"/>'
                )
            j = k
    out.append("</svg>")
    return "\n".join(out) + "\n"


def scan_pgm(result: ScanResult) -> bytes:
    """Plain (P2) PGM of the code grid, top row first, maxval 5."""
    res = result.metadata["resolution"]
    lines = ["P2", f"{res} {res}", "5"]
    for i in range(res - 1, -1, -1):
        lines.append(" ".join(str(int(v)) for v in result.codes[i]))
    return ("\n".join(lines) + "\n").encode("ascii")


def _ray_disk_exit(center: complex, phi: float, centers) -> float:
    """Largest t with center + t e^{i phi} inside some radius-2 disk."""
    e = cmath.exp(1j * phi)
    t_max = 0.0
    for c in centers:
        b = ((center - c) * e.conjugate()).real
        disc = b * b - (abs(center - c) ** 2 - 4.0)
        if disc <= 0.0:
            continue
        t_max = max(t_max, -b + math.sqrt(disc))
    return t_max


def _ray_lambda_exit(p, q, center: complex, phi: float, t_hi: float) -> float:
    """Largest t with center + t e^{i phi} failing the lambda inequalities."""
    e = cmath.exp(1j * phi)

    def feasible(ts: np.ndarray) -> np.ndarray:
        z = center + ts * e
        return lambda_slack_array(p, q, lambda_from_rho_array(p, q, z)) >= -EPS_ALG

    ts = np.linspace(0.0, t_hi, 1025)
    ok = feasible(ts)
    bad = np.nonzero(~ok)[0]
    if bad.size == 0:
        return 0.0
    lo = ts[bad[-1]]
    hi = t_hi if bad[-1] + 1 >= ts.size else ts[bad[-1] + 1]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if feasible(np.array([mid]))[0]:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def compare_lambda_data(p, q, n: int = 360) -> list[dict]:
    """Per-angle comparison of disk and lambda certificates.

    From the symmetry center sigma/2, each ray at angle theta exits the
    disk-uncertified set at t_disks and the lambda-uncertified set at
    t_lambda; the smaller exit wins (its certificate reaches closer in).
    """
    if n < 1:
        raise InvalidInputError("need at least one angle")
    center = complex(sigma_pq(p, q) / 2.0, 0.0)
    centers = disk_centers_elliptic(p, q) + disk_centers_elliptic(q, p)
    t_hi = 8.0 + abs(sigma_pq(p, q))
    rows = []
    for k in range(n):
        theta = 2.0 * math.pi * k / n
        t_d = _ray_disk_exit(center, theta, centers)
        t_l = _ray_lambda_exit(p, q, center, theta, t_hi)
        if t_l < t_d - 1e-6:
            winner = "lambda"
        elif t_d < t_l - 1e-6:
            winner = "disks"
        else:
            winner = "tie"
        rows.append({"theta": theta, "t_disks": t_d, "t_lambda": t_l, "winner": winner})
    return rows


def compare_lambda_csv(rows: list[dict]) -> bytes:
    lines = ["theta,t_disks,t_lambda,winner"]
    for r in rows:
        lines.append(f"{_g12(r['theta'])},{_g12(r['t_disks'])},{_g12(r['t_lambda'])},{r['winner']}")
    return ("\n".join(lines) + "\n").encode("ascii")


def compare_lambda_svg(p, q, rows: list[dict] | None = None, n: int = 360) -> str:
    """Overlay of the rho_boundary curves on the exclusion disks."""
    if rows is None:
        rows = compare_lambda_data(p, q, n)
    disks = disk_centers_elliptic(p, q)
    curve_n = 720
    minus_pts = []
    plus_pts = []
    for k in range(curve_n + 1):
        theta = 2.0 * math.pi * k / curve_n
        rm, rp = rho_boundary(p, q, theta)
        minus_pts.append(rm)
        plus_pts.append(rp)
    all_pts = minus_pts + plus_pts + [c + 2 for c in disks] + [c - 2 for c in disks]
    xs = [z.real for z in all_pts] + [c.real for c in disks]
    ys = [z.imag for z in all_pts] + [c.imag + s for c in disks for s in (-2, 2)]
    frame = _Frame(min(xs), max(xs), min(ys), max(ys))

    def polyline(pts, color):
        coords = " ".join("{},{}".format(*map(_fmt, frame.to_px(z))) for z in pts)
        return f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'

    out = [frame.header()]
    out.append(
        f'<rect x="0" y="0" width="{_fmt(frame.width)}" height="{_fmt(frame.height)}" fill="#ffffff"/>'
    )
    for c in disks:
        out.append(_svg_circle(frame, c, 2.0, DISK_FILL, opacity=DISK_OPACITY))
    out.append(polyline(minus_pts, "#1f77b4"))
    out.append(polyline(plus_pts, "#2ca02c"))
    center = complex(sigma_pq(p, q) / 2.0, 0.0)
    win_color = {"lambda": "#2ca02c", "disks": "#d33", "tie": "#999999"}
    for r in rows:
        t = min(r["t_disks"], r["t_lambda"])
        z = center + t * cmath.exp(1j * r["theta"])
        out.append(_svg_circle(frame, z, 0.03, win_color[r["winner"]]))
    out.append("</svg>")
    return "\n".join(out) + "\n"
