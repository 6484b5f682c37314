"""The exclusion region Omega_{p,q} bounded by twelve oriented lines.

Every rho outside the closed region is certified free and discrete by one
of the concrete certificates; the region is sharp at four cusp groups on
its boundary.  The twelve lines are

  (1) Re z = 2 + 2 cos(pi/p - pi/q) and its reflection in Re z = 2S,
  (2) Im z = +-2 sqrt(1 - S^2),
  (3) the line through rho*_{p,q} and the real point x_{p,q}, its
      conjugate, and the reflections of both in Re z = 2S,
  (4) the same four lines built from the swapped marking (q, p),

with S = sin(pi/p) sin(pi/q).  For p = q the two slant families coincide
and the vertical lines (1) touch the region only at its two real vertices,
leaving the hexagon bounded by 6 lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mobius import (
    EPS_ALG,
    InvalidInputError,
    UnsupportedError,
    pi_over,
    sigma_pq,
    sin_sin,
)


def _require_orders(p, q) -> None:
    for name, n in (("p", p), ("q", q)):
        if n == math.inf or not (isinstance(n, (int, np.integer)) and n >= 3):
            raise UnsupportedError(
                f"region needs finite orders 3 <= p, q; got {name} = {n!r}"
            )


def xi(p) -> float:
    """sqrt(2) sqrt(7 - cos(2 pi/p)); equals 2 sqrt(3) in the limit p = inf."""
    if p == math.inf:
        return 2.0 * math.sqrt(3.0)
    if not (isinstance(p, (int, np.integer)) and p >= 3):
        raise UnsupportedError(f"xi needs an order p >= 3 or inf, got {p!r}")
    return math.sqrt(2.0) * math.sqrt(7.0 - math.cos(2.0 * math.pi / p))


def rho_star(p, q) -> complex:
    """The tangency point rho*_{p,q} on the boundary of the disk union."""
    _require_orders(p, q)
    x = xi(p)
    sp, cp = math.sin(pi_over(p)), math.cos(pi_over(p))
    sq, cq = math.sin(pi_over(q)), math.cos(pi_over(q))
    re = cp * cq + 0.5 * sq * (4.0 * sp + x)
    im = 0.5 * x * cq + cp * sq
    return complex(re, im)


def x_pq(p, q) -> float:
    """Real-axis intercept of the line through rho*_{p,q} with direction
    i rho*_{p,q}; the closed form agrees with |rho*|^2 / Re(rho*)."""
    _require_orders(p, q)
    x = xi(p)
    tp, tq = 2.0 * math.pi / p, 2.0 * math.pi / q
    num = (
        math.cos(tp - tq)
        - math.cos(tp)
        - math.cos(tq)
        + x * (math.sin(pi_over(p)) - math.sin(pi_over(p) - tq))
        + 5.0
    )
    return num / rho_star(p, q).real


def im_bound(p, q) -> float:
    """2 sqrt(1 - S^2), the height of the horizontal boundary lines."""
    s = sin_sin(p, q)
    return 2.0 * math.sqrt(max(1.0 - s * s, 0.0))


@dataclass(frozen=True)
class OrientedLine:
    """Line {point + t * direction} with a chosen inside half-plane.

    side = +1 marks the half-plane to the left of the direction as inside,
    side = -1 the right; margin() is positive strictly inside.
    """

    point: complex
    direction: complex
    side: int

    def __post_init__(self):
        d = complex(self.direction)
        r = abs(d)
        if r == 0.0:
            raise InvalidInputError("line direction must be nonzero")
        object.__setattr__(self, "direction", d / r)
        object.__setattr__(self, "point", complex(self.point))
        if self.side not in (+1, -1):
            raise InvalidInputError(f"side must be +1 or -1, got {self.side!r}")

    def margin(self, z):
        """Signed distance of z into the inside half-plane (array-aware)."""
        w = (z - self.point) / self.direction
        return self.side * np.imag(w)


def _line_through(a: complex, b: complex, inner: complex) -> OrientedLine:
    d = b - a
    probe = ((inner - a) / d).imag
    if abs(probe) < EPS_ALG:
        raise InvalidInputError("inner reference point lies on the line")
    return OrientedLine(a, d, +1 if probe > 0 else -1)


def _line_key(line: OrientedLine, tol: float = 1e-12) -> tuple:
    """Canonical (direction, offset) key identifying the unoriented line."""
    d = line.direction
    if d.real < -tol or (abs(d.real) <= tol and d.imag < 0):
        d = -d
    offset = (line.point / d).imag  # normal component identifying the line
    return (round(d.real / tol), round(d.imag / tol), round(offset / tol))


@dataclass(frozen=True)
class OmegaRegion:
    """Omega_{p,q} as an intersection of open half-planes, plus the
    constants used to build it.  Orders are normalized to p <= q."""

    p: int
    q: int
    lines: tuple
    xi_p: float
    xi_q: float
    rho_star_pq: complex
    rho_star_qp: complex
    x_pq: float
    x_qp: float

    @property
    def sigma(self) -> float:
        return sigma_pq(self.p, self.q)

    @property
    def center(self) -> complex:
        return complex(self.sigma / 2.0, 0.0)


def build_omega(p, q) -> OmegaRegion:
    """The oriented boundary lines of Omega_{p,q} (12, or 6 when p = q).

    Lines are oriented so the symmetry center 2S is inside.  For p = q the
    swapped slant family repeats the first (deduplicated at 1e-12) and the
    two vertical lines meet the closed hexagon only at its real vertices
    x_{p,p} = 4 and sigma - 4, so they are omitted as redundant.
    """
    _require_orders(p, q)
    if p > q:
        p, q = q, p
    sigma = sigma_pq(p, q)
    inner = complex(sigma / 2.0, 0.0)
    h = im_bound(p, q)
    v = 2.0 + 2.0 * math.cos(pi_over(p) - pi_over(q))

    candidates: list[OrientedLine] = []
    if p != q:
        for x0 in (v, sigma - v):
            candidates.append(_line_through(x0, x0 + 1j, inner))
    for y0 in (h, -h):
        candidates.append(_line_through(1j * y0, 1j * y0 + 1.0, inner))
    for a, b in ((p, q), (q, p)):
        rs = rho_star(a, b)
        x0 = x_pq(a, b)
        for z0, x1 in (
            (rs, x0),
            (rs.conjugate(), x0),
            (sigma - rs, sigma - x0),
            (sigma - rs.conjugate(), sigma - x0),
        ):
            candidates.append(_line_through(z0, x1, inner))

    lines: list[OrientedLine] = []
    seen = set()
    for line in candidates:
        key = _line_key(line)
        if key not in seen:
            seen.add(key)
            lines.append(line)

    return OmegaRegion(
        p=int(p),
        q=int(q),
        lines=tuple(lines),
        xi_p=xi(p),
        xi_q=xi(q),
        rho_star_pq=rho_star(p, q),
        rho_star_qp=rho_star(q, p),
        x_pq=x_pq(p, q),
        x_qp=x_pq(q, p),
    )


def omega_margin(region: OmegaRegion, z):
    """min over boundary lines of the inside margin (array-aware);
    positive strictly inside Omega, negative outside."""
    margins = [line.margin(z) for line in region.lines]
    out = margins[0]
    for m in margins[1:]:
        out = np.minimum(out, m)
    return out


def omega_contains(region: OmegaRegion, rho: complex, tol: float = EPS_ALG) -> bool:
    """Strict membership in the open region; boundary points are outside."""
    return bool(omega_margin(region, complex(rho)) > tol)


def boundary_cusps(p, q) -> tuple[complex, complex, complex, complex]:
    """The four cusp parameters on the boundary of Omega_{p,q}.

    Returns (rho_{0/1}, rho_{1/1}, rho_{1/2}^+, rho_{1/2}^-); the first two
    are symmetry partners on the vertical lines (the real vertices when
    p = q), the last two sit on the horizontal lines Im z = +-2 sqrt(1-S^2).
    """
    _require_orders(p, q)
    s = sin_sin(p, q)
    rho01 = complex(2.0 + 2.0 * math.cos(pi_over(p) - pi_over(q)), 0.0)
    rho11 = complex(-2.0 - 2.0 * math.cos(pi_over(p) + pi_over(q)), 0.0)
    half = complex(2.0 * s, im_bound(p, q))
    return rho01, rho11, half, half.conjugate()
