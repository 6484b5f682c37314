"""The lambda coordinate and its feasibility region.

The parameter lambda describes the same marked group as rho through

    rho_minus = -S (lambda - 1)^2 / lambda,
    rho_plus  = +S (lambda + 1)^2 / lambda,      S = sin(pi/p) sin(pi/q),

with rho_minus + rho_plus = sigma = 4S, so the two roots are symmetry
partners.  The pair is free and discrete whenever both of the closed
inequalities

    |lambda cot(pi/q) +- cot(pi/p)| + csc(pi/p) <= |lambda| csc(pi/q)

hold.  The inequalities are invariant under lambda -> -lambda but not under
lambda -> 1/lambda, so lambda is normalized to |lambda| >= 1 (both moduli
describe the same conjugacy class, and rho_minus/rho_plus are unchanged).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .mobius import GroupSpec, InvalidInputError, pi_over, sin_sin

_SIGNS = (+1, -1)


def _check_lambda_orders(p, q) -> None:
    if p == math.inf or q == math.inf:
        raise InvalidInputError("lambda coordinates need finite orders")
    if not (isinstance(p, (int, np.integer)) and p >= 2):
        raise InvalidInputError(f"order p must be an integer >= 2, got {p!r}")
    if not (isinstance(q, (int, np.integer)) and q >= 2):
        raise InvalidInputError(f"order q must be an integer >= 2, got {q!r}")
    if p == 2 and q == 2:
        raise InvalidInputError("p = q = 2 is a degenerate (dihedral) spec")


def _check_sign(sign) -> int:
    if sign in (+1, -1):
        return int(sign)
    raise InvalidInputError(f"sign must be +1 or -1, got {sign!r}")


@dataclass(frozen=True)
class LambdaParams:
    """Orders (p, q) and a lambda value normalized to |lambda| >= 1."""

    p: int
    q: int
    lam: complex

    def __post_init__(self):
        _check_lambda_orders(self.p, self.q)
        lam = complex(self.lam)
        if lam == 0:
            raise InvalidInputError("lambda must be nonzero")
        if abs(lam) < 1.0:
            lam = 1.0 / lam
        object.__setattr__(self, "lam", lam)


def _trig(p, q) -> tuple[float, float, float, float]:
    """(cot_p, cot_q, csc_p, csc_q) for finite orders."""
    _check_lambda_orders(p, q)
    sp, sq = math.sin(pi_over(p)), math.sin(pi_over(q))
    return math.cos(pi_over(p)) / sp, math.cos(pi_over(q)) / sq, 1.0 / sp, 1.0 / sq


def lambda_slack_signed(p, q, lam: complex, sign: int) -> float:
    """Margin of one of the two feasibility inequalities.

    Returns |lam| csc(pi/q) - |lam cot(pi/q) + sign * cot(pi/p)| - csc(pi/p);
    the inequality of that sign holds iff the margin is >= 0.
    """
    cot_p, cot_q, csc_p, csc_q = _trig(p, q)
    sign = _check_sign(sign)
    lam = complex(lam)
    return abs(lam) * csc_q - abs(lam * cot_q + sign * cot_p) - csc_p


def lambda_slack(p, q, lam: complex) -> float:
    """Worst-case margin over both inequalities; >= 0 means certified."""
    return min(lambda_slack_signed(p, q, lam, s) for s in _SIGNS)


def rho_from_lambda(params: LambdaParams) -> tuple[complex, complex]:
    """(rho_minus, rho_plus) of a lambda value; the two sum to sigma.

    Each root satisfies rho (rho - sigma) = (lam - 1/lam)^2 S^2, so the
    roots are symmetry partners of one another.
    """
    s = sin_sin(params.p, params.q)
    lam = params.lam
    rm = -s * (lam - 1.0) ** 2 / lam
    rp = s * (lam + 1.0) ** 2 / lam
    return rm, rp


def lambda_from_rho(spec: GroupSpec) -> tuple[complex, complex]:
    """The two lambda branches of a rho value, largest modulus first.

    Solves S^2 (lam - 1/lam)^2 = gamma = rho (rho - sigma); the branch
    product is -1, so the branches are lam and -1/lam.  rho = 0 and
    rho = sigma give the degenerate branches lam = +-1 (still returned).
    """
    _check_lambda_orders(spec.p, spec.q)
    s = sin_sin(spec.p, spec.q)
    rho = spec.rho
    gamma = rho * (rho - 4.0 * s)
    w = cmath.sqrt(gamma / (s * s))
    r1 = (w + cmath.sqrt(w * w + 4.0)) / 2.0
    r2 = (w - cmath.sqrt(w * w + 4.0)) / 2.0
    if abs(r1) >= abs(r2):
        return r1, r2
    return r2, r1


def lambda_boundary(p, q, theta: float, sign: int) -> complex:
    """The boundary point lam = r_sign(theta) e^{i theta} of one inequality.

    r_sign is the displayed closed form; the result satisfies the
    inequality of the given sign with equality (and r_sign >= 1, since
    r_sign solves r^2 - 2 B r + 1 = 0 for B = csc csc + sign cos cot cot).
    """
    cot_p, cot_q, csc_p, csc_q = _trig(p, q)
    sign = _check_sign(sign)
    c = math.cos(theta)
    base = sign * c * cot_p * cot_q + csc_p * csc_q
    rad = (c * csc_p * cot_q + sign * cot_p * csc_q) ** 2 + math.sin(theta) ** 2 * cot_q**2
    return (base + math.sqrt(rad)) * cmath.exp(1j * theta)


def lambda_boundary_equal_orders(p, theta: float, sign: int) -> complex:
    """Specialized p = q boundary point (same values as the general form)."""
    _check_lambda_orders(p, p)
    sign = _check_sign(sign)
    sp, cp = math.sin(pi_over(p)), math.cos(pi_over(p))
    csc2 = 1.0 / (sp * sp)
    c = math.cos(theta)
    rad = cp * cp * ((c + sign) ** 2 + math.sin(theta) ** 2 * sp * sp)
    return csc2 * (1.0 + sign * c * cp * cp + math.sqrt(rad)) * cmath.exp(1j * theta)


def rho_boundary(p, q, theta: float) -> tuple[complex, complex]:
    """(rho_minus, rho_plus) traced by the lambda boundary at angle theta.

    Both values come from the '+' curve lam = r_plus(theta) e^{i theta};
    sweeping theta over a full turn with r_minus instead retraces the same
    two curves (the r_minus point at theta is -1 times the r_plus point at
    theta + pi, and the rho pair is invariant under lam -> -lam).  The
    common exterior of the two closed curves is lambda-certified.
    """
    lam = lambda_boundary(p, q, theta, +1)
    return rho_from_lambda(LambdaParams(p, q, lam))


@dataclass(frozen=True)
class EnvelopeSample:
    """One tangent-line sample of the certified-line envelope."""

    theta: float
    lam: complex
    rho: complex  # the rho_plus root of lam
    nu: complex  # line direction (lam^2 - 1) / lam


def envelope_samples(p, q, n: int) -> list[EnvelopeSample]:
    """n samples of the tangency locus lam = r_plus(theta) e^{i theta}.

    Each sample carries the point rho (the rho_plus root of the boundary
    lambda) and the direction nu = (lam^2 - 1)/lam of the certified line
    through it; nu is real for real lam and imaginary for imaginary lam.
    Intended for rendering the envelope of the certified line family.
    """
    if n < 1:
        raise InvalidInputError("need at least one sample")
    _check_lambda_orders(p, q)
    if p < 3 or q < 3:
        raise InvalidInputError("envelope sampling needs orders p, q >= 3")
    out = []
    for k in range(n):
        theta = 2.0 * math.pi * k / n
        lam = lambda_boundary(p, q, theta, +1)
        _, rho_plus = rho_from_lambda(LambdaParams(p, q, lam))
        nu = (lam * lam - 1.0) / lam
        out.append(EnvelopeSample(theta, lam, rho_plus, nu))
    return out


def lambda_slack_array(p, q, lam: np.ndarray) -> np.ndarray:
    """Vectorized lambda_slack over an array of lambda values."""
    cot_p, cot_q, csc_p, csc_q = _trig(p, q)
    lam = np.asarray(lam, dtype=complex)
    rhs = np.abs(lam) * csc_q
    s_plus = rhs - np.abs(lam * cot_q + cot_p) - csc_p
    s_minus = rhs - np.abs(lam * cot_q - cot_p) - csc_p
    return np.minimum(s_plus, s_minus)


def lambda_from_rho_array(p, q, rho: np.ndarray) -> np.ndarray:
    """Vectorized largest-modulus lambda branch for an array of rho values."""
    _check_lambda_orders(p, q)
    s = sin_sin(p, q)
    rho = np.asarray(rho, dtype=complex)
    w = np.sqrt(rho * (rho - 4.0 * s) / (s * s))
    root = np.sqrt(w * w + 4.0)
    r1 = (w + root) / 2.0
    r2 = (w - root) / 2.0
    return np.where(np.abs(r1) >= np.abs(r2), r1, r2)
