"""Grid kernels: numba fast path with a pure-numpy fallback.

Every kernel exists twice: a vectorized numpy implementation (delegating to
the library's array helpers) and a numba ``@njit`` twin that mirrors the
same arithmetic point by point.  The default backend is chosen once from
the ``MOBCERT_NUMBA`` environment variable -- any of ``0/false/off/no`` (or
an empty value) disables the fast path -- and every kernel accepts an
explicit ``backend="numpy"``/``backend="numba"`` override.  Requesting
numba when it is not importable raises UnsupportedError.

The numba twins release the GIL (``nogil=True``) so scans can thread rows;
they avoid ``fastmath`` and ``parallel`` on purpose, keeping results
deterministic and ordering-faithful to the numpy path.
"""

from __future__ import annotations

import math
import os

import numpy as np

from . import burau as _burau
from . import certificates as _certs
from .lambda_region import lambda_from_rho_array, lambda_slack_array, _check_lambda_orders, _trig
from .mobius import EPS_ALG, UnsupportedError
from .omega import OmegaRegion, omega_margin

ENV_FLAG = "MOBCERT_NUMBA"
_FALSY = {"0", "false", "off", "no", ""}

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAS_NUMBA = False

BACKENDS = ("numpy", "numba")


def numba_available() -> bool:
    return HAS_NUMBA


def default_backend() -> str:
    """Backend picked by the MOBCERT_NUMBA environment flag."""
    flag = os.environ.get(ENV_FLAG)
    if flag is not None and flag.strip().lower() in _FALSY:
        return "numpy"
    return "numba" if HAS_NUMBA else "numpy"


def resolve_backend(backend: str | None) -> str:
    """Validate an explicit backend choice, or fall back to the default."""
    if backend is None:
        return default_backend()
    if backend not in BACKENDS:
        raise UnsupportedError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    if backend == "numba" and not HAS_NUMBA:
        raise UnsupportedError("backend 'numba' requested but numba is not installed")
    return backend


def _line_arrays(region: OmegaRegion):
    lines = region.lines
    px = np.array([ln.point.real for ln in lines])
    py = np.array([ln.point.imag for ln in lines])
    dx = np.array([ln.direction.real for ln in lines])
    dy = np.array([ln.direction.imag for ln in lines])
    side = np.array([float(ln.side) for ln in lines])
    return px, py, dx, dy, side


if HAS_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def _disk_slack_nb(rho, centers):  # pragma: no cover - measured via wrappers
        out = np.empty(rho.shape[0])
        for i in range(rho.shape[0]):
            d = np.inf
            for k in range(centers.shape[0]):
                v = abs(rho[i] - centers[k])
                if v < d:
                    d = v
            out[i] = d - 2.0
        return out

    @numba.njit(cache=True, nogil=True)
    def _lambda_slack_nb(rho, s, cot_p, cot_q, csc_p, csc_q):  # pragma: no cover
        out = np.empty(rho.shape[0])
        for i in range(rho.shape[0]):
            z = rho[i]
            w = np.sqrt(z * (z - 4.0 * s) / (s * s))
            root = np.sqrt(w * w + 4.0)
            r1 = (w + root) / 2.0
            r2 = (w - root) / 2.0
            lam = r1 if abs(r1) >= abs(r2) else r2
            rhs = abs(lam) * csc_q
            sp = rhs - abs(lam * cot_q + cot_p) - csc_p
            sm = rhs - abs(lam * cot_q - cot_p) - csc_p
            out[i] = sp if sp < sm else sm
        return out

    @numba.njit(cache=True, nogil=True)
    def _omega_margin_nb(rho, px, py, dx, dy, side):  # pragma: no cover
        out = np.empty(rho.shape[0])
        for i in range(rho.shape[0]):
            x = rho[i].real
            y = rho[i].imag
            m = np.inf
            for k in range(px.shape[0]):
                v = side[k] * ((y - py[k]) * dx[k] - (x - px[k]) * dy[k])
                if v < m:
                    m = v
            out[i] = m
        return out

    @numba.njit(cache=True, nogil=True)
    def _burau_slack_nb(mu):  # pragma: no cover
        out = np.empty(mu.shape[0])
        for i in range(mu.shape[0]):
            m = mu[i]
            if m == 0:
                out[i] = np.nan
                continue
            r = np.sqrt(m)
            z = r - 1.0 / r
            root = np.sqrt(z * z + 3.0)
            b1 = abs(z + root)
            b2 = abs(z - root)
            out[i] = (b1 if b1 > b2 else b2) - 3.0
        return out

    @numba.njit(cache=True, nogil=True)
    def _combined_codes_nb(
        rho, c_p, c_q, use_p, use_q, use_im, imb, use_lam, s, cot_p, cot_q, csc_p, csc_q
    ):  # pragma: no cover
        n = rho.shape[0]
        codes = np.zeros(n, dtype=np.uint8)
        for i in range(n):
            z = rho[i]
            if use_p:
                d = np.inf
                for k in range(c_p.shape[0]):
                    v = abs(z - c_p[k])
                    if v < d:
                        d = v
                if d - 2.0 > EPS_ALG:
                    codes[i] = 1
                    continue
            if use_q:
                d = np.inf
                for k in range(c_q.shape[0]):
                    v = abs(z - c_q[k])
                    if v < d:
                        d = v
                if d - 2.0 > EPS_ALG:
                    codes[i] = 2
                    continue
            if use_im and abs(z.imag) - imb >= -EPS_ALG:
                codes[i] = 5
                continue
            if use_lam:
                w = np.sqrt(z * (z - 4.0 * s) / (s * s))
                root = np.sqrt(w * w + 4.0)
                r1 = (w + root) / 2.0
                r2 = (w - root) / 2.0
                lam = r1 if abs(r1) >= abs(r2) else r2
                rhs = abs(lam) * csc_q
                sp = rhs - abs(lam * cot_q + cot_p) - csc_p
                sm = rhs - abs(lam * cot_q - cot_p) - csc_p
                s_pq = sp if sp < sm else sm
                rhs = abs(lam) * csc_p
                sp = rhs - abs(lam * cot_p + cot_q) - csc_q
                sm = rhs - abs(lam * cot_p - cot_q) - csc_q
                s_qp = sp if sp < sm else sm
                best = s_pq if s_pq > s_qp else s_qp
                if best >= -EPS_ALG:
                    codes[i] = 4
        return codes


def disk_slack_grid(p, q, rho: np.ndarray, backend: str | None = None) -> np.ndarray:
    """min_k |rho - c_k| - 2 over the four exclusion disks of (p, q)."""
    rho = np.ascontiguousarray(rho, dtype=complex)
    if resolve_backend(backend) == "numba":
        centers = np.array(_certs.disk_centers_elliptic(p, q), dtype=complex)
        return _disk_slack_nb(rho.ravel(), centers).reshape(rho.shape)
    out = np.full(rho.shape, np.inf)
    for c in _certs.disk_centers_elliptic(p, q):
        np.minimum(out, np.abs(rho - c), out=out)
    return out - 2.0


def lambda_slack_grid(p, q, rho: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Lambda feasibility slack of the larger branch, (p, q) marking only."""
    _check_lambda_orders(p, q)
    rho = np.ascontiguousarray(rho, dtype=complex)
    if resolve_backend(backend) == "numba":
        cot_p, cot_q, csc_p, csc_q = _trig(p, q)
        s = math.sin(math.pi / p) * math.sin(math.pi / q)
        return _lambda_slack_nb(rho.ravel(), s, cot_p, cot_q, csc_p, csc_q).reshape(rho.shape)
    return lambda_slack_array(p, q, lambda_from_rho_array(p, q, rho))


def omega_margin_grid(region: OmegaRegion, rho: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Signed distance to the Omega boundary (positive inside)."""
    rho = np.ascontiguousarray(rho, dtype=complex)
    if resolve_backend(backend) == "numba":
        px, py, dx, dy, side = _line_arrays(region)
        return _omega_margin_nb(rho.ravel(), px, py, dx, dy, side).reshape(rho.shape)
    return omega_margin(region, rho)


def burau_slack_grid(mu: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Faithfulness slack max|z +- sqrt(z^2+3)| - 3 of the Burau point mu."""
    mu = np.ascontiguousarray(mu, dtype=complex)
    if resolve_backend(backend) == "numba":
        return _burau_slack_nb(mu.ravel()).reshape(mu.shape)
    return _burau.burau_slack_array(mu)


def combined_codes_grid(p, q, rho: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Closed-form combined certificate codes (no anchor search).

    Same precedence as cert_combined: elliptic disks (1), swapped-marking
    disks (2), Im bound (5), lambda region (4); 0 where none of the closed
    forms fires.  The residual anchor search is a separate (shared numpy)
    pass -- see scan.run_scan.
    """
    rho = np.ascontiguousarray(rho, dtype=complex)
    if resolve_backend(backend) == "numba":
        use_p = p == math.inf or p >= 3
        use_q = q == math.inf or q >= 3
        finite = p != math.inf and q != math.inf
        use_im = finite and p >= 3 and q >= 3
        use_lam = finite and not (p == 2 and q == 2)
        c_p = np.array(
            _certs.disk_centers_elliptic(p, q) if use_p else [], dtype=complex
        )
        c_q = np.array(
            _certs.disk_centers_elliptic(q, p) if use_q else [], dtype=complex
        )
        if use_im:
            from .omega import im_bound

            imb = im_bound(p, q)
        else:
            imb = 0.0
        if use_lam:
            cot_p, cot_q, csc_p, csc_q = _trig(p, q)
            s = math.sin(math.pi / p) * math.sin(math.pi / q)
        else:
            cot_p = cot_q = csc_p = csc_q = 0.0
            s = 1.0
        return _combined_codes_nb(
            rho.ravel(), c_p, c_q, use_p, use_q, use_im, imb, use_lam, s, cot_p, cot_q, csc_p, csc_q
        ).reshape(rho.shape)
    return _certs.combined_codes_array(p, q, rho, search=False)
