"""Deterministic grid scans of certificate codes over a parameter window.

A scan evaluates one certificate mode at every pixel center of a rectangular
window (no supersampling) and returns a grid of the witness codes defined in
``certificates``.  Rows are data-parallel: each row is an independent pure
computation, and results are merged in row order, so the output is
independent of the worker count.  Scans that die part-way raise
PartialScanError carrying the completed-rows count.

Mode -> code semantics (0 always means "not certified"):

* ``omega``    1 where the point lies strictly outside Omega_{p,q}.
* ``disks``    1 where the four (p, q) exclusion disks certify (strict).
* ``lambda``   4 where the (p, q) lambda inequalities certify (closed).
* ``combined`` the full cert_combined cascade, codes 1/2/5/4/3.
* ``burau``    the window is read in the mu-plane; 4 where the specialized
               Burau representation is certified faithful.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass

import numpy as np

from . import __version__, kernels
from .certificates import (
    CODE_DISKS_ELLIPTIC,
    CODE_LAMBDA,
    CODE_LINE_FAMILY,
    anchor_search_bulk,
)
from .mobius import EPS_ALG, InvalidInputError
from .burau import SQRT3
from .omega import build_omega

MODES = ("omega", "disks", "lambda", "combined", "burau")

#: Fill value for rows that never completed (only seen via PartialScanError).
CODE_UNSCANNED = 255


@dataclass(frozen=True)
class Window:
    """A closed axis-aligned rectangle in the complex plane."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise InvalidInputError(f"degenerate window {self!r}")


@dataclass(frozen=True)
class ScanJob:
    """One scan request: marking, window, resolution and certificate mode."""

    p: int
    q: int
    window: Window
    resolution: int
    mode: str

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidInputError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not (isinstance(self.resolution, int) and self.resolution >= 2):
            raise InvalidInputError(f"resolution must be an integer >= 2, got {self.resolution!r}")

    def xs(self) -> np.ndarray:
        """Pixel-center abscissae, left to right."""
        w = (self.window.re_max - self.window.re_min) / self.resolution
        return self.window.re_min + (np.arange(self.resolution) + 0.5) * w

    def ys(self) -> np.ndarray:
        """Pixel-center ordinates, bottom to top (row index = y index)."""
        h = (self.window.im_max - self.window.im_min) / self.resolution
        return self.window.im_min + (np.arange(self.resolution) + 0.5) * h


@dataclass(frozen=True)
class ScanResult:
    """Grid of certificate codes plus metadata echoing the job."""

    codes: np.ndarray  # shape (resolution, resolution), row i <-> ys()[i]
    metadata: dict


class PartialScanError(RuntimeError):
    """A scan failed part-way; carries the rows completed before the failure."""

    def __init__(self, completed_rows: int, total_rows: int, partial: np.ndarray, cause: BaseException):
        super().__init__(
            f"scan failed after {completed_rows} of {total_rows} rows: {cause!r}"
        )
        self.completed_rows = completed_rows
        self.total_rows = total_rows
        self.partial = partial
        self.cause = cause


def _row_codes(job: ScanJob, xs: np.ndarray, y: float, backend: str | None) -> np.ndarray:
    """Certificate codes of one row of pixel centers (pure, order-free)."""
    z = xs + 1j * y
    if job.mode == "omega":
        region = build_omega(job.p, job.q)
        margin = kernels.omega_margin_grid(region, z, backend=backend)
        return np.where(margin < -EPS_ALG, CODE_DISKS_ELLIPTIC, 0).astype(np.uint8)
    if job.mode == "disks":
        slack = kernels.disk_slack_grid(job.p, job.q, z, backend=backend)
        return np.where(slack > EPS_ALG, CODE_DISKS_ELLIPTIC, 0).astype(np.uint8)
    if job.mode == "lambda":
        slack = kernels.lambda_slack_grid(job.p, job.q, z, backend=backend)
        return np.where(slack >= -EPS_ALG, CODE_LAMBDA, 0).astype(np.uint8)
    if job.mode == "burau":
        slack = kernels.burau_slack_grid(z, backend=backend)
        with np.errstate(invalid="ignore"):
            ok = (slack >= -EPS_ALG * SQRT3) & (np.abs(z + 1.0) > EPS_ALG) & (z != 0)
        return np.where(ok, CODE_LAMBDA, 0).astype(np.uint8)
    return kernels.combined_codes_grid(job.p, job.q, z, backend=backend)


def run_scan(job: ScanJob, backend: str | None = None, workers: int = 1) -> ScanResult:
    """Run a scan job; deterministic and independent of the worker count."""
    backend = kernels.resolve_backend(backend)
    res = job.resolution
    xs = job.xs()
    ys = job.ys()
    codes = np.full((res, res), CODE_UNSCANNED, dtype=np.uint8)

    # Fail fast on bad parameters before any row work starts.
    _row_codes(job, xs[:1], ys[0], backend)

    completed = 0
    failure: BaseException | None = None
    if workers <= 1:
        for i in range(res):
            try:
                codes[i] = _row_codes(job, xs, ys[i], backend)
                completed += 1
            except Exception as exc:  # noqa: BLE001 - rethrown as PartialScanError
                failure = exc
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(_row_codes, job, xs, ys[i], backend): i for i in range(res)}
            for fut in as_completed(futures):
                i = futures[fut]
                try:
                    codes[i] = fut.result()
                    completed += 1
                except Exception as exc:  # noqa: BLE001
                    if failure is None:
                        failure = exc
    if failure is not None:
        raise PartialScanError(completed, res, codes, failure)

    if job.mode == "combined":
        # The residual anchor search runs once over the merged grid, in the
        # shared numpy path, so both backends and all worker counts agree.
        mask = codes == 0
        if mask.any():
            grid = xs[None, :] + 1j * ys[:, None]
            slack, _, _ = anchor_search_bulk(job.p, job.q, grid[mask])
            sub = codes[mask]
            sub[slack > EPS_ALG] = CODE_LINE_FAMILY
            codes[mask] = sub

    metadata = {
        "p": job.p,
        "q": job.q,
        "window": [job.window.re_min, job.window.re_max, job.window.im_min, job.window.im_max],
        "resolution": res,
        "mode": job.mode,
        "backend": backend,
        "version": __version__,
    }
    return ScanResult(codes=codes, metadata=metadata)
