"""Backend parity: the accelerated kernels must match the reference arrays."""

import math

import numpy as np
import pytest

import mobcert.kernels as kernels
from mobcert import certificates, omega
from mobcert.burau import burau_slack_array
from mobcert.kernels import (
    burau_slack_grid,
    combined_codes_grid,
    default_backend,
    disk_slack_grid,
    lambda_slack_grid,
    numba_available,
    omega_margin_grid,
    resolve_backend,
)
from mobcert.lambda_region import (
    lambda_from_rho,
    lambda_from_rho_array,
    lambda_slack,
    lambda_slack_array,
)
from mobcert.mobius import GroupSpec, UnsupportedError

RNG = np.random.default_rng(20260814)

MARKINGS = [(3, 3), (3, 4), (4, 4), (3, 7), (5, 9)]

needs_numba = pytest.mark.skipif(not numba_available(), reason="numba not installed")


def random_grid(n=600, scale=6.0):
    re = RNG.uniform(-scale, 2 * scale, n)
    im = RNG.uniform(-scale, scale, n)
    return re + 1j * im


class TestBackendSelection:
    def test_resolve_explicit(self):
        assert resolve_backend("numpy") == "numpy"
        with pytest.raises(UnsupportedError):
            resolve_backend("fortran")

    def test_env_flag(self, monkeypatch):
        monkeypatch.setenv(kernels.ENV_FLAG, "0")
        assert default_backend() == "numpy"
        monkeypatch.setenv(kernels.ENV_FLAG, "off")
        assert default_backend() == "numpy"
        monkeypatch.setenv(kernels.ENV_FLAG, "1")
        expected = "numba" if numba_available() else "numpy"
        assert default_backend() == expected

    @needs_numba
    def test_resolve_numba(self):
        assert resolve_backend("numba") == "numba"


class TestNumpyPathMatchesReference:
    def test_disk_slack(self):
        rho = random_grid()
        got = disk_slack_grid(3, 4, rho, backend="numpy")
        want = np.array([certificates.disk_slack(3, 4, complex(z)) for z in rho[:50]])
        assert np.abs(got[:50] - want).max() < 1e-12

    def test_lambda_slack(self):
        rho = random_grid()
        got = lambda_slack_grid(3, 5, rho, backend="numpy")
        want = lambda_slack_array(3, 5, lambda_from_rho_array(3, 5, rho))
        assert np.abs(got - want).max() == 0.0
        # spot-check against the scalar branch computation
        for i in range(25):
            big, _ = lambda_from_rho(GroupSpec(3, 5, complex(rho[i])))
            assert abs(lambda_slack(3, 5, big) - got[i]) < 1e-10

    def test_omega_margin(self):
        region = omega.build_omega(3, 7)
        rho = random_grid()
        got = omega_margin_grid(region, rho, backend="numpy")
        want = np.array([omega.omega_margin(region, complex(z)) for z in rho[:50]])
        assert np.abs(got[:50] - want).max() < 1e-12

    def test_burau_slack(self):
        mu = random_grid(scale=3.0)
        got = burau_slack_grid(mu, backend="numpy")
        want = burau_slack_array(mu)
        assert np.allclose(got, want, atol=1e-12, equal_nan=True)

    def test_combined_codes(self):
        rho = random_grid(n=300)
        got = combined_codes_grid(3, 3, rho, backend="numpy")
        want = certificates.combined_codes_array(3, 3, rho, search=False)
        assert (got == want).all()


@needs_numba
class TestBackendAgreement:
    @pytest.mark.parametrize("p,q", MARKINGS)
    def test_disk_slack(self, p, q):
        rho = random_grid()
        a = disk_slack_grid(p, q, rho, backend="numpy")
        b = disk_slack_grid(p, q, rho, backend="numba")
        assert np.abs(a - b).max() < 1e-10

    @pytest.mark.parametrize("p,q", MARKINGS)
    def test_lambda_slack(self, p, q):
        rho = random_grid()
        a = lambda_slack_grid(p, q, rho, backend="numpy")
        b = lambda_slack_grid(p, q, rho, backend="numba")
        assert np.abs(a - b).max() < 1e-10

    @pytest.mark.parametrize("p,q", MARKINGS)
    def test_omega_margin(self, p, q):
        region = omega.build_omega(p, q)
        rho = random_grid()
        a = omega_margin_grid(region, rho, backend="numpy")
        b = omega_margin_grid(region, rho, backend="numba")
        assert np.abs(a - b).max() < 1e-10

    def test_burau_slack(self):
        mu = random_grid(scale=3.0)
        a = burau_slack_grid(mu, backend="numpy")
        b = burau_slack_grid(mu, backend="numba")
        mask = np.isfinite(a)
        assert (mask == np.isfinite(b)).all()
        assert np.abs(a[mask] - b[mask]).max() < 1e-10

    @pytest.mark.parametrize("p,q", MARKINGS)
    def test_combined_codes(self, p, q):
        # code disagreement is only legitimate within a tolerance band of a
        # threshold; on a generic random grid the sets must coincide.
        rho = random_grid(n=400)
        a = combined_codes_grid(p, q, rho, backend="numpy")
        b = combined_codes_grid(p, q, rho, backend="numba")
        assert (a == b).all()

    def test_preserves_shape(self):
        rho = random_grid(n=60).reshape(6, 10)
        a = combined_codes_grid(4, 4, rho, backend="numba")
        assert a.shape == (6, 10)
        m = omega_margin_grid(omega.build_omega(4, 4), rho, backend="numba")
        assert m.shape == (6, 10)


class TestInfiniteOrders:
    def test_infinite_q_disks(self):
        rho = random_grid(n=100)
        a = disk_slack_grid(3, math.inf, rho, backend="numpy")
        want = np.array([certificates.disk_slack(3, math.inf, complex(z)) for z in rho])
        assert np.abs(a - want).max() < 1e-12

    @needs_numba
    def test_infinite_q_backend_agreement(self):
        rho = random_grid(n=100)
        a = disk_slack_grid(3, math.inf, rho, backend="numpy")
        b = disk_slack_grid(3, math.inf, rho, backend="numba")
        assert np.abs(a - b).max() < 1e-10
        ca = combined_codes_grid(3, math.inf, rho, backend="numpy")
        cb = combined_codes_grid(3, math.inf, rho, backend="numba")
        assert (ca == cb).all()
