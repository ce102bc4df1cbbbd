import math

import numpy as np
import pytest

from swbench.core import DomainError, Grid1D, Grid2D, gauss_legendre_integral
from swbench.oscillations import (
    SampsonSpec,
    Thacker1DSpec,
    ThackerPlanarSpec,
    ThackerRadialSpec,
    bowl_1d,
    bowl_sampson,
    paraboloid,
    sample_1d,
    sample_2d,
    sampson,
    sampson_shorelines,
    thacker1d,
    thacker1d_shorelines,
    thacker_planar,
    thacker_radial,
)

T1D = Thacker1DSpec()
RAD = ThackerRadialSpec()
PLA = ThackerPlanarSpec()
SAM = SampsonSpec()


def affine_fit_residual(x, values):
    coeffs = np.polyfit(x, values, 1)
    return np.max(np.abs(values - np.polyval(coeffs, x)))


class TestThacker1D:
    def test_derived_constants(self):
        assert T1D.amplitude == pytest.approx(1.5660459763365826, rel=1e-13)
        assert T1D.period == pytest.approx(2.006066680710647, rel=1e-13)

    def test_initial_shorelines(self):
        x1, x2 = thacker1d_shorelines(T1D, 0.0)
        assert x1 == pytest.approx(0.5)
        assert x2 == pytest.approx(2.5)
        assert x2 - x1 == pytest.approx(2.0 * T1D.half_width)

    def test_velocity_zero_at_half_period(self):
        xs = np.linspace(0.8, 2.2, 11)
        _, u = thacker1d(T1D, 0.5 * T1D.period, xs)
        np.testing.assert_allclose(u, 0.0, atol=1e-12)

    def test_shoreline_heights_vanish(self):
        for t in (0.0, 0.3, 1.1, 1.9):
            x1, x2 = thacker1d_shorelines(T1D, t)
            h1, _ = thacker1d(T1D, t, x1)
            h2, _ = thacker1d(T1D, t, x2)
            assert h1 < 1e-12 and h2 < 1e-12
            h_mid, _ = thacker1d(T1D, t, 0.5 * (x1 + x2))
            assert h_mid > 0.0

    def test_planar_free_surface(self):
        for t in (0.1, 0.7, 1.3):
            x1, x2 = thacker1d_shorelines(T1D, t)
            xs = np.linspace(x1 + 0.05, x2 - 0.05, 64)
            h, _ = thacker1d(T1D, t, xs)
            eta = h + bowl_1d(T1D, xs)
            assert affine_fit_residual(xs, eta) < 1e-10

    def test_volume_constant_over_period(self):
        def volume(t):
            x1, x2 = thacker1d_shorelines(T1D, t)
            return gauss_legendre_integral(lambda x: thacker1d(T1D, t, x)[0], x1, x2, order=12)
        v0 = volume(0.0)
        for t in np.linspace(0.0, T1D.period, 9):
            assert volume(t) == pytest.approx(v0, rel=1e-6)

    def test_exact_periodicity(self):
        xs = np.linspace(0.0, 4.0, 257)
        h0, u0 = thacker1d(T1D, 0.37, xs)
        h1, u1 = thacker1d(T1D, 0.37 + T1D.period, xs)
        np.testing.assert_allclose(h0, h1, atol=1e-12)
        np.testing.assert_allclose(u0, u1, atol=1e-12)


class TestThackerRadial:
    def test_shape_constant(self):
        assert RAD.shape == pytest.approx(0.2195121951219512, rel=1e-13)

    def test_pulsation_and_default_time(self):
        assert RAD.pulsation == pytest.approx(2.8014282071829006, rel=1e-13)
        assert 3.0 * RAD.period == pytest.approx(6.72855219819956, rel=1e-12)

    def test_center_depth_at_t0(self):
        # printed h includes -z(r); at the center z = -h0, so
        # h = h0 sqrt(1-A^2)/(1-A) = h0 a / r0 = 0.125
        h, u, v = thacker_radial(RAD, 0.0, 2.0, 2.0)
        assert h == pytest.approx(0.125, rel=1e-12)
        assert u == 0.0 and v == 0.0

    def test_symmetry_axis_velocity(self):
        for t in (0.2, 0.9, 1.7):
            h, u, v = thacker_radial(RAD, t, 2.0, 2.3)
            assert u == 0.0  # x = L/2 kills the x-velocity factor

    def test_exact_periodicity(self):
        grid = Grid2D(4.0, 4.0, 41, 41)
        f0 = sample_2d("radial", RAD, grid, 0.63)
        f1 = sample_2d("radial", RAD, grid, 0.63 + RAD.period)
        np.testing.assert_allclose(f0.h, f1.h, atol=1e-12)
        np.testing.assert_allclose(f0.u, f1.u, atol=1e-12)

    def test_volume_constant_over_period(self):
        # radial symmetry: V(t) = 2 pi int_0^R h r dr with R found by bisection
        def volume(t):
            def h_at(r):
                return thacker_radial(RAD, t, 2.0 + r, 2.0)[0]
            lo, hi = 0.0, 1.99  # h is clamped at 0: bisect the wet indicator
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if h_at(mid) > 0.0:
                    lo = mid
                else:
                    hi = mid
            return 2.0 * math.pi * gauss_legendre_integral(
                lambda r: np.array([h_at(ri) * ri for ri in np.atleast_1d(r)]),
                0.0, lo, order=16)
        v0 = volume(0.0)
        assert v0 == pytest.approx(math.pi * RAD.depth * RAD.radius ** 2 / 2.0, rel=1e-9)
        for t in np.linspace(0.0, RAD.period, 7):
            assert volume(t) == pytest.approx(v0, rel=1e-6)


class TestThackerPlanar:
    def test_pulsation(self):
        assert PLA.pulsation == pytest.approx(1.4007141035914503, rel=1e-13)

    def test_speed_magnitude_is_eta_omega(self):
        for t in (0.0, 0.4, 1.9):
            grid = Grid2D(4.0, 4.0, 30, 30)
            f = sample_2d("planar", PLA, grid, t)
            wet = f.h > 0
            speed = np.hypot(f.u[wet], f.v[wet])
            np.testing.assert_allclose(speed, PLA.offset * PLA.pulsation, rtol=1e-12)

    def test_planar_free_surface(self):
        grid = Grid2D(4.0, 4.0, 60, 60)
        for t in (0.13, 1.01):
            f = sample_2d("planar", PLA, grid, t)
            wet = f.h > 1e-9
            xx = np.broadcast_to(grid.x_centers[:, None], f.h.shape)[wet]
            yy = np.broadcast_to(grid.y_centers[None, :], f.h.shape)[wet]
            eta = f.surface[wet]
            a = np.column_stack([xx, yy, np.ones_like(xx)])
            coeffs, *_ = np.linalg.lstsq(a, eta, rcond=None)
            assert np.max(np.abs(eta - a @ coeffs)) < 1e-10

    def test_volume_constant_over_period(self):
        # wet set is a disk of radius a about the rotating center
        def volume(t):
            om = PLA.pulsation
            cx = 2.0 + PLA.offset * math.cos(om * t)
            cy = 2.0 + PLA.offset * math.sin(om * t)
            thetas = np.linspace(0.0, 2.0 * math.pi, 65)[:-1]
            total = 0.0
            for theta in thetas:
                def integrand(rho):
                    rho = np.atleast_1d(rho)
                    vals = [thacker_planar(PLA, t, cx + r * math.cos(theta),
                                           cy + r * math.sin(theta))[0] * r for r in rho]
                    return np.array(vals)
                total += gauss_legendre_integral(integrand, 0.0, PLA.radius, order=12)
            return total * (2.0 * math.pi / 64.0)
        v0 = volume(0.0)
        assert v0 == pytest.approx(math.pi * PLA.depth * PLA.radius ** 2 / 2.0, rel=1e-9)
        for t in np.linspace(0.0, PLA.period, 5):
            assert volume(t) == pytest.approx(v0, rel=1e-6)


class TestSampson:
    def test_rates(self):
        assert SAM.peak_rate == pytest.approx(0.009338094023943002, rel=1e-12)
        assert SAM.damped_rate == pytest.approx(0.004642197755374064, rel=1e-12)

    def test_underdamped_required(self):
        with pytest.raises(DomainError):
            SampsonSpec(drag=1.0)

    def test_initial_velocity_zero(self):
        xs = np.linspace(2000.0, 8000.0, 21)
        _, u = sampson(SAM, 0.0, xs)
        np.testing.assert_allclose(u, 0.0, atol=0.0)

    def test_wet_span_constant(self):
        for t in (0.0, 500.0, 2000.0, 5999.0):
            x1, x2 = sampson_shorelines(SAM, t)
            assert x2 - x1 == pytest.approx(2.0 * SAM.half_width, rel=1e-14)

    def test_shoreline_heights_vanish(self):
        for t in (0.0, 700.0, 3100.0):
            x1, x2 = sampson_shorelines(SAM, t)
            h1, _ = sampson(SAM, t, x1 + 1e-6)
            h2, _ = sampson(SAM, t, x2 - 1e-6)
            assert h1 < 1e-7 and h2 < 1e-7

    def test_planar_free_surface(self):
        for t in (100.0, 2500.0):
            x1, x2 = sampson_shorelines(SAM, t)
            xs = np.linspace(x1 + 50.0, x2 - 50.0, 64)
            h, _ = sampson(SAM, t, xs)
            eta = h + bowl_sampson(SAM, xs)
            assert affine_fit_residual(xs, eta) < 1e-10

    def test_velocity_envelope(self):
        rng = np.random.default_rng(17)
        times = rng.uniform(0.0, 6000.0, size=1000)
        xs = np.linspace(0.0, SAM.length, 101)
        for t in times:
            _, u = sampson(SAM, float(t), xs)
            assert np.max(np.abs(u)) <= SAM.amplitude * math.exp(-SAM.drag * t / 2.0) + 1e-14

    def test_volume_constant(self):
        def volume(t):
            x1, x2 = sampson_shorelines(SAM, t)
            return gauss_legendre_integral(lambda x: sampson(SAM, t, x)[0], x1, x2, order=12)
        v0 = volume(0.0)
        assert v0 == pytest.approx(4.0 / 3.0 * SAM.depth * SAM.half_width, rel=1e-9)
        for t in np.linspace(0.0, 6000.0, 7):
            assert volume(t) == pytest.approx(v0, rel=1e-6)


class TestSampling:
    def test_sample_1d_topography(self):
        grid = Grid1D(4.0, 100)
        ff = sample_1d("thacker1d", T1D, grid, 0.0)
        np.testing.assert_allclose(ff.z, bowl_1d(T1D, grid.centers))
        assert np.all(ff.u[ff.h == 0.0] == 0.0)

    def test_sample_2d_dry_exterior_reports_basin(self):
        grid = Grid2D(4.0, 4.0, 21, 21)
        f = sample_2d("radial", RAD, grid, 0.0)
        corner_z = paraboloid(RAD, grid.x_centers[0], grid.y_centers[0])
        assert f.z[0, 0] == pytest.approx(corner_z)
        assert f.h[0, 0] == 0.0
        assert f.u[0, 0] == 0.0
