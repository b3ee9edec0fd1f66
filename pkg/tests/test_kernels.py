import cmath
import math

import numpy as np
import pytest

from varhardy.disk import dyadic_radii
from varhardy.exponents import conjugate, constant_exponent
from varhardy.kernels import (
    evaluation_bound_experiment,
    forelli_rudin_check,
    kernel_boundary_values,
    kernel_hardy_norm,
    kernel_sampler,
    phi_majorization_check,
)

TWO_PI = 2.0 * math.pi


class TestKernelBoundaryValues:
    def test_center_kernel_is_constant(self):
        f = kernel_boundary_values(0.0, 0.9, 64)
        assert np.max(np.abs(f.values - 1.0)) < 1e-14

    def test_origin_circle(self):
        f = kernel_boundary_values(0.5, 0.0, 64)
        assert np.max(np.abs(f.values - 1.0)) < 1e-14

    def test_peak_location_and_height(self):
        z, r = 0.9, 0.99
        f = kernel_boundary_values(z, r, 2**12)
        peak = int(np.argmax(np.abs(f.values)))
        assert min(f.nodes[peak], TWO_PI - f.nodes[peak]) < 0.01
        assert np.max(np.abs(f.values)) == pytest.approx(1.0 / (1.0 - z * r),
                                                         rel=1e-4)

    def test_radius_validation(self):
        with pytest.raises(ValueError):
            kernel_boundary_values(0.5, 1.0, 64)
        with pytest.raises(ValueError):
            kernel_sampler(1.0)


class TestKernelHardyNorm:
    def test_center_kernel(self, p2):
        value = kernel_hardy_norm(0.0, p2, dyadic_radii(6), n=512)
        assert value == pytest.approx(math.sqrt(TWO_PI), rel=1e-9)

    def test_classical_l2_growth(self, p2):
        # ||K_z(r .)||_2^2 = 2 pi / (1 - (|z| r)^2) -> 2 pi / (1 - |z|^2)
        z = 0.9
        value = kernel_hardy_norm(z, p2, dyadic_radii(12), n=2**12)
        closed = math.sqrt(TWO_PI / (1.0 - z * z))
        assert 0.5 <= value / closed <= 2.0

    def test_monotone_along_ray(self, sec3):
        q = conjugate(sec3)
        norms = [kernel_hardy_norm((1.0 - 2.0**-k) * cmath.exp(1j * math.pi), q,
                                   dyadic_radii(k + 4), n=2**11)
                 for k in range(3, 7)]
        assert all(a <= b + 1e-9 for a, b in zip(norms, norms[1:]))


class TestEvaluationBound:
    def test_constant_exponent_slope(self, p2):
        report = evaluation_bound_experiment(p2, 0.0, range(3, 11), n=2**12)
        assert report.fitted_slope == pytest.approx(-0.5, abs=0.05)
        assert report.theoretical_slope == -0.5
        assert not report.unreliable_fit

    def test_points_decreasing_scale(self, p2):
        report = evaluation_bound_experiment(p2, 0.0, range(3, 8), n=2**11)
        scales = [a for a, _ in report.points]
        assert scales == sorted(scales, reverse=True)

    def test_csv_rows(self, p2):
        report = evaluation_bound_experiment(p2, 0.0, range(3, 6), n=2**10)
        header, rows = report.to_csv_rows()
        assert header == ["log_scale", "log_value"]
        assert len(rows) == 3


class TestPhiMajorization:
    def test_constant_exponent_ratio_is_one(self, p2):
        report = phi_majorization_check(p2, 0.95, 0.9)
        assert report.max_ratio == pytest.approx(1.0, abs=1e-12)

    def test_sec3_bounded(self, sec3):
        report = phi_majorization_check(sec3, 0.9, 0.75)
        assert 1.0 <= report.max_ratio <= 5.0

    def test_estimate_chain(self, sec3):
        report = phi_majorization_check(sec3, 0.99 * cmath.exp(0.5j * math.pi), 0.95)
        assert report.e1_integral <= TWO_PI + 1e-9
        assert report.e2_integral <= report.max_ratio * report.reference_integral + 1e-9

    def test_grid_stability(self, sec3):
        base = phi_majorization_check(sec3, 0.95 * cmath.exp(1j * math.pi / 2), 0.9,
                                      n=2**12).max_ratio
        fine = phi_majorization_check(sec3, 0.95 * cmath.exp(1j * math.pi / 2), 0.9,
                                      n=2**13).max_ratio
        assert abs(fine - base) / base <= 0.01

    def test_r_precondition(self, sec3):
        with pytest.raises(ValueError):
            phi_majorization_check(sec3, 0.9, 0.4)


class TestForelliRudin:
    def test_s2_closed_form_per_point(self):
        report = forelli_rudin_check(2.0, dyadic_radii(8, start=3))
        for scale, value in report.points:
            rho = 1.0 - scale
            closed = TWO_PI / (1.0 - rho * rho)
            assert value == pytest.approx(closed, rel=1e-8)

    def test_s2_band_tends_to_pi(self):
        report = forelli_rudin_check(2.0, dyadic_radii(10, start=3))
        scale, value = report.points[-1]
        assert scale * value == pytest.approx(math.pi, rel=1e-3)
        lo, hi = report.normalized_band
        assert math.pi * 0.9 <= lo <= hi <= math.pi * 1.2

    def test_s15_slope(self):
        report = forelli_rudin_check(1.5)
        assert report.fitted_slope == pytest.approx(-0.5, abs=0.05)
        assert report.theoretical_slope == -0.5

    def test_s_precondition(self):
        with pytest.raises(ValueError):
            forelli_rudin_check(1.0)
