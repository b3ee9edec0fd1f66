import cmath
import math

import numpy as np
import pytest

from varhardy.boundary import CircleFunction, seeded_trig_polynomial
from varhardy.disk import (
    DiskSampler,
    boundary_recovery_check,
    dyadic_radii,
    fourier_coefficients,
    hardy_norm,
    inclusion_check,
    membership_pair_report,
    poisson_convergence_check,
    poisson_dilate,
    poisson_extension,
    poisson_kernel,
    polynomial_sampler,
    power_sampler,
    reproduce_at,
    szego_project,
)
from varhardy.norms import luxemburg_norm

TWO_PI = 2.0 * math.pi


def wave(k, n=256):
    return CircleFunction.from_callable(lambda t: np.exp(1j * k * t), n)


class TestFourier:
    def test_single_wave(self):
        c = fourier_coefficients(wave(1))
        assert c[1] == pytest.approx(1.0, abs=1e-13)
        others = [c[k] for k in range(-8, 9) if k != 1]
        assert max(abs(v) for v in others) < 1e-13

    def test_constant(self):
        c = fourier_coefficients(CircleFunction(np.ones(64)))
        assert c[0] == pytest.approx(1.0, abs=1e-14)

    def test_cosine_splits(self):
        c = fourier_coefficients(CircleFunction.from_callable(
            lambda t: np.cos(t) + 0j, 64))
        assert c[1] == pytest.approx(0.5, abs=1e-14)
        assert c[-1] == pytest.approx(0.5, abs=1e-14)

    def test_inverse_reproduces_samples(self):
        f = seeded_trig_polynomial(11, n=128)
        back = fourier_coefficients(f).to_samples()
        assert np.max(np.abs(back - f.values)) < 1e-12


class TestPoissonKernel:
    def test_center(self):
        for phase in (1.0, 1j, cmath.exp(0.3j)):
            assert poisson_kernel(0.0, phase) == pytest.approx(1.0, abs=1e-15)

    def test_half_values(self):
        assert poisson_kernel(0.5, 1.0) == pytest.approx(3.0, abs=1e-14)
        assert poisson_kernel(0.5, -1.0) == pytest.approx(1.0 / 3.0, abs=1e-14)

    def test_normalized_mass(self):
        zeta = np.exp(1j * np.arange(512) * (TWO_PI / 512))
        z = 0.3 + 0.2j
        mass = np.mean((1.0 - abs(z) ** 2) / np.abs(z - zeta) ** 2)
        assert mass == pytest.approx(1.0, abs=1e-12)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            poisson_kernel(1.0, 1.0)


class TestDilation:
    def test_wave_eigenfunction(self):
        for k in (-7, 0, 3):
            f = wave(k, 128)
            out = poisson_dilate(f, 0.8)
            expected = 0.8 ** abs(k) * f.values
            assert np.max(np.abs(out.values - expected)) < 1e-13

    def test_constant_fixed(self):
        f = CircleFunction(np.ones(64))
        assert np.max(np.abs(poisson_dilate(f, 0.37).values - 1.0)) < 1e-14

    def test_matches_kernel_quadrature(self):
        """Oracle: normalized-measure Riemann sum of the kernel integral."""
        f = seeded_trig_polynomial(5, degree=8, n=256)
        r = 0.9
        out = poisson_dilate(f, r)
        zeta = np.exp(1j * f.nodes)
        for j in (0, 17, 100):
            z = r * zeta[j]
            direct = np.mean((1.0 - abs(z) ** 2) / np.abs(z - zeta) ** 2 * f.values)
            assert abs(direct - out.values[j]) < 1e-10

    def test_semigroup(self):
        f = seeded_trig_polynomial(9, n=128)
        lhs = poisson_dilate(poisson_dilate(f, 0.9), 0.8).values
        rhs = poisson_dilate(f, 0.72).values
        assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_radius_validation(self):
        with pytest.raises(ValueError):
            poisson_dilate(wave(1), 1.0)


class TestConvergence:
    def test_deficits_decrease(self, sec3):
        f = seeded_trig_polynomial(2, degree=8, n=256)
        scale = luxemburg_norm(f, sec3).value
        f = f.map_values(f.values / scale)
        report = poisson_convergence_check(f, sec3, (0.9, 0.99, 0.999))
        d = report.deficits
        assert d[0] > d[1] > d[2]
        assert d[2] < 1e-2
        assert report.uniform_bound_ok

    def test_constant_has_zero_deficit(self, sec3):
        f = CircleFunction(np.ones(256))
        report = poisson_convergence_check(f, sec3, (0.5, 0.9))
        assert max(report.deficits) < 1e-13

    def test_dilation_ratio_contraction_on_corpus(self, sec3):
        for seed in range(20):
            f = seeded_trig_polynomial(seed, n=256)
            report = poisson_convergence_check(f, sec3, (0.5, 0.9, 0.99))
            assert report.sup_dilation_ratio <= 1.0 + 1e-9

    def test_irregular_exponent_rejected(self):
        from varhardy.exponents import make_piecewise_exponent

        jumpy = make_piecewise_exponent([
            ((0.0, math.pi), "constant", (2.0,)),
            ((math.pi, 1.5 * math.pi), "constant", (3.0,)),
            ((1.5 * math.pi, TWO_PI), "affine", (-2.0 / math.pi, 6.0)),
        ])
        f = CircleFunction(np.ones(256))
        with pytest.raises(ValueError, match="regularity"):
            poisson_convergence_check(f, jumpy, (0.5,), regularity_ceiling=3.0)


class TestSzego:
    def test_annihilates_negative_wave(self):
        out = szego_project(wave(-1))
        assert np.max(np.abs(out.values)) < 1e-13

    def test_fixes_positive_wave(self):
        f = wave(1)
        assert np.max(np.abs(szego_project(f).values - f.values)) < 1e-13

    def test_idempotent_on_coefficients(self):
        f = seeded_trig_polynomial(3, n=128)
        c = np.fft.fft(f.values)
        freqs = np.fft.fftfreq(128, d=1.0 / 128)
        mask = (freqs >= 0).astype(float)
        assert np.array_equal(mask * (mask * c), mask * c)

    def test_complement_is_negative_frequencies(self):
        f = seeded_trig_polynomial(6, n=128)
        tail = f.map_values(f.values - szego_project(f).values)
        c = fourier_coefficients(tail)
        for k in range(0, 64):
            assert abs(c[k]) < 1e-13


class TestHardyNorm:
    def test_constant_sampler(self, sec3):
        sampler = DiskSampler(lambda z: np.ones(np.shape(z), dtype=complex))
        report = hardy_norm(sampler, sec3, dyadic_radii(6), n=1024)
        expected = luxemburg_norm(CircleFunction(np.ones(1024)), sec3).value
        assert report.member is True
        assert report.hardy_norm == pytest.approx(expected, rel=1e-9)

    def test_integrable_power_is_member(self, p2):
        report = hardy_norm(power_sampler(0.45), p2, dyadic_radii(12), n=2**12)
        assert report.member is True

    def test_nonintegrable_power_is_not_member(self, p2):
        report = hardy_norm(power_sampler(0.6), p2, dyadic_radii(12), n=2**12)
        assert report.member is False
        # modular blow-up follows (1 - r)^(1 - 2 s) = (1 - r)^-0.2
        assert report.modular_growth_exponent == pytest.approx(-0.2, abs=0.05)

    def test_schedule_validation(self, p2):
        with pytest.raises(ValueError):
            hardy_norm(power_sampler(0.45), p2, (0.9, 0.5))

    def test_workers_do_not_change_results(self, sec3):
        sampler = power_sampler(0.45)
        serial = hardy_norm(sampler, sec3, dyadic_radii(6), n=1024, workers=1)
        threaded = hardy_norm(sampler, sec3, dyadic_radii(6), n=1024, workers=3)
        assert serial.as_dict() == threaded.as_dict()


class TestBoundaryRecovery:
    def test_constant(self):
        u = CircleFunction(np.ones(256))
        assert boundary_recovery_check(poisson_extension(u), u) < 1e-13

    def test_cosine_linear_rate(self):
        u = CircleFunction.from_callable(lambda t: np.cos(t) + 0j, 256)
        r_max = 1.0 - 2.0**-12
        deviation = boundary_recovery_check(poisson_extension(u), u, r_max)
        assert deviation <= (1.0 - r_max) + 1e-12

    def test_degree_eight_polynomial(self):
        u = seeded_trig_polynomial(8, degree=8, n=256)
        assert boundary_recovery_check(poisson_extension(u), u) < 1e-2


class TestInclusion:
    def test_constant_half(self, sec3):
        sampler = DiskSampler(lambda z: np.full(np.shape(z), 0.5 + 0j))
        report = inclusion_check(sampler, sec3)
        for value in (report.norm_p_max, report.norm_variable, report.norm_p_min):
            assert math.isfinite(value) and value > 0
        assert max(report.c_upper, report.c_lower) <= 1.0 + TWO_PI

    def test_zero(self, sec3):
        sampler = DiskSampler(lambda z: np.zeros(np.shape(z), dtype=complex))
        report = inclusion_check(sampler, sec3)
        assert report.norm_variable == 0.0
        assert report.c_upper == 0.0 and report.c_lower == 0.0

    def test_bounded_corpus(self, sec3):
        worst = 0.0
        for seed in range(20):
            sampler = poisson_extension(seeded_trig_polynomial(seed, degree=6, n=128))
            report = inclusion_check(sampler, sec3, dyadic_radii(6), n=512)
            worst = max(worst, report.c_upper, report.c_lower)
        assert worst <= 1.0 + TWO_PI


class TestReproducing:
    def test_cube(self):
        sampler = polynomial_sampler([0.0, 0.0, 0.0, 1.0])
        z = 0.3 + 0.4j
        assert abs(reproduce_at(sampler, z) - z**3) < 1e-10

    def test_constant(self):
        sampler = polynomial_sampler([2.5 - 1.0j])
        for z in (0.0, 0.5j, -0.7):
            assert abs(reproduce_at(sampler, z) - (2.5 - 1.0j)) < 1e-12

    def test_geometric(self):
        sampler = DiskSampler(lambda z: 1.0 / (1.0 - 0.5 * z), kind="analytic")
        assert abs(reproduce_at(sampler, 0.2) - 1.0 / 0.9) < 1e-8

    def test_requires_analytic(self):
        sampler = DiskSampler(lambda z: np.conj(z), kind="harmonic")
        with pytest.raises(ValueError, match="analytic"):
            reproduce_at(sampler, 0.1)

    def test_cauchy_riemann_gate(self):
        with pytest.raises(ValueError, match="Cauchy-Riemann"):
            DiskSampler(lambda z: np.conj(z), kind="analytic")


class TestExtensionInvariants:
    def test_mean_value_is_first_coefficient(self):
        u = seeded_trig_polynomial(21, n=128)
        sampler = poisson_extension(u)
        c0 = fourier_coefficients(u)[0]
        assert sampler(np.array([0.0 + 0.0j]))[0] == c0

    def test_harmonicity_second_order(self):
        u = seeded_trig_polynomial(13, n=128)
        sampler = poisson_extension(u)

        def laplacian(z, h):
            stencil = np.array([z + h, z - h, z + 1j * h, z - 1j * h, z])
            vals = sampler(stencil)
            return abs(vals[0] + vals[1] + vals[2] + vals[3] - 4 * vals[4]) / h**2

        z = 0.3 + 0.2j
        coarse, fine = laplacian(z, 1e-3), laplacian(z, 5e-4)
        assert fine < 1e-5 and coarse < 1e-4

    def test_hardy_norm_comparable_to_boundary_norm(self, sec3):
        u = seeded_trig_polynomial(17, n=512)
        boundary = luxemburg_norm(u, sec3).value
        report = hardy_norm(poisson_extension(u), sec3, dyadic_radii(10), n=512)
        ratio = report.hardy_norm / boundary
        assert 0.9 <= ratio <= 2.0


class TestMembershipPair:
    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            membership_pair_report(2.5, 0.2)  # 1/q + eps = 0.6 >= 1/2
        with pytest.raises(ValueError):
            membership_pair_report(1.5, 0.05)  # q out of (2, 3]
        with pytest.raises(ValueError):
            membership_pair_report(2.5, 0.0)  # eps must be positive

    def test_q3_small_eps(self):
        # 3 (1/3 + 0.01) > 1, so g leaves the space, but its modular growth
        # (1-r)^-0.03 is slower than the divergence rule's -0.05 threshold
        # can certify; the conservative verdict must not affirm membership.
        report = membership_pair_report(3.0, 0.01, dyadic_radii(12), n=2**13)
        assert report.g_variable.member is not True
        assert report.g_variable.modular_growth_exponent < 0.0
        assert report.f_variable.member is True  # 2 (1/3 + 0.01) < 1

    def test_verdict_inconclusive_on_short_schedule(self):
        report = membership_pair_report(2.5, 0.05, dyadic_radii(10), n=2**12)
        assert report.f_variable.verdict == "inconclusive"
        assert report.f_variable.member is None
