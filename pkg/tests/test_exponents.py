import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from varhardy.exponents import (
    ConjugateUnboundedError,
    DomainKindError,
    ExponentRangeError,
    PeriodicityError,
    PieceLayoutError,
    conjugate,
    constant_exponent,
    counterexample_exponent,
    essential_bounds,
    exponent_from_config,
    lh_demo_exponent,
    lh_infinity_constant,
    log_holder_constant,
    make_piecewise_exponent,
    resolve_exponent,
)

TWO_PI = 2.0 * math.pi
THIRD = math.pi / 3.0


def test_constant_piece_bounds():
    p = make_piecewise_exponent([((0.0, TWO_PI), "constant", (2.0,))])
    assert essential_bounds(p) == (2.0, 2.0)


class TestCounterexampleExponent:
    def test_bounds_exact(self, sec3):
        assert essential_bounds(sec3) == (2.0, 3.0)

    def test_plateau_values(self, sec3):
        assert sec3(0.0) == 3.0
        assert sec3(math.pi) == 2.0
        assert float(sec3(np.array(2 * THIRD))) == pytest.approx(2.0, abs=1e-12)

    def test_seam_continuity(self, sec3):
        # cos(pi/3) + 5/2 = 3 and cos(2*pi/3) + 5/2 = 2 close the plateaus
        for seam in (THIRD, 2 * THIRD, 4 * THIRD, 5 * THIRD):
            below = float(sec3(seam - 1e-9))
            at = float(sec3(seam))
            assert at == pytest.approx(below, abs=1e-8)

    def test_periodic_closure(self, sec3):
        assert float(sec3(TWO_PI)) == float(sec3(0.0))

    def test_sampled_values_stay_in_range(self, sec3):
        t = np.linspace(0.0, TWO_PI, 4096)
        vals = sec3(t)
        assert np.all(vals >= 2.0 - 1e-12)
        assert np.all(vals <= 3.0 + 1e-12)


class TestConstructionErrors:
    def test_periodicity_mismatch_rejected(self):
        with pytest.raises(PeriodicityError):
            make_piecewise_exponent([
                ((0.0, math.pi), "constant", (2.0,)),
                ((math.pi, TWO_PI), "constant", (3.0,)),
            ])

    def test_gap_rejected(self):
        with pytest.raises(PieceLayoutError):
            make_piecewise_exponent([
                ((0.0, 1.0), "constant", (2.0,)),
                ((2.0, TWO_PI), "constant", (2.0,)),
            ])

    def test_overlap_rejected(self):
        with pytest.raises(PieceLayoutError):
            make_piecewise_exponent([
                ((0.0, 4.0), "constant", (2.0,)),
                ((3.0, TWO_PI), "constant", (2.0,)),
            ])

    def test_value_below_one_rejected(self):
        with pytest.raises(ExponentRangeError):
            make_piecewise_exponent([((0.0, TWO_PI), "constant", (0.5,))])

    def test_value_above_ceiling_rejected(self):
        with pytest.raises(ExponentRangeError):
            make_piecewise_exponent([((0.0, TWO_PI), "constant", (100.0,))])

    def test_incomplete_circle_rejected(self):
        with pytest.raises(PieceLayoutError):
            make_piecewise_exponent([((0.0, math.pi), "constant", (2.0,))])


def test_affine_closure_bounds():
    # rises 1 -> 2 on the first half, falls back on the second
    p = make_piecewise_exponent([
        ((0.0, math.pi), "affine", (1.0 / math.pi, 1.0)),
        ((math.pi, TWO_PI), "affine", (-1.0 / math.pi, 3.0)),
    ])
    lo, hi = essential_bounds(p)
    assert lo == pytest.approx(1.0, abs=1e-12)
    assert hi == pytest.approx(2.0, abs=1e-12)


class TestConjugate:
    def test_constant_two_self_conjugate(self, p2):
        q = conjugate(p2)
        assert float(q(1.0)) == pytest.approx(2.0, abs=1e-12)
        assert (q.p_min, q.p_max) == (2.0, 2.0)

    def test_constant_three(self):
        q = conjugate(constant_exponent(3.0))
        assert float(q(0.3)) == pytest.approx(1.5, abs=1e-12)

    def test_sec3_at_pi(self, sec3):
        assert float(conjugate(sec3)(math.pi)) == pytest.approx(2.0, abs=1e-12)

    def test_involution_returns_base(self, sec3):
        assert conjugate(conjugate(sec3)) is sec3

    def test_pointwise_identity(self, sec3):
        t = np.linspace(0.0, TWO_PI, 257)
        p, q = sec3(t), conjugate(sec3)(t)
        assert np.max(np.abs(1.0 / p + 1.0 / q - 1.0)) < 1e-12

    def test_unbounded_conjugate_rejected(self):
        with pytest.raises(ConjugateUnboundedError):
            conjugate(constant_exponent(1.0))

    @given(st.floats(min_value=0.0, max_value=TWO_PI))
    def test_involution_pointwise(self, t):
        sec3 = counterexample_exponent()
        q = conjugate(sec3)
        back = float(q(t)) / (float(q(t)) - 1.0)
        assert back == pytest.approx(float(sec3(t)), rel=1e-12)


class TestLogHolder:
    def test_constant_exponent_zero(self, p2):
        assert log_holder_constant(p2, 64).c_log_estimate == 0.0

    def test_sec3_estimate_finite(self, sec3):
        # slope of the cosine joins is at most 1, so the constant is bounded
        # by max over h <= 1/2 of h * log(1/h) = log(2)/2 < 0.37
        rep = log_holder_constant(sec3, 512)
        assert 0.0 < rep.c_log_estimate <= 0.37
        assert rep.is_log_holder(10.0)

    def test_monotone_under_refinement(self, sec3):
        estimates = [log_holder_constant(sec3, n).c_log_estimate
                     for n in (64, 128, 256, 512)]
        assert all(a <= b + 1e-15 for a, b in zip(estimates, estimates[1:]))

    def test_step_exponent_diverges(self):
        step = make_piecewise_exponent(
            [((-math.inf, 0.0), "constant", (2.0,)),
             ((0.0, math.inf), "constant", (3.0,))],
            domain="line",
        )
        coarse = log_holder_constant(step, 64).c_log_estimate
        fine = log_holder_constant(step, 4096).c_log_estimate
        assert fine > coarse
        assert not log_holder_constant(step, 4096).is_log_holder(5.0)


class TestLhInfinity:
    def test_constant_zero(self):
        p = constant_exponent(2.0, domain="line")
        assert lh_infinity_constant(p, 2.0, np.linspace(-50, 50, 101)) == 0.0

    def test_log_decay_exact_cancellation(self, lh_demo):
        # p(x) - 2 = 1/log(e + |x|) cancels the weight exactly, on any grid
        for grid in (np.linspace(-5, 5, 11), np.geomspace(1, 1e8, 33)):
            val = lh_infinity_constant(lh_demo, 2.0, grid)
            assert val == pytest.approx(1.0, abs=1e-12)

    def test_inverse_quadratic_decay_attained_at_moderate_x(self):
        class InverseQuadratic:
            domain = "line"

            def __call__(self, t):
                t = np.asarray(t, dtype=float)
                return 2.0 + 1.0 / (1.0 + t * t)

        grid = np.geomspace(0.01, 1e6, 301)
        p = InverseQuadratic()
        val = lh_infinity_constant(p, 2.0, grid)
        assert math.isfinite(val)
        products = np.abs(p(grid) - 2.0) * np.log(math.e + grid)
        argmax = grid[int(np.argmax(products))]
        assert 0.1 < argmax < 100.0  # the product vanishes at both ends

    def test_circle_rejected(self, sec3):
        with pytest.raises(DomainKindError):
            lh_infinity_constant(sec3, 2.0, [0.0, 1.0])


class TestConfig:
    def test_round_trip(self):
        cfg = {
            "domain": "circle",
            "pieces": [
                {"interval": [0.0, math.pi], "kind": "constant", "params": [2.0]},
                {"interval": [math.pi, 1.5 * math.pi], "kind": "affine",
                 "params": [2.0 / math.pi, 0.0]},
                {"interval": [1.5 * math.pi, TWO_PI], "kind": "affine",
                 "params": [-2.0 / math.pi, 6.0]},
            ],
        }
        p = exponent_from_config(cfg)
        assert float(p(0.5)) == 2.0
        assert float(p(1.25 * math.pi)) == pytest.approx(2.5, abs=1e-12)
        assert float(p(1.5 * math.pi)) == pytest.approx(3.0, abs=1e-12)

    def test_unknown_keys_rejected(self):
        with pytest.raises(Exception, match="unknown"):
            exponent_from_config({"domain": "circle", "pieces": [], "bogus": 1})

    def test_reserved_names(self, sec3, lh_demo):
        assert essential_bounds(resolve_exponent("paper-sec3")) == (2.0, 3.0)
        assert resolve_exponent("lh-demo").p_infinity == 2.0
        assert resolve_exponent("constant:2.5").p_min == 2.5
        assert resolve_exponent("constant:2:line").domain == "line"

    def test_lh_demo_profile(self, lh_demo):
        assert float(lh_demo(0.0)) == 3.0
        assert essential_bounds(lh_demo) == (2.0, 3.0)
