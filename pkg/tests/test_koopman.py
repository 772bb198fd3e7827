import random
from fractions import Fraction as F

import mpmath
import pytest
from mpmath import mpf

from kazhlip import (
    DomainError,
    PLHomeo,
    StepFunction,
    inner_product,
    koopman_apply,
    koopman_distortion,
    lp_norm,
    mazur_map,
    normalize,
    subtract,
    window_vector,
)
from kazhlip.koopman import mazur_upper_ratio, refine
from kazhlip.verify import random_plhomeo, random_step_function

TOL = mpf("1e-12")
BUMP = PLHomeo.from_pairs([(0, 0), (1, 2), (3, 3)])


def brute_force_lp(xi, p, grid=10000):
    """Riemann-sum oracle on a uniform rational grid over the support."""
    a, b = xi.support
    h = F(b - a, grid)
    total = mpf(0)
    for i in range(grid):
        x = a + h * i
        total += abs(xi.value_at(x)) ** mpf(p) * mpf(h.numerator) / mpf(h.denominator)
    return total ** (1 / mpf(p))


class TestLpNorm:
    def test_unit_indicator(self):
        for p in (1, 2, 3.5, 16):
            assert abs(lp_norm(StepFunction.indicator(0, 1), p) - 1) <= TOL

    def test_window_is_unit(self):
        assert abs(lp_norm(window_vector(2, 2), 2) - 1) <= TOL

    def test_p4_example(self):
        xi = StepFunction((F(0), F(1), F(2)), (mpf(2), mpf(0)))
        assert abs(lp_norm(xi, 4) - 2) <= TOL

    def test_against_riemann_oracle(self):
        rng = random.Random(3)
        for _ in range(5):
            xi = random_step_function(rng, max_pieces=4, max_mag=10)
            p = rng.choice([1, 2, 4])
            # step functions are exactly integrable; the grid sum is exact
            # once the grid refines the breakpoints, so compare loosely
            assert abs(lp_norm(xi, p) - brute_force_lp(xi, p, 4096)) < mpf("0.1")

    def test_invalid_exponent(self):
        with pytest.raises(DomainError):
            lp_norm(StepFunction.indicator(0, 1), F(1, 2))


class TestInnerProduct:
    def test_disjoint_supports(self):
        assert inner_product(
            StepFunction.indicator(0, 1), StepFunction.indicator(2, 3)
        ) == 0

    def test_self_inner_product_is_norm_squared(self):
        rng = random.Random(5)
        for _ in range(10):
            xi = random_step_function(rng)
            assert abs(inner_product(xi, xi) - lp_norm(xi, 2) ** 2) <= TOL

    def test_overlap_length(self):
        got = inner_product(StepFunction.indicator(0, 2), StepFunction.indicator(1, 3))
        assert abs(got - 1) <= TOL


class TestKoopmanApply:
    def test_translation_shifts(self):
        xi = StepFunction.indicator(0, 1, 3)
        out = koopman_apply(PLHomeo.translation(F(5, 2)), xi, 7)
        assert out.breakpoints == (F(5, 2), F(7, 2))
        assert out.values == (mpf(3),)

    def test_slope_weight(self):
        out = koopman_apply(BUMP, StepFunction.indicator(0, 1), 2)
        assert out.breakpoints == (F(0), F(2))
        assert abs(out.values[0] - 1 / mpmath.sqrt(2)) <= TOL

    def test_identity_acts_trivially(self):
        rng = random.Random(11)
        for _ in range(10):
            xi = random_step_function(rng)
            out = koopman_apply(PLHomeo.identity(), xi, 2)
            assert out.breakpoints == xi.breakpoints
            assert all(abs(u - v) == 0 for u, v in zip(out.values, xi.values))

    def test_isometry_random(self):
        rng = random.Random(13)
        for _ in range(50):
            g = random_plhomeo(rng, max_nodes=5, max_mag=40)
            xi = random_step_function(rng)
            p = rng.choice([1, 2, 4, 16])
            n0, n1 = lp_norm(xi, p), lp_norm(koopman_apply(g, xi, p), p)
            assert abs(n1 - n0) <= TOL * n0

    def test_homomorphism_random(self):
        rng = random.Random(17)
        for _ in range(30):
            f = random_plhomeo(rng, max_nodes=4, max_mag=30)
            g = random_plhomeo(rng, max_nodes=4, max_mag=30)
            xi = random_step_function(rng, max_pieces=4)
            p = rng.choice([1, 2, 4, 16])
            lhs = koopman_apply(f.compose(g), xi, p)
            rhs = koopman_apply(f, koopman_apply(g, xi, p), p)
            assert max(abs(u - v) for _, _, u, v in refine(lhs, rhs)) <= TOL


class TestDistortion:
    def test_identity_zero(self):
        assert koopman_distortion(PLHomeo.identity(), window_vector(2, 2), 2) == 0

    def test_translation_window_closed_form(self):
        # overlap oracle: <pi(t_c) xi_n, xi_n> = (2n - c)/(2n) for 0 <= c <= 2n
        t = PLHomeo.translation(1)
        got = koopman_distortion(t, window_vector(2, 2), 2)
        assert abs(got - mpmath.sqrt(mpf(1) / 2)) <= TOL
        for n in (1, 2, 4, 64):
            d = koopman_distortion(t, window_vector(n, 2), 2)
            assert abs(d - 1 / mpmath.sqrt(n)) <= TOL

    def test_translation_overlap_inner_product(self):
        t = PLHomeo.translation(1)
        for n in (1, 2, 8):
            xi = window_vector(n, 2)
            ip = inner_product(koopman_apply(t, xi, 2), xi)
            assert abs(ip - mpf(2 * n - 1) / (2 * n)) <= TOL

    def test_disjoint_support_escape(self):
        # moving a unit window completely off itself gives distortion 2^{1/p}
        far = PLHomeo.translation(10)
        for p in (1, 2, 4):
            xi = window_vector(2, p)
            d = koopman_distortion(far, xi, p)
            assert abs(d - 2 ** (1 / mpf(p))) <= TOL


class TestWindowVector:
    def test_p2_value(self):
        xi = window_vector(1, 2)
        assert xi.breakpoints == (F(-1), F(1))
        assert abs(xi.values[0] - 1 / mpmath.sqrt(2)) <= TOL

    def test_p4_value(self):
        xi = window_vector(8, 4)
        assert abs(xi.values[0] - mpf(1) / 2) <= TOL

    def test_always_unit(self):
        for n in (F(1, 3), 1, 7, 4096):
            for p in (1, 2, 16):
                assert abs(lp_norm(window_vector(n, p), p) - 1) <= TOL

    def test_rejects_nonpositive_radius(self):
        with pytest.raises(DomainError):
            window_vector(0, 2)


class TestMazurMap:
    def test_indicator_fixed(self):
        xi = StepFunction.indicator(0, 1)
        out = mazur_map(xi, 2, 16)
        assert out.values == (mpf(1),)

    def test_power_example(self):
        xi = StepFunction((F(0), F(1), F(2)), (mpf(4), mpf(0)))
        out = mazur_map(xi, 2, 4)
        assert abs(out.values[0] - 2) <= TOL and out.values[1] == 0

    def test_preserves_sign(self):
        xi = StepFunction((F(0), F(1)), (mpf(-4),))
        assert mazur_map(xi, 2, 4).values[0] < 0

    def test_unit_sphere_to_unit_sphere(self):
        rng = random.Random(23)
        for _ in range(20):
            q, p = rng.choice([(2, 4), (2, 16), (1, 2)])
            xi = normalize(random_step_function(rng), q)
            assert abs(lp_norm(mazur_map(xi, q, p), p) - 1) <= TOL

    def test_lower_bound_random_pairs(self):
        rng = random.Random(29)
        for _ in range(30):
            q, p = rng.choice([(2, 4), (2, 16), (1, 2)])
            xi = normalize(random_step_function(rng), q)
            eta = normalize(random_step_function(rng), q)
            lhs = mpf(q) / p * lp_norm(subtract(xi, eta), q)
            rhs = lp_norm(subtract(mazur_map(xi, q, p), mazur_map(eta, q, p)), p)
            assert lhs <= rhs + TOL

    def test_upper_ratio_reported(self):
        xi = normalize(StepFunction.indicator(0, 1), 2)
        eta = normalize(StepFunction.indicator(0, 2), 2)
        assert mazur_upper_ratio(xi, eta, 2, 4) > 0
