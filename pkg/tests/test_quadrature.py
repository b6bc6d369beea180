"""Adaptive Gauss-Kronrod and tanh-sinh integrator contracts."""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from harmonia import (
    DEFAULT_SETTINGS,
    EvaluationError,
    ParameterError,
    QuadSettings,
    integrate,
    integrate_de,
)

# (integrand, lo, hi, exact) - every member is analytic on its closed
# interval so the Kronrod-minus-Gauss score is an honest error bound.
SMOOTH_CORPUS = [
    ("const", lambda t: 1.0, 0.0, 1.0, 1.0),
    ("linear", lambda t: t, 0.0, 1.0, 0.5),
    ("square", lambda t: t * t, 0.0, 2.0, 8.0 / 3.0),
    ("cubic_mix", lambda t: t**3 - 2.0 * t, -1.0, 2.0, 0.75),
    ("quintic", lambda t: t**5, 0.0, 1.0, 1.0 / 6.0),
    ("nonic", lambda t: t**9, 0.0, 1.0, 0.1),
    ("exp", math.exp, 0.0, 1.0, math.e - 1.0),
    ("gauss_bell", lambda t: math.exp(-t * t), 0.0, 1.0, math.sqrt(math.pi) / 2.0 * math.erf(1.0)),
    ("sin", math.sin, 0.0, math.pi, 2.0),
    ("cos", math.cos, 0.0, math.pi / 2.0, 1.0),
    ("t_sin", lambda t: t * math.sin(t), 0.0, math.pi, math.pi),
    ("recip", lambda t: 1.0 / t, 1.0, math.e, 1.0),
    ("log", math.log, 1.0, 2.0, 2.0 * math.log(2.0) - 1.0),
    ("arctan_kernel", lambda t: 1.0 / (1.0 + t * t), 0.0, 1.0, math.pi / 4.0),
    ("t_exp", lambda t: t * math.exp(t), 0.0, 1.0, 1.0),
    ("inv_square", lambda t: t**-2.0, 1.0, 2.0, 0.5),
    ("shifted_rational", lambda t: t / (1.0 + t) ** 2, 0.0, 0.5, math.log(1.5) - 1.0 / 3.0),
    ("sinh", math.sinh, 0.0, 1.0, math.cosh(1.0) - 1.0),
    ("periodic_rational", lambda t: 1.0 / (2.0 + math.sin(t)), 0.0, 2.0 * math.pi, 2.0 * math.pi / math.sqrt(3.0)),
    ("exp_cos", lambda t: math.exp(t) * math.cos(t), 0.0, math.pi, -(math.exp(math.pi) + 1.0) / 2.0),
]


class TestSettings:
    def test_defaults(self):
        assert DEFAULT_SETTINGS.abs_tol == 1e-10
        assert DEFAULT_SETTINGS.rel_tol == 1e-10
        assert DEFAULT_SETTINGS.max_subdivisions == 2000

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"abs_tol": 0.0},
            {"abs_tol": -1e-10},
            {"abs_tol": math.inf},
            {"rel_tol": -1e-3},
            {"rel_tol": math.nan},
            {"max_subdivisions": 0},
        ],
    )
    def test_rejects_bad_fields(self, kwargs):
        with pytest.raises(ParameterError):
            QuadSettings(**kwargs)

    @pytest.mark.parametrize("lo,hi", [(1.0, 1.0), (2.0, 1.0), (0.0, math.inf), (math.nan, 1.0)])
    def test_rejects_bad_interval(self, lo, hi):
        with pytest.raises(ParameterError):
            integrate(lambda t: t, lo, hi)
        with pytest.raises(ParameterError):
            integrate_de(lambda t: t, lo, hi)


class TestGaussKronrod:
    def test_linear(self):
        res = integrate(lambda t: t, 0.0, 1.0)
        assert res.converged
        assert abs(res.value - 0.5) <= 1e-12

    def test_inverse_square(self):
        res = integrate(lambda u: u**-2.0, 1.0, 2.0)
        assert res.converged
        assert abs(res.value - 0.5) <= 1e-12

    def test_shifted_rational(self):
        res = integrate(lambda t: t / (1.0 + t) ** 2, 0.0, 0.5)
        exact = math.log(1.5) - 1.0 / 3.0
        assert abs(exact - 0.0721317747748311) < 1e-14
        assert res.converged
        assert abs(res.value - exact) <= 1e-12

    @pytest.mark.parametrize("degree", range(0, 13))
    def test_monomial_exactness(self, degree):
        res = integrate(lambda t, d=degree: t**d, 0.0, 1.0)
        exact = 1.0 / (degree + 1.0)
        assert res.converged
        assert abs(res.value - exact) <= 1e-13 * max(1.0, abs(exact))

    def test_random_polynomial_exactness(self):
        rng = random.Random(314159)
        for _ in range(25):
            coeffs = [rng.uniform(-3.0, 3.0) for _ in range(rng.randint(1, 9))]

            def poly(t, c=tuple(coeffs)):
                acc = 0.0
                for ck in reversed(c):
                    acc = acc * t + ck
                return acc

            exact = sum(ck / (k + 1.0) for k, ck in enumerate(coeffs))
            res = integrate(poly, 0.0, 1.0)
            assert res.converged
            assert abs(res.value - exact) <= 1e-13 * max(1.0, abs(exact))

    @pytest.mark.parametrize("name,f,lo,hi,exact", SMOOTH_CORPUS, ids=[c[0] for c in SMOOTH_CORPUS])
    def test_err_estimate_bounds_true_error(self, name, f, lo, hi, exact):
        res = integrate(f, lo, hi)
        assert res.converged
        assert abs(res.value - exact) <= res.err_estimate

    def test_interval_additivity(self):
        rng = random.Random(20260816)

        def f(t):
            return math.exp(-t) * math.sin(3.0 * t) + t * t

        for _ in range(500):
            pts = sorted(rng.uniform(0.1, 3.0) for _ in range(3))
            a, b, c = pts
            if b - a < 1e-6 or c - b < 1e-6:
                continue
            whole = integrate(f, a, c)
            left = integrate(f, a, b)
            right = integrate(f, b, c)
            budget = 2.0 * (whole.err_estimate + left.err_estimate + right.err_estimate)
            assert abs(whole.value - (left.value + right.value)) <= budget + 1e-13

    def test_nonconvergence_is_flagged_not_raised(self):
        res = integrate(lambda t: abs(t - 1.0 / 3.0), 0.0, 1.0, QuadSettings(max_subdivisions=1))
        assert not res.converged
        assert res.err_estimate > 1e-10

    def test_kink_converges_with_budget(self):
        res = integrate(lambda t: abs(t - 1.0 / 3.0), 0.0, 1.0)
        exact = (1.0 / 3.0) ** 2 / 2.0 + (2.0 / 3.0) ** 2 / 2.0
        assert res.converged
        assert abs(res.value - exact) <= 1e-10

    def test_nonfinite_integrand_raises_with_abscissa(self):
        def f(t):
            return math.nan if abs(t - 0.5) < 1e-12 else 1.0

        with pytest.raises(EvaluationError) as exc:
            integrate(f, 0.0, 1.0)
        assert exc.value.abscissa == pytest.approx(0.5)


class TestTanhSinh:
    def test_inverse_sqrt_endpoint_singularity(self):
        res = integrate_de(lambda t: t**-0.5, 0.0, 1.0)
        assert res.converged
        assert abs(res.value - 2.0) <= 1e-10

    def test_symmetric_sqrt_kernel(self):
        res = integrate_de(lambda t: math.sqrt(t) * math.sqrt(1.0 - t), 0.0, 1.0)
        exact = math.pi / 8.0
        assert abs(exact - 0.3926991) < 5e-8
        assert res.converged
        assert abs(res.value - exact) <= 1e-10

    def test_steep_rational(self):
        res = integrate_de(lambda t: (1.0 - 0.9 * t) ** -4.0, 0.0, 1.0)
        exact = ((1.0 - 0.9) ** -3.0 - 1.0) / 2.7
        assert exact == pytest.approx(370.0, rel=1e-13)
        assert res.converged
        assert abs(res.value - exact) <= 1e-8 * exact

    def test_algebraic_endpoint_pair(self):
        # B(1.3, 0.7) kernel: both endpoints singular, exact via reflection.
        res = integrate_de(lambda t: t**0.3 * (1.0 - t) ** -0.3, 0.0, 1.0)
        exact = math.gamma(1.3) * math.gamma(0.7) / math.gamma(2.0)
        assert res.converged
        assert abs(res.value - exact) <= 1e-10 * exact

    @pytest.mark.parametrize("name,f,lo,hi,exact", SMOOTH_CORPUS, ids=[c[0] for c in SMOOTH_CORPUS])
    def test_agrees_with_gauss_kronrod_on_smooth(self, name, f, lo, hi, exact):
        gk = integrate(f, lo, hi)
        de = integrate_de(f, lo, hi)
        assert de.converged
        assert abs(gk.value - de.value) <= 1e-9 * max(1.0, abs(exact))

    def test_nonconvergence_is_flagged_not_raised(self):
        res = integrate_de(lambda t: t**-0.5, 0.0, 1.0, QuadSettings(max_subdivisions=2))
        assert not res.converged

    def test_endpoints_never_evaluated(self):
        seen = []

        def f(t):
            seen.append(t)
            return t**-0.25

        res = integrate_de(f, 0.0, 1.0)
        assert res.converged
        assert all(0.0 < t < 1.0 for t in seen)


@given(
    a=st.floats(0.1, 2.0),
    width=st.floats(0.05, 2.0),
    c0=st.floats(-2.0, 2.0),
    c1=st.floats(-2.0, 2.0),
    c2=st.floats(-2.0, 2.0),
)
def test_quadratic_exact_everywhere(a, width, c0, c1, c2):
    b = a + width

    def f(t):
        return c0 + c1 * t + c2 * t * t

    exact = c0 * (b - a) + c1 * (b * b - a * a) / 2.0 + c2 * (b**3 - a**3) / 3.0
    res = integrate(f, a, b)
    assert res.converged
    assert abs(res.value - exact) <= 1e-12 * max(1.0, abs(exact))
