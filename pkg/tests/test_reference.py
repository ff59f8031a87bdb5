import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from hgpoly import (
    Family2Params,
    InvalidParameterError,
    WilsonParams,
    build_operator,
    eigensystem,
    eval_G,
    monic_jacobi_coeffs,
    monic_jacobi_eval,
    pochhammer,
    quadrature_check,
    wilson_eval,
    wilson_identity_value,
    wilson_params_from,
)
from hgpoly.reference import FROZEN_WILSON_CONVENTION


def test_frozen_convention_is_x_squared():
    assert FROZEN_WILSON_CONVENTION == "x-squared"


def test_pochhammer_basic():
    assert pochhammer(3.0, 0) == 1.0
    assert pochhammer(3.0, 3) == 3 * 4 * 5
    assert pochhammer(0.5 + 1j, 2) == (0.5 + 1j) * (1.5 + 1j)


def test_wilson_params_mapping():
    # sigma <= 0: s real
    p = Family2Params(0.3, 0.8, -4.0)
    w = wilson_params_from(p)
    assert w.a == w.c == (0.3 + 1) / 2
    assert w.b == pytest.approx((0.8 + 1) / 2 + 2.0)
    assert w.d == pytest.approx((0.8 + 1) / 2 - 2.0)
    # sigma > 0: s on the positive imaginary axis, b and d conjugate
    p = Family2Params(0.3, 0.8, 1.0)
    w = wilson_params_from(p)
    assert w.b == pytest.approx(0.9 + 1j)
    assert w.d == pytest.approx(0.9 - 1j)
    assert w.conjugate_closed()
    # sigma = 0 collapses b = d
    w0 = wilson_params_from(Family2Params(0.3, 0.8, 0.0))
    assert w0.b == w0.d == pytest.approx(0.9)


def test_wilson_degree_zero_and_one():
    w = WilsonParams(1.0, 0.5 + 1j, 1.0, 0.5 - 1j)
    assert wilson_eval(w, 0, 0.7) == 1.0
    # W_1(y) = (a+b)(a+c)(a+d) - (a+b+c+d) (a**2 + y); the complex x
    # exercises the generic path, the real x the paired one
    for x in (0.7, 0.7 + 0.4j):
        y = x * x
        want = ((w.a + w.b) * (w.a + w.c) * (w.a + w.d)
                - (w.a + w.b + w.c + w.d) * (w.a ** 2 + y))
        assert wilson_eval(w, 1, x) == pytest.approx(want, rel=1e-14)


def test_wilson_imaginary_residue_small():
    for sigma in (0.25, 4.0):
        w = wilson_params_from(Family2Params(0.5, 1.5, sigma))
        assert w.conjugate_closed()
        for n in range(26):
            for x in np.linspace(0.1, 3.0, 7):
                v = wilson_eval(w, n, float(x))
                assert abs(v.imag) <= 1e-10 * max(abs(v.real), 1e-300)


def test_wilson_generic_matches_paired():
    p = Family2Params(1.0, 0.5, -2.25)
    w = wilson_params_from(p)
    for n in (0, 1, 3, 7):
        for x in (0.3, 1.9):
            generic = wilson_eval(w, n, x)
            paired = wilson_eval(w, n, x, mode="extended")
            assert abs(generic - paired) <= 1e-11 * max(1.0, abs(paired))


def test_identification_exact_rational():
    # the identity holds exactly in rational arithmetic, mu != nu included
    grid = [(Fraction(-1, 2), Fraction(3, 2), Fraction(-1, 4)),
            (Fraction(0), Fraction(3, 2), Fraction(-9, 4)),
            (Fraction(0), Fraction(0), Fraction(4)),
            (Fraction(3, 2), Fraction(0), Fraction(1, 4)),
            (Fraction(1), Fraction(0), Fraction(1))]
    for mu, nu, sigma in grid:
        p = Family2Params(float(mu), float(nu), float(sigma))
        for n in (0, 1, 2, 5, 9):
            for z in (Fraction(-7, 3), Fraction(0), Fraction(5, 2)):
                assert (eval_G(p, n, z, mode="exact")
                        == wilson_identity_value(p, n, z, mode="exact"))


def test_identification_float_and_frozen_convention():
    p = Family2Params(1.5, -0.5, 4.0)
    devs_good = []
    devs_bad = []
    for n in (1, 2, 5, 10):
        for z in (-1.7, 0.6, 2.3):
            g = eval_G(p, n, z)
            good = float(wilson_identity_value(p, n, z, convention="x-squared"))
            bad = float(wilson_identity_value(p, n, z, convention="x"))
            devs_good.append(abs(g - good) / max(abs(g), abs(good)))
            devs_bad.append(abs(g - bad) / max(abs(g), abs(bad), 1e-300))
    assert max(devs_good) <= 1e-9
    assert max(devs_bad) > 1e-2  # the alternative reading fails


def test_identification_insensitive_to_s_sign():
    # swapping b and d (the sign of s) leaves the identity value unchanged
    p = Family2Params(0.5, 1.5, 2.0)
    w = wilson_params_from(p)
    swapped = WilsonParams(w.a, w.d, w.c, w.b)
    for n in (1, 4):
        for x in (0.4, 1.2):
            assert wilson_eval(w, n, x) == pytest.approx(
                wilson_eval(swapped, n, x), rel=1e-12)


def test_identification_via_generic_wilson_eval():
    # the public wilson_eval route: evaluate at x with x**2 = z/2, divide by
    # n! (a+b)_n (a+d)_n
    p = Family2Params(0.0, 1.5, 0.25)
    w = wilson_params_from(p)
    for n in (0, 1, 3, 6):
        for z in (-1.1, 0.8, 2.9):
            x = cmath.sqrt(z / 2)
            denom = (pochhammer(w.a + w.b, n) * pochhammer(w.a + w.d, n)
                     * math.factorial(n))
            lhs = wilson_eval(w, n, x) / denom
            g = eval_G(p, n, z)
            assert abs(lhs - g) <= 1e-10 * max(abs(g), 1.0)


def test_identification_sensitive_to_coefficient_perturbation():
    # a 1e-6 relative bump in one a_sq breaks the identity far beyond the
    # certification tolerance
    from hgpoly import Family2Params as F2, eval_monic, leading_ratio
    from hgpoly.recurrence import Family2Coeffs

    p = F2(0.5, 1.5, 2.0)

    class Perturbed(Family2Coeffs):
        def a_sq(self, n):
            v = super().a_sq(n)
            return v * (1 + 1e-6) if n == 2 else v

    bad = Perturbed(p)
    lr = leading_ratio(p)
    for n in (3, 6):
        for z in (0.7, -1.4):
            g_bad = lr.k(n) * eval_monic(bad, n, z)
            w = float(wilson_identity_value(p, n, z))
            assert abs(g_bad - w) / max(abs(g_bad), abs(w)) > 1e-9


def test_wilson_invalid_degree():
    w = wilson_params_from(Family2Params(0.0, 0.0, 1.0))
    with pytest.raises(ValueError):
        wilson_eval(w, -1, 0.5)


def test_wilson_overflow_guard():
    w = wilson_params_from(Family2Params(0.0, 0.0, 1.0))
    with pytest.raises(OverflowError):
        wilson_eval(w, 400, 1e4)


# -- monic Jacobi --------------------------------------------------------------


def test_jacobi_symmetric_first_degree():
    assert monic_jacobi_eval(0.7, 0.7, 1, 0.3) == pytest.approx(0.3, rel=1e-15)


def test_legendre_second_degree():
    # alpha_j = beta_j = 0: moments of dx/2 on [-1, 1] give P_2 = z**2 - 1/3
    for z in (-0.9, 0.0, 0.4, 2.0):
        assert monic_jacobi_eval(0.0, 0.0, 2, z) == pytest.approx(
            z * z - 1.0 / 3.0, rel=1e-14, abs=1e-15)


def test_jacobi_parameter_domain():
    with pytest.raises(InvalidParameterError):
        monic_jacobi_coeffs(-1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        monic_jacobi_coeffs(0.0, -1.3)


def test_jacobi_orthogonality_under_own_quadrature():
    # the spectral machinery applies verbatim to the Jacobi coefficients
    c = monic_jacobi_coeffs(0.5, 1.5)
    S = eigensystem(build_operator(c, 30))
    for i in range(15):
        for j in range(i + 1, 15):
            scale = math.sqrt(quadrature_check(S, c, i, i)
                              * quadrature_check(S, c, j, j))
            assert abs(quadrature_check(S, c, i, j)) <= 1e-10 * scale
    prod = 1.0
    for m in range(1, 15):
        prod *= float(c.a_sq(m))
        got = quadrature_check(S, c, m, m)
        assert got == pytest.approx(prod, rel=1e-9)


def test_jacobi_removable_corner():
    # alpha_j + beta_j = -1 hits the removable pair at n = 1
    c = monic_jacobi_coeffs(-0.5, -0.5)
    assert float(c.a_sq(1)) > 0
    assert math.isfinite(monic_jacobi_eval(-0.5, -0.5, 6, 0.3))
