import math
from fractions import Fraction

import numpy as np
import pytest

from hgpoly import (
    Family1Params,
    Family2Params,
    RadiusNotCertifiedError,
    ZeroBracketError,
    eval_monic,
    eval_Q_limit,
    eval_Qn,
    eval_Qn_sequence,
    gronwall_envelope,
    monic_coeffs,
    q_coeff_table,
    q_series_route,
    q_zero_spectrum_check,
    refine_q_zero,
)

P = Family1Params(0.0, 0.0, 1.0, math.pi / 2)
P_EXACT = Family1Params(0.5, 1.5, 2.0, math.pi / 2)


def test_Qn_at_zero_is_one():
    c = monic_coeffs(P)
    for n in (0, 1, 7, 100):
        assert eval_Qn(c, n, 0.0) == 1.0


def test_Qn_first_degree():
    c = monic_coeffs(P_EXACT)
    z = 0.8
    assert eval_Qn(c, 1, z) == pytest.approx(1.0 - float(c.b(0)) * z, rel=1e-15)


def test_reversal_identity():
    c = monic_coeffs(P)
    rng = np.random.default_rng(5)
    for _ in range(50):
        r = 10 ** rng.uniform(-1, math.log10(5.0))
        phase = rng.uniform(0, 2 * math.pi)
        z = complex(r * math.cos(phase), r * math.sin(phase))
        n = int(rng.integers(1, 31))
        lhs = z ** n * eval_monic(c, n, 1.0 / z)
        rhs = eval_Qn(c, n, z)
        assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), abs(rhs))


def test_qn_rejects_family2():
    with pytest.raises(TypeError):
        eval_Qn(monic_coeffs(Family2Params(0.0, 0.0, 1.0)), 3, 0.5)


def test_table_structure():
    c = monic_coeffs(P)
    t = q_coeff_table(c, 30, 12)
    assert np.all(t.c[:, 0] == 1.0)  # column 0 identically 1
    for n in range(13):
        assert np.all(t.c[n, n + 1:] == 0.0)  # zero above the diagonal
    assert t.converged[0]


def test_series_consistency_float():
    c = monic_coeffs(P)
    t = q_coeff_table(c, 30, 30)
    for n in (3, 10, 25):
        for z in (0.4 - 0.3j, -0.95, 1.7):
            series = sum(t.c[n, k] * complex(z) ** k for k in range(n + 1))
            q = complex(eval_Qn(c, n, z))
            assert abs(series - q) <= 1e-12 * max(1.0, abs(q))


def test_series_consistency_exact():
    c = monic_coeffs(P_EXACT, mode="exact")
    t = q_coeff_table(c, 25, 25)
    z = Fraction(3, 7)
    for n in (2, 9, 25):
        series = sum(t.c[n][k] * z ** k for k in range(n + 1))
        assert series == eval_Qn(c, n, z)


def test_column_formulas_exact():
    # c[n][1] = -sum b(k); c[n][2] = double b-product sum minus sum a_sq
    c = monic_coeffs(P_EXACT, mode="exact")
    t = q_coeff_table(c, 25, 6)
    for n in range(26):
        c1 = -sum(c.b(k) for k in range(n))
        c2 = (sum(c.b(k) * c.b(j) for k in range(1, n) for j in range(k))
              - sum(c.a_sq(k) for k in range(1, n)))
        assert t.c[n][1] == c1
        assert t.c[n][2] == c2


def test_column_cauchy_property():
    c = monic_coeffs(P)
    t = q_coeff_table(c, 400, 8)
    for k in range(7):
        gaps = [abs(t.c[2 * n, k] - t.c[n, k]) for n in (25, 50, 100, 200)]
        assert all(b <= a + 1e-18 for a, b in zip(gaps, gaps[1:]))


def test_envelope_bounds_all_Qn():
    for params in (P, Family1Params(0.5, 1.5, 2.0, math.pi / 3)):
        c = monic_coeffs(params)
        for R in (1.0, 2.0):
            M = gronwall_envelope(c, R).bound
            for j in range(8):
                z = R * complex(math.cos(2 * math.pi * j / 8),
                                math.sin(2 * math.pi * j / 8))
                seq = eval_Qn_sequence(c, 200, z)
                assert max(abs(q) for q in seq) <= M


def test_envelope_monotone_and_small_radius_limit():
    c = monic_coeffs(P)
    bounds = [gronwall_envelope(c, R).bound for R in (1e-12, 0.5, 1.0, 2.0, 4.0)]
    assert bounds[0] == pytest.approx(1.0, abs=1e-10)
    assert all(a < b for a, b in zip(bounds, bounds[1:]))
    with pytest.raises(ValueError):
        gronwall_envelope(c, 0.0)


def test_eval_Q_limit_origin():
    c = monic_coeffs(P)
    t = q_coeff_table(c, 200, 20)
    value, tail = eval_Q_limit(t, 0.0)
    assert value == 1.0
    assert tail == 0.0


def test_eval_Q_limit_matches_large_n():
    c = monic_coeffs(P)
    t = q_coeff_table(c, 400, 30)
    for z in (0.5, -0.8, 0.3 + 0.6j):
        q = eval_Qn(c, 400, z)
        value, tail = eval_Q_limit(t, z, tol=1e-8)
        assert abs(complex(q) - complex(value)) <= 1e-8 + tail


def test_eval_Q_limit_radius_error():
    c = monic_coeffs(P)
    t = q_coeff_table(c, 60, 10)
    with pytest.raises(RadiusNotCertifiedError):
        eval_Q_limit(t, 30.0, tol=1e-6)


def test_two_route_agreement():
    c = monic_coeffs(P)
    t = q_coeff_table(c, 600, 30)
    for z in (0.9, -0.4 + 0.5j, 0.1):
        v1, t1 = eval_Q_limit(t, z, tol=1e-8)
        v2, t2 = q_series_route(c, z, 300)
        assert abs(complex(v1) - complex(v2)) <= t1 + t2 + 1e-13


def test_q_zero_matching_and_refinement():
    c = monic_coeffs(P)
    t = q_coeff_table(c, 800, 80)
    matches = q_zero_spectrum_check(c, t, 200)
    assert len(matches) >= 2
    for m in matches:
        assert m.residual <= 1e-8
        assert m.distance <= 1e-6


def test_q_zero_count_nondecreasing_in_table_size():
    c = monic_coeffs(P)
    counts = []
    for k_max in (40, 80, 160):
        t = q_coeff_table(c, 2 * k_max + 600, k_max)
        counts.append(len(q_zero_spectrum_check(c, t, 200)))
    assert counts == sorted(counts)


def test_refine_q_zero_requires_bracket():
    c = monic_coeffs(P)
    t = q_coeff_table(c, 200, 20)
    with pytest.raises(ZeroBracketError):
        refine_q_zero(t, 0.1, 0.2)


def test_table_argument_validation():
    c = monic_coeffs(P)
    with pytest.raises(ValueError):
        q_coeff_table(c, 10, 11)
    with pytest.raises(ValueError):
        q_coeff_table(c, 0, 0)
