"""Evaluation of the H and G families and their monic recurrence data.

Three arithmetic modes are supported throughout:

* ``"float"``     binary64 (complex arguments allowed where meaningful),
* ``"extended"``  double-double, for oracle comparisons under cancellation,
* ``"exact"``     rational arithmetic.  Family G supports it for any
  parameters; family H only at theta = pi/2 where sin and cos are rational.

Both families are converted to monic form x P_n = P_{n+1} + b(n) P_n +
a_sq(n) P_{n-1}; the closed-form coefficient accessors live on
:class:`MonicCoeffs` subclasses.  Certified tail bounds for the H-family
coefficient sums (used by the envelope and trace diagnostics) are at the
bottom of the module.

Two parameter corners are removable 0/0 forms and are evaluated by their
limits: the middle term (mu**2 - nu**2)/((2n+S)(2n+S+2)) vanishes whenever
mu**2 == nu**2 (which covers the n = 0, S = 0 corner), and the factor pairs
(n+S)/(2n+S-1) and (n+S+1)/(2n+S+1) equal 1 when both members vanish
(n = 1 resp. n = 0, at S = -1).  S denotes mu + nu throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .ddouble import DoubleDouble
from .params import (
    DegenerateRecurrenceError,
    Family1Params,
    Family2Params,
    InvalidParameterError,
)

MODES = ("float", "extended", "exact")


def _field_value(x, mode):
    if mode == "float":
        return float(x)
    if mode == "extended":
        return x if isinstance(x, DoubleDouble) else DoubleDouble(float(x))
    if mode == "exact":
        return Fraction(x)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def _lift_argument(z, mode):
    if mode == "float":
        return z if isinstance(z, complex) else float(z)
    if isinstance(z, complex):
        raise TypeError(f"mode {mode!r} supports real arguments only")
    return _field_value(z, mode)


def _trig(theta, mode):
    if mode == "exact":
        if theta != math.pi / 2:
            raise InvalidParameterError(
                "exact mode for family H requires theta = pi/2 "
                "(the only supported point with rational sin and cos)"
            )
        return Fraction(1), Fraction(0)
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    return _field_value(sin_t, mode), _field_value(cos_t, mode)


class _F1(NamedTuple):
    mu: object
    nu: object
    alpha: object
    sin_t: object
    cos_t: object
    S: object
    h: object
    mu_sq: object
    nu_sq: object
    zero: object
    one: object


def _lift_f1(p: Family1Params, mode: str) -> _F1:
    mu = _field_value(p.mu, mode)
    nu = _field_value(p.nu, mode)
    alpha = _field_value(p.alpha, mode)
    sin_t, cos_t = _trig(p.theta, mode)
    S = mu + nu
    return _F1(mu, nu, alpha, sin_t, cos_t, S, (S + 1) / 2, mu * mu, nu * nu,
               _field_value(0, mode), _field_value(1, mode))


class _F2(NamedTuple):
    mu: object
    nu: object
    sigma: object
    S: object
    half_S: object
    mu_sq: object
    nu_sq: object
    zero: object
    one: object


def _lift_f2(p: Family2Params, mode: str) -> _F2:
    mu = _field_value(p.mu, mode)
    nu = _field_value(p.nu, mode)
    sigma = _field_value(p.sigma, mode)
    S = mu + nu
    return _F2(mu, nu, sigma, S, S / 2, mu * mu, nu * nu,
               _field_value(0, mode), _field_value(1, mode))


# ---------------------------------------------------------------------------
# Monic recurrence coefficients
# ---------------------------------------------------------------------------


class MonicCoeffs:
    """Accessor for the monic recurrence x P_n = P_{n+1} + b(n) P_n + a_sq(n) P_{n-1}.

    a_sq(0) is unused by the recurrence and returned as 0 by convention.
    """

    family = "?"

    def __init__(self, params, mode: str = "float"):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
        self.params = params
        self.mode = mode

    def a_sq(self, n: int):
        raise NotImplementedError

    def b(self, n: int):
        raise NotImplementedError

    def b_array(self, N: int) -> np.ndarray:
        return np.array([float(self.b(n)) for n in range(N)], dtype=float)

    def a_sq_array(self, N: int) -> np.ndarray:
        return np.array([float(self.a_sq(n)) for n in range(N)], dtype=float)

    def __repr__(self):
        return f"{type(self).__name__}({self.params!r}, mode={self.mode!r})"


class Family1Coeffs(MonicCoeffs):
    family = "H"

    def __init__(self, params: Family1Params, mode: str = "float"):
        if not isinstance(params, Family1Params):
            raise TypeError("Family1Coeffs requires Family1Params")
        super().__init__(params, mode)
        self._v = _lift_f1(params, mode)

    def bracket(self, n: int):
        v = self._v
        t = n + v.h
        return t * t + v.alpha

    def _mid(self, n: int):
        # (mu**2 - nu**2) / ((2n+S)(2n+S+2)); identically 0 when mu**2 == nu**2
        v = self._v
        if v.mu_sq == v.nu_sq:
            return v.zero
        return (v.mu_sq - v.nu_sq) / ((2 * n + v.S) * (2 * n + v.S + 2))

    def a_sq(self, n: int):
        if n < 0:
            raise ValueError("n must be >= 0")
        v = self._v
        if n == 0:
            return v.zero
        num = 4 * n * (n + v.mu) * (n + v.nu)
        f_num = n + v.S
        f_den = 2 * n + v.S - 1
        core = 2 * n + v.S
        den = (v.sin_t * v.sin_t * self.bracket(n) * self.bracket(n - 1)
               * core * core * (2 * n + v.S + 1))
        if f_num == 0 and f_den == 0:
            return num / den
        return (num * f_num) / (den * f_den)

    def b(self, n: int):
        if n < 0:
            raise ValueError("n must be >= 0")
        v = self._v
        return (v.cos_t + self._mid(n)) / (v.sin_t * self.bracket(n))


class Family2Coeffs(MonicCoeffs):
    family = "G"

    def __init__(self, params: Family2Params, mode: str = "float"):
        if not isinstance(params, Family2Params):
            raise TypeError("Family2Coeffs requires Family2Params")
        super().__init__(params, mode)
        self._v = _lift_f2(params, mode)

    def _B(self, n: int):
        return n + 1 + self._v.half_S

    def _mid(self, n: int):
        v = self._v
        if v.mu_sq == v.nu_sq:
            return v.zero
        return (v.mu_sq - v.nu_sq) / ((2 * n + v.S) * (2 * n + v.S + 2))

    def a_sq(self, n: int):
        if n < 0:
            raise ValueError("n must be >= 0")
        v = self._v
        if n == 0:
            return v.zero
        t = n + v.half_S  # B(n-1)
        g = v.sigma + t * t
        num = 4 * n * (n + v.mu) * (n + v.nu)
        f_num = n + v.S
        f_den = 2 * n + v.S - 1
        core = 2 * n + v.S
        den = core * core * (2 * n + v.S + 1)
        if f_num == 0 and f_den == 0:
            return (g * g * num) / den
        return (g * g * num * f_num) / (den * f_den)

    def b(self, n: int):
        if n < 0:
            raise ValueError("n must be >= 0")
        v = self._v
        t = self._B(n)
        g = v.sigma + t * t
        if n == 0:
            lower = v.zero
        else:
            lower = (2 * n * (n + v.nu)) / (2 * n + v.S)
        return g * (self._mid(n) + 1) - lower - ((v.mu + 1) * (v.mu + 1)) / 2


def monic_coeffs(params, mode: str = "float") -> MonicCoeffs:
    """Monic recurrence coefficients for either family."""
    if isinstance(params, Family1Params):
        return Family1Coeffs(params, mode)
    if isinstance(params, Family2Params):
        return Family2Coeffs(params, mode)
    raise TypeError(f"unsupported parameter type {type(params).__name__}")


# ---------------------------------------------------------------------------
# Leading-coefficient ratios
# ---------------------------------------------------------------------------


class LeadingRatio:
    """Successive leading-coefficient ratios k_ratio(n) = k_{n+1}/k_n.

    Both families expose the same orientation; k(n) is the accumulated
    product over j < n, so that H_n = k(n) P_n (and likewise for G).
    """

    def __init__(self, params, mode: str = "float"):
        self.params = params
        self.mode = mode
        if isinstance(params, Family1Params):
            self._v1 = _lift_f1(params, mode)
            self._v2 = None
        elif isinstance(params, Family2Params):
            self._v1 = None
            self._v2 = _lift_f2(params, mode)
        else:
            raise TypeError(f"unsupported parameter type {type(params).__name__}")

    def k_ratio(self, n: int):
        if n < 0:
            raise ValueError("n must be >= 0")
        if self._v1 is not None:
            v = self._v1
            t = n + v.h
            bracket = t * t + v.alpha
            f_num = 2 * n + v.S + 1
            f_den = n + v.S + 1
            r = v.one if (f_num == 0 and f_den == 0) else f_num / f_den
            return -(v.sin_t * bracket * r * (2 * n + v.S + 2)) / (2 * (n + 1))
        v = self._v2
        t = n + 1 + v.half_S
        g = v.sigma + t * t
        f_num = 2 * n + v.S + 1
        f_den = n + v.S + 1
        r = v.one if (f_num == 0 and f_den == 0) else f_num / f_den
        return -(r * (2 * n + v.S + 2)) / (g * 2 * (n + 1))

    def k(self, n: int):
        """Leading coefficient k_n as the product of k_ratio(j) for j < n."""
        out = self._v1.one if self._v1 is not None else self._v2.one
        for j in range(n):
            out = out * self.k_ratio(j)
        return out


def leading_ratio(params, mode: str = "float") -> LeadingRatio:
    return LeadingRatio(params, mode)


# ---------------------------------------------------------------------------
# Direct evaluation of the non-monic families
# ---------------------------------------------------------------------------


def eval_H(params: Family1Params, n: int, z, mode: str = "float"):
    """H_n at z by forward recurrence from H_{-1} = 0, H_0 = 1."""
    if not isinstance(params, Family1Params):
        raise TypeError("eval_H requires Family1Params")
    if n < -1:
        raise ValueError("n must be >= -1")
    v = _lift_f1(params, mode)
    if n == -1:
        return v.zero
    z = _lift_argument(z, mode)
    h_prev, h_cur = v.zero, v.one
    for k in range(n):
        t = k + v.h
        bracket = t * t + v.alpha
        if v.mu_sq == v.nu_sq:
            mid = v.zero
        else:
            mid = (v.nu_sq - v.mu_sq) / ((2 * k + v.S) * (2 * k + v.S + 2))
        A = z * v.sin_t * bracket + mid
        if k == 0:
            c_term = v.zero
        else:
            C = (2 * (k + v.mu) * (k + v.nu)) / ((2 * k + v.S) * (2 * k + v.S + 1))
            c_term = C * h_prev
        f_num = k + v.S + 1
        f_den = 2 * k + v.S + 1
        r = v.one if (f_num == 0 and f_den == 0) else f_num / f_den
        D = (2 * (k + 1) * r) / (2 * k + v.S + 2)
        if D == 0:
            raise DegenerateRecurrenceError(f"H-recurrence coefficient of degree {k + 1} vanished")
        h_prev, h_cur = h_cur, ((v.cos_t - A) * h_cur - c_term) / D
    return h_cur


def eval_G(params: Family2Params, n: int, z, mode: str = "float"):
    """G_n at z by forward recurrence from G_{-1} = 0, G_0 = 1."""
    if not isinstance(params, Family2Params):
        raise TypeError("eval_G requires Family2Params")
    if n < -1:
        raise ValueError("n must be >= -1")
    v = _lift_f2(params, mode)
    if n == -1:
        return v.zero
    z = _lift_argument(z, mode)
    coeffs = Family2Coeffs(params, mode)
    g_prev, g_cur = v.zero, v.one
    for k in range(n):
        E = coeffs.b(k)
        if k == 0:
            f_term = v.zero
        else:
            t = k + v.half_S  # B(k-1)
            F = ((v.sigma + t * t) * 2 * (k + v.mu) * (k + v.nu)) / (
                (2 * k + v.S) * (2 * k + v.S + 1))
            f_term = F * g_prev
        tB = k + 1 + v.half_S
        g = v.sigma + tB * tB
        f_num = k + v.S + 1
        f_den = 2 * k + v.S + 1
        r = v.one if (f_num == 0 and f_den == 0) else f_num / f_den
        W = (g * 2 * (k + 1) * r) / (2 * k + v.S + 2)
        if W == 0:
            raise DegenerateRecurrenceError(f"G-recurrence coefficient of degree {k + 1} vanished")
        g_prev, g_cur = g_cur, ((E - z) * g_cur - f_term) / W
    return g_cur


# ---------------------------------------------------------------------------
# Monic evaluation
# ---------------------------------------------------------------------------


def eval_monic(coeffs: MonicCoeffs, n: int, z):
    """P_n at z by forward recurrence from P_{-1} = 0, P_0 = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    z = _lift_argument(z, coeffs.mode)
    one = _field_value(1, coeffs.mode)
    p_prev, p_cur = None, one
    for k in range(n):
        if k == 0:
            nxt = (z - coeffs.b(0)) * p_cur
        else:
            nxt = (z - coeffs.b(k)) * p_cur - coeffs.a_sq(k) * p_prev
        p_prev, p_cur = p_cur, nxt
    return p_cur


def monic_value_table(coeffs: MonicCoeffs, n_max: int, x: np.ndarray) -> np.ndarray:
    """Float table P[n, j] = P_n(x_j) for n = 0..n_max, vectorized over x."""
    x = np.asarray(x, dtype=float)
    b = coeffs.b_array(n_max) if n_max else np.empty(0)
    a_sq = coeffs.a_sq_array(n_max) if n_max else np.empty(0)
    P = np.empty((n_max + 1, x.size))
    P[0] = 1.0
    for k in range(n_max):
        if k == 0:
            P[1] = (x - b[0]) * P[0]
        else:
            P[k + 1] = (x - b[k]) * P[k] - a_sq[k] * P[k - 1]
    return P


# ---------------------------------------------------------------------------
# Certified tail bounds for the H-family coefficient sums
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TailBounds:
    """Certified upper bounds for sums over n >= start of the H-family
    coefficient magnitudes: sum |b(n)|, sum a_sq(n), sum sqrt(a_sq(n))."""

    start: int
    abs_b: float
    a_sq: float
    a: float


def f1_safe_cutoff(params: Family1Params) -> int:
    """Smallest index from which the per-term dominating inequalities hold.

    For k >= K we need (k-1+h)**2 >= 2|alpha| (so each bracket is at least
    half its alpha-free size), 2K + S >= 2, and K - 2 + h > 0 for the
    integral comparisons.
    """
    h = params.h
    S = params.mu + params.nu
    K = max(3,
            math.ceil(1.0 - h + math.sqrt(2.0 * abs(params.alpha))) + 1,
            math.ceil((2.0 - S) / 2.0) + 1,
            math.ceil(2.5 - h))
    return K


def f1_tail_bounds(params: Family1Params, start: int, pad: int = 2048) -> TailBounds:
    """Bounds for the H-family coefficient tails summed over n >= start.

    The range [start, K) is summed directly from the closed forms
    (in absolute value); the remainder from K = max(start, safe cutoff) + pad
    is dominated term by term and closed with integral comparisons:

        |b(k)|  <= 2 (|cos t| + g(K)) / (sin t (k+h)**2),
        a_sq(k) <= 4 p(K) / (sin t)**2 / ((k+h)**2 (k-1+h)**2),

    with g(K) the middle-term bound |mu^2-nu^2|/((2K+S)(2K+S+2)) and
    p(K) = (1 + 1/((2K+S)**2 - 1))/4 bounding the polynomial prefactor of
    a_sq (AM-GM gives (k+mu)(k+nu)/(2k+S)**2 <= 1/4).
    """
    if not isinstance(params, Family1Params):
        raise TypeError("tail bounds are defined for the bounded family H only")
    if start < 0:
        raise ValueError("start must be >= 0")
    K = max(start, f1_safe_cutoff(params)) + pad
    coeffs = Family1Coeffs(params)
    direct_b = 0.0
    direct_asq = 0.0
    direct_a = 0.0
    for n in range(start, K):
        direct_b += abs(coeffs.b(n))
        asq = abs(coeffs.a_sq(n))
        direct_asq += asq
        direct_a += math.sqrt(asq)

    h = params.h
    S = params.mu + params.nu
    sin_t = math.sin(params.theta)
    cos_t = abs(math.cos(params.theta))
    gamma_max = abs(params.mu ** 2 - params.nu ** 2) / ((2 * K + S) * (2 * K + S + 2))
    p_max = 0.25 * (1.0 + 1.0 / ((2 * K + S) ** 2 - 1.0))

    # sum_{k>=K} (k+h)**-2   <= 1/(K-1+h)
    # sum_{k>=K} (k-1+h)**-2 <= 1/(K-2+h)
    # sum_{k>=K} (k-1+h)**-4 <= 1/(3 (K-2+h)**3)
    tail_b = 2.0 * (cos_t + gamma_max) / sin_t / (K - 1 + h)
    tail_asq = (4.0 * p_max / sin_t ** 2) / (3.0 * (K - 2 + h) ** 3)
    tail_a = (2.0 * math.sqrt(p_max) / sin_t) / (K - 2 + h)

    return TailBounds(start, direct_b + tail_b, direct_asq + tail_asq, direct_a + tail_a)
