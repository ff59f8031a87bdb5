"""Reversed-polynomial machinery for the bounded family H.

The reversed polynomials Q_n(z) = z**n P_n(1/z) satisfy

    Q_{n+1}(z) = Q_n(z) - b(n) z Q_n(z) - a_sq(n) z**2 Q_{n-1}(z),

start Q_0 = 1, with the n = 0 history term set to exactly 0 (P_{-1} = 0).
Because the coefficient sums converge absolutely, Q_n tends locally
uniformly to an entire function Q whose power-series coefficients c_k are
the column limits of the triangular table c[n][k] filled by

    c[n+1][k] = c[n][k] - b(n) c[n][k-1] - a_sq(n) c[n-1][k-2].

A discrete Gronwall argument bounds |Q_n(z)| on |z| <= R by
M(R) = exp(R sum|b| + R**2 sum a_sq), which via Cauchy estimates certifies
the truncation tail of the series for Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .params import Family1Params
from .recurrence import MonicCoeffs, _field_value, _lift_argument, f1_tail_bounds
from .spectral import build_operator, eigenvalues

COLUMN_TOL = 1e-12


class RadiusNotCertifiedError(ValueError):
    """The series truncation tail cannot be certified below tolerance at z."""


class ZeroBracketError(RuntimeError):
    """No sign change was found inside the search window."""


def _require_family1(coeffs: MonicCoeffs) -> None:
    if not isinstance(coeffs.params, Family1Params):
        raise TypeError("the reversed-polynomial limit machinery requires family H")


def eval_Qn(coeffs: MonicCoeffs, n: int, z):
    """Q_n(z) = z**n P_n(1/z), by the forward reversed recurrence."""
    _require_family1(coeffs)
    if n < 0:
        raise ValueError("n must be >= 0")
    return eval_Qn_sequence(coeffs, n, z)[n]


def eval_Qn_sequence(coeffs: MonicCoeffs, n_max: int, z) -> list:
    """[Q_0(z), ..., Q_{n_max}(z)] from a single forward pass."""
    _require_family1(coeffs)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    z = _lift_argument(z, coeffs.mode)
    one = _field_value(1, coeffs.mode)
    if coeffs.mode == "float":
        b = coeffs.b_array(n_max) if n_max else []
        a_sq = coeffs.a_sq_array(n_max) if n_max else []
    else:
        b = [coeffs.b(k) for k in range(n_max)]
        a_sq = [coeffs.a_sq(k) for k in range(n_max)]
    out = [one]
    q_prev, q_cur = None, one
    zz = z * z
    for k in range(n_max):
        if k == 0:
            nxt = q_cur - b[0] * z * q_cur
        else:
            nxt = q_cur - b[k] * z * q_cur - a_sq[k] * zz * q_prev
        q_prev, q_cur = q_cur, nxt
        out.append(q_cur)
    return out


# ---------------------------------------------------------------------------
# Coefficient table
# ---------------------------------------------------------------------------


class QCoeffTable:
    """Triangular coefficient table c[n][k] of Q_n with column limits.

    The column limit c_k is read off the last row; a column is flagged as
    converged when the last two rows agree to ``tol`` there.  Entries with
    k > n are identically zero.
    """

    def __init__(self, coeffs, n_max, k_max, c, tol):
        self.coeffs = coeffs
        self.n_max = n_max
        self.k_max = k_max
        self.c = c
        self.tol = tol
        self.mode = coeffs.mode
        if coeffs.mode == "exact":
            self.limits = np.array([float(v) for v in c[n_max]])
            prev = np.array([float(v) for v in c[n_max - 1]]) if n_max else self.limits
        else:
            self.limits = np.asarray(c[n_max], dtype=float)
            prev = np.asarray(c[n_max - 1], dtype=float) if n_max else self.limits
        self.column_delta = np.abs(self.limits - prev)
        self.converged = self.column_delta < tol
        self._coeff_sums: tuple[float, float] | None = None

    def limit(self, k: int):
        """Column limit c_k (exact value in exact mode)."""
        return self.c[self.n_max][k]

    def coeff_sums(self) -> tuple[float, float]:
        """Cached certified (sum |b|, sum a_sq) for the envelope exponent."""
        if self._coeff_sums is None:
            tb = f1_tail_bounds(self.coeffs.params, 0)
            self._coeff_sums = (tb.abs_b, tb.a_sq)
        return self._coeff_sums


def q_coeff_table(coeffs: MonicCoeffs, n_max: int, k_max: int,
                  tol: float = COLUMN_TOL) -> QCoeffTable:
    """Fill the table row by row up to n_max, keeping columns 0..k_max."""
    _require_family1(coeffs)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if not 0 <= k_max <= n_max:
        raise ValueError("need 0 <= k_max <= n_max")
    if coeffs.mode == "exact":
        zero = Fraction(0)
        rows = [[zero] * (k_max + 1) for _ in range(n_max + 1)]
        rows[0][0] = Fraction(1)
        for n in range(n_max):
            bn = coeffs.b(n)
            an = coeffs.a_sq(n)
            cur = rows[n]
            nxt = rows[n + 1]
            for k in range(k_max + 1):
                v = cur[k]
                if k >= 1:
                    v = v - bn * cur[k - 1]
                if k >= 2 and n >= 1:
                    v = v - an * rows[n - 1][k - 2]
                nxt[k] = v
        return QCoeffTable(coeffs, n_max, k_max, rows, tol)
    b = coeffs.b_array(n_max)
    a_sq = coeffs.a_sq_array(n_max)
    c = np.zeros((n_max + 1, k_max + 1))
    c[0, 0] = 1.0
    for n in range(n_max):
        row = c[n]
        nxt = row.copy()
        nxt[1:] -= b[n] * row[:-1]
        if n >= 1:
            nxt[2:] -= a_sq[n] * c[n - 1, :-2]
        c[n + 1] = nxt
    return QCoeffTable(coeffs, n_max, k_max, c, tol)


# ---------------------------------------------------------------------------
# Gronwall envelope
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GronwallEnvelope:
    """Uniform bound |Q_n(z)| <= M for all n and |z| <= R, with
    M = exp(R sum|b(k)| + R**2 sum a_sq(k+1)), the sums closed with
    certified tail remainders (so M is a slight overestimate)."""

    radius: float
    bound: float
    sum_abs_b: float
    sum_a_sq: float


def gronwall_envelope(coeffs: MonicCoeffs, R: float) -> GronwallEnvelope:
    _require_family1(coeffs)
    if not R > 0.0:
        raise ValueError("R must be > 0")
    tb = f1_tail_bounds(coeffs.params, 0)
    exponent = R * tb.abs_b + R * R * tb.a_sq
    bound = math.exp(exponent) if exponent < 709.0 else math.inf
    return GronwallEnvelope(R, bound, tb.abs_b, tb.a_sq)


# ---------------------------------------------------------------------------
# Evaluation of the limit function
# ---------------------------------------------------------------------------


def _truncation_tail(table: QCoeffTable, abs_z: float) -> float:
    """Certified bound on sum_{k > k_max} |c_k| |z|**k via Cauchy estimates
    |c_k| <= M(R)/R**k, minimized in log space over a radius ladder."""
    if abs_z == 0.0:
        return 0.0
    c_b, c_a = table.coeff_sums()
    best = math.inf
    R = 1.0
    while R <= 1.25 * abs_z:
        R *= 2.0
    for _ in range(12):
        q = abs_z / R
        log_tail = (R * c_b + R * R * c_a
                    + (table.k_max + 1) * math.log(q) - math.log1p(-q))
        if log_tail < 700.0:
            best = min(best, math.exp(log_tail))
        R *= 2.0
    return best


def eval_Q_limit(table: QCoeffTable, z, tol: float = 1e-6):
    """Value of the entire limit function Q at z with a certified tail bound.

    Returns (value, tail_bound) where tail_bound combines the certified
    series-truncation tail with the column non-convergence deltas.  Raises
    RadiusNotCertifiedError when the truncation part alone exceeds ``tol``
    (more columns or a smaller |z| are then required; more rows cannot help).
    """
    zc = complex(z)
    abs_z = abs(zc)
    trunc = _truncation_tail(table, abs_z)
    if not trunc <= tol:
        raise RadiusNotCertifiedError(
            f"certified tail {trunc:.3e} exceeds tolerance {tol:.3e} at |z| = {abs_z:.6g}"
        )
    column = 0.0
    zpow = 1.0
    for k in range(table.k_max + 1):
        d = table.column_delta[k]
        if d:
            column += d * zpow
        zpow *= abs_z
        if zpow == math.inf:
            break
    limits = table.limits
    if zc.imag == 0.0:
        x = zc.real
        acc = 0.0
        for k in range(table.k_max, -1, -1):
            acc = acc * x + limits[k]
        return acc, trunc + column
    acc = 0.0 + 0.0j
    for k in range(table.k_max, -1, -1):
        acc = acc * zc + limits[k]
    return acc, trunc + column


def q_series_route(coeffs: MonicCoeffs, z, terms: int):
    """Alternative route to Q: the partial sum of
    1 - sum_{k<terms} (b(k) z + a_sq(k+1) z**2) Q_k(z),
    with its certified tail M(|z|) * (tail sum|b| * |z| + tail a_sq * |z|**2).
    """
    _require_family1(coeffs)
    q = eval_Qn_sequence(coeffs, terms - 1, z)
    b = coeffs.b_array(terms)
    a_sq = coeffs.a_sq_array(terms + 1)
    zc = complex(z)
    total = 1.0 + 0.0j
    for k in range(terms):
        total -= (b[k] * zc + a_sq[k + 1] * zc * zc) * complex(q[k])
    abs_z = abs(zc)
    M = gronwall_envelope(coeffs, max(abs_z, 1e-6)).bound
    tb = f1_tail_bounds(coeffs.params, terms)
    tb1 = f1_tail_bounds(coeffs.params, terms + 1)
    tail = M * (tb.abs_b * abs_z + tb1.a_sq * abs_z * abs_z)
    value = total.real if zc.imag == 0.0 else total
    return value, tail


# ---------------------------------------------------------------------------
# Zeros of Q against the reciprocal spectrum
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QZeroMatch:
    zero: float
    reciprocal_node: float
    residual: float
    distance: float


def refine_q_zero(table: QCoeffTable, lo: float, hi: float, tol: float = 1e-6,
                  iterations: int = 200) -> float:
    """Bisection refinement of a real zero of Q inside [lo, hi]."""
    flo, _ = eval_Q_limit(table, lo, tol)
    fhi, _ = eval_Q_limit(table, hi, tol)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise ZeroBracketError(f"no sign change on [{lo!r}, {hi!r}]")
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fmid, _ = eval_Q_limit(table, mid, tol)
        if fmid == 0.0:
            return mid
        if math.copysign(1.0, fmid) == math.copysign(1.0, flo):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return 0.5 * (lo + hi)


def q_zero_spectrum_check(coeffs: MonicCoeffs, table: QCoeffTable, N: int,
                          tol: float = 1e-9, window: float = 0.02,
                          scan_points: int = 24) -> list[QZeroMatch]:
    """Match zeros of Q against reciprocals of the N-truncation spectrum.

    For every node x of the truncated operator whose reciprocal lies inside
    the certified evaluation disk, search a relative window around 1/x for a
    sign change of Q, refine it, and report the refined zero, the residual
    |Q(zero)| and the distance to 1/x.  Nodes whose window has no sign
    change (or falls outside the certified disk) are skipped.
    """
    _require_family1(coeffs)
    nodes = eigenvalues(build_operator(coeffs, N))
    candidates = sorted((1.0 / x for x in nodes if x != 0.0), key=abs)
    matches: list[QZeroMatch] = []
    for t0 in candidates:
        w = window * abs(t0)
        try:
            eval_Q_limit(table, abs(t0) + w, tol)
        except RadiusNotCertifiedError:
            continue
        grid = np.linspace(t0 - w, t0 + w, scan_points)
        vals = [eval_Q_limit(table, t, tol)[0] for t in grid]
        found = None
        for i in range(scan_points - 1):
            if vals[i] == 0.0:
                found = float(grid[i])
                break
            if math.copysign(1.0, vals[i]) != math.copysign(1.0, vals[i + 1]):
                found = refine_q_zero(table, float(grid[i]), float(grid[i + 1]), tol)
                break
        if found is None:
            continue
        residual = abs(eval_Q_limit(table, found, tol)[0])
        matches.append(QZeroMatch(found, t0, residual, abs(found - t0)))
    return matches
