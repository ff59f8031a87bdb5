"""Truncated Jacobi operators: spectra, Gauss weights, trace diagnostics.

The eigensolver is the classical implicit-shift QL iteration for symmetric
tridiagonal matrices (EISPACK imtql2 lineage), accumulating only the first
row of the eigenvector matrix, which is all the Gauss weights need.  An
independent bisection route based on Sturm counts of the same recurrence
is provided as an oracle.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .params import Family1Params
from .recurrence import MonicCoeffs, f1_tail_bounds, monic_value_table

_EPS = 2.220446049250313e-16
COLLISION_GAP = 1e-14


class OperatorStructureError(ValueError):
    """The operator cannot be symmetrized (some a_sq(n) <= 0)."""


class EigensolverError(RuntimeError):
    """The implicit-shift sweep exceeded its iteration cap."""


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal truncation: diagonal d[n] = b(n), off-diagonal
    e[n] = sqrt(a_sq(n)) coupling rows n-1 and n (e[0] is unused)."""

    d: np.ndarray
    e: np.ndarray

    @property
    def size(self) -> int:
        return self.d.size

    def gershgorin_bound(self) -> float:
        n = self.size
        a = np.zeros(n + 1)
        a[1:n] = self.e[1:n]
        return float(np.max(np.abs(self.d) + a[:n] + a[1:]))


def build_operator(coeffs: MonicCoeffs, N: int) -> TridiagonalOperator:
    """N x N truncation with d[n] = b(n) and e[n] = sqrt(a_sq(n))."""
    if N < 1:
        raise ValueError("N must be >= 1")
    d = coeffs.b_array(N)
    a_sq = coeffs.a_sq_array(N)
    for n in range(1, N):
        if not a_sq[n] > 0.0:
            raise OperatorStructureError(
                f"a_sq({n}) = {a_sq[n]!r} is not positive: "
                "operator not symmetrizable"
            )
    e = np.zeros(N)
    e[1:] = np.sqrt(a_sq[1:])
    return TridiagonalOperator(d, e)


@dataclass
class SpectralData:
    """Ascending nodes (zeros of the degree-N monic polynomial) with Gauss
    weights normalized to total mass 1."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        span = float(self.nodes[-1] - self.nodes[0]) if self.nodes.size > 1 else 0.0
        if self.nodes.size > 1:
            gaps = np.diff(self.nodes)
            if np.any(gaps < COLLISION_GAP * max(span, 1e-300)):
                warnings.warn("node collision: adjacent nodes closer than "
                              f"{COLLISION_GAP} * span", RuntimeWarning)
        if np.any(self.weights == 0.0):
            warnings.warn("some Gauss weights underflowed to zero", RuntimeWarning)

    @property
    def size(self) -> int:
        return self.nodes.size


def _ql_implicit(d: list, e: list, z, max_sweeps: int) -> None:
    """Implicit-shift QL on (d, e), in place; e[i] couples rows i and i+1.

    d becomes the unordered eigenvalues.  If z is given it is treated as a
    row vector and carried through every rotation, so a first-basis-vector
    start yields first eigenvector components.
    """
    n = len(d)
    if n == 1:
        return
    e[n - 1] = 0.0
    for l in range(n):
        sweeps = 0
        while True:
            for m in range(l, n - 1):
                if abs(e[m]) <= _EPS * (abs(d[m]) + abs(d[m + 1])):
                    break
            else:
                m = n - 1
            if m == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise EigensolverError(
                    f"eigenvalue {l}: no convergence after {max_sweeps} "
                    "implicit-shift sweeps"
                )
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                if abs(f) >= abs(g):
                    c = g / f
                    r = math.hypot(c, 1.0)
                    e[i + 1] = f * r
                    s = 1.0 / r
                    c *= s
                else:
                    s = f / g
                    r = math.hypot(s, 1.0)
                    e[i + 1] = g * r
                    c = 1.0 / r
                    s *= c
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if z is not None:
                    f = z[i + 1]
                    z[i + 1] = s * z[i] + c * f
                    z[i] = c * z[i] - s * f
            d[l] -= p
            e[l] = g
            e[m] = 0.0


def eigensystem(T: TridiagonalOperator, max_sweeps: int = 50) -> SpectralData:
    """Full spectral data of the truncation: ascending eigenvalues and
    normalized squared first eigenvector components as Gauss weights."""
    n = T.size
    d = [float(x) for x in T.d]
    e = [float(T.e[i + 1]) if i + 1 < n else 0.0 for i in range(n)]
    z = [0.0] * n
    z[0] = 1.0
    _ql_implicit(d, e, z, max_sweeps)
    order = np.argsort(np.array(d), kind="stable")
    nodes = np.array(d)[order]
    w = np.array(z)[order] ** 2
    w /= w.sum()
    return SpectralData(nodes, w)


def eigenvalues(T: TridiagonalOperator, max_sweeps: int = 50) -> np.ndarray:
    """Ascending eigenvalues only (no weight accumulation)."""
    n = T.size
    d = [float(x) for x in T.d]
    e = [float(T.e[i + 1]) if i + 1 < n else 0.0 for i in range(n)]
    _ql_implicit(d, e, None, max_sweeps)
    d.sort()
    return np.array(d)


def zeros(coeffs: MonicCoeffs, n: int) -> np.ndarray:
    """Zeros of the degree-n monic polynomial, ascending (eigenvalue route)."""
    return eigenvalues(build_operator(coeffs, n))


def quadrature_check(S: SpectralData, coeffs: MonicCoeffs, i: int, j: int) -> float:
    """Discrete inner product sum_k w_k P_i(x_k) P_j(x_k).

    The N-point rule is exact through degree 2N - 1; the stricter window
    i, j <= N/2 is enforced.  Contract: 0 for i != j, and the product of
    a_sq(1..i) for i == j (empty product 1).

    For the bounded family the target norms collapse like 4**-i (i!)**-4,
    so this binary64 path resolves the contract only at low degrees
    (roughly i <= 8); the certification suite re-derives the full-depth
    check in adaptive-precision arithmetic.
    """
    if min(i, j) < 0:
        raise ValueError("i and j must be >= 0")
    N = S.size
    if max(i, j) > N // 2:
        raise ValueError(f"Gauss exactness window requires i, j <= N/2 = {N // 2}")
    P = monic_value_table(coeffs, max(i, j), S.nodes)
    return float(np.dot(S.weights, P[i] * P[j]))


@dataclass(frozen=True)
class TraceDiagnostic:
    """Absolute eigenvalue sum of the N-truncation next to a computable
    dominating tail (a diagnostic proxy, not a proven truncation bound)."""

    N: int
    abs_eig_sum: float
    tail_estimate: float


def trace_diagnostic(coeffs: MonicCoeffs, N: int) -> TraceDiagnostic:
    """Sum of |eigenvalues| at truncation N, with the coefficient-tail
    estimate sum_{n>=N} (|b(n)| + 2 sqrt(a_sq(n)))."""
    if not isinstance(coeffs.params, Family1Params):
        raise TypeError("trace diagnostics require the bounded family H")
    if N < 1:
        raise ValueError("N must be >= 1")
    vals = eigenvalues(build_operator(coeffs, N))
    tb = f1_tail_bounds(coeffs.params, N)
    return TraceDiagnostic(N, float(np.sum(np.abs(vals))), tb.abs_b + 2.0 * tb.a)


# ---------------------------------------------------------------------------
# Independent oracle: bisection on Sturm counts of the recurrence
# ---------------------------------------------------------------------------


def _count_below(b: np.ndarray, a_sq: np.ndarray, t: float) -> int:
    """Number of zeros of P_n below t, via the pivot (ratio) form of the
    recurrence: u_k = (b_k - t) - a_sq(k)/u_{k-1} are the LDL^T pivots of
    J - tI, and negative pivots count eigenvalues below t."""
    n = b.size
    count = 0
    u = b[0] - t
    if u < 0.0:
        count += 1
    tiny = 1e-300
    for k in range(1, n):
        if u == 0.0:
            u = tiny
        u = (b[k] - t) - a_sq[k] / u
        if u < 0.0:
            count += 1
    return count


def bisection_zeros(coeffs: MonicCoeffs, n: int, tol: float | None = None) -> np.ndarray:
    """All n zeros of the degree-n monic polynomial by Sturm-count bisection.

    Entirely independent of the QL route; used to cross-certify eigensystem.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    b = coeffs.b_array(n)
    a_sq = coeffs.a_sq_array(n)
    a = np.zeros(n + 1)
    a[1:n] = np.sqrt(np.maximum(a_sq[1:n], 0.0))
    lo = float(np.min(b - a[:n] - a[1:]))
    hi = float(np.max(b + a[:n] + a[1:]))
    if tol is None:
        tol = 0.0  # bisect to float resolution; the mid == endpoint guard stops the loop
    out = np.empty(n)
    for k in range(n):
        x0, x1 = lo, hi
        while x1 - x0 > tol:
            mid = 0.5 * (x0 + x1)
            if mid in (x0, x1):
                break
            if _count_below(b, a_sq, mid) <= k:
                x0 = mid
            else:
                x1 = mid
        out[k] = 0.5 * (x0 + x1)
    return out
