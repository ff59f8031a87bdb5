"""Validated parameter sets for the two polynomial families.

Validation is eager: a parameter set that makes the defining recurrence
degenerate at some degree n is rejected at construction with a message
naming the offending n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class InvalidParameterError(ValueError):
    """A family parameter violates one of its invariants."""


class DegenerateRecurrenceError(ArithmeticError):
    """A recurrence divisor vanished at run time despite validation."""


def _require_finite(name, value):
    if not isinstance(value, (int, float)) or not math.isfinite(value):
        raise InvalidParameterError(f"{name} must be a finite real number (got {value!r})")


@dataclass(frozen=True)
class Family1Params:
    """Parameters (mu, nu, alpha, theta) of the four-parameter family H.

    Requires mu, nu > -1 and 0 < theta < pi.  The bracket
    (n + (mu+nu+1)/2)**2 + alpha must be nonzero for every integer n >= 0,
    which for alpha <= 0 excludes sqrt(-alpha) - (mu+nu+1)/2 being a
    nonnegative integer.
    """

    mu: float
    nu: float
    alpha: float
    theta: float

    def __post_init__(self):
        for name in ("mu", "nu", "alpha", "theta"):
            _require_finite(name, getattr(self, name))
        if not self.mu > -1.0:
            raise InvalidParameterError(f"mu must be > -1 (got {self.mu!r})")
        if not self.nu > -1.0:
            raise InvalidParameterError(f"nu must be > -1 (got {self.nu!r})")
        if not (0.0 < self.theta < math.pi) or math.sin(self.theta) == 0.0:
            raise InvalidParameterError(
                f"theta = {self.theta!r}: sin(theta) must be nonzero, which "
                "requires 0 < theta < pi (endpoints rejected)"
            )
        if self.alpha <= 0.0:
            h = self.h
            m = round(math.sqrt(-self.alpha) - h)
            if m >= 0 and (m + h) ** 2 + self.alpha == 0.0:
                raise InvalidParameterError(
                    f"(n + (mu+nu+1)/2)**2 + alpha vanishes at n = {m}: "
                    "the recurrence is degenerate there"
                )

    @property
    def family(self) -> str:
        return "H"

    @property
    def h(self) -> float:
        return 0.5 * (self.mu + self.nu + 1.0)

    def bracket(self, n: int) -> float:
        return (n + self.h) ** 2 + self.alpha

    def positive_definite(self) -> bool:
        """True when every a_sq(n), n >= 1, is positive.

        The bracket (n + h)**2 + alpha is increasing in n for n >= 0
        (h > -1/2), so all brackets are positive iff the n = 0 one is.
        """
        return self.bracket(0) > 0.0


@dataclass(frozen=True)
class Family2Params:
    """Parameters (mu, nu, sigma) of the three-parameter family G.

    Requires mu, nu > -1.  With B(n) = n + 1 + (mu+nu)/2, the combination
    sigma + B(n)**2 must be nonzero for every n >= 0.
    """

    mu: float
    nu: float
    sigma: float

    def __post_init__(self):
        for name in ("mu", "nu", "sigma"):
            _require_finite(name, getattr(self, name))
        if not self.mu > -1.0:
            raise InvalidParameterError(f"mu must be > -1 (got {self.mu!r})")
        if not self.nu > -1.0:
            raise InvalidParameterError(f"nu must be > -1 (got {self.nu!r})")
        if self.sigma <= 0.0:
            m = round(math.sqrt(-self.sigma) - 1.0 - 0.5 * (self.mu + self.nu))
            if m >= 0 and self.sigma + self.B(m) ** 2 == 0.0:
                raise InvalidParameterError(
                    f"sigma + B(n)**2 vanishes at n = {m}: "
                    "the recurrence is degenerate there"
                )

    @property
    def family(self) -> str:
        return "G"

    def B(self, n: int) -> float:
        return n + 1.0 + 0.5 * (self.mu + self.nu)

    def positive_definite(self) -> bool:
        # (sigma + B(n-1)**2)**2 > 0 and the remaining factors of a_sq are
        # positive for mu, nu > -1, so the G family is always positive definite.
        return True
