from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from scipy import special

from hcn.errors import DomainError, NumericalError

SERIES_RTOL = 1e-15
MAX_TERMS = 10_000

# Direct series for |z| <= SERIES_LIMIT, Pfaff series down to z = -INVERSION_TAU,
# inversion expansion below that.
SERIES_LIMIT = 0.5
INVERSION_TAU = 64.0

Method = Literal["auto", "series", "pfaff", "inversion"]


@dataclass(frozen=True)
class HypergeometricEval:
    """Value of 2F1 together with how it was obtained."""
    value: float
    terms_used: int
    converged: bool
    method: str = "series"


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return float(special.gammaln(x))


def _check_family(a: float, b: float, c: float, z: float) -> None:
    if a != 1.0:
        raise DomainError(f"only a = 1 is supported, got a={a!r}")
    if not 0.0 < b < 1.0:
        # b = 1 - 2/alpha; b >= 1 means alpha <= 2 (or alpha < 0)
        raise DomainError(f"b = 1 - 2/alpha must lie in (0, 1), got b={b!r} (alpha must exceed 2)")
    if not math.isclose(c, b + 1.0, rel_tol=0.0, abs_tol=1e-12):
        raise DomainError(f"only c = b + 1 is supported, got b={b!r}, c={c!r}")
    if z > 0:
        raise DomainError(f"z must be <= 0, got {z!r}")


def _sum_series(first: float, ratio, x: float, max_terms: int) -> tuple[float, int]:
    """Sum sum_n t_n with t_0 = first and t_{n+1} = t_n * ratio(n) * x."""
    term = first
    total = first
    for n in range(max_terms):
        term *= ratio(n) * x
        total += term
        if abs(term) < SERIES_RTOL * abs(total):
            return total, n + 2
    raise NumericalError("hypergeometric series did not converge within the term cap",
                         error_estimate=abs(term), terms_used=max_terms)


def _direct(b: float, c: float, z: float, max_terms: int) -> HypergeometricEval:
    if z == 0.0:
        return HypergeometricEval(1.0, 1, True, "series")
    value, n = _sum_series(1.0, lambda k: (b + k) / (c + k), z, max_terms)
    return HypergeometricEval(value, n, True, "series")


def _pfaff(b: float, c: float, z: float, max_terms: int) -> HypergeometricEval:
    # 2F1(1,b;c;z) = (1-z)^-1 2F1(1, c-b; c; z/(z-1)), argument in [0, 1)
    w = z / (z - 1.0)
    cb = c - b
    value, n = _sum_series(1.0, lambda k: (cb + k) / (c + k), w, max_terms)
    return HypergeometricEval(value / (1.0 - z), n, True, "pfaff")


def _inversion(b: float, z: float, max_terms: int) -> HypergeometricEval:
    # c = b + 1: split the Laplace-transform integral at zero, leaving a series in 1/tau
    tau = -z
    if tau <= 1.0:
        raise DomainError(f"inversion expansion needs z < -1, got {z!r}")
    beta = 1.0 / (1.0 - b)  # alpha / 2
    k_alpha = math.pi * (1.0 - b) / math.sin(math.pi * b)
    tail, n = _sum_series(1.0, lambda k: -(1.0 + k * beta) / (1.0 + (k + 1) * beta), 1.0 / tau, max_terms)
    z_value = k_alpha * math.exp((1.0 - b) * math.log(tau)) - tail
    return HypergeometricEval(z_value * b / ((1.0 - b) * tau), n, True, "inversion")


def gauss_2f1_unit_family(a: float, b: float, c: float, z: float, *,
                          method: Method = "auto", max_terms: int = MAX_TERMS) -> HypergeometricEval:
    """Gauss hypergeometric 2F1(a, b; c; z) for the interference family a=1, c=b+1, z <= 0.

    ``method="auto"`` uses the direct series for -0.5 <= z <= 0, the Pfaff transformation
    down to z = -64 and the inversion expansion beyond. A path that would need more than
    ``max_terms`` terms raises :class:`NumericalError`.
    """
    _check_family(a, b, c, z)
    if method == "auto":
        if z >= -SERIES_LIMIT:
            method = "series"
        elif z >= -INVERSION_TAU:
            method = "pfaff"
        else:
            method = "inversion"
    if method == "series":
        if z <= -1.0:
            raise DomainError(f"direct series diverges for z <= -1, got {z!r}")
        return _direct(b, c, z, max_terms)
    if method == "pfaff":
        return _pfaff(b, c, z, max_terms)
    if method == "inversion":
        return _inversion(b, z, max_terms)
    raise DomainError(f"unknown method {method!r}")


def _check_alpha(alpha: float) -> None:
    if not alpha > 2.0:
        raise DomainError(f"path loss exponent must exceed 2, got alpha={alpha!r}")


def z_kernel(tau: float, alpha: float) -> float:
    """Interference kernel Z(tau, alpha) = 2 tau/(alpha-2) * 2F1(1, 1-2/alpha; 2-2/alpha; -tau)."""
    _check_alpha(alpha)
    if not tau >= 0.0:
        raise DomainError(f"tau must be >= 0, got {tau!r}")
    if tau == 0.0:
        return 0.0
    b = 1.0 - 2.0 / alpha
    hyp = gauss_2f1_unit_family(1.0, b, 2.0 - 2.0 / alpha, -tau)
    return 2.0 * tau / (alpha - 2.0) * hyp.value


def z_kernel_asymptote(alpha: float) -> float:
    """K(alpha) with Z(tau, alpha) ~ K(alpha) tau^(2/alpha) - 1 as tau grows."""
    _check_alpha(alpha)
    delta = 2.0 / alpha
    return math.pi * delta / math.sin(math.pi * delta)
