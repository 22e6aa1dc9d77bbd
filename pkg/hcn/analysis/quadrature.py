from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy import integrate

from hcn.errors import DomainError, NumericalError

DEFAULT_T_MAX = 40.0


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for the adaptive quadratures of the analytical engine."""
    relative_tolerance: float = 1e-8
    absolute_tolerance: float = 1e-12
    max_subdivisions: int = 200
    t_max: float = DEFAULT_T_MAX  # outer cap of the rate integral, bps/Hz
    tail_correction: bool = True

    def __post_init__(self) -> None:
        if not (self.relative_tolerance > 0 and self.absolute_tolerance > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")
        if not self.t_max > 0:
            raise DomainError("t_max must be positive")

    @property
    def horizon(self) -> float:
        """U with exp(-U) equal to the absolute tolerance (never below 1)."""
        return max(1.0, -math.log(self.absolute_tolerance))

    def halved(self) -> QuadratureSpec:
        return QuadratureSpec(self.relative_tolerance / 2, self.absolute_tolerance / 2,
                              self.max_subdivisions, self.t_max, self.tail_correction)


def integrate_1d(fn: Callable[[float], float], lower: float, upper: float, quad: QuadratureSpec,
                 what: str = "integral") -> float:
    """Adaptive Gauss-Kronrod quadrature of ``fn`` on [lower, upper]; raises on non-convergence."""
    value, abserr, info, *rest = integrate.quad(
        fn, lower, upper,
        epsabs=quad.absolute_tolerance,
        epsrel=quad.relative_tolerance,
        limit=quad.max_subdivisions,
        full_output=1,
    )
    if not math.isfinite(value):
        raise NumericalError(f"{what} is not finite", error_estimate=abserr)
    target = max(quad.absolute_tolerance, quad.relative_tolerance * abs(value))
    if rest and abserr > target:
        # quad only returns a message when ier > 0
        raise NumericalError(f"{what} did not converge: {rest[0]}", error_estimate=abserr)
    return value
