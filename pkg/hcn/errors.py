from __future__ import annotations

from typing import Optional


class HcnError(Exception):
    """Base class for every error raised by the hcn package."""


class DomainError(HcnError, ValueError):
    """An argument lies outside the domain an operation supports."""


class ConfigError(HcnError, ValueError):
    """A scenario or configuration value is invalid; optionally names the offending line."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.message = message
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class SimulationError(ConfigError):
    """A sampled realization cannot be simulated (e.g. no BS in any tier)."""


class NumericalError(HcnError, ArithmeticError):
    """A series or quadrature failed to reach its tolerance."""

    def __init__(self, message: str, error_estimate: Optional[float] = None,
                 terms_used: Optional[int] = None):
        self.error_estimate = error_estimate
        self.terms_used = terms_used
        detail = []
        if error_estimate is not None:
            detail.append(f"error estimate {error_estimate:.3e}")
        if terms_used is not None:
            detail.append(f"{terms_used} terms")
        super().__init__(f"{message} ({', '.join(detail)})" if detail else message)
