from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

from hcn.analysis.coverage import conditional_coverage, interference_ratio
from hcn.analysis.quadrature import QuadratureSpec, integrate_1d
from hcn.logging.config import get_logger
from hcn.model import NetworkParams, TierDerived
from hcn.specfun import z_kernel, z_kernel_asymptote

log = get_logger("analysis.rate")

LN2 = math.log(2.0)
# exp() overflows past this; the tail integrand is at its s -> 0 limit long before
MAX_LOG_THRESHOLD = 700.0


@dataclass(frozen=True)
class RateIntegral:
    """Outcome of the outer t-integral for one tier."""
    value: float
    t_max: float
    tail: float
    truncated: bool


@dataclass(frozen=True)
class RateReport:
    """Average ergodic rates (bps/Hz) and their area densities (bps/Hz/km^2)."""
    per_tier_rate: List[float]
    per_tier_weighted: List[float]  # A_i R_i, the summands of mean_ue_rate
    per_tier_area_rate: List[float]
    mean_ue_rate: float
    area_rate_density: float
    t_max: float
    truncated: bool
    interference_limited: bool


def _coverage_at(params: NetworkParams, i: int, tau: float, kappa: float, quad: QuadratureSpec) -> float:
    if params.noise_power == 0.0:
        # the r-integral is exact: 1 / (1 + kappa Z)
        return 1.0 / (1.0 + kappa * z_kernel(tau, params.alpha)) if tau > 0 else 1.0
    return conditional_coverage(params, i, tau, kappa, quad)


def _tail(params: NetworkParams, i: int, kappa: float, quad: QuadratureSpec) -> float:
    """Integral over t > t_max in s = 2^(-2t/alpha), where the integrand has a finite s -> 0 limit."""
    half_alpha = params.alpha / 2.0
    jacobian = half_alpha / LN2
    s_max = math.exp(-quad.t_max * LN2 / half_alpha)
    if params.noise_power == 0.0:
        limit = jacobian / (kappa * z_kernel_asymptote(params.alpha))
    else:
        limit = 0.0

    def integrand(s: float) -> float:
        if s <= 0.0:
            return limit
        log_two_t = -half_alpha * math.log(s)  # ln 2^t
        if log_two_t > MAX_LOG_THRESHOLD:
            return limit
        tau = math.expm1(log_two_t)
        return jacobian * _coverage_at(params, i, tau, kappa, quad) / s

    return integrate_1d(integrand, 0.0, s_max, quad, "rate tail integral")


def rate_tier_integral(params: NetworkParams, derived: Sequence[TierDerived], i: int,
                       quad: QuadratureSpec = QuadratureSpec()) -> RateIntegral:
    """R_i = int_0^inf P[SINR_i > 2^t - 1] dt, with the truncation bookkeeping."""
    kappa = interference_ratio(params, derived, i)

    def integrand(t: float) -> float:
        return _coverage_at(params, i, math.expm1(t * LN2), kappa, quad)

    body = integrate_1d(integrand, 0.0, quad.t_max, quad, "rate integral")
    # coverage is decreasing in the threshold, so the integrand at t_max bounds the rest
    bound = integrand(quad.t_max)
    if bound <= quad.absolute_tolerance:
        return RateIntegral(body, quad.t_max, 0.0, False)
    if quad.tail_correction and (kappa > 0.0 or params.noise_power > 0.0):
        tail = _tail(params, i, kappa, quad)
        return RateIntegral(body + tail, quad.t_max, tail, False)
    log.warning("rate.truncated", tier=params.labels[i], t_max=quad.t_max, integrand_bound=bound)
    return RateIntegral(body, quad.t_max, 0.0, True)


def rate_tier(params: NetworkParams, derived: Sequence[TierDerived], i: int,
              quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Average ergodic rate (bps/Hz) of a UE served by tier i."""
    return rate_tier_integral(params, derived, i, quad).value
