from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

from hcn.analysis.quadrature import QuadratureSpec, integrate_1d
from hcn.errors import DomainError
from hcn.model import NetworkParams, TierDerived, power_ratio, weighted_density
from hcn.specfun import z_kernel


@dataclass(frozen=True)
class CoverageReport:
    """Coverage at one SINR threshold: per-tier conditional, A_i-weighted and overall."""
    tau: float
    per_tier_conditional: List[float]
    per_tier_weighted: List[float]
    overall: float
    interference_limited: bool  # sigma^2 == 0


def interference_ratio(params: NetworkParams, derived: Sequence[TierDerived], i: int) -> float:
    """kappa_i = sum_j active_j C_j^2 / sum_j lambda_j C_j^2, the share of interferers left on."""
    if len(derived) != params.num_tiers:
        raise DomainError(f"expected {params.num_tiers} derived tiers, got {len(derived)}")
    active = math.fsum(d.active_density * power_ratio(params, i, j) ** 2 for j, d in enumerate(derived))
    return active / weighted_density(params, i)


def conditional_coverage(params: NetworkParams, i: int, tau: float, kappa: float,
                         quad: QuadratureSpec) -> float:
    """E_r P[SINR_i > tau] for a given interference ratio kappa.

    With u = pi * sum_j lambda_j C_j^2 r^2 the serving-distance law becomes exp(-u) du and the
    interference exponent kappa Z u. Rescaling v = u * scale keeps the integrand O(1) wide
    whatever the threshold, so [0, horizon] always bounds the tail by the absolute tolerance.
    """
    decay = 1.0 + kappa * z_kernel(tau, params.alpha) if tau > 0 else 1.0
    noise = params.noise_power
    if noise == 0.0 or tau == 0.0:
        return integrate_1d(lambda v: math.exp(-v) / decay, 0.0, quad.horizon, quad, "coverage integral")

    half_alpha = params.alpha / 2.0
    s = weighted_density(params, i)
    # tau sigma^2 r^alpha / P_i = snr_coeff * u^(alpha/2)
    snr_coeff = tau * noise / params.tier(i).tx_power * (math.pi * s) ** (-half_alpha)
    if not math.isfinite(snr_coeff):
        return 0.0
    scale = max(decay, snr_coeff ** (1.0 / half_alpha))

    def integrand(v: float) -> float:
        u = v / scale
        return math.exp(-decay * u - snr_coeff * u ** half_alpha) / scale

    return integrate_1d(integrand, 0.0, quad.horizon, quad, "coverage integral")


def coverage_tier(params: NetworkParams, derived: Sequence[TierDerived], i: int, tau: float,
                  quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Conditional coverage of a UE served by tier i.

    Active densities enter the interference term, deployed densities the serving-distance law.
    """
    if not tau >= 0:
        raise DomainError(f"SINR threshold must be >= 0, got {tau!r}")
    kappa = interference_ratio(params, derived, i)
    return conditional_coverage(params, i, tau, kappa, quad)
