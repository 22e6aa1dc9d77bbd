from __future__ import annotations

import math
from typing import List

from hcn.errors import DomainError
from hcn.model.params import NetworkParams


def power_ratio(params: NetworkParams, i: int, j: int) -> float:
    """C_j = (P_j / P_i)^(1/alpha), the distance scaling of tier j seen from tier i."""
    p_i = params.tier(i).tx_power
    p_j = params.tier(j).tx_power
    if i == j:
        return 1.0
    return math.exp(math.log(p_j / p_i) / params.alpha)


def weighted_density(params: NetworkParams, i: int) -> float:
    """sum_j lambda_j C_j^2 with C_j relative to tier i."""
    return math.fsum(t.density * power_ratio(params, i, j) ** 2 for j, t in enumerate(params.tiers))


def association_probability(params: NetworkParams, i: int) -> float:
    """Probability that the typical UE's max-average-power server belongs to tier i."""
    return params.tier(i).density / weighted_density(params, i)


def association_probabilities(params: NetworkParams) -> List[float]:
    return [association_probability(params, i) for i in range(params.num_tiers)]


def serving_distance_pdf(params: NetworkParams, i: int, r: float) -> float:
    """Density of the distance to the serving BS given the typical UE is served by tier i."""
    if r < 0:
        raise DomainError(f"distance must be >= 0, got {r!r}")
    s = weighted_density(params, i)
    return 2.0 * math.pi * params.tier(i).density * r / association_probability(params, i) \
        * math.exp(-math.pi * s * r * r)


def serving_distance_cdf(params: NetworkParams, i: int, r: float) -> float:
    # lambda_i / A_i = sum_j lambda_j C_j^2, so the law is Rayleigh with that density
    if r < 0:
        raise DomainError(f"distance must be >= 0, got {r!r}")
    return -math.expm1(-math.pi * weighted_density(params, i) * r * r)
