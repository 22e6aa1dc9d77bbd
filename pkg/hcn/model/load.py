from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from scipy import stats

from hcn.errors import DomainError, NumericalError
from hcn.model.association import association_probability
from hcn.model.params import NetworkParams
from hcn.specfun import log_gamma

TAIL_TOLERANCE = 1e-12
MAX_SERIES_TERMS = 1_000_000


def _cell_rate(params: NetworkParams, i: int) -> float:
    return params.rate_b * params.tier(i).density


def cell_size_pdf(params: NetworkParams, i: int, x: float) -> float:
    """Gamma(q, b*lambda_i) approximation of the Voronoi cell area density at x km^2."""
    if not x > 0:
        raise DomainError(f"cell area must be positive, got {x!r}")
    q = params.shape_q
    rate = _cell_rate(params, i)
    return math.exp(q * math.log(rate) + (q - 1.0) * math.log(x) - rate * x - log_gamma(q))


def _nb_success_prob(params: NetworkParams, i: int) -> float:
    rate = _cell_rate(params, i)
    return rate / (params.ue_density + rate)


def ue_count_pmf(params: NetworkParams, i: int, n: int) -> float:
    """P[N_i = n]: negative-binomial count of UEs in a tier-i cell, evaluated in log space."""
    if n < 0:
        raise DomainError(f"UE count must be >= 0, got {n!r}")
    q = params.shape_q
    rate = _cell_rate(params, i)
    total = params.ue_density + rate
    log_p = (log_gamma(n + q) - log_gamma(n + 1.0) - log_gamma(q)
             + q * math.log(rate / total))
    if n > 0:
        log_p += n * math.log(params.ue_density / total)
    return math.exp(log_p)


def ue_count_mean(params: NetworkParams, i: int) -> float:
    return params.shape_q * params.ue_density / _cell_rate(params, i)


def idle_probability(params: NetworkParams, i: int, association_prob: Optional[float] = None) -> float:
    """Probability that a tier-i BS serves nobody: E[(1 - A_i)^N_i] via the negative-binomial PGF."""
    a_i = association_probability(params, i) if association_prob is None else association_prob
    rate = _cell_rate(params, i)
    return math.exp(params.shape_q * math.log(rate / (rate + params.ue_density * a_i)))


@dataclass(frozen=True)
class IdleSeries:
    value: float
    terms_used: int
    tail_bound: float


def idle_probability_series(params: NetworkParams, i: int, association_prob: Optional[float] = None,
                            tolerance: float = TAIL_TOLERANCE) -> IdleSeries:
    """Truncated sum_n P[N_i=n] (1-A_i)^n; stops once the remaining tail is provably below ``tolerance``."""
    a_i = association_probability(params, i) if association_prob is None else association_prob
    count_law = stats.nbinom(params.shape_q, _nb_success_prob(params, i))
    keep = 1.0 - a_i
    total = 0.0
    for n in range(MAX_SERIES_TERMS):
        total += ue_count_pmf(params, i, n) * keep ** n
        # remaining terms are each <= P[N_i = m] * keep^(n+1)
        bound = float(count_law.sf(n)) * keep ** (n + 1)
        if bound < tolerance:
            return IdleSeries(total, n + 1, bound)
    raise NumericalError("idle-probability series did not reach its tail bound",
                         error_estimate=bound, terms_used=MAX_SERIES_TERMS)


def active_density(params: NetworkParams, i: int, idle_prob: Optional[float] = None) -> float:
    """Density of tier-i BSs with at least one associated UE."""
    p_off = idle_probability(params, i) if idle_prob is None else idle_prob
    return params.tier(i).density * (1.0 - p_off)
