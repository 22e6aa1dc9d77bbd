from __future__ import annotations

import math
from typing import Literal, Optional, Sequence, Union

from hcn.analysis.coverage import CoverageReport, coverage_tier
from hcn.analysis.quadrature import QuadratureSpec
from hcn.analysis.rate import RateReport, rate_tier_integral
from hcn.errors import DomainError
from hcn.logging.config import get_logger
from hcn.logging.instrumentation import traced
from hcn.model import ModelService, NetworkParams, TierDerived

log = get_logger("analysis.service")


class AnalysisService:
    """
    Service layer assembling per-tier analytical results into network-wide reports.
    """

    @classmethod
    @traced("analysis.coverage_overall")
    def coverage_overall(cls, params: NetworkParams, derived: Sequence[TierDerived], tau: float,
                         quad: QuadratureSpec = QuadratureSpec()) -> CoverageReport:
        """Overall coverage: conditional per-tier coverages weighted by association probability."""
        log.debug("coverage_overall.call", tau=tau, tiers=params.num_tiers)
        conditional = [coverage_tier(params, derived, i, tau, quad) for i in range(params.num_tiers)]
        weighted = [d.association_prob * c for d, c in zip(derived, conditional)]
        report = CoverageReport(
            tau=tau,
            per_tier_conditional=conditional,
            per_tier_weighted=weighted,
            overall=math.fsum(weighted),
            interference_limited=params.noise_power == 0.0,
        )
        log.debug("coverage_overall.done", overall=report.overall)
        return report

    @classmethod
    @traced("analysis.rate_overall")
    def rate_overall(cls, params: NetworkParams, derived: Sequence[TierDerived],
                     quad: QuadratureSpec = QuadratureSpec()) -> RateReport:
        """Mean UE rate (sum A_i R_i) and area rate density (sum active_i R_i)."""
        log.debug("rate_overall.call", tiers=params.num_tiers)
        integrals = [rate_tier_integral(params, derived, i, quad) for i in range(params.num_tiers)]
        rates = [r.value for r in integrals]
        weighted = [d.association_prob * r for d, r in zip(derived, rates)]
        area = [d.active_density * r for d, r in zip(derived, rates)]
        report = RateReport(
            per_tier_rate=rates,
            per_tier_weighted=weighted,
            per_tier_area_rate=area,
            mean_ue_rate=math.fsum(weighted),
            area_rate_density=math.fsum(area),
            t_max=quad.t_max,
            truncated=any(r.truncated for r in integrals),
            interference_limited=params.noise_power == 0.0,
        )
        log.debug("rate_overall.done", mean_ue_rate=report.mean_ue_rate,
                  area_rate_density=report.area_rate_density)
        return report

    @classmethod
    @traced("analysis.fully_loaded_baseline")
    def fully_loaded_baseline(cls, params: NetworkParams, mode: Literal["coverage", "rate"],
                              tau: Optional[float] = None,
                              quad: QuadratureSpec = QuadratureSpec()) -> Union[CoverageReport, RateReport]:
        """Same reports with idle mode disabled (every deployed BS interferes)."""
        derived = ModelService.full_load(params)
        if mode == "coverage":
            if tau is None:
                raise DomainError("coverage baseline needs a threshold")
            return cls.coverage_overall(params, derived, tau, quad)
        if mode == "rate":
            return cls.rate_overall(params, derived, quad)
        raise DomainError(f"unknown baseline mode {mode!r}")
