from hcn.analysis.coverage import CoverageReport, conditional_coverage, coverage_tier, interference_ratio
from hcn.analysis.quadrature import QuadratureSpec, integrate_1d
from hcn.analysis.rate import RateIntegral, RateReport, rate_tier, rate_tier_integral
from hcn.analysis.service import AnalysisService

__all__ = [
    "AnalysisService", "QuadratureSpec", "CoverageReport", "RateReport", "RateIntegral",
    "coverage_tier", "conditional_coverage", "interference_ratio",
    "rate_tier", "rate_tier_integral", "integrate_1d",
]
