from hcn.sim.channel import RATE_CAP_BITS, mean_received_power, measure_sinr, spectral_efficiency
from hcn.sim.config import Boundary, BoundaryKind, EstimateWithCI, SimConfig
from hcn.sim.deployment import Deployment, associate, distances, draft_deployment, sample_ppp
from hcn.sim.dump import write_realization
from hcn.sim.service import (
    CoverageEstimate,
    RateEstimate,
    SimulationService,
    SimulationSummary,
    TrialOutcome,
    run_trial,
    summarize,
)
from hcn.sim.streams import stream

__all__ = [
    "SimulationService", "SimConfig", "Boundary", "BoundaryKind", "EstimateWithCI",
    "Deployment", "sample_ppp", "associate", "draft_deployment", "distances",
    "measure_sinr", "mean_received_power", "spectral_efficiency", "RATE_CAP_BITS", "write_realization", "stream",
    "SimulationSummary", "CoverageEstimate", "RateEstimate", "TrialOutcome", "run_trial", "summarize",
]
