from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, TypeVar

import numpy as np

from hcn.errors import SimulationError
from hcn.logging.config import get_logger
from hcn.logging.instrumentation import traced
from hcn.model import NetworkParams
from hcn.sim.channel import RATE_CAP_BITS, measure_sinr, spectral_efficiency
from hcn.sim.config import MIN_BS_PER_TIER, MIN_UES, EstimateWithCI, SimConfig
from hcn.sim.deployment import Deployment, associate, draft_deployment
from hcn.sim.streams import stream

log = get_logger("sim.service")

MAX_RESAMPLES = 100

T = TypeVar("T")


@dataclass(frozen=True)
class TrialOutcome:
    """Everything one realization contributes to the estimators."""
    bs_counts: List[int]
    active_counts: List[int]
    tier_ue_counts: List[int]
    num_ues: int
    probe_tier: int = -1
    coverage: float = math.nan  # fraction of fading draws with SINR > tau
    rate: float = math.nan  # mean log2(1 + SINR) over fading draws
    resamples: int = 0
    rate_capped: bool = False


@dataclass(frozen=True)
class SimulationSummary:
    labels: List[str]
    idle_fraction: List[EstimateWithCI]
    association: List[EstimateWithCI]
    active_density: List[EstimateWithCI]
    coverage_per_tier: List[EstimateWithCI]
    coverage_overall: EstimateWithCI
    rate_per_tier: List[EstimateWithCI]
    rate_overall: EstimateWithCI
    area_rate_per_tier: List[EstimateWithCI]
    area_rate_density: EstimateWithCI
    trials: int
    resamples: int
    rate_truncated: bool = False  # some probe saw no interference and no noise


@dataclass(frozen=True)
class CoverageEstimate:
    per_tier: List[EstimateWithCI]
    overall: EstimateWithCI


@dataclass(frozen=True)
class RateEstimate:
    per_tier: List[EstimateWithCI]
    overall: EstimateWithCI
    per_tier_area_rate: List[EstimateWithCI]
    area_rate_density: EstimateWithCI
    truncated: bool = False


def _check_window(params: NetworkParams, sim: SimConfig) -> None:
    expected_bs = [t.density * sim.area for t in params.tiers]
    expected_ues = params.ue_density * sim.area
    if min(expected_bs) < MIN_BS_PER_TIER or expected_ues < MIN_UES:
        log.warning("sim.window.small", window_side=sim.window_side,
                    expected_bs=expected_bs, expected_ues=expected_ues)


def _settled_deployment(params: NetworkParams, sim: SimConfig, trial: int) -> tuple[Deployment, np.ndarray, int]:
    """Associated deployment with at least one probe candidate, resampling empty windows."""
    for attempt in range(MAX_RESAMPLES + 1):
        deployment = associate(draft_deployment(params, sim, trial, attempt), params)
        candidates = deployment.probe_candidates()
        if candidates.size:
            return deployment, candidates, attempt
        log.info("sim.trial.resampled", trial=trial, attempt=attempt, ues=deployment.num_ues)
    raise SimulationError(f"trial {trial} produced no probe UE after {MAX_RESAMPLES} resamples")


def run_trial(params: NetworkParams, sim: SimConfig, trial: int, tau: Optional[float] = None,
              measure: bool = True) -> TrialOutcome:
    """One realization: geometry, association, idle mask and (optionally) the probe UE's SINR."""
    deployment, candidates, attempt = _settled_deployment(params, sim, trial)
    tier_counts = np.bincount(deployment.serving_tier, minlength=params.num_tiers)
    outcome = dict(
        bs_counts=deployment.bs_counts(),
        active_counts=deployment.active_counts(),
        tier_ue_counts=[int(c) for c in tier_counts],
        num_ues=deployment.num_ues,
        resamples=attempt,
    )
    if not measure:
        return TrialOutcome(**outcome)
    probe_rng = stream(sim.seed, trial, "probe", attempt=attempt)
    probe = int(candidates[probe_rng.integers(candidates.size)])
    sinr = measure_sinr(deployment, params, probe, stream(sim.seed, trial, "fading", attempt=attempt),
                        draws=sim.fading_draws_per_trial, fading=sim.fading)
    probe_tier = int(deployment.serving_tier[probe])
    capped = not bool(np.all(np.isfinite(sinr)))
    if capped:
        log.warning("sim.trial.unbounded_sinr", trial=trial, probe_tier=probe_tier, rate_cap=RATE_CAP_BITS)
    return TrialOutcome(
        **outcome,
        probe_tier=probe_tier,
        coverage=float(np.mean(sinr > tau)) if tau is not None else math.nan,
        rate=float(np.mean(spectral_efficiency(sinr))),
        rate_capped=capped,
    )


def _map_trials(fn: Callable[[int], T], trials: int, workers: int) -> List[T]:
    """Evaluate ``fn`` for every trial index; results come back in trial order."""
    if workers == 1:
        return [fn(k) for k in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(trials)))


def _per_tier(outcomes: Sequence[TrialOutcome], num_tiers: int, value: Callable[[TrialOutcome, int], float],
              keep: Callable[[TrialOutcome, int], bool]) -> List[EstimateWithCI]:
    return [
        EstimateWithCI.from_samples([value(o, j) for o in outcomes if keep(o, j)])
        for j in range(num_tiers)
    ]


def summarize(params: NetworkParams, sim: SimConfig, outcomes: Sequence[TrialOutcome]) -> SimulationSummary:
    """Reduce trial outcomes (in trial order) into estimates."""
    m = params.num_tiers
    idle = _per_tier(outcomes, m, lambda o, j: 1.0 - o.active_counts[j] / o.bs_counts[j],
                     lambda o, j: o.bs_counts[j] > 0)
    association = _per_tier(outcomes, m, lambda o, j: o.tier_ue_counts[j] / o.num_ues,
                            lambda o, j: o.num_ues > 0)
    active = _per_tier(outcomes, m, lambda o, j: o.active_counts[j] / sim.area, lambda o, j: True)

    measured = [o for o in outcomes if o.probe_tier >= 0]
    coverage = _per_tier(measured, m, lambda o, j: o.coverage, lambda o, j: o.probe_tier == j)
    rate = _per_tier(measured, m, lambda o, j: o.rate, lambda o, j: o.probe_tier == j)
    area_rate = [
        EstimateWithCI(a.mean * r.mean, a.mean * r.half_width_95, r.samples)
        for a, r in zip(active, rate)
    ]
    area_total = EstimateWithCI(
        math.fsum(x.mean for x in area_rate),
        math.fsum(x.half_width_95 for x in area_rate),
        len(measured),
    )
    return SimulationSummary(
        labels=params.labels,
        idle_fraction=idle,
        association=association,
        active_density=active,
        coverage_per_tier=coverage,
        coverage_overall=EstimateWithCI.from_samples([o.coverage for o in measured]),
        rate_per_tier=rate,
        rate_overall=EstimateWithCI.from_samples([o.rate for o in measured]),
        area_rate_per_tier=area_rate,
        area_rate_density=area_total,
        trials=len(outcomes),
        resamples=sum(o.resamples for o in outcomes),
        rate_truncated=any(o.rate_capped for o in measured),
    )


class SimulationService:
    """
    Service layer for Monte Carlo estimation of the quantities the analysis computes.
    """

    @classmethod
    @traced("sim.run")
    def run(cls, params: NetworkParams, sim: SimConfig, tau: Optional[float] = None,
            measure: bool = True) -> SimulationSummary:
        """Run every trial (in parallel when ``sim.workers`` > 1) and summarize."""
        log.info("run.start", trials=sim.trials, window_side=sim.window_side, seed=sim.seed,
                 boundary=sim.boundary.kind.value, workers=sim.workers, measure=measure)
        _check_window(params, sim)
        outcomes = _map_trials(lambda k: run_trial(params, sim, k, tau, measure), sim.trials, sim.workers)
        summary = summarize(params, sim, outcomes)
        if summary.resamples:
            log.warning("run.resampled", resamples=summary.resamples)
        log.info("run.done", trials=summary.trials)
        return summary

    @classmethod
    def estimate_coverage(cls, params: NetworkParams, sim: SimConfig, tau: float) -> CoverageEstimate:
        summary = cls.run(params, sim, tau=tau)
        return CoverageEstimate(per_tier=summary.coverage_per_tier, overall=summary.coverage_overall)

    @classmethod
    def estimate_idle_fraction(cls, params: NetworkParams, sim: SimConfig) -> List[EstimateWithCI]:
        return cls.run(params, sim, measure=False).idle_fraction

    @classmethod
    def estimate_rate(cls, params: NetworkParams, sim: SimConfig) -> RateEstimate:
        summary = cls.run(params, sim)
        return RateEstimate(
            per_tier=summary.rate_per_tier,
            overall=summary.rate_overall,
            per_tier_area_rate=summary.area_rate_per_tier,
            area_rate_density=summary.area_rate_density,
            truncated=summary.rate_truncated,
        )

    @classmethod
    def estimate_association(cls, params: NetworkParams, sim: SimConfig) -> List[EstimateWithCI]:
        """Per-trial fraction of UEs served by each tier."""
        return cls.run(params, sim, measure=False).association

    @classmethod
    def estimate_active_density(cls, params: NetworkParams, sim: SimConfig) -> List[EstimateWithCI]:
        return cls.run(params, sim, measure=False).active_density

    @classmethod
    @traced("sim.sample_serving_distances")
    def sample_serving_distances(cls, params: NetworkParams, sim: SimConfig) -> List[np.ndarray]:
        """Serving distances of every UE in every trial, split by serving tier."""

        def one(trial: int) -> Deployment:
            return _settled_deployment(params, sim, trial)[0]

        deployments = _map_trials(one, sim.trials, sim.workers)
        pooled: List[List[np.ndarray]] = [[] for _ in range(params.num_tiers)]
        for deployment in deployments:
            r = deployment.serving_distances()
            for j in range(params.num_tiers):
                pooled[j].append(r[deployment.serving_tier == j])
        return [np.concatenate(chunks) if chunks else np.zeros(0) for chunks in pooled]

    @classmethod
    @traced("sim.realization")
    def realization(cls, params: NetworkParams, sim: SimConfig, trial: int = 0) -> Deployment:
        """The associated deployment of one trial, exactly as the estimators see it."""
        return _settled_deployment(params, sim, trial)[0]
