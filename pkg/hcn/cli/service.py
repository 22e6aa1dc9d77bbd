from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional, Sequence

from hcn.analysis import AnalysisService, CoverageReport, RateReport
from hcn.cli.config import ENGINE_ORDER, METRIC_ORDER, ScenarioConfig
from hcn.cli.sweep import SweepResult, SweepRow, row_tiers
from hcn.errors import ConfigError, HcnError
from hcn.logging.config import get_logger
from hcn.logging.instrumentation import traced
from hcn.model import ModelService, NetworkParams
from hcn.sim import SimConfig, SimulationService, SimulationSummary, write_realization

log = get_logger("cli.service")

_SIM_MEASURED = {"coverage", "rate", "ase"}


def _analysis_values(params: NetworkParams, metrics: Sequence[str], tau: float,
                     full_load: bool) -> Dict[str, List[float]]:
    derived = ModelService.full_load(params) if full_load else ModelService.derive(params)
    values: Dict[str, List[float]] = {}
    coverage: Optional[CoverageReport] = None
    rate: Optional[RateReport] = None
    if "coverage" in metrics:
        coverage = AnalysisService.coverage_overall(params, derived, tau)
    if "rate" in metrics or "ase" in metrics:
        rate = AnalysisService.rate_overall(params, derived)
    for metric in metrics:
        if metric == "idle":
            values[metric] = [d.idle_prob for d in derived]
        elif metric == "association":
            values[metric] = [d.association_prob for d in derived]
        elif metric == "coverage":
            values[metric] = coverage.per_tier_conditional + [coverage.overall]
        elif metric == "rate":
            values[metric] = rate.per_tier_rate + [rate.mean_ue_rate]
        elif metric == "ase":
            values[metric] = rate.per_tier_area_rate + [rate.area_rate_density]
    return values


def _sim_values(summary: SimulationSummary, metrics: Sequence[str]) -> Dict[str, List[tuple]]:
    picks = {
        "idle": summary.idle_fraction,
        "association": summary.association,
        "coverage": summary.coverage_per_tier + [summary.coverage_overall],
        "rate": summary.rate_per_tier + [summary.rate_overall],
        "ase": summary.area_rate_per_tier + [summary.area_rate_density],
    }
    return {m: [(e.mean, e.half_width_95) for e in picks[m]] for m in metrics}


class ExperimentService:
    """
    Service layer running parameter sweeps and realization dumps from a scenario config.
    """

    @classmethod
    @traced("experiment.run_sweep")
    def run_sweep(cls, config: ScenarioConfig, engines: Optional[Sequence[str]] = None,
                  seed: Optional[int] = None, workers: Optional[int] = None) -> SweepResult:
        """
        Evaluate every requested engine and metric at each sweep point.
        Engine failures become rows with an error sentinel and are listed in ``failures``.
        """
        sweep = config.sweep
        if sweep is None:
            raise ConfigError("a [sweep] section is required to run a sweep")
        wanted = set(engines if engines is not None else sweep.engines)
        engine_list = [e for e in ENGINE_ORDER if e in wanted]
        metrics = [m for m in METRIC_ORDER if m in sweep.metrics]
        sim_config: Optional[SimConfig] = config.sim_config(seed, workers) if "sim" in engine_list else None
        result = SweepResult(sweep_param=sweep.parameter)
        log.info("sweep.start", parameter=sweep.parameter, points=sweep.steps, engines=engine_list,
                 metrics=metrics, tau_db=sweep.tau_db)
        if config.network.noise_power_dbm is None:
            log.warning("sweep.noise_defaulted", noise_power=0.0)

        for value in sweep.values:
            params = config.network_params(value)
            for engine in engine_list:
                try:
                    if engine == "sim":
                        summary = SimulationService.run(params, sim_config, tau=sweep.tau,
                                                        measure=bool(_SIM_MEASURED & set(metrics)))
                        cells = _sim_values(summary, metrics)
                    else:
                        cells = {
                            m: [(v, None) for v in vs]
                            for m, vs in _analysis_values(params, metrics, sweep.tau,
                                                          full_load=engine == "baseline").items()
                        }
                except HcnError as e:
                    log.error("sweep.engine_failed", value=value, engine=engine, error=str(e))
                    result.failures.append(f"{engine} at {sweep.parameter}={value}: {e}")
                    cells = {m: [(None, None)] * len(row_tiers(m, params.labels)) for m in metrics}
                for metric in metrics:
                    for tier, (res, ci) in zip(row_tiers(metric, params.labels), cells[metric]):
                        result.rows.append(SweepRow(sweep.parameter, value, engine, metric, tier, res, ci))
            log.info("sweep.point.done", value=value)
        log.info("sweep.done", rows=len(result.rows), failures=len(result.failures))
        return result

    @classmethod
    @traced("experiment.dump_realization")
    def dump_realization(cls, config: ScenarioConfig, path: str | Path, seed: Optional[int] = None) -> int:
        """Sample one deployment (trial 0 of the configured seed) and write it to ``path``."""
        params = config.network_params()
        sim = config.sim_config(seed)
        deployment = SimulationService.realization(params, sim)
        with open(path, "w", encoding="utf-8", newline="\n") as out:
            lines = write_realization(deployment, out)
        log.info("dump.done", path=str(path), lines=lines, seed=sim.seed,
                 active=deployment.active_counts(), deployed=deployment.bs_counts())
        return lines

