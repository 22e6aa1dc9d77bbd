from hcn.cli.config import ScenarioConfig, load_config, parse_config
from hcn.cli.main import main
from hcn.cli.service import ExperimentService
from hcn.cli.sweep import EngineGap, SweepResult, SweepRow, engine_gaps, read_sweep_csv, write_sweep_csv

__all__ = [
    "ExperimentService", "ScenarioConfig", "parse_config", "load_config", "main",
    "SweepResult", "SweepRow", "EngineGap", "engine_gaps", "read_sweep_csv", "write_sweep_csv",
]
