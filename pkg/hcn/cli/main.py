from __future__ import annotations

import argparse
import sys
from collections import defaultdict
from pathlib import Path
from typing import List, Optional, Sequence

from dotenv import load_dotenv

from hcn import __version__
from hcn.cli.config import ScenarioConfig, load_config
from hcn.cli.service import ExperimentService
from hcn.cli.sweep import SweepResult, engine_gaps, write_sweep_csv
from hcn.errors import ConfigError, HcnError, NumericalError
from hcn.logging.config import configure_logging, get_logger
from hcn.logging.context import clear_run_context, new_run_context
from hcn.logging.instrumentation import init_tracing

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3

log = get_logger("cli")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hcn",
        description="Coverage, rate and idle-mode statistics of multi-tier cellular networks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "analyze": "analytical sweep (plus the fully-loaded baseline when configured)",
        "simulate": "Monte Carlo sweep",
        "compare": "run every configured engine and report analysis/simulation gaps",
        "dump": "write one sampled realization, one point per line",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True, type=Path, help="scenario file")
        p.add_argument("--seed", type=int, default=None, help="override sim.seed")
        p.add_argument("--out", type=Path, default=None, help="output path (CSV; stdout when omitted)")
        p.add_argument("--workers", type=int, default=None, help="override sim.workers")
        p.add_argument("--quiet", action="store_true", help="only log warnings and errors")
    return parser


def _engines_for(command: str, configured: Sequence[str]) -> List[str]:
    if command == "analyze":
        return [e for e in configured if e != "sim"] or ["analysis"]
    if command == "simulate":
        return ["sim"]
    # compare
    return list(configured) if len(configured) >= 2 else ["analysis", "sim", "baseline"]


def _report_gaps(result: SweepResult) -> None:
    worst = defaultdict(float)
    for gap in engine_gaps(result):
        worst[gap.metric] = max(worst[gap.metric], gap.gap)
    for metric, value in worst.items():
        log.info("compare.max_gap", metric=metric, gap=value)


def _emit(result: SweepResult, out: Optional[Path]) -> None:
    if out is None:
        write_sweep_csv(result, sys.stdout)
        return
    with open(out, "w", encoding="utf-8", newline="") as handle:
        write_sweep_csv(result, handle)
    log.info("csv.written", path=str(out), rows=len(result.rows))


def _run(args: argparse.Namespace, config: ScenarioConfig) -> int:
    if args.command == "dump":
        target = args.out or (Path(config.output.path) if config.output.path else None)
        if target is None:
            raise ConfigError("dump needs --out or [output] path")
        ExperimentService.dump_realization(config, target, seed=args.seed)
        return EXIT_OK

    if config.sweep is None:
        raise ConfigError("a [sweep] section is required")
    engines = _engines_for(args.command, config.sweep.engines)
    result = ExperimentService.run_sweep(config, engines=engines, seed=args.seed, workers=args.workers)
    if args.command == "compare":
        _report_gaps(result)
    _emit(result, args.out or (Path(config.output.path) if config.output.path else None))
    return EXIT_OK if result.ok else EXIT_NUMERICAL


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    load_dotenv(".env")
    configure_logging(level="WARNING" if args.quiet else None)
    init_tracing()
    new_run_context(command=args.command, seed=args.seed)
    try:
        config = load_config(args.config)
        return _run(args, config)
    except ConfigError as e:
        log.error("cli.config_error", error=str(e), line=e.line)
        return EXIT_CONFIG
    except NumericalError as e:
        log.error("cli.numerical_error", error=str(e), error_estimate=e.error_estimate)
        return EXIT_NUMERICAL
    except HcnError as e:
        log.error("cli.error", error=str(e))
        return EXIT_CONFIG
    except OSError as e:
        log.error("cli.io_error", error=str(e))
        return EXIT_IO
    finally:
        clear_run_context()
