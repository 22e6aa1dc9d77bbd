from __future__ import annotations

import math
import re
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from hcn.errors import ConfigError, DomainError
from hcn.model import NetworkParams, TierParams, dbm_to_mw
from hcn.sim import Boundary, SimConfig

Metric = Literal["idle", "association", "coverage", "rate", "ase"]
Engine = Literal["analysis", "sim", "baseline"]

METRIC_ORDER: Tuple[str, ...] = ("idle", "association", "coverage", "rate", "ase")
ENGINE_ORDER: Tuple[str, ...] = ("analysis", "sim", "baseline")

_SECTION_RE = re.compile(r"^\[\s*([A-Za-z_]+(?:\.\d+)?)\s*\]$")
_SWEEP_RE = re.compile(r"^(?:tier\.(\d+)\.(density|power_dbm)|network\.(ue_density|alpha|noise_power_dbm))$")


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class NetworkSection(_Section):
    alpha: float
    ue_density: float = Field(gt=0)
    noise_power_dbm: Optional[float] = None
    shape_q: float = Field(default=3.5, gt=0)
    rate_b: float = Field(default=3.5, gt=0)

    @field_validator("alpha")
    @classmethod
    def _alpha_above_two(cls, v: float) -> float:
        if not v > 2:
            raise ValueError("path loss exponent must exceed 2 (the interference kernel Z(tau, alpha) "
                             "and the coverage integrals require alpha > 2)")
        return v


class TierSection(_Section):
    power_dbm: float
    density: float = Field(gt=0)
    label: Optional[str] = None


class SweepSection(_Section):
    parameter: str
    start: float
    stop: float
    steps: int = Field(ge=2)
    metrics: List[Metric] = ["idle", "coverage", "rate"]
    engines: List[Engine] = ["analysis"]
    tau_db: float = Field(default=0.0, ge=-200.0, le=200.0)

    @field_validator("metrics", "engines", mode="before")
    @classmethod
    def _comma_list(cls, v):
        if isinstance(v, str):
            return [item.strip() for item in v.split(",") if item.strip()]
        return v

    @field_validator("parameter")
    @classmethod
    def _known_parameter(cls, v: str) -> str:
        if not _SWEEP_RE.match(v):
            raise ValueError("sweep parameter must be tier.K.density, tier.K.power_dbm, network.ue_density, "
                             "network.alpha or network.noise_power_dbm")
        return v

    @field_validator("start", "stop", "tau_db")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("must be finite")
        return v

    @property
    def values(self) -> List[float]:
        return [float(x) for x in np.linspace(self.start, self.stop, self.steps)]

    @property
    def tau(self) -> float:
        return 10.0 ** (self.tau_db / 10.0)


class SimSection(_Section):
    window_side: float = Field(default=4.0, gt=0)
    trials: int = Field(default=200, ge=1)
    fading_draws: int = Field(default=20, ge=1)
    seed: int = Field(default=1, ge=0, lt=2 ** 64)
    boundary: Literal["torus", "guard_zone"] = "torus"
    guard_width: float = Field(default=0.0, ge=0)
    workers: int = Field(default=1, ge=1)
    fading: bool = True


class OutputSection(_Section):
    path: Optional[str] = None


class ScenarioConfig(_Section):
    """A validated scenario file; powers stay in dBm here and become mW in ``network_params``."""
    network: NetworkSection
    tiers: List[TierSection] = Field(min_length=1)
    sweep: Optional[SweepSection] = None
    sim: SimSection = SimSection()
    output: OutputSection = OutputSection()

    def network_params(self, sweep_value: Optional[float] = None) -> NetworkParams:
        """Linear-unit scenario, with the swept parameter set to ``sweep_value`` when given."""
        net = self.network.model_dump()
        tiers = [t.model_dump() for t in self.tiers]
        if sweep_value is not None:
            if self.sweep is None:
                raise ConfigError("no [sweep] section to apply a sweep value to")
            m = _SWEEP_RE.match(self.sweep.parameter)
            if m.group(1) is not None:
                if not 1 <= int(m.group(1)) <= len(tiers):
                    raise ConfigError(f"sweep parameter {self.sweep.parameter} names a tier that does not exist")
                tiers[int(m.group(1)) - 1][m.group(2)] = sweep_value
            else:
                net[m.group(3)] = sweep_value
        noise_dbm = net["noise_power_dbm"]
        try:
            return NetworkParams(
                tiers=[TierParams(tx_power=dbm_to_mw(t["power_dbm"]), density=t["density"],
                                  label=t["label"] or f"tier{k + 1}")
                       for k, t in enumerate(tiers)],
                alpha=net["alpha"],
                ue_density=net["ue_density"],
                noise_power=0.0 if noise_dbm is None else dbm_to_mw(noise_dbm),
                shape_q=net["shape_q"],
                rate_b=net["rate_b"],
            )
        except OverflowError as e:
            raise ConfigError("a power in dBm is too large to convert to mW") from e
        except DomainError as e:
            raise ConfigError(str(e)) from e

    def sim_config(self, seed: Optional[int] = None, workers: Optional[int] = None) -> SimConfig:
        s = self.sim
        try:
            return SimConfig(
                window_side=s.window_side,
                trials=s.trials,
                fading_draws_per_trial=s.fading_draws,
                seed=s.seed if seed is None else seed,
                boundary=Boundary(s.boundary, s.guard_width),
                workers=s.workers if workers is None else workers,
                fading=s.fading,
            )
        except DomainError as e:
            raise ConfigError(str(e)) from e


_SECTION_NAMES = {"network", "sweep", "sim", "output"}


def _read_sections(text: str) -> Tuple[Dict[str, Dict[str, str]], Dict[Tuple[str, Optional[str]], int]]:
    """Split ``[section]`` / ``key = value`` text into raw strings, remembering where each came from."""
    sections: Dict[str, Dict[str, str]] = {}
    lines: Dict[Tuple[str, Optional[str]], int] = {}
    current: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = _SECTION_RE.match(line)
        if header:
            current = header.group(1)
            base, _, index = current.partition(".")
            if not ((base == "tier" and index) or (current in _SECTION_NAMES)):
                raise ConfigError(f"unknown section [{current}]", line=lineno)
            if current in sections:
                raise ConfigError(f"duplicate section [{current}]", line=lineno)
            sections[current] = {}
            lines[(current, None)] = lineno
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", line=lineno)
        if current is None:
            raise ConfigError("key outside of any [section]", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError("empty key", line=lineno)
        if key in sections[current]:
            raise ConfigError(f"duplicate key {key!r} in [{current}]", line=lineno)
        sections[current][key] = value
        lines[(current, key)] = lineno
    return sections, lines


def _locate(loc: tuple, lines: Dict[Tuple[str, Optional[str]], int]) -> Tuple[str, Optional[int]]:
    if loc and loc[0] == "tiers" and len(loc) > 1 and isinstance(loc[1], int):
        section = f"tier.{loc[1] + 1}"
        key = loc[2] if len(loc) > 2 else None
    else:
        section = str(loc[0]) if loc else ""
        key = loc[1] if len(loc) > 1 else None
    name = f"{section}.{key}" if key is not None else section
    line = lines.get((section, key), lines.get((section, None)))
    return name, line


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate scenario text; errors name the offending line."""
    sections, lines = _read_sections(text)
    if "network" not in sections:
        raise ConfigError("missing [network] section")
    tier_names = sorted((s for s in sections if s.startswith("tier.")), key=lambda s: int(s.split(".")[1]))
    expected = [f"tier.{k}" for k in range(1, len(tier_names) + 1)]
    if tier_names != expected:
        raise ConfigError(f"tier sections must be numbered 1..M without gaps, got {tier_names}",
                          line=lines.get((tier_names[-1], None)) if tier_names else None)
    payload = {name: sections[name] for name in ("network", "sweep", "sim", "output") if name in sections}
    payload["tiers"] = [sections[name] for name in tier_names]
    try:
        config = ScenarioConfig.model_validate(payload)
    except ValidationError as e:
        err = e.errors()[0]
        name, line = _locate(err["loc"], lines)
        msg = err["msg"].removeprefix("Value error, ")
        raise ConfigError(f"{name}: {msg}" if name else msg, line=line) from e
    if config.sweep is not None:
        m = _SWEEP_RE.match(config.sweep.parameter)
        if m.group(1) is not None and not 1 <= int(m.group(1)) <= len(config.tiers):
            raise ConfigError(f"sweep.parameter: {config.sweep.parameter} names a tier that does not exist",
                              line=lines.get(("sweep", "parameter")))
    return config


def load_config(path: str | Path) -> ScenarioConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ConfigError(f"{path}: not UTF-8 text ({e.reason} at byte {e.start})") from e
    return parse_config(text)
