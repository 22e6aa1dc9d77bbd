from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import List, Sequence

from hcn.errors import DomainError

DEFAULT_SHAPE = 3.5
DEFAULT_RATE = 3.5


def dbm_to_mw(dbm: float) -> float:
    """Convert a power level in dBm to milliwatts."""
    return 10.0 ** (dbm / 10.0)


def mw_to_dbm(mw: float) -> float:
    return 10.0 * math.log10(mw)


@dataclass(frozen=True)
class TierParams:
    """One BS tier: linear transmit power (mW) and deployment density (BSs/km^2)."""
    tx_power: float
    density: float
    label: str = ""

    def __post_init__(self) -> None:
        if not self.tx_power > 0:
            raise DomainError(f"tier transmit power must be positive, got {self.tx_power!r}")
        if not self.density > 0:
            raise DomainError(f"tier density must be positive, got {self.density!r}")


@dataclass(frozen=True)
class NetworkParams:
    """A full scenario.

    Distances are in km and densities per km^2. ``noise_power`` (sigma^2) is in mW and is
    compared against P r^-alpha with r in km and no reference-distance constant.
    """
    tiers: Sequence[TierParams]
    alpha: float
    ue_density: float
    noise_power: float = 0.0
    shape_q: float = DEFAULT_SHAPE
    rate_b: float = DEFAULT_RATE

    def __post_init__(self) -> None:
        if len(self.tiers) < 1:
            raise DomainError("a network needs at least one tier")
        if not self.alpha > 2.0:
            raise DomainError(f"path loss exponent must exceed 2, got alpha={self.alpha!r}")
        if not self.ue_density > 0:
            raise DomainError(f"UE density must be positive, got {self.ue_density!r}")
        if not self.noise_power >= 0:
            raise DomainError(f"noise power must be >= 0, got {self.noise_power!r}")
        if not (self.shape_q > 0 and self.rate_b > 0):
            raise DomainError(f"load-model constants must be positive, got q={self.shape_q!r}, b={self.rate_b!r}")
        object.__setattr__(self, "tiers", tuple(self.tiers))

    @property
    def labels(self) -> List[str]:
        return [t.label or f"tier{k + 1}" for k, t in enumerate(self.tiers)]

    @property
    def num_tiers(self) -> int:
        return len(self.tiers)

    def tier(self, i: int) -> TierParams:
        if not 0 <= i < len(self.tiers):
            raise DomainError(f"tier index {i} out of range for {len(self.tiers)} tier(s)")
        return self.tiers[i]

    def with_tier(self, i: int, **changes) -> NetworkParams:
        """Copy with tier ``i`` replaced by ``replace(tier, **changes)``."""
        tiers = list(self.tiers)
        tiers[i] = replace(self.tier(i), **changes)
        return replace(self, tiers=tiers)

    def scaled_powers(self, factor: float) -> NetworkParams:
        return replace(self, tiers=[replace(t, tx_power=t.tx_power * factor) for t in self.tiers])


@dataclass(frozen=True)
class TierDerived:
    """Per-tier quantities computed from a NetworkParams."""
    association_prob: float
    idle_prob: float
    active_density: float
