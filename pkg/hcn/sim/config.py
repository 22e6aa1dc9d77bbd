from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from hcn.errors import DomainError

MIN_BS_PER_TIER = 50
MIN_UES = 100


class BoundaryKind(str, Enum):
    TORUS = "torus"
    GUARD_ZONE = "guard_zone"


@dataclass(frozen=True)
class Boundary:
    """Edge treatment. ``width`` (km) restricts probe UEs to the central region in either mode."""
    kind: BoundaryKind = BoundaryKind.TORUS
    width: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", BoundaryKind(self.kind))
        if self.width < 0:
            raise DomainError(f"guard width must be >= 0, got {self.width!r}")
        if self.kind is BoundaryKind.GUARD_ZONE and not self.width > 0:
            raise DomainError("guard_zone boundary needs a positive width")

    @property
    def wraps(self) -> bool:
        return self.kind is BoundaryKind.TORUS


@dataclass(frozen=True)
class SimConfig:
    """Monte Carlo settings; ``seed`` determines every random draw."""
    window_side: float = 4.0
    trials: int = 200
    fading_draws_per_trial: int = 20
    seed: int = 1
    boundary: Boundary = Boundary()
    workers: int = 1
    fading: bool = True

    def __post_init__(self) -> None:
        if not self.window_side > 0:
            raise DomainError(f"window side must be positive, got {self.window_side!r}")
        if self.trials < 1 or self.fading_draws_per_trial < 1:
            raise DomainError("trials and fading draws must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.workers < 1:
            raise DomainError("workers must be >= 1")
        if 2 * self.boundary.width >= self.window_side:
            raise DomainError("guard width leaves no central region")

    @property
    def area(self) -> float:
        return self.window_side ** 2


@dataclass(frozen=True)
class EstimateWithCI:
    """Sample mean with a normal-approximation 95% half-width."""
    mean: float
    half_width_95: float
    samples: int

    @classmethod
    def from_samples(cls, values) -> EstimateWithCI:
        data = np.asarray(values, dtype=float)
        n = int(data.size)
        if n == 0:
            return cls(math.nan, math.nan, 0)
        if n == 1:
            return cls(float(data[0]), 0.0, 1)
        return cls(float(data.mean()), float(1.96 * data.std(ddof=1) / math.sqrt(n)), n)

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return abs(self.mean - value) <= self.half_width_95 + slack
