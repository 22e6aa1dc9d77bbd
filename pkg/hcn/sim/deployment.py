from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np
from scipy.spatial import cKDTree

from hcn.errors import DomainError, SimulationError
from hcn.model import NetworkParams
from hcn.sim.config import Boundary, SimConfig
from hcn.sim.streams import stream

# A UE on top of a BS would see infinite power; clamp instead
MIN_DISTANCE_KM = 1e-9


def sample_ppp(density: float, window_side: float, rng: np.random.Generator) -> np.ndarray:
    """Homogeneous PPP on [0, window_side)^2 as an (n, 2) array of km coordinates."""
    if density < 0:
        raise DomainError(f"density must be >= 0, got {density!r}")
    if not window_side > 0:
        raise DomainError(f"window side must be positive, got {window_side!r}")
    count = rng.poisson(density * window_side * window_side)
    return rng.uniform(0.0, window_side, size=(count, 2))


def distances(origin: np.ndarray, points: np.ndarray, window_side: float, wraps: bool) -> np.ndarray:
    """Euclidean distances from ``origin`` to each point, using the wrap-around metric on a torus."""
    delta = np.abs(points - origin)
    if wraps:
        delta = np.minimum(delta, window_side - delta)
    return np.maximum(np.hypot(delta[:, 0], delta[:, 1]), MIN_DISTANCE_KM)


@dataclass
class Deployment:
    """One realization: BS and UE positions, and (once associated) who serves whom."""
    window_side: float
    boundary: Boundary
    bs_positions: List[np.ndarray]
    ue_positions: np.ndarray
    serving_tier: Optional[np.ndarray] = None
    serving_index: Optional[np.ndarray] = None
    active_mask: List[np.ndarray] = field(default_factory=list)

    @property
    def num_ues(self) -> int:
        return int(self.ue_positions.shape[0])

    @property
    def is_associated(self) -> bool:
        return self.serving_tier is not None

    def bs_counts(self) -> List[int]:
        return [int(p.shape[0]) for p in self.bs_positions]

    def active_counts(self) -> List[int]:
        return [int(m.sum()) for m in self.active_mask]

    def probe_candidates(self) -> np.ndarray:
        """Indices of UEs at least ``boundary.width`` away from every edge."""
        width = self.boundary.width
        if width <= 0:
            return np.arange(self.num_ues)
        pos = self.ue_positions
        edge = np.minimum(pos, self.window_side - pos).min(axis=1)
        return np.flatnonzero(edge >= width)

    def serving_distances(self) -> np.ndarray:
        """Distance of every UE to its serving BS."""
        out = np.empty(self.num_ues)
        for j, pts in enumerate(self.bs_positions):
            mine = np.flatnonzero(self.serving_tier == j)
            if mine.size == 0:
                continue
            delta = np.abs(self.ue_positions[mine] - pts[self.serving_index[mine]])
            if self.boundary.wraps:
                delta = np.minimum(delta, self.window_side - delta)
            out[mine] = np.maximum(np.hypot(delta[:, 0], delta[:, 1]), MIN_DISTANCE_KM)
        return out


def draft_deployment(params: NetworkParams, sim: SimConfig, trial: int, attempt: int = 0) -> Deployment:
    """Sample BS and UE positions for one trial from their own substreams."""
    side = sim.window_side
    bs = [
        sample_ppp(t.density, side, stream(sim.seed, trial, "bs", index=k, attempt=attempt))
        for k, t in enumerate(params.tiers)
    ]
    ues = sample_ppp(params.ue_density, side, stream(sim.seed, trial, "ue", attempt=attempt))
    return Deployment(window_side=side, boundary=sim.boundary, bs_positions=bs, ue_positions=ues)


def associate(draft: Deployment, params: NetworkParams) -> Deployment:
    """Max-average-received-power association; a BS is active iff somebody associates to it."""
    if sum(draft.bs_counts()) == 0:
        raise SimulationError("no BS in any tier: cannot associate UEs")
    n_ue = draft.num_ues
    scores = np.full((n_ue, params.num_tiers), -np.inf)
    nearest = np.zeros((n_ue, params.num_tiers), dtype=np.int64)
    boxsize = draft.window_side if draft.boundary.wraps else None
    for j, pts in enumerate(draft.bs_positions):
        if pts.shape[0] == 0 or n_ue == 0:
            continue
        # strongest BS of a tier is its nearest one
        d, k = cKDTree(pts, boxsize=boxsize).query(draft.ue_positions, k=1)
        d = np.maximum(d, MIN_DISTANCE_KM)
        scores[:, j] = np.log(params.tiers[j].tx_power) - params.alpha * np.log(d)
        nearest[:, j] = k
    tier = np.argmax(scores, axis=1) if n_ue else np.zeros(0, dtype=np.int64)
    index = nearest[np.arange(n_ue), tier]
    masks = []
    for j, pts in enumerate(draft.bs_positions):
        mask = np.zeros(pts.shape[0], dtype=bool)
        mask[index[tier == j]] = True
        masks.append(mask)
    return replace(draft, serving_tier=tier, serving_index=index, active_mask=masks)
