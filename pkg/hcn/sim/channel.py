from __future__ import annotations

import numpy as np

from hcn.errors import DomainError
from hcn.model import NetworkParams
from hcn.sim.deployment import Deployment, distances

# same outer truncation as the analytical rate integral
RATE_CAP_BITS = 40.0


def mean_received_power(deployment: Deployment, params: NetworkParams, ue: int) -> np.ndarray:
    """P_j d^-alpha from every BS (tiers concatenated in order) to UE ``ue``."""
    origin = deployment.ue_positions[ue]
    chunks = [
        params.tiers[j].tx_power * distances(origin, pts, deployment.window_side, deployment.boundary.wraps)
        ** (-params.alpha)
        for j, pts in enumerate(deployment.bs_positions)
    ]
    return np.concatenate(chunks) if chunks else np.zeros(0)


def measure_sinr(deployment: Deployment, params: NetworkParams, typical_ue: int, rng: np.random.Generator,
                 draws: int = 1, apply_idle: bool = True, fading: bool = True) -> np.ndarray:
    """SINR of ``typical_ue`` for ``draws`` independent Rayleigh fading draws.

    Fading is drawn for every BS, idle or not, so the same generator state gives coupled draws
    for ``apply_idle=True`` and ``apply_idle=False``. Idle BSs are muted when ``apply_idle``.
    """
    if not deployment.is_associated:
        raise DomainError("deployment must be associated before measuring SINR")
    if not 0 <= typical_ue < deployment.num_ues:
        raise DomainError(f"UE index {typical_ue} out of range")
    power = mean_received_power(deployment, params, typical_ue)
    offsets = np.cumsum([0] + deployment.bs_counts())
    serving = offsets[deployment.serving_tier[typical_ue]] + deployment.serving_index[typical_ue]

    interferer = np.concatenate(deployment.active_mask) if apply_idle else np.ones(power.size, dtype=bool)
    interferer = interferer.copy()
    interferer[serving] = False

    if fading:
        h = rng.exponential(1.0, size=(draws, power.size))
    else:
        h = np.ones((draws, power.size))
    received = h * power
    interference = received[:, interferer].sum(axis=1)
    # a lone BS with no noise gives SINR = inf
    with np.errstate(divide="ignore"):
        return received[:, serving] / (interference + params.noise_power)


def spectral_efficiency(sinr: np.ndarray) -> np.ndarray:
    """log2(1 + SINR) per draw, capped at ``RATE_CAP_BITS`` so an unbounded SINR stays finite."""
    return np.minimum(np.log2(1.0 + sinr), RATE_CAP_BITS)
