from __future__ import annotations

from typing import List

from hcn.logging.config import get_logger
from hcn.logging.instrumentation import traced
from hcn.model.association import association_probability
from hcn.model.load import active_density, idle_probability
from hcn.model.params import NetworkParams, TierDerived

log = get_logger("model.service")


class ModelService:
    """
    Service layer turning a scenario into the per-tier quantities the engines consume.
    """

    @classmethod
    @traced("model.derive")
    def derive(cls, params: NetworkParams) -> List[TierDerived]:
        """Association, idle probability and activated density of every tier (idle mode on)."""
        derived = []
        for i in range(params.num_tiers):
            a_i = association_probability(params, i)
            p_off = idle_probability(params, i, association_prob=a_i)
            derived.append(TierDerived(
                association_prob=a_i,
                idle_prob=p_off,
                active_density=active_density(params, i, idle_prob=p_off),
            ))
        log.debug("derive.done", tiers=params.labels,
                  active_density=[d.active_density for d in derived])
        return derived

    @classmethod
    def full_load(cls, params: NetworkParams) -> List[TierDerived]:
        """Every BS transmits: the infinite-UE baseline."""
        return [
            TierDerived(association_prob=association_probability(params, i), idle_prob=0.0,
                        active_density=t.density)
            for i, t in enumerate(params.tiers)
        ]
