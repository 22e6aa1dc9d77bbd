from hcn.model.association import (
    association_probabilities,
    association_probability,
    power_ratio,
    serving_distance_cdf,
    serving_distance_pdf,
    weighted_density,
)
from hcn.model.load import (
    IdleSeries,
    active_density,
    cell_size_pdf,
    idle_probability,
    idle_probability_series,
    ue_count_mean,
    ue_count_pmf,
)
from hcn.model.params import NetworkParams, TierDerived, TierParams, dbm_to_mw, mw_to_dbm
from hcn.model.service import ModelService

__all__ = [
    "ModelService", "NetworkParams", "TierParams", "TierDerived", "IdleSeries",
    "dbm_to_mw", "mw_to_dbm",
    "power_ratio", "weighted_density", "association_probability", "association_probabilities",
    "serving_distance_pdf", "serving_distance_cdf",
    "cell_size_pdf", "ue_count_pmf", "ue_count_mean",
    "idle_probability", "idle_probability_series", "active_density",
]
