from __future__ import annotations

import numpy as np

# Substream roles; the integer is part of the Philox key, so never renumber them
ROLES = {
    "bs": 0,
    "ue": 1,
    "probe": 2,
    "fading": 3,
}


def stream(seed: int, trial: int, role: str, index: int = 0, attempt: int = 0) -> np.random.Generator:
    """Independent counter-based generator for (seed, trial, role, index, attempt).

    The same arguments always give the same draws, whatever thread or order asks for them.
    """
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(trial, ROLES[role], index, attempt))
    return np.random.Generator(np.random.Philox(seq))
