from __future__ import annotations

from typing import TextIO

from hcn.errors import DomainError
from hcn.sim.deployment import Deployment


def _num(x: float) -> str:
    return format(float(x), ".17g")


def write_realization(deployment: Deployment, out: TextIO) -> int:
    """Write one realization, one point per line; returns the number of lines.

    BS lines: ``<tier> <x_km> <y_km> <active_flag>`` (tier numbered from 1).
    UE lines: ``ue <x_km> <y_km> <serving_tier> <serving_index>``.
    """
    if not deployment.is_associated:
        raise DomainError("only associated deployments can be dumped")
    lines = 0
    for j, (pts, mask) in enumerate(zip(deployment.bs_positions, deployment.active_mask)):
        for (x, y), active in zip(pts, mask):
            out.write(f"{j + 1} {_num(x)} {_num(y)} {int(active)}\n")
            lines += 1
    for (x, y), tier, index in zip(deployment.ue_positions, deployment.serving_tier, deployment.serving_index):
        out.write(f"ue {_num(x)} {_num(y)} {int(tier) + 1} {int(index)}\n")
        lines += 1
    return lines
