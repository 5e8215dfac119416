"""Resource-overhead arithmetic: probabilistic linear-optics generation of
ring resource states versus deterministic block-based generation.

Linear-optics accounting is expected-cost with discard-on-fail: states that
went through a failed fusion are thrown away, so each fusion multiplies the
photon bill by 1/fusion_success. Block counts scale linearly in the ring
size with a safety margin.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import InvalidParameterError

# epsilon guards the ceiling against float dust on exact ratios
_CEIL_EPS = 1e-9


@dataclass(frozen=True)
class CountingScenario:
    ghz_photons: int = 6
    ghz_success: float = 1.0 / 32.0
    n_ghz_per_ring: int = 3
    n_fusions: int = 3
    fusion_success: float = 0.5
    ring_size: int = 6
    p_block: float = 0.2

    def __post_init__(self):
        for name in ("ghz_photons", "n_ghz_per_ring", "n_fusions", "ring_size"):
            if getattr(self, name) < 1:
                raise InvalidParameterError(f"{name} must be >= 1")
        for name in ("ghz_success", "fusion_success", "p_block"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise InvalidParameterError(f"{name} must be in (0, 1]")


def ghz_cost(s: CountingScenario) -> float:
    """Expected photons per GHZ state: photons / success probability."""
    return s.ghz_photons / s.ghz_success


def ring_cost_linear_optics(s: CountingScenario) -> float:
    """Expected photons per ring with discard-on-fail fusions."""
    return s.n_ghz_per_ring * ghz_cost(s) / (s.fusion_success**s.n_fusions)


def blocks_needed(ring_size: int, p_block: float, margin: float = 2.0) -> int:
    """Blocks pumped in parallel to reliably harvest a ring's Bell pairs:
    ceil(margin * ring_size / p_block)."""
    if ring_size < 1:
        raise InvalidParameterError("ring_size must be >= 1")
    if not 0.0 < p_block <= 1.0:
        raise InvalidParameterError("p_block must be in (0, 1]")
    if margin <= 0:
        raise InvalidParameterError("margin must be positive")
    return math.ceil(margin * ring_size / p_block - _CEIL_EPS)


@dataclass(frozen=True)
class ScalingRow:
    ring_size: int
    blocks_needed: int
    linear_optics_photons: float


def scaling_curves(sizes: list[int], s: CountingScenario) -> list[ScalingRow]:
    """Cost per resource-state size: blocks grow linearly, the linear-optics
    photon bill exponentially (fusion count scales with the state size)."""
    rows = []
    for size in sizes:
        if size < 1:
            raise InvalidParameterError("sizes must be >= 1")
        n_ghz = size * s.n_ghz_per_ring / s.ring_size
        n_fus = size * s.n_fusions / s.ring_size
        cost = n_ghz * ghz_cost(s) / (s.fusion_success**n_fus)
        rows.append(
            ScalingRow(
                ring_size=size,
                blocks_needed=blocks_needed(size, s.p_block),
                linear_optics_photons=cost,
            )
        )
    return rows


def scaling_to_csv(rows: list[ScalingRow], path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write("ring_size,blocks_needed,linear_optics_photons\n")
        for r in rows:
            f.write(f"{r.ring_size},{r.blocks_needed},{r.linear_optics_photons:.12g}\n")
