"""Simulation and analysis toolkit for heralded microwave-optical Bell pairs
produced by piezo-optomechanical transducer blocks, and for the hybrid
graph states built from them."""

from .dynamics import (
    PulseSchedule,
    Trajectory,
    TransducerParams,
    build_generator,
    evolve,
    evolve_full_optics,
    mean_phonon,
)
from .errorbudget import ErrorChannel, HardwareParams, check_thresholds, compute_budget
from .fock import DensityMatrix, ModeSpec, Operator
from .graphstate import Graph, QubitLabel, StabilizerTableau
from .protocol import BellOutcome, SwapPlan, bell_fidelity, optimize_swap, run_bell_cycle
from .resourcecount import CountingScenario, blocks_needed, ghz_cost, ring_cost_linear_optics
from .squeezing import SqueezeParams, SqueezeResult, squeeze_gains

__version__ = "0.1.0"

__all__ = [
    "BellOutcome",
    "CountingScenario",
    "DensityMatrix",
    "ErrorChannel",
    "Graph",
    "HardwareParams",
    "ModeSpec",
    "Operator",
    "PulseSchedule",
    "QubitLabel",
    "SqueezeParams",
    "SqueezeResult",
    "StabilizerTableau",
    "SwapPlan",
    "Trajectory",
    "TransducerParams",
    "bell_fidelity",
    "blocks_needed",
    "build_generator",
    "check_thresholds",
    "compute_budget",
    "evolve",
    "evolve_full_optics",
    "ghz_cost",
    "mean_phonon",
    "optimize_swap",
    "ring_cost_linear_optics",
    "run_bell_cycle",
    "squeeze_gains",
    "__version__",
]
