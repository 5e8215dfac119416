"""Per-cycle error budget of the Bell-pair pipeline and Monte Carlo sampling
of its effect on resource states.

Channels are first-order estimates computed from hardware parameters; each
carries its scaling expression, an erasure/leakage/Pauli classification, and
a rate per optical qubit per clock cycle. Erasure-like rates are compared to
the ~10% loss threshold of fusion networks, Pauli rates to the ~1% threshold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .exceptions import InvalidParameterError
from .graphstate import Graph
from .units import GHZ, KHZ, MHZ, MS, US

ERASURE_THRESHOLD = 0.10
PAULI_THRESHOLD = 0.01


class ErrorType(Enum):
    ERASURE = "Erasure"
    LEAKAGE = "Leakage"
    PAULI = "Pauli error"


@dataclass(frozen=True)
class HardwareParams:
    """Hardware rates entering the budget.

    Angular rates in rad/ns, times in ns. ``tau`` is the optical-exposure
    duration of the pump phase, ``t_swap`` the phonon-to-qubit swap time,
    ``t_cycle`` the full clock cycle. ``gamma`` is the total mechanical
    decay rate and ``n_b_gamma_b`` the thermal injection rate (bath occupancy
    times bath coupling). ``Gamma_OM_tau`` is the integrated pump strength.
    """

    kappa_e: float = 1.0 * GHZ
    kappa_i: float = 0.0965 * GHZ
    tau: float = 400.0
    t_swap: float = 100.0
    t_cycle: float = 1000.0
    gamma: float = 500.0 * KHZ
    n_b_gamma_b: float = 25.0 * KHZ
    Gamma_OM_tau: float = 0.1
    eta_PC: float = 0.99
    eta_RO: float = 0.99
    T_phi_m: float = 100.0 * US
    T_phi_DR: float = 1.0 * MS
    T_1_DR: float = 1.0 * MS
    extra_optical_loss: float = 0.0

    def __post_init__(self):
        for name in ("kappa_e", "kappa_i", "gamma", "n_b_gamma_b", "Gamma_OM_tau",
                     "extra_optical_loss"):
            if getattr(self, name) < 0:
                raise InvalidParameterError(f"{name} must be non-negative")
        for name in ("tau", "t_swap", "t_cycle", "T_phi_m", "T_phi_DR", "T_1_DR"):
            if getattr(self, name) <= 0:
                raise InvalidParameterError(f"{name} must be positive")
        if self.kappa_e + self.kappa_i <= 0:
            raise InvalidParameterError("kappa_e + kappa_i must be positive")
        for name in ("eta_PC", "eta_RO"):
            if not 0.0 < getattr(self, name) <= 1.0:
                raise InvalidParameterError(f"{name} must be in (0, 1]")


def nominal_hardware() -> HardwareParams:
    return HardwareParams()


@dataclass(frozen=True)
class ErrorChannel:
    source: str
    effect: str
    scaling_expr: str
    etype: ErrorType
    rate: float

    def __post_init__(self):
        if not 0.0 <= self.rate <= 1.0:
            raise InvalidParameterError(
                f"channel {self.source!r}: rate {self.rate} outside [0, 1]"
            )


def compute_budget(h: HardwareParams) -> list[ErrorChannel]:
    """One channel per first-order error mechanism.

    The phonon-loss leakage rate carries the two-pair occupancy prefactor
    (Gamma_OM tau)^2: losing one phonon out of a two-pair state is what
    converts it into a false single-photon herald.
    """
    exposure = h.tau + h.t_swap
    rows = [
        ("Photon extraction", "Photon loss", "kappa_i/(kappa_e+kappa_i)",
         ErrorType.ERASURE,
         h.kappa_i / (h.kappa_e + h.kappa_i) + h.extra_optical_loss),
        ("Thermal noise", "False heralding", "n_b*gamma_b*(tau+t_swap)",
         ErrorType.ERASURE, h.n_b_gamma_b * exposure),
        ("Hard squeezing", "Multiphoton noise", "(Gamma_OM*tau)^2",
         ErrorType.LEAKAGE, h.Gamma_OM_tau**2),
        ("Phonon loss", "Multiphoton noise", "gamma*(tau+t_swap)",
         ErrorType.LEAKAGE, h.Gamma_OM_tau**2 * h.gamma * exposure),
        ("Imperfect parity check", "False heralding", "1-eta_PC",
         ErrorType.ERASURE, 1.0 - h.eta_PC),
        ("Measurement infidelity", "Inconsistent measurement", "1-eta_RO",
         ErrorType.ERASURE, 1.0 - h.eta_RO),
        ("Mechanical dephasing", "Phase flip", "(tau+t_swap)/T_phi_m",
         ErrorType.PAULI, exposure / h.T_phi_m),
        ("Qubit dephasing", "Phase flip", "t/T_phi_DR",
         ErrorType.PAULI, h.t_cycle / h.T_phi_DR),
        ("Qubit swap", "Bit flip", "t/T_1_DR",
         ErrorType.PAULI, h.t_cycle / h.T_1_DR),
        ("Measurement infidelity", "Phase/bit flip", "(1-eta_RO)^2",
         ErrorType.PAULI, (1.0 - h.eta_RO) ** 2),
    ]
    return [
        ErrorChannel(src, eff, expr, etype, min(rate, 1.0))
        for src, eff, expr, etype, rate in rows
    ]


def budget_to_csv(channels: list[ErrorChannel], path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write("source,effect,scaling_expr,rate,error_type\n")
        for ch in channels:
            f.write(
                f"{ch.source},{ch.effect},{ch.scaling_expr},{ch.rate:.12g},{ch.etype.value}\n"
            )


@dataclass(frozen=True)
class ThresholdReport:
    erasure_total: float
    leakage_total: float
    pauli_total: float
    erasure_threshold: float
    pauli_threshold: float

    @property
    def loss_like_total(self) -> float:
        # leakage is detected at fusion time and handled like loss
        return self.erasure_total + self.leakage_total

    @property
    def erasure_pass(self) -> bool:
        return self.loss_like_total <= self.erasure_threshold

    @property
    def pauli_pass(self) -> bool:
        return self.pauli_total <= self.pauli_threshold

    @property
    def erasure_margin(self) -> float:
        return self.erasure_threshold - self.loss_like_total

    @property
    def pauli_margin(self) -> float:
        return self.pauli_threshold - self.pauli_total

    def lines(self) -> list[str]:
        out = [
            f"erasure total {self.erasure_total:.4f}, leakage total {self.leakage_total:.4f}, "
            f"loss-like {self.loss_like_total:.4f} vs threshold {self.erasure_threshold:.2f}: "
            + ("PASS" if self.erasure_pass else "FAIL")
            + f" (margin {self.erasure_margin:+.4f})",
            f"Pauli total {self.pauli_total:.4f} vs threshold {self.pauli_threshold:.2f}: "
            + ("PASS" if self.pauli_pass else "FAIL")
            + f" (margin {self.pauli_margin:+.4f})",
        ]
        return out


def check_thresholds(
    channels: list[ErrorChannel],
    erasure_threshold: float = ERASURE_THRESHOLD,
    pauli_threshold: float = PAULI_THRESHOLD,
) -> ThresholdReport:
    """Per-qubit totals by category against the fusion-network thresholds."""
    tot = {t: 0.0 for t in ErrorType}
    for ch in channels:
        tot[ch.etype] += ch.rate
    return ThresholdReport(
        erasure_total=tot[ErrorType.ERASURE],
        leakage_total=tot[ErrorType.LEAKAGE],
        pauli_total=tot[ErrorType.PAULI],
        erasure_threshold=erasure_threshold,
        pauli_threshold=pauli_threshold,
    )


@dataclass(frozen=True)
class SampleStats:
    trials: int
    n_qubits: int
    intact_hist: np.ndarray
    frac_fully_intact: float
    per_channel_rates: np.ndarray
    pauli_marginal: float
    erased_marginal: float


def sample_resource_state(
    g: Graph,
    channels: list[ErrorChannel],
    trials: int,
    seed: int,
) -> SampleStats:
    """Monte Carlo per-qubit channel sampling on one resource state.

    Each optical qubit draws every channel independently per trial; erasure
    and leakage events both remove the qubit (leakage is caught at fusion
    time), Pauli events flag it without removal. Returns the intact-count
    distribution, the fully-intact fraction, and per-channel marginal rates.
    """
    if trials < 1:
        raise InvalidParameterError("trials must be >= 1")
    n_q = len(g.vertices)
    rng = np.random.default_rng(seed)
    rates = np.array([ch.rate for ch in channels])
    kills = np.array([ch.etype in (ErrorType.ERASURE, ErrorType.LEAKAGE) for ch in channels])
    events = rng.random((trials, n_q, len(channels))) < rates
    erased = np.any(events[:, :, kills], axis=2) if kills.any() else np.zeros((trials, n_q), bool)
    pauli = np.any(events[:, :, ~kills], axis=2) if (~kills).any() else np.zeros((trials, n_q), bool)
    intact_counts = n_q - erased.sum(axis=1)
    hist = np.bincount(intact_counts, minlength=n_q + 1)
    return SampleStats(
        trials=trials,
        n_qubits=n_q,
        intact_hist=hist,
        frac_fully_intact=float(hist[n_q]) / trials,
        per_channel_rates=events.mean(axis=(0, 1)),
        pauli_marginal=float(pauli.mean()),
        erased_marginal=float(erased.mean()),
    )
