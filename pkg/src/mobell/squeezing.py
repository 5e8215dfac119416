"""Closed-form analytics of the pumped optomechanical interaction.

The blue-detuned pump creates phonon-photon pairs at the scattering rate
``Gamma_OM = 4 G^2 / kappa``. After adiabatic elimination of the optical
mode, a square pump of duration ``tau`` acts as a two-mode squeezer whose
gain coefficients depend only on ``Gamma_OM * tau`` and on
``alpha = gamma / Gamma_OM``, the ratio of mechanical decay to pair
creation. Everything downstream (pair statistics, heralding probability,
multiphoton noise) is geometric in the vacuum probability ``p0``.

This module doubles as the independent oracle for the numerical dynamics:
it contains no integrator and shares no code with `dynamics`.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

from .exceptions import InvalidParameterError, SingularityError

# Above this value of Gamma_OM*tau the lowest-order pair statistics start to
# deviate noticeably; operations warn but do not fail.
HARD_PUMP_THRESHOLD = 0.3

# Pair arithmetic ignores states with more than this many total pairs.
DEFAULT_MAX_PAIRS = 3


class HardPumpWarning(UserWarning):
    """The pump is strong enough that lowest-order results degrade."""


@dataclass(frozen=True)
class SqueezeParams:
    """Pump strength (rate * duration) and mechanical-decay ratio."""

    Gamma_OM: float
    tau: float
    alpha: float = 0.0

    def __post_init__(self):
        if self.Gamma_OM < 0 or self.tau < 0 or self.alpha < 0:
            raise InvalidParameterError(
                "Gamma_OM, tau and alpha must all be non-negative"
            )

    @property
    def pump_area(self) -> float:
        return self.Gamma_OM * self.tau


@dataclass(frozen=True)
class SqueezeResult:
    """Gain coefficients and the equivalent two-mode-squeezing numbers.

    gain_A multiplies the initial mechanical operator, gain_B the conjugate
    input partner. ``r`` is the squeezing parameter with cosh(r) = gain_A at
    alpha = 0, ``lam`` = tanh(r) and ``p0`` = 1/cosh(r)^2 is the vacuum
    probability.
    """

    gain_A: float
    gain_B: float
    r: float
    lam: float
    p0: float

    @property
    def mean_pairs(self) -> float:
        return math.sinh(self.r) ** 2


def scattering_rate(G: float, kappa: float) -> float:
    """Pair-creation rate 4 G^2 / kappa of the pumped interaction."""
    if kappa <= 0:
        raise InvalidParameterError(f"kappa must be positive, got {kappa}")
    return 4.0 * G * G / kappa


def dispersive_shift(g_qm: float, E_C_over_hbar: float, Delta: float) -> float:
    """Qubit-state-dependent mechanical frequency shift in the detuned regime.

    chi = -g_qm^2 (E_C/hbar) / (Delta (Delta - E_C/hbar)); all arguments are
    angular rates. The caller is responsible for |chi| << omega_m.
    """
    den = Delta * (Delta - E_C_over_hbar)
    scale = max(abs(Delta), abs(E_C_over_hbar), 1.0) ** 2
    if abs(den) < 1e-14 * scale:
        raise SingularityError(
            f"dispersive shift evaluated at a pole: Delta={Delta}, E_C/hbar={E_C_over_hbar}"
        )
    return -(g_qm * g_qm * E_C_over_hbar) / den


def squeeze_gains(p: SqueezeParams) -> SqueezeResult:
    """Gain coefficients of the pumped interaction for a square pump.

    gain_A = exp((1-alpha) Gamma tau / 2);
    gain_B = sqrt((exp((1-alpha) Gamma tau) - 1) / (1-alpha)), with the
    analytic limit sqrt(Gamma tau) taken when |1-alpha| < 1e-6.
    """
    x = p.pump_area
    if x > HARD_PUMP_THRESHOLD:
        warnings.warn(
            f"Gamma_OM*tau = {x:.3g} exceeds {HARD_PUMP_THRESHOLD}; "
            "lowest-order pair statistics are unreliable",
            HardPumpWarning,
            stacklevel=2,
        )
    one_minus = 1.0 - p.alpha
    gain_A = math.exp(one_minus * x / 2.0)
    if abs(one_minus) < 1e-6:
        gain_B = math.sqrt(x)
    else:
        gain_B = math.sqrt(math.expm1(one_minus * x) / one_minus)
    # r through asinh keeps full precision for weak pumps; p0 = exp(-x) is
    # the exact vacuum weight 1/cosh(r)^2.
    sinh_r = math.sqrt(math.expm1(x))
    r = math.asinh(sinh_r)
    lam = sinh_r / math.exp(x / 2.0)
    p0 = math.exp(-x)
    return SqueezeResult(gain_A=gain_A, gain_B=gain_B, r=r, lam=lam, p0=p0)


def pair_distribution(p0: float, n_max: int) -> list[float]:
    """Probabilities p_n = p0 (1-p0)^n of creating n pairs, for n = 0..n_max.

    Not renormalized; the truncated tail mass is 1 - sum(result).
    """
    if not 0.0 < p0 <= 1.0:
        raise InvalidParameterError(f"p0 must be in (0, 1], got {p0}")
    if n_max < 0:
        raise InvalidParameterError(f"n_max must be >= 0, got {n_max}")
    q = 1.0 - p0
    return [p0 * q**n for n in range(n_max + 1)]


def herald_probability(p0: float, n_max: int = DEFAULT_MAX_PAIRS) -> float:
    """Probability that the parity check reports odd across the two rails.

    Sums p_n * p_m over all (n, m) with n + m odd and n + m <= n_max; higher
    pair numbers are ignored.
    """
    p = pair_distribution(p0, n_max)
    total = 0.0
    for n in range(n_max + 1):
        for m in range(n_max + 1 - n):
            if (n + m) % 2 == 1:
                total += p[n] * p[m]
    return total


class MultiphotonNoise(NamedTuple):
    exact: float
    lowest_order: float


def multiphoton_noise(p0: float) -> MultiphotonNoise:
    """Probability that a heralded pair carries three photons instead of one.

    exact = (p0 p3 + p1 p2) / (p0 p1 + p0 p3 + p1 p2); the lowest-order
    companion value is p1^2.
    """
    if not 0.0 < p0 < 1.0:
        raise InvalidParameterError(
            f"multiphoton noise is degenerate at p0 = {p0}; need 0 < p0 < 1"
        )
    p = pair_distribution(p0, 3)
    num = p[0] * p[3] + p[1] * p[2]
    den = p[0] * p[1] + num
    return MultiphotonNoise(exact=num / den, lowest_order=p[1] ** 2)


def p1_scaling(Gamma_OM: float, tau: float) -> float:
    """Lowest-order single-pair probability, p1 ~ Gamma_OM * tau.

    Deviations from this estimate exceed 10% once the result itself passes
    roughly 0.1; a warning marks the regime boundary.
    """
    if Gamma_OM < 0 or tau < 0:
        raise InvalidParameterError("Gamma_OM and tau must be non-negative")
    x = Gamma_OM * tau
    if x >= HARD_PUMP_THRESHOLD:
        warnings.warn(
            f"Gamma_OM*tau = {x:.3g} is outside the lowest-order regime",
            HardPumpWarning,
            stacklevel=2,
        )
    return x
