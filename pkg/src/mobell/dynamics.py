"""Time-dependent open-system dynamics of the transducer block.

The model couples a transmon (anharmonic oscillator) to a mechanical mode,
optionally retaining the optical mode. With the optical mode eliminated, the
pump enters as an incoherent pair-creation channel on the mechanics at rate
``Gamma_OM(t) = 4 G(t)^2 / kappa`` together with an absorption-induced
heating bath that turns on over ``1/gamma_s``. Integration is fixed-step
classic Runge-Kutta on the vectorized density matrix, with the hot loop in
``mobell.kernels``.

Two frames are supported: ``lab`` keeps the mechanical frequency explicit;
``interaction`` subtracts it from every mode (an exact transformation for
this model, allowing ~10x larger steps). Populations agree between frames.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .exceptions import (
    IntegrationError,
    InvalidDimensionError,
    InvalidParameterError,
    PhysicsInfeasibleError,
)
from .fock import (
    DensityMatrix,
    ModeSpec,
    Operator,
    annihilation,
    expand,
    transmon_hamiltonian,
    vacuum_state,
)
from .squeezing import scattering_rate
from .units import GHZ, KHZ, MHZ, TWO_PI

DEFAULT_DT = {"lab": 0.002, "interaction": 0.02}

# RK4 is stable on the imaginary axis up to |lambda*dt| = 2*sqrt(2); keep a
# little margin below that.
RK4_STABILITY_LIMIT = 2.5

TRACE_DRIFT_LIMIT = 1e-4
POPULATION_TOL = 1e-6

FULL_OPTICS_MAX_DIM = 500


@dataclass(frozen=True)
class TransducerParams:
    """Physical rates and truncation dimensions for one transducer block.

    Angular rates are rad/ns, times ns; ``E_C_over_h`` is an ordinary
    frequency in GHz. Defaults are the nominal device values used throughout
    the package.
    """

    omega_m: float = 5.0 * GHZ
    gamma_0: float = 100.0 * KHZ
    gamma_b: float = 25.0 * KHZ
    gamma_s: float = 200.0 * KHZ
    delta_frac: float = 0.8
    n_b: float = 1.0
    G_peak: float = 10.0 * MHZ
    tau_pulse: float = 20.0
    kappa: float = 1.0 * GHZ
    omega_q_detuned: float = 4.8 * GHZ
    T_ramp: float = 5.0
    E_C_over_h: float = 0.2
    g_qm: float = 15.0 * MHZ
    dims: tuple[int, ...] = (3, 4)

    def __post_init__(self):
        for name in ("omega_m", "gamma_0", "gamma_b", "gamma_s", "n_b",
                     "G_peak", "tau_pulse", "kappa", "omega_q_detuned",
                     "T_ramp", "E_C_over_h", "g_qm"):
            if getattr(self, name) < 0:
                raise InvalidParameterError(f"{name} must be non-negative")
        if not 0.0 <= self.delta_frac <= 1.0:
            raise InvalidParameterError("delta_frac must lie in [0, 1]")
        dims = tuple(int(d) for d in self.dims)
        if len(dims) not in (2, 3) or any(d < 2 for d in dims):
            raise InvalidDimensionError(
                f"dims must be (transmon, mechanics[, optics]) with every entry >= 2, got {dims}"
            )
        object.__setattr__(self, "dims", dims)

    @property
    def has_optics(self) -> bool:
        return len(self.dims) == 3

    def space(self, with_optics: bool | None = None) -> tuple[ModeSpec, ...]:
        if with_optics is None:
            with_optics = self.has_optics
        modes = [ModeSpec("q", self.dims[0]), ModeSpec("m", self.dims[1])]
        if with_optics:
            if not self.has_optics:
                raise InvalidDimensionError("params carry no optical dimension")
            modes.append(ModeSpec("o", self.dims[2]))
        return tuple(modes)

    def heating_occupancy(self, t) -> np.ndarray:
        """Slow-turn-on bath occupancy n_b (1 - delta e^{-gamma_s t})."""
        t = np.asarray(t, dtype=float)
        return self.n_b * (1.0 - self.delta_frac * np.exp(-self.gamma_s * t))

    @property
    def gamma_total(self) -> float:
        return self.gamma_0 + self.gamma_b


def _vectorized(f: Callable) -> Callable:
    probe = np.array([0.0, 0.5])
    try:
        out = np.asarray(f(probe), dtype=float)
        if out.shape == probe.shape:
            return f
    except Exception:
        pass
    return np.vectorize(f, otypes=[float])


@dataclass(frozen=True)
class PulseSchedule:
    """Pump envelope G(t) and qubit frequency ramp for one clock cycle.

    ``G_of_t`` must be non-negative and ``omega_q_of_t`` continuous; both are
    validated on a dense grid at construction. The optional metadata fields
    record where the factories placed the pump and swap segments.
    """

    G_of_t: Callable
    omega_q_of_t: Callable
    t_end: float
    pump_center: float | None = None
    pump_window: tuple[float, float] | None = None
    swap_start: float | None = None
    release: float | None = None

    def __post_init__(self):
        if self.t_end <= 0:
            raise InvalidParameterError("t_end must be positive")
        object.__setattr__(self, "G_of_t", _vectorized(self.G_of_t))
        object.__setattr__(self, "omega_q_of_t", _vectorized(self.omega_q_of_t))
        ts = np.linspace(0.0, self.t_end, 4097)
        g = np.asarray(self.G_of_t(ts), dtype=float)
        w = np.asarray(self.omega_q_of_t(ts), dtype=float)
        if not np.all(np.isfinite(g)) or not np.all(np.isfinite(w)):
            raise InvalidParameterError("schedule callables produced non-finite values")
        if np.min(g) < -1e-12:
            raise InvalidParameterError("G_of_t must be non-negative")
        span = float(np.max(w) - np.min(w))
        if span > 0 and float(np.max(np.abs(np.diff(w)))) > 0.25 * span:
            raise InvalidParameterError(
                "omega_q_of_t jumps on the validation grid; the frequency ramp must be continuous"
            )


def _smooth01(x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, 1.0)
    return x * x * (3.0 - 2.0 * x)


def gaussian_pump(p: TransducerParams, center: float, cutoff_sigmas: float = 4.0) -> Callable:
    """Gaussian pump envelope truncated at +-cutoff_sigmas."""
    sig = p.tau_pulse
    peak = p.G_peak

    def env(t):
        t = np.asarray(t, dtype=float)
        u = (t - center) / sig
        return np.where(np.abs(u) <= cutoff_sigmas, peak * np.exp(-0.5 * u * u), 0.0)

    return env


def _qubit_ramp(p: TransducerParams, swap_start: float, release: float) -> Callable:
    w_det = p.omega_q_detuned
    w_res = p.omega_m
    T = p.T_ramp

    def omega(t):
        t = np.asarray(t, dtype=float)
        up = _smooth01((t - swap_start) / T)
        down = _smooth01((t - release) / T) if math.isfinite(release) else 0.0
        return w_det + (w_res - w_det) * (up - down)

    return omega


def default_t_hold(p: TransducerParams) -> float:
    """Release-time seed where the two-excitation swap returns to the
    mechanics (sqrt(2)-faster oscillation completes a full period) while the
    single excitation is still near its transfer maximum."""
    return math.pi * math.sqrt(2.0) / p.g_qm


def standard_schedule(
    p: TransducerParams,
    *,
    pump_center: float | None = None,
    swap_start: float | None = None,
    t_hold: float | None = None,
    t_end: float | None = None,
    pump_on: bool = True,
) -> PulseSchedule:
    """Pump pulse followed by a swap window: ramp to resonance at
    ``swap_start``, hold ``t_hold``, ramp back."""
    if pump_center is None:
        pump_center = 4.0 * p.tau_pulse
    pump_end = pump_center + 4.0 * p.tau_pulse
    if swap_start is None:
        swap_start = pump_end + 2.0
    if t_hold is None:
        t_hold = default_t_hold(p)
    if t_hold <= 0:
        raise InvalidParameterError("t_hold must be positive")
    release = swap_start + p.T_ramp + t_hold
    if t_end is None:
        t_end = release + p.T_ramp + 5.0
    env = gaussian_pump(p, pump_center) if pump_on else (lambda t: np.zeros_like(np.asarray(t, dtype=float)))
    return PulseSchedule(
        G_of_t=env,
        omega_q_of_t=_qubit_ramp(p, swap_start, release),
        t_end=t_end,
        pump_center=pump_center,
        pump_window=(max(0.0, pump_center - 4.0 * p.tau_pulse), pump_end),
        swap_start=swap_start,
        release=release,
    )


def swap_search_schedule(
    p: TransducerParams,
    *,
    t_end: float,
    pump_center: float | None = None,
    swap_start: float | None = None,
    pump_on: bool = True,
) -> PulseSchedule:
    """Like standard_schedule but the qubit stays resonant through t_end, so
    release times can be scanned over the recorded trajectory."""
    if pump_center is None:
        pump_center = 4.0 * p.tau_pulse
    pump_end = pump_center + 4.0 * p.tau_pulse
    if swap_start is None:
        swap_start = pump_end + 2.0
    env = gaussian_pump(p, pump_center) if pump_on else (lambda t: np.zeros_like(np.asarray(t, dtype=float)))
    return PulseSchedule(
        G_of_t=env,
        omega_q_of_t=_qubit_ramp(p, swap_start, math.inf),
        t_end=t_end,
        pump_center=pump_center,
        pump_window=(max(0.0, pump_center - 4.0 * p.tau_pulse), pump_end),
        swap_start=swap_start,
        release=None,
    )


def pump_only_schedule(
    p: TransducerParams,
    *,
    t_end: float | None = None,
    pump_center: float | None = None,
) -> PulseSchedule:
    """Gaussian pump with the qubit parked at its detuned frequency."""
    if pump_center is None:
        pump_center = 4.0 * p.tau_pulse
    pump_end = pump_center + 4.0 * p.tau_pulse
    if t_end is None:
        t_end = pump_end + 20.0
    return PulseSchedule(
        G_of_t=gaussian_pump(p, pump_center),
        omega_q_of_t=lambda t: np.full_like(np.asarray(t, dtype=float), p.omega_q_detuned),
        t_end=t_end,
        pump_center=pump_center,
        pump_window=(max(0.0, pump_center - 4.0 * p.tau_pulse), pump_end),
    )


def constant_pump_schedule(
    p: TransducerParams,
    G: float,
    t_end: float,
    *,
    resonant: bool = False,
) -> PulseSchedule:
    """Constant pump amplitude with the qubit parked (detuned or resonant)."""
    w = p.omega_m if resonant else p.omega_q_detuned
    return PulseSchedule(
        G_of_t=lambda t: np.full_like(np.asarray(t, dtype=float), float(G)),
        omega_q_of_t=lambda t: np.full_like(np.asarray(t, dtype=float), w),
        t_end=t_end,
        pump_window=(0.0, t_end),
    )


@dataclass(frozen=True)
class Trajectory:
    """Sampled output of one integration run."""

    times: np.ndarray
    populations: dict[tuple[int, int], np.ndarray]
    mean_phonon: np.ndarray
    trace_err: np.ndarray
    states: tuple[DensityMatrix, ...]
    state_times: np.ndarray
    frame: str
    dt: float
    mean_optical: np.ndarray | None = None

    def population(self, nq: int, nm: int) -> np.ndarray:
        key = (nq, nm)
        if key in self.populations:
            return self.populations[key]
        return np.zeros_like(self.times)

    def final_state(self) -> DensityMatrix:
        return self.states[-1]

    def state_at(self, t: float) -> DensityMatrix:
        idx = int(np.argmin(np.abs(self.state_times - t)))
        return self.states[idx]

    def to_csv(self, path) -> None:
        """Write the population traces with the canonical column layout."""
        cols = [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0)]
        header = "t_ns,P_00,P_01,P_10,P_11,P_02,P_20,mean_phonon,trace_err"
        with open(path, "w", encoding="utf-8") as f:
            f.write(header + "\n")
            for i, t in enumerate(self.times):
                vals = [self.population(*c)[i] for c in cols]
                row = [f"{t:.12g}"] + [f"{v:.12g}" for v in vals]
                row.append(f"{self.mean_phonon[i]:.12g}")
                row.append(f"{self.trace_err[i]:.12g}")
                f.write(",".join(row) + "\n")


def _require_adiabatic(p: TransducerParams):
    if p.G_peak > 0 and p.kappa <= 10.0 * p.G_peak:
        raise PhysicsInfeasibleError(
            f"kappa/G_peak = {p.kappa / p.G_peak:.2f} <= 10: the eliminated-optics "
            "model is invalid here, use the full-optics integrator"
        )


def _half_grid(t_end: float, dt: float) -> tuple[int, np.ndarray]:
    n_steps = max(1, int(round(t_end / dt)))
    ts = 0.5 * dt * np.arange(2 * n_steps + 1)
    return n_steps, ts


def build_generator(
    p: TransducerParams, s: PulseSchedule, t: float
) -> tuple[Operator, list[tuple[Operator, float]]]:
    """Hamiltonian and collapse terms at time t (lab frame, optics eliminated).

    Collapse terms are returned unmerged: pair creation on b^dag at
    Gamma_OM(t), fridge decay on b at gamma_0, and the heating bath's
    b^dag / b pair at gamma_b * n(t) and gamma_b * (n(t) + 1).
    """
    space = p.space(with_optics=False)
    b = expand(annihilation(p.dims[1], "m"), space)
    bd = b.dag()
    a = expand(annihilation(p.dims[0], "q"), space)
    ad = a.dag()
    wq = float(np.asarray(s.omega_q_of_t(t)))
    H = (
        expand(transmon_hamiltonian(wq, p.E_C_over_h, p.dims[0], "q"), space)
        + p.omega_m * (bd @ b)
        + p.g_qm * (ad @ b + a @ bd)
    )
    G = float(np.asarray(s.G_of_t(t)))
    gom = scattering_rate(G, p.kappa)
    heat = float(p.heating_occupancy(t))
    collapse = [
        (bd, gom),
        (b, p.gamma_0),
        (bd, p.gamma_b * heat),
        (b, p.gamma_b * (heat + 1.0)),
    ]
    return H, collapse


def _pack_eliminated(p: TransducerParams, s: PulseSchedule, frame: str, dt: float):
    space = p.space(with_optics=False)
    dims = [m.dim for m in space]
    b = expand(annihilation(p.dims[1], "m"), space).matrix
    bd = b.conj().T
    a = expand(annihilation(p.dims[0], "q"), space).matrix
    ad = a.conj().T
    n_q = ad @ a
    anharm = ad @ ad @ a @ a
    coupling = ad @ b + a @ bd
    n_m = bd @ b

    a_base = -(TWO_PI * p.E_C_over_h / 2.0) * anharm + p.g_qm * coupling
    if frame == "lab":
        a_base = a_base + p.omega_m * n_m

    n_steps, ts = _half_grid(s.t_end, dt)
    wq = np.asarray(s.omega_q_of_t(ts), dtype=float)
    if frame == "interaction":
        wq = wq - p.omega_m
    G = np.asarray(s.G_of_t(ts), dtype=float)
    gom = 4.0 * G * G / p.kappa
    heat = p.heating_occupancy(ts)
    r_up = gom + p.gamma_b * heat
    r_dn = np.full_like(ts, p.gamma_0) + p.gamma_b * (heat + 1.0)

    m_up = b @ bd  # L = b^dag
    m_dn = n_m  # L = b
    a_terms = np.stack([n_q, -0.5j * m_up, -0.5j * m_dn])
    a_coeffs = np.stack([wq, r_up, r_dn])
    l_ops = np.stack([bd, b])
    l_rates = np.stack([r_up, r_dn])
    return dims, n_steps, a_base, a_terms, a_coeffs, l_ops, l_rates


def _pack_full_optics(p: TransducerParams, s: PulseSchedule, frame: str, dt: float):
    space = p.space(with_optics=True)
    dims = [m.dim for m in space]
    a = expand(annihilation(p.dims[0], "q"), space).matrix
    b = expand(annihilation(p.dims[1], "m"), space).matrix
    c = expand(annihilation(p.dims[2], "o"), space).matrix
    ad, bd, cd = a.conj().T, b.conj().T, c.conj().T
    n_q = ad @ a
    anharm = ad @ ad @ a @ a
    coupling = ad @ b + a @ bd
    pump = bd @ cd + b @ c
    n_m = bd @ b
    n_c = cd @ c

    a_base = -(TWO_PI * p.E_C_over_h / 2.0) * anharm + p.g_qm * coupling
    if frame == "lab":
        a_base = a_base + p.omega_m * (n_m - n_c)

    n_steps, ts = _half_grid(s.t_end, dt)
    wq = np.asarray(s.omega_q_of_t(ts), dtype=float)
    if frame == "interaction":
        wq = wq - p.omega_m
    G = np.asarray(s.G_of_t(ts), dtype=float)
    heat = p.heating_occupancy(ts)
    r_kappa = np.full_like(ts, p.kappa)
    r_up = p.gamma_b * heat
    r_dn = np.full_like(ts, p.gamma_0) + p.gamma_b * (heat + 1.0)

    # rows: omega_q, G(t), kappa (M = c^dag c), heating up (M = b b^dag), down
    a_terms = np.stack([n_q, pump, -0.5j * n_c, -0.5j * (b @ bd), -0.5j * n_m])
    a_coeffs = np.stack([wq, G, r_kappa, r_up, r_dn])
    l_ops = np.stack([c, bd, b])
    l_rates = np.stack([r_kappa, r_up, r_dn])
    return dims, n_steps, a_base, a_terms, a_coeffs, l_ops, l_rates


def _stability_check(a_base, a_terms, a_coeffs, dt: float):
    # Sample the Hermitian part of A over the run; the commutator spectrum is
    # bounded by the eigenvalue spread.
    idx = np.linspace(0, a_coeffs.shape[1] - 1, 9).astype(int)
    worst = 0.0
    for s in idx:
        a = a_base.copy()
        for j in range(a_terms.shape[0]):
            a += a_coeffs[j, s] * a_terms[j]
        h = 0.5 * (a + a.conj().T)
        ev = np.linalg.eigvalsh(h)
        worst = max(worst, float(ev[-1] - ev[0]))
    if worst * dt > RK4_STABILITY_LIMIT:
        raise IntegrationError(
            f"dt = {dt:g} is too large for this frame: |H| spread {worst:.3g} rad/ns "
            f"gives lambda*dt = {worst * dt:.3g} > {RK4_STABILITY_LIMIT}"
        )


def _run(
    rho0: DensityMatrix,
    packed,
    dt: float,
    frame: str,
    sample_every: int | None,
    state_every: int | None,
    space,
):
    from . import kernels

    dims, n_steps, a_base, a_terms, a_coeffs, l_ops, l_rates = packed
    d = int(np.prod(dims))
    if rho0.dim != d:
        raise InvalidDimensionError(
            f"initial state dimension {rho0.dim} does not match model dimension {d}"
        )
    _stability_check(a_base, a_terms, a_coeffs, dt)
    if sample_every is None:
        sample_every = max(1, int(round(0.1 / dt)))
    if state_every is None:
        state_every = 0

    diag, diag_steps, states_raw, state_steps, rho_final = kernels.rk4_lindblad(
        rho0.matrix, a_base, a_terms, a_coeffs, l_ops, l_rates,
        dt, n_steps, sample_every, state_every,
    )

    times = diag_steps.astype(float) * dt
    trace = diag.sum(axis=1)
    trace_err = np.abs(trace - 1.0)
    worst = float(trace_err.max())
    if worst > TRACE_DRIFT_LIMIT:
        raise IntegrationError(
            f"trace drift {worst:.3e} exceeds {TRACE_DRIFT_LIMIT:g}; reduce dt"
        )
    min_pop = float(diag.min())
    if min_pop < -POPULATION_TOL:
        raise IntegrationError(
            f"population {min_pop:.3e} is below -{POPULATION_TOL:g}; reduce dt"
        )
    pops_nd = np.clip(diag, 0.0, None).reshape((diag.shape[0], *dims))
    if len(dims) == 3:
        mean_optical = np.tensordot(
            pops_nd.sum(axis=(1, 2)), np.arange(dims[2], dtype=float), axes=(1, 0)
        )
        pops_qm = pops_nd.sum(axis=3)
    else:
        mean_optical = None
        pops_qm = pops_nd
    populations = {
        (i, j): pops_qm[:, i, j].copy()
        for i in range(dims[0])
        for j in range(dims[1])
    }
    mean_phonon = np.tensordot(
        pops_qm.sum(axis=1), np.arange(dims[1], dtype=float), axes=(1, 0)
    )

    if state_every > 0:
        state_list = [
            DensityMatrix(space, m, trace_tol=2e-4, herm_tol=1e-8, psd_tol=POPULATION_TOL)
            for m in states_raw
        ]
        state_times = state_steps.astype(float) * dt
    else:
        state_list = [
            DensityMatrix(space, rho_final, trace_tol=2e-4, herm_tol=1e-8, psd_tol=POPULATION_TOL)
        ]
        state_times = np.array([n_steps * dt])

    return Trajectory(
        times=times,
        populations=populations,
        mean_phonon=mean_phonon,
        trace_err=trace_err,
        states=tuple(state_list),
        state_times=state_times,
        frame=frame,
        dt=dt,
        mean_optical=mean_optical,
    )


def evolve(
    rho0: DensityMatrix,
    p: TransducerParams,
    s: PulseSchedule,
    dt: float | None = None,
    *,
    frame: str = "lab",
    sample_every: int | None = None,
    state_every: int | None = None,
    enforce_regime: bool = True,
) -> Trajectory:
    """Integrate the eliminated-optics master equation from t = 0 to s.t_end.

    ``enforce_regime=False`` skips the kappa >> G check, for deliberate
    comparisons against the full-optics integrator outside the validity
    regime.
    """
    if frame not in DEFAULT_DT:
        raise InvalidParameterError(f"unknown frame {frame!r}")
    if enforce_regime:
        _require_adiabatic(p)
    if dt is None:
        dt = DEFAULT_DT[frame]
    packed = _pack_eliminated(p, s, frame, dt)
    return _run(rho0, packed, dt, frame, sample_every, state_every, p.space(with_optics=False))


def evolve_full_optics(
    rho0: DensityMatrix,
    p: TransducerParams,
    s: PulseSchedule,
    dt: float | None = None,
    *,
    frame: str = "lab",
    sample_every: int | None = None,
    state_every: int | None = None,
) -> Trajectory:
    """Integrate with the optical mode retained (validation of the
    instantaneous-optics approximation at moderate kappa/G)."""
    if frame not in DEFAULT_DT:
        raise InvalidParameterError(f"unknown frame {frame!r}")
    if not p.has_optics:
        raise InvalidDimensionError("params must carry an optical dimension")
    total = int(np.prod(p.dims))
    if total > FULL_OPTICS_MAX_DIM:
        raise InvalidDimensionError(
            f"full-optics space dimension {total} exceeds {FULL_OPTICS_MAX_DIM}"
        )
    if dt is None:
        dt = DEFAULT_DT[frame]
    packed = _pack_full_optics(p, s, frame, dt)
    return _run(rho0, packed, dt, frame, sample_every, state_every, p.space(with_optics=True))


def mean_phonon(
    p: TransducerParams,
    s: PulseSchedule,
    tgrid: Sequence[float],
    n0: float = 0.0,
) -> np.ndarray:
    """Scalar rate-equation solution for the mean mechanical occupation:
    d<n>/dt = (Gamma_OM - gamma) <n> + gamma_b n_b (1 - delta e^{-gamma_s t})
    + Gamma_OM, with gamma = gamma_0 + gamma_b."""
    tgrid = np.asarray(tgrid, dtype=float)
    if tgrid.ndim != 1 or tgrid.size < 1 or np.any(np.diff(tgrid) <= 0):
        raise InvalidParameterError("tgrid must be strictly increasing")
    _require_adiabatic(p)
    gamma = p.gamma_total

    def rhs(t, n):
        G = float(np.asarray(s.G_of_t(t)))
        gom = 4.0 * G * G / p.kappa
        drive = p.gamma_b * float(p.heating_occupancy(t))
        return (gom - gamma) * n + drive + gom

    sol = solve_ivp(
        rhs,
        (0.0, float(tgrid[-1])),
        [float(n0)],
        t_eval=tgrid,
        rtol=1e-10,
        atol=1e-13,
        max_step=max(p.tau_pulse / 4.0, 1.0),
        method="RK45",
    )
    if not sol.success:
        raise IntegrationError(f"rate-equation solve failed: {sol.message}")
    return sol.y[0]


def integrated_scattering(
    p: TransducerParams,
    s: PulseSchedule,
    t0: float = 0.0,
    t1: float | None = None,
    n: int = 20001,
) -> float:
    """Time integral of Gamma_OM(t) over [t0, t1] (default: the pump window)."""
    if t1 is None:
        t1 = s.pump_window[1] if s.pump_window else s.t_end
    ts = np.linspace(t0, t1, n)
    G = np.asarray(s.G_of_t(ts), dtype=float)
    return float(np.trapezoid(4.0 * G * G / p.kappa, ts))


def vacuum(p: TransducerParams, with_optics: bool | None = None) -> DensityMatrix:
    return vacuum_state(p.space(with_optics))
