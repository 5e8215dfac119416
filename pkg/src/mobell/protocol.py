"""Clock-cycle Bell-pair pipeline.

One cycle: reset (exact ground-state projection), pump both rails with the
same pulse, swap the phonon onto the transmon with an optimized hold time,
detune, and herald on an odd parity outcome across the two rail qubits. The
two rails are physically uncoupled until the parity check, so a single
rail simulation is reused for both and tensored at the check.

The optical photon is never tracked dynamically: each rail's pair record at
the end of the pump fixes an analytic per-rail photon-number model that is
carried through the herald for downstream loss/noise scoring.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import (
    PulseSchedule,
    Trajectory,
    TransducerParams,
    evolve,
    standard_schedule,
    vacuum,
)
from .exceptions import (
    InfeasibleSwapError,
    InvalidParameterError,
)
from .fock import DensityMatrix, ModeSpec, partial_trace

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

# Release candidates must keep at least this fraction of the best
# single-excitation transfer.
P10_FLOOR_FRACTION = 0.9

MAX_PAIRS = 3


@dataclass(frozen=True)
class SwapPlan:
    """Chosen swap timing and the populations that justified it.

    ``t_start`` is where the ramp to resonance begins; ``t_hold`` the time
    spent on resonance before ramping away. ``P10_release``/``P11_residual``
    are read off the resonant trajectory at the release time; ``P10_peak`` is
    the window-wide maximum of the single-excitation transfer.
    """

    t_start: float
    t_hold: float
    n_half_swaps: int
    P11_residual: float
    P10_peak: float
    P10_release: float
    pump_center: float | None = None


@dataclass(frozen=True)
class OpticalPairModel:
    """Per-rail photon-number bookkeeping derived from the pair record.

    ``per_rail[n]`` is the probability that the rail created n pairs (n
    photons left toward the optical port). ``p_multiphoton`` is the analytic
    odds that a heralded pair carries three photons instead of one.
    """

    per_rail: np.ndarray
    p_multiphoton: float
    p_single: float


@dataclass(frozen=True)
class BellOutcome:
    herald: bool
    p_herald: float
    rho_rails: DensityMatrix
    leakage_weight: float
    optical_pair_model: OpticalPairModel | None


@dataclass(frozen=True)
class ParityCheckResult:
    reported: str
    p_reported: float
    rho_post: DensityMatrix
    p_true_odd: float
    rho_true_odd: DensityMatrix | None
    rho_true_even: DensityMatrix | None


def _parity_masks(dims: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
    n1 = np.arange(dims[0])[:, None]
    n2 = np.arange(dims[1])[None, :]
    odd = ((n1 + n2) % 2 == 1).reshape(-1)
    return odd, ~odd


def parity_check_channel(
    rho2: DensityMatrix,
    eta_PC: float,
    *,
    outcome: str | None = None,
    rng: np.random.Generator | None = None,
    false_odd: float | None = None,
    false_even: float | None = None,
) -> ParityCheckResult:
    """Joint excitation-parity measurement with classical readout confusion.

    The ideal projection splits rho2 by the parity of the total excitation
    number (higher transmon levels count with their excitation number). The
    reported label flips with probability 1 - eta_PC, symmetrically unless
    ``false_odd``/``false_even`` override the two confusion rates. Exactly
    one of ``outcome`` (condition on a reported label) or ``rng`` (sample
    the reported label) must be supplied.
    """
    if not 0.0 < eta_PC <= 1.0:
        raise InvalidParameterError("eta_PC must be in (0, 1]")
    if false_odd is None:
        false_odd = 1.0 - eta_PC
    if false_even is None:
        false_even = 1.0 - eta_PC
    if (outcome is None) == (rng is None):
        raise InvalidParameterError("supply exactly one of outcome= or rng=")
    if len(rho2.space) != 2:
        raise InvalidParameterError("parity check needs a two-mode state")

    dims = (rho2.space[0].dim, rho2.space[1].dim)
    odd_mask, even_mask = _parity_masks(dims)
    m = rho2.matrix
    proj_odd = np.where(odd_mask[:, None] & odd_mask[None, :], m, 0.0)
    proj_even = np.where(even_mask[:, None] & even_mask[None, :], m, 0.0)
    p_odd = float(np.trace(proj_odd).real)
    p_even = float(np.trace(proj_even).real)

    def _dm(mat, p):
        if p <= 1e-15:
            return None
        return DensityMatrix(rho2.space, mat / p, trace_tol=1e-6, herm_tol=1e-8, psd_tol=1e-6)

    rho_odd = _dm(proj_odd, p_odd)
    rho_even = _dm(proj_even, p_even)

    p_rep_odd = (1.0 - false_even) * p_odd + false_odd * p_even
    p_rep_even = false_even * p_odd + (1.0 - false_odd) * p_even

    if outcome is None:
        outcome = "odd" if rng.random() < p_rep_odd else "even"
    if outcome not in ("odd", "even"):
        raise InvalidParameterError(f"outcome must be 'odd' or 'even', got {outcome!r}")

    if outcome == "odd":
        p_rep = p_rep_odd
        blend = (1.0 - false_even) * p_odd * proj_odd / max(p_odd, 1e-300) + \
            false_odd * p_even * proj_even / max(p_even, 1e-300)
    else:
        p_rep = p_rep_even
        blend = false_even * p_odd * proj_odd / max(p_odd, 1e-300) + \
            (1.0 - false_odd) * p_even * proj_even / max(p_even, 1e-300)
    if p_rep <= 1e-15:
        raise InvalidParameterError(f"reported outcome {outcome!r} has probability {p_rep:g}")
    rho_post = DensityMatrix(
        rho2.space, blend / p_rep, trace_tol=1e-6, herm_tol=1e-8, psd_tol=1e-6
    )
    return ParityCheckResult(
        reported=outcome,
        p_reported=p_rep,
        rho_post=rho_post,
        p_true_odd=p_odd,
        rho_true_odd=rho_odd,
        rho_true_even=rho_even,
    )


def hadamard_dual_rail(rho2: DensityMatrix) -> DensityMatrix:
    """50:50 beam-splitter Hadamard on the two rails.

    |01> -> (|01>+|10>)/sqrt(2), |10> -> (|01>-|10>)/sqrt(2); everything
    outside the single-excitation subspace passes through untouched.
    """
    if len(rho2.space) != 2:
        raise InvalidParameterError("dual-rail Hadamard needs a two-mode state")
    dims = (rho2.space[0].dim, rho2.space[1].dim)
    d = dims[0] * dims[1]
    i01 = int(np.ravel_multi_index((0, 1), dims))
    i10 = int(np.ravel_multi_index((1, 0), dims))
    u = np.eye(d, dtype=complex)
    s = 1.0 / math.sqrt(2.0)
    u[i01, i01] = s
    u[i01, i10] = s
    u[i10, i01] = s
    u[i10, i10] = -s
    return DensityMatrix(
        rho2.space, u @ rho2.matrix @ u.conj().T,
        trace_tol=1e-6, herm_tol=1e-8, psd_tol=1e-6,
    )


def _pair_record(state: DensityMatrix, n_max: int = MAX_PAIRS) -> np.ndarray:
    """Distribution of the total excitation number of one rail, truncated."""
    dims = [m.dim for m in state.space]
    diag = np.clip(np.diagonal(state.matrix).real, 0.0, None)
    out = np.zeros(n_max + 1)
    for idx, p in enumerate(diag):
        occ = np.unravel_index(idx, dims)
        n = int(sum(occ))
        if n <= n_max:
            out[n] += p
    return out


def _optical_model(per_rail: np.ndarray) -> OpticalPairModel:
    q = per_rail
    herald_terms = q[0] * q[1] + q[0] * q[3] + q[1] * q[2]
    if herald_terms <= 0:
        return OpticalPairModel(per_rail=q, p_multiphoton=0.0, p_single=1.0)
    noise = (q[0] * q[3] + q[1] * q[2]) / herald_terms
    return OpticalPairModel(per_rail=q, p_multiphoton=noise, p_single=1.0 - noise)


def herald_bell_pair(
    rho_q1: DensityMatrix,
    rho_q2: DensityMatrix,
    eta_PC: float = 1.0,
    *,
    pair_model: OpticalPairModel | None = None,
    outcome: str | None = "odd",
    rng: np.random.Generator | None = None,
) -> BellOutcome:
    """Tensor the two rail qubits, apply the parity check, and condition.

    The post-herald state is restricted to the two-level computational block;
    ``leakage_weight`` is the reported-odd population outside the
    single-excitation subspace (including higher transmon levels).
    """
    if rng is not None:
        outcome = None
    d1, d2 = rho_q1.dim, rho_q2.dim
    space = (ModeSpec("q_R1", d1), ModeSpec("q_R2", d2))
    joint = DensityMatrix(
        space, np.kron(rho_q1.matrix, rho_q2.matrix),
        trace_tol=1e-6, herm_tol=1e-8, psd_tol=1e-6,
    )
    res = parity_check_channel(joint, eta_PC, outcome=outcome, rng=rng)
    herald = res.reported == "odd"
    # probability that the check reports odd, whatever this call conditioned on
    p_herald = res.p_reported if herald else 1.0 - res.p_reported

    m = res.rho_post.matrix
    dims = (d1, d2)
    i01 = int(np.ravel_multi_index((0, 1), dims))
    i10 = int(np.ravel_multi_index((1, 0), dims))
    leakage_weight = float(1.0 - m[i01, i01].real - m[i10, i10].real)

    comp_idx = [int(np.ravel_multi_index(occ, dims)) for occ in ((0, 0), (0, 1), (1, 0), (1, 1))]
    block = m[np.ix_(comp_idx, comp_idx)]
    w = float(np.trace(block).real)
    if w <= 1e-15:
        raise InvalidParameterError("no population left in the computational block")
    rails_space = (ModeSpec("q_R1", 2), ModeSpec("q_R2", 2))
    rho_rails = DensityMatrix(
        rails_space, block / w, trace_tol=1e-6, herm_tol=1e-8, psd_tol=1e-6
    )
    return BellOutcome(
        herald=herald,
        p_herald=p_herald,
        rho_rails=rho_rails,
        leakage_weight=leakage_weight,
        optical_pair_model=pair_model,
    )


def bell_fidelity(out: BellOutcome) -> float:
    """Overlap of the heralded microwave two-qubit state with the odd Bell
    state (|01> + |10>)/sqrt(2)."""
    if not out.herald:
        raise InvalidParameterError("bell_fidelity requires a heralded outcome")
    m = out.rho_rails.matrix
    i01 = int(np.ravel_multi_index((0, 1), (2, 2)))
    i10 = int(np.ravel_multi_index((1, 0), (2, 2)))
    v = np.zeros(4, dtype=complex)
    v[i01] = v[i10] = 1.0 / math.sqrt(2.0)
    return float((v.conj() @ m @ v).real)


def _phase_rotate_qubit(rho_q: DensityMatrix, phase: float) -> DensityMatrix:
    n = np.arange(rho_q.dim)
    u = np.diag(np.exp(1j * phase * n))
    return DensityMatrix(
        rho_q.space, u @ rho_q.matrix @ u.conj().T,
        trace_tol=1e-6, herm_tol=1e-8, psd_tol=1e-6,
    )


def _released_populations(
    p: TransducerParams,
    t_hold: float,
    pump_center: float | None,
    swap_start: float | None,
    frame: str,
    dt: float | None,
    read_delay: float = 4.0,
) -> tuple[float, float]:
    """P10 and P11 read after the ramp-away completes for one hold time."""
    s = standard_schedule(
        p, pump_center=pump_center, swap_start=swap_start, t_hold=t_hold,
    )
    s = PulseSchedule(
        G_of_t=s.G_of_t,
        omega_q_of_t=s.omega_q_of_t,
        t_end=s.release + p.T_ramp + read_delay,
        pump_center=s.pump_center,
        pump_window=s.pump_window,
        swap_start=s.swap_start,
        release=s.release,
    )
    traj = evolve(vacuum(p, with_optics=False), p, s, dt, frame=frame, sample_every=None)
    return float(traj.population(1, 0)[-1]), float(traj.population(1, 1)[-1])


def sweep_swap(
    p: TransducerParams,
    s: PulseSchedule,
    search_window: tuple[float, float],
    *,
    grid_resolution: float = 0.25,
    frame: str = "lab",
    dt: float | None = None,
) -> tuple[SwapPlan, list[tuple[float, float, float, float, float]], Trajectory]:
    """Optimize the release time in two stages.

    Stage 1 scans one resonant-hold trajectory (``s`` must keep the qubit
    resonant through the window, see ``swap_search_schedule``) on a
    ``grid_resolution`` release grid: candidates keep P10 above 90% of its
    window-wide maximum and minimize P11. Stage 2 refines by golden section
    on *released* runs (the planned ramp-away applied, populations read just
    after it completes), because the ramp both extends the effective swap by
    about half its duration and partially undoes the dressed P11 residual.

    Returns the plan (with released P10/P11 values), the stage-1 landscape
    rows (t_hold_ns, P10, P11, P01, objective), and the stage-1 trajectory.
    """
    t_lo, t_hi = float(search_window[0]), float(search_window[1])
    if s.swap_start is None:
        raise InvalidParameterError("schedule must carry swap_start metadata")
    resonant_from = s.swap_start + p.T_ramp
    if not t_hi > t_lo:
        raise InfeasibleSwapError(
            f"empty or invalid search window [{t_lo}, {t_hi}]"
        )
    if t_lo < resonant_from:
        raise InfeasibleSwapError(
            f"search window starts before the qubit is resonant (t >= {resonant_from:g})"
        )
    half_swap = math.pi / (2.0 * p.g_qm)
    if t_hi - t_lo < 2.0 * half_swap:
        raise InfeasibleSwapError(
            f"window [{t_lo}, {t_hi}] shorter than two half-swap periods ({2 * half_swap:.1f} ns)"
        )
    if s.t_end < t_hi:
        raise InvalidParameterError("schedule ends before the search window does")
    ws = np.asarray(s.omega_q_of_t(np.linspace(t_lo, t_hi, 64)), dtype=float)
    if np.max(np.abs(ws - p.omega_m)) > 1e-9 * abs(p.omega_m):
        raise InvalidParameterError("qubit is not resonant across the search window")

    traj = evolve(vacuum(p, with_optics=False), p, s, dt, frame=frame, sample_every=1)
    times = traj.times
    p10 = traj.population(1, 0)
    p11 = traj.population(1, 1)
    p01 = traj.population(0, 1)

    in_window = (times >= t_lo - 1e-9) & (times <= t_hi + 1e-9)
    if not np.any(in_window):
        raise InfeasibleSwapError("no trajectory samples inside the search window")
    p10_max = float(p10[in_window].max())
    floor = P10_FLOOR_FRACTION * p10_max

    grid = np.arange(t_lo, t_hi + 1e-9, grid_resolution)
    g_p10 = np.interp(grid, times, p10)
    g_p11 = np.interp(grid, times, p11)
    g_p01 = np.interp(grid, times, p01)
    feasible = g_p10 >= floor
    landscape = []
    for i, t in enumerate(grid):
        obj = g_p11[i] if feasible[i] else math.inf
        landscape.append((float(t - resonant_from), float(g_p10[i]), float(g_p11[i]), float(g_p01[i]), float(obj)))
    if not np.any(feasible):
        raise InfeasibleSwapError(
            f"no release time in [{t_lo}, {t_hi}] keeps P10 >= {P10_FLOOR_FRACTION:.0%} of its maximum"
        )
    best_i = int(np.where(feasible, g_p11, np.inf).argmin())
    hold_res = float(grid[best_i]) - resonant_from

    # stage 2: golden section on released runs; the ramp-away adds roughly
    # T_ramp/2 of effective swap, so the released optimum sits earlier
    released = {}

    def f(h: float) -> float:
        h = round(h, 6)
        if h not in released:
            released[h] = _released_populations(
                p, h, s.pump_center, s.swap_start, frame, dt
            )
        return released[h][1]

    a = max(0.5, hold_res - p.T_ramp - 2.0)
    b = hold_res + 1.0
    c, d_ = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
    fc, fd = f(c), f(d_)
    for _ in range(10):
        if fc < fd:
            b, d_, fd = d_, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d_, fd
            d_ = a + GOLDEN * (b - a)
            fd = f(d_)
    t_hold = round(0.5 * (a + b), 6)
    P10_rel, P11_rel = released.get(t_hold) or _released_populations(
        p, t_hold, s.pump_center, s.swap_start, frame, dt
    )
    p10_rel_max = max(r[0] for r in released.values())
    p10_rel_max = max(p10_rel_max, P10_rel)
    if P10_rel < P10_FLOOR_FRACTION * p10_rel_max:
        # fall back to the feasible stage-1 grid point
        t_hold = hold_res
        P10_rel, P11_rel = _released_populations(
            p, t_hold, s.pump_center, s.swap_start, frame, dt
        )

    plan = SwapPlan(
        t_start=float(s.swap_start),
        t_hold=float(t_hold),
        n_half_swaps=int(round((t_hold + p.T_ramp) / half_swap)),
        P11_residual=float(P11_rel),
        P10_peak=float(max(p10_rel_max, P10_rel)),
        P10_release=float(P10_rel),
        pump_center=s.pump_center,
    )
    return plan, landscape, traj


def optimize_swap(
    p: TransducerParams,
    s: PulseSchedule,
    search_window: tuple[float, float],
    *,
    grid_resolution: float = 0.25,
    frame: str = "lab",
    dt: float | None = None,
) -> SwapPlan:
    plan, _, _ = sweep_swap(
        p, s, search_window, grid_resolution=grid_resolution, frame=frame, dt=dt
    )
    return plan


def single_swap_plan(
    p: TransducerParams,
    s: PulseSchedule,
    *,
    frame: str = "lab",
    dt: float | None = None,
) -> SwapPlan:
    """Baseline plan that releases at the first single-excitation transfer
    maximum, for comparison against the optimized multi-swap plan. Uses the
    same released-readout convention as ``sweep_swap``."""
    if s.swap_start is None:
        raise InvalidParameterError("schedule must carry swap_start metadata")
    half_swap = math.pi / (2.0 * p.g_qm)
    # released maximum sits near half_swap - T_ramp/2; golden-maximize P10
    released = {}

    def g(h: float) -> float:
        h = round(h, 6)
        if h not in released:
            released[h] = _released_populations(
                p, h, s.pump_center, s.swap_start, frame, dt
            )
        return -released[h][0]

    a = max(0.5, half_swap - p.T_ramp - 4.0)
    b = half_swap + 2.0
    c, d_ = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
    fc, fd = g(c), g(d_)
    for _ in range(10):
        if fc < fd:
            b, d_, fd = d_, c, fc
            c = b - GOLDEN * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d_, fd
            d_ = a + GOLDEN * (b - a)
            fd = g(d_)
    t_hold = round(0.5 * (a + b), 6)
    P10_rel, P11_rel = released.get(t_hold) or _released_populations(
        p, t_hold, s.pump_center, s.swap_start, frame, dt
    )
    return SwapPlan(
        t_start=float(s.swap_start),
        t_hold=float(t_hold),
        n_half_swaps=int(round((t_hold + p.T_ramp) / half_swap)),
        P11_residual=float(P11_rel),
        P10_peak=float(P10_rel),
        P10_release=float(P10_rel),
        pump_center=s.pump_center,
    )


def run_bell_cycle(
    p: TransducerParams,
    plan: SwapPlan,
    eta_PC: float,
    *,
    rel_phase: float = 0.0,
    frame: str = "lab",
    dt: float | None = None,
    outcome: str | None = "odd",
    rng: np.random.Generator | None = None,
) -> BellOutcome:
    """Simulate one rail through pump + planned swap, duplicate it onto the
    second rail (phase-rotated by ``rel_phase``), and herald."""
    rho_q1, pair_model = simulate_rail(p, plan, frame=frame, dt=dt)
    rho_q2 = rho_q1 if rel_phase == 0.0 else _phase_rotate_qubit(rho_q1, rel_phase)
    return herald_bell_pair(
        rho_q1, rho_q2, eta_PC, pair_model=pair_model, outcome=outcome, rng=rng
    )


def simulate_rail(
    p: TransducerParams,
    plan: SwapPlan,
    *,
    rel_phase: float = 0.0,
    frame: str = "lab",
    dt: float | None = None,
) -> tuple[DensityMatrix, OpticalPairModel]:
    """One rail through the planned cycle: returns the released rail-qubit
    state and the analytic photon model taken at the end of the pump.

    The integrator's rail state is pair-number diagonal because the optical
    record was eliminated into the pump channel; physically that record is
    what carries the cross-rail coherence of the heralded pair, and it is
    assigned analytically here rather than tracked. The rail qubit is
    therefore returned as the coherent-amplitude proxy sqrt(P_k) e^{i k phi}
    built from the simulated populations, with the drive phase ``rel_phase``.
    """
    s = standard_schedule(
        p, pump_center=plan.pump_center, swap_start=plan.t_start, t_hold=plan.t_hold
    )
    if dt is None:
        from .dynamics import DEFAULT_DT

        dt = DEFAULT_DT[frame]
    state_every = max(1, int(round(1.0 / dt)))
    traj = evolve(vacuum(p, with_optics=False), p, s, dt, frame=frame, state_every=state_every)
    pump_end = s.pump_window[1] if s.pump_window else s.t_end
    pair_model = _optical_model(_pair_record(traj.state_at(pump_end)))
    rho_rail = traj.final_state()
    rho_q = partial_trace(rho_rail, ["q"], trace_tol=1e-4, herm_tol=1e-8, psd_tol=1e-6)
    pops = np.clip(np.diagonal(rho_q.matrix).real, 0.0, None)
    amps = np.sqrt(pops / pops.sum())
    if rel_phase != 0.0:
        amps = amps * np.exp(1j * rel_phase * np.arange(amps.size))
    ket = DensityMatrix(
        rho_q.space, np.outer(amps, np.conj(amps)),
        trace_tol=1e-9, herm_tol=1e-10, psd_tol=1e-9,
    )
    return ket, pair_model


def bell_cycle_ensemble(
    p: TransducerParams,
    plan: SwapPlan,
    eta_PC: float,
    n_cycles: int,
    rng: np.random.Generator,
    *,
    rel_phase: float = 0.0,
    frame: str = "lab",
    dt: float | None = None,
) -> list[BellOutcome]:
    """N seeded cycles sharing one rail simulation (the rails and pump are
    identical across cycles; only the reported parity outcome is sampled)."""
    if n_cycles < 1:
        raise InvalidParameterError("n_cycles must be >= 1")
    rho_q1, pair_model = simulate_rail(p, plan, frame=frame, dt=dt)
    rho_q2 = rho_q1 if rel_phase == 0.0 else _phase_rotate_qubit(rho_q1, rel_phase)
    return [
        herald_bell_pair(rho_q1, rho_q2, eta_PC, pair_model=pair_model, rng=rng)
        for _ in range(n_cycles)
    ]
