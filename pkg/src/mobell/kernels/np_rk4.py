"""Pure-numpy reference kernel for fixed-step density-matrix integration.

Integrates drho/dt = -i (A(t) rho - rho A(t)^dag) + sum_k r_k(t) L_k rho L_k^dag
with classic 4th-order Runge-Kutta. A(t) is affine in precomputed matrices:
A(t_s) = a_base + sum_j a_coeffs[j, s] * a_terms[j], where s indexes the
half-step grid t0, t0+dt/2, t0+dt, ... (2*n_steps + 1 samples). The
anticommutator halves of the dissipators are expected to be folded into the
a_terms as -0.5j * L^dag L with coefficient rows equal to l_rates.

The compiled kernel in ``_cy_rk4`` implements the identical contract.
"""
from __future__ import annotations

import numpy as np


def rk4_lindblad(
    rho0: np.ndarray,
    a_base: np.ndarray,
    a_terms: np.ndarray,
    a_coeffs: np.ndarray,
    l_ops: np.ndarray,
    l_rates: np.ndarray,
    dt: float,
    n_steps: int,
    diag_every: int = 1,
    state_every: int = 0,
):
    """Step the master equation and record diagonals / state snapshots.

    Returns (diag, diag_steps, states, state_steps, rho_final). ``diag`` holds
    the real diagonal of rho at step indices ``diag_steps`` (always including
    step 0 and the final step); ``states`` holds full copies of rho at step
    indices ``state_steps`` when state_every > 0 (otherwise empty).
    """
    d = rho0.shape[0]
    n_a = a_terms.shape[0]
    n_l = l_ops.shape[0]
    if a_coeffs.shape != (n_a, 2 * n_steps + 1):
        raise ValueError("a_coeffs must have shape (n_terms, 2*n_steps + 1)")
    if l_rates.shape != (n_l, 2 * n_steps + 1):
        raise ValueError("l_rates must have shape (n_ops, 2*n_steps + 1)")
    if diag_every < 1:
        raise ValueError("diag_every must be >= 1")

    l_dag = np.conj(np.transpose(l_ops, (0, 2, 1)))
    rho = np.array(rho0, dtype=complex)

    def rhs(r: np.ndarray, s: int) -> np.ndarray:
        a = a_base.copy()
        for j in range(n_a):
            a += a_coeffs[j, s] * a_terms[j]
        g = a @ r
        acc = -1j * (g - g.conj().T)
        for k in range(n_l):
            acc += l_rates[k, s] * ((l_ops[k] @ r) @ l_dag[k])
        return acc

    diag_steps = [s for s in range(0, n_steps + 1, diag_every)]
    if diag_steps[-1] != n_steps:
        diag_steps.append(n_steps)
    if state_every > 0:
        state_steps = [s for s in range(0, n_steps + 1, state_every)]
        if state_steps[-1] != n_steps:
            state_steps.append(n_steps)
    else:
        state_steps = []

    diag = np.empty((len(diag_steps), d), dtype=float)
    states = np.empty((len(state_steps), d, d), dtype=complex)
    di = si = 0
    if diag_steps and diag_steps[0] == 0:
        diag[0] = np.diagonal(rho).real
        di = 1
    if state_steps and state_steps[0] == 0:
        states[0] = rho
        si = 1

    for i in range(n_steps):
        s = 2 * i
        k1 = rhs(rho, s)
        k2 = rhs(rho + (0.5 * dt) * k1, s + 1)
        k3 = rhs(rho + (0.5 * dt) * k2, s + 1)
        k4 = rhs(rho + dt * k3, s + 2)
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        step = i + 1
        if di < len(diag_steps) and diag_steps[di] == step:
            diag[di] = np.diagonal(rho).real
            di += 1
        if si < len(state_steps) and state_steps[si] == step:
            states[si] = rho
            si += 1

    return (
        diag,
        np.asarray(diag_steps, dtype=np.int64),
        states,
        np.asarray(state_steps, dtype=np.int64),
        rho,
    )
