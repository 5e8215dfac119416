# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot-loop kernel for fixed-step density-matrix integration.

Same contract as ``np_rk4.rk4_lindblad``; the whole step loop runs without
the GIL with hand-rolled complex matrix products (dimensions stay <= ~40,
well below the point where BLAS dispatch would win).
"""
import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef double complex dc

cdef dc MINUS_I = -1j


cdef void _matmul(Py_ssize_t d, const dc* a, const dc* b, dc* out) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef dc aik
    for i in range(d):
        for j in range(d):
            out[i * d + j] = 0
        for k in range(d):
            aik = a[i * d + k]
            for j in range(d):
                out[i * d + j] = out[i * d + j] + aik * b[k * d + j]


cdef void _rhs(Py_ssize_t d, Py_ssize_t n_a, Py_ssize_t n_l, Py_ssize_t s,
               const dc* a_base, const dc* a_terms, const double* a_coeffs,
               const dc* l_ops, const dc* l_dag, const double* l_rates,
               Py_ssize_t n_half, const dc* rho,
               dc* wa, dc* wb, dc* wc, dc* out) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef double c
    cdef dc g
    # A = a_base + sum_j coeff[j, s] * a_terms[j]
    for i in range(d * d):
        wa[i] = a_base[i]
    for j in range(n_a):
        c = a_coeffs[j * n_half + s]
        if c != 0.0:
            for i in range(d * d):
                wa[i] = wa[i] + c * a_terms[j * d * d + i]
    # out = -i (A rho - (A rho)^dag)   [rho Hermitian]
    _matmul(d, wa, rho, wb)
    for i in range(d):
        for j in range(d):
            g = wb[i * d + j] - (wb[j * d + i].conjugate())
            out[i * d + j] = MINUS_I * g
    # out += sum_k r_k L_k rho L_k^dag
    for k in range(n_l):
        c = l_rates[k * n_half + s]
        if c == 0.0:
            continue
        _matmul(d, l_ops + k * d * d, rho, wb)
        _matmul(d, wb, l_dag + k * d * d, wc)
        for i in range(d * d):
            out[i] = out[i] + c * wc[i]


def rk4_lindblad(rho0, a_base, a_terms, a_coeffs, l_ops, l_rates,
                 double dt, Py_ssize_t n_steps,
                 Py_ssize_t diag_every=1, Py_ssize_t state_every=0):
    cdef Py_ssize_t d = rho0.shape[0]

    rho_arr = np.array(rho0, dtype=np.complex128, order="C")
    a_base_arr = np.ascontiguousarray(a_base, dtype=np.complex128)
    a_terms_arr = np.ascontiguousarray(a_terms, dtype=np.complex128)
    a_coeffs_arr = np.ascontiguousarray(a_coeffs, dtype=np.float64)
    l_ops_arr = np.ascontiguousarray(l_ops, dtype=np.complex128)
    l_rates_arr = np.ascontiguousarray(l_rates, dtype=np.float64)
    l_dag_arr = np.ascontiguousarray(
        np.conj(np.transpose(l_ops_arr, (0, 2, 1))), dtype=np.complex128
    )

    cdef Py_ssize_t n_a = a_terms_arr.shape[0]
    cdef Py_ssize_t n_l = l_ops_arr.shape[0]
    cdef Py_ssize_t n_half = 2 * n_steps + 1
    if a_coeffs_arr.shape[0] != n_a or a_coeffs_arr.shape[1] != n_half:
        raise ValueError("a_coeffs must have shape (n_terms, 2*n_steps + 1)")
    if l_rates_arr.shape[0] != n_l or l_rates_arr.shape[1] != n_half:
        raise ValueError("l_rates must have shape (n_ops, 2*n_steps + 1)")
    if diag_every < 1:
        raise ValueError("diag_every must be >= 1")

    diag_steps_list = list(range(0, n_steps + 1, diag_every))
    if diag_steps_list[len(diag_steps_list) - 1] != n_steps:
        diag_steps_list.append(n_steps)
    if state_every > 0:
        state_steps_list = list(range(0, n_steps + 1, state_every))
        if state_steps_list[len(state_steps_list) - 1] != n_steps:
            state_steps_list.append(n_steps)
    else:
        state_steps_list = []

    diag_steps = np.asarray(diag_steps_list, dtype=np.int64)
    state_steps = np.asarray(state_steps_list, dtype=np.int64)
    diag = np.empty((diag_steps.shape[0], d), dtype=np.float64)
    states = np.empty((state_steps.shape[0], d, d), dtype=np.complex128)

    scratch = np.empty((9, d, d), dtype=np.complex128)

    cdef dc[:, :, ::1] sc = scratch
    cdef dc[:, ::1] rho_mv = rho_arr
    cdef dc[:, ::1] ab_mv = a_base_arr
    cdef dc[:, :, ::1] at_mv = a_terms_arr
    cdef double[:, ::1] ac_mv = a_coeffs_arr
    cdef dc[:, :, ::1] lo_mv = l_ops_arr
    cdef dc[:, :, ::1] ld_mv = l_dag_arr
    cdef double[:, ::1] lr_mv = l_rates_arr
    cdef double[:, ::1] diag_mv = diag
    cdef dc[:, :, ::1] states_mv = states
    cdef cnp.int64_t[::1] dsteps_mv = diag_steps
    cdef cnp.int64_t[::1] ssteps_mv = state_steps

    cdef dc* rho_p = &rho_mv[0, 0]
    cdef dc* wa = &sc[0, 0, 0]
    cdef dc* wb = &sc[1, 0, 0]
    cdef dc* wc = &sc[2, 0, 0]
    cdef dc* k1 = &sc[3, 0, 0]
    cdef dc* k2 = &sc[4, 0, 0]
    cdef dc* k3 = &sc[5, 0, 0]
    cdef dc* k4 = &sc[6, 0, 0]
    cdef dc* rt = &sc[7, 0, 0]
    cdef const dc* ab_p = &ab_mv[0, 0]
    cdef const dc* at_p = NULL
    cdef const double* ac_p = NULL
    cdef const dc* lo_p = NULL
    cdef const dc* ld_p = NULL
    cdef const double* lr_p = NULL
    if n_a > 0:
        at_p = &at_mv[0, 0, 0]
        ac_p = &ac_mv[0, 0]
    if n_l > 0:
        lo_p = &lo_mv[0, 0, 0]
        ld_p = &ld_mv[0, 0, 0]
        lr_p = &lr_mv[0, 0]

    cdef Py_ssize_t n_diag = diag_steps.shape[0]
    cdef Py_ssize_t n_state = state_steps.shape[0]
    cdef Py_ssize_t di = 0, si = 0
    cdef Py_ssize_t i, j, s, step
    cdef double h6 = dt / 6.0, h2 = dt / 2.0

    with nogil:
        if n_diag > 0 and dsteps_mv[0] == 0:
            for j in range(d):
                diag_mv[0, j] = rho_p[j * d + j].real
            di = 1
        if n_state > 0 and ssteps_mv[0] == 0:
            for j in range(d * d):
                (&states_mv[0, 0, 0])[j] = rho_p[j]
            si = 1
        for i in range(n_steps):
            s = 2 * i
            _rhs(d, n_a, n_l, s, ab_p, at_p, ac_p, lo_p, ld_p, lr_p, n_half,
                 rho_p, wa, wb, wc, k1)
            for j in range(d * d):
                rt[j] = rho_p[j] + h2 * k1[j]
            _rhs(d, n_a, n_l, s + 1, ab_p, at_p, ac_p, lo_p, ld_p, lr_p, n_half,
                 rt, wa, wb, wc, k2)
            for j in range(d * d):
                rt[j] = rho_p[j] + h2 * k2[j]
            _rhs(d, n_a, n_l, s + 1, ab_p, at_p, ac_p, lo_p, ld_p, lr_p, n_half,
                 rt, wa, wb, wc, k3)
            for j in range(d * d):
                rt[j] = rho_p[j] + dt * k3[j]
            _rhs(d, n_a, n_l, s + 2, ab_p, at_p, ac_p, lo_p, ld_p, lr_p, n_half,
                 rt, wa, wb, wc, k4)
            for j in range(d * d):
                rho_p[j] = rho_p[j] + h6 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j])
            step = i + 1
            if di < n_diag and dsteps_mv[di] == step:
                for j in range(d):
                    diag_mv[di, j] = rho_p[j * d + j].real
                di += 1
            if si < n_state and ssteps_mv[si] == step:
                for j in range(d * d):
                    (&states_mv[si, 0, 0])[j] = rho_p[j]
                si += 1

    return diag, diag_steps, states, state_steps, rho_arr
