# cython: language_level=3
"""Compiled kernels: packed GF(2) elimination and the BP message loop."""

import numpy as np

cimport numpy as cnp
from libc.math cimport atanh, exp, fabs, log, log1p, tanh
from libc.stdlib cimport free, malloc

cnp.import_array()

BACKEND_NAME = "cython"

cdef double _ATANH_LIM = 1.0 - 1e-15

# Anticommutation of Pauli symbols indexed I,X,Y,Z.
cdef unsigned char[16] _ACOM_FLAT
for _a in range(1, 4):
    for _b in range(1, 4):
        if _a != _b:
            _ACOM_FLAT[4 * _a + _b] = 1

# Edge label -> the two non-identity symbols it anticommutes with.
cdef long[4] _ANTI_A_C = [0, 2, 1, 1]
cdef long[4] _ANTI_B_C = [0, 3, 3, 2]


def rref_in_place(cnp.uint64_t[:, ::1] work, int n_pivot_cols):
    """Reduced row echelon form of packed rows, in place.

    Same contract as the pure backend: pivots over the first
    ``n_pivot_cols`` bit columns, full-width row XOR, deterministic
    leftmost-column/topmost-row pivoting. Returns pivot columns.
    """
    cdef Py_ssize_t m = work.shape[0]
    cdef Py_ssize_t nw = work.shape[1]
    cdef Py_ssize_t r = 0, c, w, i, j, p
    cdef int b
    cdef cnp.uint64_t bit, tmp
    pivots = []
    for c in range(n_pivot_cols):
        if r == m:
            break
        w = c >> 6
        b = c & 63
        bit = (<cnp.uint64_t> 1) << b
        p = -1
        for i in range(r, m):
            if work[i, w] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(nw):
                tmp = work[r, j]
                work[r, j] = work[p, j]
                work[p, j] = tmp
        for i in range(m):
            if i != r and (work[i, w] & bit):
                for j in range(nw):
                    work[i, j] ^= work[r, j]
        pivots.append(c)
        r += 1
    return pivots


def solve_bits(cnp.uint8_t[:, ::1] mat_bits, cnp.uint8_t[::1] rhs_bits):
    """Solve ``M x = s`` over GF(2) with free variables set to zero."""
    cdef Py_ssize_t m = mat_bits.shape[0]
    cdef Py_ssize_t k = mat_bits.shape[1]
    cdef Py_ssize_t nw = ((k + 1) + 63) >> 6
    cdef Py_ssize_t i, j, c, w, p, r
    cdef int b
    cdef cnp.uint64_t bit, tmp
    work_arr = np.zeros((m, nw), dtype=np.uint64)
    cdef cnp.uint64_t[:, ::1] work = work_arr
    for i in range(m):
        for j in range(k):
            if mat_bits[i, j]:
                work[i, j >> 6] |= (<cnp.uint64_t> 1) << (j & 63)
        if rhs_bits[i]:
            work[i, k >> 6] |= (<cnp.uint64_t> 1) << (k & 63)

    cdef Py_ssize_t rank = 0
    x_arr = np.zeros(k, dtype=np.uint8)
    cdef cnp.uint8_t[::1] x = x_arr
    pivots = []
    r = 0
    for c in range(k):
        if r == m:
            break
        w = c >> 6
        b = c & 63
        bit = (<cnp.uint64_t> 1) << b
        p = -1
        for i in range(r, m):
            if work[i, w] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(nw):
                tmp = work[r, j]
                work[r, j] = work[p, j]
                work[p, j] = tmp
        for i in range(m):
            if i != r and (work[i, w] & bit):
                for j in range(nw):
                    work[i, j] ^= work[r, j]
        pivots.append(c)
        r += 1
    rank = r
    cdef Py_ssize_t rw = k >> 6
    cdef int rb = k & 63
    cdef cnp.uint64_t rbit = (<cnp.uint64_t> 1) << rb
    for i in range(rank, m):
        if work[i, rw] & rbit:
            return None
    for r in range(rank):
        if work[r, rw] & rbit:
            x[<Py_ssize_t> pivots[r]] = 1
    return x_arr


cdef inline double _maxs(double a, double b) noexcept nogil:
    if a > b:
        return a + log1p(exp(b - a))
    return b + log1p(exp(a - b))


cdef inline double _clampd(double v, double lim) noexcept nogil:
    if v > lim:
        return lim
    if v < -lim:
        return -lim
    return v


def bp_run(
    cnp.int32_t[::1] edge_vn,
    cnp.int8_t[::1] edge_label,
    cnp.int32_t[::1] vn_ptr,
    cnp.int32_t[::1] vn_edges,
    cnp.int32_t[::1] cn_ptr,
    cnp.uint8_t[::1] syndrome,
    int n_f4,
    double prior_f4,
    double prior_f2,
    int max_iters,
    double clamp,
    double[::1] msg_v2c,
    double[::1] msg_c2v,
    cnp.int8_t[::1] est,
):
    """Flooding quaternary/hybrid BP; same contract as the pure backend."""
    cdef Py_ssize_t n_edges = edge_vn.shape[0]
    cdef Py_ssize_t n_cn = cn_ptr.shape[0] - 1
    cdef Py_ssize_t n_vn = vn_ptr.shape[0] - 1
    cdef Py_ssize_t i, j, e, lo, hi, d, vmax
    cdef int it, lab, ca, cb, s_hat, best
    cdef double t0, t1, t2, t3, m, best_v, acc, pr, L0
    cdef bint converged = False
    cdef int iters = 0

    vmax = 0
    for i in range(n_cn):
        d = cn_ptr[i + 1] - cn_ptr[i]
        if d > vmax:
            vmax = d
    cdef double * pre = <double *> malloc(vmax * sizeof(double))
    cdef double * suf = <double *> malloc(vmax * sizeof(double))
    cdef double * th = <double *> malloc(vmax * sizeof(double))
    if pre == NULL or suf == NULL or th == NULL:
        if pre != NULL:
            free(pre)
        if suf != NULL:
            free(suf)
        if th != NULL:
            free(th)
        raise MemoryError()

    L0 = _maxs(0.0, prior_f4) - (prior_f4 + log(2.0))
    for e in range(n_edges):
        if edge_vn[e] < n_f4:
            msg_v2c[e] = L0
        else:
            msg_v2c[e] = prior_f2

    try:
        with nogil:
            for it in range(1, max_iters + 1):
                iters = it
                # Check-node pass: exclusive tanh products with syndrome sign.
                for i in range(n_cn):
                    lo = cn_ptr[i]
                    hi = cn_ptr[i + 1]
                    d = hi - lo
                    for j in range(d):
                        th[j] = tanh(0.5 * _clampd(msg_v2c[lo + j], clamp))
                    pre[0] = 1.0
                    for j in range(1, d):
                        pre[j] = pre[j - 1] * th[j - 1]
                    suf[d - 1] = 1.0
                    for j in range(d - 2, -1, -1):
                        suf[j] = suf[j + 1] * th[j + 1]
                    for j in range(d):
                        acc = _clampd(pre[j] * suf[j], _ATANH_LIM)
                        m = 2.0 * atanh(acc)
                        if syndrome[i]:
                            m = -m
                        msg_c2v[lo + j] = m

                # Variable-node pass: totals, hard decision, syndrome check.
                for i in range(n_vn):
                    lo = vn_ptr[i]
                    hi = vn_ptr[i + 1]
                    if i < n_f4:
                        t1 = prior_f4
                        t2 = prior_f4
                        t3 = prior_f4
                        for j in range(lo, hi):
                            e = vn_edges[j]
                            lab = edge_label[e]
                            m = -msg_c2v[e]
                            if lab == 1:
                                t2 += m
                                t3 += m
                            elif lab == 2:
                                t1 += m
                                t3 += m
                            else:
                                t1 += m
                                t2 += m
                        best = 0
                        best_v = 0.0
                        if t1 > best_v:
                            best = 1
                            best_v = t1
                        if t2 > best_v:
                            best = 2
                            best_v = t2
                        if t3 > best_v:
                            best = 3
                            best_v = t3
                        est[i] = best
                        # Stash totals for the exclusion step below.
                        # Outgoing messages are recomputed per edge.
                        for j in range(lo, hi):
                            e = vn_edges[j]
                            lab = edge_label[e]
                            m = msg_c2v[e]
                            if lab == 1:
                                t0 = _maxs(0.0, t1)
                                acc = _maxs(t2 + m, t3 + m)
                            elif lab == 2:
                                t0 = _maxs(0.0, t2)
                                acc = _maxs(t1 + m, t3 + m)
                            else:
                                t0 = _maxs(0.0, t3)
                                acc = _maxs(t1 + m, t2 + m)
                            msg_v2c[e] = t0 - acc
                    else:
                        pr = prior_f2
                        for j in range(lo, hi):
                            pr += msg_c2v[vn_edges[j]]
                        est[i] = 1 if pr < 0.0 else 0
                        for j in range(lo, hi):
                            e = vn_edges[j]
                            msg_v2c[e] = pr - msg_c2v[e]

                converged = True
                for i in range(n_cn):
                    s_hat = 0
                    for j in range(cn_ptr[i], cn_ptr[i + 1]):
                        e = j
                        if edge_vn[e] < n_f4:
                            s_hat ^= _ACOM_FLAT[4 * edge_label[e] + est[edge_vn[e]]]
                        else:
                            s_hat ^= est[edge_vn[e]]
                    if s_hat != syndrome[i]:
                        converged = False
                        break
                if converged:
                    break
    finally:
        free(pre)
        free(suf)
        free(th)
    return converged, iters
