"""Pure NumPy implementations of the hot kernels.

Functionally equivalent to the compiled extension in ``_core``; used as the
import-time fallback and for cross-checking. Message-passing arithmetic is
arranged so accumulation orders match the compiled loops.
"""

from __future__ import annotations

import numpy as np

from ._bitpack import pack_rows, words_per_row

BACKEND_NAME = "pure"

_ATANH_LIM = 1.0 - 1e-15

# Anticommutation of Pauli symbols indexed I,X,Y,Z: 1 iff both non-identity
# and distinct.
_ACOM = np.zeros((4, 4), dtype=np.uint8)
for _a in range(1, 4):
    for _b in range(1, 4):
        if _a != _b:
            _ACOM[_a, _b] = 1

# Edge label -> the two non-identity symbols it anticommutes with.
_ANTI_A = np.array([0, 2, 1, 1], dtype=np.int64)
_ANTI_B = np.array([0, 3, 3, 2], dtype=np.int64)


def rref_in_place(work: np.ndarray, n_pivot_cols: int) -> list[int]:
    """Reduced row echelon form of packed rows, in place.

    Pivots are searched over the first ``n_pivot_cols`` bit columns only
    (leftmost column first, topmost available row), but row XORs apply to
    the full word width, so callers may append augmented columns.

    Returns the pivot column indices in ascending order.
    """
    m = work.shape[0]
    pivots: list[int] = []
    r = 0
    one = np.uint64(1)
    for c in range(n_pivot_cols):
        if r == m:
            break
        w, b = c >> 6, np.uint64(c & 63)
        col = (work[r:, w] >> b) & one
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
        full = (work[:, w] >> b) & one
        full[r] = 0
        rows = np.nonzero(full)[0]
        if rows.size:
            work[rows] ^= work[r]
        pivots.append(c)
        r += 1
    return pivots


def solve_bits(mat_bits: np.ndarray, rhs_bits: np.ndarray) -> np.ndarray | None:
    """Solve ``M x = s`` over GF(2) with free variables set to zero.

    Returns the solution as a uint8 vector, or None when inconsistent.
    """
    mat_bits = np.asarray(mat_bits, dtype=np.uint8)
    rhs_bits = np.asarray(rhs_bits, dtype=np.uint8)
    m, k = mat_bits.shape
    aug = np.empty((m, k + 1), dtype=np.uint8)
    aug[:, :k] = mat_bits
    aug[:, k] = rhs_bits
    work = pack_rows(aug)
    pivots = rref_in_place(work, k)
    rank = len(pivots)
    rw, rb = k >> 6, np.uint64(k & 63)
    rhs_col = (work[:, rw] >> rb) & np.uint64(1)
    if np.any(rhs_col[rank:]):
        return None
    x = np.zeros(k, dtype=np.uint8)
    for r, c in enumerate(pivots):
        x[c] = rhs_col[r]
    return x


def _maxs(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.maximum(a, b) + np.log1p(np.exp(-np.abs(a - b)))


def bp_run(
    edge_vn: np.ndarray,
    edge_label: np.ndarray,
    vn_ptr: np.ndarray,
    vn_edges: np.ndarray,
    cn_ptr: np.ndarray,
    syndrome: np.ndarray,
    n_f4: int,
    prior_f4: float,
    prior_f2: float,
    max_iters: int,
    clamp: float,
    msg_v2c: np.ndarray,
    msg_c2v: np.ndarray,
    est: np.ndarray,
) -> tuple[bool, int]:
    """Flooding quaternary/hybrid BP on a labeled Tanner graph.

    Edges must be stored grouped by check node (cn_ptr indexes the edge
    arrays directly). Variable nodes below ``n_f4`` carry Pauli messages,
    the rest are binary readout nodes. Writes the hard decision into
    ``est`` and returns (converged, iterations_used).
    """
    n_edges = edge_vn.shape[0]
    n_vn = vn_ptr.shape[0] - 1

    # Edge partitions in vn-grouped order (accumulation order matters for
    # exact reproducibility against the compiled kernel).
    vedges = vn_edges
    v_vn = edge_vn[vedges]
    v_is_f4 = v_vn < n_f4
    e4 = vedges[v_is_f4]
    e2 = vedges[~v_is_f4]
    vn4 = edge_vn[e4]
    lab4 = edge_label[e4].astype(np.int64)
    ca4 = _ANTI_A[lab4]
    cb4 = _ANTI_B[lab4]
    vn2 = edge_vn[e2] - n_f4
    n_f2 = n_vn - n_f4

    # Check degrees grouped for vectorized prefix/suffix products.
    degrees = np.diff(cn_ptr)
    groups = []
    for d in np.unique(degrees):
        cns = np.nonzero(degrees == d)[0]
        idx = cn_ptr[cns][:, None] + np.arange(d)[None, :]
        groups.append((cns, idx))

    sign = np.where(syndrome.astype(bool), -1.0, 1.0)

    # Initial variable-to-check messages: the prior as a scalar LLR.
    init_f4 = _maxs(np.float64(0.0), np.float64(prior_f4)) - (
        prior_f4 + np.log(2.0)
    )
    is_f4_edge = edge_vn < n_f4
    msg_v2c[is_f4_edge] = init_f4
    msg_v2c[~is_f4_edge] = prior_f2

    totals4 = np.zeros((n_f4, 4))
    totals2 = np.zeros(n_f2)
    converged = False
    iters = 0

    for it in range(1, max_iters + 1):
        iters = it
        # Check-node pass.
        th = np.tanh(0.5 * np.clip(msg_v2c, -clamp, clamp))
        for cns, idx in groups:
            t = th[idx]
            d = t.shape[1]
            pre = np.ones_like(t)
            suf = np.ones_like(t)
            if d > 1:
                np.cumprod(t[:, :-1], axis=1, out=pre[:, 1:])
                suf[:, -2::-1] = np.cumprod(t[:, :0:-1], axis=1)
            prod = np.clip(pre * suf, -_ATANH_LIM, _ATANH_LIM)
            msg_c2v[idx.ravel()] = (
                sign[cns][:, None] * 2.0 * np.arctanh(prod)
            ).ravel()

        # Variable-node pass: totals include every incoming message.
        totals4[:] = 0.0
        totals4[:, 1:] = prior_f4
        m4 = msg_c2v[e4]
        np.add.at(totals4, (vn4, ca4), -m4)
        np.add.at(totals4, (vn4, cb4), -m4)
        est[:n_f4] = np.argmax(totals4, axis=1)

        if n_f2:
            totals2[:] = prior_f2
            np.add.at(totals2, vn2, msg_c2v[e2])
            est[n_f4:] = (totals2 < 0.0).astype(np.int8)

        # Outgoing messages exclude the edge's own contribution.
        t_lab = totals4[vn4, lab4]
        t_a = totals4[vn4, ca4] + m4
        t_b = totals4[vn4, cb4] + m4
        msg_v2c[e4] = _maxs(np.float64(0.0), t_lab) - _maxs(t_a, t_b)
        if n_f2:
            msg_v2c[e2] = totals2[vn2] - msg_c2v[e2]

        # Convergence: hard decision reproduces the input syndrome.
        contrib = np.empty(n_edges, dtype=np.uint8)
        f4_mask = is_f4_edge
        contrib[f4_mask] = _ACOM[
            edge_label[f4_mask], est[edge_vn[f4_mask]]
        ]
        contrib[~f4_mask] = est[edge_vn[~f4_mask]].view(np.uint8)
        s_hat = np.bitwise_xor.reduceat(contrib, cn_ptr[:-1])
        s_hat[degrees == 0] = 0
        if np.array_equal(s_hat, syndrome):
            converged = True
            break

    return converged, iters
