"""Decoders: maximum-likelihood erasure decoding and flooding quaternary
belief propagation, including the hybrid extension over meta-checks.

The BP message schedule, update rules, conversions between binary and
quaternary messages and the hard-decision rule follow the standard
log-domain formulation: check nodes run the binary tanh rule with the
syndrome sign, variable nodes accumulate quaternary LLR vectors
referenced to the identity symbol, and the soft-max operator converts
back to scalar LLRs through the commute/anticommute partition of each
edge label.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import bp_run
from .css import CssCode, PauliVector
from .meta import ExtendedSyndrome, MetaCheck

# F4 inner product over symbols I,X,Y,Z: 1 iff the Paulis anticommute.
F4_INNER = np.zeros((4, 4), dtype=np.uint8)
for _a in range(1, 4):
    for _b in range(1, 4):
        if _a != _b:
            F4_INNER[_a, _b] = 1


def maxs(a, b):
    """Soft maximum log(exp(a) + exp(b)) in its numerically stable form."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return np.maximum(a, b) + np.log1p(np.exp(-np.abs(a - b)))


@dataclass
class BpConfig:
    """Decoder parameters.

    epsilon is the depolarizing prior, p_readout the read-out flip prior
    used only on extended graphs. Degenerate priors (0) are clamped to
    the LLR magnitude bound instead of producing infinities; the default
    bound sits above the point where tanh(L/2) saturates to 1 in double
    precision, so a pinned read-out node is exactly transparent to its
    check.
    """

    epsilon: float
    p_readout: float = 0.0
    max_iters: int = 64
    llr_clamp: float = 40.0

    def __post_init__(self):
        if not 0.0 <= self.epsilon < 0.75:
            raise ValueError("epsilon must lie in [0, 3/4)")
        if not 0.0 <= self.p_readout < 0.5:
            raise ValueError("p_readout must lie in [0, 1/2)")
        if self.max_iters < 1:
            raise ValueError("max_iters must be positive")
        if self.llr_clamp <= 0:
            raise ValueError("llr_clamp must be positive")

    @property
    def prior_f4(self) -> float:
        """Per-symbol prior LLR entry for X, Y, Z relative to I."""
        if self.epsilon <= 0.0:
            return -self.llr_clamp
        val = float(np.log(self.epsilon / (3.0 * (1.0 - self.epsilon))))
        return float(np.clip(val, -self.llr_clamp, self.llr_clamp))

    @property
    def prior_f2(self) -> float:
        """Read-out prior LLR log((1-p)/p), positive when flips are rare."""
        if self.p_readout <= 0.0:
            return self.llr_clamp
        val = float(np.log((1.0 - self.p_readout) / self.p_readout))
        return float(np.clip(val, -self.llr_clamp, self.llr_clamp))


@dataclass
class BpResult:
    estimate: PauliVector
    converged: bool
    iterations_used: int
    readout_estimate_x: np.ndarray | None = None
    readout_estimate_z: np.ndarray | None = None


class TannerGraph:
    """Immutable labeled bipartite graph for a CSS code, optionally
    extended with read-out variable nodes and meta-checks.

    Edges are stored grouped by check node; the first ``n_f4`` variable
    nodes are qubits, any following nodes are binary read-out bits (X
    sector first, then Z).
    """

    def __init__(
        self,
        code: CssCode,
        mx: MetaCheck | None = None,
        mz: MetaCheck | None = None,
    ):
        extended = mx is not None
        if extended != (mz is not None):
            raise ValueError("provide meta-checks for both sectors or neither")
        self.code = code
        self.extended = extended
        n = code.n
        mx_rows = code.hx.rows
        mz_rows = code.hz.rows
        self.n_f4 = n
        self.mx_rows = mx_rows
        self.mz_rows = mz_rows

        hx_bits = code.hx.to_bits()
        hz_bits = code.hz.to_bits()

        edge_vn: list[int] = []
        edge_label: list[int] = []
        cn_ptr: list[int] = [0]

        def add_check(qubits: np.ndarray, label: int, readout_vn: int | None):
            for q in qubits:
                edge_vn.append(int(q))
                edge_label.append(label)
            if readout_vn is not None:
                edge_vn.append(readout_vn)
                edge_label.append(0)
            if cn_ptr[-1] == len(edge_vn):
                raise ValueError("degree-zero check in Tanner graph")
            cn_ptr.append(len(edge_vn))

        ro_x0 = n
        ro_z0 = n + mx_rows
        for i in range(mx_rows):
            add_check(np.nonzero(hx_bits[i])[0], 1, ro_x0 + i if extended else None)
        for i in range(mz_rows):
            add_check(np.nonzero(hz_bits[i])[0], 3, ro_z0 + i if extended else None)
        if extended:
            mx_bits = mx.matrix.to_bits()
            mz_bits = mz.matrix.to_bits()
            if mx.matrix.cols != mx_rows or mz.matrix.cols != mz_rows:
                raise ValueError("meta-check width must match the PCM rows")
            for i in range(mx.matrix.rows):
                add_check(np.nonzero(mx_bits[i])[0] + ro_x0, 0, None)
            for i in range(mz.matrix.rows):
                add_check(np.nonzero(mz_bits[i])[0] + ro_z0, 0, None)
            self.n_vn = n + mx_rows + mz_rows
            self.meta_x_rows = mx.matrix.rows
            self.meta_z_rows = mz.matrix.rows
        else:
            self.n_vn = n
            self.meta_x_rows = 0
            self.meta_z_rows = 0

        self.edge_vn = np.asarray(edge_vn, dtype=np.int32)
        self.edge_label = np.asarray(edge_label, dtype=np.int8)
        self.cn_ptr = np.asarray(cn_ptr, dtype=np.int32)
        self.n_cn = len(cn_ptr) - 1
        order = np.argsort(self.edge_vn, kind="stable")
        self.vn_edges = order.astype(np.int32)
        counts = np.bincount(self.edge_vn, minlength=self.n_vn)
        self.vn_ptr = np.concatenate(
            [[0], np.cumsum(counts)]
        ).astype(np.int32)


class BpDecoder:
    """Flooding BP decoder instance over a fixed graph.

    The graph is shared and immutable; each instance owns its message
    buffers, so concurrent decoding requires one instance per thread.
    """

    def __init__(self, graph: TannerGraph, cfg: BpConfig):
        self.graph = graph
        self.cfg = cfg
        n_edges = graph.edge_vn.shape[0]
        self.msg_v2c = np.zeros(n_edges)
        self.msg_c2v = np.zeros(n_edges)
        self.est = np.zeros(graph.n_vn, dtype=np.int8)

    def decode(self, syndrome: np.ndarray) -> BpResult:
        g = self.graph
        syndrome = np.ascontiguousarray(syndrome, dtype=np.uint8)
        if syndrome.shape != (g.n_cn,):
            raise ValueError("syndrome length must equal the check count")
        converged, iters = bp_run(
            g.edge_vn,
            g.edge_label,
            g.vn_ptr,
            g.vn_edges,
            g.cn_ptr,
            syndrome,
            g.n_f4,
            self.cfg.prior_f4,
            self.cfg.prior_f2,
            self.cfg.max_iters,
            self.cfg.llr_clamp,
            self.msg_v2c,
            self.msg_c2v,
            self.est,
        )
        estimate = PauliVector(self.est[: g.n_f4].astype(np.uint8))
        ro_x = ro_z = None
        if g.extended:
            ro_x = self.est[g.n_f4 : g.n_f4 + g.mx_rows].astype(np.uint8)
            ro_z = self.est[g.n_f4 + g.mx_rows :].astype(np.uint8)
        return BpResult(
            estimate=estimate,
            converged=bool(converged),
            iterations_used=int(iters),
            readout_estimate_x=ro_x,
            readout_estimate_z=ro_z,
        )


def bp_decode(
    code: CssCode, sx: np.ndarray, sz: np.ndarray, cfg: BpConfig
) -> BpResult:
    """Quaternary BP on the plain Tanner graph of a CSS code."""
    graph = TannerGraph(code)
    syndrome = np.concatenate(
        [np.asarray(sx, dtype=np.uint8), np.asarray(sz, dtype=np.uint8)]
    )
    return BpDecoder(graph, cfg).decode(syndrome)


def bp_decode_extended(
    code: CssCode,
    mx: MetaCheck,
    mz: MetaCheck,
    ext_x: ExtendedSyndrome,
    ext_z: ExtendedSyndrome,
    cfg: BpConfig,
) -> BpResult:
    """Hybrid BP on the extended graph with read-out variable nodes.

    Binary read-out nodes carry the prior log((1-p)/p) and the plain
    binary update rule; meta-check rows are purely binary checks on them.
    Convergence requires every extended check, meta-checks included.
    """
    graph = TannerGraph(code, mx, mz)
    syndrome = np.concatenate(
        [ext_x.s_prime, ext_z.s_prime, ext_x.sigma, ext_z.sigma]
    ).astype(np.uint8)
    return BpDecoder(graph, cfg).decode(syndrome)


def decode_erasure(
    code: CssCode,
    erased: set[int] | np.ndarray,
    sx: np.ndarray,
    sz: np.ndarray,
) -> PauliVector | None:
    """Maximum-likelihood decoding on the erasure channel.

    Finds any error supported on the erased positions with the observed
    syndrome by solving the X and Z sectors independently on the erased
    columns; free variables are zero, so the output is deterministic.
    Returns None only when the syndrome is inconsistent with the erasure
    (a precondition violation).
    """
    idx = np.asarray(sorted(erased), dtype=np.int64)
    vx = np.zeros(code.n, dtype=np.uint8)
    vz = np.zeros(code.n, dtype=np.uint8)
    sx = np.asarray(sx, dtype=np.uint8)
    sz = np.asarray(sz, dtype=np.uint8)
    if idx.size == 0:
        if sx.any() or sz.any():
            return None
        return PauliVector.identity(code.n)
    from ._kernels import solve_bits

    x_part = solve_bits(np.ascontiguousarray(code.hz.to_bits()[:, idx]), sz)
    if x_part is None:
        return None
    z_part = solve_bits(np.ascontiguousarray(code.hx.to_bits()[:, idx]), sx)
    if z_part is None:
        return None
    vx[idx] = x_part
    vz[idx] = z_part
    return PauliVector.from_xz(vx, vz)
