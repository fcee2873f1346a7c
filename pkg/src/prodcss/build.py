"""Product constructions: classical product / tensor-product PCMs, the
asymmetric and symmetric CSS products, the D-fold generalization, and the
single-parity-check family SPC(D,s) with its closed-form parameter
predictions and explicit logical witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bitlin
from .bitlin import BitMatrix, kron, stack
from .css import CssCode, new_css


def classical_product_pcm(h1: BitMatrix, h2: BitMatrix) -> BitMatrix:
    """Parity-check matrix of the 2-fold classical product code.

    Row blocks are (h1 x I) on top of (I x h2); the kernel is the tensor
    product of the component code spaces.
    """
    return stack(
        [
            kron(h1, BitMatrix.identity(h2.cols)),
            kron(BitMatrix.identity(h1.cols), h2),
        ]
    )


def tensor_product_pcm(h1: BitMatrix, h2: BitMatrix) -> BitMatrix:
    """Parity-check matrix of the classical tensor product code (h1 x h2)."""
    return kron(h1, h2)


def asymmetric_product(c1: CssCode, c2: CssCode) -> CssCode:
    """Asymmetric 2-fold CSS product.

    X checks form a classical product of the component X PCMs; Z checks
    are the tensor product of the component Z PCMs. More protection
    against Z errors than X errors when components are symmetric.
    """
    hx = classical_product_pcm(c1.hx, c2.hx)
    hz = tensor_product_pcm(c1.hz, c2.hz)
    return new_css(hx, hz)


def symmetric_product(c1: CssCode, c2: CssCode, c3: CssCode, c4: CssCode) -> CssCode:
    """Symmetric 2-fold CSS product of four component codes.

    Both X and Z checks are classical product codes of tensor-product
    components; equal to the D-fold construction at D = 2 with components
    in the order (1, 2, 3, 4).
    """
    return dfold_product([c1, c2, c3, c4], 2)


def dfold_product(components: list[CssCode], d: int) -> CssCode:
    """Symmetric D-fold CSS product of D^2 component codes.

    X block j (0-based) applies the component X PCMs at positions
    jD+1 .. (j+1)D (1-based) and identities elsewhere; Z block j applies
    the component Z PCMs at positions congruent to j+1 modulo D.
    """
    if d < 2:
        raise ValueError("D must be at least 2")
    if len(components) != d * d:
        raise ValueError(f"expected {d * d} components, got {len(components)}")

    def tensor_row(factors: list[BitMatrix]) -> BitMatrix:
        out = factors[0]
        for f in factors[1:]:
            out = kron(out, f)
        return out

    x_blocks = []
    z_blocks = []
    for j in range(d):
        xf = []
        zf = []
        for ell in range(1, d * d + 1):
            comp = components[ell - 1]
            if j * d + 1 <= ell <= (j + 1) * d:
                xf.append(comp.hx)
            else:
                xf.append(BitMatrix.identity(comp.n))
            if (ell - 1) % d == j:
                zf.append(comp.hz)
            else:
                zf.append(BitMatrix.identity(comp.n))
        x_blocks.append(tensor_row(xf))
        z_blocks.append(tensor_row(zf))
    return new_css(stack(x_blocks), stack(z_blocks))


@dataclass(frozen=True)
class SpcParams:
    """Parameters of the single-parity-check D-fold product family."""

    d: int
    s: int = 1

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("D must be at least 2")
        if self.s < 1:
            raise ValueError("s must be at least 1")


def _spc_diagonal_positions(d: int) -> set[int]:
    """1-based component positions carrying the length-2s block."""
    return {(i - 1) * d + i for i in range(1, d + 1)}


def _spc_components(params: SpcParams) -> list[CssCode]:
    diag = _spc_diagonal_positions(params.d)
    comps = []
    for ell in range(1, params.d**2 + 1):
        width = 2 * params.s if ell in diag else 2
        h = BitMatrix.from_bits(np.ones((1, width), dtype=np.uint8))
        comps.append(new_css(h, h))
    return comps


def spc(params: SpcParams) -> CssCode:
    """The SPC(D,s) code: D-fold product of single-parity-check components,
    with the wider length-2s component on the diagonal positions."""
    return dfold_product(_spc_components(params), params.d)


@dataclass
class PredictedStats:
    """Closed-form SPC(D,s) parameters for cross-validation."""

    n: int
    k: int
    mx: int
    mz: int
    meta_x: int
    meta_z: int
    wr_x: int
    wr_z: int
    wc_x: int
    wc_z: int
    delta_x: int
    delta_z: int


def predict_spc_stats(params: SpcParams) -> PredictedStats:
    d, s = params.d, params.s
    blk = s * 2**d
    n = blk**d
    m = d * blk ** (d - 1)
    meta = m + (blk - 1) ** d - n
    k = 2 * (blk - 1) ** d - n
    dist = 2**d
    return PredictedStats(
        n=n,
        k=k,
        mx=m,
        mz=m,
        meta_x=meta,
        meta_z=meta,
        wr_x=blk,
        wr_z=blk,
        wc_x=d,
        wc_z=d,
        delta_x=dist,
        delta_z=dist,
    )


def spc_logical_witnesses(params: SpcParams) -> tuple[np.ndarray, np.ndarray]:
    """Weight-2^D logical witness w and its dual certificate v.

    Both satisfy all SPC(D,s) checks; their inner product is 1, which
    certifies that w lies outside both row spans (so w, read as a pure X
    or pure Z error, is an undetected logical error).
    """
    d, s = params.d, params.s
    diag = _spc_diagonal_positions(d)
    w = np.ones(1, dtype=np.uint8)
    v = np.ones(1, dtype=np.uint8)
    for ell in range(1, d * d + 1):
        if ell in diag:
            a = np.zeros(2 * s, dtype=np.uint8)
            a[0] = a[1] = 1
            b = np.zeros(2 * s, dtype=np.uint8)
            b[0] = 1
        else:
            a = np.array([1, 0], dtype=np.uint8)
            b = np.array([1, 1], dtype=np.uint8)
        w = np.kron(w, a)
        v = np.kron(v, b)
    return w, v


def difference_matrix(d: int) -> BitMatrix:
    """(d-1) x d matrix with rows e_i + e_{i+1}; the PCM of the repetition
    code's dual description used by the generalized Shor components."""
    bits = np.zeros((d - 1, d), dtype=np.uint8)
    for i in range(d - 1):
        bits[i, i] = bits[i, i + 1] = 1
    return BitMatrix.from_bits(bits)


def shor_code(d: int = 3) -> CssCode:
    """Generalized Shor code on d^2 qubits (d = 3 is the 9-qubit code)."""
    if d < 2:
        raise ValueError("d must be at least 2")
    hd = difference_matrix(d)
    ones_row = BitMatrix.from_bits(np.ones((1, d), dtype=np.uint8))
    hx = kron(hd, ones_row)
    hz = kron(BitMatrix.identity(d), hd)
    return new_css(hx, hz)


def shor_asymmetric_witness(d: int = 3) -> tuple[np.ndarray, np.ndarray]:
    """Weight-2d Z-type logical witness for the asymmetric Shor(d) product,
    with the kernel certificate u (u is Z-check-orthogonal and u^T v = 1)."""
    e1 = np.zeros(d, dtype=np.uint8)
    e1[0] = 1
    e12 = np.zeros(d, dtype=np.uint8)
    e12[0] = e12[1] = 1
    ones = np.ones(d, dtype=np.uint8)
    v = np.kron(np.kron(e1, e12), np.kron(ones, e1))
    u = np.kron(np.kron(e1, e1), np.kron(e1, ones))
    return v, u
