"""Meta-check matrices, the extended parity-check layout for decoding
under syndrome read-out errors, and measurement-overhead accounting.

A meta-check matrix M of a PCM H satisfies ker(M) = rowspan-of-H read as
a column space: M annihilates every valid syndrome, so M applied to a
measured syndrome depends only on the read-out error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bitlin
from .bitlin import BitMatrix, hstack, stack
from .css import CssCode


@dataclass
class MetaCheck:
    """Meta-check matrix with its parent PCM dimensions.

    Invariant: matrix @ H == 0 and ker(matrix) has dimension
    parent_rank, i.e. it equals the column span of H exactly.
    """

    matrix: BitMatrix
    parent_rows: int
    parent_rank: int


def metacheck_from_pcm(h: BitMatrix) -> MetaCheck:
    """Generic meta-check: the transform rows that annihilate the PCM.

    Row reduction produces an invertible transform whose last
    rows - rank rows left-multiply H to zero; those rows form a full-rank
    meta-check matrix. Deterministic under the fixed pivot rules.
    """
    red = bitlin.row_reduce(h)
    m_bits = red.transform.to_bits()[red.rank :]
    return MetaCheck(
        matrix=BitMatrix.from_bits(m_bits),
        parent_rows=h.rows,
        parent_rank=red.rank,
    )


def _spc3_triples(sector: str) -> list[tuple[int, ...]]:
    """Component positions (0-based) forming each block's tensor triple."""
    if sector == "x":
        return [(0, 1, 2), (3, 4, 5), (6, 7, 8)]
    if sector == "z":
        return [(0, 3, 6), (1, 4, 7), (2, 5, 8)]
    raise ValueError("sector must be 'x' or 'z'")


def spc3_metacheck(s: int, sector: str = "x") -> MetaCheck:
    """Sparse structured meta-check for the SPC(3,s) parity-check matrix.

    The PCM has three row blocks of (8s)^2 checks; block j is indexed by
    the row pair of the two identity factors. Each of the three meta-check
    block rows retains one factor-triple index and sums syndromes over
    everything else, giving 24s rows of weight 16s with M @ H = 0 and
    meta-check distance exactly 3.

    The ``sector`` argument fixes which PCM row indexing is targeted: the
    X matrix keeps its tensor factors contiguous per block while the Z
    matrix interleaves them, so the syndrome bit orderings differ.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    triples = _spc3_triples(sector)
    widths = [2 * s if ell in (0, 4, 8) else 2 for ell in range(9)]
    blk = 8 * s
    n_rows_per_block = blk * blk
    m_total = 3 * n_rows_per_block

    bits = np.zeros((3 * blk, m_total), dtype=np.uint8)
    for j, h_triple in enumerate(triples):
        # Identity positions of block j in ascending order, with their
        # mixed-radix place values inside the block's row index.
        id_pos = [p for p in range(9) if p not in h_triple]
        dims = [widths[p] for p in id_pos]
        place = np.ones(len(dims), dtype=np.int64)
        for i in range(len(dims) - 2, -1, -1):
            place[i] = place[i + 1] * dims[i + 1]
        for r in range(n_rows_per_block):
            digits = {
                p: (r // place[i]) % dims[i] for i, p in enumerate(id_pos)
            }
            col = j * n_rows_per_block + r
            for tau in range(3):
                if tau == j:
                    continue
                # Value of the triple-tau group index for this row.
                v = 0
                for p in triples[tau]:
                    v = v * widths[p] + digits[p]
                bits[tau * blk + v, col] = 1
    return MetaCheck(
        matrix=BitMatrix.from_bits(bits),
        parent_rows=m_total,
        parent_rank=blk**3 - (blk - 1) ** 3,
    )


@dataclass
class ExtendedPcm:
    """Block matrix ((H | I) / (0 | M)) coupling data and read-out errors."""

    h_ext: BitMatrix
    n: int
    m: int


def extend_pcm(h: BitMatrix, mc: MetaCheck) -> ExtendedPcm:
    """Extended PCM: data errors plus one hidden flip bit per check.

    For a data error e and read-out error e_s the extended syndrome is
    (H e + e_s, M e_s); the meta-syndrome is insensitive to e.
    """
    if mc.matrix.cols != h.rows:
        raise ValueError("meta-check width must equal the PCM row count")
    top = hstack([h, BitMatrix.identity(h.rows)])
    bottom = hstack([BitMatrix.zeros(mc.matrix.rows, h.cols), mc.matrix])
    return ExtendedPcm(h_ext=stack([top, bottom]), n=h.cols, m=h.rows)


@dataclass
class ExtendedSyndrome:
    """Measured syndrome and its meta-syndrome for one sector."""

    s_prime: np.ndarray
    sigma: np.ndarray

    @classmethod
    def from_measured(cls, mc: MetaCheck, s_prime: np.ndarray) -> "ExtendedSyndrome":
        s_prime = np.asarray(s_prime, dtype=np.uint8)
        return cls(s_prime=s_prime, sigma=mc.matrix.matvec(s_prime))


def measurement_overhead(code: CssCode) -> tuple[int, int, float]:
    """(minimum, actual, fractional overhead) of syndrome measurements.

    The minimum is the total PCM rank; the actual is the number of rows
    kept to preserve the meta-check structure.
    """
    minimum = code.rx + code.rz
    actual = code.hx.rows + code.hz.rows
    return minimum, actual, (actual - minimum) / minimum
