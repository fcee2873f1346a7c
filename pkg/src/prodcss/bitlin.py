"""Bit-packed dense linear algebra over GF(2).

BitMatrix is the single carrier for parity-check, generator and meta-check
matrices. Storage is row-major uint64 words; Gaussian elimination runs
word-wide through the kernel backend. Matrices are immutable from the
caller's perspective and all operations here are pure functions.

Vectors over GF(2) are plain numpy uint8 arrays with values in {0, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import pack_rows, rref_in_place, solve_bits, unpack_rows, words_per_row


class BitMatrix:
    """Dense binary matrix with packed row storage.

    Construct via :meth:`from_bits`, :meth:`zeros` or :meth:`identity`.
    Equality is entrywise; ``+`` is entrywise XOR.
    """

    __slots__ = ("words", "rows", "cols", "_bits")

    def __init__(self, words: np.ndarray, rows: int, cols: int):
        self.words = words
        self.rows = rows
        self.cols = cols
        self._bits: np.ndarray | None = None

    @classmethod
    def from_bits(cls, bits) -> "BitMatrix":
        arr = np.atleast_2d(np.asarray(bits, dtype=np.uint8))
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array of bits")
        if arr.size and arr.max() > 1:
            raise ValueError("entries must be 0 or 1")
        m = cls(pack_rows(arr), arr.shape[0], arr.shape[1])
        m._bits = np.ascontiguousarray(arr).copy()
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.zeros((rows, words_per_row(cols)), dtype=np.uint64), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_bits(np.eye(n, dtype=np.uint8))

    def to_bits(self) -> np.ndarray:
        """Dense uint8 view of the matrix (cached; do not mutate)."""
        if self._bits is None:
            self._bits = unpack_rows(self.words, self.cols)
        return self._bits

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> np.ndarray:
        return self.to_bits()[i].copy()

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_bits(self.to_bits().T)

    def mul(self, other: "BitMatrix") -> "BitMatrix":
        """Matrix product over GF(2)."""
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in GF(2) product")
        a = self.to_bits().astype(np.float64)
        b = other.to_bits().astype(np.float64)
        prod = (a @ b) % 2.0
        return BitMatrix.from_bits(prod.astype(np.uint8))

    def matvec(self, v: np.ndarray) -> np.ndarray:
        """Matrix-vector product over GF(2); returns a uint8 vector."""
        v = np.asarray(v, dtype=np.uint8)
        if v.shape != (self.cols,):
            raise ValueError("vector length must equal column count")
        vw = pack_rows(v.reshape(1, -1))[0]
        cnt = np.bitwise_count(self.words & vw[None, :]).sum(axis=1)
        return (cnt & 1).astype(np.uint8)

    def is_zero(self) -> bool:
        return not self.words.any()

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in GF(2) sum")
        return BitMatrix(self.words ^ other.words, self.rows, self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.words, other.words)

    def __hash__(self):
        raise TypeError("BitMatrix is not hashable")

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


@dataclass
class RowReduction:
    """Result of full row reduction.

    ``transform`` is invertible and ``transform @ input == echelon`` with
    all zero rows of the echelon at the bottom, so the last
    ``rows - rank`` rows of ``transform`` annihilate the input's row space
    from the left.
    """

    echelon: BitMatrix
    transform: BitMatrix
    rank: int
    pivot_cols: list[int]


def rank(m: BitMatrix) -> int:
    """GF(2) rank."""
    work = m.words.copy()
    return len(rref_in_place(work, m.cols))


def row_reduce(m: BitMatrix) -> RowReduction:
    """Reduced row echelon form with the recorded invertible transform."""
    wn = words_per_row(m.cols)
    aug = np.hstack([m.words, BitMatrix.identity(m.rows).words])
    aug = np.ascontiguousarray(aug)
    pivots = rref_in_place(aug, m.cols)
    ech = BitMatrix(np.ascontiguousarray(aug[:, :wn]), m.rows, m.cols)
    tr = BitMatrix(np.ascontiguousarray(aug[:, wn:]), m.rows, m.rows)
    return RowReduction(echelon=ech, transform=tr, rank=len(pivots), pivot_cols=pivots)


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis of the right kernel, one basis vector per column."""
    work = m.words.copy()
    pivots = rref_in_place(work, m.cols)
    ech = unpack_rows(work, m.cols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = np.zeros((m.cols, len(free_cols)), dtype=np.uint8)
    for k, f in enumerate(free_cols):
        basis[f, k] = 1
        for r, c in enumerate(pivots):
            basis[c, k] = ech[r, f]
    return BitMatrix.from_bits(basis)


def solve(m: BitMatrix, s: np.ndarray) -> np.ndarray | None:
    """Any x with ``m @ x == s`` (free variables zero), or None.

    Deterministic under the pivot ordering of :func:`row_reduce`; an
    unsolvable system is a normal outcome, not an error.
    """
    s = np.asarray(s, dtype=np.uint8)
    if s.shape != (m.rows,):
        raise ValueError("rhs length must equal row count")
    return solve_bits(m.to_bits(), s)


def kron(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Kronecker product over GF(2)."""
    return BitMatrix.from_bits(np.kron(a.to_bits(), b.to_bits()))


def stack(parts: list[BitMatrix]) -> BitMatrix:
    """Vertical concatenation; all parts must share the column count."""
    if not parts:
        raise ValueError("stack of zero matrices")
    cols = parts[0].cols
    for p in parts:
        if p.cols != cols:
            raise ValueError("stack requires equal column counts")
    words = np.vstack([p.words for p in parts])
    return BitMatrix(np.ascontiguousarray(words), sum(p.rows for p in parts), cols)


def hstack(parts: list[BitMatrix]) -> BitMatrix:
    """Horizontal concatenation; all parts must share the row count."""
    if not parts:
        raise ValueError("hstack of zero matrices")
    nrows = parts[0].rows
    for p in parts:
        if p.rows != nrows:
            raise ValueError("hstack requires equal row counts")
    bits = np.hstack([p.to_bits() for p in parts])
    return BitMatrix.from_bits(bits)


class RowSpan:
    """Reduced row basis supporting fast membership tests."""

    def __init__(self, m: BitMatrix):
        work = m.words.copy()
        pivots = rref_in_place(work, m.cols)
        self.cols = m.cols
        self.rank = len(pivots)
        self.pivot_cols = np.asarray(pivots, dtype=np.int64)
        self.basis_words = work[: self.rank].copy()

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Residual of v after elimination against the basis (packed)."""
        vw = pack_rows(np.asarray(v, dtype=np.uint8).reshape(1, -1))[0]
        for r in range(self.rank):
            c = self.pivot_cols[r]
            if (vw[c >> 6] >> np.uint64(c & 63)) & np.uint64(1):
                vw ^= self.basis_words[r]
        return vw

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()


def in_rowspan(m: BitMatrix, v: np.ndarray) -> bool:
    """True iff v is a GF(2) combination of the rows of m."""
    v = np.asarray(v, dtype=np.uint8)
    if v.shape != (m.cols,):
        raise ValueError("vector length must equal column count")
    return RowSpan(m).contains(v)


def weight(v: np.ndarray) -> int:
    """Hamming weight of a bit vector."""
    return int(np.count_nonzero(np.asarray(v)))


# ---------------------------------------------------------------------------
# File formats


def write_alist(m: BitMatrix, path) -> None:
    """Write in MacKay's alist sparse format (no zero padding)."""
    bits = m.to_bits()
    nrows, ncols = m.rows, m.cols
    col_idx = [np.nonzero(bits[:, j])[0] + 1 for j in range(ncols)]
    row_idx = [np.nonzero(bits[i, :])[0] + 1 for i in range(nrows)]
    col_w = [len(c) for c in col_idx]
    row_w = [len(r) for r in row_idx]
    lines = [
        f"{ncols} {nrows}",
        f"{max(col_w, default=0)} {max(row_w, default=0)}",
        " ".join(map(str, col_w)),
        " ".join(map(str, row_w)),
    ]
    lines += [" ".join(map(str, c)) for c in col_idx]
    lines += [" ".join(map(str, r)) for r in row_idx]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_alist(path) -> BitMatrix:
    """Read MacKay's alist format; zero-padding entries are tolerated.

    Zero-weight rows or columns appear as empty lines, so lines are
    consumed positionally rather than filtered.
    """
    with open(path) as fh:
        tokens = [[int(t) for t in line.split()] for line in fh]
    ncols, nrows = tokens[0][0], tokens[0][1]
    col_lines = tokens[4 : 4 + ncols]
    bits = np.zeros((nrows, ncols), dtype=np.uint8)
    for j, entries in enumerate(col_lines):
        for i in entries:
            if i:
                bits[i - 1, j] = 1
    mat = BitMatrix.from_bits(bits)
    row_lines = tokens[4 + ncols : 4 + ncols + nrows]
    for i, entries in enumerate(row_lines):
        declared = {e for e in entries if e}
        actual = set((np.nonzero(bits[i])[0] + 1).tolist())
        if declared != actual:
            raise ValueError(f"alist row section inconsistent at row {i}")
    return mat


def write_dense(m: BitMatrix, path) -> None:
    """Write the dense text format: 'rows cols' then one 0/1 string per row."""
    bits = m.to_bits()
    with open(path, "w") as fh:
        fh.write(f"{m.rows} {m.cols}\n")
        for i in range(m.rows):
            fh.write("".join("1" if b else "0" for b in bits[i]) + "\n")


def read_dense(path) -> BitMatrix:
    """Read the dense text format written by :func:`write_dense`."""
    with open(path) as fh:
        header = fh.readline().split()
        nrows, ncols = int(header[0]), int(header[1])
        bits = np.zeros((nrows, ncols), dtype=np.uint8)
        for i in range(nrows):
            line = fh.readline().strip()
            if len(line) != ncols:
                raise ValueError(f"dense row {i} has wrong length")
            bits[i] = [1 if ch == "1" else 0 for ch in line]
    return BitMatrix.from_bits(bits)
