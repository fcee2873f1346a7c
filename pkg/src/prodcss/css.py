"""CSS code model: validation, parameters, syndromes, logical-failure
classification and exact low-weight distance search.

A CSS code is a pair of binary parity-check matrices (hx, hz) on the same
qubits with hx @ hz.T == 0. X-type checks (rows of hx) are sensitive to
the Z component of an error and vice versa.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import bitlin
from .bitlin import BitMatrix, RowSpan

# Pauli symbols are encoded 0=I, 1=X, 2=Y, 3=Z.
SYMBOLS = "IXYZ"
_FROM_XZ = np.array([0, 1, 3, 2], dtype=np.uint8)  # index vx + 2*vz


class CommutativityError(ValueError):
    """Raised when hx @ hz.T != 0 for a would-be CSS code."""

    def __init__(self, row_x: int, row_z: int):
        self.row_x = row_x
        self.row_z = row_z
        super().__init__(
            f"X check {row_x} anticommutes with Z check {row_z}"
        )


@dataclass
class PauliVector:
    """An n-qubit Pauli error, one symbol in {I,X,Y,Z} per qubit."""

    symbols: np.ndarray

    def __post_init__(self):
        self.symbols = np.asarray(self.symbols, dtype=np.uint8)
        if self.symbols.size and self.symbols.max() > 3:
            raise ValueError("symbols must be in 0..3")

    @classmethod
    def identity(cls, n: int) -> "PauliVector":
        return cls(np.zeros(n, dtype=np.uint8))

    @classmethod
    def from_xz(cls, vx: np.ndarray, vz: np.ndarray) -> "PauliVector":
        vx = np.asarray(vx, dtype=np.uint8)
        vz = np.asarray(vz, dtype=np.uint8)
        if vx.shape != vz.shape:
            raise ValueError("vx and vz must have equal length")
        return cls(_FROM_XZ[vx + 2 * vz])

    @classmethod
    def from_string(cls, s: str) -> "PauliVector":
        return cls(np.array([SYMBOLS.index(ch) for ch in s], dtype=np.uint8))

    @property
    def n(self) -> int:
        return int(self.symbols.shape[0])

    @property
    def vx(self) -> np.ndarray:
        """1 where the symbol has an X component (X or Y)."""
        return ((self.symbols == 1) | (self.symbols == 2)).astype(np.uint8)

    @property
    def vz(self) -> np.ndarray:
        """1 where the symbol has a Z component (Y or Z)."""
        return ((self.symbols == 2) | (self.symbols == 3)).astype(np.uint8)

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.symbols))

    def __add__(self, other: "PauliVector") -> "PauliVector":
        """Product of Pauli errors up to phase (componentwise XOR of x/z)."""
        return PauliVector.from_xz(self.vx ^ other.vx, self.vz ^ other.vz)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliVector):
            return NotImplemented
        return np.array_equal(self.symbols, other.symbols)

    def __str__(self) -> str:
        return "".join(SYMBOLS[s] for s in self.symbols)


class CssCode:
    """Validated CSS code with cached ranks and row-span bases."""

    def __init__(self, hx: BitMatrix, hz: BitMatrix):
        if hx.cols != hz.cols:
            raise ValueError("hx and hz must act on the same qubits")
        comm = hx.mul(hz.transpose())
        if not comm.is_zero():
            bits = comm.to_bits()
            rx, rz = np.argwhere(bits)[0]
            raise CommutativityError(int(rx), int(rz))
        self.hx = hx
        self.hz = hz
        self.n = hx.cols
        self._rx: int | None = None
        self._rz: int | None = None
        self._span_x: RowSpan | None = None
        self._span_z: RowSpan | None = None

    @property
    def rx(self) -> int:
        if self._rx is None:
            self._rx = bitlin.rank(self.hx)
        return self._rx

    @property
    def rz(self) -> int:
        if self._rz is None:
            self._rz = bitlin.rank(self.hz)
        return self._rz

    @property
    def k(self) -> int:
        return self.n - self.rx - self.rz

    @property
    def span_x(self) -> RowSpan:
        if self._span_x is None:
            self._span_x = RowSpan(self.hx)
        return self._span_x

    @property
    def span_z(self) -> RowSpan:
        if self._span_z is None:
            self._span_z = RowSpan(self.hz)
        return self._span_z

    def __repr__(self) -> str:
        return f"CssCode([[{self.n},{self.k}]])"


def new_css(hx: BitMatrix, hz: BitMatrix) -> CssCode:
    """Validate and build a CSS code from its two parity-check matrices."""
    return CssCode(hx, hz)


@dataclass
class CodeStats:
    """Exact parameters read off the parity-check matrices."""

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


def stats(code: CssCode) -> CodeStats:
    hx_bits = code.hx.to_bits()
    hz_bits = code.hz.to_bits()
    return CodeStats(
        n=code.n,
        k=code.k,
        mx=code.hx.rows,
        mz=code.hz.rows,
        meta_x=code.hx.rows - code.rx,
        meta_z=code.hz.rows - code.rz,
        wr_x=int(hx_bits.sum(axis=1).max(initial=0)),
        wr_z=int(hz_bits.sum(axis=1).max(initial=0)),
        wc_x=int(hx_bits.sum(axis=0).max(initial=0)),
        wc_z=int(hz_bits.sum(axis=0).max(initial=0)),
    )


def syndromes(code: CssCode, e: PauliVector) -> tuple[np.ndarray, np.ndarray]:
    """Syndromes (sx, sz): X checks see the Z part, Z checks the X part."""
    if e.n != code.n:
        raise ValueError("error length must equal qubit count")
    return code.hx.matvec(e.vz), code.hz.matvec(e.vx)


def is_logical_failure(code: CssCode, residual: PauliVector) -> bool:
    """True iff a zero-syndrome residual is not a stabilizer element."""
    sx, sz = syndromes(code, residual)
    if sx.any() or sz.any():
        raise ValueError("residual must have zero syndrome")
    return not (
        code.span_x.contains(residual.vx) and code.span_z.contains(residual.vz)
    )


@dataclass
class DistanceReport:
    """Outcome of exact minimum-weight logical error search."""

    searched_up_to: int
    found_weight: int | None
    multiplicity_x: int = 0
    multiplicity_y: int = 0
    multiplicity_z: int = 0
    witness: PauliVector | None = None
    supports: dict = field(default_factory=dict, repr=False)


def _packed_columns(m: BitMatrix) -> np.ndarray:
    """Per-column packed syndromes: row i of the result is column i of m."""
    return bitlin.pack_rows(np.ascontiguousarray(m.to_bits().T))


def _kernel_supports_at_weight(cols: np.ndarray, n: int, w: int) -> list[tuple[int, ...]]:
    """All weight-w supports whose columns XOR to zero (meet in the middle).

    Enumerates weight-ceil(w/2) and weight-floor(w/2) supports, buckets by
    syndrome, and joins disjoint pairs. Exact and exhaustive at weight w.
    """
    if w == 1:
        zero = ~cols.any(axis=1)
        return [(int(i),) for i in np.nonzero(zero)[0]]

    h1 = (w + 1) // 2
    h2 = w // 2

    def enumerate_halves(h: int) -> tuple[np.ndarray, np.ndarray]:
        combos = list(itertools.combinations(range(n), h))
        if not combos:
            return (
                np.zeros((0, h), dtype=np.int64),
                np.zeros((0, cols.shape[1]), dtype=np.uint64),
            )
        supports = np.array(combos, dtype=np.int64)
        syn = cols[supports[:, 0]].copy()
        for k in range(1, h):
            syn ^= cols[supports[:, k]]
        return supports, syn

    sup1, syn1 = enumerate_halves(h1)

    def bucket(syn: np.ndarray) -> dict[bytes, list[int]]:
        out: dict[bytes, list[int]] = {}
        view = syn.tobytes()
        width = syn.shape[1] * 8
        for i in range(syn.shape[0]):
            key = view[i * width : (i + 1) * width]
            out.setdefault(key, []).append(i)
        return out

    found: set[tuple[int, ...]] = set()
    if h1 == h2:
        buckets = bucket(syn1)
        for idxs in buckets.values():
            if len(idxs) < 2:
                continue
            for a, b in itertools.combinations(idxs, 2):
                sa, sb = sup1[a], sup1[b]
                union = set(sa.tolist()) | set(sb.tolist())
                if len(union) == w:
                    found.add(tuple(sorted(union)))
    else:
        sup2, syn2 = enumerate_halves(h2)
        buckets = bucket(syn1)
        view2 = syn2.tobytes()
        width = syn2.shape[1] * 8
        for i in range(syn2.shape[0]):
            key = view2[i * width : (i + 1) * width]
            for a in buckets.get(key, ()):
                union = set(sup1[a].tolist()) | set(sup2[i].tolist())
                if len(union) == w:
                    found.add(tuple(sorted(union)))
    return sorted(found)


def _support_vector(n: int, support: tuple[int, ...]) -> np.ndarray:
    v = np.zeros(n, dtype=np.uint8)
    v[list(support)] = 1
    return v


def pure_distance(
    code: CssCode, max_weight: int
) -> tuple[int | None, int | None]:
    """Minimum weights of nonzero kernel vectors of hz (X side) and hx (Z side).

    Exact up to max_weight; a None entry means no vector of weight up to the
    bound exists on that side.
    """
    if max_weight < 1:
        raise ValueError("max_weight must be at least 1")
    cols_z = _packed_columns(code.hz)
    cols_x = _packed_columns(code.hx)
    dx = dz = None
    for w in range(1, max_weight + 1):
        if dx is None and _kernel_supports_at_weight(cols_z, code.n, w):
            dx = w
        if dz is None and _kernel_supports_at_weight(cols_x, code.n, w):
            dz = w
        if dx is not None and dz is not None:
            break
    return dx, dz


def search_min_logical(code: CssCode, max_weight: int) -> DistanceReport:
    """Exact minimum-weight logical error among pure-X, pure-Z and pure-Y
    classes, with multiplicity counts at the found weight.

    Pure-X candidates are kernel vectors of hz that fall outside the row
    span of hx (and symmetrically for Z); pure-Y candidates must satisfy
    both parity-check matrices and escape either row span. The search is
    meet-in-the-middle over half-weight supports and is exhaustive up to
    max_weight.
    """
    if max_weight < 1:
        raise ValueError("max_weight must be at least 1")
    cols_z = _packed_columns(code.hz)
    cols_x = _packed_columns(code.hx)
    cols_y = np.hstack([cols_z, cols_x])

    for w in range(1, max_weight + 1):
        sup_x = [
            s
            for s in _kernel_supports_at_weight(cols_z, code.n, w)
            if not code.span_x.contains(_support_vector(code.n, s))
        ]
        sup_z = [
            s
            for s in _kernel_supports_at_weight(cols_x, code.n, w)
            if not code.span_z.contains(_support_vector(code.n, s))
        ]
        sup_y = []
        for s in _kernel_supports_at_weight(cols_y, code.n, w):
            v = _support_vector(code.n, s)
            if not (code.span_x.contains(v) and code.span_z.contains(v)):
                sup_y.append(s)
        if sup_x or sup_z or sup_y:
            if sup_x:
                v = _support_vector(code.n, sup_x[0])
                witness = PauliVector.from_xz(v, np.zeros_like(v))
            elif sup_z:
                v = _support_vector(code.n, sup_z[0])
                witness = PauliVector.from_xz(np.zeros_like(v), v)
            else:
                v = _support_vector(code.n, sup_y[0])
                witness = PauliVector.from_xz(v, v)
            return DistanceReport(
                searched_up_to=max_weight,
                found_weight=w,
                multiplicity_x=len(sup_x),
                multiplicity_y=len(sup_y),
                multiplicity_z=len(sup_z),
                witness=witness,
                supports={"x": sup_x, "y": sup_y, "z": sup_z},
            )
    return DistanceReport(searched_up_to=max_weight, found_weight=None)
