"""GF(2) vectors and matrices backed by Python int bitsets.

Bit i of the backing integer is coordinate i (0-indexed).  The text form
is an ASCII '0'/'1' string whose leftmost character is bit 0.
"""

from __future__ import annotations

from typing import Iterable, Iterator, List

SPAN_DIM_CAP = 30


class SubspaceTooLargeError(RuntimeError):
    """Raised when a subspace enumeration would exceed the dimension cap."""


class BitString:
    """Fixed-length GF(2) vector.  Immutable after construction."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if n < 0:
            raise ValueError("length must be non-negative")
        if bits < 0 or bits >> n:
            raise ValueError("bits outside declared length")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("BitString is immutable")

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BitString":
        return cls(n, (1 << n) - 1)

    @classmethod
    def basis(cls, n: int, i: int) -> "BitString":
        if not 0 <= i < n:
            raise ValueError(f"basis index {i} out of range for length {n}")
        return cls(n, 1 << i)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "BitString":
        bits = 0
        for i in indices:
            if not 0 <= i < n:
                raise ValueError(f"index {i} out of range for length {n}")
            bits ^= 1 << i
        return cls(n, bits)

    @classmethod
    def from_text(cls, text: str) -> "BitString":
        bits = 0
        for i, c in enumerate(text):
            if c == "1":
                bits |= 1 << i
            elif c != "0":
                raise ValueError(f"invalid bit character {c!r}")
        return cls(len(text), bits)

    def to_text(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.n))

    def bit(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"bit index {i} out of range for length {self.n}")
        return (self.bits >> i) & 1

    def support(self) -> List[int]:
        return [i for i in range(self.n) if (self.bits >> i) & 1]

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def _check_len(self, other: "BitString") -> None:
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")

    def __xor__(self, other: "BitString") -> "BitString":
        self._check_len(other)
        return BitString(self.n, self.bits ^ other.bits)

    def __and__(self, other: "BitString") -> "BitString":
        self._check_len(other)
        return BitString(self.n, self.bits & other.bits)

    def __or__(self, other: "BitString") -> "BitString":
        self._check_len(other)
        return BitString(self.n, self.bits | other.bits)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitString)
            and self.n == other.n
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"BitString({self.to_text()!r})"


def weight(k: BitString) -> int:
    """Hamming weight of k."""
    return k.weight()


def dot(k: BitString, l: BitString) -> int:
    """GF(2) inner product of two equal-length bitstrings."""
    k._check_len(l)
    return (k.bits & l.bits).bit_count() & 1


class Gf2Matrix:
    """Dense bit-packed GF(2) matrix, row-major (row bit j = column j)."""

    __slots__ = ("rows", "cols", "row_bits", "_col_bits")

    def __init__(self, rows: int, cols: int, row_bits: Iterable[int]):
        row_bits = tuple(row_bits)
        if len(row_bits) != rows:
            raise ValueError("row count mismatch")
        for r in row_bits:
            if r < 0 or r >> cols:
                raise ValueError("row bits outside declared width")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "row_bits", row_bits)
        object.__setattr__(self, "_col_bits", None)

    def __setattr__(self, name, value):
        if name == "_col_bits" and getattr(self, name, None) is None:
            object.__setattr__(self, name, value)
            return
        raise AttributeError("Gf2Matrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, [0] * rows)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_rows(cls, vectors: List[BitString], cols: int | None = None) -> "Gf2Matrix":
        if vectors:
            cols = vectors[0].n if cols is None else cols
            for v in vectors:
                if v.n != cols:
                    raise ValueError("inconsistent row lengths")
        elif cols is None:
            raise ValueError("cols required for an empty matrix")
        return cls(len(vectors), cols, [v.bits for v in vectors])

    def row(self, i: int) -> BitString:
        return BitString(self.cols, self.row_bits[i])

    def columns(self) -> tuple:
        """Column bitsets (bit i = row i), computed once and cached."""
        if self._col_bits is None:
            cols = [0] * self.cols
            for i, r in enumerate(self.row_bits):
                while r:
                    low = r & -r
                    cols[low.bit_length() - 1] |= 1 << i
                    r ^= low
            self._col_bits = tuple(cols)
        return self._col_bits

    def column(self, j: int) -> BitString:
        return BitString(self.rows, self.columns()[j])

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix(self.cols, self.rows, self.columns())

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self.row_bits == self.columns()

    def mat_vec(self, k: BitString) -> BitString:
        """GF(2) matrix-vector product A.k, as the XOR of selected columns."""
        if k.n != self.cols:
            raise ValueError(f"dimension mismatch: {self.cols} cols vs length {k.n}")
        cols = self.columns()
        acc = 0
        bits = k.bits
        while bits:
            low = bits & -bits
            acc ^= cols[low.bit_length() - 1]
            bits ^= low
        return BitString(self.rows, acc)

    def _row_reduce(self):
        """Row reduce; returns (pivot column list, reduced nonzero rows)."""
        work = list(self.row_bits)
        pivots: List[int] = []
        reduced: List[int] = []
        for r in work:
            for p, pr in zip(pivots, reduced):
                if (r >> p) & 1:
                    r ^= pr
            if r == 0:
                continue
            # pivot on the lowest set bit, for determinism
            p = (r & -r).bit_length() - 1
            for idx in range(len(reduced)):
                if (reduced[idx] >> p) & 1:
                    reduced[idx] ^= r
            pivots.append(p)
            reduced.append(r)
        order = sorted(range(len(pivots)), key=lambda i: pivots[i])
        return [pivots[i] for i in order], [reduced[i] for i in order]

    def rank(self) -> int:
        return len(self._row_reduce()[0])

    def kernel_basis(self) -> List[BitString]:
        """Basis of {x : A.x = 0}; size is cols - rank."""
        pivots, reduced = self._row_reduce()
        pivot_set = set(pivots)
        free = [j for j in range(self.cols) if j not in pivot_set]
        basis = []
        for j in free:
            x = 1 << j
            for p, r in zip(pivots, reduced):
                if (r >> j) & 1:
                    x |= 1 << p
            basis.append(BitString(self.cols, x))
        return basis

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Gf2Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.row_bits == other.row_bits
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.row_bits))

    def __repr__(self) -> str:
        return f"Gf2Matrix({self.rows}x{self.cols})"


def rank(m: Gf2Matrix) -> int:
    return m.rank()


def kernel_basis(m: Gf2Matrix) -> List[BitString]:
    return m.kernel_basis()


def independent_subset(vectors: List[BitString]) -> List[BitString]:
    """Maximal independent sublist, greedy in input order."""
    if not vectors:
        return []
    n = vectors[0].n
    elim: List[int] = []  # elimination basis, each with a distinct pivot
    kept: List[BitString] = []
    for v in vectors:
        if v.n != n:
            raise ValueError("inconsistent vector lengths")
        r = v.bits
        for e in elim:
            low = e & -e
            if r & low:
                r ^= e
        if r:
            elim.append(r)
            kept.append(v)
    return kept


def span_iter(
    basis: List[BitString], n: int | None = None, cap: int = SPAN_DIM_CAP
) -> Iterator[BitString]:
    """All 2^r combinations of an independent basis, Gray-code order from 0."""
    r = len(basis)
    if r > cap:
        raise SubspaceTooLargeError(
            f"subspace too large: dimension {r} exceeds cap {cap}"
        )
    if basis:
        n = basis[0].n
    elif n is None:
        raise ValueError("length required for an empty basis")
    else:
        yield BitString(n, 0)
        return
    cur = 0
    yield BitString(n, 0)
    for i in range(1, 1 << r):
        flip = (i & -i).bit_length() - 1
        cur ^= basis[flip].bits
        yield BitString(n, cur)
