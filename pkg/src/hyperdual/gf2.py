"""Linear algebra over GF(2) on bit-packed row vectors.

Rows are plain Python integers used as bitsets (bit ``i`` = column ``i``), so
XOR eliminates a whole row in one machine-word-parallel operation regardless
of width.  A ``BitMatrix`` is an immutable stack of such rows with an explicit
column count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def popcount(x: int) -> int:
    return x.bit_count()


def parity(x: int) -> int:
    """Parity of the number of set bits (GF(2) dot product helper)."""
    return x.bit_count() & 1


def dot(a: int, b: int) -> int:
    """GF(2) inner product of two bit-packed vectors."""
    return (a & b).bit_count() & 1


@dataclass(frozen=True)
class BitMatrix:
    """Immutable GF(2) matrix stored as bit-packed rows.

    Parameters
    ----------
    rows : tuple of int
        Row bitsets; bit ``j`` of ``rows[i]`` is entry (i, j).
    num_cols : int
        Explicit width (rows may have high zero columns).
    """

    rows: tuple[int, ...]
    num_cols: int

    def __post_init__(self) -> None:
        if self.num_cols < 0:
            raise ValueError("num_cols must be non-negative")
        limit = 1 << self.num_cols
        for i, r in enumerate(self.rows):
            if r < 0 or r >= limit:
                raise ValueError(f"row {i} does not fit in {self.num_cols} columns")

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, rows: Iterable[int], num_cols: int) -> "BitMatrix":
        return cls(tuple(rows), num_cols)

    def row_support(self, i: int) -> tuple[int, ...]:
        """Indices of set bits in row ``i``, ascending."""
        return bits_of(self.rows[i])

    def transpose(self) -> "BitMatrix":
        cols = []
        for j in range(self.num_cols):
            c = 0
            for i, r in enumerate(self.rows):
                c |= ((r >> j) & 1) << i
            cols.append(c)
        return BitMatrix(tuple(cols), len(self.rows))

    def to_lists(self) -> list[list[int]]:
        """Dense 0/1 nested-list form (small matrices, debugging)."""
        return [[(r >> j) & 1 for j in range(self.num_cols)] for r in self.rows]


def bits_of(x: int) -> tuple[int, ...]:
    """Indices of set bits, ascending."""
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return tuple(out)


def mask_from_bits(bits: Iterable[int]) -> int:
    m = 0
    for b in bits:
        m |= 1 << b
    return m


def gf2_rank(m: BitMatrix) -> int:
    """Rank over GF(2) by forward elimination."""
    basis: list[int] = []
    for r in m.rows:
        r = _reduce_row(r, basis)
        if r:
            basis.append(r)
            basis.sort(key=lambda v: v & -v)
    return len(basis)


def _reduce_row(r: int, basis: Sequence[int]) -> int:
    for b in basis:
        low = b & -b
        if r & low:
            r ^= b
    return r


def gf2_rref(m: BitMatrix) -> tuple[BitMatrix, tuple[int, ...]]:
    """Reduced row echelon form.

    Returns
    -------
    (rref, pivots)
        ``rref`` keeps only the nonzero rows, ordered by pivot column;
        ``pivots`` are the pivot column indices, ascending.
    """
    rows = list(m.rows)
    pivots: list[int] = []
    rank = 0
    for col in range(m.num_cols):
        bit = 1 << col
        pivot_row = None
        for i in range(rank, len(rows)):
            if rows[i] & bit:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & bit:
                rows[i] ^= rows[rank]
        pivots.append(col)
        rank += 1
    return BitMatrix(tuple(rows[:rank]), m.num_cols), tuple(pivots)


def gf2_nullspace(m: BitMatrix) -> BitMatrix:
    """Canonical right-nullspace basis.

    One basis vector per free column of the RREF, emitted in ascending free
    column order: vector ``v_f`` has bit ``f`` set plus, for each pivot column
    ``p``, the RREF entry (row of ``p``, column ``f``).  Deterministic for a
    given input.
    """
    rref, pivots = gf2_rref(m)
    pivot_set = set(pivots)
    out = []
    for f in range(m.num_cols):
        if f in pivot_set:
            continue
        v = 1 << f
        fbit = 1 << f
        for i, p in enumerate(pivots):
            if rref.rows[i] & fbit:
                v |= 1 << p
        out.append(v)
    return BitMatrix(tuple(out), m.num_cols)


def gf2_independent_rows(m: BitMatrix) -> tuple[int, ...]:
    """Greedy maximal independent subset of rows, by ascending row index.

    Returns the selected row indices; their count equals ``gf2_rank(m)``.
    """
    basis: list[int] = []
    keep = []
    for i, r in enumerate(m.rows):
        red = _reduce_row(r, basis)
        if red:
            basis.append(red)
            basis.sort(key=lambda v: v & -v)
            keep.append(i)
    return tuple(keep)


def gf2_in_rowspace(v: int, m: BitMatrix) -> bool:
    """Whether bit-vector ``v`` lies in the row space of ``m``."""
    basis: list[int] = []
    for r in m.rows:
        r = _reduce_row(r, basis)
        if r:
            basis.append(r)
            basis.sort(key=lambda v_: v_ & -v_)
    return _reduce_row(v, basis) == 0
