"""
Linear algebra over F2 on bit-packed vectors

A vector of length n is a Python int whose bit i is coordinate i; BitVector
wraps that int with its length for the public surface. Matrices are lists of
row ints (bit j of row i is entry (i, j)) acting on row vectors, x * M.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from app.utils.errors import UnitGroupLabError


def iter_bits(x: int) -> Iterator[int]:
    """Positions of the set bits, ascending"""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def bits_to_array(x: int, length: int) -> np.ndarray:
    nbytes = max(1, (length + 7) // 8)
    raw = np.frombuffer(x.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:length]


def array_to_bits(array: np.ndarray) -> int:
    packed = np.packbits(np.asarray(array, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def permute_bits(x: int, source: np.ndarray, length: int) -> int:
    """Coordinate permutation: bit j of the result is bit source[j] of x"""
    return array_to_bits(bits_to_array(x, length)[source])


@dataclass(frozen=True)
class BitVector:
    """Element of F2^length"""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0 or self.bits < 0 or self.bits >> self.length:
            raise UnitGroupLabError(f"Bits {self.bits:#x} do not fit length {self.length}")

    @classmethod
    def unit(cls, length: int, i: int) -> "BitVector":
        return cls(length, 1 << i)

    @classmethod
    def from_array(cls, array) -> "BitVector":
        array = np.asarray(array)
        return cls(len(array), array_to_bits(array % 2))

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        bits = 0
        for i in support:
            bits ^= 1 << int(i)
        return cls(length, bits)

    def _check(self, other: "BitVector"):
        if other.length != self.length:
            raise UnitGroupLabError(f"Lengths {self.length} and {other.length} differ")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def __getitem__(self, i: int) -> int:
        return (self.bits >> i) & 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> List[int]:
        return list(iter_bits(self.bits))

    def to_array(self) -> np.ndarray:
        return bits_to_array(self.bits, self.length)

    def __str__(self) -> str:
        return "".join(str(self[i]) for i in range(self.length))


class EchelonBasis:
    """
    Fully reduced row-echelon basis of a subspace of F2^length

    Each row's pivot is its lowest set bit and no other row has that bit set,
    so the basis (sorted by pivot) is unique for the subspace and reduce()
    returns the canonical coset representative.
    """

    def __init__(self, length: int):
        self.length = length
        self._rows: Dict[int, int] = {}
        self._pivot_mask = 0

    @classmethod
    def from_vectors(cls, length: int, vectors: Iterable) -> "EchelonBasis":
        basis = cls(length)
        for v in vectors:
            basis.add(v)
        return basis

    def copy(self) -> "EchelonBasis":
        other = EchelonBasis(self.length)
        other._rows = dict(self._rows)
        other._pivot_mask = self._pivot_mask
        return other

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    @property
    def row_bits(self) -> List[int]:
        return [self._rows[p] for p in self.pivots]

    @property
    def rows(self) -> List[BitVector]:
        return [BitVector(self.length, r) for r in self.row_bits]

    def key(self) -> Tuple[int, ...]:
        return tuple(self.row_bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EchelonBasis):
            return NotImplemented
        return self.length == other.length and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.length, self.key()))

    def __repr__(self) -> str:
        return f"EchelonBasis(length={self.length}, rank={self.rank})"

    def reduce_bits(self, x: int) -> int:
        # rows only meet the pivot columns at their own pivot
        hits = x & self._pivot_mask
        while hits:
            low = hits & -hits
            x ^= self._rows[low.bit_length() - 1]
            hits ^= low
        return x

    def reduce(self, v: BitVector) -> BitVector:
        if v.length != self.length:
            raise UnitGroupLabError(f"Vector of length {v.length} against length {self.length}")
        return BitVector(self.length, self.reduce_bits(v.bits))

    def contains(self, v: BitVector) -> bool:
        return not self.reduce(v)

    def insert_bits(self, x: int) -> Optional[int]:
        """Add x to the span; returns the new reduced row, or None if x was already in it"""
        r = self.reduce_bits(x)
        if not r:
            return None
        low = r & -r
        p = low.bit_length() - 1
        for q, row in list(self._rows.items()):
            if (row >> p) & 1:
                self._rows[q] = row ^ r
        self._rows[p] = r
        self._pivot_mask |= low
        return r

    def add(self, v) -> bool:
        bits = v.bits if isinstance(v, BitVector) else int(v)
        if bits >> self.length:
            raise UnitGroupLabError(f"Vector does not fit length {self.length}")
        return self.insert_bits(bits) is not None


def insert(basis: EchelonBasis, v: BitVector) -> Tuple[EchelonBasis, bool]:
    """Non-mutating insert: the extended basis and whether the rank grew"""
    extended = basis.copy()
    grew = extended.add(v)
    return extended, grew


def reduce(basis: EchelonBasis, v: BitVector) -> BitVector:
    return basis.reduce(v)


def rank(vectors: Sequence, length: int) -> int:
    return EchelonBasis.from_vectors(length, vectors).rank


def _matrix_rows(matrix) -> Tuple[List[int], int]:
    array = np.asarray(matrix, dtype=np.int64) % 2
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise UnitGroupLabError(f"Expected a square bit matrix, got shape {array.shape}")
    return [array_to_bits(row) for row in array], array.shape[0]


def is_invertible(matrix) -> bool:
    rows, d = _matrix_rows(matrix)
    return rank(rows, d) == d


def inverse_matrix(rows: Sequence[int], d: int) -> Optional[List[int]]:
    """
    Gauss-Jordan inverse of a d x d matrix given as row ints

    Returns:
        Rows of N with N * M = M * N = I, or None when M is singular
    """
    if len(rows) != d:
        raise UnitGroupLabError(f"Expected {d} rows, got {len(rows)}")
    aug = [[int(r), 1 << i] for i, r in enumerate(rows)]
    for col in range(d):
        pivot = next((i for i in range(col, d) if (aug[i][0] >> col) & 1), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        left, right = aug[col]
        for i in range(d):
            if i != col and (aug[i][0] >> col) & 1:
                aug[i][0] ^= left
                aug[i][1] ^= right
    return [right for _, right in aug]


def apply_matrix(x: int, rows: Sequence[int]) -> int:
    """Row vector times matrix"""
    result = 0
    for i in iter_bits(x):
        result ^= rows[i]
    return result


def solve(vectors: Sequence[int], target: int) -> Tuple[int, Optional[int]]:
    """
    Elimination with combination tracking

    Args:
        vectors: v_0..v_{m-1} as ints
        target: vector to express

    Returns:
        (rank of the vectors, c) where the XOR of v_i over the set bits i of c
        equals target, or c = None when target is outside the span
    """
    rows: Dict[int, Tuple[int, int]] = {}

    def eliminate(v: int, combo: int) -> Tuple[int, int]:
        while v:
            p = (v & -v).bit_length() - 1
            if p not in rows:
                break
            row, row_combo = rows[p]
            v ^= row
            combo ^= row_combo
        return v, combo

    for i, v in enumerate(vectors):
        v, combo = eliminate(int(v), 1 << i)
        if v:
            rows[(v & -v).bit_length() - 1] = (v, combo)

    residue, combo = eliminate(int(target), 0)
    return len(rows), (combo if residue == 0 else None)


def batch_rank(rows: np.ndarray, ncols: int) -> np.ndarray:
    """
    Ranks of many small matrices at once

    Args:
        rows: (m, k) int64 array, matrix i has rows rows[i] (bit j = column j)
        ncols: number of columns, at most 62

    Returns:
        (m,) array of ranks
    """
    rows = np.array(rows, dtype=np.int64, copy=True)
    if rows.ndim != 2:
        raise UnitGroupLabError(f"Expected a stack of matrices, got shape {rows.shape}")
    m, k = rows.shape
    ranks = np.zeros(m, dtype=np.intp)
    if m == 0 or k == 0:
        return ranks

    positions = np.arange(k)
    everything = np.arange(m)
    for col in range(ncols):
        bit = np.int64(1) << np.int64(col)
        eligible = ((rows & bit) != 0) & (positions[None, :] >= ranks[:, None])
        selected = everything[eligible.any(axis=1)]
        if not len(selected):
            continue
        pivot_at = eligible[selected].argmax(axis=1)
        target = ranks[selected]
        pivot_rows = rows[selected, pivot_at]
        rows[selected, pivot_at] = rows[selected, target]
        rows[selected, target] = pivot_rows

        block = rows[selected]
        clear = (block & bit) != 0
        clear[np.arange(len(selected)), target] = False
        rows[selected] = np.where(clear, block ^ pivot_rows[:, None], block)
        ranks[selected] += 1
    return ranks


def batch_is_invertible(rows: np.ndarray, ncols: int) -> np.ndarray:
    rows = np.asarray(rows)
    if rows.ndim == 2 and rows.shape[1] != ncols:
        raise UnitGroupLabError(f"Square matrices needed, got {rows.shape[1]} x {ncols}")
    return batch_rank(rows, ncols) == ncols
