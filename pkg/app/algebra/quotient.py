"""
Finite quotient rings F2[G]/I, structure-constant tables and unit groups
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Optional, Set, Tuple
import logging
import time

import numpy as np

from app.algebra.f2la import BitVector, batch_is_invertible, iter_bits
from app.algebra.findex import IndexedGroup
from app.algebra.galg import AlgebraElement, element, render
from app.algebra.ideal import Ideal, extend
from app.algebra.perm import order_spectrum
from app.utils.config import settings
from app.utils.errors import (
    BoundExceededError,
    GroupMismatchError,
    PreconditionError,
    UnitGroupLabError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class F2AlgebraTable:
    """
    Finite unital F2-algebra given by structure constants

    Elements are d-bit codes over the basis e_0..e_{d-1}; structure[i][j]
    is the code of e_i * e_j.
    """

    dim: int
    unity: int
    structure: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        if len(self.structure) != self.dim or any(len(row) != self.dim for row in self.structure):
            raise UnitGroupLabError(f"Structure table must be {self.dim} x {self.dim}")
        limit = 1 << self.dim
        if not 0 <= self.unity < limit or any(not 0 <= c < limit for row in self.structure for c in row):
            raise UnitGroupLabError(f"Codes must fit in {self.dim} bits")

    @property
    def size(self) -> int:
        return 1 << self.dim

    @cached_property
    def _constants(self) -> np.ndarray:
        return np.array(self.structure, dtype=np.int64).reshape(self.dim, self.dim)

    def mul(self, x: int, y: int) -> int:
        z = 0
        for i in iter_bits(x):
            row = self.structure[i]
            for j in iter_bits(y):
                z ^= row[j]
        return z

    def mul_many(self, xs, ys) -> np.ndarray:
        xs, ys = np.broadcast_arrays(np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64))
        z = np.zeros(xs.shape, dtype=np.int64)
        for i in range(self.dim):
            x_i = ((xs >> i) & 1).astype(bool)
            if not x_i.any():
                continue
            row = np.zeros(xs.shape, dtype=np.int64)
            for j in range(self.dim):
                row ^= np.where((ys >> j) & 1, self._constants[i, j], 0)
            z ^= np.where(x_i, row, 0)
        return z

    def left_columns_many(self, xs: np.ndarray) -> np.ndarray:
        """Row j of matrix n is x_n * e_j; x is a unit iff this matrix is invertible"""
        xs = np.asarray(xs, dtype=np.int64)
        cols = np.zeros((len(xs), self.dim), dtype=np.int64)
        for i in range(self.dim):
            x_i = ((xs >> i) & 1).astype(bool)
            for j in range(self.dim):
                cols[:, j] ^= np.where(x_i, self._constants[i, j], 0)
        return cols

    def right_columns_many(self, xs: np.ndarray) -> np.ndarray:
        """Row j of matrix n is e_j * x_n"""
        xs = np.asarray(xs, dtype=np.int64)
        cols = np.zeros((len(xs), self.dim), dtype=np.int64)
        for i in range(self.dim):
            x_i = ((xs >> i) & 1).astype(bool)
            for j in range(self.dim):
                cols[:, j] ^= np.where(x_i, self._constants[j, i], 0)
        return cols

    def check_unity(self) -> bool:
        return all(
            self.mul(self.unity, 1 << i) == 1 << i == self.mul(1 << i, self.unity)
            for i in range(self.dim)
        )

    def check_associativity(self) -> bool:
        for a in range(self.dim):
            for b in range(self.dim):
                ab = self.structure[a][b]
                for c in range(self.dim):
                    if self.mul(ab, 1 << c) != self.mul(1 << a, self.structure[b][c]):
                        return False
        return True


class QuotientRing:
    """
    F2[G]/I with canonical coset representatives

    The free (non-pivot) columns of I's basis index a basis of the quotient;
    a coset is stored as the d-bit code of its representative on them.
    """

    def __init__(self, group: IndexedGroup, ideal: Ideal):
        self.group = group
        self.ideal = ideal
        pivots = set(ideal.basis.pivots)
        self.free_cols: Tuple[int, ...] = tuple(c for c in range(len(group)) if c not in pivots)
        self.dim = len(self.free_cols)
        self._position = {c: k for k, c in enumerate(self.free_cols)}

    @property
    def size(self) -> int:
        return 1 << self.dim

    def __repr__(self) -> str:
        return f"QuotientRing(|G|={len(self.group)}, dim={self.dim})"

    def compress(self, bits: int) -> int:
        """Canonical representative (|G| bits) to its d-bit code"""
        code = 0
        for c in iter_bits(bits):
            code |= 1 << self._position[c]
        return code

    def expand(self, code: int) -> int:
        bits = 0
        for k in iter_bits(code):
            bits |= 1 << self.free_cols[k]
        return bits

    def canonicalize(self, x: AlgebraElement) -> int:
        if x.group is not self.group:
            raise GroupMismatchError("Element belongs to a different group algebra")
        return self.compress(self.ideal.basis.reduce_bits(x.bits))

    def coset_code(self, g: int) -> int:
        return self.compress(self.ideal.basis.reduce_bits(1 << int(g)))

    def lift(self, code: int) -> AlgebraElement:
        return element(self.group, self.expand(code))

    @cached_property
    def table(self) -> F2AlgebraTable:
        return to_table(self)


def build(G: IndexedGroup, ideal: Ideal) -> QuotientRing:
    """
    Raises:
        PreconditionError: the ideal is not closed
        BoundExceededError: quotient dimension above QUOTIENT_DIM_BOUND
    """
    if not ideal.closed:
        raise PreconditionError("build() needs a closed ideal")
    if ideal.group is not G:
        raise GroupMismatchError("Ideal belongs to a different group algebra")
    ring = QuotientRing(G, ideal)
    if ring.dim > settings.QUOTIENT_DIM_BOUND:
        raise BoundExceededError(
            f"Quotient dimension {ring.dim} exceeds QUOTIENT_DIM_BOUND={settings.QUOTIENT_DIM_BOUND}"
        )
    return ring


def to_table(ring: QuotientRing) -> F2AlgebraTable:
    G = ring.group
    free = np.array(ring.free_cols, dtype=np.intp)
    products = G.multiply(free[:, None], free[None, :]) if ring.dim else np.zeros((0, 0), dtype=np.intp)
    structure = tuple(tuple(ring.coset_code(g) for g in row) for row in products)
    return F2AlgebraTable(
        dim=ring.dim,
        unity=ring.coset_code(G.id),
        structure=structure,
        labels=tuple(str(G.label(c)) for c in ring.free_cols),
        name=f"F2[G]/I, |G| = {len(G)}",
    )


def find_units(table: F2AlgebraTable, side: str = "left") -> np.ndarray:
    """
    Codes of all units, ascending

    A finite-dimensional algebra element is a unit iff multiplication by it
    on one side is bijective; the scan eliminates all 2^d matrices in chunks.
    """
    if table.dim > settings.QUOTIENT_DIM_BOUND:
        raise BoundExceededError(
            f"Dimension {table.dim} exceeds QUOTIENT_DIM_BOUND={settings.QUOTIENT_DIM_BOUND}"
        )
    if side not in ("left", "right"):
        raise UnitGroupLabError(f"Unknown side {side!r}; expected \"left\" or \"right\"")
    columns = table.left_columns_many if side == "left" else table.right_columns_many
    found = []
    chunk = settings.UNIT_SCAN_CHUNK
    for start in range(0, table.size, chunk):
        xs = np.arange(start, min(start + chunk, table.size), dtype=np.int64)
        found.append(xs[batch_is_invertible(columns(xs), table.dim)])
    return np.concatenate(found)


def unit_group(table: F2AlgebraTable, units: Optional[np.ndarray] = None) -> IndexedGroup:
    """Units as an IndexedGroup labelled by BitVector codes"""
    codes = find_units(table) if units is None else np.asarray(units, dtype=np.int64)

    def index_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.searchsorted(codes, table.mul_many(codes[a], codes[b]))

    def encode(label) -> int:
        return label.bits if isinstance(label, BitVector) else int(label)

    return IndexedGroup(
        codes=codes,
        index_product=index_product,
        identity_index=int(np.searchsorted(codes, table.unity)),
        decode=lambda i: BitVector(table.dim, int(codes[i])),
        encode=encode,
        kind=f"units of {table.name or 'an F2-algebra'}",
    )


@dataclass
class UnitGroupReport:
    ring_size: int
    unit_count: int
    spectrum: Dict[int, int]
    units: np.ndarray
    group: IndexedGroup
    identity_criterion: Optional[bool] = None
    ideal_dim: Optional[int] = None
    generators: Tuple[str, ...] = ()
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        data = {
            "ring_size": self.ring_size,
            "unit_count": self.unit_count,
            "spectrum": self.spectrum,
        }
        if self.identity_criterion is not None:
            data["identity_criterion"] = self.identity_criterion
        if self.ideal_dim is not None:
            data["ideal_dim"] = self.ideal_dim
            data["generators"] = list(self.generators)
        return data


def table_unit_report(table: F2AlgebraTable) -> UnitGroupReport:
    start = time.time()
    units = find_units(table)
    group = unit_group(table, units)
    spectrum = order_spectrum(group)
    elapsed = time.time() - start
    logger.info(f"Unit scan of a ring of size {table.size}: {len(units)} units took {elapsed:.2f}s")
    return UnitGroupReport(
        ring_size=table.size,
        unit_count=len(units),
        spectrum=spectrum,
        units=units,
        group=group,
        elapsed=elapsed,
    )


def cosets_distinct(ring: QuotientRing) -> bool:
    """Group elements stay pairwise distinct in the quotient"""
    codes = {ring.coset_code(g) for g in range(len(ring.group))}
    return len(codes) == len(ring.group)


def identity_criterion(ring: QuotientRing, report: Optional[UnitGroupReport] = None) -> bool:
    """
    The unit group of the quotient is exactly the image of G

    G embeds (distinct cosets) and there are no further units.
    """
    report = report or table_unit_report(ring.table)
    return cosets_distinct(ring) and report.unit_count == len(ring.group)


def unit_report(ring: QuotientRing) -> UnitGroupReport:
    report = table_unit_report(ring.table)
    report.identity_criterion = identity_criterion(ring, report)
    report.ideal_dim = ring.ideal.dimension
    report.generators = tuple(render(x) for x in ring.ideal.generators)
    return report


def brute_force_units(table: F2AlgebraTable) -> Set[int]:
    """Two-sided inverse search over all pairs; for small tables only"""
    units = set()
    for x in range(table.size):
        for y in range(table.size):
            if table.mul(x, y) == table.unity and table.mul(y, x) == table.unity:
                units.add(x)
                break
    return units


@dataclass(frozen=True)
class PrincipalQuotientScan:
    max_units: int
    witness: Optional[str]
    distinct_ideals: int
    unit_counts: Tuple[int, ...]


def max_units_over_principal_quotients(ring: QuotientRing) -> PrincipalQuotientScan:
    """
    Largest unit group among R/(x) for nonzero x in R

    The principal ideal of R generated by x pulls back to I + (x) in F2[G],
    so each quotient is computed as F2[G]/(I + (lift(x))). The zero ring
    counts one unit.
    """
    start = time.time()
    counts: Dict[Tuple[int, ...], int] = {}
    best: Optional[Tuple[int, int]] = None
    for code in range(1, ring.size):
        extended = extend(ring.ideal, [ring.lift(code)])
        key = extended.basis.key()
        if key not in counts:
            counts[key] = table_unit_report(build(ring.group, extended).table).unit_count
        units = counts[key]
        if best is None or units > best[0]:
            best = (units, code)

    logger.info(
        f"Principal quotient scan over {ring.size - 1} elements, {len(counts)} ideals "
        f"took {time.time() - start:.2f}s"
    )
    if best is None:
        return PrincipalQuotientScan(0, None, 0, ())
    return PrincipalQuotientScan(
        max_units=best[0],
        witness=render(ring.lift(best[1])),
        distinct_ideals=len(counts),
        unit_counts=tuple(sorted(set(counts.values()))),
    )
