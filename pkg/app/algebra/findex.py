"""
Canonically indexed finite groups with Cayley and inverse tables
"""
from __future__ import annotations

from typing import Callable, List, Optional, Sequence
import logging
import time

import numpy as np

from app.algebra.perm import Permutation, PermSet, _codes
from app.utils.config import settings
from app.utils.errors import BoundExceededError, NotASubsetError, UnitGroupLabError

logger = logging.getLogger(__name__)

IndexProduct = Callable[[np.ndarray, np.ndarray], np.ndarray]


class IndexedGroup:
    """
    Finite group on indices 0..size-1

    Elements carry canonical labels (permutations, or BitVector codes for
    unit groups). Products come from a materialized table when the group is
    small enough and from an on-the-fly index product otherwise; callers use
    multiply() either way.
    """

    def __init__(
        self,
        codes: np.ndarray,
        index_product: IndexProduct,
        identity_index: int,
        decode: Callable[[int], object],
        encode: Callable[[object], int],
        inverse: Optional[np.ndarray] = None,
        materialize: bool = True,
        kind: str = "",
    ):
        self.codes = codes
        self.size = len(codes)
        self.id = identity_index
        self.kind = kind
        self._index_product = index_product
        self._decode = decode
        self._encode = encode
        self.table: Optional[np.ndarray] = None

        self.inv = inverse if inverse is not None else _inverses_by_powers(self)
        if materialize and self.size <= settings.TABLE_BOUND:
            self.table = self._build_table()

    def _build_table(self) -> np.ndarray:
        start = time.time()
        dtype = np.int16 if self.size < 2 ** 15 else np.int32
        everything = np.arange(self.size)
        table = np.empty((self.size, self.size), dtype=dtype)
        for a in range(self.size):
            table[a] = self._index_product(np.full(self.size, a), everything)
        logger.debug(f"Cayley table of order {self.size} took {time.time() - start:.2f}s")
        return table

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        mode = "table" if self.table is not None else "on-the-fly"
        return f"IndexedGroup({self.kind or 'group'}, size={self.size}, {mode})"

    @property
    def identity_index(self) -> int:
        return self.id

    @property
    def has_table(self) -> bool:
        return self.table is not None

    def inverse_indices(self) -> np.ndarray:
        return self.inv

    def multiply(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.intp), np.asarray(b, dtype=np.intp))
        if self.table is not None:
            return self.table[a, b].astype(np.intp)
        return self._index_product(a.ravel(), b.ravel()).reshape(a.shape)

    def product(self, a: int, b: int) -> int:
        if self.table is not None:
            return int(self.table[a, b])
        return int(self._index_product(np.array([a]), np.array([b]))[0])

    def label(self, i: int):
        return self._decode(int(i))

    @property
    def elements(self) -> List[object]:
        return [self.label(i) for i in range(self.size)]

    def index_of(self, label) -> int:
        code = self._encode(label)
        i = int(np.searchsorted(self.codes, code))
        if i >= self.size or self.codes[i] != code:
            raise NotASubsetError(f"{label} is not an element of {self!r}")
        return i


def _inverses_by_powers(G: IndexedGroup) -> np.ndarray:
    """x^-1 = x^(k-1) where k is the order of x"""
    everything = np.arange(G.size)
    inverse = np.full(G.size, G.id, dtype=np.intp)
    previous = np.full(G.size, G.id, dtype=np.intp)
    power = everything.copy()
    pending = power != G.id
    steps = 1
    while pending.any():
        steps += 1
        if steps > G.size + 1:
            raise UnitGroupLabError("Multiplication is not a group law")
        previous[pending] = power[pending]
        power[pending] = G._index_product(power[pending], everything[pending])
        hit = pending & (power == G.id)
        inverse[hit] = previous[hit]
        pending &= ~hit
    return inverse


def index_group(G: PermSet, on_the_fly: bool = False) -> IndexedGroup:
    """
    Index a permutation group in canonical (lexicographic) order

    Args:
        G: PermSet flagged is_group
        on_the_fly: skip the Cayley table; required above TABLE_BOUND

    Returns:
        IndexedGroup whose products agree with perm.compose
    """
    G._require_group()
    if len(G) > settings.TABLE_BOUND and not on_the_fly:
        raise BoundExceededError(
            f"Order {len(G)} exceeds TABLE_BOUND={settings.TABLE_BOUND}; pass on_the_fly=True"
        )

    inverse_rows = np.argsort(G.array, axis=1)
    inverse = np.searchsorted(G.codes, _codes(inverse_rows, G.degree))
    return IndexedGroup(
        codes=G.codes,
        index_product=G.multiply,
        identity_index=G.identity_index,
        decode=lambda i: G[i],
        encode=lambda p: p.code() if isinstance(p, Permutation) else int(p),
        inverse=inverse,
        materialize=not on_the_fly,
        kind=f"permutation group of degree {G.degree}",
    )


def generated_indices(G: IndexedGroup, gens: Sequence[int]) -> np.ndarray:
    """Sorted indices of the subgroup generated by the given element indices"""
    reached = np.zeros(G.size, dtype=bool)
    reached[G.id] = True
    gen_array = np.asarray(list(gens), dtype=np.intp)
    frontier = np.array([G.id])
    while len(frontier) and len(gen_array):
        products = np.unique(G.multiply(frontier[:, None], gen_array[None, :]))
        frontier = products[~reached[products]]
        reached[frontier] = True
    return np.flatnonzero(reached)


def generating_set(G: IndexedGroup) -> List[int]:
    """Greedy generating set in canonical order"""
    gens: List[int] = []
    reached = np.zeros(G.size, dtype=bool)
    reached[G.id] = True
    for x in range(G.size):
        if reached[x]:
            continue
        gens.append(x)
        reached[generated_indices(G, gens)] = True
    return gens


def center(G: IndexedGroup) -> np.ndarray:
    everything = np.arange(G.size)
    central = np.ones(G.size, dtype=bool)
    for g in generating_set(G):
        central &= G.multiply(everything, g) == G.multiply(g, everything)
    return np.flatnonzero(central)


def has_trivial_center(G: IndexedGroup) -> bool:
    return len(center(G)) == 1


def check_latin_square(G: IndexedGroup) -> bool:
    """Latin square, two-sided identity and inverse invariants"""
    everything = np.arange(G.size)
    table = G.table if G.table is not None else G.multiply(everything[:, None], everything[None, :])
    rows_ok = np.array_equal(np.sort(table, axis=1), np.broadcast_to(everything, table.shape))
    cols_ok = np.array_equal(np.sort(table, axis=0), np.broadcast_to(everything[:, None], table.shape))
    identity_ok = (np.array_equal(table[G.id], everything)
                   and np.array_equal(table[:, G.id], everything))
    inverse_ok = bool(np.all(table[everything, G.inv] == G.id))
    return bool(rows_ok and cols_ok and identity_ok and inverse_ok)


def check_associativity(G: IndexedGroup, samples: Optional[int] = None,
                        rng: Optional[np.random.Generator] = None) -> bool:
    """
    (ab)c = a(bc), exhaustively for |G| <= 24 and on random triples otherwise
    """
    if G.size <= 24:
        a, b, c = (m.ravel() for m in np.meshgrid(*[np.arange(G.size)] * 3, indexing="ij"))
    else:
        rng = rng or np.random.default_rng(settings.RANDOM_SEED)
        count = samples or settings.ASSOCIATIVITY_SAMPLES
        a, b, c = rng.integers(0, G.size, size=(3, count))
    left = G.multiply(G.multiply(a, b), c)
    right = G.multiply(a, G.multiply(b, c))
    return bool(np.array_equal(left, right))
