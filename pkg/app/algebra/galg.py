"""
Group algebra F2[G] over an IndexedGroup

An element is a BitVector of length |G|; bit g is the coefficient of the
group element with index g.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence
import logging

import numpy as np

from app.algebra.f2la import BitVector, array_to_bits, iter_bits, permute_bits, solve
from app.algebra.findex import IndexedGroup
from app.algebra.perm import Permutation, compose
from app.utils.config import settings
from app.utils.errors import BoundExceededError, GroupMismatchError, NonCommutingTermsError

logger = logging.getLogger(__name__)

# index pairs per product chunk in mul()
_MUL_CHUNK = 1 << 22


@dataclass(frozen=True)
class AlgebraElement:
    group: IndexedGroup
    coeffs: BitVector

    def __post_init__(self):
        if self.coeffs.length != len(self.group):
            raise GroupMismatchError(
                f"Coefficient vector of length {self.coeffs.length} for a group of order {len(self.group)}"
            )

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return add(self, other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return mul(self, other)

    def __pow__(self, e: int) -> "AlgebraElement":
        return power(self, e)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def bits(self) -> int:
        return self.coeffs.bits

    def weight(self) -> int:
        return self.coeffs.weight()

    def support(self) -> list:
        return self.coeffs.support()

    def __str__(self) -> str:
        return render(self)


def element(G: IndexedGroup, bits: int) -> AlgebraElement:
    return AlgebraElement(G, BitVector(len(G), bits))


def zero(G: IndexedGroup) -> AlgebraElement:
    return element(G, 0)


def one(G: IndexedGroup) -> AlgebraElement:
    return element(G, 1 << G.id)


def basis_element(G: IndexedGroup, g) -> AlgebraElement:
    i = g if isinstance(g, (int, np.integer)) else G.index_of(g)
    return element(G, 1 << int(i))


def from_subset(G: IndexedGroup, indices: Iterable[int]) -> AlgebraElement:
    """Sum of the listed group elements, each counted once"""
    bits = 0
    for i in set(int(i) for i in indices):
        bits |= 1 << i
    return element(G, bits)


def from_permutations(G: IndexedGroup, perms: Iterable) -> AlgebraElement:
    """Sum with multiplicity: a group element listed twice cancels"""
    bits = 0
    for p in perms:
        bits ^= 1 << G.index_of(p)
    return element(G, bits)


def _check_same(x: AlgebraElement, y: AlgebraElement):
    if x.group is not y.group:
        raise GroupMismatchError("Elements belong to different group algebras")


def add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _check_same(x, y)
    return AlgebraElement(x.group, x.coeffs ^ y.coeffs)


def mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Convolution mod 2: coefficient of k counts pairs g h = k"""
    _check_same(x, y)
    G = x.group
    gs = np.fromiter(iter_bits(x.bits), dtype=np.intp)
    hs = np.fromiter(iter_bits(y.bits), dtype=np.intp)
    if not len(gs) or not len(hs):
        return zero(G)

    parity = np.zeros(len(G), dtype=np.int64)
    step = max(1, _MUL_CHUNK // len(hs))
    for start in range(0, len(gs), step):
        products = G.multiply(gs[start:start + step, None], hs[None, :]).ravel()
        parity ^= np.bincount(products, minlength=len(G)) & 1
    return element(G, array_to_bits(parity))


def weight(x: AlgebraElement) -> int:
    return x.weight()


def power(x: AlgebraElement, e: int) -> AlgebraElement:
    if e < 0:
        raise ValueError("Negative powers need is_unit()")
    result = one(x.group)
    base = x
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


@dataclass(frozen=True)
class UnitTest:
    is_unit: bool
    inverse: Optional[AlgebraElement] = None


def left_regular_columns(x: AlgebraElement) -> list:
    """Column h is x * h"""
    G = x.group
    everything = np.arange(len(G))
    return [permute_bits(x.bits, G.multiply(everything, G.inv[h]), len(G)) for h in range(len(G))]


def is_unit(x: AlgebraElement) -> UnitTest:
    """
    Invertibility of left multiplication by x, with the inverse

    Raises:
        BoundExceededError: |G| above GROUP_ALGEBRA_BOUND
    """
    G = x.group
    if len(G) > settings.GROUP_ALGEBRA_BOUND:
        raise BoundExceededError(
            f"Order {len(G)} exceeds GROUP_ALGEBRA_BOUND={settings.GROUP_ALGEBRA_BOUND}"
        )
    # x * y = 1 with y = sum of the h selected by the combination
    rank, combo = solve(left_regular_columns(x), 1 << G.id)
    if rank < len(G):
        return UnitTest(False)
    return UnitTest(True, element(G, combo))


def translation_source(G: IndexedGroup, s: int, side: str) -> np.ndarray:
    """
    Index map for translating coefficient vectors by the group element s

    side "left" gives s * x, side "right" gives x * s; bit j of the result
    is bit source[j] of x.
    """
    everything = np.arange(len(G))
    if side == "left":
        return G.multiply(G.inv[s], everything)
    if side == "right":
        return G.multiply(everything, G.inv[s])
    raise ValueError(f"Unknown side {side!r}")


def left_translate(x: AlgebraElement, s) -> AlgebraElement:
    G = x.group
    i = s if isinstance(s, (int, np.integer)) else G.index_of(s)
    return element(G, permute_bits(x.bits, translation_source(G, int(i), "left"), len(G)))


def right_translate(x: AlgebraElement, s) -> AlgebraElement:
    G = x.group
    i = s if isinstance(s, (int, np.integer)) else G.index_of(s)
    return element(G, permute_bits(x.bits, translation_source(G, int(i), "right"), len(G)))


def conjugation_source(G: IndexedGroup, t: int) -> np.ndarray:
    """Bit j of t x t^-1 is bit t^-1 j t of x"""
    everything = np.arange(len(G))
    return G.multiply(G.multiply(G.inv[t], everything), t)


def conjugate_element(x: AlgebraElement, t) -> AlgebraElement:
    G = x.group
    i = t if isinstance(t, (int, np.integer)) else G.index_of(t)
    return element(G, permute_bits(x.bits, conjugation_source(G, int(i)), len(G)))


def antipode_element(x: AlgebraElement) -> AlgebraElement:
    """Linear extension of g -> g^-1, an anti-automorphism of F2[G]"""
    G = x.group
    return element(G, permute_bits(x.bits, G.inv, len(G)))


def frobenius_power_of_commuting_sum(G: IndexedGroup, terms: Sequence[Permutation],
                                     k: int) -> AlgebraElement:
    """
    (t_1 + ... + t_m)^(2^k) for pairwise commuting group elements

    In characteristic 2 squaring is additive on commuting terms, so the
    power is the sum of the t_i^(2^k); equal powers cancel in pairs.

    Raises:
        NonCommutingTermsError: two terms do not commute
    """
    terms = list(terms)
    for i, a in enumerate(terms):
        for b in terms[i + 1:]:
            if compose(a, b) != compose(b, a):
                raise NonCommutingTermsError(f"{a} and {b} do not commute")
    exponent = 2 ** k
    return from_permutations(G, (t ** exponent for t in terms))


def render(x: AlgebraElement) -> str:
    if not x.bits:
        return "0"
    return " + ".join(str(x.group.label(i)) for i in iter_bits(x.bits))
