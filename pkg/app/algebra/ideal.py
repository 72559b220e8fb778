"""
Two-sided ideals of F2[G] as echelon bases closed under group translations
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Deque, List, Optional, Sequence, Tuple
import logging
import time

import numpy as np

from app.algebra.f2la import EchelonBasis, permute_bits
from app.algebra.findex import IndexedGroup, generated_indices, index_group
from app.algebra.galg import (
    AlgebraElement,
    conjugation_source,
    element,
    from_permutations,
    is_unit,
    render,
    translation_source,
)
from app.algebra.perm import (
    PermSet,
    centralizer_of_set,
    generated_subgroup,
    normalizer_of_set,
)
from app.utils.config import settings
from app.utils.errors import (
    BoundExceededError,
    GeneratorError,
    GroupMismatchError,
    PreconditionError,
)

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class Ideal:
    """
    Two-sided ideal with the generating data it was closed from

    Two ideals are equal when their fully reduced bases agree.
    """

    group: IndexedGroup
    group_gens: Tuple[int, ...]
    generators: Tuple[AlgebraElement, ...]
    basis: EchelonBasis
    closed: bool = True
    elapsed: float = field(default=0.0, repr=False)

    @property
    def dimension(self) -> int:
        return self.basis.rank

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.group is other.group and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((id(self.group), self.basis.key()))

    def to_dict(self) -> dict:
        return {
            "generators": [render(x) for x in self.generators],
            "dimension": self.dimension,
        }


def _gen_indices(G: IndexedGroup, group_gens: Sequence) -> Tuple[int, ...]:
    indices = []
    for s in group_gens:
        indices.append(int(s) if isinstance(s, (int, np.integer)) else G.index_of(s))
    if len(generated_indices(G, indices)) != len(G):
        raise GeneratorError(
            f"{len(indices)} group generators do not generate the group of order {len(G)}"
        )
    return tuple(indices)


def _sources(G: IndexedGroup, group_gens: Sequence[int]) -> List[np.ndarray]:
    return [translation_source(G, s, side) for s in group_gens for side in ("left", "right")]


def _saturate(basis: EchelonBasis, queue: Deque[int], sources: List[np.ndarray], length: int):
    # an ideal is closed once s*v and v*s lie in the span for every generator s and new row v
    while queue:
        v = queue.popleft()
        for source in sources:
            row = basis.insert_bits(permute_bits(v, source, length))
            if row is not None:
                queue.append(row)


def _check_elements(G: IndexedGroup, gens: Sequence[AlgebraElement]):
    for x in gens:
        if x.group is not G:
            raise GroupMismatchError("Ideal generator lies in a different group algebra")


def close(G: IndexedGroup, group_gens: Sequence, gens: Sequence[AlgebraElement]) -> Ideal:
    """
    Smallest two-sided ideal containing gens

    Args:
        G: the group; |G| must be within GROUP_ALGEBRA_BOUND
        group_gens: permutations or indices generating G
        gens: algebra elements generating the ideal

    Returns:
        Closed Ideal
    """
    if len(G) > settings.GROUP_ALGEBRA_BOUND:
        raise BoundExceededError(
            f"Order {len(G)} exceeds GROUP_ALGEBRA_BOUND={settings.GROUP_ALGEBRA_BOUND}"
        )
    start = time.time()
    gen_indices = _gen_indices(G, group_gens)
    gens = tuple(gens)
    _check_elements(G, gens)

    basis = EchelonBasis(len(G))
    queue: Deque[int] = deque()
    for x in gens:
        row = basis.insert_bits(x.bits)
        if row is not None:
            queue.append(row)
    _saturate(basis, queue, _sources(G, gen_indices), len(G))

    elapsed = time.time() - start
    logger.info(f"Closed ideal of F2[G], |G| = {len(G)}: dimension {basis.rank} took {elapsed:.2f}s")
    return Ideal(G, gen_indices, gens, basis, closed=True, elapsed=elapsed)


def extend(ideal: Ideal, gens: Sequence[AlgebraElement]) -> Ideal:
    """Closure of ideal + (gens), reusing the existing basis"""
    if not ideal.closed:
        raise PreconditionError("extend() needs a closed ideal")
    G = ideal.group
    gens = tuple(gens)
    _check_elements(G, gens)

    basis = ideal.basis.copy()
    queue: Deque[int] = deque()
    for x in gens:
        row = basis.insert_bits(x.bits)
        if row is not None:
            queue.append(row)
    _saturate(basis, queue, _sources(G, ideal.group_gens), len(G))
    return Ideal(G, ideal.group_gens, ideal.generators + gens, basis, closed=True)


def contains(ideal: Ideal, x: AlgebraElement) -> bool:
    if not ideal.closed:
        raise PreconditionError("contains() needs a closed ideal")
    if x.group is not ideal.group:
        raise GroupMismatchError("Element and ideal belong to different group algebras")
    return ideal.basis.reduce_bits(x.bits) == 0


def weight2_witness(ideal: Ideal) -> Optional[Tuple[object, object]]:
    """
    Distinct group elements g, h with g + h in the ideal, if any

    g + h lies in the ideal exactly when g and h have the same canonical
    form modulo it; the first collision in canonical order is returned.
    """
    if not ideal.closed:
        raise PreconditionError("weight2_witness() needs a closed ideal")
    G = ideal.group
    seen = {}
    for g in range(len(G)):
        form = ideal.basis.reduce_bits(1 << g)
        if form in seen:
            return G.label(seen[form]), G.label(g)
        seen[form] = g
    return None


def _check_unit_in_subgroup_algebra(T: PermSet):
    # left multiplication by x in F2[H] on F2[G] is a direct sum of copies of
    # its action on F2[H], one per coset, so units of F2[H] stay units in F2[G]
    H = generated_subgroup(T)
    if len(H) > settings.GROUP_ALGEBRA_BOUND:
        return
    IH = index_group(H)
    if not is_unit(from_permutations(IH, T)).is_unit:
        raise PreconditionError("The sum of T is not a unit of the group algebra")


def sigma_candidates(G: PermSet, T: PermSet) -> PermSet:
    """
    C_G(N_G(T)) for a subset T of G whose sum is a unit

    Raises:
        PreconditionError: sum(T) is not a unit (checked in F2[<T>])
    """
    _check_unit_in_subgroup_algebra(T)
    normalizer = normalizer_of_set(G, T)
    candidates = centralizer_of_set(G, normalizer)
    logger.info(
        f"sigma candidates for |T| = {len(T)} in a group of order {len(G)}: "
        f"|N| = {len(normalizer)}, {len(candidates)} candidates"
    )
    return candidates


def conjugate_ideal(ideal: Ideal, t) -> Ideal:
    """t I t^-1 for a group element t"""
    G = ideal.group
    i = int(t) if isinstance(t, (int, np.integer)) else G.index_of(t)
    source = conjugation_source(G, i)
    rows = [permute_bits(r, source, len(G)) for r in ideal.basis.row_bits]
    gens = tuple(element(G, permute_bits(x.bits, source, len(G))) for x in ideal.generators)
    return Ideal(G, ideal.group_gens, gens, EchelonBasis.from_vectors(len(G), rows), ideal.closed)


def antipode_ideal(ideal: Ideal) -> Ideal:
    """
    Image of the ideal under g -> g^-1

    The antipode is an anti-automorphism, so the image of a two-sided ideal
    is again one; the result is re-saturated as a check.
    """
    G = ideal.group
    rows = [permute_bits(r, G.inv, len(G)) for r in ideal.basis.row_bits]
    basis = EchelonBasis.from_vectors(len(G), rows)
    before = basis.rank
    _saturate(basis, deque(basis.row_bits), _sources(G, ideal.group_gens), len(G))
    if basis.rank != before:
        raise PreconditionError("Antipode image was not closed; input ideal was not two-sided")
    gens = tuple(element(G, permute_bits(x.bits, G.inv, len(G))) for x in ideal.generators)
    return Ideal(G, ideal.group_gens, gens, basis, closed=True)
