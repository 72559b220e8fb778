"""
Named finite rings and ring comparisons

Matrix rings, F4 and the Hurwitz quaternions modulo 2 as structure tables,
isomorphism search for rings spanned by their units, and the group-theoretic
identification of GL_4(F2) with A_8.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple
import logging
import re

import numpy as np
import pandas as pd

from app.algebra.f2la import EchelonBasis, apply_matrix, inverse_matrix
from app.algebra.findex import IndexedGroup, generating_set, index_group
from app.algebra.ideal import Ideal, conjugate_ideal
from app.algebra.perm import alternating_group, element_orders, is_simple, order_spectrum
from app.algebra.quotient import F2AlgebraTable, build, identity_criterion, table_unit_report
from app.utils.config import settings
from app.utils.errors import (
    BoundExceededError,
    GroupMismatchError,
    PreconditionError,
    SpanningHypothesisError,
    UnitGroupLabError,
)

logger = logging.getLogger(__name__)

HURWITZ_LABELS = ("1", "i", "j", "w")
_PRODUCT_LINE = re.compile(r'^(\w+) \* (\w+) = ([01]+)$')


def matrix_ring(k: int) -> F2AlgebraTable:
    """M_k(F2) on matrix units; e_ab has index a*k + b and e_ab e_cd = [b = c] e_ad"""
    if not 1 <= k <= 4:
        raise UnitGroupLabError(f"Matrix ring size must be 1..4, got {k}")
    dim = k * k
    structure = [[0] * dim for _ in range(dim)]
    for a in range(k):
        for b in range(k):
            for d in range(k):
                structure[a * k + b][b * k + d] = 1 << (a * k + d)
    unity = sum(1 << (a * k + a) for a in range(k))
    labels = tuple(f"e{a + 1}{b + 1}" for a in range(k) for b in range(k))
    return F2AlgebraTable(dim, unity, tuple(map(tuple, structure)), labels, name=f"M{k}(F2)")


def field_f4() -> F2AlgebraTable:
    """F4 = F2[x]/(x^2 + x + 1) on the basis (1, x)"""
    return F2AlgebraTable(2, 0b01, ((0b01, 0b10), (0b10, 0b11)), ("1", "x"), name="F4")


def read_product_table(path: Path, labels: Sequence[str]) -> F2AlgebraTable:
    """
    Parse lines "a * b = c_0 c_1 ..." (coordinates in label order, no spaces)

    Lines starting with '#' and blank lines are skipped.
    """
    index = {label: k for k, label in enumerate(labels)}
    dim = len(labels)
    structure = [[None] * dim for _ in range(dim)]
    for number, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _PRODUCT_LINE.match(line)
        if not match or match.group(1) not in index or match.group(2) not in index \
                or len(match.group(3)) != dim:
            raise UnitGroupLabError(f"{path}:{number}: malformed product line {raw!r}")
        code = sum(1 << p for p, c in enumerate(match.group(3)) if c == "1")
        structure[index[match.group(1)]][index[match.group(2)]] = code
    if any(c is None for row in structure for c in row):
        raise UnitGroupLabError(f"{path}: product table is incomplete")
    return F2AlgebraTable(dim, 1 << index["1"], tuple(map(tuple, structure)), tuple(labels))


def hurwitz_mod2(path: Optional[Path] = None) -> F2AlgebraTable:
    """Hurwitz quaternions modulo 2, read from the committed fixture"""
    path = path or settings.DATA_PATH / "hurwitz_mod2.txt"
    table = read_product_table(path, HURWITZ_LABELS)
    return F2AlgebraTable(table.dim, table.unity, table.structure, table.labels, name="Hurwitz mod 2")


def load_order12_spectra(path: Optional[Path] = None) -> Dict[str, Dict[int, int]]:
    """Element-order spectra of the five groups of order 12"""
    path = path or settings.DATA_PATH / "order12_spectra.csv"
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    spectra = {}
    for row in frame.itertuples(index=False):
        spectrum = {}
        for item in row.spectrum.split(";"):
            order, count = item.split(":")
            spectrum[int(order)] = int(count)
        spectra[row.group] = spectrum
    return spectra


def load_order12_generators(path: Optional[Path] = None) -> Dict[str, List[str]]:
    """Permutation generators (cycle notation) recorded for some of the order-12 groups"""
    path = path or settings.DATA_PATH / "order12_spectra.csv"
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    return {
        row.group: [g for g in row.generators.split(";") if g]
        for row in frame.itertuples(index=False)
        if row.generators
    }


def abelian_cases() -> List[dict]:
    """
    The abelian symmetric and alternating groups and their witness rings

    S_2 needs F3, outside characteristic 2, so it is recorded unchecked.
    """
    f2 = table_unit_report(matrix_ring(1)).unit_count
    f4 = table_unit_report(field_f4()).unit_count
    return [
        {"group": "S1", "order": 1, "ring": "F2", "unit_count": f2, "checked": True},
        {"group": "S2", "order": 2, "ring": "F3", "unit_count": 2, "checked": False},
        {"group": "A1", "order": 1, "ring": "F2", "unit_count": f2, "checked": True},
        {"group": "A2", "order": 1, "ring": "F2", "unit_count": f2, "checked": True},
        {"group": "A3", "order": 3, "ring": "F4", "unit_count": f4, "checked": True},
    ]


@dataclass(frozen=True)
class AlgebraIsomorphism:
    """F2-linear map given by the images of the standard basis"""

    images: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.images)

    def apply(self, x: int) -> int:
        return apply_matrix(x, self.images)

    def inverse(self) -> "AlgebraIsomorphism":
        rows = inverse_matrix(self.images, self.dim)
        if rows is None:
            raise PreconditionError("Map is not bijective")
        return AlgebraIsomorphism(tuple(rows))

    def is_isomorphism(self, source: F2AlgebraTable, target: F2AlgebraTable) -> bool:
        if source.dim != self.dim or target.dim != self.dim:
            return False
        if inverse_matrix(self.images, self.dim) is None:
            return False
        if self.apply(source.unity) != target.unity:
            return False
        return all(
            self.apply(source.structure[a][b]) == target.mul(self.images[a], self.images[b])
            for a in range(self.dim)
            for b in range(self.dim)
        )


def _spanning_units(table: F2AlgebraTable, units: np.ndarray) -> List[int]:
    """Indices (into units) of the first units forming a basis"""
    basis = EchelonBasis(table.dim)
    chosen = []
    for i, code in enumerate(units):
        if basis.add(int(code)):
            chosen.append(i)
            if basis.rank == table.dim:
                break
    if basis.rank < table.dim:
        raise SpanningHypothesisError(
            f"Units of {table.name or 'the algebra'} span {basis.rank} of {table.dim} dimensions"
        )
    return chosen


def _extend_hom(source: IndexedGroup, target: IndexedGroup, gens: Sequence[int],
                images: Sequence[int]) -> Optional[np.ndarray]:
    """Bijective homomorphism with gens -> images, or None"""
    phi = np.full(len(source), -1, dtype=np.intp)
    phi[source.id] = target.id
    queue = [source.id]
    for a in queue:
        for g, h in zip(gens, images):
            a2 = source.product(a, g)
            b2 = target.product(int(phi[a]), int(h))
            if phi[a2] < 0:
                phi[a2] = b2
                queue.append(a2)
            elif phi[a2] != b2:
                return None
    if (phi < 0).any() or len(np.unique(phi)) != len(phi):
        return None
    return phi


def unit_spanned_iso(source: F2AlgebraTable, target: F2AlgebraTable) -> Optional[AlgebraIsomorphism]:
    """
    Ring isomorphism between algebras spanned by their units, if one exists

    An isomorphism is determined by a group isomorphism of the unit groups
    that extends linearly; every group isomorphism is tried.

    Raises:
        SpanningHypothesisError: the units of either side do not span it
        BoundExceededError: more than AUTOMORPHISM_BOUND candidate generator images
    """
    report_s = table_unit_report(source)
    report_t = table_unit_report(target)
    basis_units = _spanning_units(source, report_s.units)
    _spanning_units(target, report_t.units)
    if source.dim != target.dim or report_s.unit_count != report_t.unit_count:
        return None

    units_s, units_t = report_s.group, report_t.group
    gens = generating_set(units_s)
    orders_s = element_orders(units_s)
    orders_t = element_orders(units_t)
    choices = [np.flatnonzero(orders_t == orders_s[g]) for g in gens]
    candidates = prod(len(c) for c in choices)
    if candidates > settings.AUTOMORPHISM_BOUND:
        raise BoundExceededError(
            f"{candidates} generator images exceed AUTOMORPHISM_BOUND={settings.AUTOMORPHISM_BOUND}"
        )

    inverse_u = inverse_matrix([int(units_s.codes[i]) for i in basis_units], source.dim)
    for images in product(*choices):
        phi = _extend_hom(units_s, units_t, gens, images)
        if phi is None:
            continue
        targets = [int(units_t.codes[phi[i]]) for i in basis_units]
        iso = AlgebraIsomorphism(tuple(apply_matrix(row, targets) for row in inverse_u))
        linear = all(
            iso.apply(int(units_s.codes[u])) == int(units_t.codes[phi[u]])
            for u in range(len(units_s))
        )
        if linear and iso.is_isomorphism(source, target):
            logger.info(f"Isomorphism {source.name} -> {target.name} found")
            return iso
    return None


def quotient_iso_by_conjugacy(ideal_a: Ideal, ideal_b: Ideal,
                              all_automorphisms_inner: bool) -> Optional[object]:
    """
    A group element t with t J_a t^-1 = J_b, or None

    Under the identity criterion a ring isomorphism F2[G]/J_a -> F2[G]/J_b
    restricts to an automorphism of G; when every automorphism is inner,
    the quotients are isomorphic iff the ideals are conjugate.

    Raises:
        PreconditionError: all_automorphisms_inner not asserted, or either
            quotient fails the identity criterion
    """
    if not all_automorphisms_inner:
        raise PreconditionError("Conjugacy only decides isomorphism when Aut(G) = Inn(G)")
    if ideal_a.group is not ideal_b.group:
        raise GroupMismatchError("Ideals belong to different group algebras")
    G = ideal_a.group
    for ideal in (ideal_a, ideal_b):
        if not identity_criterion(build(G, ideal)):
            raise PreconditionError("Quotient does not satisfy the identity criterion")
    for t in range(len(G)):
        if conjugate_ideal(ideal_a, t) == ideal_b:
            return G.label(t)
    return None


A8_CAVEAT = (
    "Equal order, equal element-order spectrum and simplicity are consistent with "
    "GL4(F2) being isomorphic to A8 but do not prove it; the isomorphism itself is "
    "a classical theorem that is cited, not recomputed. Order and simplicity alone "
    "leave two candidates, A8 and PSL3(F4), both simple of order 20160; the spectrum "
    "separates them because PSL3(F4) has no elements of order 15 while A8 does."
)


@dataclass
class A8Identification:
    order_units: int
    order_a8: int
    spectrum_units: Dict[int, int]
    spectrum_a8: Dict[int, int]
    simple_units: bool
    simple_a8: bool
    caveat: str = A8_CAVEAT

    @property
    def consistent(self) -> bool:
        return (self.order_units == self.order_a8
                and self.spectrum_units == self.spectrum_a8
                and self.simple_units and self.simple_a8)

    @property
    def order_15_in_both(self) -> bool:
        return self.spectrum_units.get(15, 0) > 0 and self.spectrum_a8.get(15, 0) > 0

    def to_dict(self) -> dict:
        return {
            "order": {"units": self.order_units, "A8": self.order_a8},
            "spectrum": {"units": self.spectrum_units, "A8": self.spectrum_a8},
            "simple": {"units": self.simple_units, "A8": self.simple_a8},
            "order_15_in_both": self.order_15_in_both,
            "consistent": self.consistent,
            "caveat": self.caveat,
        }


def a8_identification(units: IndexedGroup) -> A8Identification:
    """Compare a group (the units of M4(F2)) with A8 by order, spectrum and simplicity"""
    a8 = index_group(alternating_group(8), on_the_fly=True)
    return A8Identification(
        order_units=len(units),
        order_a8=len(a8),
        spectrum_units=order_spectrum(units),
        spectrum_a8=order_spectrum(a8),
        simple_units=is_simple(units).simple,
        simple_a8=is_simple(a8).simple,
    )
