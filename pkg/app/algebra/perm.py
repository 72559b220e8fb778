"""
Permutations and permutation-group computations

Points are 0..n-1 internally and 1-based in cycle notation. Composition is
fixed once for the whole package: (a * b)(i) = a(b(i)), the right factor acts
first. Conjugation, Cayley tables and group-algebra products all follow it.

Cycle grammar accepted by parse_cycles:

    text  := "" | "e" | cycle+
    cycle := "(" point ("," point)* ")"       e.g. "(1,2,3)(4,10)"
           | "(" point (" " point)* ")"       e.g. "(1 2 3)"
           | "(" digit+ ")"                   e.g. "(123)", points 1..9 only

Whitespace between cycles is ignored. Cycles are multiplied left to right
under the composition convention, so the rightmost cycle acts first.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import lcm
from collections import Counter
from typing import Dict, Iterable, Iterator, List, Optional, Protocol, Sequence, Union
import logging
import re

import numpy as np

from app.utils.config import settings
from app.utils.errors import (
    BoundExceededError,
    CycleSyntaxError,
    DegreeMismatchError,
    NotASubsetError,
    PreconditionError,
    UnitGroupLabError,
)

logger = logging.getLogger(__name__)

_TEXT_PATTERN = re.compile(r'\s*(\([^()]*\)\s*)+')
_CYCLE_PATTERN = re.compile(r'\(([^()]*)\)')


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of {0..n-1}; ordering is lexicographic on the image."""

    image: tuple

    def __post_init__(self):
        n = len(self.image)
        if n < 1:
            raise UnitGroupLabError("Permutation degree must be positive")
        if sorted(self.image) != list(range(n)):
            raise UnitGroupLabError(f"Not a bijection of 0..{n - 1}: {self.image}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, e: int) -> "Permutation":
        base = self if e >= 0 else self.inverse()
        e = abs(e) % self.order()
        result = Permutation.identity(self.degree)
        while e:
            if e & 1:
                result = compose(result, base)
            base = compose(base, base)
            e >>= 1
        return result

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, v in enumerate(self.image):
            inv[v] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.image))

    def cycles(self) -> List[tuple]:
        """
        Disjoint cycles of length >= 2 (0-based points)

        Each cycle starts at its least point and cycles are ordered by that
        point, which makes the decomposition canonical.
        """
        seen = [False] * self.degree
        result = []
        for start in range(self.degree):
            if seen[start] or self.image[start] == start:
                continue
            cycle = []
            j = start
            while not seen[j]:
                seen[j] = True
                cycle.append(j)
                j = self.image[j]
            result.append(tuple(cycle))
        return result

    def cycle_type(self) -> tuple:
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.degree - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles()))

    def sign(self) -> int:
        # a k-cycle is a product of k - 1 transpositions
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def is_even(self) -> bool:
        return self.sign() == 1

    def code(self) -> int:
        """Integer key preserving the lexicographic order among equal degrees"""
        n = self.degree
        key = 0
        for v in self.image:
            key = key * n + v
        return key

    def __str__(self) -> str:
        return print_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({print_cycles(self)!r}, n={self.degree})"


def parse_cycles(text: str, n: int) -> Permutation:
    """
    Read a permutation from 1-based cycle notation

    Args:
        text: e.g. "(1,2)(3,4)", "(12345)", "e" or ""
        n: degree of the result

    Returns:
        The product of the listed cycles

    Raises:
        CycleSyntaxError: malformed token, point out of range, or a point
            repeated inside one cycle
    """
    if n < 1:
        raise CycleSyntaxError(f"Degree must be positive, got {n}")

    stripped = text.strip()
    if stripped in ("", "e"):
        return Permutation.identity(n)
    if not _TEXT_PATTERN.fullmatch(stripped):
        raise CycleSyntaxError(f"Malformed cycle notation: {text!r}")

    result = Permutation.identity(n)
    for body in _CYCLE_PATTERN.findall(stripped):
        points = _parse_cycle_body(body, n, text)
        image = list(range(n))
        for k, p in enumerate(points):
            image[p] = points[(k + 1) % len(points)]
        result = compose(result, Permutation(tuple(image)))
    return result


def _parse_cycle_body(body: str, n: int, text: str) -> List[int]:
    body = body.strip()
    if not body:
        raise CycleSyntaxError(f"Empty cycle in {text!r}")

    if ',' in body:
        tokens = [t.strip() for t in body.split(',')]
    elif re.search(r'\s', body):
        tokens = body.split()
    else:
        tokens = list(body)

    points = []
    for token in tokens:
        if not token.isdigit():
            raise CycleSyntaxError(f"Malformed token {token!r} in {text!r}")
        p = int(token)
        if not 1 <= p <= n:
            raise CycleSyntaxError(f"Point {p} out of range 1..{n} in {text!r}")
        if p - 1 in points:
            raise CycleSyntaxError(f"Point {p} repeated within a cycle in {text!r}")
        points.append(p - 1)
    return points


def print_cycles(p: Permutation) -> str:
    """Render as disjoint 1-based cycles, "e" for the identity"""
    cycles = p.cycles()
    if not cycles:
        return "e"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cycles)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """(a * b)(i) = a(b(i))"""
    if a.degree != b.degree:
        raise DegreeMismatchError(f"Cannot compose degrees {a.degree} and {b.degree}")
    return Permutation(tuple(a.image[j] for j in b.image))


def conjugate(g: Permutation, x: Permutation) -> Permutation:
    """g * x * g^-1"""
    return compose(compose(g, x), g.inverse())


def cycle(points: Sequence[int], n: int) -> Permutation:
    """Single cycle from 1-based points"""
    return parse_cycles("(" + ",".join(str(p) for p in points) + ")", n)


def _codes(array: np.ndarray, n: int) -> np.ndarray:
    weights = np.array([n ** k for k in range(n - 1, -1, -1)], dtype=np.int64)
    return array.astype(np.int64) @ weights


class FiniteGroup(Protocol):
    """
    Index-level view of a finite group shared by PermSet and IndexedGroup.

    Elements are the indices 0..size-1 in canonical order; multiply works
    elementwise on broadcastable index arrays.
    """

    def __len__(self) -> int: ...

    @property
    def identity_index(self) -> int: ...

    def inverse_indices(self) -> np.ndarray: ...

    def multiply(self, a, b) -> np.ndarray: ...


class PermSet:
    """
    Deduplicated set of permutations of one degree in canonical order

    Members are stored as an (m, n) integer array sorted lexicographically,
    alongside their integer codes for vectorized membership tests.
    """

    def __init__(self, degree: int, array: np.ndarray, is_group: bool = False):
        # callers pass rows that are already unique and sorted
        self.degree = degree
        self.array = array
        self.codes = _codes(array, degree)
        self.is_group = is_group

    @classmethod
    def from_array(cls, array: np.ndarray, degree: Optional[int] = None,
                   is_group: bool = False) -> "PermSet":
        array = np.asarray(array, dtype=np.intp)
        if array.ndim != 2:
            if degree is None:
                raise UnitGroupLabError("Degree required for an empty PermSet")
            array = array.reshape(0, degree)
        degree = array.shape[1] if degree is None else degree
        if array.shape[1] != degree:
            raise DegreeMismatchError(f"Rows of length {array.shape[1]} for degree {degree}")
        if degree > settings.MAX_PERM_DEGREE:
            raise BoundExceededError(
                f"Degree {degree} exceeds MAX_PERM_DEGREE={settings.MAX_PERM_DEGREE}"
            )
        _, first = np.unique(_codes(array, degree), return_index=True)
        return cls(degree, array[first], is_group)

    @classmethod
    def from_perms(cls, perms: Iterable[Permutation], degree: Optional[int] = None,
                   is_group: bool = False) -> "PermSet":
        perms = list(perms)
        degrees = {p.degree for p in perms}
        if degree is not None:
            degrees.add(degree)
        if len(degrees) > 1:
            raise DegreeMismatchError(f"Mixed degrees {sorted(degrees)}")
        if not degrees:
            raise UnitGroupLabError("Degree required for an empty PermSet")
        n = degrees.pop()
        array = np.array([p.image for p in perms], dtype=np.intp).reshape(len(perms), n)
        return cls.from_array(array, n, is_group)

    def __len__(self) -> int:
        return len(self.array)

    def __getitem__(self, i: int) -> Permutation:
        return Permutation(tuple(int(v) for v in self.array[i]))

    def __iter__(self) -> Iterator[Permutation]:
        for i in range(len(self)):
            yield self[i]

    @property
    def members(self) -> List[Permutation]:
        return list(self)

    def __contains__(self, p: Permutation) -> bool:
        return p.degree == self.degree and self._find(p.code()) is not None

    def _find(self, code: int) -> Optional[int]:
        i = int(np.searchsorted(self.codes, code))
        if i < len(self.codes) and self.codes[i] == code:
            return i
        return None

    def index_of(self, p: Permutation) -> int:
        if p.degree != self.degree:
            raise DegreeMismatchError(f"Degree {p.degree} in a set of degree {self.degree}")
        i = self._find(p.code())
        if i is None:
            raise NotASubsetError(f"{p} is not a member")
        return i

    def indices_of(self, other: "PermSet") -> np.ndarray:
        """Positions of other's members; raises if other is not a subset"""
        if not self.issuperset(other):
            raise NotASubsetError("Set is not contained in the ambient set")
        return np.searchsorted(self.codes, other.codes)

    def issuperset(self, other: "PermSet") -> bool:
        if other.degree != self.degree:
            raise DegreeMismatchError(f"Degrees {other.degree} and {self.degree}")
        return bool(np.isin(other.codes, self.codes).all())

    def take(self, indices, is_group: bool = False) -> "PermSet":
        indices = np.unique(np.asarray(indices, dtype=np.intp))
        return PermSet(self.degree, self.array[indices], is_group)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermSet):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self.codes, other.codes)

    def __hash__(self) -> int:
        return hash((self.degree, self.codes.tobytes()))

    def __repr__(self) -> str:
        kind = "group" if self.is_group else "set"
        return f"PermSet({kind}, degree={self.degree}, size={len(self)})"

    # FiniteGroup view

    def _require_group(self):
        if not self.is_group:
            raise PreconditionError("Operation needs a PermSet flagged is_group")

    @property
    def identity_index(self) -> int:
        self._require_group()
        return self.index_of(Permutation.identity(self.degree))

    def inverse_indices(self) -> np.ndarray:
        self._require_group()
        inverse_rows = np.argsort(self.array, axis=1)
        return np.searchsorted(self.codes, _codes(inverse_rows, self.degree))

    def multiply(self, a, b) -> np.ndarray:
        self._require_group()
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.intp), np.asarray(b, dtype=np.intp))
        left = self.array[a.ravel()]
        right = self.array[b.ravel()]
        product = np.take_along_axis(left, right, axis=1)
        return np.searchsorted(self.codes, _codes(product, self.degree)).reshape(a.shape)


def _check_enum_degree(n: int):
    if n < 1:
        raise UnitGroupLabError(f"Degree must be positive, got {n}")
    if n > settings.MAX_ENUM_DEGREE:
        raise BoundExceededError(
            f"Degree {n} exceeds MAX_ENUM_DEGREE={settings.MAX_ENUM_DEGREE}"
        )


def symmetric_group(n: int) -> PermSet:
    _check_enum_degree(n)
    # itertools.permutations already yields lexicographic order
    array = np.array(list(permutations(range(n))), dtype=np.intp)
    return PermSet(n, array, is_group=True)


def alternating_group(n: int) -> PermSet:
    full = symmetric_group(n)
    inversions = np.zeros(len(full), dtype=np.intp)
    for i in range(n):
        for j in range(i + 1, n):
            inversions += full.array[:, i] > full.array[:, j]
    return PermSet(n, full.array[inversions % 2 == 0], is_group=True)


def cyclic_group(n: int) -> PermSet:
    """<(1,2,...,n)> acting on n points"""
    return generated_subgroup([cycle(range(1, n + 1), n)])


def standard_generators(kind: str, n: int) -> List[Permutation]:
    """
    Two-element generating sets used for ideal closure

    S_n: (1,2) and (1,2,...,n).
    A_n: (1,2,3) with (1,2,...,n) for odd n or (2,3,...,n) for even n.
    """
    if kind == "S":
        gens = [cycle([1, 2], n), cycle(range(1, n + 1), n)] if n >= 2 else []
    elif kind == "A":
        if n < 3:
            gens = []
        elif n % 2:
            gens = [cycle([1, 2, 3], n), cycle(range(1, n + 1), n)]
        else:
            gens = [cycle([1, 2, 3], n), cycle(range(2, n + 1), n)]
    else:
        raise UnitGroupLabError(f"Unknown group family {kind!r}")
    unique = sorted(set(gens))
    return unique or [Permutation.identity(n)]


def generated_subgroup(gens: Union[PermSet, Sequence[Permutation]]) -> PermSet:
    """
    Closure of the generators under composition

    Breadth-first search from the identity, right-multiplying every frontier
    row by every generator at once.
    """
    if not isinstance(gens, PermSet):
        gens = PermSet.from_perms(gens)
    if len(gens) == 0:
        raise UnitGroupLabError("generated_subgroup needs at least one generator")

    n = gens.degree
    identity = np.arange(n, dtype=np.intp)[None, :]
    seen = _codes(identity, n)
    rows = [identity]
    frontier = identity
    while len(frontier):
        # (f * g)(i) = f(g(i))
        candidates = np.concatenate([frontier[:, g] for g in gens.array])
        codes, first = np.unique(_codes(candidates, n), return_index=True)
        fresh = ~np.isin(codes, seen)
        frontier = candidates[first[fresh]]
        seen = np.union1d(seen, codes[fresh])
        rows.append(frontier)
    return PermSet.from_array(np.concatenate(rows), n, is_group=True)


def normalizer_of_set(G: PermSet, T: PermSet) -> PermSet:
    """
    {g in G : g T g^-1 = T} with T conjugated setwise

    This is the normalizer of the subset itself, which can be smaller than
    the normalizer of the subgroup T generates.
    """
    G._require_group()
    if not G.issuperset(T):
        raise NotASubsetError("T is not a subset of G")

    keep = np.arange(len(G))
    for t in T.array:
        rows = G.array[keep]
        inverse_rows = np.argsort(rows, axis=1)
        # (g t g^-1)(i) = g[t[g^-1[i]]]
        conjugates = np.take_along_axis(rows, t[inverse_rows], axis=1)
        keep = keep[np.isin(_codes(conjugates, G.degree), T.codes)]
    logger.debug(f"Normalizer of a {len(T)}-element subset: order {len(keep)}")
    return G.take(keep, is_group=True)


def centralizer_of_set(G: PermSet, S: PermSet) -> PermSet:
    """{g in G : g s = s g for every s in S}"""
    G._require_group()
    if S.degree != G.degree:
        raise DegreeMismatchError(f"Degrees {S.degree} and {G.degree}")

    keep = np.arange(len(G))
    for s in S.array:
        rows = G.array[keep]
        commutes = np.all(rows[:, s] == s[rows], axis=1)
        keep = keep[commutes]
    return G.take(keep, is_group=True)


def conjugacy_classes(G: FiniteGroup) -> List[np.ndarray]:
    """
    Partition of G into conjugacy classes

    Returns:
        Sorted index arrays, classes ordered by (size, least index)
    """
    size = len(G)
    everything = np.arange(size)
    inverses = G.inverse_indices()
    assigned = np.zeros(size, dtype=bool)
    classes = []
    while not assigned.all():
        x = int(np.argmin(assigned))
        orbit = np.unique(G.multiply(G.multiply(everything, x), inverses))
        assigned[orbit] = True
        classes.append(orbit)
    classes.sort(key=lambda c: (len(c), int(c[0])))
    return classes


def element_orders(G: FiniteGroup) -> np.ndarray:
    """Order of every element, by repeated vectorized multiplication"""
    size = len(G)
    everything = np.arange(size)
    identity = G.identity_index
    orders = np.ones(size, dtype=np.int64)
    power = everything.copy()
    pending = power != identity
    k = 1
    while pending.any():
        k += 1
        if k > size:
            raise UnitGroupLabError("Multiplication is not a group law")
        power[pending] = G.multiply(power[pending], everything[pending])
        hit = pending & (power == identity)
        orders[hit] = k
        pending &= ~hit
    return orders


def order_spectrum(G: FiniteGroup) -> Dict[int, int]:
    """Number of elements of each order; values sum to |G|"""
    counts = Counter(int(k) for k in element_orders(G))
    return dict(sorted(counts.items()))


@dataclass(frozen=True)
class SimplicityResult:
    simple: bool
    witness: Optional[np.ndarray] = None

    @property
    def witness_order(self) -> Optional[int]:
        return None if self.witness is None else len(self.witness)


def is_simple(G: FiniteGroup) -> SimplicityResult:
    """
    Decide simplicity by scanning unions of conjugacy classes

    A normal subgroup is a union of classes containing the identity whose
    size divides |G|. Every such union of proper nontrivial size is tested
    for closure; the first closed one is returned as the witness.

    Raises:
        PreconditionError: |G| = 1
        BoundExceededError: more classes than CLASS_COUNT_BOUND
    """
    order = len(G)
    if order <= 1:
        raise PreconditionError("is_simple needs |G| > 1")

    classes = conjugacy_classes(G)
    if len(classes) > settings.CLASS_COUNT_BOUND:
        raise BoundExceededError(
            f"{len(classes)} classes exceed CLASS_COUNT_BOUND={settings.CLASS_COUNT_BOUND}"
        )

    identity = G.identity_index
    others = [c for c in classes if not (len(c) == 1 and int(c[0]) == identity)]
    others.sort(key=len)
    logger.info(f"Simplicity scan: order {order}, {len(classes)} classes")

    chosen: List[int] = []

    def search(start: int, total: int) -> Optional[np.ndarray]:
        for i in range(start, len(others)):
            size = total + len(others[i])
            if size >= order:
                break
            chosen.append(i)
            if order % size == 0:
                union = np.concatenate([[identity]] + [others[k] for k in chosen])
                if _union_is_subgroup(G, union):
                    return np.sort(union)
            found = search(i + 1, size)
            if found is not None:
                return found
            chosen.pop()
        return None

    witness = search(0, 1)
    return SimplicityResult(simple=witness is None, witness=witness)


def _union_is_subgroup(G: FiniteGroup, union: np.ndarray) -> bool:
    size = len(G)
    inside = np.zeros(size, dtype=bool)
    inside[union] = True
    reached = np.zeros(size, dtype=bool)
    reached[G.identity_index] = True
    gens: List[int] = []

    for u in union:
        u = int(u)
        if reached[u]:
            continue
        gens.append(u)
        gen_array = np.array(gens)
        frontier = np.flatnonzero(reached)
        while len(frontier):
            products = np.unique(G.multiply(frontier[:, None], gen_array[None, :]))
            fresh = products[~reached[products]]
            if not inside[fresh].all():
                return False
            reached[fresh] = True
            frontier = fresh
    return bool(np.array_equal(reached, inside))
