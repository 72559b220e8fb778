from itertools import product

import numpy as np
import pytest

from app.algebra.f2la import (
    BitVector,
    EchelonBasis,
    apply_matrix,
    array_to_bits,
    batch_is_invertible,
    batch_rank,
    bits_to_array,
    insert,
    inverse_matrix,
    is_invertible,
    permute_bits,
    rank,
    reduce,
    solve,
)
from app.utils.errors import UnitGroupLabError


def test_insert_zero_does_not_grow():
    basis, grew = insert(EchelonBasis(4), BitVector(4, 0))
    assert not grew
    assert basis.rank == 0


def test_insert_is_non_mutating():
    empty = EchelonBasis(4)
    basis, grew = insert(empty, BitVector(4, 0b0011))
    assert grew
    assert empty.rank == 0
    basis, grew = insert(basis, BitVector(4, 0b0110))
    assert grew
    basis, grew = insert(basis, BitVector(4, 0b0101))
    assert not grew
    assert basis.rank == 2


def test_basis_is_canonical():
    vectors = [0b1011, 0b0110, 0b1101]
    a = EchelonBasis.from_vectors(4, vectors)
    b = EchelonBasis.from_vectors(4, reversed(vectors))
    c = EchelonBasis.from_vectors(4, [vectors[0] ^ vectors[1], vectors[1]])
    assert a == b == c
    assert a.key() == c.key()


def test_reduce_gives_coset_representative():
    basis = EchelonBasis.from_vectors(5, [0b00011, 0b01100])
    v = BitVector(5, 0b10101)
    for row in basis.rows:
        assert reduce(basis, v) == reduce(basis, v ^ row)
    assert basis.contains(BitVector(5, 0b01111))
    assert not basis.contains(BitVector(5, 0b10000))


def test_bitvector_bounds():
    with pytest.raises(UnitGroupLabError):
        BitVector(3, 0b1000)
    with pytest.raises(UnitGroupLabError):
        BitVector(3, 1) ^ BitVector(4, 1)


def test_bitvector_views():
    v = BitVector.from_support(6, [0, 2, 5])
    assert v.weight() == 3
    assert v.support() == [0, 2, 5]
    assert str(v) == "101001"
    assert BitVector.from_array(v.to_array()) == v


def test_bit_packing():
    assert list(bits_to_array(0b1101, 6)) == [1, 0, 1, 1, 0, 0]
    assert array_to_bits(np.array([0, 1, 1])) == 0b110
    assert array_to_bits(bits_to_array(1 << 70 | 5, 80)) == 1 << 70 | 5


def test_permute_bits():
    assert permute_bits(0b0001, np.array([1, 0, 2, 3]), 4) == 0b0010
    assert permute_bits(0b0110, np.array([3, 2, 1, 0]), 4) == 0b0110


def test_is_invertible():
    assert is_invertible(np.eye(4, dtype=int))
    assert not is_invertible([[1, 1], [1, 1]])
    with pytest.raises(UnitGroupLabError):
        is_invertible([[1, 0, 1], [0, 1, 1]])


@pytest.mark.parametrize("k, expected", [(1, 1), (2, 6), (3, 168), (4, 20160)])
def test_invertible_matrix_count(k, expected):
    codes = np.arange(1 << (k * k), dtype=np.int64)
    mask = (1 << k) - 1
    rows = np.stack([(codes >> (k * i)) & mask for i in range(k)], axis=1)
    assert int(batch_is_invertible(rows, k).sum()) == expected


def test_batch_rank_matches_echelon_rank(rng):
    rows = rng.integers(0, 1 << 6, size=(500, 5))
    ranks = batch_rank(rows, 6)
    for matrix, r in zip(rows, ranks):
        assert rank([int(x) for x in matrix], 6) == r


def test_inverse_matrix_all_3x3():
    for rows in product(range(8), repeat=3):
        inverse = inverse_matrix(list(rows), 3)
        if rank(list(rows), 3) < 3:
            assert inverse is None
            continue
        for i in range(3):
            assert apply_matrix(apply_matrix(1 << i, inverse), list(rows)) == 1 << i
            assert apply_matrix(apply_matrix(1 << i, list(rows)), inverse) == 1 << i


def test_solve_recovers_combination():
    vectors = [0b011, 0b110]
    r, combo = solve(vectors, 0b101)
    assert r == 2
    assert combo == 0b11
    assert solve(vectors, 0b001) == (2, None)
    assert solve(vectors, 0) == (2, 0)


@pytest.mark.parametrize("d, k", [(4, 2), (7, 3), (8, 5), (10, 4), (10, 7)])
def test_reduce_classifies_cosets(d, k, rng):
    vectors = [int(v) for v in rng.integers(0, 1 << d, size=k)]
    basis = EchelonBasis.from_vectors(d, vectors)
    span = {0}
    for v in vectors:
        span |= {s ^ v for s in span}
    assert len(span) == 2 ** basis.rank

    classes = {}
    for x in range(1 << d):
        r = reduce(basis, BitVector(d, x))
        assert reduce(basis, r) == r
        assert x ^ r.bits in span
        classes.setdefault(r.bits, set()).add(x)
    assert len(classes) == 2 ** (d - basis.rank)
    for r, members in classes.items():
        assert members == {r ^ s for s in span}
