from dataclasses import replace

import numpy as np
import pytest

from app.algebra.findex import check_associativity, check_latin_square, index_group
from app.algebra.galg import element, from_permutations
from app.algebra.ideal import close
from app.algebra.perm import (
    Permutation,
    cyclic_group,
    cycle,
    order_spectrum,
    parse_cycles,
    standard_generators,
    symmetric_group,
)
from app.algebra.quotient import (
    brute_force_units,
    build,
    find_units,
    identity_criterion,
    max_units_over_principal_quotients,
    table_unit_report,
    to_table,
    unit_group,
    unit_report,
)
from app.algebra.rings import hurwitz_mod2, matrix_ring
from app.utils.errors import BoundExceededError, PreconditionError, UnitGroupLabError


def s3_rings(s3):
    S3 = symmetric_group(3)
    tau = parse_cycles("(1,2,3)", 3)
    gens = standard_generators("S", 3)
    h1 = from_permutations(s3, S3)
    h2 = from_permutations(s3, [Permutation.identity(3), tau, tau ** 2])
    return build(s3, close(s3, gens, [h1])), build(s3, close(s3, gens, [h2]))


def random_element(G, rng):
    return element(G, int(rng.integers(0, 1 << len(G))))


def test_s3_quotients(s3):
    ring1, ring2 = s3_rings(s3)
    for ring, size in ((ring1, 32), (ring2, 16)):
        report = unit_report(ring)
        assert report.ring_size == size
        assert report.unit_count == 6
        assert report.identity_criterion
        assert report.spectrum == {1: 1, 2: 3, 3: 2}


def test_s3_quotient_table(s3):
    _, ring2 = s3_rings(s3)
    table = to_table(ring2)
    assert table.dim == 4
    assert table.check_unity()
    assert table.check_associativity()


def test_unit_report_to_dict(s3):
    _, ring2 = s3_rings(s3)
    data = unit_report(ring2).to_dict()
    assert data["ring_size"] == 16
    assert data["unit_count"] == 6
    assert data["identity_criterion"] is True
    assert data["ideal_dim"] == 2
    assert data["generators"] == ["e + (1,2,3) + (1,3,2)"]


def test_zero_ideal_of_f2_c5():
    G = index_group(cyclic_group(5))
    ring = build(G, close(G, [cycle(range(1, 6), 5)], []))
    assert ring.dim == 5
    assert unit_report(ring).unit_count == 15


def test_whole_ring_quotient_has_one_unit(s3):
    whole = close(s3, standard_generators("S", 3), [element(s3, 1 << s3.identity_index)])
    report = table_unit_report(build(s3, whole).table)
    assert report.ring_size == 1
    assert report.unit_count == 1


def a4_ideal(a4):
    def p(text):
        return parse_cycles(text, 4)

    gens = [
        from_permutations(a4, [p("e"), p("(1,2)(3,4)"), p("(1,3)(2,4)"), p("(1,4)(2,3)")]),
        from_permutations(a4, [p("e"), p("(1,3,2)"), p("(1,2)(3,4)"), p("(1,4,3)")]),
    ]
    return close(a4, standard_generators("A", 4), gens)


@pytest.fixture(scope="module")
def quotient_rings(s3, s4, a4, j1, j2):
    ring1, ring2 = s3_rings(s3)
    return {
        "S3/(H1)": ring1,
        "S3/(H2)": ring2,
        "R1": build(s4, j1),
        "R2": build(s4, j2),
        "A4/J": build(a4, a4_ideal(a4)),
    }


@pytest.mark.parametrize("name", ["S3/(H1)", "S3/(H2)", "R1", "R2", "A4/J"])
def test_canonicalize_is_a_ring_homomorphism(quotient_rings, name, rng):
    ring = quotient_rings[name]
    table = ring.table
    for _ in range(1000):
        x, y = random_element(ring.group, rng), random_element(ring.group, rng)
        cx, cy = ring.canonicalize(x), ring.canonicalize(y)
        assert ring.canonicalize(x + y) == cx ^ cy
        assert ring.canonicalize(x * y) == table.mul(cx, cy)
    assert ring.canonicalize(ring.lift(table.unity)) == table.unity


def test_lift_then_canonicalize(quotient_rings):
    ring = quotient_rings["R1"]
    assert ring.canonicalize(ring.lift(0b1010011)) == 0b1010011


@pytest.mark.parametrize("name, order", [
    ("S3/(H1)", 6), ("S3/(H2)", 6), ("R1", 24), ("R2", 24), ("A4/J", 12),
])
def test_quotient_unit_groups_are_groups(quotient_rings, name, order):
    units = unit_group(quotient_rings[name].table)
    assert len(units) == order
    assert check_latin_square(units)
    assert check_associativity(units)


def test_unknown_unit_criterion_side(quotient_rings):
    with pytest.raises(UnitGroupLabError):
        find_units(quotient_rings["R1"].table, side="middle")


def test_unit_scan_matches_brute_force(s3, s4, j1):
    ring1, ring2 = s3_rings(s3)
    for table in (ring1.table, ring2.table, matrix_ring(2), hurwitz_mod2(), build(s4, j1).table):
        assert table.size <= 128
        assert set(int(u) for u in find_units(table)) == brute_force_units(table)


def test_left_and_right_unit_criteria_agree(s4, j1):
    table = build(s4, j1).table
    assert np.array_equal(find_units(table, "left"), find_units(table, "right"))


def test_s4_quotients(s4, j1, j2):
    for ideal in (j1, j2):
        ring = build(s4, ideal)
        report = unit_report(ring)
        assert report.ring_size == 128
        assert report.unit_count == 24
        assert report.identity_criterion
        assert order_spectrum(unit_group(ring.table)) == {1: 1, 2: 9, 3: 8, 4: 6}


def test_identity_criterion_fails_when_cosets_merge(s3):
    augmentation = close(
        s3, standard_generators("S", 3),
        [from_permutations(s3, [Permutation.identity(3), parse_cycles("(1,2)", 3)])],
    )
    ring = build(s3, augmentation)
    assert ring.dim == 1
    assert not identity_criterion(ring)


def test_principal_quotients_of_r1(s4, j1):
    scan = max_units_over_principal_quotients(build(s4, j1))
    assert scan.max_units == 6
    assert scan.witness is not None
    assert max(scan.unit_counts) == 6


def test_principal_quotients_of_simple_rings(s3):
    _, ring2 = s3_rings(s3)
    assert max_units_over_principal_quotients(ring2).max_units == 1
    augmentation = close(
        s3, standard_generators("S", 3),
        [from_permutations(s3, [Permutation.identity(3), parse_cycles("(1,2)", 3)])],
    )
    assert max_units_over_principal_quotients(build(s3, augmentation)).max_units == 1


def test_build_checks(s3, s5):
    _, ring2 = s3_rings(s3)
    with pytest.raises(PreconditionError):
        build(s3, replace(ring2.ideal, closed=False))
    with pytest.raises(BoundExceededError):
        build(s5, close(s5, standard_generators("S", 5), []))
