from math import prod
import re

import pytest

import derive_hurwitz_table
from app.algebra.galg import from_permutations
from app.algebra.ideal import antipode_ideal, close
from app.algebra.perm import (
    Permutation,
    alternating_group,
    generated_subgroup,
    order_spectrum,
    parse_cycles,
    standard_generators,
    symmetric_group,
)
from app.algebra.quotient import F2AlgebraTable, brute_force_units, build, table_unit_report, to_table
from app.algebra.rings import (
    A8_CAVEAT,
    A8Identification,
    a8_identification,
    abelian_cases,
    field_f4,
    hurwitz_mod2,
    load_order12_generators,
    load_order12_spectra,
    matrix_ring,
    quotient_iso_by_conjugacy,
    read_product_table,
    unit_spanned_iso,
)
from app.utils.config import settings
from app.utils.errors import PreconditionError, SpanningHypothesisError, UnitGroupLabError


def gl_order(k):
    return prod(2 ** k - 2 ** i for i in range(k))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_matrix_ring_units(k):
    table = matrix_ring(k)
    assert table.check_unity()
    assert table.size == 2 ** (k * k)
    assert table_unit_report(table).unit_count == gl_order(k)


def test_m2_units_by_brute_force():
    assert len(brute_force_units(matrix_ring(2))) == 6


@pytest.mark.slow
def test_m4_units():
    report = table_unit_report(matrix_ring(4))
    assert report.ring_size == 65536
    assert report.unit_count == gl_order(4) == 20160


@pytest.mark.parametrize("k", [0, 5])
def test_matrix_ring_range(k):
    with pytest.raises(UnitGroupLabError):
        matrix_ring(k)


def test_matrix_units_multiply():
    table = matrix_ring(3)
    assert table.check_associativity()
    # e12 * e23 = e13, e12 * e12 = 0
    assert table.structure[1][5] == 1 << 2
    assert table.structure[1][1] == 0


def test_hurwitz_fixture_matches_oracle():
    text = derive_hurwitz_table.render_table()
    assert text == (settings.DATA_PATH / "hurwitz_mod2.txt").read_text()
    recorded = (settings.DATA_PATH / "hurwitz_mod2.sha256").read_text().split()[0]
    assert derive_hurwitz_table.digest(text) == recorded


def test_hurwitz_oracle_arithmetic():
    i, j, w = (derive_hurwitz_table.BASIS[k] for k in ("i", "j", "w"))
    assert derive_hurwitz_table.multiply(i, i) == derive_hurwitz_table.multiply(j, j)
    assert derive_hurwitz_table.coordinates(derive_hurwitz_table.multiply(i, i)) == (-1, 0, 0, 0)
    assert derive_hurwitz_table.coordinates(w) == (0, 0, 0, 1)
    # w^2 = w - 1
    assert derive_hurwitz_table.coordinates(derive_hurwitz_table.multiply(w, w)) == (-1, 0, 0, 1)


def test_hurwitz_units():
    table = hurwitz_mod2()
    assert table.size == 16
    assert table.check_unity()
    assert table.check_associativity()
    report = table_unit_report(table)
    assert report.unit_count == 12
    assert report.spectrum == {1: 1, 2: 3, 3: 8}
    assert report.spectrum == order_spectrum(alternating_group(4))


def test_hurwitz_square_expansion(rng):
    table = hurwitz_mod2()
    xs, ys = rng.integers(0, 16, size=(2, 100))
    for x, y in zip(xs, ys):
        x, y = int(x), int(y)
        left = table.mul(x ^ y, x ^ y)
        right = table.mul(x, x) ^ table.mul(y, y) ^ table.mul(x, y) ^ table.mul(y, x)
        assert left == right


def test_read_product_table_rejects_bad_lines(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 * 1 = 10\n")
    with pytest.raises(UnitGroupLabError):
        read_product_table(path, ("1", "x"))
    path.write_text("1 * y = 10\n")
    with pytest.raises(UnitGroupLabError):
        read_product_table(path, ("1", "x"))


def test_order12_spectra_from_generators():
    spectra = load_order12_spectra()
    generators = load_order12_generators()
    assert set(spectra) == {"C12", "C2xC6", "A4", "D6", "Dic3"}
    for name, texts in generators.items():
        degree = max(int(d) for t in texts for d in re.findall(r"\d+", t))
        group = generated_subgroup([parse_cycles(t, degree) for t in texts])
        assert len(group) == 12
        assert order_spectrum(group) == spectra[name]
    matching = [name for name, s in spectra.items() if s == {1: 1, 2: 3, 3: 8}]
    assert matching == ["A4"]


def test_abelian_cases():
    cases = {c["group"]: c for c in abelian_cases()}
    assert cases["S1"]["unit_count"] == 1
    assert cases["A3"]["unit_count"] == 3
    assert not cases["S2"]["checked"]
    assert table_unit_report(field_f4()).spectrum == {1: 1, 3: 2}


def test_iso_to_itself():
    table = matrix_ring(2)
    iso = unit_spanned_iso(table, table)
    assert iso is not None
    assert iso.is_isomorphism(table, table)


def s3_h2_table(s3):
    tau = parse_cycles("(1,2,3)", 3)
    h2 = from_permutations(s3, [Permutation.identity(3), tau, tau ** 2])
    return to_table(build(s3, close(s3, standard_generators("S", 3), [h2])))


def test_s3_quotient_is_m2(s3):
    source = s3_h2_table(s3)
    target = matrix_ring(2)
    iso = unit_spanned_iso(source, target)
    assert iso is not None
    assert iso.is_isomorphism(source, target)
    assert iso.inverse().is_isomorphism(target, source)


def test_hurwitz_is_a4_quotient(a4):
    def p(text):
        return parse_cycles(text, 4)

    remark = close(a4, standard_generators("A", 4), [from_permutations(a4, [p("e"), p("(1,2,3)"), p("(1,3,2)")])])
    target = build(a4, remark).table
    assert target.size == 16
    iso = unit_spanned_iso(hurwitz_mod2(), target)
    assert iso is not None
    assert iso.is_isomorphism(hurwitz_mod2(), target)
    assert iso.inverse().is_isomorphism(target, hurwitz_mod2())


def test_non_isomorphic_rings_of_equal_size():
    assert unit_spanned_iso(hurwitz_mod2(), matrix_ring(2)) is None


def test_spanning_hypothesis_is_reported():
    # F2 x F2: the only unit is (1, 1)
    product_ring = F2AlgebraTable(2, 0b11, ((0b01, 0), (0, 0b10)), ("e1", "e2"))
    with pytest.raises(SpanningHypothesisError):
        unit_spanned_iso(product_ring, product_ring)


def test_conjugacy_scan(j1, j2):
    assert quotient_iso_by_conjugacy(j1, j1, all_automorphisms_inner=True) == Permutation.identity(4)
    assert quotient_iso_by_conjugacy(j1, j2, all_automorphisms_inner=True) is None
    assert quotient_iso_by_conjugacy(antipode_ideal(j1), j2, all_automorphisms_inner=True) is not None
    with pytest.raises(PreconditionError):
        quotient_iso_by_conjugacy(j1, j2, all_automorphisms_inner=False)


@pytest.mark.slow
def test_a8_identification():
    units = table_unit_report(matrix_ring(4)).group
    result = a8_identification(units)
    assert result.order_units == result.order_a8 == 20160
    assert result.spectrum_units == result.spectrum_a8
    assert 15 in result.spectrum_units
    assert result.simple_units and result.simple_a8
    assert result.consistent
    assert result.caveat == A8_CAVEAT
    assert result.order_15_in_both
    assert result.to_dict()["consistent"] is True


def test_a8_has_order_15_elements():
    p = parse_cycles("(1,2,3,4,5)(6,7,8)", 8)
    assert p.is_even()
    assert p.order() == 15
    assert p in alternating_group(8)
    assert len(symmetric_group(8)) == 2 * 20160


def test_order_15_separates_a8_from_psl3_f4():
    a8_like = {1: 1, 2: 315, 3: 1232, 15: 2688}
    without_15 = {k: v for k, v in a8_like.items() if k != 15}
    result = A8Identification(20160, 20160, without_15, a8_like, True, True)
    assert not result.order_15_in_both
    assert not result.consistent
    assert result.to_dict()["order_15_in_both"] is False
    assert "order 15" in A8_CAVEAT
    assert "PSL3(F4)" in A8_CAVEAT
