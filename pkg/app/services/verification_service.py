"""
Verification Service - computes a certificate for every claim
"""
from concurrent.futures import ThreadPoolExecutor
from math import factorial
from typing import Any, Callable, Dict, List, Optional
import logging
import time

from app.algebra.findex import index_group
from app.algebra.galg import (
    basis_element,
    element,
    from_permutations,
    frobenius_power_of_commuting_sum,
    is_unit,
    one,
    power,
    render,
)
from app.algebra.ideal import antipode_ideal, close, contains, sigma_candidates, weight2_witness
from app.algebra.perm import (
    Permutation,
    PermSet,
    alternating_group,
    centralizer_of_set,
    cycle,
    cyclic_group,
    generated_subgroup,
    normalizer_of_set,
    order_spectrum,
    parse_cycles,
    standard_generators,
    symmetric_group,
)
from app.algebra.quotient import build, max_units_over_principal_quotients, unit_report
from app.algebra.rings import (
    a8_identification,
    abelian_cases,
    hurwitz_mod2,
    load_order12_spectra,
    matrix_ring,
    quotient_iso_by_conjugacy,
    table_unit_report,
    unit_spanned_iso,
)
from app.api.models import VerificationReport
from app.services.registry_service import registry_service
from app.utils.config import settings
from app.utils.errors import UnitGroupLabError

logger = logging.getLogger(__name__)

CLAIMS = ("c5", "s3", "sn", "an", "s4", "a4", "a8", "all")


class _Facts:
    """Collects computed values and asserted expectations for one report"""

    def __init__(self):
        self.values: Dict[str, Any] = {}
        self.failed: List[str] = []

    def record(self, name: str, value: Any):
        self.values[name] = value

    def expect(self, name: str, observed: Any, expected: Any) -> bool:
        ok = observed == expected
        self.values[name] = {"observed": observed, "expected": expected, "ok": ok}
        if not ok:
            self.failed.append(name)
            logger.warning(f"{name}: observed {observed!r}, expected {expected!r}")
        return ok


def _perm_strings(perms) -> List[str]:
    return sorted(str(p) for p in perms)


def _frobenius_exponent(sigma: Permutation) -> Optional[int]:
    """
    Least k divisible by 4 with sigma^(2^k) = iota, or None

    tau^(2^k) = tau exactly when 4 | k; sigma then needs 2-power order.
    """
    order = sigma.order()
    if order & (order - 1):
        return None
    k = 4
    while 2 ** k < order:
        k += 4
    return k


class VerificationService:
    """Runs the claim certificates and wraps them as VerificationReports"""

    def _report(self, report_id: str, inputs: Dict[str, Any],
                body: Callable[[_Facts], Optional[str]]) -> VerificationReport:
        start = time.time()
        logger.info(f"Verifying {report_id}")
        facts = _Facts()
        outcome = body(facts)
        verdict = "fail" if facts.failed else (outcome or "pass")
        ms = (time.time() - start) * 1000
        logger.info(f"{report_id}: {verdict} took {ms / 1000:.2f}s")
        return VerificationReport(
            id=report_id,
            anchor=registry_service.anchor(report_id),
            inputs=inputs,
            facts=facts.values,
            verdict=verdict,
            ms=round(ms, 3),
        )

    def _check_max_n(self, max_n: Optional[int]) -> int:
        max_n = settings.DEFAULT_MAX_N if max_n is None else max_n
        if not 5 <= max_n <= settings.MAX_ENUM_DEGREE:
            raise UnitGroupLabError(
                f"max_n must lie in 5..{settings.MAX_ENUM_DEGREE}, got {max_n}"
            )
        return max_n

    def cmd_c5(self) -> VerificationReport:
        """Every quotient of F2[C5] has 1 or at least 15 units; abelian cases"""
        def body(facts: _Facts) -> None:
            step_start = time.time()
            G = index_group(cyclic_group(5))
            gens = [cycle(range(1, 6), 5)]
            ideals = {}
            for bits in range(1 << len(G)):
                ideal = close(G, gens, [element(G, bits)])
                ideals.setdefault(ideal.basis.key(), ideal)
            logger.info(f"Step 1: Principal ideals of F2[C5] took {time.time() - step_start:.2f}s")

            step_start = time.time()
            counts = sorted(unit_report(build(G, ideal)).unit_count for ideal in ideals.values())
            logger.info(f"Step 2: Quotient unit scans took {time.time() - step_start:.2f}s")

            facts.expect("distinct_ideals", len(ideals), 4)
            facts.expect("unit_counts", counts, [1, 1, 15, 15])
            facts.expect("quotients_with_5_units", counts.count(5), 0)
            facts.expect("unit_counts_between_2_and_14", [c for c in counts if 1 < c < 15], [])

            cases = abelian_cases()
            facts.record("abelian_cases", cases)
            facts.expect(
                "abelian_witness_rings",
                all(c["unit_count"] == c["order"] for c in cases if c["checked"]),
                True,
            )

        return self._report("c5", {"group": "C5", "generator": "(1,2,3,4,5)"}, body)

    def cmd_s3(self) -> VerificationReport:
        """F2[S3]/(H1) and F2[S3]/(H2) both have unit group S3"""
        def body(facts: _Facts) -> None:
            S3 = symmetric_group(3)
            G = index_group(S3)
            gens = standard_generators("S", 3)
            iota = Permutation.identity(3)
            tau = parse_cycles("(1,2,3)", 3)

            h1 = from_permutations(G, S3)
            h2 = from_permutations(G, [iota, tau, tau ** 2])
            facts.expect("H1_squared_is_zero", not (h1 * h1), True)
            facts.expect("H1_plus_iota_is_involution", (h1 + one(G)) ** 2 == one(G), True)

            nontrivial = PermSet.from_perms([p for p in S3 if not p.is_identity()])
            candidates = sigma_candidates(S3, nontrivial)
            facts.expect("sigma_candidates", _perm_strings(candidates), ["e"])

            ring1 = build(G, close(G, gens, [h1]))
            ring2 = build(G, close(G, gens, [h2]))
            report1, report2 = unit_report(ring1), unit_report(ring2)
            facts.record("quotient_H1", report1.to_dict())
            facts.record("quotient_H2", report2.to_dict())
            facts.expect("size_H1", report1.ring_size, 32)
            facts.expect("size_H2", report2.ring_size, 16)
            facts.expect("units_H1", report1.unit_count, 6)
            facts.expect("units_H2", report2.unit_count, 6)
            facts.expect("identity_criterion_H1", report1.identity_criterion, True)
            facts.expect("identity_criterion_H2", report2.identity_criterion, True)
            facts.expect("H1_in_ideal_of_H2", contains(ring2.ideal, h1), True)
            facts.expect("H2_quotient_is_M2", unit_spanned_iso(ring2.table, matrix_ring(2)) is not None, True)

        return self._report("s3", {"group": "S3", "ideals": ["(H1)", "(H2)"]}, body)

    def _family_report(self, kind: str, n: int) -> VerificationReport:
        family = "sn" if kind == "S" else "an"
        report_id = f"{family}.{n}"
        inputs = {"group": f"{kind}{n}", "tau": "(1,2,3,4,5)", "T": ["e", "(1,3,5,2,4)", "(1,4,2,5,3)"]}

        def body(facts: _Facts) -> Optional[str]:
            step_start = time.time()
            G = symmetric_group(n) if kind == "S" else alternating_group(n)
            iota = Permutation.identity(n)
            tau = cycle(range(1, 6), n)
            T = PermSet.from_perms([iota, tau ** 2, tau ** 3])
            logger.info(f"Step 1: Enumerating {kind}{n} took {time.time() - step_start:.2f}s")

            step_start = time.time()
            normalizer = normalizer_of_set(G, T)
            if kind == "S":
                tail_gens = [cycle([k, k + 1], n) for k in range(6, n)]
                tail_order = factorial(n - 5)
            else:
                tail_gens = [cycle([6, 7, k], n) for k in range(8, n + 1)]
                tail_order = max(1, factorial(n - 5) // 2)
            expected_normalizer = generated_subgroup([tau, parse_cycles("(2,5)(3,4)", n)] + tail_gens)
            facts.expect("normalizer_order", len(normalizer), 10 * tail_order)
            facts.expect("normalizer_is_D10_times_tail", normalizer == expected_normalizer, True)

            candidates = sigma_candidates(G, T)
            tail = generated_subgroup(tail_gens or [iota])
            facts.expect("candidates_are_tail_center", candidates == centralizer_of_set(tail, tail), True)
            expected = ["e"]
            if kind == "S" and n == 7:
                expected.append("(6,7)")
            if kind == "A" and n == 8:
                expected += ["(6,7,8)", "(6,8,7)"]
            facts.expect("sigma_candidates", _perm_strings(candidates), sorted(expected))
            logger.info(f"Step 2: Normalizer and candidates took {time.time() - step_start:.2f}s")

            step_start = time.time()
            IG = index_group(G, on_the_fly=True)
            weight2 = from_permutations(IG, [tau ** 2, tau ** 3])
            crosscheck = n <= min(7, settings.CLOSURE_CROSSCHECK_MAX_N)
            group_gens = standard_generators(kind, n)
            outcomes = []
            obstructed = []
            for sigma in candidates:
                x = from_permutations(IG, [iota, tau ** 2, tau ** 3, sigma])
                outcome = {"sigma": str(sigma), "element": render(x)}
                if sigma.is_identity():
                    outcome["method"] = "direct"
                    outcome["contradiction"] = x.weight() == 2
                else:
                    k = _frobenius_exponent(sigma)
                    outcome["method"] = "frobenius"
                    powered = frobenius_power_of_commuting_sum(IG, [iota, tau ** 2, tau ** 3, sigma], k or 4)
                    outcome["exponent"] = f"2^{k or 4}"
                    outcome["power"] = render(powered)
                    outcome["matches_repeated_squaring"] = power(x, 2 ** (k or 4)) == powered
                    outcome["contradiction"] = k is not None and powered == weight2
                    if k is None:
                        outcome["obstruction"] = (
                            f"sigma has order {sigma.order()}; sigma^(2^k) != iota for every k divisible by 4"
                        )
                        outcome["unchanged"] = powered == x
                        obstructed.append(str(sigma))
                if crosscheck and outcome["contradiction"]:
                    witness = weight2_witness(close(IG, group_gens, [x]))
                    outcome["closure_weight2_witness"] = None if witness is None else [str(w) for w in witness]
                    facts.expect(f"closure_confirms_{sigma}", witness is not None, True)
                outcomes.append(outcome)
            logger.info(f"Step 3: Candidate contradictions took {time.time() - step_start:.2f}s")

            facts.record("candidates", outcomes)
            facts.expect(
                "frobenius_matches_repeated_squaring",
                all(o.get("matches_repeated_squaring", True) for o in outcomes),
                True,
            )
            expected_obstructed = ["(6,7,8)", "(6,8,7)"] if (kind == "A" and n == 8) else []
            facts.expect("obstructed_candidates", sorted(obstructed), expected_obstructed)
            if obstructed:
                facts.expect(
                    "frobenius_power_returns_element",
                    all(o["unchanged"] for o in outcomes if o["sigma"] in obstructed),
                    True,
                )
            facts.expect(
                "contradiction_for_every_unobstructed_candidate",
                all(o["contradiction"] for o in outcomes if o["sigma"] not in obstructed),
                True,
            )
            return "obstructed" if obstructed else None

        return self._report(report_id, inputs, body)

    def cmd_sn(self, max_n: Optional[int] = None) -> List[VerificationReport]:
        max_n = self._check_max_n(max_n)
        return [self._family_report("S", n) for n in range(5, max_n + 1)]

    def cmd_an(self, max_n: Optional[int] = None) -> List[VerificationReport]:
        max_n = self._check_max_n(max_n)
        return [self._family_report("A", n) for n in range(5, max_n + 1)]

    def cmd_s4(self) -> VerificationReport:
        """Two nonisomorphic opposite rings F2[S4]/J1, F2[S4]/J2 with unit group S4"""
        def body(facts: _Facts) -> None:
            step_start = time.time()
            S4 = symmetric_group(4)
            G = index_group(S4)
            gens = standard_generators("S", 4)
            def p(text: str) -> Permutation:
                return parse_cycles(text, 4)

            copies = {}
            for fixed in range(1, 5):
                points = [q for q in range(1, 5) if q != fixed]
                H = generated_subgroup([cycle(points[:2], 4), cycle(points, 4)])
                T = PermSet.from_perms([h for h in H if not h.is_identity()])
                copies[f"fix {fixed}"] = _perm_strings(sigma_candidates(S4, T))
            facts.record("stabilizer_copies", copies)
            facts.expect("stabilizer_candidates_trivial", all(c == ["e"] for c in copies.values()), True)
            logger.info(f"Step 1: Stabilizer copies took {time.time() - step_start:.2f}s")

            step_start = time.time()
            base = from_permutations(G, [p("e"), p("(2,4)"), p("(1,2)(3,4)")])
            inverse = is_unit(base)
            stated = from_permutations(G, [p("e"), p("(1,2,3,4)"), p("(1,4,3,2)"), p("(1,4)(2,3)"), p("(1,3)")])
            facts.expect("base_is_unit", inverse.is_unit, True)
            facts.expect("base_inverse", inverse.inverse == stated, True)

            h1 = from_permutations(G, [q for q in S4 if q(3) == 3])
            survivors = []
            for sigma in S4:
                ideal = close(G, gens, [base + basis_element(G, sigma), h1])
                if weight2_witness(ideal) is None:
                    survivors.append(sigma)
            facts.expect("surviving_sigmas", _perm_strings(survivors), ["(1,2,3,4)", "(1,4,3,2)"])
            logger.info(f"Step 2: Sigma search took {time.time() - step_start:.2f}s")

            step_start = time.time()
            j1 = close(G, gens, [base + basis_element(G, p("(1,2,3,4)")), h1])
            j2 = close(G, gens, [base + basis_element(G, p("(1,4,3,2)")), h1])
            ring1, ring2 = build(G, j1), build(G, j2)
            report1, report2 = unit_report(ring1), unit_report(ring2)
            facts.record("R1", report1.to_dict())
            facts.record("R2", report2.to_dict())
            for name, report in (("R1", report1), ("R2", report2)):
                facts.expect(f"size_{name}", report.ring_size, 128)
                facts.expect(f"units_{name}", report.unit_count, 24)
                facts.expect(f"identity_criterion_{name}", report.identity_criterion, True)
                facts.expect(f"spectrum_{name}", report.spectrum, order_spectrum(S4))
            logger.info(f"Step 3: Quotients R1, R2 took {time.time() - step_start:.2f}s")

            step_start = time.time()
            witness = quotient_iso_by_conjugacy(j1, j2, all_automorphisms_inner=True)
            facts.expect("R1_isomorphic_to_R2", witness is not None, False)
            facts.expect(
                "J1_contains_(1,2,3,4)+(1,4,3,2)",
                contains(j1, from_permutations(G, [p("(1,2,3,4)"), p("(1,4,3,2)")])),
                False,
            )
            opposite = antipode_ideal(j1)
            facts.expect("antipode_of_J1_is_J2", opposite == j2, True)
            witness = quotient_iso_by_conjugacy(opposite, j2, all_automorphisms_inner=True)
            facts.expect("R1_opposite_conjugate_to_R2", witness is not None, True)
            facts.record("R1_opposite_witness", None if witness is None else str(witness))
            logger.info(f"Step 4: Isomorphism tests took {time.time() - step_start:.2f}s")

            step_start = time.time()
            scan = max_units_over_principal_quotients(ring1)
            facts.record("principal_quotients", {
                "distinct_ideals": scan.distinct_ideals,
                "unit_counts": list(scan.unit_counts),
                "argmax": scan.witness,
            })
            facts.expect("max_units_proper_principal_quotient", scan.max_units, 6)
            logger.info(f"Step 5: Principal quotient scan took {time.time() - step_start:.2f}s")

        inputs = {
            "group": "S4",
            "x1": "e + (2,4) + (1,2)(3,4) + sigma",
            "H1": "sum of S3 on {1,2,3}",
        }
        return self._report("s4", inputs, body)

    def cmd_a4(self) -> VerificationReport:
        """F2[A4]/J and the Hurwitz quaternions mod 2 both have unit group A4"""
        def body(facts: _Facts) -> None:
            A4 = alternating_group(4)
            G = index_group(A4)
            gens = standard_generators("A", 4)
            def p(text: str) -> Permutation:
                return parse_cycles(text, 4)

            spectrum_a4 = order_spectrum(A4)

            g1 = from_permutations(G, [p("e"), p("(1,2)(3,4)"), p("(1,3)(2,4)"), p("(1,4)(2,3)")])
            g2 = from_permutations(G, [p("e"), p("(1,3,2)"), p("(1,2)(3,4)"), p("(1,4,3)")])
            report = unit_report(build(G, close(G, gens, [g1, g2])))
            facts.record("quotient_J", report.to_dict())
            facts.expect("size_J", report.ring_size, 32)
            facts.expect("units_J", report.unit_count, 12)
            facts.expect("identity_criterion_J", report.identity_criterion, True)
            facts.expect("spectrum_J", report.spectrum, spectrum_a4)

            hurwitz = hurwitz_mod2()
            hurwitz_units = table_unit_report(hurwitz)
            facts.record("hurwitz", hurwitz_units.to_dict())
            facts.expect("hurwitz_size", hurwitz_units.ring_size, 16)
            facts.expect("hurwitz_units", hurwitz_units.unit_count, 12)

            spectra = load_order12_spectra()
            facts.expect("order12_spectra_distinct", len({str(s) for s in spectra.values()}), len(spectra))
            matching = sorted(name for name, s in spectra.items() if s == hurwitz_units.spectrum)
            facts.expect("hurwitz_unit_group", matching, ["A4"])
            facts.expect("A4_spectrum_in_fixture", spectra.get("A4"), spectrum_a4)

            remark = close(G, gens, [from_permutations(G, [p("e"), p("(1,2,3)"), p("(1,3,2)")])])
            remark_ring = build(G, remark)
            facts.expect("remark_quotient_size", remark_ring.size, 16)
            iso = unit_spanned_iso(hurwitz, remark_ring.table)
            facts.expect("hurwitz_isomorphic_to_remark_quotient", iso is not None, True)
            if iso is not None:
                facts.record("isomorphism_images", list(iso.images))

        inputs = {
            "group": "A4",
            "J": ["e + (1,2)(3,4) + (1,3)(2,4) + (1,4)(2,3)", "e + (1,3,2) + (1,2)(3,4) + (1,4,3)"],
            "hurwitz_fixture": "data/hurwitz_mod2.txt",
        }
        return self._report("a4", inputs, body)

    def cmd_a8(self) -> VerificationReport:
        """GL4(F2) has the order, element-order spectrum and simplicity of A8"""
        def body(facts: _Facts) -> None:
            step_start = time.time()
            units = table_unit_report(matrix_ring(4))
            logger.info(f"Step 1: Units of M4(F2) took {time.time() - step_start:.2f}s")

            step_start = time.time()
            result = a8_identification(units.group)
            logger.info(f"Step 2: Comparison with A8 took {time.time() - step_start:.2f}s")

            facts.expect("order_GL4", result.order_units, 20160)
            facts.expect("order_A8", result.order_a8, 20160)
            facts.expect("spectrum_GL4_equals_A8", result.spectrum_units, result.spectrum_a8)
            facts.expect("GL4_simple", result.simple_units, True)
            facts.expect("A8_simple", result.simple_a8, True)
            facts.expect("order_15_in_both", result.order_15_in_both, True)
            facts.record("identification", result.to_dict())

        return self._report("a8", {"ring": "M4(F2)", "group": "A8"}, body)

    def cmd_all(self, max_n: Optional[int] = None,
                threads: Optional[int] = None) -> List[VerificationReport]:
        """Every claim; reports come back in a fixed order whatever the thread count"""
        max_n = self._check_max_n(max_n)
        threads = settings.THREADS if threads is None else threads
        if threads < 1:
            raise UnitGroupLabError(f"threads must be >= 1, got {threads}")

        jobs: List[Callable[[], Any]] = [
            self.cmd_c5,
            self.cmd_s3,
            lambda: self.cmd_sn(max_n),
            lambda: self.cmd_an(max_n),
            self.cmd_s4,
            self.cmd_a4,
            self.cmd_a8,
        ]
        if threads == 1:
            results = [job() for job in jobs]
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(lambda job: job(), jobs))

        reports: List[VerificationReport] = []
        for result in results:
            reports.extend(result if isinstance(result, list) else [result])
        return reports

    def run(self, claim: str, max_n: Optional[int] = None,
            threads: Optional[int] = None) -> List[VerificationReport]:
        """Dispatch a claim name (c5, s3, sn, an, s4, a4, a8, all)"""
        if claim not in CLAIMS:
            raise UnitGroupLabError(f"Unknown claim {claim!r}; expected one of {', '.join(CLAIMS)}")
        if claim == "all":
            return self.cmd_all(max_n, threads)
        if claim == "sn":
            return self.cmd_sn(max_n)
        if claim == "an":
            return self.cmd_an(max_n)
        return [getattr(self, f"cmd_{claim}")()]


# Global instance
verification_service = VerificationService()
