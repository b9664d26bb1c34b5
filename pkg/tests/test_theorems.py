"""Theorem verdicts: two-composite structure, case analysis, dichotomy,
solubility sweep, and the projective-line class-size formula."""

import math

from hypothesis import given, settings, strategies as st

from csgroups.catalog import fixture_group, iter_catalog
from csgroups.classes import arithmetic_profile, conjugacy_classes, is_prime
from csgroups.construct import (
    alternating,
    cyclic,
    direct_product,
    frobenius_pq,
    quaternion8,
    symmetric,
)
from csgroups.theorems import (
    GroupAnalysis,
    _labeling_by_gcd,
    check_chillag_herzog,
    check_psl_formula,
    check_theorem_A,
    check_theorem_C,
    conjecture_B_findings,
    conjecture_B_sweep,
    psl_formula_set,
)


def search_labeling(cs):
    """Reference labeling by exhaustive search over prime assignments."""
    primes = sorted(s for s in cs if is_prime(s))
    comps = sorted(s for s in cs if arithmetic_profile(s).is_composite)
    if len(cs) != 6 or len(primes) != 3 or len(comps) != 2:
        return None
    for p1 in primes:
        rest = [p for p in primes if p != p1]
        for p2, p3 in (rest, rest[::-1]):
            if sorted([p1 * p2, p1 * p3]) == comps:
                return {"p1": p1, "p2": p2, "p3": p3,
                        "m": p1 * p2, "n": p1 * p3}
    return None


class TestTheoremA:
    def test_end_to_end_on_quaternion_times_frobenius(self):
        G = direct_product(quaternion8(), frobenius_pq(7, 3))
        verdict = check_theorem_A(G)
        assert verdict.hypotheses_apply
        assert verdict.status() == "pass"
        assert verdict.witnesses["p1"] == 2
        assert verdict.witnesses["p2"] == 3
        assert verdict.witnesses["p3"] == 7
        assert verdict.witnesses["m"] == 6
        assert verdict.witnesses["n"] == 14
        assert verdict.witnesses["P_order"] == 8
        assert verdict.witnesses["H_order"] == 21

    def test_does_not_apply_without_two_composites(self):
        assert not check_theorem_A(symmetric(3)).hypotheses_apply
        assert not check_theorem_A(cyclic(10)).hypotheses_apply

    def test_gcd_labeling_matches_search(self):
        for entry in iter_catalog():
            cs = conjugacy_classes(entry.group).cs_set
            assert _labeling_by_gcd(cs) == search_labeling(cs)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.sampled_from([2, 3, 5, 7, 11, 13]),
                    min_size=3, max_size=3, unique=True))
    def test_gcd_labeling_on_synthetic_sets(self, primes):
        p1, p2, p3 = primes
        cs = tuple(sorted({1, p1, p2, p3, p1 * p2, p1 * p3}))
        lab = _labeling_by_gcd(cs)
        ref = search_labeling(cs)
        assert (lab is None) == (ref is None)
        if lab is not None:
            assert lab == ref
            assert lab["p1"] == math.gcd(lab["m"], lab["n"])


class TestTheoremC:
    def test_case_a_fixture(self):
        verdict = check_theorem_C(fixture_group("g480_166"))
        assert verdict.status() == "pass"
        assert verdict.witnesses["case"] == "a"
        assert verdict.witnesses["p"] == 2
        assert verdict.witnesses["a"] == 2
        assert verdict.witnesses["n"] == 60
        assert verdict.witnesses["F2_index"] == 1

    def test_case_b_fixture(self):
        verdict = check_theorem_C(fixture_group("g160_234"))
        assert verdict.status() == "pass"
        assert verdict.witnesses["case"] == "b"
        assert verdict.witnesses["q"] == 5
        assert verdict.witnesses["p"] == 2
        assert verdict.witnesses["a"] == 5
        assert verdict.witnesses["b"] == 2
        assert verdict.witnesses["F2_index"] == 2

    def test_case_c_fixture_small(self):
        verdict = check_theorem_C(fixture_group("g162_5"))
        assert verdict.status() == "pass"
        assert verdict.witnesses["case"] == "c"
        assert verdict.witnesses["q"] == 2
        assert verdict.witnesses["n"] == 6
        assert verdict.witnesses["n_shape"] == "q*p^1"

    def test_does_not_apply_without_prime_power_composite(self):
        # cs(q8 x F21) = {1,2,3,6,7,14}: composites 6 and 14, neither a
        # proper prime power
        G = direct_product(quaternion8(), frobenius_pq(7, 3))
        assert not check_theorem_C(G).hypotheses_apply

    def test_case_assignment_is_exclusive_across_catalog(self):
        from csgroups.theorems import _match_case_patterns
        for entry in iter_catalog():
            verdict = check_theorem_C(entry.group)
            if not verdict.hypotheses_apply or verdict.incomplete:
                continue
            cs = conjugacy_classes(entry.group).cs_set
            p, a, n = (verdict.witnesses["p"], verdict.witnesses["a"],
                       verdict.witnesses["n"])
            matches = _match_case_patterns(cs, p, p ** a, n)
            assert len(matches) == 1


class TestChillagHerzog:
    def test_p_group_branch(self):
        verdict = check_chillag_herzog(quaternion8())
        assert verdict.status() == "pass"
        assert verdict.witnesses["branch"] == "p-group"

    def test_frobenius_branch(self):
        verdict = check_chillag_herzog(symmetric(3))
        assert verdict.status() == "pass"
        assert verdict.witnesses["branch"] == "frobenius"
        verdict = check_chillag_herzog(frobenius_pq(7, 3))
        assert verdict.status() == "pass"

    def test_abelian_branch(self):
        verdict = check_chillag_herzog(cyclic(30))
        assert verdict.status() == "pass"
        assert verdict.witnesses["branch"] == "abelian"

    def test_does_not_apply_with_composites(self):
        assert not check_chillag_herzog(fixture_group("g480_166")).hypotheses_apply

    def test_every_zero_composite_catalog_group_passes(self):
        for entry in iter_catalog():
            verdict = check_chillag_herzog(entry.group)
            if verdict.hypotheses_apply:
                assert verdict.status() == "pass", entry.name


class TestConjectureB:
    def test_full_catalog_has_no_findings(self):
        findings = conjecture_B_sweep(e.group for e in iter_catalog())
        assert findings == []

    def test_three_composites_out_of_scope(self):
        assert conjecture_B_findings(alternating(5)) == []

    def test_abelian_out_of_scope(self):
        assert conjecture_B_findings(cyclic(24)) == []

    def test_two_composite_groups_in_catalog_are_soluble(self):
        seen = 0
        for entry in iter_catalog():
            analysis = GroupAnalysis(entry.group)
            _, composites = analysis.split
            if len(composites) == 2:
                seen += 1
                assert analysis.soluble, entry.name
        assert seen > 0


class TestPslFormula:
    def test_formula_values(self):
        assert psl_formula_set(2) == (1, 12, 15, 20)
        assert psl_formula_set(3) == (1, 56, 63, 72)

    def test_a2_matches_alternating_5(self):
        verdict = check_psl_formula(2)
        assert verdict.status() == "pass"

    def test_a3_matches_fixture(self):
        verdict = check_psl_formula(3)
        assert verdict.status() == "pass"
        assert verdict.witnesses["order"] == 504

    def test_out_of_range(self):
        import pytest
        with pytest.raises(ValueError):
            check_psl_formula(4)
