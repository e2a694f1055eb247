import pytest

from eblab.core import boolean_algebra, direct_product, godel_chain, mv_chain
from eblab.correspond import (
    bimodal_structure_set,
    boolean_witness,
    derived_forall,
    equivalence_boolean,
    equivalence_godel,
    family_check,
    forall_filter_equivalence,
    godel_witness,
    monadic_subset_check,
    pseudomonadic_structure_set,
    verify_bimodal_godel,
    verify_pseudomonadic,
)
from eblab.epistemic import enumerate_ebl, verify_ebl
from eblab.errors import NotApplicableError
from eblab.filters import enumerate_filters


class TestClassifiers:
    def test_mv3_is_not_boolean(self):
        assert boolean_witness(mv_chain(3)) == {"a": 1}

    def test_mv4_is_not_godel(self):
        assert godel_witness(mv_chain(4)) == {"a": 1}

    def test_boolean_and_godel_accept_their_families(self):
        assert boolean_witness(boolean_algebra(3)) is None
        assert godel_witness(godel_chain(5)) is None
        assert godel_witness(direct_product(godel_chain(2), godel_chain(3))) is None


class TestPseudomonadic:
    def test_identity_exists_on_two_chain(self):
        report = verify_pseudomonadic(boolean_algebra(1), [0, 1])
        assert report.ok

    def test_near_constant_exists_on_square(self):
        report = verify_pseudomonadic(boolean_algebra(2), [0, 3, 3, 3])
        assert report.ok
        assert report.entry("P3").holds  # checked exhaustively over all pairs

    def test_non_boolean_carrier_rejected(self):
        with pytest.raises(NotApplicableError) as info:
            verify_pseudomonadic(mv_chain(3), [0, 1, 2])
        assert "a=1" in str(info.value)

    def test_derived_forall_table(self):
        alg = boolean_algebra(2)
        assert derived_forall(alg, alg.neg[alg.neg]).tolist() == [0, 1, 2, 3]

    def test_every_accepted_table_satisfies_derived_laws(self):
        for k in (1, 2):
            alg = boolean_algebra(k)
            for _, etab in pseudomonadic_structure_set(alg):
                assert verify_pseudomonadic(alg, list(etab)).ok


class TestBimodalGodel:
    def test_identity_operators(self):
        idx = [0, 1, 2]
        assert verify_bimodal_godel(godel_chain(3), idx, idx).ok

    def test_focused_pair(self):
        assert verify_bimodal_godel(godel_chain(3), [0, 2, 2], [0, 2, 2]).ok

    def test_non_godel_carrier_rejected(self):
        with pytest.raises(NotApplicableError) as info:
            verify_bimodal_godel(mv_chain(4), [0, 1, 2, 3], [0, 1, 2, 3])
        assert "a=1" in str(info.value)

    def test_failing_pair_names_the_axiom(self):
        # E 1 -> A 0 = 0 -> 0 = top, but A(1 -> 0) = A 0 = 0: seriality breaks
        report = verify_bimodal_godel(godel_chain(3), [0, 0, 2], [0, 0, 2])
        entry = report.entry("G3")
        assert not entry.holds and entry.witness == {"x": 1, "y": 0}


class TestEquivalences:
    @pytest.mark.parametrize("k,count", [(1, 1), (2, 4)])
    def test_boolean_equivalence_counts(self, k, count):
        res = equivalence_boolean(boolean_algebra(k), method="both")
        assert res.equal
        assert len(res.ebl_structures) == count

    def test_boolean_sets_literally_match_brute_pairs(self):
        alg = boolean_algebra(2)
        res = equivalence_boolean(alg, method="brute")
        assert res.equal
        assert res.family_structures == tuple(s.key() for s in enumerate_ebl(alg, "brute"))

    @pytest.mark.parametrize(
        "alg,count",
        [(godel_chain(2), 1), (godel_chain(3), 3),
         (direct_product(godel_chain(2), godel_chain(2)), 4)],
    )
    def test_godel_equivalence(self, alg, count):
        res = equivalence_godel(alg, method="both")
        assert res.equal
        assert len(res.ebl_structures) == count

    def test_godel_family_side_is_really_bimodal(self):
        alg = godel_chain(3)
        for f, e in bimodal_structure_set(alg):
            assert verify_bimodal_godel(alg, list(f), list(e)).ok
            assert verify_ebl(alg, list(f), list(e)).ok

    def test_monadic_subset_strict_on_mv4(self):
        res = monadic_subset_check(mv_chain(4))
        assert res.equal  # subset relation holds
        assert len(res.family_structures) == 1
        assert len(res.ebl_structures) == 3

    def test_godel_five_chain_with_raised_budget(self):
        # the nominal pair space is 5^5 * 5^5; the scan prunes per table, so a
        # raised budget keeps this cheap
        res = equivalence_godel(godel_chain(5), method="pairs", pair_budget=10**7)
        assert res.equal

    def test_monadic_subset_on_every_tested_algebra(self):
        targets = [mv_chain(2), mv_chain(3), mv_chain(4), godel_chain(2),
                   godel_chain(3), godel_chain(4), boolean_algebra(2),
                   direct_product(godel_chain(2), godel_chain(2))]
        for alg in targets:
            assert monadic_subset_check(alg).equal, alg.name

    def test_wrong_carrier_errors(self):
        with pytest.raises(NotApplicableError):
            equivalence_boolean(mv_chain(3))
        with pytest.raises(NotApplicableError):
            equivalence_godel(mv_chain(4))


class TestFamilyCheck:
    def test_inapplicable_carries_classifier_witness(self):
        check = family_check(mv_chain(3), [0, 1, 2], [0, 1, 2], "pseudomonadic")
        assert not check.applicable and check.witness == {"a": 1}
        assert check.report is None and not check.ok

    def test_applicable_with_report(self):
        check = family_check(godel_chain(3), [0, 2, 2], [0, 2, 2], "godel-kd45")
        assert check.applicable and check.ok

    def test_monadic_family_applies_everywhere(self):
        check = family_check(mv_chain(4), [0, 0, 3, 3], [0, 0, 3, 3], "monadic")
        assert check.applicable and not check.ok
        assert not check.report.entry("M1").holds


class TestForallFilterEquivalence:
    def test_identity_structure_top_filter(self):
        alg = boolean_algebra(2)
        st = enumerate_ebl(alg)[-1]  # identity has the largest key? use explicit sweep
        ok, witness = forall_filter_equivalence(st, 1 << alg.top)
        assert ok and witness is None

    def test_full_sweep_boolean_square(self):
        alg = boolean_algebra(2)
        for st in enumerate_ebl(alg):
            for mask in enumerate_filters(alg):
                assert forall_filter_equivalence(st, mask) == (True, None)

    def test_full_sweep_three_atoms(self):
        alg = boolean_algebra(3)
        for st in enumerate_ebl(alg):
            for mask in enumerate_filters(alg):
                assert forall_filter_equivalence(st, mask) == (True, None)

    def test_non_boolean_rejected(self):
        st = enumerate_ebl(mv_chain(3))[0]
        with pytest.raises(NotApplicableError):
            forall_filter_equivalence(st, 1 << 2)
