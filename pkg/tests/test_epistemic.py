import numpy as np
import pytest

from eblab.core import (
    boolean_algebra,
    elements_of,
    godel_chain,
    mask_of,
    mv_chain,
    subalgebras,
)
from eblab.epistemic import (
    CRelCompletePair,
    check_c_relatively_complete,
    enumerate_ebl,
    epistemic_structure,
    identity_structure,
    image_subalgebra,
    pair_from_structure,
    structure_from_pair,
    verify_derived,
    verify_ebl,
    verify_focal_formula,
    verify_monadic,
)
from eblab.errors import (
    AxiomError,
    MalformedInputError,
    NotASubalgebraError,
    PreconditionError,
    SizeLimitError,
)

from helpers import ebl_pairs_reference


@pytest.fixture(scope="module")
def example_structure():
    """The 4-chain with forall = exists collapsing below 2/3."""
    return epistemic_structure(mv_chain(4), [0, 0, 3, 3], [0, 0, 3, 3], "example")


class TestVerifyEbl:
    def test_worked_example_satisfies_all_axioms(self):
        report = verify_ebl(mv_chain(4), [0, 0, 3, 3], [0, 0, 3, 3])
        assert report.ok
        assert [e.axiom for e in report.entries] == [
            "EA", "EE", "E1", "E2", "E3", "E4", "E4a", "E4b", "E5",
        ]

    def test_identity_operators_always_valid(self):
        for alg in (mv_chain(5), godel_chain(4), boolean_algebra(2)):
            idx = list(range(alg.n))
            assert verify_ebl(alg, idx, idx).ok

    def test_e2_failure_carries_first_witness(self):
        report = verify_ebl(mv_chain(4), [0, 0, 3, 3], [0, 3, 3, 3])
        entry = report.entry("E2")
        assert not entry.holds
        # direct evaluation of A(a -> A b) vs E a -> A b over all pairs
        alg = mv_chain(4)
        f = np.array([0, 0, 3, 3])
        e = np.array([0, 3, 3, 3])
        expected = None
        for a in range(4):
            for b in range(4):
                if f[alg.impl[a, f[b]]] != alg.impl[e[a], f[b]]:
                    expected = {"a": a, "b": b}
                    break
            if expected:
                break
        assert entry.witness == expected == {"a": 1, "b": 0}

    def test_malformed_tables(self):
        with pytest.raises(MalformedInputError):
            verify_ebl(mv_chain(4), [0, 0, 3], [0, 0, 3, 3])
        with pytest.raises(MalformedInputError):
            verify_ebl(mv_chain(4), [0, 0, 3, 9], [0, 0, 3, 3])

    def test_factory_rejects_invalid_tables(self):
        with pytest.raises(AxiomError):
            epistemic_structure(mv_chain(4), [0, 0, 3, 3], [0, 3, 3, 3])


class TestDerived(object):
    def test_example_passes_every_derived_law(self, example_structure):
        report = verify_derived(example_structure)
        assert report.ok
        assert len(report.entries) == 16  # E6..E19 plus both monotonicities

    def test_identity_structure_idempotence(self):
        st = identity_structure(godel_chain(3))
        assert verify_derived(st).entry("E8").holds

    def test_negation_swap_instance(self, example_structure):
        # forall(neg 1/3) = forall(2/3) = top and neg(exists 1/3) = neg 0 = top
        alg = example_structure.algebra
        f, e = example_structure.forall, example_structure.exists
        assert f[alg.neg[1]] == 3
        assert alg.neg[e[1]] == 3

    def test_soundness_sweep_small(self):
        for alg in (mv_chain(3), mv_chain(4), godel_chain(3), boolean_algebra(2)):
            for st in enumerate_ebl(alg):
                assert verify_derived(st).ok


class TestMonadic:
    def test_example_fails_m1_at_two_thirds(self, example_structure):
        entry = verify_monadic(example_structure).entry("M1")
        assert not entry.holds and entry.witness == {"a": 2}

    def test_identity_is_monadic(self):
        st = identity_structure(mv_chain(4))
        assert verify_monadic(st).ok

    def test_crisp_mv4_full_report(self):
        st = epistemic_structure(mv_chain(4), [0, 0, 0, 3], [0, 3, 3, 3], "crisp")
        report = verify_monadic(st)
        assert report.entry("M1").holds
        assert not report.entry("M5").holds  # E(1/3 * 1/3) = 0 but E1/3 * E1/3 = 1


class TestImageAndFocal:
    def test_example_image(self, example_structure):
        assert elements_of(image_subalgebra(example_structure)) == (0, 3)

    def test_identity_image_is_carrier(self):
        st = identity_structure(mv_chain(5))
        assert elements_of(image_subalgebra(st)) == tuple(range(5))

    def test_crisp_image_on_godel3(self):
        st = epistemic_structure(godel_chain(3), [0, 0, 2], [0, 2, 2])
        assert elements_of(image_subalgebra(st)) == (0, 2)

    def test_focal_values(self, example_structure):
        assert example_structure.focal == 2
        assert identity_structure(mv_chain(4)).focal == 3
        crisp = epistemic_structure(mv_chain(4), [0, 0, 0, 3], [0, 3, 3, 3])
        assert crisp.focal == 3

    def test_focal_formula(self, example_structure):
        assert verify_focal_formula(example_structure) == (True, None)
        ident = identity_structure(godel_chain(4))
        assert verify_focal_formula(ident) == (True, None)

    def test_focal_formula_sweep(self):
        for alg in (mv_chain(4), mv_chain(5), godel_chain(4), boolean_algebra(2)):
            for st in enumerate_ebl(alg):
                assert verify_focal_formula(st) == (True, None)


class TestRelativeCompleteness:
    def test_paper_pair_passes(self):
        report = check_c_relatively_complete(mv_chain(4), mask_of([0, 3]), 2)
        assert report.ok

    def test_whole_with_top_passes_everywhere(self):
        for alg in (mv_chain(4), godel_chain(3), boolean_algebra(2)):
            mask = mask_of(range(alg.n))
            assert check_c_relatively_complete(alg, mask, alg.top).ok

    def test_whole_with_small_c_fails_collapse(self):
        report = check_c_relatively_complete(mv_chain(4), mask_of(range(4)), 2)
        entry = report.entry("e2")
        assert not entry.holds and entry.witness == {"a": 1}

    def test_rejects_non_subalgebra(self):
        with pytest.raises(NotASubalgebraError):
            check_c_relatively_complete(mv_chain(4), mask_of([0, 1, 3]), 2)


class TestReconstruction:
    def test_example_pair_rebuilds_known_tables(self):
        pair = CRelCompletePair(mv_chain(4), mask_of([0, 3]), 2)
        st = structure_from_pair(pair)
        assert st.forall.tolist() == [0, 0, 3, 3]
        assert st.exists.tolist() == [0, 0, 3, 3]

    def test_whole_top_gives_identity(self):
        for alg in (mv_chain(4), godel_chain(4)):
            pair = CRelCompletePair(alg, mask_of(range(alg.n)), alg.top)
            st = structure_from_pair(pair)
            assert st.forall.tolist() == list(range(alg.n))
            assert st.exists.tolist() == list(range(alg.n))

    def test_godel_pair(self):
        st = structure_from_pair(CRelCompletePair(godel_chain(3), mask_of([0, 2]), 1))
        assert st.forall.tolist() == [0, 2, 2]
        assert st.exists.tolist() == [0, 2, 2]

    def test_invalid_pair_raises(self):
        with pytest.raises(PreconditionError):
            structure_from_pair(CRelCompletePair(mv_chain(4), mask_of([0, 3]), 0))

    def test_pair_from_structure(self, example_structure):
        pair = pair_from_structure(example_structure)
        assert elements_of(pair.subalgebra) == (0, 3)
        assert pair.c == 2

    def test_roundtrip_both_ways_on_small_algebras(self):
        for alg in (mv_chain(4), mv_chain(5), godel_chain(4)):
            for mask in subalgebras(alg):
                for c in range(alg.n):
                    if not check_c_relatively_complete(alg, mask, c).ok:
                        continue
                    st = structure_from_pair(CRelCompletePair(alg, mask, c))
                    back = pair_from_structure(st)
                    assert (back.subalgebra, back.c) == (mask, c)
            for st in enumerate_ebl(alg):
                again = structure_from_pair(pair_from_structure(st))
                assert again.key() == st.key()


class TestEnumeration:
    @pytest.mark.parametrize(
        "alg,count",
        [(mv_chain(2), 1), (mv_chain(3), 2), (mv_chain(4), 3), (godel_chain(3), 3)],
    )
    def test_counts_match_brute(self, alg, count):
        structures = enumerate_ebl(alg, method="both")
        assert len(structures) == count

    def test_reference_scan_agrees(self):
        # the slowest possible oracle: every table pair through verify_ebl
        for alg in (mv_chain(2), mv_chain(3), godel_chain(3)):
            expected = ebl_pairs_reference(alg)
            got = [s.key() for s in enumerate_ebl(alg, method="both")]
            assert got == expected

    def test_monotone_and_idempotent_operators(self):
        for alg in (mv_chain(4), godel_chain(4)):
            for st in enumerate_ebl(alg):
                f, e = st.forall, st.exists
                assert np.array_equal(f[f], f) and np.array_equal(e[e], e)
                for a in range(alg.n):
                    for b in range(alg.n):
                        if alg.leq[a, b]:
                            assert alg.leq[f[a], f[b]] and alg.leq[e[a], e[b]]

    def test_brute_budget(self):
        with pytest.raises(SizeLimitError):
            enumerate_ebl(mv_chain(5), method="brute", pair_budget=1000)

    def test_workers_do_not_change_results(self):
        alg = mv_chain(5)
        seq = [s.key() for s in enumerate_ebl(alg, workers=1)]
        par = [s.key() for s in enumerate_ebl(alg, workers=4)]
        assert seq == par


def test_failure_witnesses_replay():
    # every failing report entry must be reproducible by re-running just that
    # axiom check on the same tables
    import random

    from eblab.epistemic import AXIOM_CHECKS

    rng = random.Random(13)
    alg = mv_chain(4)
    for _ in range(200):
        f = np.array([rng.randrange(4) for _ in range(4)])
        e = np.array([rng.randrange(4) for _ in range(4)])
        for entry in verify_ebl(alg, f, e).failures:
            assert AXIOM_CHECKS[entry.axiom](alg, f, e) == entry.witness
