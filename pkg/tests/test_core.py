import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eblab.core import (
    bl_algebra,
    boolean_algebra,
    direct_product,
    elements_of,
    godel_chain,
    is_isomorphic,
    is_subalgebra,
    mask_of,
    mv_chain,
    ordinal_sum,
    subalgebras,
    verify_bl,
)
from eblab.errors import (
    AxiomError,
    InvalidSizeError,
    MalformedInputError,
    NotAChainError,
    SizeLimitError,
)

from helpers import is_iso_oracle, residuum_oracle, subalgebras_oracle


class TestMvChain:
    def test_two_element_fusion_is_meet(self):
        alg = mv_chain(2)
        assert np.array_equal(alg.mult, alg.meet)

    def test_residuum_value_against_oracle(self):
        alg = mv_chain(4)
        # 2/3 -> 1/3 = 2/3, recomputed as max{x : x * 2 <= 1}
        assert residuum_oracle(alg, 2, 1) == 2
        assert alg.impl[2, 1] == 2

    def test_square_of_two_thirds(self):
        alg = mv_chain(4)
        assert alg.mult[2, 2] == 1
        # cross-check: the residuation adjoint recovers the same table
        for a in range(4):
            for b in range(4):
                assert alg.impl[a, b] == residuum_oracle(alg, a, b)

    def test_involutive_classifier(self):
        assert mv_chain(5).classifiers["involutive"]

    def test_invalid_size(self):
        with pytest.raises(InvalidSizeError):
            mv_chain(1)


class TestGodelChain:
    def test_residuum_drops_to_consequent(self):
        alg = godel_chain(3)
        assert residuum_oracle(alg, 2, 1) == 1
        assert alg.impl[2, 1] == 1

    def test_idempotent_fusion(self):
        alg = godel_chain(6)
        idx = np.arange(6)
        assert np.array_equal(alg.mult[idx, idx], idx)
        assert alg.classifiers["idempotent"]

    def test_two_element_chains_coincide(self):
        g, m = godel_chain(2), mv_chain(2)
        assert g.table_key() == m.table_key()


class TestBooleanAlgebra:
    def test_one_atom_is_the_two_chain(self):
        assert boolean_algebra(1).table_key() == mv_chain(2).table_key()

    def test_impl_is_complement_or(self):
        alg = boolean_algebra(2)
        assert alg.impl[0b10, 0b01] == 0b01
        for a in range(4):
            for b in range(4):
                assert alg.impl[a, b] == residuum_oracle(alg, a, b)

    def test_complementation(self):
        alg = boolean_algebra(2)
        idx = np.arange(4)
        assert np.all(alg.join[idx, alg.neg] == alg.top)
        assert np.all(alg.meet[idx, alg.neg] == alg.bot)
        assert alg.classifiers["boolean"]

    def test_size_cap(self):
        with pytest.raises(SizeLimitError):
            boolean_algebra(5, size_cap=16)


class TestDirectProduct:
    def test_product_of_two_chains_is_boolean_square(self):
        prod = direct_product(mv_chain(2), mv_chain(2))
        assert is_isomorphic(prod, boolean_algebra(2)) is not None
        assert is_iso_oracle(prod, boolean_algebra(2))

    def test_top_encoding(self):
        left, right = mv_chain(3), godel_chain(4)
        prod = direct_product(left, right)
        assert prod.top == left.top * right.n + right.top
        assert prod.bot == left.bot * right.n + right.bot

    def test_godel_product_stays_idempotent(self):
        prod = direct_product(godel_chain(2), godel_chain(3))
        assert np.array_equal(prod.mult, prod.meet)

    def test_size_cap(self):
        with pytest.raises(SizeLimitError):
            direct_product(mv_chain(10), mv_chain(10), size_cap=50)


class TestOrdinalSum:
    def test_single_summand_is_identity(self):
        assert ordinal_sum([mv_chain(3)]).table_key() == mv_chain(3).table_key()

    def test_two_squares_make_godel_three(self):
        summed = ordinal_sum([mv_chain(2), mv_chain(2)])
        assert is_isomorphic(summed, godel_chain(3)) is not None
        assert is_iso_oracle(summed, godel_chain(3))

    def test_mv2_plus_mv3_tables(self):
        # hand evaluation of the case split: 0 < a < b < 1 with a, b the
        # bottom/middle of the second summand, so b * b = a and b -> a = b
        alg = ordinal_sum([mv_chain(2), mv_chain(3)])
        assert alg.n == 4
        expected_mult = [
            [0, 0, 0, 0],
            [0, 1, 1, 1],
            [0, 1, 1, 2],
            [0, 1, 2, 3],
        ]
        expected_impl = [
            [3, 3, 3, 3],
            [0, 3, 3, 3],
            [0, 2, 3, 3],
            [0, 1, 2, 3],
        ]
        assert alg.mult.tolist() == expected_mult
        assert alg.impl.tolist() == expected_impl
        for a in range(4):
            for b in range(4):
                assert alg.impl[a, b] == residuum_oracle(alg, a, b)

    def test_rejects_non_chain_component(self):
        with pytest.raises(NotAChainError):
            ordinal_sum([boolean_algebra(2)])

    def test_needs_a_component(self):
        with pytest.raises(InvalidSizeError):
            ordinal_sum([])


class TestVerifyBl:
    def test_constructed_algebras_pass(self):
        for alg in (mv_chain(4), godel_chain(3), boolean_algebra(2)):
            report = verify_bl(alg.meet, alg.join, alg.mult, alg.impl)
            assert report.ok

    def test_broken_residuation_reports_witness(self):
        alg = mv_chain(4)
        impl = np.array(alg.impl)
        impl[2, 1] = 3
        report = verify_bl(alg.meet, alg.join, alg.mult, impl)
        entry = report.entry("residuation")
        assert not entry.holds
        # oracle re-scan over all triples: first lexicographic disagreement
        expected = None
        for a in range(4):
            for b in range(4):
                for c in range(4):
                    lhs = alg.mult[a, b] <= c
                    rhs = a <= impl[b, c]
                    if lhs != rhs:
                        expected = {"a": a, "b": b, "c": c}
                        break
                if expected:
                    break
            if expected:
                break
        assert entry.witness == expected == {"a": 3, "b": 2, "c": 1}

    def test_classifier_flags(self):
        report = verify_bl(*(getattr(godel_chain(3), t) for t in ("meet", "join", "mult", "impl")))
        assert report.ok
        assert report.classifiers["idempotent"]
        assert report.classifiers["chain"]
        assert not report.classifiers["boolean"]

    def test_report_renders_witnesses(self):
        alg = mv_chain(4)
        impl = np.array(alg.impl)
        impl[2, 1] = 3
        text = str(verify_bl(alg.meet, alg.join, alg.mult, impl))
        assert "residuation" in text and "fail" in text and "'a': 3" in text

    def test_out_of_range_entry_is_malformed(self):
        alg = mv_chain(3)
        bad = np.array(alg.meet)
        bad[0, 0] = 7
        with pytest.raises(MalformedInputError):
            verify_bl(bad, alg.join, alg.mult, alg.impl)

    def test_non_square_is_malformed(self):
        with pytest.raises(MalformedInputError):
            verify_bl([[0, 0]], [[0, 0]], [[0, 0]], [[0, 0]])

    def test_eager_validation_refuses_broken_tables(self):
        alg = mv_chain(3)
        mult = np.array(alg.mult)
        mult[1, 2] = 2  # breaks commutativity against mult[2, 1]
        mult[2, 1] = 0
        with pytest.raises(AxiomError):
            bl_algebra("broken", alg.meet, alg.join, mult, alg.impl)

    @given(st.integers(min_value=2, max_value=9))
    @settings(max_examples=12, deadline=None)
    def test_order_law_on_chains(self, n):
        alg = mv_chain(n)
        for a in range(n):
            for b in range(n):
                assert (a <= b) == (alg.impl[a, b] == alg.top)


class TestSubalgebras:
    @pytest.mark.parametrize(
        "alg,expected",
        [
            (mv_chain(2), [(0, 1)]),
            (mv_chain(4), [(0, 3), (0, 1, 2, 3)]),
            (godel_chain(3), [(0, 2), (0, 1, 2)]),
        ],
    )
    def test_known_lattices(self, alg, expected):
        assert [elements_of(m) for m in subalgebras(alg)] == expected

    def test_against_power_set_oracle(self):
        for alg in (mv_chain(4), mv_chain(5), godel_chain(4), boolean_algebra(2)):
            assert subalgebras(alg) == subalgebras_oracle(alg)

    def test_is_subalgebra(self):
        alg = mv_chain(4)
        assert is_subalgebra(alg, mask_of([0, 3]))
        assert not is_subalgebra(alg, mask_of([0, 1, 3]))
        assert not is_subalgebra(alg, mask_of([0]))


class TestIsIsomorphic:
    def test_identity(self):
        alg = mv_chain(4)
        image = is_isomorphic(alg, alg)
        assert image is not None and image.tolist() == [0, 1, 2, 3]

    def test_distinguishes_three_chains(self):
        assert is_isomorphic(mv_chain(3), godel_chain(3)) is None
        assert not is_iso_oracle(mv_chain(3), godel_chain(3))

    def test_matches_oracle_on_small_pairs(self):
        cases = [
            (mv_chain(4), mv_chain(4)),
            (mv_chain(4), godel_chain(4)),
            (ordinal_sum([mv_chain(2), mv_chain(3)]), ordinal_sum([mv_chain(3), mv_chain(2)])),
            (direct_product(godel_chain(2), godel_chain(3)), godel_chain(6)),
        ]
        for left, right in cases:
            assert (is_isomorphic(left, right) is not None) == is_iso_oracle(left, right)


@given(st.sampled_from(["mv", "godel"]), st.integers(min_value=2, max_value=7))
@settings(max_examples=20, deadline=None)
def test_chain_classifier_matches_join_characterization(kind, n):
    alg = mv_chain(n) if kind == "mv" else godel_chain(n)
    pairwise = all(alg.join[a, b] in (a, b) for a in range(n) for b in range(n))
    assert alg.classifiers["chain"] == pairwise
    prod = direct_product(alg, mv_chain(2))
    pairwise_prod = all(
        prod.join[a, b] in (a, b) for a in range(prod.n) for b in range(prod.n)
    )
    assert prod.classifiers["chain"] == pairwise_prod is False
