import pytest
from hypothesis import given

from demorgan.lattice import FiniteLattice, PreconditionError
from demorgan.quantale import (
    Quantale,
    QuantaleError,
    Violation,
    annihilators_complemented,
    check_dml_laws,
    check_quantale,
    is_normal,
    is_semiprime,
    lemma33_check,
    ann_product_meet_witness,
    lemma38_check,
    prop34_harness,
    semiprime_witness,
)
from demorgan.rings import ideal_product, ideal_quantale, two_sided_ideals, zmod

from oracles import (
    ann_oracle,
    frame_quantales,
    residual_left_oracle,
    residual_right_oracle,
    truncated_frame_quantales,
)


def lab(Q, x):
    return Q.lattice.index(x)


def saturating_chain() -> list[list[int]]:
    """Product on 0 < m < 1 sending every nonzero pair to 1."""
    return [[0, 0, 0], [0, 2, 2], [0, 2, 2]]


def zero_product(L: FiniteLattice) -> Quantale:
    return Quantale(L, [[L.bottom] * len(L) for _ in L.elements])


class TestConstruction:
    def test_frames_are_quantales(self):
        B = FiniteLattice.boolean(2)
        assert check_quantale(B, Quantale.from_frame(B).table) is None

    def test_ideal_table_matches_brute_force(self, z6q):
        R = zmod(6)
        ideals = two_sided_ideals(R)
        for i, I in enumerate(ideals):
            for j, J in enumerate(ideals):
                assert ideals[z6q.table[i][j]] == ideal_product(R, I, J)

    def test_two_sided_violation(self, chain3):
        table = saturating_chain()
        assert check_quantale(chain3, table, "quantale") is None
        assert check_quantale(chain3, table, "iq") == Violation("two-sided", (1, 1))
        with pytest.raises(QuantaleError, match="two-sided"):
            Quantale(chain3, table, "iq")

    def test_associativity_violation(self):
        L = FiniteLattice.chain(3)
        # 1·1 = m and m·1 = 0 but 1·m = m
        table = [[0, 0, 0], [0, 1, 1], [0, 0, 1]]
        v = check_quantale(L, table, "quasi")
        assert v is not None and v.axiom == "associativity"

    def test_empty_join_violation(self):
        L = FiniteLattice.chain(2)
        v = check_quantale(L, [[1, 1], [1, 1]], "quantale")
        assert v.axiom == "left-empty-join"

    def test_shape(self):
        assert check_quantale(FiniteLattice.chain(2), [[0]]).axiom == "table-shape"

    def test_document_round_trip(self, z6q):
        Q2 = Quantale.from_document(z6q.to_document())
        assert Q2.table == z6q.table and Q2.lattice == z6q.lattice


class TestAnnihilators:
    def test_examples(self, z6q, z4q):
        assert z6q.ann(z6q.bottom) == z6q.top
        assert z6q.label(z6q.ann(lab(z6q, "(2)"))) == "(3)"
        assert z4q.label(z4q.ann(lab(z4q, "(2)"))) == "(2)"

    def test_residual_examples(self, z12q):
        Q = z12q
        assert Q.label(Q.residual_left(lab(Q, "(2)"), lab(Q, "(3)"))) == "(2)"
        for a in Q.elements:
            assert Q.residual_left(Q.bottom, a) == Q.ann_left(a)
            assert Q.residual_right(a, Q.top) == Q.top

    def test_noncommutative_sides_differ(self):
        # upper-triangular matrices: left and right annihilators of the corner ideals differ
        from demorgan.rings import prime_field, upper_triangular

        Q = ideal_quantale(upper_triangular(prime_field(2)))[0]
        assert any(Q.ann_left(a) != Q.ann_right(a) for a in Q.elements)
        assert not Q.is_commutative()

    @given(truncated_frame_quantales())
    def test_match_oracles(self, Q):
        for a in Q.elements:
            assert Q.ann(a) == ann_oracle(Q, a)
            for b in Q.elements:
                assert Q.residual_right(a, b) == residual_right_oracle(Q, a, b)
                assert Q.residual_left(b, a) == residual_left_oracle(Q, b, a)

    @given(truncated_frame_quantales())
    def test_residual_adjunction(self, Q):
        L = Q.lattice
        for a in Q.elements:
            for b in Q.elements:
                r = Q.residual_right(a, b)
                for x in Q.elements:
                    assert L.leq(Q.table[a][x], b) == L.leq(x, r)

    @given(truncated_frame_quantales())
    def test_law1_always(self, Q):
        assert check_dml_laws(Q).law1


class TestPredicates:
    def test_semiprime(self, z6q, z4q):
        assert is_semiprime(z6q)
        assert not is_semiprime(z4q)
        assert z4q.label(semiprime_witness(z4q)) == "(2)"

    @given(frame_quantales())
    def test_frames_semiprime(self, Q):
        assert is_semiprime(Q)

    def test_dml_examples(self, z6q, z4q):
        r = check_dml_laws(z6q)
        assert (r.law1, r.law2, r.dml) == (True, True, True)
        assert check_dml_laws(Quantale.from_frame(FiniteLattice.boolean(3))).dml
        assert check_dml_laws(z4q).law1

    def test_normal(self, z6q):
        assert is_normal(Quantale.from_frame(FiniteLattice.chain(2)))
        assert is_normal(z6q)
        assert is_normal(Quantale.from_frame(FiniteLattice.chain(4)))


class TestAnnihilatorDmlEquivalence:
    def test_z6(self, z6q):
        rep = prop34_harness(z6q)
        assert rep.semiprime_and_dml and rep.law2_all_pairs and rep.ann_complemented_and_dml
        assert rep.all_agree

    def test_z4(self, z4q):
        rep = prop34_harness(z4q)
        assert not rep.semiprime_and_dml and rep.all_agree
        two = lab(z4q, "(2)")
        # (2)·(2) = 0, so ann of the product is 1 while ann(2) ∨ ann(2) = (2)
        assert z4q.ann(z4q.table[two][two]) == z4q.top
        assert z4q.lattice.join(z4q.ann(two), z4q.ann(two)) == two
        assert "law2" in check_dml_laws(z4q).witnesses

    def test_one_element(self):
        rep = prop34_harness(Quantale.from_frame(FiniteLattice.chain(1)))
        assert rep.all_agree

    def test_needs_iq(self, chain3):
        Q = Quantale(chain3, saturating_chain(), "quantale")
        with pytest.raises(PreconditionError):
            prop34_harness(Q)

    @given(frame_quantales())
    def test_frames_agree(self, Q):
        assert prop34_harness(Q).all_agree

    @given(truncated_frame_quantales())
    def test_unital_members_agree(self, Q):
        if Q.top_is_unit():
            assert prop34_harness(Q).all_agree

    def test_zero_product_breaks_equivalence(self):
        # without 1·a = a the second condition can hold while the others fail
        Q = zero_product(FiniteLattice.chain(2))
        rep = prop34_harness(Q)
        assert rep.law2_all_pairs and rep.ann_complemented_and_dml
        assert not rep.semiprime_and_dml
        assert not rep.all_agree


class TestLemmas:
    def test_ann_product_meet_examples(self, z6q):
        two, three = lab(z6q, "(2)"), lab(z6q, "(3)")
        assert z6q.ann(z6q.table[two][three]) == z6q.ann(z6q.lattice.meet(two, three)) == z6q.top
        assert lemma33_check(z6q)

    def test_zero_product_symmetric_examples(self, z6q):
        two, three = lab(z6q, "(2)"), lab(z6q, "(3)")
        assert z6q.table[three][two] == z6q.bottom
        assert lemma38_check(z6q)

    def test_need_semiprime(self, z4q):
        with pytest.raises(PreconditionError):
            lemma33_check(z4q)
        with pytest.raises(PreconditionError):
            lemma38_check(z4q)

    @given(truncated_frame_quantales())
    def test_semiprime_members(self, Q):
        if is_semiprime(Q):
            assert ann_product_meet_witness(Q) is None
            assert lemma38_check(Q)

    @given(frame_quantales())
    def test_square_annihilator(self, Q):
        for a in Q.elements:
            assert Q.ann(Q.table[a][a]) == Q.ann(a)

    def test_ann_complemented(self, z4q):
        assert annihilators_complemented(Quantale.from_frame(FiniteLattice.boolean(3)))
        # in a chain with meet every annihilator is 0 or 1
        assert annihilators_complemented(Quantale.from_frame(FiniteLattice.chain(3)))
        assert not annihilators_complemented(z4q)
