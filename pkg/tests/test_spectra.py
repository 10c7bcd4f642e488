import pytest
from hypothesis import assume, given

from demorgan.lattice import FiniteLattice, PreconditionError
from demorgan.quantale import Quantale, check_dml_laws, is_semiprime
from demorgan.rings import direct_product, ideal_quantale, zmod
from demorgan.spectra import (
    NucleusMap,
    SubQuantale,
    SubQuantaleError,
    annann_map,
    psi_points_check,
    frame_dml_witness,
    frame_points,
    frame_satisfies_dml,
    is_extremely_disconnected,
    is_hausdorff,
    is_regular_frame,
    mu_ann_violations,
    ann_mu_violations,
    r_ann_violations,
    mu_fixed_points,
    mu_nucleus,
    mu_spectrum_isomorphism,
    mu_values,
    nucleus_quotient,
    primes_relative,
    psi_regularity_check,
    psi,
    psi_members,
    r_operator,
    rather_below,
    regular_core,
    spectrum,
    spectrum_space,
    theorem311_harness,
)
from demorgan.topology import FiniteTopSpace, TopologyError, homeomorphism

from oracles import frame_quantales, primes_oracle, truncated_frame_quantales


def lab(Q, x):
    return Q.lattice.index(x)


def labels(Q, xs):
    return sorted(Q.label(x) for x in xs)


SIERPINSKI = FiniteTopSpace(["a", "b"], [0b00, 0b01, 0b11])


class TestTopology:
    def test_sierpinski(self):
        assert is_extremely_disconnected(SIERPINSKI)
        assert not is_hausdorff(SIERPINSKI)
        assert SIERPINSKI.closure(0b01) == 0b11

    def test_discrete(self):
        S = FiniteTopSpace(["p", "q", "r"], range(8))
        assert S.is_discrete() and is_extremely_disconnected(S) and is_hausdorff(S)

    def test_not_extremely_disconnected(self):
        # three points, opens generated by {a} and {c}: closure of {a} is {a,b}, not open
        S = FiniteTopSpace(["a", "b", "c"], [0, 0b001, 0b100, 0b101, 0b111])
        assert not S.is_extremely_disconnected()

    def test_invalid(self):
        with pytest.raises(TopologyError):
            FiniteTopSpace(["a", "b"], [0, 0b01, 0b10])
        with pytest.raises(TopologyError):
            FiniteTopSpace(["a"], [1])

    def test_closure_interior_duality(self):
        S = FiniteTopSpace(["a", "b", "c"], [0, 0b001, 0b011, 0b111])
        for m in range(8):
            assert S.closure(m) == S.full & ~S.interior(S.full & ~m)

    def test_homeomorphism(self):
        swapped = FiniteTopSpace(["x", "y"], [0b00, 0b10, 0b11])
        assert homeomorphism(SIERPINSKI, swapped) == (1, 0)
        discrete = FiniteTopSpace(["x", "y"], range(4))
        assert homeomorphism(SIERPINSKI, discrete) is None


class TestSpectrum:
    def test_primes(self, z6q, z4q):
        assert labels(z6q, primes_relative(z6q)) == ["(2)", "(3)"]
        assert labels(z4q, primes_relative(z4q)) == ["(2)"]
        two = Quantale.from_frame(FiniteLattice.chain(2))
        assert primes_relative(two) == [two.bottom]

    def test_z6_discrete(self, z6q):
        sp = spectrum(z6q)
        assert sp.space.is_discrete() and len(sp.space) == 2
        assert sp.U(z6q.bottom) == 0 and sp.U(z6q.top) == sp.space.full
        assert sp.space.labels[sp.U(lab(z6q, "(2)")).bit_length() - 1] == "(3)"

    def test_z12(self, z12q):
        S = spectrum_space(z12q)
        assert sorted(S.labels) == ["(2)", "(3)"] and len(S.opens) == 4

    def test_chains(self):
        # in 0 < m < 1 with meet both 0 and m are prime
        S = spectrum_space(Quantale.from_frame(FiniteLattice.chain(3)))
        assert len(S) == 2 and not S.is_hausdorff()
        S1 = spectrum_space(Quantale.from_frame(FiniteLattice.chain(2)))
        assert len(S1) == 1 and S1.is_discrete()

    def test_star_required(self):
        L = FiniteLattice.chain(2)
        Q = Quantale(L, [[0, 0], [0, 0]])
        B = SubQuantale(Q, frozenset({0}))
        with pytest.raises(PreconditionError):
            spectrum(Q, B)

    def test_subquantale_closure(self, z6q):
        with pytest.raises(SubQuantaleError):
            SubQuantale(z6q, frozenset({z6q.bottom, lab(z6q, "(2)"), lab(z6q, "(3)")}))
        B = SubQuantale(z6q, frozenset({z6q.bottom, lab(z6q, "(2)"), z6q.top}))
        assert B.satisfies_star()
        # relative to B the zero ideal is prime too: no product of (2), 1 lands in 0
        assert labels(z6q, primes_relative(z6q, B)) == ["(2)", "(3)", "0"]

    @given(truncated_frame_quantales())
    def test_primes_oracle(self, Q):
        assert primes_relative(Q) == primes_oracle(Q)


class TestMu:
    def test_z6_identity(self, z6q):
        assert all(m == b for b, m in mu_values(z6q).items())

    def test_z4(self, z4q):
        mu = mu_values(z4q)
        assert z4q.label(mu[z4q.bottom]) == "(2)"
        assert mu[z4q.top] == z4q.top
        assert labels(z4q, mu_fixed_points(z4q)) == ["(1)", "(2)"]
        assert len(nucleus_quotient(mu_nucleus(z4q))) == len(spectrum_space(z4q).opens) == 2

    def test_identity_quotient(self):
        L = FiniteLattice.pentagon()
        assert nucleus_quotient(NucleusMap(L, tuple(L.elements))) == L

    def test_double_negation_boolean(self):
        B = FiniteLattice.boolean(3)
        nn = NucleusMap(B, tuple(B.negation(B.negation(a)) for a in B.elements))
        assert nn.is_nucleus() and nucleus_quotient(nn) == B

    def test_annann(self, z6q):
        aa = annann_map(z6q)
        assert aa(z6q.bottom) == z6q.bottom and aa(z6q.top) == z6q.top
        assert aa(lab(z6q, "(2)")) == lab(z6q, "(2)")

    def test_violations_reported(self):
        L = FiniteLattice.chain(3)
        v = NucleusMap(L, (0, 0, 2)).violations()
        assert v["inflationary"] == (1,)

    @given(truncated_frame_quantales())
    def test_isomorphism_with_opens(self, Q):
        assume(SubQuantale.whole(Q).satisfies_star())
        assert mu_spectrum_isomorphism(Q)
        assert mu_nucleus(Q).is_closure()

    @given(truncated_frame_quantales())
    def test_lemmas(self, Q):
        assume(SubQuantale.whole(Q).satisfies_star())
        if is_semiprime(Q):
            assert mu_ann_violations(Q) == []
        assert ann_mu_violations(Q) in (None, [])


class TestRatherBelow:
    def test_examples(self, z6q):
        two = lab(z6q, "(2)")
        assert all(rather_below(z6q, z6q.bottom, a) for a in z6q.elements)
        assert rather_below(z6q, two, two)
        r = r_operator(z6q)
        assert r[two] == two and r[z6q.top] == z6q.top

    def test_regular_core_examples(self, z6q):
        B = Quantale.from_frame(FiniteLattice.boolean(3))
        assert regular_core(B).members == list(B.elements)
        assert regular_core(z6q).members == list(z6q.elements)
        one = Quantale.from_frame(FiniteLattice.chain(1))
        assert regular_core(one).members == [0] and regular_core(one).stabilized_at == 0

    def test_regular_frames(self):
        assert is_regular_frame(FiniteLattice.boolean(3))
        assert not is_regular_frame(FiniteLattice.chain(3))
        assert is_regular_frame(FiniteLattice.chain(2))
        with pytest.raises(PreconditionError):
            is_regular_frame(FiniteLattice.diamond())

    def test_frame_points(self, z6q):
        P = frame_points(FiniteLattice.boolean(2))
        assert len(P) == 2 and P.is_discrete()
        assert len(frame_points(FiniteLattice.chain(2))) == 1
        Z = frame_points(z6q.lattice)
        assert sorted(Z.labels) == sorted(spectrum_space(z6q).labels)
        assert Z.is_discrete()

    def test_core_shrinks(self):
        # square with a new top: only 0 and 1 survive
        L = FiniteLattice.boolean(2).ordinal_sum(FiniteLattice.chain(2))
        core = regular_core(Quantale.from_frame(L))
        assert core.members == [L.bottom, L.top] and core.stabilized_at == 1
        assert core.frame.is_frame() and is_regular_frame(core.frame)

    @given(frame_quantales())
    def test_r_deflationary_monotone(self, Q):
        L = Q.lattice
        r = r_operator(Q)
        for a in Q.elements:
            assert L.leq(r[a], a)
            for b in Q.elements:
                if L.leq(a, b):
                    assert L.leq(r[a], r[b])

    @given(frame_quantales())
    def test_core_is_regular(self, Q):
        core = regular_core(Q)
        assert core.frame.is_frame() and is_regular_frame(core.frame)

    @given(frame_quantales())
    def test_r_fixes_complemented_annihilators(self, Q):
        assert r_ann_violations(Q) in (None, [])


class TestSpectralDmlEquivalence:
    @pytest.mark.parametrize("Q", [
        ideal_quantale(zmod(6))[0],
        Quantale.from_frame(FiniteLattice.chain(2)),
        ideal_quantale(direct_product(zmod(2), zmod(2), zmod(2)))[0],
    ], ids=["Z6", "two", "Z2^3"])
    def test_all_true(self, Q):
        rep = theorem311_harness(Q)
        assert rep.values() == [True] * 5

    def test_needs_semiprime(self, z4q):
        with pytest.raises(PreconditionError):
            theorem311_harness(z4q)

    def test_failing_frame(self):
        Q = Quantale.from_frame(FiniteLattice.boolean(2).ordinal_sum(FiniteLattice.chain(2)))
        rep = theorem311_harness(Q)
        assert rep.values() == [False] * 5
        assert "dml" in rep.witnesses

    @given(frame_quantales())
    def test_frames_agree(self, Q):
        assert theorem311_harness(Q).all_agree

    @given(truncated_frame_quantales())
    def test_semiprime_unital_truncations_agree(self, Q):
        if is_semiprime(Q) and Q.top_is_unit():
            assert theorem311_harness(Q).all_agree

    def test_non_unital_counterexample(self):
        # 7-element frame with a·b = a ∧ b ∧ c, c the join of the two atoms
        L = FiniteLattice.from_covers(
            [str(i) for i in range(7)],
            [("0", "1"), ("0", "3"), ("1", "2"), ("1", "4"), ("3", "4"), ("2", "5"), ("4", "5"), ("5", "6")],
        )
        c = L.index("4")
        Q = Quantale(L, [[L.meet(L.meet(a, b), c) for b in L.elements] for a in L.elements])
        assert is_semiprime(Q) and not Q.top_is_unit()
        rep = theorem311_harness(Q)
        assert not rep.dml and rep.spec_extremely_disconnected
        assert not rep.all_agree


class TestPsiRegularity:
    def test_z6(self, z6q):
        assert psi_regularity_check(z6q).holds
        rep = psi_points_check(z6q)
        assert rep.applies and rep.holds and rep.max_homeomorphic

    def test_requires_dml(self):
        Q = Quantale.from_frame(FiniteLattice.boolean(2).ordinal_sum(FiniteLattice.chain(2)))
        with pytest.raises(PreconditionError):
            psi_regularity_check(Q)

    @given(frame_quantales())
    def test_frames(self, Q):
        assume(check_dml_laws(Q).dml)
        rep = psi_regularity_check(Q)
        assert rep.holds, rep
        F = psi(Q)
        assert frame_satisfies_dml(F) and frame_dml_witness(F) is None
        assert psi_members(Q) == regular_core(Q).members

    @given(frame_quantales())
    def test_points_of_psi(self, Q):
        rep = psi_points_check(Q)
        assert rep.holds
