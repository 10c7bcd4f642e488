"""End-to-end acceptance checks over the builtin corpus.

Each test prints one ``PASS``/``FAIL`` line with its elapsed time, so
``pytest -v -s tests/test_acceptance.py`` (or the tee'd full run) doubles as
an acceptance report.
"""
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from demorgan.corpus import builtin_corpus
from demorgan.lattice import FiniteLattice
from demorgan.modules import (
    FiniteModule,
    bican_product,
    colon,
    prop62_properties,
    sdml_variants_check,
    sdml_checks,
    theorem514_harness,
    try_fi_quantale,
)
from demorgan.quantale import (
    Quantale,
    QuantaleError,
    check_dml_laws,
    is_normal,
    is_semiprime,
    lemma33_check,
    lemma38_check,
    prop34_harness,
    semiprime_witness,
)
from demorgan.rings import FiniteRing, ideal_product, ideal_quantale, prime_field, upper_triangular, zmod
from demorgan.spectra import (
    SubQuantale,
    frame_points,
    frame_satisfies_dml,
    is_regular_frame,
    mu_ann_violations,
    ann_mu_violations,
    r_ann_violations,
    mu_fixed_points,
    mu_spectrum_isomorphism,
    psi_regularity_check,
    psi,
    r_operator,
    regular_core,
    spectrum_space,
    theorem311_harness,
)


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number: int, title: str, limit: float | None = None):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            assert limit is None or elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                verdict = "PASS" if ok else "FAIL"
                print(f"\n[{verdict}] criterion {number:2d}: {title} ({elapsed:.3f}s)")

    return run


def _members():
    """(id, quantale or None, module or None) for every builtin entry that has either."""
    out = []
    for e in builtin_corpus():
        obj = e.build()
        if isinstance(obj, FiniteRing):
            M = FiniteModule.regular(obj)
            out.append((e.id, ideal_quantale(obj)[0], M))
        elif isinstance(obj, FiniteModule):
            out.append((e.id, try_fi_quantale(obj)[0], obj))
        elif isinstance(obj, Quantale):
            out.append((e.id, obj, None))
    return out


@pytest.fixture(scope="module")
def members():
    return _members()


def iqs(members):
    return [(i, Q) for i, Q, _ in members if Q is not None and Q.mode == "iq"]


def sub(M, label):
    return M.generated(1 << M.labels.index(label))


def test_bican_example(criterion):
    with criterion(1, "Bican product on Z2+Z2", 1.0):
        M = FiniteModule.free(prime_field(2), 2)
        N = sub(M, "(1,0)")
        assert bican_product(M, N, M.full) == M.full
        assert not M.is_fully_invariant(N)


def test_annihilator_conditions_agree(criterion, members):
    with criterion(2, "three annihilator conditions agree on every corpus iq", 10.0):
        bad = [i for i, Q in iqs(members) if not prop34_harness(Q).all_agree]
        assert bad == []
        assert len(iqs(members)) >= 20


def test_spectral_conditions_agree(criterion, members):
    with criterion(3, "five spectral conditions agree on semiprime corpus iqs", 30.0):
        semiprime = [(i, Q) for i, Q in iqs(members) if is_semiprime(Q)]
        bad = [i for i, Q in semiprime if not theorem311_harness(Q).all_agree]
        assert bad == [] and semiprime


def test_lemmas(criterion, members):
    with criterion(4, "annihilator lemmas hold where their hypotheses do"):
        checked = 0
        for i, Q in iqs(members):
            star = SubQuantale.whole(Q).satisfies_star()
            if is_semiprime(Q):
                assert lemma33_check(Q), i
                assert lemma38_check(Q), i
                if star:
                    assert mu_ann_violations(Q) == [], i
            if star:
                assert ann_mu_violations(Q) in (None, []), i
            assert r_ann_violations(Q) in (None, []), i
            checked += 1
        assert checked == len(iqs(members))


def test_mu_fixed_points_are_opens(criterion, members):
    with criterion(5, "mu-fixed points match the open sets of the spectrum"):
        for i, Q in iqs(members):
            if SubQuantale.whole(Q).satisfies_star():
                assert mu_spectrum_isomorphism(Q), i
        z6 = ideal_quantale(zmod(6))[0]
        assert len(mu_fixed_points(z6)) == 4
        assert len(spectrum_space(z6).opens) == 4


def test_psi_regular_core(criterion, members):
    with criterion(6, "Psi is a regular De Morgan frame and the core stops after one step"):
        hit = 0
        for i, Q in iqs(members):
            if not (is_semiprime(Q) and check_dml_laws(Q).dml):
                continue
            F = psi(Q)
            assert F.is_frame() and frame_satisfies_dml(F) and is_regular_frame(F), i
            r = r_operator(Q)
            assert all(r[r[a]] == r[a] for a in Q.elements), i
            assert regular_core(Q).stabilized_at <= 1, i
            assert psi_regularity_check(Q).holds, i
            hit += 1
        assert hit


def test_points_of_psi(criterion, members):
    with criterion(7, "points of Psi are extremely disconnected and Hausdorff"):
        hit = 0
        for i, Q in iqs(members):
            if Q.lattice.is_compact_lattice() and is_normal(Q) and is_semiprime(Q) and check_dml_laws(Q).dml:
                P = frame_points(psi(Q))
                assert P.is_extremely_disconnected() and P.is_hausdorff(), i
                hit += 1
        assert hit


def test_module_conditions_agree(criterion, members):
    with criterion(8, "six module conditions agree, with ring anchors", 60.0):
        for i, Q, M in members:
            if M is not None and Q is not None:
                vals = set(theorem514_harness(M, Q).values())
                assert len(vals) == 1, i
        anchors = {
            "Z6": True,
            "Z4": False,
            "M2(F2)": True,
            "T2(F2)": False,
        }
        by_id = {i: M for i, _, M in members}
        for i, want in anchors.items():
            assert theorem514_harness(by_id[i]) == {k: want for k in "123456"}, i


def test_residual_identities(criterion, members):
    with criterion(9, "residual identities on fully invariant submodules; Z12 anchor"):
        for i, _, M in members:
            if M is None:
                continue
            items = prop62_properties(M)
            assert all(items[k]["status"] == "pass" for k in "1234"), (i, items)
            assert all(items[k]["status"] in ("pass", "skipped") for k in "56"), (i, items)
        M = FiniteModule.regular(zmod(12))
        two, three = sub(M, "2"), sub(M, "3")
        assert colon(M, two, three) == two and colon(M, three, two) == three
        assert M.sum(two, three) == M.full


def test_sdml_variants(criterion, members):
    with criterion(10, "strong De Morgan variants"):
        hit = 0
        for i, Q, M in members:
            if M is None:
                continue
            res = sdml_variants_check(M, Q is not None)
            assert res["sdml2_implies_sdml"], i
            if Q is not None:
                assert res["variants_agree"], i
            if sdml_checks(M)["sdml2"] and res["sdml2_distributive"] is not None:
                lat = M.fi_lattice()
                assert res["sdml2_distributive"] and lat.is_distributive() and lat.is_frame(), i
                hit += 1
        assert hit


def test_negative_controls(criterion):
    with criterion(11, "negative controls fail as expected"):
        Q4 = ideal_quantale(zmod(4))[0]
        w = semiprime_witness(Q4)
        assert Q4.label(w) == "(2)" and Q4.table[w][w] == Q4.bottom

        T = upper_triangular(prime_field(2))
        QT, ideals = ideal_quantale(T)
        w = semiprime_witness(QT)
        assert w is not None and w != QT.bottom
        assert ideal_product(T, ideals[w], ideals[w]) == 1 << T.zero

        assert not FiniteLattice.pentagon().is_modular()

        chain = FiniteLattice.chain(3)
        with pytest.raises(QuantaleError, match="two-sided"):
            Quantale(chain, [[0, 0, 0], [0, 2, 2], [0, 2, 2]], "iq")


def test_determinism(criterion, tmp_path):
    with criterion(12, "two runs over the builtin corpus are byte-identical"):
        outs = []
        for k in range(2):
            path = tmp_path / f"run{k}.json"
            subprocess.run(
                [sys.executable, "-m", "demorgan.cli", "run", "--no-timing", "-o", str(path)],
                check=True,
            )
            outs.append(path.read_bytes())
        assert outs[0] == outs[1] and len(outs[0]) > 1000
