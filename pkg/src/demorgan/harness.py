"""Run the theorem harnesses over corpus entries and assemble reports.

A report is a plain dict with a fixed key order. Everything except the
``timing`` key is deterministic; :func:`stable_section` strips timing.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .corpus import CorpusEntry
from .lattice import FiniteLattice, PreconditionError
from .modules import (
    FiniteModule,
    annihilator,
    bican_product,
    is_fi_retractable,
    is_semiprime_module,
    ler,
    ler_fixed_points,
    module_dml,
    prop62_properties,
    sdml_variants_check,
    asano_conditions,
    psi_module,
    semiprime_module_witness,
    sp_submodules,
    theorem514_harness,
    try_fi_quantale,
)
from .quantale import (
    Quantale,
    annihilators_complemented,
    check_dml_laws,
    is_normal,
    is_semiprime,
    ann_product_meet_witness,
    lemma38_check,
    prop34_harness,
    semiprime_witness,
)
from .rings import Bounds, FiniteRing, ResourceError, ideal_product, two_sided_ideals
from .spectra import (
    SubQuantale,
    psi_points_check,
    mu_ann_violations,
    ann_mu_violations,
    r_ann_violations,
    mu_fixed_points,
    mu_nucleus,
    mu_spectrum_isomorphism,
    psi_regularity_check,
    psi_members,
    r_operator,
    spectrum_space,
    theorem311_harness,
)

GROUPS = ("laws", "spectra", "modules", "sdml")
FAILING = ("disagree", "fail")


@dataclass(frozen=True)
class Selection:
    laws: bool = True
    spectra: bool = True
    modules: bool = True
    sdml: bool = True

    @classmethod
    def only(cls, *groups: str) -> Selection:
        if not groups:
            return cls()
        unknown = set(groups) - set(GROUPS)
        if unknown:
            raise ValueError(f"unknown harness group(s): {', '.join(sorted(unknown))}")
        return cls(**{g: g in groups for g in GROUPS})


def _outcome(values: dict) -> str:
    vals = set(values.values())
    return "agree" if len(vals) <= 1 else "disagree"


def _check(bad) -> str:
    return "pass" if not bad else "fail"


def _na(reason: str) -> dict:
    return {"outcome": "n/a", "reason": reason}


class _Timer:
    def __init__(self) -> None:
        self.times: dict[str, float] = {}

    def run(self, name: str, fn: Callable[[], dict]) -> dict:
        t0 = time.perf_counter()
        try:
            return fn()
        finally:
            self.times[name] = round(time.perf_counter() - t0, 6)


# -- lattice-level groups --------------------------------------------------------------


def _predicates_quantale(Q: Quantale) -> dict:
    L = Q.lattice
    laws = check_dml_laws(Q)
    star = SubQuantale.whole(Q).satisfies_star()
    out = {
        "modular": L.is_modular(),
        "distributive": L.is_distributive(),
        "frame": L.is_frame(),
        "commutative": Q.is_commutative(),
        "top_is_unit": Q.top_is_unit(),
        "semiprime": is_semiprime(Q),
        "dml": laws.dml,
        "law1": laws.law1,
        "law2": laws.law2,
        "ann_complemented": annihilators_complemented(Q),
        "normal": is_normal(Q),
        "star": star,
    }
    if star:
        mu = mu_nucleus(Q)
        out["mu_closure"] = mu.is_closure()
        out["mu_nucleus"] = mu.is_nucleus()
    return out


def _labels(Q: Quantale, xs) -> list[str]:
    return [Q.label(x) for x in xs]


def _laws_group(Q: Quantale, t: _Timer) -> dict:
    out: dict[str, dict] = {}

    def ann_dml_equiv() -> dict:
        rep = prop34_harness(Q)
        values = {
            "semiprime_and_dml": rep.semiprime_and_dml,
            "law2_all_pairs": rep.law2_all_pairs,
            "ann_complemented_and_dml": rep.ann_complemented_and_dml,
        }
        res = {"outcome": _outcome(values), "values": values}
        w = check_dml_laws(Q).witnesses
        if w:
            res["witnesses"] = {k: _labels(Q, v) for k, v in sorted(w.items())}
        return res

    out["ann_dml_equiv"] = t.run("ann_dml_equiv", ann_dml_equiv)

    def law1() -> dict:
        laws = check_dml_laws(Q)
        res = {"outcome": _check(not laws.law1)}
        if not laws.law1:
            res["witness"] = _labels(Q, laws.witnesses["law1"])
        return res

    out["law1"] = t.run("law1", law1)

    if is_semiprime(Q):
        def ann_product_meet() -> dict:
            w = ann_product_meet_witness(Q)
            res = {"outcome": _check(w)}
            if w:
                res["witness"] = _labels(Q, w)
            return res

        out["ann_product_meet"] = t.run("ann_product_meet", ann_product_meet)
        out["zero_product_symmetric"] = t.run("zero_product_symmetric", lambda: {"outcome": _check(not lemma38_check(Q))})
    else:
        w = semiprime_witness(Q)
        reason = f"not semiprime: {Q.label(w)}^2 = 0"
        out["ann_product_meet"] = _na(reason)
        out["zero_product_symmetric"] = _na(reason)
    return out


def _spectra_group(Q: Quantale, t: _Timer) -> dict:
    out: dict[str, dict] = {}
    semiprime = is_semiprime(Q)
    dml = check_dml_laws(Q).dml

    if semiprime:
        def spectral_dml_equiv() -> dict:
            rep = theorem311_harness(Q)
            values = {
                "dml": rep.dml,
                "law2": rep.law2,
                "ann_complemented_and_dml": rep.ann_complemented_and_dml,
                "spec_frame_dml": rep.spec_frame_dml,
                "spec_extremely_disconnected": rep.spec_extremely_disconnected,
            }
            res = {"outcome": _outcome(values), "values": values}
            if rep.witnesses:
                res["witnesses"] = {
                    k: (_labels(Q, v) if k != "spec_frame_dml" else list(v))
                    for k, v in sorted(rep.witnesses.items())
                }
            return res

        out["spectral_dml_equiv"] = t.run("spectral_dml_equiv", spectral_dml_equiv)
    else:
        out["spectral_dml_equiv"] = _na("not semiprime")

    star = SubQuantale.whole(Q).satisfies_star()
    if star:
        def mu_fixes_ann() -> dict:
            bad = mu_ann_violations(Q)
            return {"outcome": _check(bad), **({"witness": _labels(Q, bad)} if bad else {})}

        if semiprime:
            out["mu_fixes_ann"] = t.run("mu_fixes_ann", mu_fixes_ann)
        else:
            out["mu_fixes_ann"] = _na("not semiprime")

        def ann_mu_invariant() -> dict:
            bad = ann_mu_violations(Q)
            if bad is None:
                return _na("mu(0) != 0")
            return {"outcome": _check(bad), **({"witness": _labels(Q, bad)} if bad else {})}

        out["ann_mu_invariant"] = t.run("ann_mu_invariant", ann_mu_invariant)

        def mu_iso() -> dict:
            fixed = mu_fixed_points(Q)
            space = spectrum_space(Q)
            return {
                "outcome": _check(not mu_spectrum_isomorphism(Q)),
                "fixed_points": len(fixed),
                "opens": len(space.opens),
                "points": len(space),
            }

        out["mu_iso"] = t.run("mu_iso", mu_iso)
    else:
        for k in ("mu_fixes_ann", "ann_mu_invariant", "mu_iso"):
            out[k] = _na("subquantale condition fails")

    def r_fixes_ann() -> dict:
        bad = r_ann_violations(Q)
        if bad is None:
            return _na("some annihilator has no complement")
        return {"outcome": _check(bad), **({"witness": _labels(Q, bad)} if bad else {})}

    out["r_fixes_ann"] = t.run("r_fixes_ann", r_fixes_ann)

    if semiprime and dml:
        def psi_regular() -> dict:
            rep = psi_regularity_check(Q)
            values = dict(vars(rep))
            return {"outcome": _check(not rep.holds), "values": values, "psi": _labels(Q, psi_members(Q))}

        out["psi_regular"] = t.run("psi_regular", psi_regular)

        def psi_points() -> dict:
            rep = psi_points_check(Q)
            if not rep.applies:
                return _na("not compact and normal")
            return {
                "outcome": _check(not rep.holds),
                "extremely_disconnected": rep.extremely_disconnected,
                "hausdorff": rep.hausdorff,
                "max_homeomorphic": rep.max_homeomorphic,
            }

        out["psi_points"] = t.run("psi_points", psi_points)
    else:
        out["psi_regular"] = _na("not semiprime with DML")
        out["psi_points"] = _na("not semiprime with DML")
    return out


# -- module-level groups ---------------------------------------------------------------


def _sub_labels(M: FiniteModule, xs) -> list[str]:
    return [M.sub_label(x) for x in xs]


def _modules_group(M: FiniteModule, Q: Quantale | None, ring: FiniteRing | None, t: _Timer) -> dict:
    out: dict[str, dict] = {}
    fis = M.fi_submodules

    if Q is not None:
        def module_dml_equiv() -> dict:
            values = theorem514_harness(M, Q)
            return {"outcome": _outcome(values), "values": values}

        out["module_dml_equiv"] = t.run("module_dml_equiv", module_dml_equiv)
    else:
        out["module_dml_equiv"] = _na("fully invariant submodules do not form a quantale")

    if ring is not None:
        def bican_vs_ideals() -> dict:
            ideals = two_sided_ideals(ring)
            same = sorted(fis) == sorted(ideals) and all(
                bican_product(M, I, J) == ideal_product(ring, I, J) for I in ideals for J in ideals
            )
            return {"outcome": _check(not same), "ideals": len(ideals)}

        out["bican_vs_ideals"] = t.run("bican_vs_ideals", bican_vs_ideals)

    def ann_maximal() -> dict:
        # Ann_M(K) is the largest fully invariant N with N_M K = 0
        for K in fis:
            killers = [N for N in fis if bican_product(M, N, K) == M.zero_sub]
            big = 0
            for N in killers:
                big |= N
            if annihilator(M, K) != big or big not in killers:
                return {"outcome": "fail", "witness": _sub_labels(M, [K])}
        return {"outcome": "pass"}

    out["ann_maximal"] = t.run("ann_maximal", ann_maximal)

    def semiprime_retractable() -> dict:
        bad = is_semiprime_module(M) and not is_fi_retractable(M)
        return {"outcome": _check(bad)}

    out["semiprime_retractable"] = t.run("semiprime_retractable", semiprime_retractable)

    def ler_psi() -> dict:
        direct = psi_module(M)
        fixed = ler_fixed_points(M)
        res = {"outcome": _check(direct != fixed), "psi": _sub_labels(M, direct)}
        if ring is not None and Q is not None:
            # for M = R the operator Ler matches r on the quantale side
            r = r_operator(Q)
            res["ler_is_r"] = all(ler(M, N) == fis[r[i]] for i, N in enumerate(fis))
            res["psi_matches_quantale"] = [fis[i] for i in psi_members(Q)] == direct
            if not (res["ler_is_r"] and res["psi_matches_quantale"]):
                res["outcome"] = "fail"
        return res

    out["ler_psi"] = t.run("ler_psi", ler_psi)

    if Q is not None:
        def sp_iso() -> dict:
            a = sp_submodules(M)
            b = [fis[i] for i in mu_fixed_points(Q)]
            return {"outcome": _check(sorted(a) != sorted(b)), "size": len(a)}

        out["sp_iso"] = t.run("sp_iso", sp_iso)
    else:
        out["sp_iso"] = _na("fully invariant submodules do not form a quantale")
    return out


def _sdml_group(M: FiniteModule, Q: Quantale | None, t: _Timer) -> dict:
    out: dict[str, dict] = {}

    def residual_identities() -> dict:
        items = prop62_properties(M)
        bad = any(v["status"] == "fail" for v in items.values())
        return {"outcome": _check(bad), "items": items}

    out["residual_identities"] = t.run("residual_identities", residual_identities)

    def sdml_variants() -> dict:
        vals = sdml_variants_check(M, Q is not None)
        bad = any(v is False for v in vals.values())
        return {"outcome": _check(bad), "values": vals}

    out["sdml_variants"] = t.run("sdml_variants", sdml_variants)

    if Q is not None:
        out["asano"] = t.run("asano", lambda: {"outcome": "info", "values": asano_conditions(M, Q)})
    else:
        out["asano"] = _na("fully invariant submodules do not form a quantale")
    return out


# -- per-entry driver ------------------------------------------------------------------


def _expectation_actual(key: str, report: dict):
    preds = report.get("predicates", {})
    if key in preds:
        return preds[key]
    for groupname in GROUPS:
        h = report.get("harnesses", {}).get(groupname, {}).get(key)
        if h is None:
            continue
        if h["outcome"] == "n/a":
            return "n/a"
        vals = h.get("values")
        if vals is not None and h["outcome"] in ("agree", "disagree"):
            vs = set(vals.values())
            return "all-true" if vs == {True} else "all-false" if vs == {False} else "mixed"
        return h["outcome"]
    return None


def _check_expectations(entry: CorpusEntry, report: dict) -> dict:
    out = {}
    for key, want in entry.expected.items():
        got = _expectation_actual(key, report)
        out[key] = {"expected": want, "actual": got, "ok": got == want}
    return out


def analyse(entry: CorpusEntry, selection: Selection = Selection(), bounds: Bounds | None = None) -> dict:
    """Build one entry and run the selected harness groups on it."""
    t = _Timer()
    report: dict = {"id": entry.id, "kind": entry.kind, "spec": entry.spec, "status": "ok"}
    try:
        obj = entry.build(bounds)
        ring = M = Q = None
        sizes: dict[str, int] = {}
        preds: dict[str, object] = {}
        if isinstance(obj, FiniteRing):
            ring = obj
            M = FiniteModule.regular(ring, bounds)
            sizes["ring"] = len(ring)
        elif isinstance(obj, FiniteModule):
            M = obj
            sizes["ring"] = len(M.ring)
        elif isinstance(obj, Quantale):
            Q = obj
        quantale_violation = None
        if M is not None:
            sizes["module"] = len(M)
            sizes["submodules"] = len(M.submodules)
            sizes["fi_submodules"] = len(M.fi_submodules)
            Q, v = try_fi_quantale(M)
            if v is not None:
                quantale_violation = v.labelled(M.fi_lattice())
            preds["module_semiprime"] = is_semiprime_module(M)
            w = semiprime_module_witness(M)
            if w is not None:
                preds["module_semiprime_witness"] = M.sub_label(w)
            preds["fi_retractable"] = is_fi_retractable(M)
            preds["module_dml"] = module_dml(M)
        if isinstance(obj, FiniteLattice):
            L = obj
            sizes["lattice"] = len(L)
            preds.update(
                modular=L.is_modular(),
                distributive=L.is_distributive(),
                frame=L.is_frame(),
                boolean=L.is_boolean(),
            )
        if Q is not None:
            sizes["quantale"] = len(Q)
            qp = _predicates_quantale(Q)
            w = semiprime_witness(Q)
            if w is not None:
                qp["semiprime_witness"] = Q.label(w)
            preds.update(qp)
        if quantale_violation is not None:
            preds["fi_quantale_violation"] = quantale_violation
        report["sizes"] = sizes
        report["predicates"] = preds
        harnesses: dict[str, dict] = {}
        if Q is not None and Q.mode == "iq":
            if selection.laws:
                harnesses["laws"] = _laws_group(Q, t)
            if selection.spectra:
                harnesses["spectra"] = _spectra_group(Q, t)
        if M is not None:
            if selection.modules:
                harnesses["modules"] = _modules_group(M, Q, ring, t)
            if selection.sdml:
                harnesses["sdml"] = _sdml_group(M, Q, t)
        report["harnesses"] = harnesses
    except ResourceError as exc:
        report["status"] = "skipped"
        report["reason"] = str(exc)
    except PreconditionError as exc:
        report["status"] = "error"
        report["reason"] = str(exc)
    if entry.expected:
        report["expectations"] = _check_expectations(entry, report)
    report["timing"] = t.times
    return report


def failures(report: dict) -> list[str]:
    """Names of failing harnesses and expectations in a report."""
    bad = []
    if report.get("status") == "error":
        bad.append(f"{report['id']}: error")
    for group, hs in report.get("harnesses", {}).items():
        for name, h in hs.items():
            if h["outcome"] in FAILING:
                bad.append(f"{report['id']}: {group}.{name} {h['outcome']}")
    for key, e in report.get("expectations", {}).items():
        if not e["ok"]:
            bad.append(f"{report['id']}: expected {key}={e['expected']}, got {e['actual']}")
    return bad


def stable_section(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}


def _analyse_star(args: tuple) -> dict:
    return analyse(*args)


def run_harnesses(
    entries: list[CorpusEntry],
    selection: Selection = Selection(),
    bounds: Bounds | None = None,
    jobs: int = 1,
) -> list[dict]:
    """Analyse all entries; the output order always matches ``entries``."""
    bounds = bounds or Bounds.from_env()
    work = [(e, selection, bounds) for e in entries]
    if jobs <= 1 or len(entries) <= 1:
        return [_analyse_star(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_analyse_star, work))
