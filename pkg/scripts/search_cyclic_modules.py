"""Sweep direct sums of cyclic groups Z_k1 + ... viewed as Z_n-modules.

For each module the script reports whether the fully invariant submodules
form a quantale, the six-way module condition outcome, and any harness
failure. Useful for hunting counterexamples beyond the builtin corpus.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import lcm, prod

from _config import parse

from demorgan.corpus import CorpusEntry
from demorgan.harness import Selection, analyse, failures


@dataclass
class Config:
    """Sweep direct sums of cyclic groups as modules over Z_n."""

    max_n: int = 16
    max_order: int = 16
    max_summands: int = 3
    faithful_only: bool = False


def candidates(cfg: Config):
    for n in range(2, cfg.max_n + 1):
        divisors = [d for d in range(2, n + 1) if n % d == 0]
        for k in range(1, cfg.max_summands + 1):
            for orders in combinations_with_replacement(divisors, k):
                if prod(orders) > cfg.max_order:
                    continue
                if cfg.faithful_only and lcm(*orders) != n:
                    continue
                yield n, orders


def main(cfg: Config) -> int:
    bad = 0
    for n, orders in candidates(cfg):
        spec = f"Z{n}[{','.join(map(str, orders))}]"
        rep = analyse(CorpusEntry(spec, "module", spec), Selection.only("modules", "sdml"))
        if rep["status"] != "ok":
            print(f"{spec:<16} {rep['status']}: {rep.get('reason')}")
            continue
        preds = rep["predicates"]
        v = preds.get("fi_quantale_violation")
        thm = rep["harnesses"]["modules"]["module_dml_equiv"]
        vals = thm.get("values", {})
        tag = "n/a" if not vals else "all-true" if all(vals.values()) else "all-false" if not any(vals.values()) else "mixed"
        line = f"{spec:<16} |M|={rep['sizes']['module']:<3} fi={rep['sizes']['fi_submodules']:<3} module_dml_equiv={tag}"
        if v is not None:
            line += f"  quantale fails {v['axiom']} at {v['witness']}"
        fs = failures(rep)
        bad += len(fs)
        print(line + ("  FAIL " + "; ".join(fs) if fs else ""))
    print(f"{bad} failures")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main(parse(Config)))
