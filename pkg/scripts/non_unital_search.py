"""Search for small semiprime quantales without a unit where the annihilator equivalences break.

Every frame ``L`` and element ``c`` give the two-sided product
``a·b = a ∧ b ∧ c``; it is unital only when ``c`` is the top. The search
prints the first few structures on which the five spectral conditions or the
three annihilator conditions disagree, smallest first.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from _config import parse
from random_frames import random_frame

from demorgan.quantale import Quantale, is_semiprime, prop34_harness
from demorgan.spectra import theorem311_harness


@dataclass
class Config:
    """Search truncated-meet quantales for failures of the equivalences."""

    samples: int = 3000
    points: int = 5
    seed: int = 1
    show: int = 3


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    found: dict[tuple, tuple] = {}
    for _ in range(cfg.samples):
        L = random_frame(rng, cfg.points)
        for c in L.elements:
            Q = Quantale(L, [[L.meet(L.meet(a, b), c) for b in L.elements] for a in L.elements], "iq")
            if not is_semiprime(Q):
                continue
            p34 = prop34_harness(Q)
            t311 = theorem311_harness(Q)
            if p34.all_agree and t311.all_agree:
                continue
            key = (L.to_dot(), c)
            found.setdefault(key, (len(L), Q.top_is_unit(), L, c, p34, t311))
    hits = sorted(found.values(), key=lambda t: t[0])
    print(f"{len(hits)} distinct disagreements; {sum(1 for h in hits if h[1])} of them unital")
    for n, unital, L, c, p34, t311 in hits[: cfg.show]:
        print(f"\n|L|={n} c={L.labels[c]} unital={unital}")
        print(f"  annihilator conditions: {p34}")
        print(f"  spectral conditions:    {t311.values()}")
        print("  covers:", [(L.labels[a], L.labels[b]) for a, b in L.covers()])
    return 0


if __name__ == "__main__":
    raise SystemExit(main(parse(Config)))
