"""Sample random finite frames and check the spectral equivalences on each.

Frames are down-set lattices of random posets; the product is the meet, or
``a·b = a ∧ b ∧ c`` for a random ``c`` when ``truncate`` is set.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from _config import parse

from demorgan.lattice import FiniteLattice
from demorgan.quantale import Quantale, check_dml_laws, is_semiprime, prop34_harness
from demorgan.spectra import psi_points_check, psi_regularity_check, theorem311_harness


@dataclass
class Config:
    """Sample random finite frames and check the spectral equivalences."""

    samples: int = 500
    points: int = 5
    seed: int = 0
    truncate: bool = False


def random_frame(rng: random.Random, points: int) -> FiniteLattice:
    n = rng.randint(1, points)
    below = [0] * n
    for j in range(n):
        for i in range(j):
            if rng.random() < 0.4:
                below[j] |= 1 << i | below[i]
    downs = [m for m in range(1 << n) if all(below[i] & ~m == 0 for i in range(n) if m >> i & 1)]
    return FiniteLattice.from_sets(downs)


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    tally: Counter[str] = Counter()
    for _ in range(cfg.samples):
        L = random_frame(rng, cfg.points)
        c = rng.choice(list(L.elements)) if cfg.truncate else L.top
        Q = Quantale(L, [[L.meet(L.meet(a, b), c) for b in L.elements] for a in L.elements], "iq")
        unital = Q.top_is_unit()
        tally["unital" if unital else "non-unital"] += 1
        if not prop34_harness(Q).all_agree:
            tally[f"ann_dml_equiv disagrees ({'unital' if unital else 'non-unital'})"] += 1
        if is_semiprime(Q):
            if not theorem311_harness(Q).all_agree:
                tally[f"spectral_dml_equiv disagrees ({'unital' if unital else 'non-unital'})"] += 1
            if check_dml_laws(Q).dml:
                tally["semiprime+dml"] += 1
                if not psi_regularity_check(Q).holds:
                    tally["psi_regular fails"] += 1
        if not psi_points_check(Q).holds:
            tally["psi_points fails"] += 1
    for k, v in sorted(tally.items()):
        print(f"{k:<32} {v}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main(parse(Config)))
