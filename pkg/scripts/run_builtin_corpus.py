"""Run every harness over the builtin corpus and summarize the outcomes per entry."""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from _config import parse

from demorgan.cli import render
from demorgan.corpus import builtin_corpus
from demorgan.harness import failures, run_harnesses


@dataclass
class Config:
    """Run every harness over the builtin corpus."""

    jobs: int = 1
    out: str = ""


def main(cfg: Config) -> int:
    start = time.perf_counter()
    reports = run_harnesses(builtin_corpus(), jobs=cfg.jobs)
    elapsed = time.perf_counter() - start
    for r in reports:
        outcomes = Counter(h["outcome"] for g in r.get("harnesses", {}).values() for h in g.values())
        summary = ", ".join(f"{k}={v}" for k, v in sorted(outcomes.items()))
        print(f"{r['id']:<14} {r['status']:<8} {summary}")
    bad = [f for r in reports for f in failures(r)]
    print(f"{len(reports)} entries, {len(bad)} failures, {elapsed:.2f}s")
    if cfg.out:
        Path(cfg.out).write_text(render(reports))
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main(parse(Config)))
