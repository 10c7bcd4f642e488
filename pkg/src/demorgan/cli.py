"""Command-line entry point: ``demorgan {validate,run,export,list-builtins}``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .corpus import BUILTIN_CORPUS, CorpusEntry, CorpusError, builtin_corpus, parse_corpus
from .harness import GROUPS, Selection, analyse, failures, run_harnesses, stable_section
from .lattice import FiniteLattice, PreconditionError
from .modules import FiniteModule, try_fi_quantale
from .quantale import Quantale
from .rings import Bounds, FiniteRing, ResourceError, RingError
from .spectra import spectrum_space

EXPORTS = ("lattice", "fi-lattice", "spectrum", "report")


def _bounds(args: argparse.Namespace) -> Bounds:
    b = Bounds.from_env()
    overrides = {
        k: v
        for k, v in (
            ("ring_order", args.max_ring),
            ("noncommutative_ring_order", args.max_nc_ring),
            ("module_order", args.max_module),
            ("hom_candidates", args.max_homs),
        )
        if v is not None
    }
    return replace(b, **overrides)


def _load(args: argparse.Namespace, bounds: Bounds) -> list[CorpusEntry]:
    if args.corpus is None:
        return builtin_corpus(bounds)
    return parse_corpus(args.corpus, validate=True, bounds=bounds)


def render(reports: list[dict], timing: bool = True) -> str:
    """Reports as JSON: stable ``reports`` and ``summary`` first, timing last."""
    bad = [f for r in reports for f in failures(r)]
    doc: dict = {
        "reports": [stable_section(r) for r in reports],
        "summary": {
            "entries": len(reports),
            "skipped": [r["id"] for r in reports if r["status"] == "skipped"],
            "failures": bad,
        },
    }
    if timing:
        doc["timing"] = {r["id"]: r["timing"] for r in reports}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_validate(args: argparse.Namespace) -> int:
    entries = _load(args, _bounds(args))
    for e in entries:
        print(f"{e.id}\t{e.kind}\t{e.spec}")
        if e.over_bound:
            print(f"SKIP {e.id}: {e.over_bound}", file=sys.stderr)
    print(f"{len(entries)} entries ok", file=sys.stderr)
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    bounds = _bounds(args)
    chosen = [g for g in GROUPS if getattr(args, g)]
    reports = run_harnesses(_load(args, bounds), Selection.only(*chosen), bounds, args.jobs)
    _emit(render(reports, timing=not args.no_timing), args.out)
    bad = [f for r in reports for f in failures(r)]
    for line in bad:
        print(f"FAIL {line}", file=sys.stderr)
    for r in reports:
        if r["status"] == "skipped":
            print(f"SKIP {r['id']}: {r['reason']}", file=sys.stderr)
    return 1 if bad else 0


def _export_one(entry: CorpusEntry, what: str, bounds: Bounds) -> str:
    obj = entry.build(bounds)
    name = entry.id
    module = FiniteModule.regular(obj, bounds) if isinstance(obj, FiniteRing) else obj
    if what == "report":
        return json.dumps(stable_section(analyse(entry, bounds=bounds)), indent=2, ensure_ascii=False) + "\n"
    if what == "lattice":
        if isinstance(module, FiniteModule):
            return module.submodule_lattice().to_dot(name)
        if isinstance(obj, Quantale):
            return obj.lattice.to_dot(name)
        return obj.to_dot(name)
    if isinstance(obj, FiniteLattice):
        raise ValueError(f"{what} needs a ring, module or quantale; {name} is a lattice")
    Q = obj
    if isinstance(module, FiniteModule):
        if what == "fi-lattice":
            return module.fi_lattice().to_dot(name)
        Q, violation = try_fi_quantale(module)
        if Q is None:
            raise ValueError(f"{name}: fully invariant submodules do not form a quantale ({violation.axiom})")
    elif what == "fi-lattice":
        raise ValueError(f"fi-lattice needs a ring or module; {name} is a quantale")
    return spectrum_space(Q).to_dot(name)


def cmd_export(args: argparse.Namespace) -> int:
    bounds = _bounds(args)
    entries = _load(args, bounds)
    if not args.ids:
        raise ValueError("empty selection: name at least one entry id")
    if not args.what:
        raise ValueError("empty selection: name at least one export target with --what")
    by_id = {e.id: e for e in entries}
    missing = [i for i in args.ids if i not in by_id]
    if missing:
        raise ValueError(f"no such entry: {', '.join(missing)}")
    pieces = [_export_one(by_id[i], w, bounds) for i in args.ids for w in args.what]
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        k = 0
        for i in args.ids:
            for w in args.what:
                ext = "json" if w == "report" else "dot"
                safe = "".join(c if c.isalnum() or c in "-_+" else "_" for c in i)
                (d / f"{safe}.{w}.{ext}").write_text(pieces[k], encoding="utf-8")
                k += 1
    else:
        _emit("".join(pieces), args.out)
    return 0


def cmd_list_builtins(args: argparse.Namespace) -> int:
    sys.stdout.write(BUILTIN_CORPUS)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="demorgan",
        description="Check annihilator De Morgan laws on finite quantales, rings and modules.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--corpus", help="corpus file (default: the builtin corpus)")
        sp.add_argument("--max-ring", type=int, help="largest commutative ring order")
        sp.add_argument("--max-nc-ring", type=int, help="largest noncommutative ring order")
        sp.add_argument("--max-module", type=int, help="largest module order")
        sp.add_argument("--max-homs", type=int, help="largest hom-candidate count")

    sp = sub.add_parser("validate", help="parse and validate a corpus")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("run", help="run harnesses and write a report")
    common(sp)
    for g in GROUPS:
        sp.add_argument(f"--{g}", action="store_true", help=f"run the {g} harnesses")
    sp.add_argument("--jobs", "-j", type=int, default=1, help="worker processes")
    sp.add_argument("--out", "-o", help="report path (default stdout)")
    sp.add_argument("--no-timing", action="store_true", help="omit the volatile timing section")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("export", help="write DOT diagrams or report documents")
    common(sp)
    sp.add_argument("ids", nargs="*", help="entry ids")
    sp.add_argument("--what", action="append", choices=EXPORTS, help="export target (repeatable)")
    sp.add_argument("--out", "-o", help="output path (default stdout)")
    sp.add_argument("--out-dir", help="write one file per entry and target")
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("list-builtins", help="print the builtin corpus")
    sp.set_defaults(func=cmd_list_builtins)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CorpusError, RingError, ValueError, PreconditionError, ResourceError, OSError) as exc:
        print(f"demorgan: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
