"""Corpus files and structure expressions.

A corpus file has one entry per line, ``<id> <kind> <spec> [key=value ...]``::

    # id        kind      spec               expectations
    z6          ring      Z6                 semiprime=true dml=true
    klein       module    F2^2
    chain3      quantale  chain(3)
    custom      ring      @tables/r.json
    Z12                                  # bare spec: id "Z12", kind inferred

Spec grammar (whitespace inside a spec is ignored)::

    ring     := term ('x' term)*
    term     := 'Z' INT | 'F' INT | 'F' INT '[x]/(x^2)' | 'M2(' ring ')'
              | 'T2(' ring ')' | '(' ring ')' | '@' PATH
    module   := ring ('^' INT)? | 'Z' INT '[' INT (',' INT)* ']'
    lattice  := 'chain(' INT ')' | 'boolean(' INT ')' | 'M3' | 'N5'
              | 'osum(' lattice ',' lattice ')' | 'lprod(' lattice ',' lattice ')' | '@' PATH
    quantale := 'frame(' lattice ')' | 'chain(' INT ')' | 'boolean(' INT ')'
              | 'ideals(' ring ')' | '@' PATH

``@PATH`` names a JSON document (ring tables, lattice covers, or a quantale
with lattice and product matrix), resolved relative to the corpus file.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .lattice import FiniteLattice, LatticeError
from .modules import FiniteModule
from .quantale import Quantale, QuantaleError
from .rings import (
    Bounds,
    FiniteRing,
    ResourceError,
    RingError,
    dual_numbers,
    direct_product,
    ideal_quantale,
    matrix_ring,
    prime_field,
    upper_triangular,
    zmod,
)

KINDS = ("ring", "module", "quantale", "lattice")
Structure = Union[FiniteRing, FiniteModule, Quantale, FiniteLattice]


class CorpusError(ValueError):
    """Parse or validation failure, with 1-based line and column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line, self.column = line, column


class SpecSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos + 1}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(\[x\]/\(x\^2\))|(@[^\s(),]+)|([A-Za-z][A-Za-z0-9]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, dual, path, word, sym = m.groups()
        start = m.start(m.lastindex) if m.lastindex else pos
        if num is not None:
            toks.append(("int", num, start))
        elif dual is not None:
            toks.append(("dual", dual, start))
        elif path is not None:
            toks.append(("path", path[1:], start))
        elif word is not None:
            toks.append(("word", word, start))
        elif sym is not None and not sym.isspace():
            toks.append(("sym", sym, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, base: Path, bounds: Bounds):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.base = base
        self.bounds = bounds

    # token helpers
    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, kind: str | None = None, value: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind
            raise SpecSyntaxError(f"expected {want!r}, found {tok[1] or 'end'!r}", tok[2])
        self.i += 1
        return tok

    def done(self) -> None:
        tok = self.peek()
        if tok[0] != "end":
            raise SpecSyntaxError(f"unexpected {tok[1]!r}", tok[2])

    def load(self, rel: str, pos: int) -> dict:
        path = (self.base / rel).resolve()
        try:
            return json.loads(path.read_text())
        except OSError as exc:
            raise SpecSyntaxError(f"cannot read {rel}: {exc.strerror}", pos) from None
        except json.JSONDecodeError as exc:
            raise SpecSyntaxError(f"{rel}: invalid JSON ({exc.msg}, line {exc.lineno})", pos) from None

    # ring
    def ring(self) -> FiniteRing:
        factors = [self.ring_term()]
        while self.peek()[:2] == ("word", "x"):
            self.take()
            factors.append(self.ring_term())
        if len(factors) == 1:
            return factors[0]
        return direct_product(*factors, bounds=self.bounds)

    def ring_term(self) -> FiniteRing:
        kind, val, pos = self.peek()
        if kind == "path":
            self.take()
            return FiniteRing.from_document(self.load(val, pos))
        if kind == "sym" and val == "(":
            self.take()
            R = self.ring()
            self.take("sym", ")")
            return R
        if kind != "word":
            raise SpecSyntaxError(f"expected a ring, found {val or 'end'!r}", pos)
        m = re.fullmatch(r"([ZF])(\d+)", val)
        if m:
            self.take()
            n = int(m.group(2))
            if m.group(1) == "Z":
                return zmod(n, self.bounds)
            if self.peek()[0] == "dual":
                self.take()
                return dual_numbers(n, self.bounds)
            return prime_field(n, self.bounds)
        if val in ("Z", "F"):
            # "Z 6" written with a space
            self.take()
            n = int(self.take("int")[1])
            if val == "Z":
                return zmod(n, self.bounds)
            if self.peek()[0] == "dual":
                self.take()
                return dual_numbers(n, self.bounds)
            return prime_field(n, self.bounds)
        if val in ("M2", "T2"):
            self.take()
            self.take("sym", "(")
            R = self.ring()
            self.take("sym", ")")
            return matrix_ring(R, self.bounds) if val == "M2" else upper_triangular(R, self.bounds)
        raise SpecSyntaxError(f"unknown ring constructor {val!r}", pos)

    def module(self) -> FiniteModule:
        kind, val, pos = self.peek()
        m = re.fullmatch(r"Z(\d+)", val) if kind == "word" else None
        if m and self.toks[self.i + 1][:2] == ("sym", "["):
            self.i += 2
            orders = [int(self.take("int")[1])]
            while self.peek()[:2] == ("sym", ","):
                self.take()
                orders.append(int(self.take("int")[1]))
            self.take("sym", "]")
            try:
                return FiniteModule.cyclic_sum(int(m.group(1)), orders, self.bounds)
            except RingError as exc:
                raise SpecSyntaxError(str(exc), pos) from None
        R = self.ring()
        if self.peek()[:2] == ("sym", "^"):
            self.take()
            k = int(self.take("int")[1])
            return FiniteModule.free(R, k, self.bounds)
        return FiniteModule.regular(R, self.bounds)

    # lattices and quantales
    def _int_arg(self) -> int:
        self.take("sym", "(")
        n = int(self.take("int")[1])
        self.take("sym", ")")
        return n

    def lattice(self) -> FiniteLattice:
        kind, val, pos = self.peek()
        if kind == "path":
            self.take()
            return FiniteLattice.from_document(self.load(val, pos))
        if kind != "word":
            raise SpecSyntaxError(f"expected a lattice, found {val or 'end'!r}", pos)
        self.take()
        if val == "chain":
            return FiniteLattice.chain(self._int_arg())
        if val == "boolean":
            return FiniteLattice.boolean(self._int_arg())
        if val == "M3":
            return FiniteLattice.diamond()
        if val == "N5":
            return FiniteLattice.pentagon()
        if val in ("osum", "lprod"):
            self.take("sym", "(")
            a = self.lattice()
            self.take("sym", ",")
            b = self.lattice()
            self.take("sym", ")")
            return a.ordinal_sum(b) if val == "osum" else a.product(b)
        raise SpecSyntaxError(f"unknown lattice constructor {val!r}", pos)

    def quantale(self) -> Quantale:
        kind, val, pos = self.peek()
        if kind == "path":
            self.take()
            return Quantale.from_document(self.load(val, pos))
        if kind == "word" and val == "ideals":
            self.take()
            self.take("sym", "(")
            R = self.ring()
            self.take("sym", ")")
            return ideal_quantale(R)[0]
        if kind == "word" and val == "frame":
            self.take()
            self.take("sym", "(")
            L = self.lattice()
            self.take("sym", ")")
            return Quantale.from_frame(L)
        if kind == "word" and val in ("chain", "boolean"):
            return Quantale.from_frame(self.lattice())
        raise SpecSyntaxError(f"expected a quantale, found {val or 'end'!r}", pos)


def build(kind: str, spec: str, base: Path | str = ".", bounds: Bounds | None = None) -> Structure:
    """Parse and validate a structure expression of the given kind."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    p = _Parser(spec, Path(base), bounds or Bounds.from_env())
    out = getattr(p, kind)()
    p.done()
    return out


@dataclass
class CorpusEntry:
    id: str
    kind: str
    spec: str
    expected: dict[str, object] = field(default_factory=dict)
    line: int | None = None
    base: Path = Path(".")
    # set when validation hit a size bound; the entry is kept and skipped at run time
    over_bound: str | None = None

    def build(self, bounds: Bounds | None = None) -> Structure:
        return build(self.kind, self.spec, self.base, bounds)


_LATTICE_HEADS = ("M3", "N5", "osum(", "lprod(")
_QUANTALE_HEADS = ("chain(", "boolean(", "frame(", "ideals(")


def infer_kind(spec: str) -> str:
    """Guess the kind of a bare spec from its leading constructor."""
    spec = spec.replace(" ", "")
    if spec.startswith(_LATTICE_HEADS):
        return "lattice"
    if spec.startswith(_QUANTALE_HEADS):
        return "quantale"
    if "^" in spec.replace("(x^2)", "") or re.match(r"Z\d+\[", spec):
        return "module"
    return "ring"


def _parse_value(text: str) -> object:
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(text)
    except ValueError:
        return text


def parse_corpus_text(text: str, base: Path | str = ".", validate: bool = True, bounds: Bounds | None = None) -> list[CorpusEntry]:
    entries: list[CorpusEntry] = []
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) >= 3 and parts[1] in KINDS:
            ident, kind, rest = parts[0], parts[1], parts[2:]
        else:
            # shorthand: a bare spec names itself and its kind is inferred
            rest = parts
            spec_text = "".join(t for t in parts if "=" not in t)
            ident, kind = spec_text, infer_kind(spec_text)
        spec_parts, expected = [], {}
        for tok in rest:
            if "=" in tok:
                key, _, value = tok.partition("=")
                expected[key] = _parse_value(value)
            elif expected:
                raise CorpusError(f"spec text {tok!r} after expectations", lineno, raw.index(tok) + 1)
            else:
                spec_parts.append(tok)
        if not spec_parts:
            raise CorpusError("missing spec", lineno, len(raw.rstrip()) + 1)
        if ident in seen:
            raise CorpusError(f"duplicate id {ident!r} (first on line {seen[ident]})", lineno, 1)
        seen[ident] = lineno
        entry = CorpusEntry(ident, kind, " ".join(spec_parts), expected, lineno, Path(base))
        if validate:
            spec_col = raw.index(spec_parts[0]) + 1
            try:
                entry.build(bounds)
            except SpecSyntaxError as exc:
                raise CorpusError(str(exc), lineno, spec_col + exc.pos) from None
            except ResourceError as exc:
                entry.over_bound = str(exc)
            except (RingError, LatticeError, QuantaleError) as exc:
                raise CorpusError(f"{ident}: validation failed: {exc}", lineno, spec_col) from None
        entries.append(entry)
    return entries


def parse_corpus(path: str | Path, validate: bool = True, bounds: Bounds | None = None) -> list[CorpusEntry]:
    path = Path(path)
    return parse_corpus_text(path.read_text(), path.parent, validate, bounds)


BUILTIN_CORPUS = """\
# rings are analysed as modules over themselves
Z2          ring      Z2
Z3          ring      Z3
Z4          ring      Z4
Z6          ring      Z6
Z8          ring      Z8
Z12         ring      Z12
F2          ring      F2
F3          ring      F3
F2xF2       ring      F2 x F2
Z2xZ2xZ2    ring      Z2 x Z2 x Z2
M2(F2)      ring      M2(F2)
T2(F2)      ring      T2(F2)
F2[x]/(x^2) ring      F2[x]/(x^2)
# Z2+Z2 over Z realized over F2: same subgroup lattice
Z2+Z2       module    F2^2
# hand-built frames with product = meet
bool1       quantale  boolean(1)
bool2       quantale  boolean(2)
bool3       quantale  boolean(3)
chain2      quantale  chain(2)
chain3      quantale  chain(3)
chain4      quantale  chain(4)
square+top  quantale  frame(osum(boolean(2), chain(2)))
2x3         quantale  frame(lprod(chain(2), chain(3)))
# lattice controls
M3          lattice   M3
N5          lattice   N5
"""


def builtin_corpus(bounds: Bounds | None = None) -> list[CorpusEntry]:
    return parse_corpus_text(BUILTIN_CORPUS, ".", True, bounds)
