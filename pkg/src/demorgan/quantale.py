"""Products on finite lattices: quantales, annihilators, De Morgan laws.

All theorem harnesses use left annihilators ``ann(a) = (0 : a)``, the largest
``x`` with ``x·a = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

from .lattice import FiniteLattice, LatticeError, PreconditionError

Mode = Literal["iq", "quantale", "quasi"]
Pair = tuple[int, int]


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]

    def labelled(self, lattice: FiniteLattice) -> dict:
        return {"axiom": self.axiom, "witness": [lattice.labels[w] for w in self.witness]}


class QuantaleError(ValueError):
    def __init__(self, violation: Violation, lattice: FiniteLattice | None = None):
        self.violation = violation
        wit = violation.witness
        if lattice is not None:
            wit = tuple(lattice.labels[w] for w in wit)
        super().__init__(f"{violation.axiom} fails at {wit}")


def check_quantale(lattice: FiniteLattice, product: Sequence[Sequence[int]], mode: Mode = "iq") -> Violation | None:
    """Return the first violated axiom, or None if ``product`` is valid.

    ``quasi`` checks associativity only (directed joins are trivial on finite
    carriers). ``quantale`` adds distributivity over binary and empty joins on
    both sides, which covers all finite joins. ``iq`` further requires
    ``a·b <= a ∧ b``.
    """
    n = len(lattice)
    if len(product) != n or any(len(row) != n for row in product):
        return Violation("table-shape", ())
    for row in product:
        for v in row:
            if not (isinstance(v, int) and 0 <= v < n):
                return Violation("table-range", ())
    P = product
    for a in range(n):
        Pa = P[a]
        for b in range(n):
            ab = Pa[b]
            for c in range(n):
                if P[ab][c] != Pa[P[b][c]]:
                    return Violation("associativity", (a, b, c))
    if mode == "quasi":
        return None
    bot = lattice.bottom
    J = lattice._join
    for a in range(n):
        if P[bot][a] != bot:
            return Violation("left-empty-join", (a,))
        if P[a][bot] != bot:
            return Violation("right-empty-join", (a,))
    for a in range(n):
        for b in range(n):
            for c in range(b + 1, n):
                jbc = J[b][c]
                if P[jbc][a] != J[P[b][a]][P[c][a]]:
                    return Violation("left-join-distributivity", (b, c, a))
                if P[a][jbc] != J[P[a][b]][P[a][c]]:
                    return Violation("right-join-distributivity", (a, b, c))
    if mode == "iq":
        for a in range(n):
            for b in range(n):
                if not lattice.leq(P[a][b], lattice.meet(a, b)):
                    return Violation("two-sided", (a, b))
    return None


class Quantale:
    """A finite lattice with a validated associative product table."""

    def __init__(self, lattice: FiniteLattice, product: Sequence[Sequence[int]], mode: Mode = "iq"):
        bad = check_quantale(lattice, product, mode)
        if bad is not None:
            raise QuantaleError(bad, lattice)
        self.lattice = lattice
        self.mode = mode
        self.table: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in product)
        n = len(lattice)
        bot = lattice.bottom
        # ann is used everywhere; precompute both sides
        self._ann_l = tuple(
            lattice.big_join(x for x in range(n) if self.table[x][a] == bot) for a in range(n)
        )
        self._ann_r = tuple(
            lattice.big_join(x for x in range(n) if self.table[a][x] == bot) for a in range(n)
        )

    @classmethod
    def from_frame(cls, lattice: FiniteLattice) -> Quantale:
        """A distributive lattice with ``a·b = a ∧ b``."""
        return cls(lattice, [[lattice.meet(a, b) for b in lattice.elements] for a in lattice.elements])

    @classmethod
    def from_labels(cls, lattice: FiniteLattice, rows: Sequence[Sequence[str]], mode: Mode = "iq") -> Quantale:
        return cls(lattice, [[lattice.index(x) for x in row] for row in rows], mode)

    def __len__(self) -> int:
        return len(self.lattice)

    def __repr__(self) -> str:
        return f"Quantale(n={len(self)}, mode={self.mode!r})"

    @property
    def elements(self) -> range:
        return self.lattice.elements

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    def label(self, a: int) -> str:
        return self.lattice.labels[a]

    def mul(self, a: int, b: int) -> int:
        self.lattice._check(a, b)
        return self.table[a][b]

    def ann_left(self, a: int) -> int:
        self.lattice._check(a)
        return self._ann_l[a]

    ann = ann_left

    def ann_right(self, a: int) -> int:
        self.lattice._check(a)
        return self._ann_r[a]

    def residual_right(self, a: int, b: int) -> int:
        """``(a:b)``, the largest ``x`` with ``a·x <= b``."""
        L = self.lattice
        return L.big_join(x for x in L.elements if L.leq(self.table[a][x], b))

    def residual_left(self, b: int, a: int) -> int:
        """``(b:a)``, the largest ``x`` with ``x·a <= b``."""
        L = self.lattice
        return L.big_join(x for x in L.elements if L.leq(self.table[x][a], b))

    def is_commutative(self) -> bool:
        T = self.table
        return all(T[a][b] == T[b][a] for a in self.elements for b in self.elements)

    def top_is_unit(self) -> bool:
        t = self.top
        return all(self.table[t][a] == a == self.table[a][t] for a in self.elements)

    def to_document(self) -> dict:
        labs = self.lattice.labels
        return {
            "lattice": self.lattice.to_document(),
            "product": [[labs[v] for v in row] for row in self.table],
            "mode": self.mode,
        }

    @classmethod
    def from_document(cls, doc: dict) -> Quantale:
        try:
            lattice = FiniteLattice.from_document(doc["lattice"])
            return cls.from_labels(lattice, doc["product"], doc.get("mode", "iq"))
        except KeyError as exc:
            raise LatticeError(f"quantale document missing field {exc.args[0]!r}") from None


# -- predicates ----------------------------------------------------------------


def semiprime_witness(Q: Quantale) -> int | None:
    """A nonzero ``a`` with ``a·a = 0``, if any."""
    for a in Q.elements:
        if a != Q.bottom and Q.table[a][a] == Q.bottom:
            return a
    return None


def is_semiprime(Q: Quantale) -> bool:
    return semiprime_witness(Q) is None


@dataclass
class DMLReport:
    law1: bool
    law2: bool
    dml: bool
    witnesses: dict[str, Pair] = field(default_factory=dict)


def check_dml_laws(Q: Quantale) -> DMLReport:
    """Check the three annihilator laws over all pairs in index order."""
    L = Q.lattice
    ann = Q._ann_l
    J, M, T = L._join, L._meet, Q.table
    wit: dict[str, Pair] = {}
    for a in Q.elements:
        for b in Q.elements:
            if "law1" not in wit and ann[J[a][b]] != M[ann[a]][ann[b]]:
                wit["law1"] = (a, b)
            rhs = J[ann[a]][ann[b]]
            if "law2" not in wit and ann[T[a][b]] != rhs:
                wit["law2"] = (a, b)
            if "dml" not in wit and ann[M[a][b]] != rhs:
                wit["dml"] = (a, b)
    return DMLReport("law1" not in wit, "law2" not in wit, "dml" not in wit, wit)


def satisfies_dml(Q: Quantale) -> bool:
    return check_dml_laws(Q).dml


def annihilators_complemented(Q: Quantale) -> bool:
    L = Q.lattice
    return all(L.has_complement(Q.ann(a)) for a in Q.elements)


def is_normal(Q: Quantale) -> bool:
    L = Q.lattice
    els = list(Q.elements)
    top, bot = Q.top, Q.bottom
    for a in els:
        for b in els:
            if L.join(a, b) != top:
                continue
            ok = any(
                L.join(a, b2) == top and L.join(a2, b) == top and Q.table[a2][b2] == bot
                for a2 in els
                for b2 in els
            )
            if not ok:
                return False
    return True


@dataclass
class AnnihilatorDMLReport:
    semiprime_and_dml: bool
    law2_all_pairs: bool
    ann_complemented_and_dml: bool

    @property
    def all_agree(self) -> bool:
        return self.semiprime_and_dml == self.law2_all_pairs == self.ann_complemented_and_dml


def prop34_harness(Q: Quantale) -> AnnihilatorDMLReport:
    """Evaluate the three equivalent conditions independently."""
    if Q.mode != "iq":
        raise PreconditionError("the equivalence harness needs a two-sided idiomatic quantale")
    laws = check_dml_laws(Q)
    return AnnihilatorDMLReport(
        semiprime_and_dml=is_semiprime(Q) and laws.dml,
        law2_all_pairs=laws.law2,
        ann_complemented_and_dml=annihilators_complemented(Q) and laws.dml,
    )


def ann_product_meet_witness(Q: Quantale) -> Pair | None:
    """First pair with ``ann(a·b) != ann(a ∧ b)``."""
    for a in Q.elements:
        for b in Q.elements:
            if Q.ann(Q.table[a][b]) != Q.ann(Q.lattice.meet(a, b)):
                return (a, b)
    return None


def lemma33_check(Q: Quantale) -> bool:
    if not is_semiprime(Q):
        raise PreconditionError("needs a semiprime quantale")
    return ann_product_meet_witness(Q) is None


def lemma38_check(Q: Quantale) -> bool:
    """``a·b = 0`` forces ``b·a = 0`` and ``a ∧ b = 0``."""
    if not is_semiprime(Q):
        raise PreconditionError("needs a semiprime quantale")
    bot = Q.bottom
    for a in Q.elements:
        for b in Q.elements:
            if Q.table[a][b] == bot and (Q.table[b][a] != bot or Q.lattice.meet(a, b) != bot):
                return False
    return True
