"""Finite lattices.

Elements are the integers ``0..n-1``; labels are kept only for display and
serialization. The order is stored as up-set/down-set bitmasks and the meet
and join tables are built eagerly, so a :class:`FiniteLattice` never changes
after construction.
"""
from __future__ import annotations

import json
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence


class LatticeError(ValueError):
    """Raised for malformed orders or unknown element ids."""


class PreconditionError(ValueError):
    """Raised when an operation is called outside its domain."""


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FiniteLattice:
    """A finite lattice given by its order relation.

    ``leq[a][b]`` is truthy iff ``a <= b``. Construction validates that the
    relation is a partial order in which every pair has a meet and a join.
    """

    def __init__(self, labels: Sequence[str], leq: Sequence[Sequence[bool]]):
        n = len(labels)
        if n == 0:
            raise LatticeError("a lattice needs at least one element")
        if len(set(labels)) != n:
            raise LatticeError("element labels must be unique")
        if len(leq) != n or any(len(row) != n for row in leq):
            raise LatticeError("order matrix has the wrong shape")
        self.labels: tuple[str, ...] = tuple(str(x) for x in labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        up = [0] * n
        down = [0] * n
        for a in range(n):
            for b in range(n):
                if leq[a][b]:
                    up[a] |= 1 << b
                    down[b] |= 1 << a
        for a in range(n):
            if not up[a] >> a & 1:
                raise LatticeError(f"order is not reflexive at {self.labels[a]!r}")
            for b in _bits(up[a]):
                if b != a and up[b] >> a & 1:
                    raise LatticeError(
                        f"order is not antisymmetric: {self.labels[a]!r}, {self.labels[b]!r}"
                    )
                if up[b] & ~up[a]:
                    c = next(_bits(up[b] & ~up[a]))
                    raise LatticeError(
                        "order is not transitive: "
                        f"{self.labels[a]!r} <= {self.labels[b]!r} <= {self.labels[c]!r}"
                    )
        self._up = tuple(up)
        self._down = tuple(down)
        by_up = {m: i for i, m in enumerate(up)}
        by_down = {m: i for i, m in enumerate(down)}
        join = [[0] * n for _ in range(n)]
        meet = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                j = by_up.get(up[a] & up[b])
                m = by_down.get(down[a] & down[b])
                if j is None:
                    raise LatticeError(f"no join for {self.labels[a]!r}, {self.labels[b]!r}")
                if m is None:
                    raise LatticeError(f"no meet for {self.labels[a]!r}, {self.labels[b]!r}")
                join[a][b] = join[b][a] = j
                meet[a][b] = meet[b][a] = m
        self._join = tuple(tuple(r) for r in join)
        self._meet = tuple(tuple(r) for r in meet)
        full = (1 << n) - 1
        self.bottom = by_up[full]
        self.top = by_down[full]

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_covers(cls, labels: Sequence[str], covers: Iterable[tuple[str, str]]) -> FiniteLattice:
        """Build from Hasse edges ``(lower, upper)`` given by label."""
        index = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        leq = [[a == b for b in range(n)] for a in range(n)]
        for lo, hi in covers:
            try:
                leq[index[lo]][index[hi]] = True
            except KeyError as exc:
                raise LatticeError(f"cover mentions unknown element {exc.args[0]!r}") from None
        for k in range(n):
            for i in range(n):
                if leq[i][k]:
                    row_k = leq[k]
                    row_i = leq[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        return cls(labels, leq)

    @classmethod
    def from_sets(cls, family: Sequence[int | frozenset], labels: Sequence[str] | None = None) -> FiniteLattice:
        """Family of sets (bitmasks or frozensets) ordered by inclusion."""
        masks = [m if isinstance(m, int) else sum(1 << x for x in m) for m in family]
        if labels is None:
            labels = [str(i) for i in range(len(masks))]
        leq = [[a & ~b == 0 for b in masks] for a in masks]
        return cls(labels, leq)

    @classmethod
    def chain(cls, n: int) -> FiniteLattice:
        return cls([str(i) for i in range(n)], [[a <= b for b in range(n)] for a in range(n)])

    @classmethod
    def boolean(cls, k: int) -> FiniteLattice:
        """Powerset of ``{1..k}``, labels like ``{1,2}``."""
        masks = list(range(1 << k))
        labels = ["{" + ",".join(str(i + 1) for i in _bits(m)) + "}" for m in masks]
        return cls.from_sets(masks, labels)

    @classmethod
    def diamond(cls) -> FiniteLattice:
        """M_3."""
        return cls.from_covers(
            ["0", "a", "b", "c", "1"],
            [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )

    @classmethod
    def pentagon(cls) -> FiniteLattice:
        """N_5."""
        return cls.from_covers(
            ["0", "a", "b", "c", "1"],
            [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )

    def ordinal_sum(self, other: FiniteLattice) -> FiniteLattice:
        """``self`` below ``other``, with the top of ``self`` glued to the bottom of ``other``."""
        n = len(self)
        ids = list(range(n)) + [None] * len(other)
        k = n
        for j in other.elements:
            if j == other.bottom:
                ids[n + j] = self.top
            else:
                ids[n + j] = k
                k += 1
        labels = list(self.labels) + [""] * (k - n)
        for j in other.elements:
            if j != other.bottom:
                labels[ids[n + j]] = other.labels[j] + "'"
        leq = [[False] * k for _ in range(k)]
        for a in self.elements:
            for b in self.elements:
                leq[a][b] = self.leq(a, b)
            for j in other.elements:
                leq[a][ids[n + j]] = True
        for i in other.elements:
            for j in other.elements:
                if other.leq(i, j):
                    leq[ids[n + i]][ids[n + j]] = True
        return FiniteLattice(labels, leq)

    def product(self, other: FiniteLattice) -> FiniteLattice:
        """Cartesian product with the componentwise order."""
        pairs = [(a, b) for a in self.elements for b in other.elements]
        labels = [f"({self.labels[a]},{other.labels[b]})" for a, b in pairs]
        leq = [[self.leq(a, c) and other.leq(b, d) for c, d in pairs] for a, b in pairs]
        return FiniteLattice(labels, leq)

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"FiniteLattice(n={len(self)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.labels == other.labels and self._up == other._up

    def __hash__(self) -> int:
        return hash((self.labels, self._up))

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise LatticeError(f"unknown element label {label!r}") from None

    def _check(self, *xs: int) -> None:
        n = len(self.labels)
        for x in xs:
            if not (isinstance(x, int) and 0 <= x < n):
                raise LatticeError(f"unknown element id {x!r}")

    def leq(self, a: int, b: int) -> bool:
        self._check(a, b)
        return bool(self._up[a] >> b & 1)

    def up_set(self, a: int) -> int:
        """Bitmask of elements above ``a``."""
        return self._up[a]

    def down_set(self, a: int) -> int:
        return self._down[a]

    def meet(self, a: int, b: int) -> int:
        self._check(a, b)
        return self._meet[a][b]

    def join(self, a: int, b: int) -> int:
        self._check(a, b)
        return self._join[a][b]

    def big_join(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        for x in xs:
            self._check(x)
            acc = self._join[acc][x]
        return acc

    def big_meet(self, xs: Iterable[int]) -> int:
        acc = self.top
        for x in xs:
            self._check(x)
            acc = self._meet[acc][x]
        return acc

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges ``(a, b)`` with ``b`` covering ``a``, in index order."""
        edges = []
        for a in self.elements:
            strict = self._up[a] & ~(1 << a)
            for b in _bits(strict):
                between = strict & self._down[b] & ~(1 << b)
                if not between:
                    edges.append((a, b))
        return edges

    def atoms(self) -> list[int]:
        return [b for a, b in self.covers() if a == self.bottom]

    def coatoms(self) -> list[int]:
        return [a for a, b in self.covers() if b == self.top]

    def is_chain(self) -> bool:
        return all(self._up[a] >> b & 1 or self._up[b] >> a & 1 for a, b in combinations(self.elements, 2))

    # -- structural predicates --------------------------------------------

    def modularity_witness(self) -> tuple[int, int, int] | None:
        """First triple ``(a, b, c)`` with ``a <= b`` violating the modular law."""
        J, M = self._join, self._meet
        for a in self.elements:
            for b in _bits(self._up[a]):
                for c in self.elements:
                    if M[J[a][c]][b] != J[a][M[c][b]]:
                        return (a, b, c)
        return None

    def is_modular(self) -> bool:
        return self.modularity_witness() is None

    def distributivity_witness(self) -> tuple[int, int, int] | None:
        """First triple with ``a ∧ (b ∨ c) != (a ∧ b) ∨ (a ∧ c)``."""
        J, M = self._join, self._meet
        n = len(self)
        for a in range(n):
            Ma = M[a]
            for b in range(n):
                for c in range(b + 1, n):
                    if Ma[J[b][c]] != J[Ma[b]][Ma[c]]:
                        return (a, b, c)
        return None

    @cached_property
    def _distributive(self) -> bool:
        return self.distributivity_witness() is None

    def is_distributive(self) -> bool:
        return self._distributive

    def is_frame(self) -> bool:
        # finite: binary distributivity is equivalent to the infinite law
        return self._distributive

    def is_directed(self, xs: Iterable[int]) -> bool:
        xs = list(xs)
        if not xs:
            return False
        s = set(xs)
        return all(any(self._up[a] >> c & 1 and self._up[b] >> c & 1 for c in s) for a in s for b in s)

    # -- Heyting structure --------------------------------------------------

    def heyting_implication(self, a: int, b: int) -> int:
        self._check(a, b)
        if not self.is_frame():
            raise PreconditionError("Heyting implication needs a distributive lattice")
        Ma = self._meet[a]
        return self.big_join(x for x in self.elements if self._up[Ma[x]] >> b & 1)

    def negation(self, a: int) -> int:
        return self.heyting_implication(a, self.bottom)

    def complements(self, a: int) -> list[int]:
        self._check(a)
        return [
            b for b in self.elements if self._meet[a][b] == self.bottom and self._join[a][b] == self.top
        ]

    def has_complement(self, a: int) -> bool:
        return bool(self.complements(a))

    def is_boolean(self) -> bool:
        return self.is_distributive() and all(self.has_complement(a) for a in self.elements)

    def compact_elements(self) -> list[int]:
        return list(self.elements)

    def is_compact_lattice(self) -> bool:
        return self.top in self.compact_elements()

    # -- derived lattices ---------------------------------------------------

    def induced(self, members: Iterable[int]) -> FiniteLattice:
        """Subposet on ``members`` (sorted by id) with the inherited order.

        New element ``i`` corresponds to ``sorted(members)[i]``. Raises
        :class:`LatticeError` if the subposet is not a lattice.
        """
        ms = sorted(set(members))
        self._check(*ms)
        return FiniteLattice(
            [self.labels[m] for m in ms], [[bool(self._up[a] >> b & 1) for b in ms] for a in ms]
        )

    # -- serialization ------------------------------------------------------

    def to_document(self) -> dict:
        return {
            "elements": list(self.labels),
            "covers": [[self.labels[a], self.labels[b]] for a, b in self.covers()],
        }

    @classmethod
    def from_document(cls, doc: dict) -> FiniteLattice:
        try:
            return cls.from_covers(doc["elements"], [tuple(e) for e in doc["covers"]])
        except KeyError as exc:
            raise LatticeError(f"lattice document missing field {exc.args[0]!r}") from None

    def dumps(self) -> str:
        return json.dumps(self.to_document(), indent=2)

    @classmethod
    def loads(cls, text: str) -> FiniteLattice:
        return cls.from_document(json.loads(text))

    def to_dot(self, name: str = "lattice") -> str:
        lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
        for i, lab in enumerate(self.labels):
            lines.append(f"  n{i} [label={json.dumps(lab)}];")
        for a, b in self.covers():
            lines.append(f"  n{a} -> n{b} [arrowhead=none];")
        lines.append("}")
        return "\n".join(lines) + "\n"
