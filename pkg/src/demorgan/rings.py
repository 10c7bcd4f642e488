"""Finite rings with identity, stored as addition and multiplication tables."""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Callable, Hashable, Sequence

from .lattice import FiniteLattice
from .quantale import Quantale


class RingError(ValueError):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message if not witness else f"{message} at {witness}")
        self.witness = witness


class ResourceError(RuntimeError):
    """An enumeration would exceed a configured bound."""


@dataclass(frozen=True)
class Bounds:
    ring_order: int = 64
    noncommutative_ring_order: int = 16
    module_order: int = 64
    hom_candidates: int = 200_000

    @classmethod
    def from_env(cls) -> Bounds:
        """Read ``DEMORGAN_MAX_RING``, ``DEMORGAN_MAX_NC_RING``, ``DEMORGAN_MAX_MODULE``."""
        d = cls()
        return cls(
            ring_order=int(os.environ.get("DEMORGAN_MAX_RING", d.ring_order)),
            noncommutative_ring_order=int(os.environ.get("DEMORGAN_MAX_NC_RING", d.noncommutative_ring_order)),
            module_order=int(os.environ.get("DEMORGAN_MAX_MODULE", d.module_order)),
            hom_candidates=int(os.environ.get("DEMORGAN_MAX_HOMS", d.hom_candidates)),
        )


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


class FiniteRing:
    """An associative ring with identity on the ids ``0..n-1``."""

    def __init__(
        self,
        labels: Sequence[str],
        add: Sequence[Sequence[int]],
        mul: Sequence[Sequence[int]],
        zero: int = 0,
        one: int = 1,
        name: str = "R",
    ):
        n = len(labels)
        if n == 0:
            raise RingError("a ring needs at least one element")
        for tab in (add, mul):
            if len(tab) != n or any(len(r) != n for r in tab):
                raise RingError("table has the wrong shape")
            if any(not 0 <= v < n for r in tab for v in r):
                raise RingError("table entry out of range")
        self.labels = tuple(labels)
        self.add = tuple(tuple(r) for r in add)
        self.mul = tuple(tuple(r) for r in mul)
        self.zero, self.one, self.name = zero, one, name
        self._validate()
        self.neg = tuple(next(b for b in range(n) if self.add[a][b] == zero) for a in range(n))

    def _validate(self) -> None:
        A, M, z, u = self.add, self.mul, self.zero, self.one
        n = len(self)
        lab = self.labels
        for a in range(n):
            if A[a][z] != a:
                raise RingError("zero is not additive identity", (lab[a],))
            if M[a][u] != a or M[u][a] != a:
                raise RingError("one is not multiplicative identity", (lab[a],))
            if z not in A[a]:
                raise RingError("no additive inverse", (lab[a],))
            for b in range(n):
                if A[a][b] != A[b][a]:
                    raise RingError("addition not commutative", (lab[a], lab[b]))
                for c in range(n):
                    if A[A[a][b]][c] != A[a][A[b][c]]:
                        raise RingError("addition not associative", (lab[a], lab[b], lab[c]))
                    if M[M[a][b]][c] != M[a][M[b][c]]:
                        raise RingError("multiplication not associative", (lab[a], lab[b], lab[c]))
                    if M[a][A[b][c]] != A[M[a][b]][M[a][c]]:
                        raise RingError("left distributivity fails", (lab[a], lab[b], lab[c]))
                    if M[A[b][c]][a] != A[M[b][a]][M[c][a]]:
                        raise RingError("right distributivity fails", (lab[b], lab[c], lab[a]))

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"FiniteRing({self.name}, order={len(self)})"

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def is_commutative(self) -> bool:
        M = self.mul
        return all(M[a][b] == M[b][a] for a in self.elements for b in self.elements)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def to_document(self) -> dict:
        lab = self.labels
        return {
            "name": self.name,
            "elements": list(lab),
            "zero": lab[self.zero],
            "one": lab[self.one],
            "add": [[lab[v] for v in r] for r in self.add],
            "mul": [[lab[v] for v in r] for r in self.mul],
        }

    @classmethod
    def from_document(cls, doc: dict) -> FiniteRing:
        lab = list(doc["elements"])
        idx = {x: i for i, x in enumerate(lab)}
        try:
            add = [[idx[v] for v in r] for r in doc["add"]]
            mul = [[idx[v] for v in r] for r in doc["mul"]]
            zero, one = idx[doc.get("zero", lab[0])], idx[doc.get("one", lab[1 % len(lab)])]
        except KeyError as exc:
            raise RingError(f"unknown element {exc.args[0]!r} in ring tables") from None
        return cls(lab, add, mul, zero, one, doc.get("name", "R"))


def _from_ops(
    elems: Sequence[Hashable],
    label: Callable[[Hashable], str],
    add: Callable,
    mul: Callable,
    zero: Hashable,
    one: Hashable,
    name: str,
) -> FiniteRing:
    idx = {e: i for i, e in enumerate(elems)}
    A = [[idx[add(a, b)] for b in elems] for a in elems]
    M = [[idx[mul(a, b)] for b in elems] for a in elems]
    return FiniteRing([label(e) for e in elems], A, M, idx[zero], idx[one], name)


def _check_order(n: int, commutative: bool, bounds: Bounds | None) -> None:
    bounds = bounds or Bounds.from_env()
    limit = bounds.ring_order if commutative else bounds.noncommutative_ring_order
    if n > limit:
        raise ResourceError(f"ring of order {n} exceeds bound {limit}")


def zmod(n: int, bounds: Bounds | None = None) -> FiniteRing:
    if n < 1:
        raise RingError(f"Z_{n} is not defined")
    _check_order(n, True, bounds)
    return _from_ops(
        range(n), str, lambda a, b: (a + b) % n, lambda a, b: a * b % n, 0, 1 % n, f"Z{n}"
    )


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def prime_field(p: int, bounds: Bounds | None = None) -> FiniteRing:
    if not _is_prime(p):
        raise RingError(f"F_{p}: {p} is not prime")
    R = zmod(p, bounds)
    R.name = f"F{p}"
    return R


def direct_product(*rings: FiniteRing, bounds: Bounds | None = None) -> FiniteRing:
    """Componentwise product; labels are flat tuples like ``(0,1,1)``."""
    if not rings:
        raise RingError("direct product of no rings")
    order = 1
    for R in rings:
        order *= len(R)
    _check_order(order, all(R.is_commutative() for R in rings), bounds)
    elems = list(product(*(R.elements for R in rings)))
    return _from_ops(
        elems,
        lambda e: "(" + ",".join(R.labels[x] for R, x in zip(rings, e)) + ")",
        lambda a, b: tuple(R.add[x][y] for R, x, y in zip(rings, a, b)),
        lambda a, b: tuple(R.mul[x][y] for R, x, y in zip(rings, a, b)),
        tuple(R.zero for R in rings),
        tuple(R.one for R in rings),
        "x".join(R.name for R in rings),
    )


def _matmul(R: FiniteRing, x: tuple, y: tuple) -> tuple:
    A, M = R.add, R.mul
    a, b, c, d = x
    e, f, g, h = y
    return (A[M[a][e]][M[b][g]], A[M[a][f]][M[b][h]], A[M[c][e]][M[d][g]], A[M[c][f]][M[d][h]])


def _matlabel(R: FiniteRing, x: tuple) -> str:
    L = R.labels
    return f"[{L[x[0]]},{L[x[1]]};{L[x[2]]},{L[x[3]]}]"


def matrix_ring(R: FiniteRing, bounds: Bounds | None = None) -> FiniteRing:
    """Full 2x2 matrices over R."""
    _check_order(len(R) ** 4, False, bounds)
    z, u = R.zero, R.one
    elems = list(product(R.elements, repeat=4))
    return _from_ops(
        elems,
        lambda x: _matlabel(R, x),
        lambda x, y: tuple(R.add[p][q] for p, q in zip(x, y)),
        lambda x, y: _matmul(R, x, y),
        (z, z, z, z),
        (u, z, z, u),
        f"M2({R.name})",
    )


def upper_triangular(R: FiniteRing, bounds: Bounds | None = None) -> FiniteRing:
    """Upper-triangular 2x2 matrices over R."""
    _check_order(len(R) ** 3, False, bounds)
    z, u = R.zero, R.one
    elems = [(a, b, z, d) for a, b, d in product(R.elements, repeat=3)]
    return _from_ops(
        elems,
        lambda x: _matlabel(R, x),
        lambda x, y: tuple(R.add[p][q] for p, q in zip(x, y)),
        lambda x, y: _matmul(R, x, y),
        (z, z, z, z),
        (u, z, z, u),
        f"T2({R.name})",
    )


def dual_numbers(p: int, bounds: Bounds | None = None) -> FiniteRing:
    """``F_p[x]/(x^2)`` with elements ``a+bx``."""
    if not _is_prime(p):
        raise RingError(f"F_{p}: {p} is not prime")
    _check_order(p * p, True, bounds)
    elems = list(product(range(p), repeat=2))
    return _from_ops(
        elems,
        lambda e: f"{e[0]}+{e[1]}x",
        lambda a, b: ((a[0] + b[0]) % p, (a[1] + b[1]) % p),
        lambda a, b: (a[0] * b[0] % p, (a[0] * b[1] + a[1] * b[0]) % p),
        (0, 0),
        (1, 0),
        f"F{p}[x]/(x^2)",
    )


# -- two-sided ideals, computed straight from the ring tables ----------------------


def additive_closure(R: FiniteRing, gens: int) -> int:
    """Smallest additive subgroup containing the bitmask ``gens``."""
    mask = 1 << R.zero
    frontier = [R.zero]
    gl = _bits(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gl:
                y = R.add[x][g]
                if not mask >> y & 1:
                    mask |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return mask


def principal_ideal(R: FiniteRing, a: int) -> int:
    gens = 0
    for r in R.elements:
        ra = R.mul[r][a]
        for s in R.elements:
            gens |= 1 << R.mul[ra][s]
    return additive_closure(R, gens)


def two_sided_ideals(R: FiniteRing) -> list[int]:
    """All two-sided ideals as bitmasks, sorted by (size, mask)."""
    found = {principal_ideal(R, a) for a in R.elements}
    work = list(found)
    while work:
        x = work.pop()
        for y in list(found):
            s = additive_closure(R, x | y)
            if s not in found:
                found.add(s)
                work.append(s)
    return sorted(found, key=lambda m: (bin(m).count("1"), m))


def ideal_product(R: FiniteRing, I: int, J: int) -> int:
    gens = 0
    for a in _bits(I):
        for b in _bits(J):
            gens |= 1 << R.mul[a][b]
    return additive_closure(R, gens)


def ideal_label(R: FiniteRing, I: int) -> str:
    """``0`` or ``(g1,...)`` listing a greedy set of two-sided generators."""
    if I == 1 << R.zero:
        return "0"
    gens: list[int] = []
    cur = 1 << R.zero
    for a in _bits(I):
        if not cur >> a & 1:
            gens.append(a)
            cur = additive_closure(R, cur | principal_ideal(R, a))
    return "(" + ",".join(R.labels[g] for g in gens) + ")"


def ideal_quantale(R: FiniteRing) -> tuple[Quantale, list[int]]:
    """Two-sided ideals with the ideal product, plus the ideal bitmasks."""
    ideals = two_sided_ideals(R)
    pos = {m: i for i, m in enumerate(ideals)}
    L = FiniteLattice.from_sets(ideals, [ideal_label(R, m) for m in ideals])
    table = [[pos[ideal_product(R, I, J)] for J in ideals] for I in ideals]
    return Quantale(L, table, "iq"), ideals
