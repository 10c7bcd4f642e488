"""Finite topological spaces given by their open sets (as bitmasks)."""
from __future__ import annotations

import json
from itertools import permutations
from typing import Iterable, Sequence

from .lattice import FiniteLattice


class TopologyError(ValueError):
    def __init__(self, message: str, witness: tuple[int, ...] = ()):
        super().__init__(message)
        self.witness = witness


def _members(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


class FiniteTopSpace:
    """Points ``0..n-1`` with a family of open sets stored as bitmasks."""

    def __init__(self, labels: Sequence[str], opens: Iterable[int]):
        self.labels = tuple(labels)
        full = (1 << len(self.labels)) - 1
        fam = set(opens)
        for u in fam:
            if u & ~full:
                raise TopologyError("open set mentions an unknown point", (u,))
        if 0 not in fam:
            raise TopologyError("the empty set must be open")
        if full not in fam:
            raise TopologyError("the whole space must be open")
        ordered = sorted(fam)
        for i, u in enumerate(ordered):
            for v in ordered[i + 1 :]:
                if u | v not in fam:
                    raise TopologyError("opens not closed under union", (u, v))
                if u & v not in fam:
                    raise TopologyError("opens not closed under intersection", (u, v))
        self.opens: tuple[int, ...] = tuple(ordered)
        self.full = full

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"FiniteTopSpace(points={len(self)}, opens={len(self.opens)})"

    def is_open(self, mask: int) -> bool:
        return mask in self.opens

    def is_closed(self, mask: int) -> bool:
        return self.full & ~mask in self.opens

    def closure(self, mask: int) -> int:
        """Intersection of all closed supersets."""
        acc = self.full
        for u in self.opens:
            c = self.full & ~u
            if mask & ~c == 0:
                acc &= c
        return acc

    def interior(self, mask: int) -> int:
        acc = 0
        for u in self.opens:
            if u & ~mask == 0:
                acc |= u
        return acc

    def is_extremely_disconnected(self) -> bool:
        return all(self.closure(u) in self.opens for u in self.opens)

    def is_hausdorff(self) -> bool:
        n = len(self)
        for p in range(n):
            for q in range(p + 1, n):
                if not any(
                    u >> p & 1 and v >> q & 1 and not u & v for u in self.opens for v in self.opens
                ):
                    return False
        return True

    def is_discrete(self) -> bool:
        return all(1 << p in self.opens for p in range(len(self)))

    def open_lattice(self) -> FiniteLattice:
        labels = ["{" + ",".join(self.labels[p] for p in _members(u)) + "}" for u in self.opens]
        return FiniteLattice.from_sets(list(self.opens), labels)

    def specialization(self) -> list[tuple[int, int]]:
        """Pairs ``(p, q)``, ``p != q``, with ``p`` in the closure of ``{q}``."""
        return [
            (p, q)
            for q in range(len(self))
            for p in _members(self.closure(1 << q))
            if p != q
        ]

    def summary(self) -> dict:
        return {
            "points": len(self),
            "opens": len(self.opens),
            "extremely_disconnected": self.is_extremely_disconnected(),
            "hausdorff": self.is_hausdorff(),
        }

    def to_dot(self, name: str = "space") -> str:
        lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;"]
        for i, lab in enumerate(self.labels):
            lines.append(f"  p{i} [label={json.dumps(lab)}];")
        for p, q in self.specialization():
            lines.append(f"  p{p} -> p{q};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def homeomorphism(s: FiniteTopSpace, t: FiniteTopSpace, limit: int = 8) -> tuple[int, ...] | None:
    """A point bijection ``s -> t`` carrying opens onto opens, by brute force."""
    n = len(s)
    if n != len(t) or len(s.opens) != len(t.opens):
        return None
    if n > limit:
        raise ValueError(f"homeomorphism search limited to {limit} points")
    target = set(t.opens)
    for perm in permutations(range(n)):
        if all(sum(1 << perm[p] for p in _members(u)) in target for u in s.opens):
            return perm
    return None
