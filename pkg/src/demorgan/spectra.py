"""Prime spectra, nuclei and the frames built from annihilators.

Covers the spectrum topology relative to a subquantale, the closure ``μ``
obtained from the ``U ⊣ U_*`` adjunction, nucleus quotients, the
rather-below operator ``r`` with its fixed-point frame ``Ψ(A)``, the regular
core, points of a frame, and the equivalence harness linking the annihilator
De Morgan law to extremal disconnectedness of the spectrum.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .lattice import FiniteLattice, PreconditionError
from .quantale import (
    Quantale,
    annihilators_complemented,
    check_dml_laws,
    is_normal,
    is_semiprime,
)
from .topology import FiniteTopSpace, homeomorphism


class SubQuantaleError(ValueError):
    pass


@dataclass(frozen=True)
class SubQuantale:
    """A subset of a quantale closed under product and joins."""

    parent: Quantale
    members: frozenset[int]

    def __post_init__(self) -> None:
        Q = self.parent
        ms = self.members
        if Q.bottom not in ms:
            raise SubQuantaleError("a subquantale must contain the empty join")
        for a in ms:
            for b in ms:
                if Q.table[a][b] not in ms:
                    raise SubQuantaleError(f"not closed under product at {Q.label(a)}, {Q.label(b)}")
                if Q.lattice.join(a, b) not in ms:
                    raise SubQuantaleError(f"not closed under join at {Q.label(a)}, {Q.label(b)}")

    @classmethod
    def whole(cls, Q: Quantale) -> SubQuantale:
        return cls(Q, frozenset(Q.elements))

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def satisfies_star(self) -> bool:
        Q = self.parent
        t = Q.top
        if t not in self.members:
            return False
        L = Q.lattice
        return all(L.leq(Q.table[t][b], b) and L.leq(Q.table[b][t], b) for b in self.members)

    def lattice(self) -> FiniteLattice:
        return self.parent.lattice.induced(self.members)


def _whole(Q: Quantale, B: SubQuantale | None) -> SubQuantale:
    return SubQuantale.whole(Q) if B is None else B


# -- primes and the spectrum ----------------------------------------------------


def primes_relative(Q: Quantale, B: SubQuantale | None = None) -> list[int]:
    """Elements ``p != 1`` with ``a·b <= p`` forcing ``a <= p`` or ``b <= p`` for ``a, b`` in B."""
    B = _whole(Q, B)
    L = Q.lattice
    bs = B.sorted_members()
    out = []
    for p in Q.elements:
        if p == Q.top:
            continue
        down = L.down_set(p)
        outside = [a for a in bs if not down >> a & 1]
        if all(not down >> Q.table[a][b] & 1 for a in outside for b in outside):
            out.append(p)
    return out


@dataclass
class Spectrum:
    """``Spec_B(A)`` with the map ``U : B -> opens``."""

    quantale: Quantale
    sub: SubQuantale
    points: list[int]
    space: FiniteTopSpace
    opens_of: dict[int, int]

    def U(self, b: int) -> int:
        return self.opens_of[b]

    def V(self, b: int) -> int:
        return self.space.full & ~self.opens_of[b]


def _open_of(Q: Quantale, points: Sequence[int], b: int) -> int:
    L = Q.lattice
    return sum(1 << i for i, p in enumerate(points) if not L.leq(b, p))


def spectrum(Q: Quantale, B: SubQuantale | None = None) -> Spectrum:
    """Build the spectrum; raises if ``B`` lacks (⋆) or the opens are not a topology."""
    B = _whole(Q, B)
    if not B.satisfies_star():
        raise PreconditionError("subquantale does not satisfy condition (⋆)")
    points = primes_relative(Q, B)
    opens_of = {b: _open_of(Q, points, b) for b in B.sorted_members()}
    space = FiniteTopSpace([Q.label(p) for p in points], set(opens_of.values()))
    return Spectrum(Q, B, points, space, opens_of)


def spectrum_space(Q: Quantale, B: SubQuantale | None = None) -> FiniteTopSpace:
    return spectrum(Q, B).space


# -- nuclei -----------------------------------------------------------------------


@dataclass
class NucleusMap:
    """A self-map of a finite lattice, checked against the nucleus axioms."""

    lattice: FiniteLattice
    image: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.image[a]

    def violations(self) -> dict[str, tuple[int, ...]]:
        L, j = self.lattice, self.image
        found: dict[str, tuple[int, ...]] = {}
        for a in L.elements:
            if "inflationary" not in found and not L.leq(a, j[a]):
                found["inflationary"] = (a,)
            if "idempotent" not in found and j[j[a]] != j[a]:
                found["idempotent"] = (a,)
            for b in L.elements:
                if "monotone" not in found and L.leq(a, b) and not L.leq(j[a], j[b]):
                    found["monotone"] = (a, b)
                if "prenucleus" not in found and j[L.meet(a, b)] != L.meet(j[a], j[b]):
                    found["prenucleus"] = (a, b)
        return found

    def is_closure(self) -> bool:
        v = self.violations()
        return not {"inflationary", "idempotent", "monotone"} & v.keys()

    def is_nucleus(self) -> bool:
        return not self.violations()

    def fixed_points(self) -> list[int]:
        return [a for a in self.lattice.elements if self.image[a] == a]


def nucleus_quotient(N: NucleusMap) -> FiniteLattice:
    """Fixed points with the induced order (meets inherited, joins ``j(a ∨ b)``)."""
    return N.lattice.induced(N.fixed_points())


def mu_values(Q: Quantale, B: SubQuantale | None = None) -> dict[int, int]:
    """``μ(b) = ⋁{x in B : U(x) ⊆ U(b)}`` for each ``b`` in B, as ids of Q."""
    sp = spectrum(Q, B)
    L = Q.lattice
    bs = sp.sub.sorted_members()
    out = {}
    for b in bs:
        ub = sp.U(b)
        out[b] = L.big_join(x for x in bs if sp.U(x) & ~ub == 0)
    return out


def mu_nucleus(Q: Quantale, B: SubQuantale | None = None) -> NucleusMap:
    """``μ`` as a map on B's own lattice (ids of ``B.lattice()``)."""
    B = _whole(Q, B)
    mu = mu_values(Q, B)
    bs = B.sorted_members()
    pos = {b: i for i, b in enumerate(bs)}
    return NucleusMap(B.lattice(), tuple(pos[mu[b]] for b in bs))


def mu_fixed_points(Q: Quantale, B: SubQuantale | None = None) -> list[int]:
    return [b for b, m in mu_values(Q, B).items() if m == b]


def mu_spectrum_isomorphism(Q: Quantale, B: SubQuantale | None = None) -> bool:
    """Whether ``b ↦ U(b)`` on μ-fixed points is an order isomorphism onto the opens."""
    sp = spectrum(Q, B)
    fixed = mu_fixed_points(Q, B)
    images = [sp.U(b) for b in fixed]
    if sorted(images) != sorted(sp.space.opens) or len(set(images)) != len(images):
        return False
    L = Q.lattice
    return all(
        L.leq(a, b) == (sp.U(a) & ~sp.U(b) == 0) for a in fixed for b in fixed
    )


def annann_map(Q: Quantale) -> NucleusMap:
    return NucleusMap(Q.lattice, tuple(Q.ann(Q.ann(a)) for a in Q.elements))


# -- frames -------------------------------------------------------------------------


def frame_dml_witness(F: FiniteLattice) -> tuple[int, int] | None:
    """First pair with ``¬(a ∧ b) != ¬a ∨ ¬b``."""
    neg = [F.negation(a) for a in F.elements]
    for a in F.elements:
        for b in F.elements:
            if neg[F.meet(a, b)] != F.join(neg[a], neg[b]):
                return (a, b)
    return None


def frame_satisfies_dml(F: FiniteLattice) -> bool:
    return frame_dml_witness(F) is None


def is_regular_frame(F: FiniteLattice) -> bool:
    if not F.is_frame():
        raise PreconditionError("regularity is defined for frames")
    neg = [F.negation(x) for x in F.elements]
    return all(
        F.big_join(x for x in F.elements if F.join(neg[x], a) == F.top) == a for a in F.elements
    )


def frame_points(F: FiniteLattice) -> FiniteTopSpace:
    """The space of prime elements of a finite frame."""
    if not F.is_frame():
        raise PreconditionError("points are computed for frames")
    points = []
    for p in F.elements:
        if p == F.top:
            continue
        down = F.down_set(p)
        outside = [a for a in F.elements if not down >> a & 1]
        if all(not down >> F.meet(a, b) & 1 for a in outside for b in outside):
            points.append(p)
    opens = {sum(1 << i for i, p in enumerate(points) if not F.leq(a, p)) for a in F.elements}
    return FiniteTopSpace([F.labels[p] for p in points], opens)


def is_extremely_disconnected(S: FiniteTopSpace) -> bool:
    return S.is_extremely_disconnected()


def is_hausdorff(S: FiniteTopSpace) -> bool:
    return S.is_hausdorff()


# -- rather below, Ψ and the regular core ---------------------------------------------


def rather_below(Q: Quantale, x: int, a: int) -> bool:
    return Q.lattice.join(Q.ann(x), a) == Q.top


def _stage_r(Q: Quantale, members: Sequence[int]) -> dict[int, int]:
    """``r`` computed inside the substructure on ``members``.

    Joins, and therefore annihilators, are those of the induced lattice; the
    product is inherited from Q.
    """
    ms = sorted(members)
    S = Q.lattice.induced(ms)
    pos = {m: i for i, m in enumerate(ms)}
    bot = Q.bottom
    ann = {x: ms[S.big_join(pos[y] for y in ms if Q.table[y][x] == bot)] for x in ms}
    top = pos[Q.top]
    return {
        a: ms[S.big_join(pos[x] for x in ms if S.join(pos[ann[x]], pos[a]) == top)] for a in ms
    }


def r_operator(Q: Quantale) -> tuple[int, ...]:
    r = _stage_r(Q, list(Q.elements))
    return tuple(r[a] for a in Q.elements)


def psi_members(Q: Quantale) -> list[int]:
    r = r_operator(Q)
    return [a for a in Q.elements if r[a] == a]


def psi(Q: Quantale) -> FiniteLattice:
    """The fixed points of ``r`` with the induced order."""
    return Q.lattice.induced(psi_members(Q))


@dataclass
class RegularCore:
    stages: list[list[int]]
    frame: FiniteLattice

    @property
    def members(self) -> list[int]:
        return self.stages[-1]

    @property
    def stabilized_at(self) -> int:
        """Least ``k`` with stage ``k`` equal to stage ``k + 1``."""
        return len(self.stages) - 1


def regular_core(Q: Quantale) -> RegularCore:
    """Iterate ``S ↦ Fix(r_S)`` from ``S = A`` until it stops shrinking."""
    stages = [list(Q.elements)]
    for _ in range(len(Q) + 1):
        r = _stage_r(Q, stages[-1])
        nxt = [a for a in stages[-1] if r[a] == a]
        if nxt == stages[-1]:
            break
        stages.append(nxt)
    else:  # pragma: no cover - finite carriers always stabilize
        raise RuntimeError("regular core iteration did not stabilize")
    return RegularCore(stages, Q.lattice.induced(stages[-1]))


def max_space(Q: Quantale) -> FiniteTopSpace:
    """Maximal elements of ``A \\ {1}`` with opens ``U(a) ∩ Max``."""
    L = Q.lattice
    maxes = L.coatoms() if Q.top != Q.bottom else []
    maxes.sort()
    opens = {sum(1 << i for i, m in enumerate(maxes) if not L.leq(a, m)) for a in Q.elements}
    return FiniteTopSpace([Q.label(m) for m in maxes], opens)


# -- harnesses -----------------------------------------------------------------------


@dataclass
class SpectralDMLReport:
    dml: bool
    law2: bool
    ann_complemented_and_dml: bool
    spec_frame_dml: bool
    spec_extremely_disconnected: bool
    witnesses: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def values(self) -> list[bool]:
        return [
            self.dml,
            self.law2,
            self.ann_complemented_and_dml,
            self.spec_frame_dml,
            self.spec_extremely_disconnected,
        ]

    @property
    def all_agree(self) -> bool:
        return len(set(self.values())) == 1


def theorem311_harness(Q: Quantale) -> SpectralDMLReport:
    """Five conditions equivalent on a semiprime two-sided idiomatic quantale."""
    if Q.mode != "iq" or not is_semiprime(Q):
        raise PreconditionError("needs a semiprime two-sided idiomatic quantale")
    laws = check_dml_laws(Q)
    space = spectrum_space(Q)
    opens = space.open_lattice()
    fw = frame_dml_witness(opens)
    wit: dict[str, tuple[int, ...]] = dict(laws.witnesses)
    if fw is not None:
        wit["spec_frame_dml"] = fw
    return SpectralDMLReport(
        dml=laws.dml,
        law2=laws.law2,
        ann_complemented_and_dml=annihilators_complemented(Q) and laws.dml,
        spec_frame_dml=fw is None,
        spec_extremely_disconnected=space.is_extremely_disconnected(),
        witnesses=wit,
    )


def mu_ann_violations(Q: Quantale) -> list[int]:
    """Elements ``a`` with ``μ(ann a) != ann a``."""
    mu = mu_values(Q)
    return [a for a in Q.elements if mu[Q.ann(a)] != Q.ann(a)]


def ann_mu_violations(Q: Quantale) -> list[int] | None:
    """Elements with ``ann a != ann μ(a)``; None when ``μ(0) != 0``."""
    mu = mu_values(Q)
    if mu[Q.bottom] != Q.bottom:
        return None
    return [a for a in Q.elements if Q.ann(a) != Q.ann(mu[a])]


def r_ann_violations(Q: Quantale) -> list[int] | None:
    """Elements with ``r(ann a) != ann a``; None when some ``ann a`` lacks a complement."""
    if not annihilators_complemented(Q):
        return None
    r = r_operator(Q)
    return [a for a in Q.elements if r[Q.ann(a)] != Q.ann(a)]


@dataclass
class PsiRegularityReport:
    psi_is_frame: bool
    psi_frame_dml: bool
    psi_regular: bool
    r_idempotent: bool
    core_stage_one: bool
    negation_is_ann: bool

    @property
    def holds(self) -> bool:
        return all(vars(self).values())


def psi_regularity_check(Q: Quantale) -> PsiRegularityReport:
    """Regularity of ``Ψ(A)`` for a semiprime quantale with DML."""
    if not (is_semiprime(Q) and check_dml_laws(Q).dml):
        raise PreconditionError("needs a semiprime quantale satisfying DML")
    members = psi_members(Q)
    F = Q.lattice.induced(members)
    frame = F.is_frame()
    r = r_operator(Q)
    core = regular_core(Q)
    neg_ok = frame and all(
        members[F.negation(i)] == Q.ann(a) for i, a in enumerate(members)
    )
    return PsiRegularityReport(
        psi_is_frame=frame,
        psi_frame_dml=frame and frame_satisfies_dml(F),
        psi_regular=frame and is_regular_frame(F),
        r_idempotent=all(r[r[a]] == r[a] for a in Q.elements),
        core_stage_one=core.members == members,
        negation_is_ann=neg_ok,
    )


@dataclass
class PsiPointsReport:
    applies: bool
    extremely_disconnected: bool | None = None
    hausdorff: bool | None = None
    max_homeomorphic: bool | None = None

    @property
    def holds(self) -> bool:
        return not self.applies or bool(self.extremely_disconnected and self.hausdorff)


def psi_points_check(Q: Quantale) -> PsiPointsReport:
    """On compact normal semiprime DML quantales, ``pt Ψ(A)`` is ED and Hausdorff."""
    applies = (
        Q.lattice.is_compact_lattice()
        and is_normal(Q)
        and is_semiprime(Q)
        and check_dml_laws(Q).dml
    )
    if not applies:
        return PsiPointsReport(False)
    pts = frame_points(psi(Q))
    mx = max_space(Q)
    try:
        homeo = homeomorphism(pts, mx) is not None
    except ValueError:
        homeo = None
    return PsiPointsReport(True, pts.is_extremely_disconnected(), pts.is_hausdorff(), homeo)

