"""Finite left modules, their submodule lattices and homomorphisms.

Submodules are bitmasks over module element ids. Lattices built here use the
ordering ``(size, mask)``, so lattice element ``i`` is ``masks[i]`` of the
corresponding enumeration.
"""
from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Sequence

from .lattice import FiniteLattice
from .quantale import Quantale, QuantaleError, Violation, check_quantale
from .rings import Bounds, FiniteRing, ResourceError, RingError, _bits, zmod

Map = tuple[int, ...]


class ModuleError(RingError):
    pass


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _order_key(m: int) -> tuple[int, int]:
    return (_popcount(m), m)


class FiniteModule:
    """A unital left module over a :class:`FiniteRing`.

    ``action[r][m]`` is ``r·m``. Axioms are checked exhaustively at
    construction.
    """

    def __init__(
        self,
        ring: FiniteRing,
        labels: Sequence[str],
        add: Sequence[Sequence[int]],
        action: Sequence[Sequence[int]],
        zero: int = 0,
        name: str = "M",
        bounds: Bounds | None = None,
    ):
        self.bounds = bounds or Bounds.from_env()
        n = len(labels)
        if n > self.bounds.module_order:
            raise ResourceError(f"module of order {n} exceeds bound {self.bounds.module_order}")
        self.ring = ring
        self.labels = tuple(labels)
        self.add = tuple(tuple(r) for r in add)
        self.action = tuple(tuple(r) for r in action)
        self.zero = zero
        self.name = name
        self._validate()
        self.neg = tuple(next(b for b in range(n) if self.add[a][b] == zero) for a in range(n))
        self._hom_cache: dict[int, tuple[Map, ...]] = {}

    def _validate(self) -> None:
        R, A, X, z = self.ring, self.add, self.action, self.zero
        n = len(self.labels)
        if len(A) != n or any(len(r) != n for r in A):
            raise ModuleError("addition table has the wrong shape")
        if len(X) != len(R) or any(len(r) != n for r in X):
            raise ModuleError("action table has the wrong shape")
        lab, rl = self.labels, R.labels
        for a in range(n):
            if A[a][z] != a or z not in A[a]:
                raise ModuleError("zero is not an additive identity with inverses", (lab[a],))
            if X[R.one][a] != a:
                raise ModuleError("1·m != m", (lab[a],))
            for b in range(n):
                if A[a][b] != A[b][a]:
                    raise ModuleError("addition not commutative", (lab[a], lab[b]))
                for c in range(n):
                    if A[A[a][b]][c] != A[a][A[b][c]]:
                        raise ModuleError("addition not associative", (lab[a], lab[b], lab[c]))
        for r in R.elements:
            Xr = X[r]
            for a in range(n):
                for b in range(n):
                    if Xr[A[a][b]] != A[Xr[a]][Xr[b]]:
                        raise ModuleError("r(m+n) != rm+rn", (rl[r], lab[a], lab[b]))
                for s in R.elements:
                    if X[R.add[r][s]][a] != A[Xr[a]][X[s][a]]:
                        raise ModuleError("(r+s)m != rm+sm", (rl[r], rl[s], lab[a]))
                    if X[R.mul[r][s]][a] != Xr[X[s][a]]:
                        raise ModuleError("(rs)m != r(sm)", (rl[r], rl[s], lab[a]))

    # -- constructors -----------------------------------------------------

    @classmethod
    def regular(cls, R: FiniteRing, bounds: Bounds | None = None) -> FiniteModule:
        """R as a left module over itself."""
        return cls(R, R.labels, R.add, R.mul, R.zero, name=R.name, bounds=bounds)

    @classmethod
    def free(cls, R: FiniteRing, k: int, bounds: Bounds | None = None) -> FiniteModule:
        """``R^k`` with componentwise operations."""
        bounds = bounds or Bounds.from_env()
        if len(R) ** k > bounds.module_order:
            raise ResourceError(f"module of order {len(R) ** k} exceeds bound {bounds.module_order}")
        elems = list(product(R.elements, repeat=k))
        idx = {e: i for i, e in enumerate(elems)}
        add = [[idx[tuple(R.add[p][q] for p, q in zip(a, b))] for b in elems] for a in elems]
        act = [[idx[tuple(R.mul[r][p] for p in a)] for a in elems] for r in R.elements]
        labels = ["(" + ",".join(R.labels[p] for p in e) + ")" for e in elems]
        return cls(R, labels, add, act, idx[(R.zero,) * k], name=f"{R.name}^{k}", bounds=bounds)

    @classmethod
    def cyclic_sum(cls, n: int, orders: Sequence[int], bounds: Bounds | None = None) -> FiniteModule:
        """``Z_{k1} ⊕ ... ⊕ Z_{km}`` as a module over ``Z_n``; each ``k`` must divide ``n``."""
        if not orders or any(k < 1 or n % k for k in orders):
            raise ModuleError(f"orders {list(orders)} must be nonempty divisors of {n}")
        bounds = bounds or Bounds.from_env()
        size = 1
        for k in orders:
            size *= k
        if size > bounds.module_order:
            raise ResourceError(f"module of order {size} exceeds bound {bounds.module_order}")
        R = zmod(n, bounds)
        elems = list(product(*(range(k) for k in orders)))
        idx = {e: i for i, e in enumerate(elems)}
        add = [[idx[tuple((x + y) % k for x, y, k in zip(a, b, orders))] for b in elems] for a in elems]
        act = [[idx[tuple(r * x % k for x, k in zip(a, orders))] for a in elems] for r in R.elements]
        labels = ["(" + ",".join(map(str, e)) + ")" for e in elems]
        name = f"Z{n}[{','.join(map(str, orders))}]"
        return cls(R, labels, add, act, idx[(0,) * len(orders)], name=name, bounds=bounds)

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"FiniteModule({self.name}, order={len(self)})"

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    @property
    def full(self) -> int:
        return (1 << len(self)) - 1

    @property
    def zero_sub(self) -> int:
        return 1 << self.zero

    # -- submodules -------------------------------------------------------

    def cyclic(self, m: int) -> int:
        """``Rm`` as a bitmask."""
        mask = 0
        for r in self.ring.elements:
            mask |= 1 << self.action[r][m]
        return mask

    @cached_property
    def _cyclics(self) -> tuple[int, ...]:
        return tuple(self.cyclic(m) for m in self.elements)

    def sum(self, N: int, L: int) -> int:
        mask = 0
        for a in _bits(N):
            row = self.add[a]
            for b in _bits(L):
                mask |= 1 << row[b]
        return mask

    def generated(self, S: int) -> int:
        acc = self.zero_sub
        for m in _bits(S):
            if not acc >> m & 1:
                acc = self.sum(acc, self._cyclics[m])
        return acc

    def is_submodule(self, N: int) -> bool:
        return bool(N >> self.zero & 1) and self.generated(N) == N

    @cached_property
    def submodules(self) -> tuple[int, ...]:
        """All submodules: cyclic ones closed under pairwise sums."""
        found = set(self._cyclics) | {self.zero_sub}
        work = list(found)
        while work:
            x = work.pop()
            for y in list(found):
                s = self.sum(x, y)
                if s not in found:
                    found.add(s)
                    work.append(s)
        return tuple(sorted(found, key=_order_key))

    def generators(self, N: int) -> list[int]:
        """Greedy generating set of ``N`` in index order."""
        gens: list[int] = []
        cur = self.zero_sub
        for m in _bits(N):
            if not cur >> m & 1:
                gens.append(m)
                cur = self.sum(cur, self._cyclics[m])
        return gens

    def sub_label(self, N: int) -> str:
        if N == self.zero_sub:
            return "0"
        return "(" + ",".join(self.labels[g] for g in self.generators(N)) + ")"

    def sub_lattice(self, masks: Sequence[int]) -> FiniteLattice:
        return FiniteLattice.from_sets(list(masks), [self.sub_label(m) for m in masks])

    def submodule_lattice(self) -> FiniteLattice:
        return self.sub_lattice(self.submodules)

    # -- homomorphisms -------------------------------------------------------

    @cached_property
    def _presentation(self) -> tuple[list[int], dict[int, tuple[int, ...]], list[tuple[int, ...]]]:
        """Generators, one coefficient vector per element, and all relation vectors."""
        gens = self.generators(self.full)
        k = len(gens)
        R = self.ring
        if len(R) ** k > self.bounds.hom_candidates:
            raise ResourceError(f"presentation needs {len(R)}^{k} coefficient vectors")
        coeff: dict[int, tuple[int, ...]] = {}
        relations = []
        for cs in product(R.elements, repeat=k):
            m = self.zero
            for c, g in zip(cs, gens):
                m = self.add[m][self.action[c][g]]
            coeff.setdefault(m, cs)
            if m == self.zero:
                relations.append(cs)
        return gens, coeff, relations

    def _combine(self, cs: tuple[int, ...], images: tuple[int, ...]) -> int:
        v = self.zero
        for c, t in zip(cs, images):
            v = self.add[v][self.action[c][t]]
        return v

    def homs_into(self, K: int) -> tuple[Map, ...]:
        """All homomorphisms ``M -> K`` for a submodule ``K``, each as an image tuple.

        Generator images range over ``K``; a choice is kept iff every
        relation among the generators is sent to zero.
        """
        if K in self._hom_cache:
            return self._hom_cache[K]
        gens, coeff, relations = self._presentation
        targets = _bits(K)
        count = len(targets) ** len(gens)
        if count > self.bounds.hom_candidates:
            raise ResourceError(f"{count} candidate homomorphisms exceed bound {self.bounds.hom_candidates}")
        maps = []
        for images in product(targets, repeat=len(gens)):
            if all(self._combine(rel, images) == self.zero for rel in relations):
                maps.append(tuple(self._combine(coeff[m], images) for m in self.elements))
        maps.sort()
        out = tuple(maps)
        self._hom_cache[K] = out
        return out

    @property
    def endomorphisms(self) -> tuple[Map, ...]:
        return self.homs_into(self.full)

    def is_homomorphism(self, f: Map) -> bool:
        A, X = self.add, self.action
        return all(f[A[a][b]] == A[f[a]][f[b]] for a in self.elements for b in self.elements) and all(
            f[X[r][a]] == X[r][f[a]] for r in self.ring.elements for a in self.elements
        )

    def image(self, f: Map, N: int) -> int:
        mask = 0
        for a in _bits(N):
            mask |= 1 << f[a]
        return mask

    def kernel(self, f: Map) -> int:
        return sum(1 << a for a in self.elements if f[a] == self.zero)

    def compose(self, f: Map, g: Map) -> Map:
        """``f ∘ g``."""
        return tuple(f[g[a]] for a in self.elements)

    def map_sum(self, f: Map, g: Map) -> Map:
        return tuple(self.add[f[a]][g[a]] for a in self.elements)

    # -- fully invariant submodules ------------------------------------------

    def is_fully_invariant(self, N: int) -> bool:
        return all(self.image(f, N) & ~N == 0 for f in self.endomorphisms)

    @cached_property
    def fi_submodules(self) -> tuple[int, ...]:
        return tuple(N for N in self.submodules if self.is_fully_invariant(N))

    def fi_lattice(self) -> FiniteLattice:
        return self.sub_lattice(self.fi_submodules)

    def fi_index(self, N: int) -> int:
        return self.fi_submodules.index(N)


# -- products, annihilators, residuals ---------------------------------------------


def enumerate_submodules(M: FiniteModule) -> FiniteLattice:
    return M.submodule_lattice()


def hom_set(M: FiniteModule, K: int) -> tuple[Map, ...]:
    return M.homs_into(K)


def fully_invariant_lattice(M: FiniteModule) -> FiniteLattice:
    return M.fi_lattice()


def bican_product(M: FiniteModule, N: int, K: int) -> int:
    """``N_M K``: the sum of ``f(N)`` over all ``f : M -> K``."""
    acc = M.zero_sub
    for f in M.homs_into(K):
        acc |= M.image(f, N)
    return M.generated(acc)


def annihilator(M: FiniteModule, K: int) -> int:
    """``Ann_M(K)``: intersection of the kernels of all maps ``M -> K``."""
    acc = M.full
    for f in M.homs_into(K):
        acc &= M.kernel(f)
    return acc


def colon(M: FiniteModule, N: int, L: int) -> int:
    """``(N:L)``: elements sent into ``N`` by every map ``M -> L``."""
    acc = M.full
    for f in M.homs_into(L):
        acc &= sum(1 << a for a in M.elements if N >> f[a] & 1)
    return acc


class FIQuantaleError(QuantaleError):
    pass


def fi_quantale(M: FiniteModule) -> Quantale:
    """Fully invariant submodules with the Bican product.

    Closure, associativity and join-distributivity are checked; a failure
    raises :class:`FIQuantaleError` carrying the violated axiom.
    """
    fis = M.fi_submodules
    pos = {N: i for i, N in enumerate(fis)}
    L = M.fi_lattice()
    table = []
    for i, N in enumerate(fis):
        row = []
        for j, K in enumerate(fis):
            P = bican_product(M, N, K)
            if P not in pos:
                raise FIQuantaleError(Violation("fi-closure", (i, j)), L)
            row.append(pos[P])
        table.append(row)
    bad = check_quantale(L, table, "iq")
    if bad is not None:
        raise FIQuantaleError(bad, L)
    return Quantale(L, table, "iq")


def try_fi_quantale(M: FiniteModule) -> tuple[Quantale | None, Violation | None]:
    try:
        return fi_quantale(M), None
    except FIQuantaleError as exc:
        return None, exc.violation


# -- prime and semiprime -----------------------------------------------------------


def _pairs(xs):
    for a in xs:
        for b in xs:
            yield a, b


def is_prime_submodule(M: FiniteModule, N: int) -> bool:
    if N == M.full or not M.is_fully_invariant(N):
        return False
    return all(
        bican_product(M, L, K) & ~N or not (K & ~N and L & ~N) for L, K in _pairs(M.fi_submodules)
    )


def is_semiprime_submodule(M: FiniteModule, N: int) -> bool:
    if N == M.full or not M.is_fully_invariant(N):
        return False
    return all(bican_product(M, L, L) & ~N or L & ~N == 0 for L in M.fi_submodules)


def semiprime_module_witness(M: FiniteModule) -> int | None:
    """A nonzero fully invariant ``L`` with ``L_M L = 0``, if one exists."""
    for L in M.fi_submodules:
        if L != M.zero_sub and bican_product(M, L, L) == M.zero_sub:
            return L
    return None


def is_semiprime_module(M: FiniteModule) -> bool:
    if len(M) == 1:
        return False  # 0 is not a proper submodule
    return semiprime_module_witness(M) is None


def is_fi_retractable(M: FiniteModule) -> bool:
    return all(len(M.homs_into(K)) > 1 for K in M.fi_submodules if K != M.zero_sub)


def direct_complements(M: FiniteModule, N: int) -> list[int]:
    return [L for L in M.submodules if L & N == M.zero_sub and M.sum(N, L) == M.full]


def is_direct_summand(M: FiniteModule, N: int) -> bool:
    return bool(direct_complements(M, N))


def is_fi_baer(M: FiniteModule) -> bool:
    return all(is_direct_summand(M, annihilator(M, N)) for N in M.fi_submodules)


def projection(M: FiniteModule, N: int, L: int) -> Map:
    """The idempotent onto ``N`` along ``L`` for ``M = N ⊕ L``."""
    out = [M.zero] * len(M)
    for n in _bits(N):
        for l in _bits(L):
            out[M.add[n][l]] = n
    return tuple(out)


def is_central(M: FiniteModule, e: Map) -> bool:
    return all(M.compose(f, e) == M.compose(e, f) for f in M.endomorphisms)


def has_central_projection(M: FiniteModule, N: int) -> bool:
    return any(is_central(M, projection(M, N, L)) for L in direct_complements(M, N))


# -- De Morgan laws -----------------------------------------------------------------


def module_dml_witness(M: FiniteModule) -> tuple[int, int] | None:
    ann = {N: annihilator(M, N) for N in M.fi_submodules}
    for N, L in _pairs(M.fi_submodules):
        if ann[N & L] != M.sum(ann[N], ann[L]):
            return (N, L)
    return None


def module_dml(M: FiniteModule) -> bool:
    return module_dml_witness(M) is None


def sdml_checks(M: FiniteModule) -> dict[str, bool]:
    fis = M.fi_submodules
    col = {(N, L): colon(M, N, L) for N, L in _pairs(fis)}
    sdml = all(M.sum(col[N, L], col[L, N]) == M.full for N, L in _pairs(fis))
    sdml1 = sdml2 = True
    for N, L in _pairs(fis):
        for K in fis:
            if sdml1 and colon(M, M.sum(N, L), K) != M.sum(col[N, K], col[L, K]):
                sdml1 = False
            if sdml2 and colon(M, N, L & K) != M.sum(col[N, L], col[N, K]):
                sdml2 = False
    return {"sdml": sdml, "sdml1": sdml1, "sdml2": sdml2}


def generates_fi_submodules(M: FiniteModule) -> bool:
    """``N = M_M N`` for every fully invariant ``N``."""
    return all(bican_product(M, M.full, N) == N for N in M.fi_submodules)


def homs_split_over_sums(M: FiniteModule) -> bool:
    """``Hom(M, L+K) = Hom(M, L) + Hom(M, K)`` for fully invariant ``L, K``.

    This is the consequence of quasi-projectivity that the residual
    distributivity argument uses; it is checked directly. The right side is
    a sum of subgroups meeting in ``Hom(M, L∩K)`` and always lies inside the
    left, so comparing orders suffices.
    """
    fis = M.fi_submodules
    h = {N: len(M.homs_into(N)) for N in fis}
    for L, K in _pairs(fis):
        S = M.sum(L, K)
        if len(M.homs_into(S)) * len(M.homs_into(L & K)) != h[L] * h[K]:
            return False
    return True


def prop62_properties(M: FiniteModule) -> dict[str, dict]:
    """Check the six residual properties over all fully invariant triples.

    Items 5 and 6 are reported as ``skipped`` when their hypotheses fail.
    """
    fis = M.fi_submodules
    full = M.full
    col = {(N, L): colon(M, N, L) for N, L in _pairs(fis)}

    def leq(a: int, b: int) -> bool:
        return a & ~b == 0

    results: dict[str, dict] = {}

    def record(item: str, bad: tuple | None, skipped: bool = False) -> None:
        if skipped:
            results[item] = {"status": "skipped"}
        elif bad is None:
            results[item] = {"status": "pass"}
        else:
            results[item] = {"status": "fail", "witness": [M.sub_label(x) for x in bad]}

    record("1", next(((N, L) for N, L in _pairs(fis) if leq(L, N) and col[N, L] != full), None))
    bad2 = None
    for N, L in _pairs(fis):
        if not leq(L, N):
            continue
        for K in fis:
            if not (leq(col[L, K], col[N, K]) and leq(col[K, N], col[K, L])):
                bad2 = (N, L, K)
                break
        if bad2:
            break
    record("2", bad2)
    record(
        "3",
        next(
            ((N, L, K) for N, L in _pairs(fis) for K in fis if col[N & L, K] != col[N, K] & col[L, K]),
            None,
        ),
    )
    record(
        "4",
        next(
            (
                (N, L, K)
                for N, L in _pairs(fis)
                for K in fis
                if not leq(colon(M, N, M.sum(L, K)), col[N, L] & col[N, K])
            ),
            None,
        ),
    )
    if generates_fi_submodules(M):
        record("5", next(((N, L) for N, L in _pairs(fis) if col[N, L] == full and not leq(L, N)), None))
    else:
        record("5", None, skipped=True)
    if homs_split_over_sums(M):
        record(
            "6",
            next(
                (
                    (N, L, K)
                    for N, L in _pairs(fis)
                    for K in fis
                    if not leq(col[N, L] & col[N, K], colon(M, N, M.sum(L, K)))
                ),
                None,
            ),
        )
    else:
        record("6", None, skipped=True)
    return results


def sdml_variants_check(M: FiniteModule, quantale_valid: bool) -> dict[str, bool | None]:
    """Relations between the three strong De Morgan variants."""
    s = sdml_checks(M)
    out: dict[str, bool | None] = {"sdml2_implies_sdml": (not s["sdml2"]) or s["sdml"]}
    if s["sdml2"] and generates_fi_submodules(M) and homs_split_over_sums(M):
        out["sdml2_distributive"] = M.fi_lattice().is_distributive()
    else:
        out["sdml2_distributive"] = None
    out["variants_agree"] = (s["sdml"] == s["sdml1"] == s["sdml2"]) if quantale_valid else None
    return out


def asano_conditions(M: FiniteModule, Q: Quantale | None = None) -> dict[str, bool]:
    """The lattice-level conditions: commutative product plus each SDML variant."""
    if Q is None:
        Q = fi_quantale(M)
    comm = Q.is_commutative()
    s = sdml_checks(M)
    return {
        "sdml": comm and s["sdml"],
        "sdml1": comm and s["sdml1"],
        "sdml2": comm and s["sdml2"],
    }


# -- Ler and Ψ(M) ---------------------------------------------------------------------


def ler(M: FiniteModule, N: int) -> int:
    """Elements ``m`` with ``N + Ann_M(Rm) = M``."""
    out = 0
    for m in M.elements:
        if M.sum(N, annihilator(M, M.cyclic(m))) == M.full:
            out |= 1 << m
    return out


def psi_module(M: FiniteModule) -> list[int]:
    """Fully invariant ``N`` with ``N + Ann_M(Rn) = M`` for every ``n`` in ``N``."""
    ann_cyc = {m: annihilator(M, M.cyclic(m)) for m in M.elements}
    return [
        N for N in M.fi_submodules if all(M.sum(N, ann_cyc[n]) == M.full for n in _bits(N))
    ]


def ler_fixed_points(M: FiniteModule) -> list[int]:
    return [N for N in M.fi_submodules if ler(M, N) == N]


# -- the six-way equivalence --------------------------------------------------------


def sp_submodules(M: FiniteModule) -> list[int]:
    """Semiprime fully invariant submodules together with ``M``."""
    return [N for N in M.fi_submodules if N == M.full or is_semiprime_submodule(M, N)]


def theorem514_harness(M: FiniteModule, Q: Quantale | None = None) -> dict[str, bool]:
    """Evaluate the six conditions independently; ``Q`` is ``fi_quantale(M)``."""
    from .spectra import frame_satisfies_dml, mu_fixed_points, spectrum_space

    if Q is None:
        Q = fi_quantale(M)
    fis = M.fi_submodules
    ann = {N: annihilator(M, N) for N in fis}
    semiprime = is_semiprime_module(M)
    retract = is_fi_retractable(M)
    dml = module_dml(M)
    c2 = retract and all(
        ann[bican_product(M, N, L)] == M.sum(ann[N], ann[L]) for N, L in _pairs(fis)
    )
    c3 = retract and all(
        ann[N] & ann[ann[N]] == M.zero_sub and M.sum(ann[N], ann[ann[N]]) == M.full for N in fis
    )
    c4 = retract and is_fi_baer(M) and all(has_central_projection(M, ann[N]) for N in fis)
    sp_frame = Q.lattice.induced(mu_fixed_points(Q))
    c5 = semiprime and sp_frame.is_frame() and frame_satisfies_dml(sp_frame)
    c6 = semiprime and spectrum_space(Q).is_extremely_disconnected()
    return {
        "1": semiprime and dml,
        "2": c2,
        "3": c3,
        "4": c4,
        "5": c5,
        "6": c6,
    }
