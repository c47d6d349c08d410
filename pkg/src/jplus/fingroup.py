"""Concrete finite groups as Cayley tables, and their J-perfect radicals.

Products read left to right: for permutations ``i^(pq) = (i^p)^q``. Element 0
is always the identity.

The radical ``T(G)`` for a prime set J is the largest normal subgroup whose
abelianization is J-torsion. Two independent routes compute it:
:func:`gamma_radical` runs the descending chain ``N -> N'`` where ``N'`` is the
preimage of the J-torsion part of ``N^ab``, and :func:`brute_force_radical`
walks the whole lattice of normal subgroups.

>>> S3 = from_permutations([[(1, 2)], [(1, 2, 3)]], name="S3")
>>> gamma_radical(S3, JSet.of([3])).order
3
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .coeffs import AbelianInvariants, JSet, is_j_number
from .errors import CapExceeded, GuardExceeded, OracleDisagreement

DEFAULT_CAP = 5000
BRUTE_FORCE_MAX_ORDER = 512
BRUTE_FORCE_MAX_CLASSES = 20


def cycle_string(perm: Sequence[int]) -> str:
    """Cycle notation, 1-based, each cycle starting at its least point; identity is ``()``."""
    seen = [False] * len(perm)
    cycles = []
    for i in range(len(perm)):
        if seen[i] or perm[i] == i:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = perm[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def perm_from_cycles(cycles: Iterable[Sequence[int]], degree: int) -> tuple[int, ...]:
    """Image array (0-based) of a product of disjoint or overlapping 1-based cycles."""
    img = list(range(degree))
    for cyc in cycles:
        cyc = list(cyc)
        if len(set(cyc)) != len(cyc):
            raise ValueError(f"repeated point in cycle {cyc}")
        if any(not 1 <= p <= degree for p in cyc):
            raise ValueError(f"cycle {cyc} leaves the domain 1..{degree}")
        step = list(range(degree))
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            step[a - 1] = b - 1
        img = [step[x] for x in img]
    return tuple(img)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group law on ``0..order-1`` with identity 0, checked on construction."""

    table: np.ndarray
    labels: tuple[str, ...]
    gen_ids: tuple[int, ...]
    name: str = "G"

    def __post_init__(self):
        T = np.asarray(self.table, dtype=np.int64)
        n = T.shape[0] if T.ndim == 2 else -1
        if T.ndim != 2 or T.shape != (n, n) or n < 1:
            raise ValueError("Cayley table must be a nonempty square array")
        ar = np.arange(n)
        if not (np.array_equal(T[0], ar) and np.array_equal(T[:, 0], ar)):
            raise ValueError("element 0 must be a two-sided identity")
        if not all(np.array_equal(np.sort(row), ar) for row in T):
            raise ValueError("table rows must be permutations")
        if not all(np.array_equal(np.sort(col), ar) for col in T.T):
            raise ValueError("table columns must be permutations")
        if len(self.labels) != n:
            raise ValueError("one label per element required")
        gens = tuple(int(g) for g in self.gen_ids)
        # Light's test: associativity need only be checked against a generating set.
        for g in gens:
            if not np.array_equal(T[T[:, g], :], T[:, T[g, :]]):
                raise ValueError("table is not associative")
        T.setflags(write=False)
        object.__setattr__(self, "table", T)
        object.__setattr__(self, "gen_ids", gens)
        object.__setattr__(self, "labels", tuple(self.labels))
        inv = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(T == 0)
        inv[rows] = cols
        inv.setflags(write=False)
        object.__setattr__(self, "inv", inv)
        if len(self.generate(gens)) != n:
            raise ValueError("gen_ids do not generate the group")

    @classmethod
    def from_table(cls, table, labels: Sequence[str] | None = None, name: str = "G") -> FiniteGroup:
        T = np.asarray(table, dtype=np.int64)
        n = T.shape[0]
        labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(n))
        # Cannot use generate() before validation; build a greedy generating set by hand.
        gens: list[int] = []
        have = np.zeros(n, dtype=bool)
        have[0] = True
        for a in range(n):
            if not have[a]:
                gens.append(a)
                have[:] = False
                have[_closure(T, gens)] = True
        return cls(T, labels, tuple(gens), name)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = int(self.inv[a]), -k
        out = 0
        base = a
        while k:
            if k & 1:
                out = int(self.table[out, base])
            base = int(self.table[base, base])
            k >>= 1
        return out

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a b a^-1 b^-1``."""
        T = self.table
        return int(T[T[T[a, b], self.inv[a]], self.inv[b]])

    def element_orders(self) -> np.ndarray:
        n = self.order
        ar = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = ar.copy()
        k = 1
        while not orders.all():
            orders[(cur == 0) & (orders == 0)] = k
            cur = self.table[cur, ar]
            k += 1
        return orders

    def generate(self, ids: Iterable[int]) -> tuple[int, ...]:
        """Sorted members of the subgroup generated by ``ids``."""
        return tuple(int(x) for x in _closure(self.table, list(ids)))

    def subgroup(self, ids: Iterable[int], generate: bool = True) -> Subgroup:
        members = self.generate(ids) if generate else tuple(sorted(set(int(i) for i in ids)))
        if not generate and members != self.generate(members):
            raise ValueError("members are not closed under multiplication")
        return Subgroup(members, is_normal(self, members))

    def whole(self) -> Subgroup:
        return Subgroup(tuple(range(self.order)), True)

    def trivial(self) -> Subgroup:
        return Subgroup((0,), True)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


def _closure(T: np.ndarray, gens: list[int]) -> np.ndarray:
    n = T.shape[0]
    gens = sorted({int(g) for g in gens} - {0})
    have = np.zeros(n, dtype=bool)
    have[0] = True
    if not gens:
        return np.flatnonzero(have)
    frontier = np.array([0])
    g = np.array(gens)
    while frontier.size:
        nxt = np.unique(T[np.ix_(frontier, g)].ravel())
        nxt = nxt[~have[nxt]]
        have[nxt] = True
        frontier = nxt
    return np.flatnonzero(have)


@dataclass(frozen=True)
class Subgroup:
    members: tuple[int, ...]
    normal: bool

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    def issubset(self, other: Subgroup) -> bool:
        return self._set <= other._set


def is_normal(G: FiniteGroup, members: Sequence[int]) -> bool:
    mask = np.zeros(G.order, dtype=bool)
    mask[list(members)] = True
    m = np.array(members)
    T = G.table
    for g in G.gen_ids:
        conj = T[T[g, m], G.inv[g]]
        if not mask[conj].all():
            return False
    return True


def from_permutations(gens: Sequence, cap: int = DEFAULT_CAP, degree: int | None = None,
                      name: str = "G") -> FiniteGroup:
    """Close a list of permutations under multiplication.

    Each generator is a 0-based image tuple or a list of 1-based cycles. Elements
    are ordered breadth-first by word length in the generators, each layer
    sorted lexicographically by image tuple.
    """
    perms = []
    cyc_form = [not _is_image_array(g) for g in gens]
    if degree is None:
        degree = 0
        for g, cyc in zip(gens, cyc_form):
            degree = max(degree, max((max(c) for c in g if c), default=0) if cyc else len(g))
    for g, cyc in zip(gens, cyc_form):
        p = perm_from_cycles(g, degree) if cyc else tuple(int(x) for x in g)
        if sorted(p) != list(range(degree)):
            raise ValueError(f"not a permutation of {degree} points: {g}")
        perms.append(p)
    if cap < 1:
        raise ValueError("cap must be positive")

    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    layer = [ident]
    while layer:
        new = set()
        for p in layer:
            for q in perms:
                pq = tuple(q[x] for x in p)
                if pq not in index:
                    new.add(pq)
        layer = sorted(new)
        for p in layer:
            index[p] = len(elements)
            elements.append(p)
            if len(elements) > cap:
                raise CapExceeded(f"group order exceeds cap {cap}")

    n = len(elements)
    P = np.array(elements, dtype=np.int64).reshape(n, degree)
    table = np.zeros((n, n), dtype=np.int64)
    if degree:
        # rows compared as raw bytes: sort once, then binary-search every product
        row = np.dtype((np.void, P.itemsize * degree))
        keys = np.ascontiguousarray(P).view(row).ravel()
        order = np.argsort(keys)
        sorted_keys = keys[order]
        for a in range(n):
            prod = np.ascontiguousarray(P[:, P[a]]).view(row).ravel()  # row b holds a*b
            table[a] = order[np.searchsorted(sorted_keys, prod)]
    gen_ids = []
    for p in perms:
        i = index[p]
        if i and i not in gen_ids:
            gen_ids.append(i)
    labels = tuple(cycle_string(e) for e in elements)
    return FiniteGroup(table, labels, tuple(gen_ids), name)


def _is_image_array(g) -> bool:
    return len(g) > 0 and all(isinstance(x, (int, np.integer)) for x in g)


def from_multiplication(gens: Sequence, mul, identity, cap: int = DEFAULT_CAP,
                        name: str = "G") -> FiniteGroup:
    """Build a group from abstract hashable elements via its right regular representation."""
    elements = [identity]
    index = {identity: 0}
    i = 0
    while i < len(elements):
        for g in gens:
            x = mul(elements[i], g)
            if x not in index:
                index[x] = len(elements)
                elements.append(x)
                if len(elements) > cap:
                    raise CapExceeded(f"group order exceeds cap {cap}")
        i += 1
    perms = [tuple(index[mul(x, g)] for x in elements) for g in gens]
    return from_permutations(perms, cap=cap, degree=len(elements), name=name)


def restrict(G: FiniteGroup, H: Subgroup | Sequence[int]) -> tuple[FiniteGroup, np.ndarray]:
    """``H`` as a group in its own right, plus the array mapping its indices into ``G``."""
    m = np.array(H.members if isinstance(H, Subgroup) else sorted(H))
    back = np.full(G.order, -1, dtype=np.int64)
    back[m] = np.arange(len(m))
    sub = back[G.table[np.ix_(m, m)]]
    if (sub < 0).any():
        raise ValueError("not closed under multiplication")
    labels = [G.labels[i] for i in m]
    return FiniteGroup.from_table(sub, labels, name=f"{G.name}|sub"), m


class Quotient(NamedTuple):
    group: FiniteGroup
    projection: np.ndarray


def quotient(G: FiniteGroup, N: Subgroup) -> Quotient:
    """``G/N`` with cosets ordered by their least member; ``projection[g]`` is the coset of g."""
    if not is_normal(G, N.members):
        raise ValueError("quotient needs a normal subgroup")
    n = G.order
    m = np.array(N.members)
    proj = np.full(n, -1, dtype=np.int64)
    reps = []
    for a in range(n):
        if proj[a] < 0:
            proj[G.table[a, m]] = len(reps)
            reps.append(a)
    r = np.array(reps)
    Q = proj[G.table[np.ix_(r, r)]]
    labels = [G.labels[a] if len(m) == 1 else f"[{G.labels[a]}]" for a in reps]
    gens = []
    for g in G.gen_ids:
        q = int(proj[g])
        if q and q not in gens:
            gens.append(q)
    return Quotient(FiniteGroup(Q, tuple(labels), tuple(gens), f"{G.name}/N"), proj)


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    T, ar = G.table, np.arange(G.order)
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for a in range(G.order):
        if not seen[a]:
            cls = np.unique(T[T[ar, a], G.inv])
            seen[cls] = True
            classes.append(tuple(int(x) for x in cls))
    return classes


def commutator_subgroup(G: FiniteGroup, H: Subgroup | None = None) -> Subgroup:
    """``[H, H]`` (default ``H = G``), generated by all commutators of pairs in H."""
    m = np.array(H.members if H is not None else range(G.order))
    T, inv = G.table, G.inv
    A, B = np.meshgrid(m, m, indexing="ij")
    comms = np.unique(T[T[T[A, B], inv[A]], inv[B]])
    return G.subgroup(comms.tolist())


def derived_series(G: FiniteGroup) -> list[Subgroup]:
    series = [G.whole()]
    while True:
        nxt = commutator_subgroup(G, series[-1])
        if nxt.members == series[-1].members:
            return series
        series.append(nxt)


def abelian_invariants(A: FiniteGroup) -> AbelianInvariants:
    """Invariant factors of an abelian group by splitting off maximal-order cyclic factors."""
    T = A.table
    if not np.array_equal(T, T.T):
        raise ValueError(f"{A.name} is not abelian")
    factors = []
    cur = A
    while cur.order > 1:
        orders = cur.element_orders()
        g = int(np.argmax(orders))
        factors.append(int(orders[g]))
        cur = quotient(cur, cur.subgroup([g])).group
    factors.reverse()
    inv = AbelianInvariants(tuple(factors), 0)
    if inv.torsion_order != A.order:
        raise AssertionError("cyclic decomposition does not account for the group order")
    return inv


def abelianization(G: FiniteGroup) -> AbelianInvariants:
    return abelian_invariants(quotient(G, commutator_subgroup(G)).group)


def j_derived_step(G: FiniteGroup, N: Subgroup, J: JSet) -> Subgroup:
    """Elements of N whose image in ``N^ab`` has J-number order.

    ``N^ab`` is built as a concrete quotient group and element orders are read
    off its table.
    """
    H, emb = restrict(G, N)
    Q, proj = quotient(H, commutator_subgroup(H))
    qorders = Q.element_orders()
    keep = [int(emb[h]) for h in range(H.order) if is_j_number(int(qorders[proj[h]]), J)]
    out = Subgroup(tuple(sorted(keep)), is_normal(G, keep))
    if not out.normal:
        raise AssertionError("J-derived subgroup must be normal")
    return out


def gamma_radical(G: FiniteGroup, J: JSet) -> Subgroup:
    """Stable term of ``G >= N_1 >= N_2 >= ...`` under :func:`j_derived_step`."""
    N = G.whole()
    while True:
        nxt = j_derived_step(G, N, J)
        if nxt.members == N.members:
            return N
        N = nxt


def nullification(G: FiniteGroup, J: JSet) -> FiniteGroup:
    """``G / T(G)``."""
    return quotient(G, gamma_radical(G, J)).group


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All normal subgroups, as joins of normal closures of conjugacy classes."""
    classes = conjugacy_classes(G)
    found = {(0,): None}
    queue = [(0,)]
    while queue:
        N = queue.pop()
        for c in classes:
            if c[0] in N and set(c) <= set(N):
                continue
            M = G.generate(N + c)
            if M not in found:
                found[M] = None
                queue.append(M)
    return sorted((Subgroup(m, True) for m in found), key=lambda s: (s.order, s.members))


def _is_r_perfect_subgroup(G: FiniteGroup, N: Subgroup, J: JSet) -> bool:
    return is_j_number(N.order // commutator_subgroup(G, N).order, J)


def brute_force_radical(G: FiniteGroup, J: JSet) -> Subgroup:
    """Largest normal subgroup with J-torsion abelianization, by exhausting the lattice.

    Raises :class:`OracleDisagreement` if the maximal such subgroup is not unique.
    """
    if G.order > BRUTE_FORCE_MAX_ORDER:
        raise GuardExceeded(f"brute force limited to order <= {BRUTE_FORCE_MAX_ORDER}")
    if len(conjugacy_classes(G)) > BRUTE_FORCE_MAX_CLASSES:
        raise GuardExceeded(f"brute force limited to <= {BRUTE_FORCE_MAX_CLASSES} classes")
    perfect = [N for N in normal_subgroups(G) if _is_r_perfect_subgroup(G, N, J)]
    maximal = [N for N in perfect
               if not any(N.order < M.order and N.issubset(M) for M in perfect)]
    if len(maximal) != 1:
        raise OracleDisagreement(
            f"{G.name}: {len(maximal)} maximal normal J-perfect subgroups for J={J}")
    top = maximal[0]
    if not all(N.issubset(top) for N in perfect):
        raise OracleDisagreement(f"{G.name}: a J-perfect normal subgroup escapes the maximum")
    return top


def generating_set(G: FiniteGroup, H: Subgroup) -> list[int]:
    """Greedy small generating set of H, scanning members in index order."""
    gens: list[int] = []
    have: set[int] = {0}
    for h in H.members:
        if h not in have:
            gens.append(h)
            have = set(G.generate(gens))
    return gens
