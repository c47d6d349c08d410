"""Finite pieces of the universal J-acyclic family.

A :class:`SchemaNode` tree fixes the data of one group ``G(r, n)``: every node
carries a generator ``x(node)`` and, unless it is an ``open`` leaf, the relator

    x(node)^r(node) [x(c_1), x(c_2)] [x(c_3), x(c_4)] ...

over its ordered children ``c_1, c_2, ...``. Generator names encode depth and
path: ``x(0)`` for the root, ``x(1.2)`` for its second child, ``x(2.1.4)`` for
the fourth child of the first child.

A :class:`WitnessGraph` is the eventually periodic counterpart: a finite,
possibly cyclic graph assigning target elements to nodes. Unfolding it from the
root gives a homomorphism ``G(r, n) -> target``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .coeffs import AbelianInvariants, JSet, is_j_number
from .errors import WitnessError
from .fingroup import FiniteGroup, Subgroup, commutator_subgroup, is_normal
from .presentations import (
    Certificate, Presentation, check_certificate, free_product, homology,
)
from .words import Word, commutator, reduce


@dataclass(frozen=True)
class SchemaNode:
    """``r=None`` marks an ``open`` leaf: a free generator standing for an untruncated subtree."""

    r: int | None
    children: tuple[SchemaNode, ...] = ()

    def __post_init__(self):
        kids = tuple(self.children)
        if self.r is None and kids:
            raise ValueError("open nodes must be leaves")
        if self.r is not None and self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if len(kids) % 2:
            raise ValueError("a node needs an even number of children (commutator pairs)")
        object.__setattr__(self, "children", kids)

    @property
    def is_open(self) -> bool:
        return self.r is None

    @property
    def n(self) -> int:
        """Number of commutator factors in this node's relator."""
        return len(self.children) // 2

    def walk(self, path: tuple[int, ...] = ()):
        """Depth-first preorder over ``(path, node)``; children numbered from 1."""
        yield path, self
        for i, c in enumerate(self.children, start=1):
            yield from c.walk(path + (i,))

    def size(self) -> int:
        return sum(1 for _ in self.walk())

    def depth(self) -> int:
        return max(len(p) for p, _ in self.walk())

    def is_complete(self) -> bool:
        return not any(node.is_open for _, node in self.walk())


SchemaTree = SchemaNode


def leaf(r: int) -> SchemaNode:
    return SchemaNode(r)


OPEN = SchemaNode(None)


def gen_name(path: Sequence[int]) -> str:
    return "x(" + ".".join(map(str, (len(path), *path))) + ")"


def _validate(t: SchemaNode, J: JSet):
    for path, node in t.walk():
        if node.r is not None and not is_j_number(node.r, J):
            raise ValueError(f"r={node.r} at {gen_name(path)} is not a J-number for J={J}")


def schema_presentation(t: SchemaNode, J: JSet, name: str = "G(r,n)") -> Presentation:
    _validate(t, J)
    gens, rels = [], []
    for path, node in t.walk():
        x = gen_name(path)
        gens.append(x)
        if node.is_open:
            continue
        raw = [(x, node.r)]
        for i in range(node.n):
            a = Word.gen(gen_name(path + (2 * i + 1,)))
            b = Word.gen(gen_name(path + (2 * i + 2,)))
            raw.extend(commutator(a, b).syllables)
        rels.append(reduce(raw))
    return Presentation(name, tuple(gens), tuple(rels))


def schema_homology(t: SchemaNode, J: JSet,
                    coeffs: JSet | None = None) -> tuple[AbelianInvariants, int]:
    """``(H1, H2_rank)`` of the presentation complex of ``t``.

    ``J`` is the ambient set every ``r`` must respect; homology is taken with
    ``Z[coeffs^-1]`` coefficients, by default ``coeffs = J``. Pass
    ``JSet.empty()`` for integral homology.
    """
    h = homology(schema_presentation(t, J), J if coeffs is None else coeffs)
    return h.H1, h.H2_rank


def random_tree(rng: random.Random, rs: Sequence[int], max_depth: int = 4,
                max_nodes: int = 40, open_prob: float = 0.0) -> SchemaNode:
    """A pseudo-random schema tree with node exponents drawn from ``rs``.

    Each node gets zero, one or two child pairs while the depth and node budget
    allow; with ``open_prob > 0`` leaves may instead be ``open``.
    """
    budget = [max_nodes - 1]

    def grow(depth: int) -> SchemaNode:
        if depth > 0 and rng.random() < open_prob:
            return OPEN
        pairs = rng.choice((0, 0, 1, 1, 2)) if depth < max_depth else 0
        pairs = min(pairs, budget[0] // 2)
        budget[0] -= 2 * pairs
        kids = tuple(grow(depth + 1) for _ in range(2 * pairs))
        return SchemaNode(rng.choice(rs), kids)

    return grow(0)


def universal_truncation(trees: Sequence[SchemaNode], J: JSet) -> Presentation:
    """Free product of the groups of ``trees``: a finite piece of the universal group."""
    return free_product([schema_presentation(t, J, name=f"T{i}") for i, t in enumerate(trees, 1)],
                        name="Gamma_trunc")


@dataclass(frozen=True)
class WitnessNode:
    element: Word | int
    r: int
    pairs: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class WitnessGraph:
    nodes: tuple[WitnessNode, ...]
    root: int = 0
    certificates: Mapping[int, Certificate] = field(default_factory=dict)

    def node_word(self, v: int) -> Word:
        """``element^r * prod [element(a), element(b)]`` for a word-valued graph."""
        node = self.nodes[v]
        raw = list((node.element ** node.r).syllables)
        for a, b in node.pairs:
            raw.extend(commutator(self.nodes[a].element, self.nodes[b].element).syllables)
        return reduce(raw)

    def reindexed(self, perm: Sequence[int]) -> WitnessGraph:
        """Rename node ``v`` to ``perm[v]``."""
        new = [None] * len(self.nodes)
        for v, node in enumerate(self.nodes):
            new[perm[v]] = WitnessNode(node.element, node.r,
                                       tuple((perm[a], perm[b]) for a, b in node.pairs))
        certs = {perm[v]: c for v, c in self.certificates.items()}
        return WitnessGraph(tuple(new), perm[self.root], certs)


def _check_ids(g: WitnessGraph):
    n = len(g.nodes)
    if not 0 <= g.root < n:
        raise WitnessError(f"root {g.root} out of range 0..{n - 1}")
    for v, node in enumerate(g.nodes):
        for a, b in node.pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise WitnessError(f"node {v} pairs with unknown node ({a}, {b})")
        if node.r < 1:
            raise WitnessError(f"node {v}: r must be >= 1")
    for v in g.certificates:
        if not 0 <= v < n:
            raise WitnessError(f"certificate attached to unknown node {v}")


def check_witness(target: FiniteGroup | Presentation, g: WitnessGraph, J: JSet) -> bool:
    """Does every node satisfy its relation in ``target``?

    For a finite group this is direct evaluation. For a presented group each
    node needs a certificate whose claim is exactly the node's relation word.
    Returns False when some ``r`` is not a J-number or a relation fails.
    """
    _check_ids(g)
    if isinstance(target, FiniteGroup):
        return _check_finite(target, g, J)
    for v, node in enumerate(g.nodes):
        if not isinstance(node.element, Word):
            raise WitnessError(f"node {v}: presented targets need word elements")
        extra = node.element.support() - set(target.gens)
        if extra:
            raise WitnessError(f"node {v} uses generators {sorted(extra)} not in {target.name!r}")
        if v not in g.certificates:
            raise WitnessError(f"node {v} has no certificate")
        if g.certificates[v].claim != g.node_word(v):
            raise WitnessError(f"node {v}: certificate claim is not the node relation {g.node_word(v)}")
    if not all(is_j_number(node.r, J) for node in g.nodes):
        return False
    return all(check_certificate(target, g.certificates[v]) for v in range(len(g.nodes)))


def _check_finite(G: FiniteGroup, g: WitnessGraph, J: JSet) -> bool:
    for v, node in enumerate(g.nodes):
        if isinstance(node.element, Word) or not 0 <= node.element < G.order:
            raise WitnessError(f"node {v}: element must be an index into {G.name}")
    for node in g.nodes:
        if not is_j_number(node.r, J):
            return False
        acc = G.power(node.element, node.r)
        for a, b in node.pairs:
            acc = G.mul(acc, G.commutator(g.nodes[a].element, g.nodes[b].element))
        if acc != 0:
            return False
    return True


def unfold(g: WitnessGraph, depth: int) -> tuple[SchemaNode, dict[str, Word | int]]:
    """Tree-unfolding of ``g`` from the root, cut at ``depth`` with open leaves.

    Returns the schema tree and the images of its generators in the target.
    """
    images: dict[str, Word | int] = {}

    def build(v: int, path: tuple[int, ...]) -> SchemaNode:
        node = g.nodes[v]
        images[gen_name(path)] = node.element
        if len(path) >= depth and node.pairs:
            return OPEN
        kids = []
        for i, (a, b) in enumerate(node.pairs):
            kids.append(build(a, path + (2 * i + 1,)))
            kids.append(build(b, path + (2 * i + 2,)))
        return SchemaNode(node.r, tuple(kids))

    return build(g.root, ()), images


def witnessed_subgroup(G: FiniteGroup, J: JSet) -> Subgroup:
    """Subgroup generated by all elements carrying a finite witness graph in ``G``.

    Greatest fixpoint: start from every element and repeatedly keep those whose
    image in the abelianization of the subgroup generated by the survivors has
    J-number order.
    """
    S = list(range(G.order))
    while True:
        H = G.subgroup(S)
        K = set(commutator_subgroup(G, H).members)
        keep = [s for s in S if is_j_number(_order_modulo(G, s, K), J)]
        if keep == S:
            members = G.generate(S)
            return Subgroup(members, is_normal(G, members))
        S = keep


def _order_modulo(G: FiniteGroup, s: int, K: set[int]) -> int:
    k, acc = 1, s
    while acc not in K:
        acc = G.mul(acc, s)
        k += 1
    return k


def witness_from_subgroup(G: FiniteGroup, J: JSet, root_element: int) -> WitnessGraph:
    """An explicit witness graph for ``root_element`` of the witnessed subgroup.

    Each node ``s`` gets ``r`` = its J-order modulo ``[H, H]`` (``H`` the
    witnessed subgroup) and commutator pairs writing ``s^-r`` as a product of
    commutators of elements of ``H``, which are themselves nodes.
    """
    H = witnessed_subgroup(G, J)
    if root_element not in H:
        raise WitnessError(f"{G.labels[root_element]} is not in the witnessed subgroup")
    hm = list(H.members)
    K = set(commutator_subgroup(G, H).members)
    # shortest expression of each element of [H, H] as a product of commutators
    comm = {}
    for a in hm:
        for b in hm:
            c = G.commutator(a, b)
            comm.setdefault(c, (a, b))
    expr = {0: []}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for c, ab in comm.items():
                y = G.mul(x, c)
                if y not in expr:
                    expr[y] = expr[x] + [ab]
                    nxt.append(y)
        frontier = nxt
    index = {}
    order: list[int] = []

    def visit(s):
        if s not in index:
            index[s] = len(order)
            order.append(s)
    visit(root_element)
    i = 0
    spec = {}
    while i < len(order):
        s = order[i]
        r = _order_modulo(G, s, K)
        need = G.power(s, -r)
        pairs = expr[need] if need in K else None
        if pairs is None:
            raise AssertionError("power fell outside the commutator subgroup")
        for a, b in pairs:
            visit(a)
            visit(b)
        spec[s] = (r, pairs)
        i += 1
    nodes = tuple(WitnessNode(s, spec[s][0], tuple((index[a], index[b]) for a, b in spec[s][1]))
                  for s in order)
    return WitnessGraph(nodes, 0)
