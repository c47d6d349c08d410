"""Text formats: ``.grp`` presentations, ``.cert`` certificates, ``.tree`` schema
trees, ``.perm`` permutation groups, ``.wit`` witness graphs, and matrices.

Every ``parse_*`` has a ``format_*`` partner with
``parse(format(parse(text))) == parse(text)``. ``#`` starts a comment in the
line-oriented formats and in ``.tree``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError, WitnessError
from .fingroup import FiniteGroup, cycle_string, from_permutations, perm_from_cycles
from .gamma import SchemaNode, WitnessGraph, WitnessNode
from .linalg import format_matrix, parse_matrix  # noqa: F401  (re-exported)
from .presentations import Certificate, Presentation
from .words import check_gen, format_word, parse_word


def _lines(text: str):
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            key, _, rest = line.partition(" ")
            yield num, key, rest.strip()


# ---- .grp -------------------------------------------------------------------

def parse_grp(text: str) -> Presentation:
    name = gens = None
    relations = []
    for num, key, rest in _lines(text):
        if key == "group":
            if name is not None or not rest:
                raise ParseError(f"line {num}: exactly one 'group <name>' line expected")
            name = rest
        elif key == "gens":
            if gens is not None:
                raise ParseError(f"line {num}: duplicate 'gens' line")
            gens = rest.split()
            for g in gens:
                try:
                    check_gen(g)
                except ValueError as exc:
                    raise ParseError(f"line {num}: {exc}") from None
        elif key == "rel":
            if gens is None:
                raise ParseError(f"line {num}: 'rel' before 'gens'")
            if not rest:
                raise ParseError(f"line {num}: empty relator")
            try:
                if "=" in rest:
                    lhs, eq, rhs = rest.partition("=")
                    if "=" in rhs:
                        raise ParseError("more than one '='")
                    relations.append((parse_word(lhs, gens), parse_word(rhs, gens)))
                else:
                    relations.append(parse_word(rest, gens))
            except ParseError as exc:
                raise ParseError(f"line {num}: {exc}") from None
        else:
            raise ParseError(f"line {num}: unknown keyword {key!r}")
    if name is None or gens is None:
        raise ParseError("a presentation needs 'group' and 'gens' lines")
    try:
        return Presentation.from_equations(name, gens, relations)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_grp(P: Presentation) -> str:
    out = [f"group {P.name}", " ".join(["gens", *P.gens])]
    for rho, eq in zip(P.relators, P.equations):
        if eq is None:
            out.append(f"rel {format_word(rho)}")
        else:
            out.append(f"rel {format_word(eq[0])} = {format_word(eq[1])}")
    return "\n".join(out) + "\n"


# ---- .cert ------------------------------------------------------------------

def parse_cert(text: str) -> Certificate:
    claim = None
    steps = []
    for num, key, rest in _lines(text):
        try:
            if key == "claim":
                if claim is not None:
                    raise ParseError("duplicate claim")
                claim = parse_word(rest)
            elif key == "step":
                toks = rest.rsplit(None, 2)
                if len(toks) != 3:
                    raise ParseError("expected 'step <conjugator> <relator-index> <+1|-1>'")
                conj, idx, sign = toks
                if sign not in ("+1", "-1"):
                    raise ParseError(f"sign must be +1 or -1, got {sign!r}")
                if not idx.isdigit() or int(idx) < 1:
                    raise ParseError(f"relator index must be a positive integer, got {idx!r}")
                steps.append((parse_word(conj), int(idx) - 1, int(sign)))
            else:
                raise ParseError(f"unknown keyword {key!r}")
        except ParseError as exc:
            raise ParseError(f"line {num}: {exc}") from None
    if claim is None:
        raise ParseError("certificate needs a 'claim' line")
    return Certificate(claim, tuple(steps))


def format_cert(c: Certificate) -> str:
    out = [f"claim {format_word(c.claim)}"]
    out += [f"step {format_word(w)} {k + 1} {'+1' if s > 0 else '-1'}" for w, k, s in c.steps]
    return "\n".join(out) + "\n"


# ---- .tree ------------------------------------------------------------------

_TREE_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def parse_tree(text: str) -> SchemaNode:
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    toks = []
    pos = 0
    body = body.rstrip()
    while pos < len(body):
        m = _TREE_TOKEN.match(body, pos)
        toks.append(m.group(1))
        pos = m.end()
    i = 0

    def node():
        nonlocal i
        if i >= len(toks) or toks[i] != "(":
            raise ParseError("expected '(' in schema tree")
        i += 1
        if i >= len(toks):
            raise ParseError("unterminated schema tree")
        head = toks[i]
        i += 1
        if head == "open":
            r = None
        elif head.isdigit() and int(head) >= 1:
            r = int(head)
        else:
            raise ParseError(f"node label must be a positive integer or 'open', got {head!r}")
        kids = []
        while i < len(toks) and toks[i] == "(":
            kids.append(node())
        if i >= len(toks) or toks[i] != ")":
            raise ParseError("expected ')' in schema tree")
        i += 1
        try:
            return SchemaNode(r, tuple(kids))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    t = node()
    if i != len(toks):
        raise ParseError("a .tree file holds exactly one expression")
    return t


def format_tree(t: SchemaNode) -> str:
    head = "open" if t.is_open else str(t.r)
    return "(" + " ".join([head, *(format_tree(c) for c in t.children)]) + ")"


# ---- .perm ------------------------------------------------------------------

@dataclass(frozen=True)
class PermSpec:
    points: int
    gens: tuple[tuple[int, ...], ...]  # 0-based image arrays
    cap: int | None = None


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    s = text.replace(" ", "").replace(",", " ") if "," in text else text
    if _CYCLE.sub("", s).strip():
        raise ParseError(f"bad cycle notation {text!r}")
    cycles = []
    for body in _CYCLE.findall(s):
        pts = body.split()
        if not all(p.isdigit() for p in pts):
            raise ParseError(f"bad cycle notation {text!r}")
        cycles.append([int(p) for p in pts])
    try:
        return perm_from_cycles(cycles, degree)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_perm(text: str) -> PermSpec:
    points = cap = None
    gens = []
    for num, key, rest in _lines(text):
        if key == "points":
            if points is not None or not rest.isdigit():
                raise ParseError(f"line {num}: expected one 'points <n>' line")
            points = int(rest)
        elif key == "gen":
            if points is None:
                raise ParseError(f"line {num}: 'gen' before 'points'")
            try:
                gens.append(parse_cycles(rest, points))
            except ParseError as exc:
                raise ParseError(f"line {num}: {exc}") from None
        elif key == "cap":
            if cap is not None or not rest.isdigit() or int(rest) < 1:
                raise ParseError(f"line {num}: expected one 'cap <N>' with N >= 1")
            cap = int(rest)
        else:
            raise ParseError(f"line {num}: unknown keyword {key!r}")
    if points is None:
        raise ParseError("a .perm file needs a 'points' line")
    return PermSpec(points, tuple(gens), cap)


def format_perm(spec: PermSpec) -> str:
    out = [f"points {spec.points}"]
    out += [f"gen {cycle_string(g)}" for g in spec.gens]
    if spec.cap is not None:
        out.append(f"cap {spec.cap}")
    return "\n".join(out) + "\n"


def perm_group(spec: PermSpec, name: str = "G") -> FiniteGroup:
    from .fingroup import DEFAULT_CAP
    return from_permutations(list(spec.gens), cap=spec.cap or DEFAULT_CAP,
                             degree=spec.points, name=name)


def perm_generator_names(spec: PermSpec, G: FiniteGroup) -> dict[str, int]:
    """``g1, g2, ...`` in file order, mapped to element indices of ``G``."""
    where = {lab: i for i, lab in enumerate(G.labels)}
    return {f"g{k}": where[cycle_string(p)] for k, p in enumerate(spec.gens, start=1)}


# ---- .wit -------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessSpec:
    target: str
    nodes: tuple[tuple[int, str, int], ...]  # (id, element text, r)
    pairs: tuple[tuple[int, int, int], ...]  # (node, a, b)
    root: int
    certs: tuple[tuple[int, str], ...] = ()  # (node, path)


def _int(tok: str, num: int, what: str) -> int:
    if not re.fullmatch(r"\d+", tok):
        raise ParseError(f"line {num}: {what} must be a nonnegative integer, got {tok!r}")
    return int(tok)


def parse_wit(text: str) -> WitnessSpec:
    target = root = None
    nodes, pairs, certs = [], [], []
    for num, key, rest in _lines(text):
        toks = rest.split()
        if key == "target":
            if target is not None or len(toks) != 1:
                raise ParseError(f"line {num}: expected one 'target <name>' line")
            target = toks[0]
        elif key == "node":
            if len(toks) < 3:
                raise ParseError(f"line {num}: expected 'node <id> <element> <r>'")
            r = _int(toks[-1], num, "r")
            if r < 1:
                raise ParseError(f"line {num}: r must be >= 1")
            nodes.append((_int(toks[0], num, "node id"), " ".join(toks[1:-1]), r))
        elif key == "pair":
            if len(toks) != 3:
                raise ParseError(f"line {num}: expected 'pair <node> <a> <b>'")
            pairs.append(tuple(_int(t, num, "node id") for t in toks))
        elif key == "root":
            if root is not None or len(toks) != 1:
                raise ParseError(f"line {num}: expected one 'root <id>' line")
            root = _int(toks[0], num, "root")
        elif key == "cert":
            if len(toks) != 2:
                raise ParseError(f"line {num}: expected 'cert <node> <path>'")
            certs.append((_int(toks[0], num, "node id"), toks[1]))
        else:
            raise ParseError(f"line {num}: unknown keyword {key!r}")
    if target is None or root is None:
        raise ParseError("a witness needs 'target' and 'root' lines")
    ids = sorted(i for i, _, _ in nodes)
    if ids != list(range(len(nodes))):
        raise ParseError("node ids must be 0..n-1, each exactly once")
    return WitnessSpec(target, tuple(nodes), tuple(pairs), root, tuple(certs))


def format_wit(spec: WitnessSpec) -> str:
    out = [f"target {spec.target}"]
    out += [f"node {i} {el} {r}" for i, el, r in spec.nodes]
    out += [f"pair {v} {a} {b}" for v, a, b in spec.pairs]
    out.append(f"root {spec.root}")
    out += [f"cert {v} {p}" for v, p in spec.certs]
    return "\n".join(out) + "\n"


def _finite_element(G: FiniteGroup, text: str, names: dict[str, int]) -> int:
    norm = " ".join(text.split())
    for i, lab in enumerate(G.labels):
        if lab == norm:
            return i
    try:
        w = parse_word(norm, names)
    except ParseError:
        raise WitnessError(f"{text!r} is neither an element label nor a word in {sorted(names)}") from None
    acc = 0
    for g, e in w.syllables:
        acc = G.mul(acc, G.power(names[g], e))
    return acc


def resolve_witness(spec: WitnessSpec, target: FiniteGroup | Presentation,
                    base_dir: str | Path = ".", gen_names: dict[str, int] | None = None) -> WitnessGraph:
    """Turn a parsed ``.wit`` into a :class:`WitnessGraph` against ``target``.

    Certificate paths are relative to ``base_dir``. Finite targets accept
    element labels such as ``(1 2 3)`` or words in ``gen_names``.
    """
    if spec.target != target.name:
        raise WitnessError(f"witness targets {spec.target!r}, got {target.name!r}")
    n = len(spec.nodes)
    pairs = [[] for _ in range(n)]
    for v, a, b in spec.pairs:
        if v >= n:
            raise WitnessError(f"pair on unknown node {v}")
        pairs[v].append((a, b))
    nodes = [None] * n
    for i, text, r in spec.nodes:
        if isinstance(target, FiniteGroup):
            el = _finite_element(target, text, gen_names or {})
        else:
            try:
                el = parse_word(text)
            except ParseError as exc:
                raise WitnessError(f"node {i}: {exc}") from None
        nodes[i] = WitnessNode(el, r, tuple(pairs[i]))
    certs = {}
    for v, path in spec.certs:
        certs[v] = parse_cert((Path(base_dir) / path).read_text())
    return WitnessGraph(tuple(nodes), spec.root, certs)
