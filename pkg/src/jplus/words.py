"""Words in a free group, stored as freely reduced syllable lists.

A syllable is ``(generator_name, exponent)`` with a nonzero exponent, so
``x^1024`` is one syllable rather than 1024 letters.

>>> w = parse_word("x^-1 y^2 x y^2")
>>> exponent_sum(w, "y"), exponent_sum(w, "x")
(4, 0)
>>> format_word(commutator(parse_word("x^2"), parse_word("y^-1")))
'x^2 y^-1 x^-2 y'
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import ParseError

_NAME = r"[A-Za-z_][A-Za-z0-9_./-]*(?:\([A-Za-z0-9_./-]*\))?"
GEN_NAME = re.compile(rf"^{_NAME}$")
_TOKEN = re.compile(rf"\s*(?:(?P<name>{_NAME})|(?P<int>[+-]?\d+)|(?P<sym>[\^()\[\],]))")


def check_gen(name: str) -> str:
    if not isinstance(name, str) or not GEN_NAME.match(name):
        raise ValueError(f"invalid generator name {name!r}")
    return name


def reduce(raw: Iterable[tuple[str, int]]) -> Word:
    """Freely reduce a raw syllable list in one stack pass."""
    stack: list[list] = []
    for g, e in raw:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return Word._trusted(tuple((g, e) for g, e in stack))


class Word:
    """A freely reduced word. Immutable and hashable.

    ``*`` concatenates and reduces, ``~w`` is the inverse and ``w ** k`` a power.
    """

    __slots__ = ("syllables",)

    def __init__(self, syllables: Iterable[tuple[str, int]] = ()):
        raw = []
        for g, e in syllables:
            raw.append((check_gen(g), int(e)))
        object.__setattr__(self, "syllables", reduce(raw).syllables)

    @classmethod
    def _trusted(cls, syllables: tuple[tuple[str, int], ...]) -> Word:
        w = object.__new__(cls)
        object.__setattr__(w, "syllables", syllables)
        return w

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> Word:
        return cls([(name, exp)])

    def __setattr__(self, key, value):
        raise AttributeError("Word is immutable")

    def __eq__(self, other):
        return isinstance(other, Word) and self.syllables == other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def __len__(self):
        """Letter length, i.e. the sum of absolute exponents."""
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __mul__(self, other: Word) -> Word:
        return reduce(self.syllables + other.syllables)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, k: int) -> Word:
        if k < 0:
            return invert(self) ** -k
        if len(self.syllables) == 1:
            g, e = self.syllables[0]
            return Word._trusted(((g, e * k),)) if k else IDENTITY
        return reduce(self.syllables * k)

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def __str__(self):
        return format_word(self)

    def support(self) -> set[str]:
        return {g for g, _ in self.syllables}


IDENTITY = Word._trusted(())


def invert(w: Word) -> Word:
    return Word._trusted(tuple((g, -e) for g, e in reversed(w.syllables)))


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return reduce(u.syllables + v.syllables + invert(u).syllables + invert(v).syllables)


def conjugate(w: Word, c: Word) -> Word:
    """``c w c^-1``."""
    return reduce(c.syllables + w.syllables + invert(c).syllables)


def exponent_sum(w: Word | Sequence[tuple[str, int]], g: str) -> int:
    syllables = w.syllables if isinstance(w, Word) else w
    return sum(e for h, e in syllables if h == g)


def format_word(w: Word) -> str:
    if not w.syllables:
        return "1"
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in w.syllables)


class _WordParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        out, i = [], 0
        text = text.rstrip()
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {text[i:].lstrip()[:1]!r} in word {text!r}")
            kind = m.lastgroup
            out.append((kind, m.group(kind)))
            i = m.end()
        return out

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, sym=None):
        tok = self.peek()
        if tok[0] is None or (sym is not None and tok[1] != sym):
            raise ParseError(f"expected {sym or 'token'!r} in word {self.text!r}")
        self.pos += 1
        return tok

    def word(self, stop=()):
        raw: list[tuple[str, int]] = []
        while True:
            kind, val = self.peek()
            if kind is None or (kind == "sym" and val in stop):
                return raw
            raw.extend(self.item())

    def item(self):
        kind, val = self.take()
        if kind == "name":
            atom = [(val, 1)]
        elif kind == "int" and val == "1":
            atom = []
        elif val == "(":
            atom = self.word(stop=(")",))
            self.take(")")
        elif val == "[":
            u = reduce(self.word(stop=(",",)))
            self.take(",")
            v = reduce(self.word(stop=("]",)))
            self.take("]")
            atom = list(commutator(u, v).syllables)
        else:
            raise ParseError(f"unexpected {val!r} in word {self.text!r}")
        if self.peek() == ("sym", "^"):
            self.take("^")
            k, e = self.take()
            if k != "int":
                raise ParseError(f"exponent must be an integer in word {self.text!r}")
            atom = list((reduce(atom) ** int(e)).syllables)
        return atom


def parse_word(text: str, gens: Iterable[str] | None = None) -> Word:
    """Parse ``x^3 y^-2 x``, ``[u, v]``, ``(x y)^2``; the bare token ``1`` is the identity.

    When ``gens`` is given, every generator must belong to it.
    """
    p = _WordParser(text)
    raw = p.word()
    if p.pos != len(p.tokens):
        raise ParseError(f"unbalanced brackets in word {text!r}")
    w = reduce(raw)
    if gens is not None:
        extra = w.support() - set(gens)
        if extra:
            raise ParseError(f"unknown generator(s) {sorted(extra)} in word {text!r}")
    return w
