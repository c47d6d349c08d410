"""Sets of primes, J-numbers and localization of finitely generated abelian groups.

A :class:`JSet` selects the coefficient ring ``Z[J^-1]``. Membership is decided
without enumerating the set, so "all primes except 2 and 5" costs the same as
``{2, 5}``.

>>> J = JSet.parse("2,3")
>>> is_j_number(12, J), j_part(20, J)
(True, (4, 5))
>>> localize(AbelianInvariants((6,), 0), JSet.parse("2"))
AbelianInvariants(torsion=(3,), free_rank=0)
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

from sympy import isprime

from .errors import ParseError

EMPTY = "empty"
ALL = "all"
FINITE = "finite"
COFINITE = "cofinite"


@dataclass(frozen=True)
class JSet:
    """A set of primes: empty, all primes, a finite list, or a cofinite list."""

    mode: str
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        if self.mode not in (EMPTY, ALL, FINITE, COFINITE):
            raise ValueError(f"unknown JSet mode {self.mode!r}")
        primes = tuple(self.primes)
        if self.mode in (EMPTY, ALL) and primes:
            raise ValueError(f"mode {self.mode!r} takes no prime list")
        for p in primes:
            if not isinstance(p, int) or not isprime(p):
                raise ValueError(f"{p!r} is not a prime")
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise ValueError("prime list must be strictly increasing")
        object.__setattr__(self, "primes", primes)

    @classmethod
    def empty(cls) -> JSet:
        return cls(EMPTY)

    @classmethod
    def all(cls) -> JSet:
        return cls(ALL)

    @classmethod
    def of(cls, primes: Iterable[int]) -> JSet:
        """The finite set ``primes``; an empty iterable gives the empty set."""
        ps = tuple(sorted(set(primes)))
        return cls(FINITE, ps) if ps else cls(EMPTY)

    @classmethod
    def all_except(cls, primes: Iterable[int]) -> JSet:
        ps = tuple(sorted(set(primes)))
        return cls(COFINITE, ps) if ps else cls(ALL)

    @classmethod
    def parse(cls, text: str) -> JSet:
        """Parse ``none``, ``all``, ``2,3,7`` or ``all-except:2,5``."""
        s = text.strip()
        try:
            if s == "none":
                return cls.empty()
            if s == "all":
                return cls.all()
            if s.startswith("all-except:"):
                return cls.all_except(_parse_primes(s[len("all-except:"):]))
            return cls.of(_parse_primes(s))
        except ValueError as exc:
            raise ParseError(f"bad prime set {text!r}: {exc}") from None

    def __str__(self) -> str:
        if self.mode == EMPTY:
            return "none"
        if self.mode == ALL:
            return "all"
        listed = ",".join(map(str, self.primes))
        return listed if self.mode == FINITE else f"all-except:{listed}"

    def __contains__(self, p: int) -> bool:
        if self.mode == EMPTY:
            return False
        if self.mode == ALL:
            return True
        if self.mode == FINITE:
            return p in self.primes
        return p not in self.primes

    def issubset(self, other: JSet) -> bool:
        if self.mode == EMPTY or other.mode == ALL:
            return True
        if other.mode == EMPTY or self.mode == ALL:
            return False
        if self.mode == FINITE:
            return all(p in other for p in self.primes)
        if other.mode == FINITE:
            return False
        # both cofinite: complement of self must contain complement of other
        return set(other.primes) <= set(self.primes)


def _parse_primes(text: str) -> list[int]:
    parts = [t.strip() for t in text.split(",")]
    if not all(parts):
        raise ValueError("empty entry")
    return [int(t) for t in parts]


def _strip(n: int, p: int) -> tuple[int, int]:
    """Split ``n = p^k * m`` with ``p`` not dividing ``m``; returns (p^k, m)."""
    pk = 1
    while n % p == 0:
        n //= p
        pk *= p
    return pk, n


def j_part(n: int, J: JSet) -> tuple[int, int]:
    """Factor ``n = j * c`` where ``j`` is a J-number and ``c`` has no prime factor in J."""
    if n <= 0:
        raise ValueError(f"j_part needs a positive integer, got {n}")
    if J.mode == EMPTY:
        return 1, n
    if J.mode == ALL:
        return n, 1
    listed, rest = 1, n
    for p in J.primes:
        pk, rest = _strip(rest, p)
        listed *= pk
    if J.mode == FINITE:
        return listed, rest
    return rest, listed


def is_j_number(n: int, J: JSet) -> bool:
    """True iff every prime factor of ``n`` lies in J (so 1 always qualifies)."""
    if n <= 0:
        raise ValueError(f"J-numbers are positive, got {n}")
    return j_part(n, J)[1] == 1


def chain_normalize(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of the direct sum of the cyclic groups ``Z/d``.

    Repeated ``(a, b) -> (gcd, lcm)`` passes, which needs no factoring. Entries
    equal to 1 are dropped; 0 is not allowed here (free summands are counted
    separately).
    """
    ds = [int(d) for d in orders]
    if any(d <= 0 for d in ds):
        raise ValueError("torsion orders must be positive")
    ds = [d for d in ds if d != 1]
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            a, b = ds[i], ds[j]
            g = gcd(a, b)
            ds[i], ds[j] = g, a // g * b
    return tuple(d for d in ds if d != 1)


@dataclass(frozen=True)
class AbelianInvariants:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ... | d_k``, all ``d_i >= 2``."""

    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        if any(d < 2 for d in t):
            raise ValueError(f"torsion factors must be >= 2: {t}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion factors must form a divisibility chain: {t}")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_orders(cls, orders: Iterable[int], free_rank: int = 0) -> AbelianInvariants:
        return cls(chain_normalize(orders), free_rank)

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __add__(self, other: AbelianInvariants) -> AbelianInvariants:
        return AbelianInvariants.from_orders(
            self.torsion + other.torsion, self.free_rank + other.free_rank
        )

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.insert(0, "Z")
        elif self.free_rank > 1:
            parts.insert(0, f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def localize(a: AbelianInvariants, J: JSet) -> AbelianInvariants:
    """Invariants of ``a`` tensored with ``Z[J^-1]``: J-primary torsion dies."""
    return AbelianInvariants.from_orders((j_part(d, J)[1] for d in a.torsion), a.free_rank)


def is_trivial_after_localization(a: AbelianInvariants, J: JSet) -> bool:
    return localize(a, J).is_trivial
