"""Finite presentations, their 2-complexes, homology and relator certificates.

The presentation complex has one 0-cell, a 1-cell per generator and a 2-cell
per relator. ``d1`` vanishes, so everything lives in ``d2``: rows are
generators, columns relators, and entry ``(g, rho)`` is the exponent sum of
``g`` in ``rho``. Then ``H1 = coker d2`` and ``H2 = ker d2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .coeffs import AbelianInvariants, JSet, is_trivial_after_localization, localize
from .errors import CertificateError
from .linalg import IntMatrix, cokernel, kernel_rank
from .words import Word, check_gen, conjugate, exponent_sum, invert, reduce


@dataclass(frozen=True)
class Presentation:
    name: str
    gens: tuple[str, ...]
    relators: tuple[Word, ...]
    # Optional (lhs, rhs) per relator, kept so `u = v` input prints back as an equation.
    equations: tuple[tuple[Word, Word] | None, ...] = field(default=(), compare=True)

    def __post_init__(self):
        gens = tuple(check_gen(g) for g in self.gens)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generator names in {self.name!r}")
        rels = tuple(self.relators)
        known = set(gens)
        for i, rho in enumerate(rels):
            if not rho:
                raise ValueError(f"relator {i + 1} reduces to the empty word")
            extra = rho.support() - known
            if extra:
                raise ValueError(f"relator {i + 1} uses unknown generators {sorted(extra)}")
        eqs = tuple(self.equations) or (None,) * len(rels)
        if len(eqs) != len(rels):
            raise ValueError("one equation slot per relator required")
        for rho, eq in zip(rels, eqs):
            if eq is not None and eq[0] * invert(eq[1]) != rho:
                raise ValueError("equation does not match its relator")
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "relators", rels)
        object.__setattr__(self, "equations", eqs)

    @classmethod
    def from_equations(cls, name: str, gens: Sequence[str],
                       relations: Sequence[Word | tuple[Word, Word]]) -> Presentation:
        """Relations are words or ``(u, v)`` pairs meaning ``u = v``, i.e. relator ``u v^-1``."""
        rels, eqs = [], []
        for r in relations:
            if isinstance(r, Word):
                rels.append(r)
                eqs.append(None)
            else:
                u, v = r
                rels.append(u * invert(v))
                eqs.append((u, v))
        return cls(name, tuple(gens), tuple(rels), tuple(eqs))


@dataclass(frozen=True)
class ChainComplex2:
    d2: IntMatrix
    gens: tuple[str, ...]
    relators: tuple[Word, ...]


class Homology(NamedTuple):
    H0: AbelianInvariants
    H1: AbelianInvariants
    H2_rank: int


@dataclass(frozen=True)
class Certificate:
    """Claims ``claim = prod_i c_i rho_(k_i)^(s_i) c_i^-1`` in the free group.

    ``relator`` indices are 0-based here; the ``.cert`` file format is 1-based.
    """

    claim: Word
    steps: tuple[tuple[Word, int, int], ...] = ()

    def __post_init__(self):
        steps = tuple((c, int(k), int(s)) for c, k, s in self.steps)
        for _, k, s in steps:
            if s not in (1, -1):
                raise ValueError(f"step sign must be +1 or -1, got {s}")
            if k < 0:
                raise ValueError(f"relator index must be nonnegative, got {k}")
        object.__setattr__(self, "steps", steps)


def presentation_complex(P: Presentation) -> ChainComplex2:
    ents = tuple(exponent_sum(rho, g) for g in P.gens for rho in P.relators)
    return ChainComplex2(IntMatrix(len(P.gens), len(P.relators), ents), P.gens, P.relators)


def integral_h1(P: Presentation) -> AbelianInvariants:
    return cokernel(presentation_complex(P).d2)


def homology(P: Presentation, J: JSet) -> Homology:
    """Homology of the presentation complex with ``Z[J^-1]`` coefficients."""
    d2 = presentation_complex(P).d2
    return Homology(AbelianInvariants((), 1), localize(cokernel(d2), J), kernel_rank(d2))


def is_r_perfect_presentation(P: Presentation, J: JSet) -> bool:
    return is_trivial_after_localization(integral_h1(P), J)


def _check_support(P: Presentation, w: Word, what: str):
    extra = w.support() - set(P.gens)
    if extra:
        raise CertificateError(f"{what} uses generators {sorted(extra)} not in {P.name!r}")


def certificate_product(P: Presentation, cert: Certificate) -> Word:
    raw: list[tuple[str, int]] = []
    for c, k, s in cert.steps:
        if not 0 <= k < len(P.relators):
            raise CertificateError(
                f"relator index {k + 1} out of range 1..{len(P.relators)} for {P.name!r}")
        _check_support(P, c, "conjugator")
        rho = P.relators[k] if s == 1 else invert(P.relators[k])
        raw.extend(conjugate(rho, c).syllables)
    return reduce(raw)


def check_certificate(P: Presentation, cert: Certificate) -> bool:
    """True iff the conjugated relators multiply out to ``cert.claim`` in the free group.

    True proves ``claim = 1`` in the presented group. False only says this
    particular certificate is wrong.
    """
    _check_support(P, cert.claim, "claim")
    return certificate_product(P, cert) == cert.claim


def free_product(ps: Sequence[Presentation], name: str = "free_product") -> Presentation:
    """Disjoint union of generators and relators; generator ``g`` of input ``i`` becomes ``G<i>/g``."""
    gens: list[str] = []
    rels: list[Word] = []
    eqs: list = []

    def rename(w: Word, i: int) -> Word:
        return Word._trusted(tuple((f"G{i}/{g}", e) for g, e in w.syllables))

    for i, P in enumerate(ps, start=1):
        gens.extend(f"G{i}/{g}" for g in P.gens)
        rels.extend(rename(r, i) for r in P.relators)
        eqs.extend(None if eq is None else (rename(eq[0], i), rename(eq[1], i)) for eq in P.equations)
    return Presentation(name, tuple(gens), tuple(rels), tuple(eqs))


TRIVIAL = Presentation("trivial", (), ())
