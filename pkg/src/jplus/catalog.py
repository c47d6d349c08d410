"""All groups of order at most 16, plus a few named groups, as permutation groups.

Most entries come from one constructor: an abelian group ``Z/m_1 x ... x Z/m_r``
extended by a cyclic group ``<b>`` of order ``n``, where ``b`` acts by an integer
matrix and ``b^n`` equals a fixed base element. Split extensions are the case
``b^n = 0``; direct products take the identity action.
"""

from __future__ import annotations

from functools import lru_cache

from .fingroup import FiniteGroup, from_multiplication, from_permutations


def _mat_vec(A, v, mods):
    return tuple(sum(a * x for a, x in zip(row, v)) % m for row, m in zip(A, mods))


def _mat_mul(A, B, mods):
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, c)) % m for c in cols) for row, m in zip(A, mods))


def cyclic_extension(mods, n=1, action=None, top_power=None, name="G") -> FiniteGroup:
    """``(Z/mods) . C_n``: elements ``(v, j)`` meaning ``v b^j``.

    ``(v, j)(w, l) = (v + A^j w + [j + l >= n] t, (j + l) mod n)`` with
    ``A = action`` and ``t = top_power = b^n``.
    """
    mods = tuple(mods)
    r = len(mods)
    ident = tuple(tuple(int(i == k) % mods[i] for k in range(r)) for i in range(r))
    A = tuple(tuple(row) for row in action) if action is not None else ident
    t = tuple(top_power) if top_power is not None else (0,) * r
    powers = [ident]
    for _ in range(n):
        powers.append(_mat_mul(A, powers[-1], mods))
    if powers[n] != ident or _mat_vec(A, t, mods) != t:
        raise ValueError("action must have order dividing n and fix b^n")

    def mul(x, y):
        (v, j), (w, l) = x, y
        Aw = _mat_vec(powers[j], w, mods)
        s = [(a + b) % m for a, b, m in zip(v, Aw, mods)]
        if j + l >= n:
            s = [(a + b) % m for a, b, m in zip(s, t, mods)]
        return tuple(s), (j + l) % n

    zero = (0,) * r
    gens = [(tuple(int(i == k) for k in range(r)), 0) for i in range(r)]
    if n > 1:
        gens.append((zero, 1))
    G = from_multiplication(gens, mul, (zero, 0), name=name)
    expected = n
    for m in mods:
        expected *= m
    if G.order != expected:
        raise AssertionError(f"{name}: expected order {expected}, got {G.order}")
    return G


def _abelian(*mods):
    return cyclic_extension(mods, name="x".join(f"C{m}" for m in mods))


def _dihedral(k):
    return cyclic_extension((k,), 2, [[-1]], name=f"D{k}")


def _matrix_group(gens, p, name):
    def mul(a, b):
        (a11, a12), (a21, a22) = a
        (b11, b12), (b21, b22) = b
        return (((a11 * b11 + a12 * b21) % p, (a11 * b12 + a12 * b22) % p),
                ((a21 * b11 + a22 * b21) % p, (a21 * b12 + a22 * b22) % p))
    return from_multiplication(gens, mul, ((1, 0), (0, 1)), name=name)


def _builders():
    b = {}
    b["C1"] = lambda: from_permutations([], name="C1")
    for k in range(2, 17):
        b[f"C{k}"] = lambda k=k: _abelian(k)
    b["C2xC2"] = lambda: _abelian(2, 2)
    b["S3"] = lambda: from_permutations([[(1, 2)], [(1, 2, 3)]], name="S3")
    b["D3"] = lambda: _dihedral(3)
    b["D4"] = lambda: _dihedral(4)
    b["C2xC4"] = lambda: _abelian(2, 4)
    b["C2xC2xC2"] = lambda: _abelian(2, 2, 2)
    b["Q8"] = lambda: cyclic_extension((4,), 2, [[-1]], (2,), name="Q8")
    b["C3xC3"] = lambda: _abelian(3, 3)
    b["D5"] = lambda: _dihedral(5)
    b["C2xC6"] = lambda: _abelian(2, 6)
    b["D6"] = lambda: _dihedral(6)
    b["A4"] = lambda: cyclic_extension((2, 2), 3, [[0, 1], [1, 1]], name="A4")
    b["Dic3"] = lambda: cyclic_extension((3,), 4, [[-1]], name="Dic3")
    b["D7"] = lambda: _dihedral(7)
    b["C4xC4"] = lambda: _abelian(4, 4)
    b["C2xC8"] = lambda: _abelian(2, 8)
    b["C2xC2xC4"] = lambda: _abelian(2, 2, 4)
    b["C2^4"] = lambda: _abelian(2, 2, 2, 2)
    b["D8"] = lambda: _dihedral(8)
    b["Q16"] = lambda: cyclic_extension((8,), 2, [[-1]], (4,), name="Q16")
    b["SD16"] = lambda: cyclic_extension((8,), 2, [[3]], name="SD16")
    b["M16"] = lambda: cyclic_extension((8,), 2, [[5]], name="M16")
    b["C2xD4"] = lambda: cyclic_extension((4, 2), 2, [[-1, 0], [0, 1]], name="C2xD4")
    b["C2xQ8"] = lambda: cyclic_extension((4, 2), 2, [[-1, 0], [0, 1]], (2, 0), name="C2xQ8")
    b["C4:C4"] = lambda: cyclic_extension((4,), 4, [[-1]], name="C4:C4")
    b["C4oD4"] = lambda: cyclic_extension((4, 2), 2, [[1, 2], [0, 1]], name="C4oD4")
    b["C2^2:C4"] = lambda: cyclic_extension((4, 2), 2, [[1, 0], [1, 1]], name="C2^2:C4")
    b["S4"] = lambda: from_permutations([[(1, 2, 3, 4)], [(1, 2)]], name="S4")
    b["SL(2,3)"] = lambda: _matrix_group([((1, 1), (0, 1)), ((0, 2), (1, 0))], 3, "SL(2,3)")
    b["A5"] = lambda: from_permutations([[(1, 2, 3, 4, 5)], [(1, 2, 3)]], name="A5")
    b["D4perm"] = lambda: from_permutations([[(1, 2, 3, 4)], [(1, 3)]], name="D4perm")
    b["D5perm"] = lambda: from_permutations([[(1, 2, 3, 4, 5)], [(2, 5), (3, 4)]], name="D5perm")
    b["A4perm"] = lambda: from_permutations([[(1, 2, 3)], [(1, 2), (3, 4)]], name="A4perm")
    return b


_BUILDERS = _builders()

# One representative per isomorphism class of order <= 16 (42 groups).
SMALL_ORDER_NAMES = (
    "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7",
    "C8", "C2xC4", "C2xC2xC2", "D4", "Q8", "C9", "C3xC3", "C10", "D5", "C11",
    "C12", "C2xC6", "D6", "A4", "Dic3", "C13", "C14", "D7", "C15",
    "C16", "C4xC4", "C2xC8", "C2xC2xC4", "C2^4", "D8", "Q16", "SD16", "M16",
    "C2xD4", "C2xQ8", "C4:C4", "C4oD4", "C2^2:C4",
)
# Extra named groups; the small ones are rebuilt from other generators on purpose.
EXTRA_NAMES = ("D3", "D4perm", "D5perm", "A4perm", "S4", "SL(2,3)", "A5")


@lru_cache(maxsize=None)
def named_group(name: str) -> FiniteGroup:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown catalog group {name!r}") from None


def catalog(include_extra: bool = True) -> list[FiniteGroup]:
    names = SMALL_ORDER_NAMES + (EXTRA_NAMES if include_extra else ())
    return [named_group(n) for n in names]
