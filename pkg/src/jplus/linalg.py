"""Exact integer matrices and Smith normal form.

Entries are Python ints, so nothing overflows. Matrices are small and dense
here (presentation complexes of truncated schema trees), which keeps a
textbook elimination with minimal-absolute-value pivots adequate.

>>> M = IntMatrix.from_rows([[0, 4], [4, 0]])
>>> smith_normal_form(M).d
(4, 4)
>>> cokernel(M)
AbelianInvariants(torsion=(4, 4), free_rank=0)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .coeffs import AbelianInvariants
from .errors import GuardExceeded, ParseError

MINORS_GUARD = 7


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix shape must be nonnegative")
        ents = tuple(int(x) for x in self.entries)
        if len(ents) != self.rows * self.cols:
            raise ValueError(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries")
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, d: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(d) if rows is None else rows
        cols = len(d) if cols is None else cols
        ents = [0] * (rows * cols)
        for i, x in enumerate(d):
            ents[i * cols + i] = x
        return cls(rows, cols, tuple(ents))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        r, c = self.rows, self.cols
        return IntMatrix(c, r, tuple(self.entries[i * c + j] for j in range(c) for i in range(r)))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        bt = other.transpose().to_rows()
        return IntMatrix(self.rows, other.cols,
                         tuple(sum(x * y for x, y in zip(r, c)) for r in self.to_rows() for c in bt))


@dataclass(frozen=True)
class SnfResult:
    """``U @ M @ V == diag(d)``; ``d`` lists min(rows, cols) entries, zeros last."""

    d: tuple[int, ...]
    U: IntMatrix | None
    V: IntMatrix | None

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x)

    @property
    def nonzero(self) -> tuple[int, ...]:
        return tuple(x for x in self.d if x)


def _swap_rows(A, i, j):
    A[i], A[j] = A[j], A[i]


def _swap_cols(A, i, j):
    for row in A:
        row[i], row[j] = row[j], row[i]


def _add_row(A, src, dst, q):
    """row[dst] += q * row[src]"""
    rs, rd = A[src], A[dst]
    for k in range(len(rd)):
        rd[k] += q * rs[k]


def _add_col(A, src, dst, q):
    for row in A:
        row[dst] += q * row[src]


def smith_normal_form(M: IntMatrix, transforms: bool = True) -> SnfResult:
    """Smith normal form with unimodular ``U`` (rows) and ``V`` (columns).

    Pivot: the nonzero entry of least absolute value in the remaining block,
    ties broken by lowest row then lowest column. Pass ``transforms=False`` to
    skip bookkeeping of ``U`` and ``V``.
    """
    m, n = M.rows, M.cols
    A = M.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    # V is tracked transposed so column operations become row operations
    Vt = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def row_op(src, dst, q):
        _add_row(A, src, dst, q)
        if U is not None:
            _add_row(U, src, dst, q)

    def col_op(src, dst, q):
        _add_col(A, src, dst, q)
        if Vt is not None:
            _add_row(Vt, src, dst, q)

    def row_swap(i, j):
        if i != j:
            _swap_rows(A, i, j)
            if U is not None:
                _swap_rows(U, i, j)

    def col_swap(i, j):
        if i != j:
            _swap_cols(A, i, j)
            if Vt is not None:
                _swap_rows(Vt, i, j)

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_op(t, i, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    col_op(t, j, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                # a remainder smaller than the pivot survived; re-pivot in row/col t
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, ci, cj = min(cand)
                row_swap(t, ci)
                col_swap(t, cj)
                continue
            # row and column t are clear; enforce divisibility on the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            row_op(bad[0], t, 1)
        if A[t][t] < 0:
            row_neg(t)
        t += 1

    d = tuple(A[i][i] for i in range(min(m, n)))
    if not transforms:
        return SnfResult(d, None, None)
    return SnfResult(d, IntMatrix.from_rows(U, cols=m), IntMatrix.from_rows(Vt, cols=n).transpose())


def _det(rows: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    A = [r[:] for r in rows]
    k = len(A)
    sign, prev = 1, 1
    for c in range(k - 1):
        if A[c][c] == 0:
            swap = next((r for r in range(c + 1, k) if A[r][c]), None)
            if swap is None:
                return 0
            A[c], A[swap] = A[swap], A[c]
            sign = -sign
        for r in range(c + 1, k):
            for s in range(c + 1, k):
                A[r][s] = (A[r][s] * A[c][c] - A[r][c] * A[c][s]) // prev
        prev = A[c][c]
    return sign * A[-1][-1] if k else 1


def gcd_minors(M: IntMatrix) -> tuple[int, ...]:
    """Nonzero invariant factors via ``d_k = g_k / g_(k-1)``, ``g_k`` the gcd of k x k minors.

    Exponential in the size; refuses matrices with both dimensions above the guard.
    """
    if min(M.rows, M.cols) > MINORS_GUARD:
        raise GuardExceeded(f"gcd_minors limited to min(rows, cols) <= {MINORS_GUARD}")
    A = M.to_rows()
    gs = [1]
    for k in range(1, min(M.rows, M.cols) + 1):
        g = 0
        for rs in combinations(range(M.rows), k):
            sub = [A[r] for r in rs]
            for cs in combinations(range(M.cols), k):
                g = gcd(g, _det([[row[c] for c in cs] for row in sub]))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        gs.append(g)
    return tuple(gs[k] // gs[k - 1] for k in range(1, len(gs)))


def rank_fraction_free(M: IntMatrix) -> int:
    """Rank over Q by fraction-free Gaussian elimination; independent of the SNF code."""
    A = M.to_rows()
    m, n = M.rows, M.cols
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            if A[i][c]:
                a, b = A[r][c], A[i][c]
                A[i] = [a * x - b * y for x, y in zip(A[i], A[r])]
                g = 0
                for x in A[i]:
                    g = gcd(g, x)
                if g > 1:
                    A[i] = [x // g for x in A[i]]
        r += 1
        if r == m:
            break
    return r


def blocks(M: IntMatrix) -> list[tuple[list[int], list[int]]]:
    """Row and column index sets of the connected components of the nonzero pattern.

    ``M`` is block diagonal along these after permuting rows and columns; rows
    and columns that are entirely zero are left out.
    """
    parent = list(range(M.rows + M.cols))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(M.rows):
        for j in range(M.cols):
            if M.entries[i * M.cols + j]:
                a, b = find(i), find(M.rows + j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    comps: dict[int, tuple[list[int], list[int]]] = {}
    for i in range(M.rows):
        for j in range(M.cols):
            if M.entries[i * M.cols + j]:
                comps.setdefault(find(i), ([], []))
    for i in range(M.rows):
        if find(i) in comps:
            comps[find(i)][0].append(i)
    for j in range(M.cols):
        if find(M.rows + j) in comps:
            comps[find(M.rows + j)][1].append(j)
    return [comps[k] for k in sorted(comps)]


def _factors_and_rank(M: IntMatrix) -> tuple[list[int], int]:
    """Nonzero invariant factors (unsorted across blocks) and rank, block by block."""
    factors, rank = [], 0
    for rs, cs in blocks(M):
        sub = IntMatrix.from_rows([[M[i, j] for j in cs] for i in rs], cols=len(cs))
        res = smith_normal_form(sub, transforms=False)
        factors += res.nonzero
        rank += res.rank
    return factors, rank


def cokernel(M: IntMatrix) -> AbelianInvariants:
    """``Z^rows / image(M)``, computed on the diagonal blocks of ``M`` separately."""
    factors, rank = _factors_and_rank(M)
    return AbelianInvariants.from_orders(factors, M.rows - rank)


def kernel_rank(M: IntMatrix) -> int:
    return M.cols - _factors_and_rank(M)[1]


def is_unimodular(M: IntMatrix) -> bool:
    return M.rows == M.cols and abs(_det(M.to_rows())) == 1


def parse_matrix(text: str) -> IntMatrix:
    """First line ``rows cols``, then row-major integers separated by whitespace."""
    try:
        toks = [int(t) for t in text.split()]
    except ValueError as exc:
        raise ParseError(f"bad matrix text: {exc}") from None
    if len(toks) < 2:
        raise ParseError("matrix text needs a 'rows cols' header")
    rows, cols = toks[0], toks[1]
    if rows < 0 or cols < 0 or len(toks) - 2 != rows * cols:
        raise ParseError(f"expected {rows}x{cols} entries, got {len(toks) - 2}")
    return IntMatrix(rows, cols, tuple(toks[2:]))


def format_matrix(M: IntMatrix) -> str:
    lines = [f"{M.rows} {M.cols}"]
    lines += [" ".join(map(str, r)) for r in M.to_rows()]
    return "\n".join(lines) + "\n"


def matrices_equal(A: IntMatrix, B: IntMatrix) -> bool:
    return (A.rows, A.cols, A.entries) == (B.rows, B.cols, B.entries)
