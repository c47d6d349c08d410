import random

import pytest
from hypothesis import given, settings, strategies as st

from jplus.coeffs import AbelianInvariants
from jplus.errors import GuardExceeded, ParseError
from jplus.linalg import (
    IntMatrix, cokernel, format_matrix, gcd_minors, is_unimodular, kernel_rank, parse_matrix,
    rank_fraction_free, smith_normal_form,
)

M = IntMatrix.from_rows


def check_snf(A):
    res = smith_normal_form(A)
    assert res.U @ A @ res.V == IntMatrix.diag(res.d, A.rows, A.cols)
    assert is_unimodular(res.U) and is_unimodular(res.V)
    nz = res.nonzero
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert list(res.d[len(nz):]) == [0] * (len(res.d) - len(nz))
    return res


def test_examples():
    assert check_snf(M([[0, 4], [4, 0]])).d == (4, 4)
    assert check_snf(IntMatrix.identity(4)).d == (1, 1, 1, 1)
    assert check_snf(M([[2, 4], [4, 8]])).d == (2, 0)
    assert gcd_minors(M([[0, 4], [4, 0]])) == (4, 4)
    assert gcd_minors(IntMatrix.zeros(3, 2)) == ()


def test_empty_matrices():
    for r, c in [(0, 0), (3, 0), (0, 3)]:
        res = check_snf(IntMatrix.zeros(r, c))
        assert res.rank == 0
    assert cokernel(IntMatrix.zeros(3, 0)) == AbelianInvariants((), 3)


def test_cokernel_and_kernel():
    assert cokernel(M([[0, 4], [4, 0]])) == AbelianInvariants((4, 4))
    assert cokernel(IntMatrix.diag([1, 6])) == AbelianInvariants((6,))
    assert kernel_rank(IntMatrix.diag([4, 2])) == 0
    assert kernel_rank(IntMatrix.zeros(2, 3)) == 3
    assert kernel_rank(M([[2, 4], [4, 8]])) == 1


def test_deterministic():
    A = M([[6, 10, 15], [4, -2, 8], [3, 3, 3]])
    r1, r2 = smith_normal_form(A), smith_normal_form(A)
    assert (r1.d, r1.U, r1.V) == (r2.d, r2.U, r2.V)


def test_without_transforms():
    A = M([[6, 10], [4, 14]])
    assert smith_normal_form(A, transforms=False).d == smith_normal_form(A).d


def test_big_entries():
    A = M([[2 ** 80, 3 ** 50], [5 ** 40, 7 ** 30]])
    res = check_snf(A)
    assert res.nonzero == gcd_minors(A)


def test_minors_guard():
    with pytest.raises(GuardExceeded):
        gcd_minors(IntMatrix.identity(8))


def test_random_against_minors():
    rng = random.Random(20261014)
    for _ in range(200):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        A = M([[rng.randint(-10, 10) for _ in range(c)] for _ in range(r)])
        res = check_snf(A)
        assert res.nonzero == gcd_minors(A)
        assert res.rank == rank_fraction_free(A)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda c: st.lists(
    st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=1, max_size=5)))
def test_low_rank_matrices(rows):
    # repeat rows and add combinations to force rank deficiency
    A = M(rows + [[a + b for a, b in zip(rows[0], rows[-1])]])
    res = check_snf(A)
    assert res.nonzero == gcd_minors(A)
    assert res.rank == rank_fraction_free(A) <= len(rows)


def test_matrix_text_format():
    A = parse_matrix("2 3\n1 2 3\n-4 5 6\n")
    assert A.to_rows() == [[1, 2, 3], [-4, 5, 6]]
    assert parse_matrix(format_matrix(A)) == A
    assert parse_matrix("0 0\n") == IntMatrix.zeros(0, 0)


@pytest.mark.parametrize("bad", ["", "2 2\n1 2 3", "2\n1 2", "1 1\nx", "-1 2\n"])
def test_matrix_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_matrix(bad)


def test_invalid_shape_rejected():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, (1, 2, 3))


def test_blockwise_cokernel_matches_whole_matrix():
    from jplus.linalg import blocks
    rng = random.Random(99)
    for _ in range(150):
        r, c = rng.randint(0, 8), rng.randint(0, 8)
        rows = [[rng.choice([0, 0, 0, rng.randint(-9, 9)]) for _ in range(c)] for _ in range(r)]
        A = IntMatrix(r, c, tuple(x for row in rows for x in row))
        whole = smith_normal_form(A, transforms=False)
        assert cokernel(A) == AbelianInvariants.from_orders(whole.nonzero, r - whole.rank)
        assert kernel_rank(A) == c - whole.rank
        seen_r = [i for rs, _ in blocks(A) for i in rs]
        assert len(seen_r) == len(set(seen_r))
