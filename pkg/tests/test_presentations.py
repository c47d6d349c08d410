import random

import pytest
from hypothesis import given, settings, strategies as st

from jplus.coeffs import AbelianInvariants, JSet
from jplus.errors import CertificateError
from jplus.formats import parse_cert, parse_grp
from jplus.linalg import IntMatrix
from jplus.presentations import (
    TRIVIAL, Certificate, Presentation, check_certificate, free_product, homology, integral_h1,
    is_r_perfect_presentation, presentation_complex,
)
from jplus.words import IDENTITY, Word, commutator, conjugate, invert, parse_word, reduce

NONE, ALL = JSet.empty(), JSet.all()


def load(data_dir, name):
    return parse_grp((data_dir / name).read_text())


@pytest.fixture
def promislow(data_dir):
    return load(data_dir, "promislow.grp")


def cyclic(n, g="x"):
    return Presentation(f"C{n}", (g,), (Word.gen(g, n),))


def test_promislow_complex(promislow):
    assert promislow.relators == (parse_word("x^-1 y^2 x y^2"), parse_word("y^-1 x^2 y x^2"))
    assert presentation_complex(promislow).d2.to_rows() == [[0, 4], [4, 0]]


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (5, 1), (7, 4)])
def test_cyclic_prime_power(p, k):
    P = cyclic(p ** k)
    assert presentation_complex(P).d2.to_rows() == [[p ** k]]
    h = homology(P, NONE)
    assert h.H1 == AbelianInvariants((p ** k,)) and h.H2_rank == 0


def test_free_group_complex():
    F = Presentation("F2", ("x", "y"), ())
    d2 = presentation_complex(F).d2
    assert (d2.rows, d2.cols) == (2, 0)
    assert homology(F, ALL).H1 == AbelianInvariants((), 2)


def test_promislow_homology(promislow):
    h = homology(promislow, NONE)
    assert h.H1 == AbelianInvariants((4, 4)) and h.H2_rank == 0
    assert h.H0 == AbelianInvariants((), 1)
    assert homology(promislow, ALL).H1.is_trivial


def test_r_perfect(promislow):
    assert is_r_perfect_presentation(promislow, JSet.of([2]))
    assert not is_r_perfect_presentation(promislow, JSet.of([3]))
    F = Presentation("F1", ("x",), ())
    for J in (NONE, JSet.of([2]), ALL):
        assert not is_r_perfect_presentation(F, J)


class TestCertificates:
    def test_promislow_identities(self, promislow):
        x4 = Certificate(parse_word("x^4 [x^2, y^-1]^-1"), ((parse_word("x^4"), 1, 1),))
        y4 = Certificate(parse_word("y^-4 [x^-1, y^2]^-1"), ((IDENTITY, 0, -1),))
        assert check_certificate(promislow, x4)
        assert check_certificate(promislow, y4)
        bad = Certificate(x4.claim, ((parse_word("x^4"), 1, -1),))
        assert not check_certificate(promislow, bad)

    def test_derived_free_reduction(self, promislow):
        # x^4 rho_2 x^-4 freely reduces to x^4 y^-1 x^2 y x^-2
        rho2 = promislow.relators[1]
        assert conjugate(rho2, parse_word("x^4")) == parse_word("x^4 y^-1 x^2 y x^-2")
        assert invert(promislow.relators[0]) == parse_word("y^-2 x^-1 y^-2 x")

    def test_fixture_files(self, promislow, data_dir):
        for name in ["promislow_x4", "promislow_y4", "promislow_y4_pos", "promislow_xinv4"]:
            assert check_certificate(promislow, parse_cert((data_dir / f"{name}.cert").read_text()))
        assert not check_certificate(promislow, parse_cert((data_dir / "promislow_x4_bad.cert").read_text()))

    def test_empty_certificate(self, promislow):
        assert check_certificate(promislow, Certificate(IDENTITY))
        assert check_certificate(TRIVIAL, Certificate(IDENTITY))

    def test_errors(self, promislow):
        with pytest.raises(CertificateError):
            check_certificate(promislow, Certificate(IDENTITY, ((IDENTITY, 2, 1),)))
        with pytest.raises(CertificateError):
            check_certificate(promislow, Certificate(parse_word("z")))
        with pytest.raises(CertificateError):
            check_certificate(promislow, Certificate(IDENTITY, ((parse_word("z"), 0, 1),)))
        with pytest.raises(ValueError):
            Certificate(IDENTITY, ((IDENTITY, 0, 2),))

    def test_cancelling_step_pairs(self, promislow):
        rng = random.Random(7)
        base = [(parse_word("x^4"), 1, 1)]
        claim = parse_word("x^4 [x^2, y^-1]^-1")
        for _ in range(100):
            steps = list(base)
            c = reduce([(rng.choice("xy"), rng.randint(-3, 3)) for _ in range(rng.randint(0, 5))])
            k = rng.randrange(2)
            s = rng.choice((1, -1))
            pos = rng.randint(0, len(steps))
            steps[pos:pos] = [(c, k, s), (c, k, -s)]
            assert check_certificate(promislow, Certificate(claim, tuple(steps)))


def test_free_product_examples():
    assert free_product([]).gens == () and free_product([]).relators == ()
    P = free_product([cyclic(2), cyclic(3, "y")])
    assert P.gens == ("G1/x", "G2/y")
    assert integral_h1(P) == AbelianInvariants((6,))
    assert presentation_complex(P).d2 == IntMatrix.diag([2, 3])


GENS = ("a", "b", "c")
raw_words = st.lists(st.tuples(st.sampled_from(GENS), st.integers(-4, 4)), min_size=1, max_size=6)
relator = raw_words.map(reduce).filter(bool)
presentation = st.lists(relator, max_size=4).map(lambda rs: Presentation("P", GENS, tuple(rs)))


@settings(max_examples=80, deadline=None)
@given(presentation, presentation)
def test_free_product_homology_is_direct_sum(A, B):
    P = free_product([A, B])
    hA, hB, hP = homology(A, NONE), homology(B, NONE), homology(P, NONE)
    assert hP.H1 == hA.H1 + hB.H1
    assert hP.H2_rank == hA.H2_rank + hB.H2_rank


@settings(max_examples=100, deadline=None)
@given(presentation, st.randoms(use_true_random=False),
       st.sampled_from([NONE, JSet.of([2]), JSet.of([3]), ALL]))
def test_homology_metamorphic(P, rnd, J):
    rels = list(P.relators)
    rnd.shuffle(rels)
    new = []
    for r in rels:
        c = reduce([(rnd.choice(GENS), rnd.randint(-2, 2)) for _ in range(rnd.randint(0, 3))])
        r = conjugate(r, c)
        if rnd.random() < 0.5:
            r = invert(r)
        new.append(r)
    Q = Presentation("Q", GENS, tuple(new))
    assert homology(P, J) == homology(Q, J)


@settings(max_examples=100, deadline=None)
@given(presentation)
def test_h2_rank_bounds(P):
    h = homology(P, NONE)
    assert 0 <= h.H2_rank <= len(P.relators)


@given(st.lists(st.integers(1, 50), min_size=1, max_size=5), st.randoms(use_true_random=False))
def test_diagonal_pattern_has_no_h2(rs, rnd):
    # one relator x_i^r_i [.,.]: d2 is diagonal up to permutation, so H2 vanishes
    gens = tuple(f"g{i}" for i in range(len(rs)))
    rels = []
    for i, r in enumerate(rs):
        a, b = rnd.choice(gens), rnd.choice(gens)
        rels.append(Word.gen(gens[i], r) * commutator(Word.gen(a), Word.gen(b)))
    rnd.shuffle(rels)
    assert homology(Presentation("D", gens, tuple(rels)), NONE).H2_rank == 0


def test_invalid_presentations():
    with pytest.raises(ValueError):
        Presentation("P", ("x", "x"), ())
    with pytest.raises(ValueError):
        Presentation("P", ("x",), (Word.gen("y"),))
    with pytest.raises(ValueError):
        Presentation("P", ("x",), (IDENTITY,))


def test_equations_become_relators():
    u, v = parse_word("x^-1 y^2 x"), parse_word("y^-2")
    P = Presentation.from_equations("P", ("x", "y"), [(u, v)])
    assert P.relators == (u * invert(v),)
