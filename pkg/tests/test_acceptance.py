"""End-to-end acceptance checks, one test per criterion, each under its time limit."""

import random
import time
from contextlib import redirect_stdout
from io import StringIO

from jplus.catalog import catalog
from jplus.cli import main
from jplus.coeffs import AbelianInvariants, JSet, chain_normalize, localize
from jplus.fingroup import brute_force_radical, derived_series, gamma_radical, nullification
from jplus.formats import (
    format_cert, format_grp, format_perm, format_tree, format_wit, parse_cert, parse_grp,
    parse_perm, parse_tree, parse_wit, resolve_witness,
)
from jplus.gamma import check_witness, random_tree, schema_homology
from jplus.linalg import IntMatrix, gcd_minors, smith_normal_form
from jplus.presentations import check_certificate
from jplus.words import parse_word

J_VALUES = [JSet.empty(), JSet.of([2]), JSet.of([3]), JSet.of([2, 3]), JSet.all()]


class Clock:
    def __init__(self, state):
        self.state = state

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.state["elapsed"] = time.perf_counter() - self.t0


def cli(*argv):
    buf = StringIO()
    with redirect_stdout(buf):
        code = main([str(a) for a in argv])
    rec = {}
    for line in buf.getvalue().splitlines():
        k, _, v = line.partition("\t")
        rec[k] = v
    return code, rec


def test_c1_promislow_homology(criterion, data_dir):
    st = criterion("C1 Promislow homology: H1 = Z/4+Z/4 integrally, trivial rationally", 0.1)
    grp = data_dir / "promislow.grp"
    with Clock(st):
        c0, none = cli("homology", grp, "--invert", "none", "--machine")
        c1, rational = cli("homology", grp, "--invert", "all", "--machine")
    assert c0 == c1 == 0
    assert none["H1"] == "4,4" and none["H1_rank"] == "0" and none["H2_rank"] == "0"
    assert rational["H1"] == "0" and rational["H1_rank"] == "0" and rational["r_perfect"] == "true"
    assert st["elapsed"] < 0.1


def test_c2_promislow_certificates(criterion, data_dir):
    st = criterion("C2 certificates for x^4 = [x^2, y^-1] and y^-4 = [x^-1, y^2]; corrupted one fails", 0.1)
    with Clock(st):
        P = parse_grp((data_dir / "promislow.grp").read_text())
        x4 = parse_cert((data_dir / "promislow_x4.cert").read_text())
        y4 = parse_cert((data_dir / "promislow_y4.cert").read_text())
        bad = parse_cert((data_dir / "promislow_x4_bad.cert").read_text())
        results = (check_certificate(P, x4), check_certificate(P, y4), check_certificate(P, bad))
    assert x4.claim == parse_word("x^4 [x^2, y^-1]^-1")
    assert y4.claim == parse_word("y^-4 [x^-1, y^2]^-1")
    assert bad.claim == x4.claim
    assert results == (True, True, False)
    assert st["elapsed"] < 0.1


def test_c3_promislow_witness(criterion, data_dir):
    st = criterion("C3 alternating r = 4,2 witness graphs validate in the Promislow group", 0.1)
    with Clock(st):
        P = parse_grp((data_dir / "promislow.grp").read_text())
        graphs = []
        for name in ["promislow_phi.wit", "promislow_psi.wit"]:
            spec = parse_wit((data_dir / name).read_text())
            graphs.append(resolve_witness(spec, P, data_dir))
        ok = [check_witness(P, g, JSet.all()) for g in graphs]
    assert ok == [True, True]
    phi, psi = graphs
    assert phi.nodes[phi.root].element == parse_word("x")
    assert psi.nodes[psi.root].element == parse_word("y")
    for g in graphs:
        assert {n.r for n in g.nodes} == {2, 4}
        assert all(len(n.pairs) == 1 for n in g.nodes)
    # the x4 and y4 certificates of C2 are among those used
    claims = {c.claim for c in phi.certificates.values()}
    assert parse_word("x^4 [x^2, y^-1]^-1") in claims and parse_word("y^-4 [x^-1, y^2]^-1") in claims
    assert st["elapsed"] < 0.1


def test_c4_schema_trees(criterion):
    st = criterion("C4 100 random complete trees: H2 = 0, H1 = chain(r), rational H1 trivial", 5)
    rng = random.Random(4242)
    ALL, NONE = JSet.all(), JSet.empty()
    with Clock(st):
        for _ in range(100):
            t = random_tree(rng, [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 16, 27], max_depth=4, max_nodes=40)
            assert t.is_complete() and t.depth() <= 4 and t.size() <= 40
            H1, H2 = schema_homology(t, ALL, NONE)
            assert H2 == 0
            assert H1 == AbelianInvariants(chain_normalize([n.r for _, n in t.walk()]))
            localized, H2_local = schema_homology(t, ALL)
            assert localized.is_trivial and H2_local == 0
            assert localize(H1, ALL) == localized
    assert st["elapsed"] < 5


def test_c5_radical_triple_agreement(criterion):
    st = criterion("C5 fixpoint = lattice = witnessed radical on 49 groups x 5 J", 60)
    from jplus.gamma import witnessed_subgroup
    checked = 0
    with Clock(st):
        for G in catalog():
            for J in J_VALUES:
                R = gamma_radical(G, J)
                B = brute_force_radical(G, J)  # raises if the maximum is not unique
                W = witnessed_subgroup(G, J)
                assert R.members == B.members == W.members, (G.name, str(J))
                checked += 1
    assert checked == 49 * 5
    assert st["elapsed"] < 60


def test_c6_idempotence_and_perfect_radical(criterion):
    st = criterion("C6 nullification is idempotent; J = none gives the perfect radical", 30)
    with Clock(st):
        for G in catalog():
            for J in J_VALUES:
                Q = nullification(G, J)
                assert gamma_radical(Q, J).order == 1, (G.name, str(J))
            assert gamma_radical(G, JSet.empty()).members == derived_series(G)[-1].members
    assert st["elapsed"] < 30


def test_c7_snf_oracle(criterion):
    st = criterion("C7 200 random matrices: SNF = gcd of minors, U M V = diag(d)", 5)
    rng = random.Random(7)
    with Clock(st):
        for _ in range(200):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            M = IntMatrix(m, n, tuple(rng.randint(-10, 10) for _ in range(m * n)))
            res = smith_normal_form(M)
            assert res.nonzero == gcd_minors(M)
            assert res.U @ M @ res.V == IntMatrix.diag(res.d, m, n)
    assert st["elapsed"] < 5


def test_c8_format_round_trips(criterion, data_dir):
    st = criterion("C8 parse -> print -> parse is the identity on every shipped fixture", 1)
    formats = {".grp": (parse_grp, format_grp), ".tree": (parse_tree, format_tree),
               ".perm": (parse_perm, format_perm), ".wit": (parse_wit, format_wit),
               ".cert": (parse_cert, format_cert)}
    seen = set()
    with Clock(st):
        for path in sorted(data_dir.iterdir()):
            if path.suffix not in formats:
                continue
            parse, fmt = formats[path.suffix]
            obj = parse(path.read_text())
            assert parse(fmt(obj)) == obj, path.name
            seen.add(path.suffix)
    assert seen == set(formats)
    assert st["elapsed"] < 1
