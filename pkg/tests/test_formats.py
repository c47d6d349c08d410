import pytest

from jplus.errors import ParseError
from jplus.formats import (
    format_cert, format_grp, format_perm, format_tree, format_wit, parse_cert, parse_grp,
    parse_perm, parse_tree, parse_wit, perm_group,
)
from jplus.gamma import OPEN, SchemaNode, leaf
from jplus.words import parse_word

FORMATS = {
    ".grp": (parse_grp, format_grp),
    ".cert": (parse_cert, format_cert),
    ".tree": (parse_tree, format_tree),
    ".perm": (parse_perm, format_perm),
    ".wit": (parse_wit, format_wit),
}


def fixtures(data_dir):
    return sorted(p for p in data_dir.iterdir() if p.suffix in FORMATS)


def test_every_fixture_round_trips(data_dir):
    paths = fixtures(data_dir)
    assert {p.suffix for p in paths} == set(FORMATS)
    for path in paths:
        parse, fmt = FORMATS[path.suffix]
        obj = parse(path.read_text())
        text = fmt(obj)
        assert parse(text) == obj, path.name
        assert fmt(parse(text)) == text, path.name


def test_grp_equation_is_printed_back(data_dir):
    P = parse_grp((data_dir / "promislow.grp").read_text())
    assert "rel x^-1 y^2 x = y^-2" in format_grp(P)


def test_grp_comments_and_blank_lines():
    P = parse_grp("# a comment\n\ngroup C3  # trailing\ngens x\nrel x^3\n")
    assert P.name == "C3" and P.relators == (parse_word("x^3"),)


@pytest.mark.parametrize("text", [
    "gens x\nrel x^2\n",
    "group G\nrel x\n",
    "group G\ngens x\nrel y\n",
    "group G\ngens x x\n",
    "group G\ngens x\nrel x = x = x\n",
    "group G\ngens x\nfoo x\n",
    "group G\ngens x\nrel x x^-1\n",
    "group G\ngens x\nrel x^\n",
])
def test_grp_errors(text):
    with pytest.raises(ParseError):
        parse_grp(text)


def test_cert_is_one_based():
    c = parse_cert("claim x^4 [x^2, y^-1]^-1\nstep x^4 2 +1\n")
    assert c.steps == ((parse_word("x^4"), 1, 1),)
    assert "step x^4 2 +1" in format_cert(c)


def test_cert_identity_conjugator():
    c = parse_cert("claim y^-4 [x^-1, y^2]^-1\nstep 1 1 -1\n")
    assert c.steps[0][0] == parse_word("1")


@pytest.mark.parametrize("text", [
    "step x 1 +1\n",
    "claim x\nstep x 0 +1\n",
    "claim x\nstep x 1 2\n",
    "claim x\nstep x\n",
    "claim x\nclaim y\n",
])
def test_cert_errors(text):
    with pytest.raises(ParseError):
        parse_cert(text)


def test_tree_syntax():
    assert parse_tree("(8)") == leaf(8)
    t = parse_tree("(4 (2) (4))")
    assert t == SchemaNode(4, (leaf(2), leaf(4)))
    assert parse_tree("(4 (open) (open))") == SchemaNode(4, (OPEN, OPEN))
    assert format_tree(t) == "(4 (2) (4))"


@pytest.mark.parametrize("text", ["", "(4", "(4 (2))", "(x)", "(0)", "(4) (4)", "(open (2) (2))", "4"])
def test_tree_errors(text):
    with pytest.raises(ParseError):
        parse_tree(text)


def test_perm_fixture_groups(data_dir):
    orders = {"s3": 6, "a5": 60, "s4": 24, "d4": 8, "q8": 8}
    for name, n in orders.items():
        spec = parse_perm((data_dir / f"{name}.perm").read_text())
        assert perm_group(spec, name).order == n


def test_wit_ids_must_be_contiguous():
    with pytest.raises(ParseError):
        parse_wit("target s3\nnode 1 (1 2 3) 3\nroot 1\n")
