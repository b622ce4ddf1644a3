from fractions import Fraction as Q
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from ominal.dsl import DimensionError, ParseError, Script, parse, parse_set, tokenize
from ominal.semilinear import DefinableFamily, DimensionMismatch, SemilinearSet

from strategies import points, sets

DEMO = Path(__file__).resolve().parent.parent / "scripts" / "demo.osl"


def test_demo_script():
    s = parse(DEMO.read_text())
    assert set(s.sets) == {"I", "C", "S", "M"}
    assert s.sets["C"].ambient_dim == 2
    assert s.sets["I"].equals(SemilinearSet.interval(0, 1))
    assert s.families["Y"].slice(2).equals(SemilinearSet.interval(0, 1) | SemilinearSet.point([2]))
    assert s.families["Y"].slice(Q(1, 2)).equals(SemilinearSet.interval(0, 1))
    assert [c.words for c in s.commands][1] == ["cohomology", "S", "--minus", "M", "--coeff", "Z/2"]
    assert [c.words for c in s.commands][2] == ["cover", "C", "--t", "1/4"]


def test_syntax_forms():
    a = parse_set("0 <= x1 < 1 & 2 x2 = x1 + 1/2")
    assert a.contains((Q(1, 2), Q(1, 2))) and not a.contains((1, Q(3, 4)))
    b = parse_set("2*x1 - 3 >= -x1")
    assert b.equals(SemilinearSet.interval(1, None))
    assert parse("set T[1] = { true };").sets["T"].equals(SemilinearSet.universe(1))
    assert parse_set("false").is_empty() and parse_set("true").ambient_dim == 0
    c = parse("set A[3] = { x1 > 0 };").sets["A"]
    assert c.ambient_dim == 3
    d = parse("set A = { x1 >= 0 }; set B = { x1 <= 1 & A };  # comment\n").sets["B"]
    assert d.equals(SemilinearSet.interval(0, 1))


def test_references_keep_their_dimension():
    s = parse("set A[2] = { 0 <= x1 <= 1 }; set B = { A & 0 <= x2 <= 1 };")
    assert s.sets["B"].equals(SemilinearSet.box([0, 0], [1, 1]))
    with pytest.raises(DimensionError):
        parse("set A = { 0 <= x1 <= 1 }; set B = { A & 0 <= x2 <= 1 };")
    fam = parse("set A = { 0 <= x1 <= 1 }; family F(t) = { A & x1 <= t };").families["F"]
    assert fam.slice(Q(1, 2)).equals(SemilinearSet.interval(0, Q(1, 2)))


def test_family_parameter_is_last():
    s = parse("family F(s) = { 0 <= x1 <= s };")
    fam = s.families["F"]
    assert isinstance(fam, DefinableFamily) and fam.fiber_dim == 1
    assert fam.slice(3).equals(SemilinearSet.interval(0, 3))


def predicate(p):
    x, y = p
    return (0 <= x < 1 and y > x) or not (x + 2 * y == 2) and (y <= Q(1, 2) or x >= 3)


@given(points(2))
def test_membership_follows_the_boolean_expression(p):
    s = parse_set("(0 <= x1 < 1 & x2 > x1) | !(x1 + 2 x2 = 2) & (x2 <= 1/2 | x1 >= 3)")
    assert s.contains(p) == predicate(p)


@given(sets(2), points(2))
def test_round_trip(a, p):
    text = Script(sets={"A": a}).to_text()
    back = parse(text).sets["A"]
    assert back.ambient_dim == 2
    assert back.contains(p) == a.contains(p)
    assert back.equals(a)


@given(sets(1))
def test_family_round_trip(total):
    fam = DefinableFamily(total.extend(1))
    text = Script(families={"F": fam}).to_text()
    back = parse(text).families["F"]
    assert back.total_space.equals(fam.total_space)


@pytest.mark.parametrize("text, line, col, fragment", [
    ("set A = { x1 << 0 };", 1, 15, "expected a number or variable"),
    ("set A = { x1 >= 0 }", 1, 20, "expected ';'"),
    ("set A = { y >= 0 };", 1, 11, "unknown name 'y'"),
    ("set A = { x1 >= 0 };\nset A = { x1 <= 0 };", 2, 5, "already declared"),
    ("set A = { x1 @ 0 };", 1, 14, "unexpected character"),
    ("set A = { x1 };", 1, 14, "expected a relation"),
    ("set A[1] = { x2 > 0 };", 1, 5, "exceeds declared dimension"),
    ("set cover = { x1 > 0 };", 1, 5, "reserved"),
    ("family F(x1) = { x1 > 0 };", 1, 10, "parameter must not be named"),
    ("family F(t) = { x1 > t }; set B = { F };", 1, 37, "cannot be used as a set"),
    ("hello;", 1, 1, "expected 'set', 'family' or a command"),
    ("cohomology A", 1, 13, "missing ';'"),
])
def test_errors_carry_positions(text, line, col, fragment):
    with pytest.raises(ParseError) as info:
        parse(text)
    err = info.value
    assert (err.line, err.col) == (line, col), str(err)
    assert fragment in err.message


def test_dimension_mismatch():
    with pytest.raises(DimensionError) as info:
        parse("set A = { x1 > 0 };\nset B = { A & x2 > 0 & x3 < 1 };")
    assert isinstance(info.value, DimensionMismatch)
    assert info.value.line == 2 and "dimension 1, expected 3" in info.value.message


def test_tokens():
    kinds = [t.kind for t in tokenize("x1 <= 1/2 # note\n")]
    assert kinds == ["name", "op", "num", "eof"]
