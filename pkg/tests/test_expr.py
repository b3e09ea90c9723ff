from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hplane.algebra import NCPolynomial, PlaneSpec, nc_pow, x_plus_y
from hplane.coeffring import H
from hplane.expr import (
    Add,
    ExponentError,
    Mul,
    Neg,
    Param,
    ParseError,
    Pow,
    RationalLit,
    Sub,
    Var,
    evaluate,
    parse,
    to_text,
)

HP = PlaneSpec.h_plane()

leaves = st.one_of(
    st.sampled_from([Var("x"), Var("y"), Param("q"), Param("h")]),
    st.fractions(min_value=0, max_value=20, max_denominator=9).map(RationalLit),
)


def extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(Add, children, children),
        st.builds(Sub, children, children),
        st.builds(Mul, children, children),
        st.builds(Pow, children, st.integers(0, 4)),
    )


trees = st.recursive(leaves, extend, max_leaves=12)


def test_parse_examples():
    assert parse("(x+y)^2") == Pow(Add(Var("x"), Var("y")), 2)
    assert parse("x y^2") == Mul(Var("x"), Pow(Var("y"), 2))
    assert parse("3/4 h") == Mul(RationalLit(Fraction(3, 4)), Param("h"))


def test_precedence_and_associativity():
    assert parse("x - y - h") == Sub(Sub(Var("x"), Var("y")), Param("h"))
    assert parse("x + y*x^2") == Add(Var("x"), Mul(Var("y"), Pow(Var("x"), 2)))
    assert parse("x*y*x") == Mul(Mul(Var("x"), Var("y")), Var("x"))


def test_unary_minus_binds_to_atom():
    assert parse("-x^2") == Pow(Neg(Var("x")), 2)
    assert parse("-(x^2)") == Neg(Pow(Var("x"), 2))
    assert parse("x*-y") == Mul(Var("x"), Neg(Var("y")))


def test_noncommutative_order_kept():
    assert parse("x*y") != parse("y*x")


@pytest.mark.parametrize("text", ["x^(-1)", "x^-2"])
def test_negative_exponent(text):
    with pytest.raises(ExponentError, match="negative exponent"):
        parse(text)


@pytest.mark.parametrize("text", ["x^1/2", "x^y", "x^(1/2)"])
def test_non_integer_exponent(text):
    with pytest.raises(ExponentError):
        parse(text)


@pytest.mark.parametrize(
    "text, position",
    [("(x", 3), ("x+*y", 3), ("x $", 3), ("2/0", 3), ("", 1), ("x)", 2), ("x^2^3", 4)],
)
def test_syntax_error_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == position
    assert not isinstance(info.value, ExponentError)
    assert info.value.expected


def test_deep_nesting_is_an_error_not_a_crash():
    with pytest.raises(ParseError):
        parse("(" * 5000 + "x" + ")" * 5000)
    with pytest.raises(ParseError):
        parse("-" * 5000 + "x")


@given(trees)
def test_round_trip(tree):
    assert parse(to_text(tree)) == tree


@given(st.text(alphabet="xyqh0123/+-*^() ", max_size=20))
def test_fuzz_errors_are_positioned(text):
    try:
        parse(text)
    except ParseError as err:
        assert 1 <= err.position <= len(text) + 1
        assert str(err)


@given(st.text(max_size=15))
def test_fuzz_arbitrary_text(text):
    try:
        parse(text)
    except ParseError as err:
        assert 1 <= err.position <= len(text) + 1


def test_relations_normalize_to_zero():
    assert not evaluate(parse("x*y - y*x - h*y^2"), HP)
    assert not evaluate(parse("x*y^2 - y^2*x - 2*h*y^3"), HP)
    assert evaluate(parse("(x+y)^0"), HP) == NCPolynomial.one()


def test_parameters_follow_plane():
    assert evaluate(parse("h"), HP) == NCPolynomial.constant(H)
    assert evaluate(parse("q*h"), PlaneSpec(2, 3)) == NCPolynomial.constant(6)


@pytest.mark.parametrize("n", range(11))
def test_power_matches_kernel(n):
    assert evaluate(parse(f"(x+y)^{n}"), HP) == nc_pow(x_plus_y(), n, HP)


@pytest.mark.parametrize("text", ["x*-x", "-(h^2)*y^2 + q", "q - h^2", "-(q^3)", "-(y^2)*x"])
def test_leading_negative_power_reparses(text):
    plane = PlaneSpec.symbolic()
    p = evaluate(parse(text), plane)
    assert evaluate(parse(p.to_text()), plane) == p


@given(trees)
def test_printed_normal_form_reparses(tree):
    plane = PlaneSpec.symbolic()
    p = evaluate(tree, plane)
    assert evaluate(parse(p.to_text()), plane) == p


@given(trees)
def test_strategies_agree_on_trees(tree):
    plane = PlaneSpec.symbolic()
    assert evaluate(tree, plane, "naive") == evaluate(tree, plane, "batched")
