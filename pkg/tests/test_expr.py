"""Expression grammar: parsing, evaluation, printing round trips."""

import random

import pytest

from dividedops.diffop import DiffOp
from dividedops.errors import MismatchError, ParseError
from dividedops.expr import (
    BinOp,
    Num,
    Partial,
    Pow,
    Var,
    eval_laurent,
    eval_operator,
    parse,
)
from dividedops.laurent import LaurentPoly

from helpers import rand_op


def test_parse_examples():
    assert parse("d1[2]*x1") == BinOp("*", Partial(1, 2), Var(1, 1))
    assert parse("x1^-1") == Var(1, -1)
    with pytest.raises(ParseError) as err:
        parse("d1[2]*")
    assert err.value.offset == 6


def test_parse_structure():
    assert parse("1 + x2 - d1[1]") == BinOp(
        "-", BinOp("+", Num(1), Var(2, 1)), Partial(1, 1)
    )
    assert parse("(x1 + 1)^3") == Pow(BinOp("+", Var(1, 1), Num(1)), 3)
    assert parse("x1 ^ 2") == Var(1, 2)
    assert parse("2*x1*d2[10]") == BinOp("*", BinOp("*", Num(2), Var(1, 1)), Partial(2, 10))


def test_parse_error_offsets():
    cases = [
        ("", 0),
        ("d1", 2),
        ("d1[", 3),
        ("d1[2", 4),
        ("x", 1),
        ("(x1", 3),
        ("x1 + ", 5),
        ("x1 x2", 3),
        ("^2", 0),
    ]
    for text, offset in cases:
        with pytest.raises(ParseError) as err:
            parse(text)
        assert err.value.offset == offset, text


def test_eval_normalizes():
    assert str(eval_operator("d1[2]*x1", 3, 1)) == "x1*d1[2] + d1[1]"
    assert str(eval_operator("(d1[1]+x1^-1)^2", 2, 1)) == "0"
    assert str(eval_operator("d1[1]*d1[1]", 2, 1)) == "0"


def test_eval_written_order_matters():
    left = eval_operator("d1[1]*x1", 5, 1)
    right = eval_operator("x1*d1[1]", 5, 1)
    assert left != right
    assert left - right == DiffOp.one(5, 1)


def test_eval_coefficient_reduction():
    assert str(eval_operator("7*x1", 5, 1)) == "2*x1"
    assert str(eval_operator("x1 - x1", 5, 1)) == "0"


def test_eval_range_checks():
    with pytest.raises(MismatchError):
        eval_operator("x3", 3, 2)
    with pytest.raises(MismatchError):
        eval_operator("d2[1]", 3, 1)


def test_eval_laurent():
    f = eval_laurent("x1^2 + 2*x2^-1", 3, 2)
    assert f == LaurentPoly(3, 2, {(2, 0): 1, (0, -1): 2})
    with pytest.raises(MismatchError):
        eval_laurent("d1[1]", 3, 1)


def test_print_parse_round_trip():
    rng = random.Random(23)
    for p, n in ((2, 1), (3, 2), (5, 2)):
        for _ in range(40):
            op = rand_op(rng, p, n)
            assert eval_operator(str(op), p, n) == op
