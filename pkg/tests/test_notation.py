import pytest
from hypothesis import given
from hypothesis import strategies as st

from moorepi.abelian import IsoType
from moorepi.notation import evaluate_pattern, format_factors, format_iso, parse_iso
from moorepi.rexpr import ExprError, evaluate, holds, m, theta


def test_format():
    assert format_iso(IsoType(0, (2, 2, 2))) == "(2)^3"
    assert format_iso(IsoType(1, (8,))) == "8 + Z"
    assert format_iso(IsoType()) == "0"
    assert format_factors(IsoType(0, (2, 2))) == "2+2"


def test_patterns():
    assert evaluate_pattern("(2)^(3+theta(r)) + 2^m(r,3)", {"r": 1}) == parse_iso("(2)^3 + 2")
    assert evaluate_pattern("(2)^(3+theta(r)) + 2^m(r,3)", {"r": 5}) == parse_iso("(2)^4 + 8")
    assert evaluate_pattern("2 + 2^(r-1)", {"r": 1}) == parse_iso("2")
    assert evaluate_pattern("2^r + Z", {"r": 3}) == IsoType(1, (8,))


def test_bad_patterns():
    with pytest.raises(ExprError):
        evaluate_pattern("6", {})
    with pytest.raises(ExprError):
        evaluate_pattern("2^q", {"r": 1})
    with pytest.raises(ExprError):
        evaluate("__import__('os')", {})


def test_rexpr():
    assert m(2, 3) == 2 and theta(1) == 0 and theta(4) == 1
    assert holds("r >= 2", {"r": 3}) and not holds("r == 1", {"r": 2})
    assert holds(None, {"r": 1})
    assert evaluate("2^(r+1)", {"r": 2}) == 8


isos = st.builds(lambda t, f: IsoType(f, tuple(sorted(t))),
                 st.lists(st.sampled_from([2, 4, 8, 16, 256]), max_size=6), st.integers(0, 2))


@given(isos)
def test_round_trip(t):
    assert parse_iso(format_iso(t)) == t
    assert parse_iso(format_factors(t)) == t
