import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moorepi.errors import AlphabetMismatch
from moorepi.tensor import (Alphabet, DegreeCapExceeded, TAElement, hurewicz_divisibility, left_normed,
                            samelson_h2_model, ta_bracket, ta_multiply)

ALPH = Alphabet.of(cap=24, u=2, v=3)
MODULI = [0, 2, 4, 8]


def el(mod, pairs):
    return TAElement.build(ALPH, mod, pairs)


def letter(name, mod=0):
    return TAElement.letter(ALPH, mod, name)


words = st.lists(st.sampled_from(["u", "v"]), min_size=1, max_size=3).map(tuple)
coefs = st.integers(-9, 9)
elements = st.lists(st.tuples(words, coefs), max_size=4)


def homogeneous(deg_words):
    return st.lists(st.tuples(st.sampled_from(deg_words), coefs), max_size=3)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(MODULI), elements, elements, elements, coefs)
def test_bilinear(mod, a, b, c, k):
    x, y, z = el(mod, a), el(mod, b), el(mod, c)
    assert ta_bracket(x + y, z) == ta_bracket(x, z) + ta_bracket(y, z)
    assert ta_bracket(x, y + z) == ta_bracket(x, y) + ta_bracket(x, z)
    assert ta_bracket(x.scale(k), y) == ta_bracket(x, y).scale(k)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(MODULI), elements, elements)
def test_antisymmetric(mod, a, b):
    x, y = el(mod, a), el(mod, b)
    assert ta_bracket(x, y) == -ta_bracket(y, x)
    assert ta_bracket(x, x).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(MODULI), elements, elements, elements)
def test_jacobi(mod, a, b, c):
    x, y, z = el(mod, a), el(mod, b), el(mod, c)
    total = ta_bracket(x, ta_bracket(y, z)) + ta_bracket(y, ta_bracket(z, x)) + ta_bracket(z, ta_bracket(x, y))
    assert total.is_zero()


@settings(max_examples=60, deadline=None)
@given(homogeneous([("u",), ("v", "v")]), homogeneous([("v",), ("u", "v")]))
def test_graded_symmetry(a, b):
    # degrees: first element even (2 or 6), second odd (3 or 5)
    x, y = el(0, a), el(0, b)
    assert ta_bracket(x, y, graded=True) == -ta_bracket(y, x, graded=True)


def test_graded_square_odd_class_mod_2():
    v = letter("v", 2)
    assert ta_bracket(v, v, graded=True).is_zero()
    v = letter("v", 0)
    assert ta_bracket(v, v, graded=True).coefficient("v v") == 2


def test_bracket_definition():
    u, v = letter("u"), letter("v")
    br = ta_bracket(u, v)
    assert br == ta_multiply(u, v) - ta_multiply(v, u)
    assert br.coefficient("u v") == 1 and br.coefficient("v u") == -1


def test_triple_bracket_expansion():
    u, v = letter("u"), letter("v")
    x = left_normed(u, v, 3)
    assert len(x.terms) == 4
    assert x.coefficient("u u u v") == 1
    assert x.coefficient("v u u u") == -1
    assert x.coefficient("u u v u") == -3 and x.coefficient("u v u u") == 3
    # expanding by definition gives eight signed words before collection
    assert sum(abs(c) for _, c in x.terms) == 8


@pytest.mark.parametrize("r", range(1, 6))
@pytest.mark.parametrize("l", [1, 3, 5])
def test_hurewicz_not_divisible(r, l):
    u, v = letter("u", 2 ** r), letter("v", 2 ** r)
    x = left_normed(u, v, 3).scale(l)
    for s in range(r):
        verdict = hurewicz_divisibility(x, 2 ** (s + 1))
        assert verdict and verdict.s == s and verdict.witness is not None


def test_divisible_case():
    x = letter("v", 8).scale(2)
    verdict = hurewicz_divisibility(x, 2)
    assert verdict.divisible and not verdict


def test_divisibility_bad_power():
    x = letter("v", 4)
    with pytest.raises(ValueError):
        hurewicz_divisibility(x, 3)
    with pytest.raises(ValueError):
        hurewicz_divisibility(x, 8)


@pytest.mark.parametrize("m,n", [(3, 6), (7, 14), (5, 10), (4, 4), (2, 9)])
def test_samelson_model(m, n):
    assert samelson_h2_model(m, n) == (0, 1, -1, 0)


def test_samelson_graded_signs():
    assert samelson_h2_model(3, 5, graded=True) == (0, 1, 1, 0)
    assert samelson_h2_model(3, 6, graded=True) == (0, 1, -1, 0)


def test_alphabet_errors():
    other = TAElement.letter(Alphabet.of(u=2, w=5), 0, "u")
    with pytest.raises(AlphabetMismatch):
        letter("u") + other
    with pytest.raises(AlphabetMismatch):
        el(0, [(("x",), 1)])
    with pytest.raises(AlphabetMismatch):
        letter("u", 2) + letter("u", 4)
    with pytest.raises(DegreeCapExceeded):
        el(0, [(("v",) * 9, 1)])


def test_str():
    assert str(ta_bracket(letter("u"), letter("v"))) == "u(x)v - v(x)u"
    assert str(el(0, [])) == "0"
