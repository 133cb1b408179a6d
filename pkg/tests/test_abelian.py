import itertools
import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moorepi.abelian import (FgAbGroup, Homomorphism, OddTorsion, cokernel, cyclic, determinant, direct_sum,
                             element_order, ext1, group_from_presentation, hom_order, identity, image,
                             is_exact, kernel, matmul, smith_normal_form, zeros)


def det_oracle(a):
    """Determinant by exact rational elimination (independent of the SNF code)."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return int(d)


def determinantal_divisors(M):
    """d_k = gcd of all k x k minors; invariant factors are d_k / d_{k-1}."""
    rows, cols = len(M), len(M[0])
    out = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = gcd(g, det_oracle([[M[i][j] for j in ci] for i in ri]))
        out.append(g)
    return out


def invariant_factors_oracle(M):
    dd = determinantal_divisors(M)
    inv = []
    for k in range(1, len(dd)):
        inv.append(0 if dd[k] == 0 else dd[k] // dd[k - 1])
    return inv


def check_snf(M):
    U, S, V = smith_normal_form(M)
    assert matmul(matmul(U, S), V) == M
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    m, n = len(M), len(M[0])
    diag = [S[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j:
                assert S[i][j] == 0
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    return diag


# ------------------------------------------------------------------ SNF

def test_snf_identity():
    U, S, V = smith_normal_form(identity(3))
    assert S == identity(3) and U == identity(3) and V == identity(3)


def test_snf_diag_2_3():
    assert check_snf([[2, 0], [0, 3]]) == [1, 6]


def test_snf_2468():
    assert check_snf([[2, 4], [6, 8]]) == [2, 4]


def test_snf_zero_and_rectangular():
    assert check_snf(zeros(2, 3)) == [0, 0]
    assert check_snf([[0, 6, 4]]) == [2]
    assert check_snf([[4], [6], [0]]) == [2]


def test_snf_deterministic():
    M = [[3, 5, 7], [2, 4, 6], [9, 1, 0]]
    assert smith_normal_form(M) == smith_normal_form([row[:] for row in M])


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-99, 99), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_determinantal_divisors(M):
    assert check_snf(M) == invariant_factors_oracle(M)


def test_snf_random_batch():
    rng = random.Random(7)
    for _ in range(300):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        check_snf([[rng.randint(-99, 99) for _ in range(n)] for _ in range(m)])


# ------------------------------------------------------------------ groups

def test_presentation_cyclic():
    for r in range(1, 6):
        G = group_from_presentation(["a"], [[2 ** r]])
        assert G.torsion == (2 ** r,) and G.free_rank == 0


def test_presentation_two_gens():
    G = group_from_presentation(["a", "b"], [[2, 2], [0, 4]])
    assert G.torsion == (2, 4)


def test_presentation_odd_torsion():
    with pytest.raises(OddTorsion):
        group_from_presentation(["a", "b"], [[3, 0]])
    G = group_from_presentation(["a"], [[12]], localize=True)
    assert G.torsion == (4,)


def test_presentation_free_part():
    G = group_from_presentation(["a", "b", "c"], [[2, 0, 0]])
    assert G.torsion == (2,) and G.free_rank == 2


def test_element_order():
    Z8 = cyclic(8)
    assert element_order(Z8.zero()) == 1
    assert element_order(Z8.gen(0)) == 8
    G = FgAbGroup((2, 8))
    assert element_order(G.element([1, 2])) == 4


def test_kernel_cokernel_times_two():
    Z4 = cyclic(4)
    h = Homomorphism(Z4, Z4, ((2,),))
    K, _ = kernel(h)
    Q, _ = cokernel(h)
    assert K.torsion == (2,) and Q.torsion == (2,)
    I, _ = image(h)
    assert I.torsion == (2,)


def test_zero_map_kernel_cokernel():
    A, B = FgAbGroup((2, 4)), FgAbGroup((8,))
    h = Homomorphism(A, B, ((0,), (0,)))
    assert kernel(h)[0].iso == A.iso
    assert cokernel(h)[0].iso == B.iso


def test_exactness():
    A = FgAbGroup((2, 4))
    zero = Homomorphism(FgAbGroup(()), A, ())
    ident = Homomorphism(A, A, ((1, 0), (0, 1)))
    assert is_exact(zero, ident)
    Z2, Z4 = cyclic(2), cyclic(4)
    z = Homomorphism(Z2, Z4, ((0,),))
    two = Homomorphism(Z4, Z4, ((2,),))
    assert not is_exact(z, two)
    inc = Homomorphism(Z2, Z4, ((2,),))
    assert is_exact(inc, two)


def test_ext_and_hom():
    assert ext1(cyclic(2), cyclic(2)).order == 2
    assert ext1(cyclic(4), cyclic(8)).order == 4
    assert ext1(FgAbGroup((), 1), cyclic(8)).order == 1
    assert hom_order(cyclic(4), FgAbGroup((2, 8))) == 8


groups = st.lists(st.sampled_from([2, 4, 8]), max_size=3).map(lambda t: FgAbGroup(tuple(sorted(t))))


@settings(max_examples=60, deadline=None)
@given(groups, groups)
def test_direct_sum_order(A, B):
    S = direct_sum(A, B)
    assert S.order == A.order * B.order
    # for finite abelian groups |Ext(C,A)| = |Hom(C,A)|
    assert ext1(B, A).order == hom_order(B, A)
