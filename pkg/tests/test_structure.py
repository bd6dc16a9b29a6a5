import itertools

import numpy as np
import pytest

from sms_forge import exactfield as ef
from sms_forge import structure as S


def group_algebra(elements, mul, p):
    idx = {g: k for k, g in enumerate(elements)}
    n = len(elements)
    t = np.zeros((n, n, n), dtype=np.int64)
    for a in elements:
        for b in elements:
            t[idx[a], idx[b], idx[mul(a, b)]] = 1
    return S.FDAlgebra(t, p)


def cyclic(n, p):
    return group_algebra(list(range(n)), lambda a, b: (a + b) % n, p)


def klein(p):
    els = list(itertools.product(range(2), repeat=2))
    return group_algebra(els, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), p)


def sym3(p):
    els = list(itertools.permutations(range(3)))
    return group_algebra(els, lambda a, b: tuple(a[b[i]] for i in range(3)), p)


def matrix_algebra(p):
    mats = []
    for i in range(2):
        for j in range(2):
            m = np.zeros((2, 2), dtype=np.int64)
            m[i, j] = 1
            mats.append(m)
    return S.from_matrices(mats, p)


def brute_radical_dim(A):
    """Size of {x : x y nilpotent for all y}, by enumeration; returns log_p of it."""
    d, p = A.dim, A.p
    elems = [np.array(v, dtype=np.int64) for v in itertools.product(range(p), repeat=d)]
    mats = [A.left_matrix(v) for v in elems]
    count = 0
    for x in elems:
        ok = True
        for y in mats:
            m = ef.matmul(A.left_matrix(x), y, p)
            if ef.mat_pow(m, d, p).any():
                ok = False
                break
        count += ok
    k = round(np.log(count) / np.log(p))
    assert p**k == count
    return k


@pytest.mark.parametrize(
    "make, expected",
    [
        (lambda: cyclic(3, 3), 2),
        (lambda: klein(2), 3),
        (lambda: sym3(2), 1),
        (lambda: cyclic(2, 3), 0),
        (lambda: matrix_algebra(2), 0),
    ],
)
def test_radical_against_enumeration(make, expected):
    A = make()
    assert A.radical().dim == expected
    assert brute_radical_dim(A) == expected


@pytest.mark.parametrize("p, rad, comps", [(2, 1, 2), (3, 4, 2), (5, 0, 3)])
def test_sym3_group_algebra(p, rad, comps):
    A = sym3(p)
    assert A.radical().dim == rad
    assert A.semisimple_quotient().n_simple_components() == comps


def test_local_and_division():
    assert cyclic(3, 3).is_local()
    assert not klein(3).is_local()
    assert cyclic(1, 5).is_division()
    assert not matrix_algebra(3).is_division()
    # F_4 as F_2[x]/(x^2+x+1) is a field with one component
    c = np.array([[0, 1], [1, 1]])
    F4 = S.from_matrices([np.eye(2, dtype=np.int64), c], 2)
    assert F4.is_division()


def test_identity_and_associativity():
    A = sym3(3)
    assert A.check_associative()
    x = np.arange(6) % 3
    assert np.array_equal(A.mul(A.one, x), x)
    assert np.array_equal(A.power(x, 0), A.one)


def test_min_poly_and_factor():
    m = np.array([[0, 1], [1, 0]])
    mp = S.min_poly(m, 3)
    assert mp == [2, 0, 1]  # x^2 - 1
    facs = S.factor_poly(mp, 3)
    assert facs == [([1, 1], 1), ([2, 1], 1)]
    assert not S.poly_eval_matrix(mp, m, 3).any()
