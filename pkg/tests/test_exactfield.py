import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from sms_forge import exactfield as ef

PRIMES = [2, 3, 5, 7, 2_147_483_647]


def _oracle_rank(m, p):
    rows = [[GF(p)(int(x)) for x in r] for r in m.tolist()]
    return DomainMatrix(rows, m.shape, GF(p)).rank()


matrices = st.tuples(st.sampled_from(PRIMES), st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32)).map(
    lambda t: (t[0], np.random.default_rng(t[3]).integers(0, t[0], (t[1], t[2])))
)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_sympy(pm):
    p, m = pm
    assert ef.rank(m, p) == _oracle_rank(m, p)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_is_kernel(pm):
    p, m = pm
    k = ef.kernel(m, p)
    assert k.shape[0] + ef.rank(m, p) == m.shape[1]
    if k.shape[0]:
        assert not ef.matmul(m, k.T.copy(), p).any()
        assert ef.rank(k, p) == k.shape[0]


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_solve_roundtrip(pm):
    p, m = pm
    rng = np.random.default_rng(m.size)
    x = rng.integers(0, p, m.shape[1])
    b = ef.matmul(m, x.reshape(-1, 1), p).reshape(-1)
    y = ef.solve(m, b, p)
    assert y is not None
    assert np.array_equal(ef.matmul(m, y.reshape(-1, 1), p).reshape(-1), b)


def test_solve_inconsistent():
    m = np.array([[1, 0], [1, 0]])
    assert ef.solve(m, np.array([0, 1]), 3) is None


def test_inverse_and_singular():
    m = np.array([[1, 2], [3, 4]])
    inv = ef.inverse(m, 5)
    assert np.array_equal(ef.matmul(m, inv, 5), np.eye(2, dtype=np.int64))
    assert ef.inverse(np.array([[1, 2], [2, 4]]), 5) is None


def test_large_prime_products_exact():
    p = 2_147_483_647
    a = np.full((3, 40), p - 1, dtype=np.int64)
    b = np.full((40, 2), p - 1, dtype=np.int64)
    assert np.all(ef.matmul(a, b, p) == 40 % p)
    stack = ef.batch_matmul(a[None], b[None], p)
    assert np.array_equal(stack[0], ef.matmul(a, b, p))


def test_float_and_integer_paths_agree():
    rng = np.random.default_rng(1)
    a, b = rng.integers(0, 7, (5, 9)), rng.integers(0, 7, (9, 4))
    assert np.array_equal(ef.matmul(a, b, 7), (a @ b) % 7)


def test_fp_validation():
    with pytest.raises(ValueError):
        ef.Fp(4)
    F = ef.Fp(7)
    assert F.inv(3) * 3 % 7 == 1


def test_subspace_algebra():
    p = 3
    U = ef.Subspace.span([[1, 0, 0], [0, 1, 0]], p)
    V = ef.Subspace.span([[0, 1, 0], [0, 0, 1]], p)
    assert U.sum(V).dim == 3
    assert U.intersection(V) == ef.Subspace.span([[0, 1, 0]], p)
    assert U.contains([2, 1, 0]) and not U.contains([0, 0, 1])
    comp = U.complement()
    assert comp.shape[0] == 1 and U.sum(ef.Subspace.span(comp, p)).dim == 3
    assert ef.Subspace.zero(3, p).dim == 0 and ef.Subspace.full(3, p).dim == 3


def test_dimension_mismatch():
    with pytest.raises(ef.DimensionError):
        ef.Subspace.span([[1, 0]], 3, ambient_dim=3)
