import itertools

import numpy as np
import pytest

from sms_forge import exactfield as ef
from sms_forge.fixtures import builtin_module
from sms_forge.rep_mod import (
    ModMap,
    Rep,
    RelationViolation,
    cosyzygy,
    decompose,
    direct_sum,
    hom_space,
    injective_envelope,
    inj_rep,
    is_isomorphic,
    is_projective,
    kernel_sub,
    loewy_layers,
    nakayama,
    proj_rep,
    quotient,
    projective_cover,
    random_module,
    simple,
    socle,
    strip_projective,
    syzygy,
    top,
    trace_reject,
)


def brute_hom_count(M, N):
    """Number of vertexwise linear maps M -> N commuting with every arrow (p = 2 only)."""
    A = M.algebra
    shapes = [(N.dims[v], M.dims[v]) for v in range(A.n)]
    sizes = [r * c for r, c in shapes]
    count = 0
    for bits in itertools.product(range(2), repeat=sum(sizes)):
        blocks, k = [], 0
        for (r, c), s in zip(shapes, sizes):
            blocks.append(np.array(bits[k:k + s], dtype=np.int64).reshape(r, c))
            k += s
        if ModMap(M, N, blocks).is_intertwiner():
            count += 1
    return count


@pytest.mark.parametrize("seed", range(6))
def test_hom_dim_against_enumeration(ex4, seed):
    rng = np.random.default_rng(seed)
    M = random_module(ex4, rng, 1, 2)
    N = random_module(ex4, rng, 1, 2)
    if M.dim * N.dim > 16:
        N = simple(ex4, 0)
    assert 2 ** hom_space(M, N).dim == brute_hom_count(M, N)


@pytest.mark.parametrize("seed", range(8))
def test_hom_from_projective_is_vertex_space(ex3, ex5, seed):
    A = ex3 if seed % 2 else ex5
    M = random_module(A, np.random.default_rng(seed), 2, 2)
    for i in range(A.n):
        assert hom_space(proj_rep(A, i), M).dim == M.dims[i]
        assert hom_space(M, inj_rep(A, i)).dim == M.dims[i]


def test_relations_enforced(ex4):
    a = np.array([[0, 1], [0, 0]])
    with pytest.raises((RelationViolation, ValueError)):
        Rep(ex4, [2], [np.eye(2, dtype=np.int64), a])


def test_example3_syzygies(ex3):
    S1, S2 = simple(ex3, 0), simple(ex3, 1)
    O, C = syzygy(S1), cosyzygy(S1)
    assert O.dim == C.dim == 2
    assert is_isomorphic(O, C) is not None
    assert loewy_layers(O) == [(0, 1, 0), (0, 0, 1)]
    assert is_isomorphic(nakayama(S1), S2) is not None
    assert is_isomorphic(nakayama(proj_rep(ex3, 0)), inj_rep(ex3, 0)) is not None


def test_cover_and_envelope(ex5, zs):
    for Z in zs:
        P, epi, _ = projective_cover(Z)
        assert is_projective(P) and epi.rank() == Z.dim
        assert top(P).dim == top(Z).dim
        I, iota = injective_envelope(Z)
        assert iota.rank() == Z.dim and socle(I).dim == socle(Z).dim


def test_decompose_regular_and_multiplicities(ex3):
    reg, _, _ = direct_sum([proj_rep(ex3, i) for i in range(3)])
    parts = decompose(reg)
    assert len(parts) == 3 and all(m == 1 for _, m in parts)
    S1 = simple(ex3, 0)
    two, _, _ = direct_sum([S1, S1])
    parts = decompose(two)
    assert len(parts) == 1 and parts[0][1] == 2


def test_isomorphism_survives_base_change(ex5, zs):
    rng = np.random.default_rng(3)
    Z = zs[2]
    gs = []
    for d in Z.dims:
        while True:
            g = rng.integers(0, 3, (d, d))
            if d == 0 or ef.inverse(g, 3) is not None:
                break
        gs.append(g)
    mats = []
    for k, (_, s, t) in enumerate(ex5.pres.arrows):
        gi = ef.inverse(gs[s], 3) if Z.dims[s] else gs[s]
        mats.append(ef.matmul(ef.matmul(gs[t], Z.mats[k], 3), gi, 3) if Z.dims[s] and Z.dims[t] else Z.mats[k])
    W = Rep(ex5, Z.dims, mats)
    f = is_isomorphic(Z, W)
    assert f is not None and f.is_iso() and f.is_intertwiner()
    assert is_isomorphic(zs[1], zs[3]) is None


def test_strip_projective(ex3):
    S2 = simple(ex3, 1)
    M, _, _ = direct_sum([proj_rep(ex3, 0), S2])
    Mmin, pi, sec = strip_projective(M)
    assert is_isomorphic(Mmin, S2) is not None
    assert (pi @ sec - ModMap.identity(Mmin)).is_zero()


def test_trace_and_reject(ex5):
    P = proj_rep(ex5, 0)
    tr = trace_reject(P, [0], "trace")
    # generated by the vertex spaces away from k: misses only the top
    assert tr.sub.dim == P.dim - 1
    for M in (P, random_module(ex5, np.random.default_rng(5), 2, 2)):
        for V in ([0], [1, 3], [2]):
            rj = trace_reject(M, V, "reject")
            # independent route: intersect kernels of all maps into I_t, t outside V
            rows = []
            for t in range(ex5.n):
                if t in V:
                    continue
                for f in hom_space(M, inj_rep(ex5, t)).basis:
                    rows.append(f.matrix())
            K = ef.kernel(np.concatenate(rows), 3) if rows else np.eye(M.dim, dtype=np.int64)
            assert rj.sub.dim == K.shape[0]
            Q, _ = quotient(M, rj)
            assert all(Q.dims[v] == 0 or socle(Q).sub.dims[v] == 0 for v in V)


def test_kernel_of_cover_is_syzygy(ex5, zs):
    P, epi, _ = projective_cover(zs[1])
    K = kernel_sub(epi).sub
    assert is_isomorphic(K, syzygy(zs[1])) is not None


def test_named_fixture_modules(ex5, zs):
    assert [list(Z.dims) for Z in zs] == [[1, 0, 0, 0], [1, 1, 0, 1], [0, 1, 2, 1], [1, 1, 0, 1]]
    assert loewy_layers(zs[2]) == [(0, 0, 1, 0), (0, 1, 0, 1), (0, 0, 1, 0)]
    L = builtin_module("example4", "L")
    assert loewy_layers(L) == [(1,), (1,), (1,)]
