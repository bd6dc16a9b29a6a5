"""Acceptance suite: one test per criterion, each timed against a 10 second budget.

Run directly (``python tests/test_acceptance.py``) or under pytest; either way
one PASS/FAIL line is printed per criterion.
"""
from __future__ import annotations

import io
import json
import os
import sys
import time
import warnings

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import props  # noqa: E402
from sms_forge import cli  # noqa: E402
from sms_forge import okuyama_tilt as ok  # noqa: E402
from sms_forge import sms_engine as se  # noqa: E402
from sms_forge.fixtures import builtin_algebra, builtin_module, module_docs  # noqa: E402
from sms_forge.rep_mod import (  # noqa: E402
    cosyzygy,
    decompose,
    hom_space,
    is_isomorphic,
    kernel_sub,
    loewy_layers,
    simple,
    socle_layers,
    syzygy,
)
from sms_forge.stable_cat import is_brick, minimal, serre, stable_hom  # noqa: E402

BUDGET = 10.0

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []


def _iso(M, N) -> bool:
    M, N = minimal(M), minimal(N)
    return list(M.dims) == list(N.dims) and is_isomorphic(M, N) is not None


def _same_set(xs, ys) -> bool:
    return se.match_up_to_iso([minimal(x) for x in xs], [minimal(y) for y in ys]) is not None


def _zs():
    return [builtin_module("example5", f"Z_{i}") for i in range(4)]


def _simples(A):
    return [simple(A, i) for i in range(A.n)]


# -- criteria


def criterion_1():
    A = builtin_algebra("example5")
    Z = _zs()
    assert se.is_sms(Z)["verdict"] == se.SMS
    cand = se.verify_orthogonal_bricks(Z)
    m1 = se.mu_plus(cand, [Z[0], Z[2]])
    S = _simples(A)
    assert _same_set(m1.members, [Z[0], S[1], Z[2], S[3]])
    m2 = se.mu_plus(m1, [S[0], S[1], S[3]])
    assert _same_set(m2.members, S)


def criterion_2():
    A = builtin_algebra("example5")
    Z = _zs()
    cand = se.verify_orthogonal_bricks(Z)
    m1 = se.mu_plus(cand, [0, 2])
    expected_dims = [a + b for a, b in zip(Z[0].dims, Z[2].dims)]
    for k in (1, 3):
        X = m1.triangles[k].second
        assert list(X.dims) == expected_dims
        assert loewy_layers(X) == [(0, 0, 1, 0), (0, 1, 0, 1), (1, 0, 1, 0)]
        # Z_0 sits inside X with quotient Z_2
        H = hom_space(X, Z[2])
        surj = [f for f in H.basis if f.rank() == Z[2].dim]
        assert surj and _iso(kernel_sub(surj[0]).sub, Z[0])
    m2 = se.mu_plus(m1, [0, 1, 3])
    W = m2.triangles[2].second
    parts = decompose(W)
    assert len(parts) == 2 and all(mult == 1 for _, mult in parts)
    socles = []
    for U, _ in parts:
        layers = loewy_layers(U)
        assert all(sum(layer) == 1 for layer in layers)  # uniserial
        assert layers[0] == (1, 0, 0, 0)  # top k
        socles.append(socle_layers(U)[0])
    assert sorted(socles) == sorted([(0, 1, 0, 0), (0, 0, 0, 1)])


def criterion_3():
    A = builtin_algebra("example3")
    S = _simples(A)
    O = minimal(cosyzygy(S[0]))
    assert stable_hom(O, S[1]).dim >= 1
    M = builtin_module("example3", "M_3_1")
    assert loewy_layers(M) == [(0, 0, 1), (1, 0, 0)]
    with pytest.raises((se.NotOrthogonal, se.NotABrick)):
        se.verify_orthogonal_bricks([O, S[1], M])


def criterion_4():
    A = builtin_algebra("example4")
    assert A.p == 2 and A.dim == 8
    L = builtin_module("example4", "L")
    assert L.dim == 3 and is_brick(L)
    assert se.is_sms([L])["verdict"] == se.SMS
    buf = io.StringIO()
    code = cli.main(["sms", "orbit", "--algebra", "example4", "--sms", "L", "--format", "json", "--no-timing"], out=buf)
    orb = json.loads(buf.getvalue())["certificates"]
    assert code == 0 and len(orb["nodes"]) == 1
    assert all(e["from"] == e["to"] == 0 for e in orb["edges"])


def criterion_5():
    checked = 0
    for name in props.ALGEBRAS:
        A = builtin_algebra(name)
        S = _simples(A)
        for U in ok.nakayama_stable_subsets(A):
            X = [S[u] for u in U]
            for j in range(A.n):
                if j in U:
                    continue
                assert _iso(se.alpha(S[j], X), se.okuyama_trace(S[j], U)), (name, U, j)
                checked += 1
    assert checked > 0


def criterion_6():
    for name, systems in props.SYSTEMS.items():
        for names in systems:
            cand = se.verify_orthogonal_bricks([builtin_module(name, n) for n in names])
            n = len(cand)
            for mask in range(1, 1 << n):
                X = [k for k in range(n) if mask >> k & 1]
                if not se.nu_shift_stable([cand.members[k] for k in X]):
                    continue
                back = se.mu_minus(se.mu_plus(cand, X), X)
                assert _same_set(back.members, cand.members), (name, names, X)


def criterion_7():
    for name in ("example3", "example5"):
        A = builtin_algebra(name)
        for U in ok.nakayama_stable_subsets(A):
            T = ok.build_okuyama(A, U)
            res = ok.is_tilting(T)
            assert res["hom_shift_plus"] == 0 and res["hom_shift_minus"] == 0, (name, U)
            assert res["verdict"] == ok.TILTING, (name, U, res)
            assert ok.homotopy_iso(T, ok.silting_mutate_regular(A, U)) is not None, (name, U)


def _pool(name):
    A = builtin_algebra(name)
    base = _simples(A) + [builtin_module(name, n) for n in sorted(module_docs(name))]
    pool = []
    for M in base:
        for X in (M, syzygy(M), cosyzygy(M)):
            X = minimal(X)
            if X.dim and not any(_iso(X, Y) for Y in pool):
                pool.append(X)
    return pool


def criterion_8():
    pairs = 0
    for name in props.ALGEBRAS:
        pool = _pool(name)
        for M in pool:
            nM = serre(M)
            for N in pool:
                assert stable_hom(M, N).dim == stable_hom(N, nM).dim, name
                pairs += 1
    assert pairs >= 50


def criterion_9():
    cases = 0
    for fn in props.PROPERTIES.values():
        for seed in range(20):
            fn(seed)
            cases += 1
    assert cases >= 100


CRITERIA = {
    1: ("example5 SMS pipeline", criterion_1),
    2: ("example5 mutation witnesses", criterion_2),
    3: ("example3 refutation", criterion_3),
    4: ("example4 single-node orbit", criterion_4),
    5: ("Okuyama trace agrees with torsion triangle", criterion_5),
    6: ("mutation round trip", criterion_6),
    7: ("Okuyama complex equals regular silting mutation", criterion_7),
    8: ("Serre duality suite", criterion_8),
    9: ("property suites", criterion_9),
}


def run_criterion(k: int) -> tuple[bool, float, str]:
    title, fn = CRITERIA[k]
    t0 = time.perf_counter()
    err = ""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        try:
            fn()
            ok_ = True
        except AssertionError as e:
            ok_, err = False, f"assertion failed {e}"
    dt = time.perf_counter() - t0
    if ok_ and dt >= BUDGET:
        ok_, err = False, "over time budget"
    line = f"criterion {k} [{title}]: {'PASS' if ok_ else 'FAIL'} ({dt:.2f}s){' ' + err if err else ''}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok_, dt, err


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    passed, dt, err = run_criterion(k)
    assert passed, err


if __name__ == "__main__":
    results = [run_criterion(k)[0] for k in sorted(CRITERIA)]
    sys.exit(0 if all(results) else 1)
