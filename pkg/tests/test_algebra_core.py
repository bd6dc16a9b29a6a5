import numpy as np
import pytest

from sms_forge.algebra_core import (
    InconsistentRelation,
    NotAdmissible,
    NotSelfInjective,
    PresentationError,
    QuiverPresentation,
    build_algebra,
    cartan_matrix,
    is_self_injective,
    self_injective_check,
)
from sms_forge.fixtures import EXAMPLE5_CARTAN, builtin_algebra


def test_example3_basics(ex3):
    assert ex3.dim == 9 and ex3.n == 3
    assert np.array_equal(cartan_matrix(ex3), np.ones((3, 3), dtype=int))
    assert self_injective_check(ex3).permutation == [2, 0, 1]
    assert ex3.check_associative()


def test_example4_basics(ex4):
    assert ex4.dim == 8 and ex4.p == 2
    assert self_injective_check(ex4).permutation == [0]


def test_example5_basics(ex5):
    assert ex5.dim == 36
    assert np.array_equal(cartan_matrix(ex5), EXAMPLE5_CARTAN)
    assert self_injective_check(ex5).permutation == [0, 1, 2, 3]
    assert ex5.check_associative()


def test_idempotents_and_paths(ex3):
    for v in range(ex3.n):
        e = ex3.idempotents[v]
        x = np.zeros(ex3.dim, dtype=np.int64)
        x[e] = 1
        assert np.array_equal(ex3.mul(x, x), x)
    assert sum(len(ex3.paths_between(i, j)) for i in range(3) for j in range(3)) == 9


def test_a2_path_algebra_not_self_injective():
    pres = QuiverPresentation.from_names(3, ["1", "2"], [("a", "1", "2")], [])
    A = build_algebra(pres)
    assert A.dim == 3
    assert not is_self_injective(A)
    with pytest.raises(NotSelfInjective):
        self_injective_check(A)


def test_not_admissible_loop():
    # a single loop with no relations is infinite dimensional
    pres = QuiverPresentation.from_names(2, ["1"], [("a", "1", "1")], [])
    with pytest.raises(PresentationError):
        build_algebra(pres, max_path_len=8)


def test_relation_on_a_single_arrow_is_rejected():
    with pytest.raises(PresentationError):
        QuiverPresentation.from_names(2, ["1", "2"], [("a", "1", "2")], [[(1, ["a"])]])


def test_commuting_loops_are_not_admissible():
    pres = QuiverPresentation.from_names(3, ["1"], [("a", "1", "1"), ("b", "1", "1")], [[(1, ["a", "b"]), (-1, ["b", "a"])]])
    with pytest.raises(NotAdmissible):
        build_algebra(pres, max_path_len=6)


def test_non_parallel_relation():
    arrows = [("a", "1", "2"), ("b", "2", "1"), ("c", "2", "2")]
    with pytest.raises(InconsistentRelation):
        QuiverPresentation.from_names(3, ["1", "2"], arrows, [[(1, ["a", "b"]), (1, ["a", "c"])]])


def test_bad_presentations():
    with pytest.raises(PresentationError):
        QuiverPresentation.from_names(4, ["1"], [], [])
    with pytest.raises(PresentationError):
        QuiverPresentation.from_names(3, ["1"], [("a", "1", "9")], [])
    with pytest.raises(PresentationError):
        QuiverPresentation.from_names(3, ["1", "2"], [("a", "1", "2"), ("b", "2", "1")], [[(1, ["a", "a"])]])


def test_builtin_cached():
    assert builtin_algebra("example3") is builtin_algebra("example3")
