"""Built-in algebras and modules for the worked examples."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import numpy as np

from .algebra_core import BasicAlgebra, cartan_matrix
from .docs import DocError, load_algebra_doc, load_module_doc
from .rep_mod import Rep, loewy_layers, proj_rep, simple

BUILTINS = ("example3", "example4", "example5")


class FixtureCertificationError(RuntimeError):
    pass


def _read(name: str):
    return json.loads(resources.files("sms_forge").joinpath("fixtures", name).read_text())


def algebra_doc(name: str) -> dict:
    if name not in BUILTINS:
        raise DocError(f"unknown builtin algebra {name!r}")
    return _read(f"{name}.json")


# Loewy layers of e_i A for example5, top first, as dimension vectors over (k, 1, 2, 3)
EXAMPLE5_LAYERS = {
    0: [(1, 0, 0, 0), (0, 1, 0, 1), (1, 0, 2, 0), (0, 1, 0, 1), (1, 0, 0, 0)],
    1: [(0, 1, 0, 0), (1, 0, 1, 0), (0, 1, 0, 2), (1, 0, 1, 0), (0, 1, 0, 0)],
    2: [(0, 0, 1, 0), (0, 1, 0, 1), (2, 0, 1, 0), (0, 1, 0, 1), (0, 0, 1, 0)],
    3: [(0, 0, 0, 1), (1, 0, 1, 0), (0, 2, 0, 1), (1, 0, 1, 0), (0, 0, 0, 1)],
}
EXAMPLE5_CARTAN = np.array([[3, 2, 2, 2], [2, 3, 2, 2], [2, 2, 3, 2], [2, 2, 2, 3]])


def certify_example5(A: BasicAlgebra):
    if not np.array_equal(cartan_matrix(A), EXAMPLE5_CARTAN):
        raise FixtureCertificationError("example5 Cartan matrix deviates from the printed graphs")
    for i, layers in EXAMPLE5_LAYERS.items():
        got = loewy_layers(proj_rep(A, i))
        if got != layers:
            raise FixtureCertificationError(f"example5 projective {A.pres.vertices[i]} has layers {got}")


@lru_cache(maxsize=None)
def builtin_algebra(name: str) -> BasicAlgebra:
    A = load_algebra_doc(algebra_doc(name))
    if name == "example5":
        certify_example5(A)
    return A


def module_docs(name: str) -> dict:
    try:
        return _read(f"{name}_modules.json")
    except FileNotFoundError:
        return {}


def builtin_module(algebra_name: str, module_name: str, A: BasicAlgebra = None) -> Rep:
    """Resolve ``S_<v>``, ``P_<v>`` or a named fixture module (``Z_0``, ``L``...)."""
    if A is None:
        A = builtin_algebra(algebra_name)
    V = [str(v) for v in A.pres.vertices]
    if module_name[:2] in ("S_", "P_") and module_name[2:] in V:
        i = V.index(module_name[2:])
        return simple(A, i) if module_name[0] == "S" else proj_rep(A, i)
    docs = module_docs(algebra_name) if algebra_name in BUILTINS else {}
    if module_name not in docs:
        raise DocError(f"unknown module {module_name!r} for {algebra_name}")
    return load_module_doc(docs[module_name], A)


def module_names(algebra_name: str) -> list:
    A = builtin_algebra(algebra_name)
    V = [str(v) for v in A.pres.vertices]
    return [f"S_{v}" for v in V] + [f"P_{v}" for v in V] + sorted(module_docs(algebra_name))
