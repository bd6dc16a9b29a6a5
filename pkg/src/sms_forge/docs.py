"""JSON documents for algebras, modules, complexes and reports."""
from __future__ import annotations

import json
from typing import Any, Optional

import numpy as np

from .algebra_core import BasicAlgebra, PresentationError, QuiverPresentation, build_algebra
from .okuyama_tilt import G_to_tensor, TwoTermComplex, _cx
from .rep_mod import Rep


class DocError(ValueError):
    pass


ALGEBRA_KEYS = {"field", "vertices", "arrows", "relations", "max_path_len"}
MODULE_KEYS = {"algebra", "dims", "matrices"}
COMPLEX_KEYS = {"algebra", "deg0", "deg1", "differential"}


def _reject_unknown(doc: dict, allowed: set, where: str):
    if not isinstance(doc, dict):
        raise DocError(f"{where}: expected a JSON object")
    extra = sorted(set(doc) - allowed)
    if extra:
        raise DocError(f"{where}: unknown keys {extra}")


def parse_algebra_doc(doc: dict) -> tuple[QuiverPresentation, int]:
    _reject_unknown(doc, ALGEBRA_KEYS, "algebra")
    for k in ("field", "vertices", "arrows", "relations"):
        if k not in doc:
            raise DocError(f"algebra: missing key {k!r}")
    _reject_unknown(doc["field"], {"char"}, "algebra.field")
    p = doc["field"].get("char")
    if not isinstance(p, int):
        raise DocError("algebra.field.char must be an integer")
    arrows = []
    for n, a in enumerate(doc["arrows"]):
        _reject_unknown(a, {"name", "from", "to"}, f"algebra.arrows[{n}]")
        arrows.append((a["name"], a["from"], a["to"]))
    rels = []
    for n, r in enumerate(doc["relations"]):
        terms = []
        for m, t in enumerate(r):
            _reject_unknown(t, {"coeff", "path"}, f"algebra.relations[{n}][{m}]")
            terms.append((int(t["coeff"]), list(t["path"])))
        rels.append(terms)
    try:
        pres = QuiverPresentation.from_names(p, doc["vertices"], arrows, rels)
    except ValueError as e:
        raise DocError(f"algebra: {e}") from e
    return pres, int(doc.get("max_path_len", 30))


def load_algebra_doc(doc: dict) -> BasicAlgebra:
    pres, cap = parse_algebra_doc(doc)
    return build_algebra(pres, cap)


def algebra_to_doc(A: BasicAlgebra) -> dict:
    pres = A.pres
    V = pres.vertices
    doc = {
        "field": {"char": pres.p},
        "vertices": list(V),
        "arrows": [{"name": n, "from": V[s], "to": V[t]} for n, s, t in pres.arrows],
        "relations": [[{"coeff": int(c), "path": [pres.arrows[a][0] for a in path]} for c, path in rel]
                      for rel in pres.relations],
    }
    if A.max_path_len != 30:
        doc["max_path_len"] = A.max_path_len
    return doc


def load_module_doc(doc: dict, A: BasicAlgebra) -> Rep:
    _reject_unknown(doc, MODULE_KEYS, "module")
    pres = A.pres
    names = [str(v) for v in pres.vertices]
    dims_doc = doc.get("dims", {})
    for v in dims_doc:
        if str(v) not in names:
            raise DocError(f"module: unknown vertex {v!r}")
    dims = [int(dims_doc.get(str(v), dims_doc.get(v, 0))) for v in pres.vertices]
    mats_doc = doc.get("matrices", {})
    anames = [a[0] for a in pres.arrows]
    for a in mats_doc:
        if a not in anames:
            raise DocError(f"module: unknown arrow {a!r}")
    mats = []
    for name, s, t in pres.arrows:
        if name in mats_doc:
            m = np.array(mats_doc[name], dtype=np.int64).reshape(-1)
            if m.size != dims[t] * dims[s]:
                raise DocError(f"module: matrix for {name} has the wrong shape")
            mats.append(m.reshape(dims[t], dims[s]) % A.p)
        else:
            mats.append(np.zeros((dims[t], dims[s]), dtype=np.int64))
    try:
        return Rep(A, dims, mats)
    except ValueError as e:
        raise DocError(f"module: {e}") from e


def module_to_doc(M: Rep, algebra_id: str = "") -> dict:
    pres = M.algebra.pres
    return {
        "algebra": algebra_id,
        "dims": {str(v): int(d) for v, d in zip(pres.vertices, M.dims)},
        "matrices": {name: M.mats[k].tolist() for k, (name, s, t) in enumerate(pres.arrows)
                     if M.dims[s] and M.dims[t]},
    }


def _element_to_terms(A: BasicAlgebra, x: np.ndarray) -> list:
    V = A.pres.vertices
    terms = []
    for b in np.flatnonzero(x % A.p):
        s, _, arrs = A.basis[b]
        t = {"coeff": int(x[b]), "path": [A.pres.arrows[a][0] for a in arrs]}
        if not arrs:
            t["vertex"] = V[s]
        terms.append(t)
    return terms


def _terms_to_element(A: BasicAlgebra, terms: list, where: str) -> np.ndarray:
    pres = A.pres
    out = np.zeros(A.dim, dtype=np.int64)
    for n, t in enumerate(terms):
        _reject_unknown(t, {"coeff", "path", "vertex"}, f"{where}[{n}]")
        try:
            arrs = [pres.arrow_index(a) for a in t.get("path", [])]
        except (KeyError, ValueError) as e:
            raise DocError(f"{where}[{n}]: unknown arrow") from e
        for a, b in zip(arrs, arrs[1:]):
            if pres.arrows[a][2] != pres.arrows[b][1]:
                raise DocError(f"{where}[{n}]: arrows do not compose")
        if arrs:
            x = A.element_of_path(arrs)
        else:
            if t.get("vertex") not in pres.vertices:
                raise DocError(f"{where}[{n}]: trivial path needs a known vertex")
            x = A.element_of_path([], pres.vertices.index(t["vertex"]))
        out = (out + int(t["coeff"]) * x) % A.p
    return out


def complex_to_doc(T: TwoTermComplex, algebra_id: str = "") -> dict:
    """Summand lists for both terms plus the nonzero differential blocks."""
    V = T.A.pres.vertices
    blocks = []
    for l in range(len(T.deg1)):
        for r in range(len(T.deg0)):
            if T.d[l, r].any():
                blocks.append({"row": l, "col": r, "terms": _element_to_terms(T.A, T.d[l, r])})
    return {
        "algebra": algebra_id,
        "deg0": [V[v] for v in T.deg0],
        "deg1": [V[v] for v in T.deg1],
        "differential": blocks,
    }


def chain_map_to_doc(C: TwoTermComplex, D: TwoTermComplex, maps: list) -> dict:
    """Degree-0 chain map C -> D given by generator images, as nonzero blocks per degree."""
    c, d = _cx(C), _cx(D)
    out = {}
    for key, G, S, T in (("deg0", maps[0], c.S0, d.S0), ("deg1", maps[1], c.S1, d.S1)):
        lam = G_to_tensor(C.A, G, S, T)
        out[key] = [{"row": l, "col": r, "terms": _element_to_terms(C.A, lam[l, r])}
                    for l in range(lam.shape[0]) for r in range(lam.shape[1]) if lam[l, r].any()]
    return out


def load_complex_doc(doc: dict, A: BasicAlgebra) -> TwoTermComplex:
    _reject_unknown(doc, COMPLEX_KEYS, "complex")
    V = A.pres.vertices
    try:
        deg0 = [V.index(v) for v in doc.get("deg0", [])]
        deg1 = [V.index(v) for v in doc.get("deg1", [])]
    except ValueError as e:
        raise DocError(f"complex: unknown vertex ({e})") from e
    d = np.zeros((len(deg1), len(deg0), A.dim), dtype=np.int64)
    for n, blk in enumerate(doc.get("differential", [])):
        _reject_unknown(blk, {"row", "col", "terms"}, f"complex.differential[{n}]")
        l, r = int(blk["row"]), int(blk["col"])
        if not (0 <= l < len(deg1) and 0 <= r < len(deg0)):
            raise DocError(f"complex.differential[{n}]: block index out of range")
        d[l, r] = _terms_to_element(A, blk["terms"], f"complex.differential[{n}].terms")
    try:
        return TwoTermComplex(A, deg0, deg1, d)
    except ValueError as e:
        raise DocError(f"complex: {e}") from e


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def read_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise DocError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from e
    except OSError as e:
        raise DocError(f"{path}: {e.strerror}") from e
