"""Basic algebras kQ/I from quiver presentations.

Paths compose left to right: for arrows ``a: i -> j`` and ``b: j -> k`` the
path ``ab`` runs from ``i`` to ``k``. Right modules are representations with
``M e_i -> M e_j`` for each arrow ``a: i -> j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

import numpy as np

from . import exactfield as ef


class PresentationError(ValueError):
    pass


class InconsistentRelation(PresentationError):
    pass


class NotAdmissible(PresentationError):
    pass


class NotSelfInjective(Exception):
    def __init__(self, vertex, reason: str = ""):
        self.vertex = vertex
        super().__init__(f"not self-injective at vertex {vertex}" + (f": {reason}" if reason else ""))


Path = tuple  # (source, target, arrow indices)


def _key(path: Path):
    return path[2] if path[2] else ("e", path[0])


@dataclass
class QuiverPresentation:
    p: int
    vertices: list
    arrows: list  # (name, source index, target index)
    relations: list = field(default_factory=list)  # [[(coeff, (arrow idx, ...)), ...], ...]

    def __post_init__(self):
        try:
            ef.Fp(self.p)
        except ValueError as e:
            raise PresentationError(str(e)) from e
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex names")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate arrow names")
        n = len(self.vertices)
        for name, s, t in self.arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise PresentationError(f"arrow {name} has an undeclared endpoint")
        for k, rel in enumerate(self.relations):
            ends = set()
            for c, path in rel:
                if len(path) < 2:
                    raise PresentationError(f"relation {k} contains a path of length < 2")
                for x, y in zip(path, path[1:]):
                    if self.arrows[x][2] != self.arrows[y][1]:
                        raise PresentationError(f"relation {k} contains a non-composable path")
                ends.add((self.arrows[path[0]][1], self.arrows[path[-1]][2]))
            if len(ends) > 1:
                raise InconsistentRelation(f"relation {k} is not parallel")

    @classmethod
    def from_names(cls, p: int, vertices: Sequence, arrows: Sequence, relations: Sequence) -> "QuiverPresentation":
        """Build from names: arrows ``(name, from, to)``, relations ``[(coeff, [arrow names])]``."""
        vidx = {v: i for i, v in enumerate(vertices)}
        for name, s, t in arrows:
            if s not in vidx or t not in vidx:
                raise PresentationError(f"arrow {name} has an undeclared endpoint")
        arr = [(name, vidx[s], vidx[t]) for name, s, t in arrows]
        aidx = {a[0]: i for i, a in enumerate(arr)}
        rels = []
        for rel in relations:
            terms = []
            for c, path in rel:
                for a in path:
                    if a not in aidx:
                        raise PresentationError(f"unknown arrow {a} in relation")
                terms.append((int(c) % p, tuple(aidx[a] for a in path)))
            rels.append(terms)
        return cls(p, list(vertices), arr, rels)

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a[0] == name:
                return i
        raise KeyError(name)


class BasicAlgebra:
    """Finite-dimensional quotient of a path algebra by an admissible ideal.

    Attributes:
        basis: list of paths ``(source, target, arrows)``; trivial paths first.
        table: structure constants, ``table[a, b]`` = coordinates of ``basis[a] * basis[b]``.
    """

    def __init__(self, pres: QuiverPresentation, max_path_len: int = 30):
        self.pres = pres
        self.p = pres.p
        self.n = len(pres.vertices)
        self.max_path_len = max_path_len
        self._between = {}
        self._build()
        self._nakayama = None

    # -- construction

    def _paths_up_to(self, length: int) -> list:
        out = [[(i, i, ()) for i in range(self.n)]]
        for _ in range(length):
            nxt = []
            for s, t, arrs in out[-1]:
                for k, (_, a_s, a_t) in enumerate(self.pres.arrows):
                    if a_s == t:
                        nxt.append((s, a_t, arrs + (k,)))
            out.append(nxt)
        return out

    def _build(self):
        p = self.p
        rels = self.pres.relations
        for m in range(2, self.max_path_len + 1):
            layers = self._paths_up_to(m)
            cols = [q for layer in reversed(layers) for q in layer]  # long paths first
            col = {_key(q): k for k, q in enumerate(cols)}

            rows = []
            for rel in rels:
                s = self.pres.arrows[rel[0][1][0]][1]
                t = self.pres.arrows[rel[0][1][-1]][2]
                lmin = min(len(pth) for _, pth in rel)
                budget = m - lmin
                for lu in range(budget + 1):
                    us = [u for u in layers[lu] if u[1] == s]
                    for lw in range(budget - lu + 1):
                        ws = [w for w in layers[lw] if w[0] == t]
                        for u, w in product(us, ws):
                            row = np.zeros(len(cols), dtype=np.int64)
                            for c, pth in rel:
                                full = u[2] + pth + w[2]
                                if len(full) <= m:
                                    row[col[full]] = (row[col[full]] + c) % p
                            if row.any():
                                rows.append(row)
            if rows:
                a, piv, r = ef.rref(np.array(rows), p)
                red, piv = a[:r], piv
            else:
                red, piv = np.zeros((0, len(cols)), dtype=np.int64), []
            top = len(layers[m])
            # columns 0..top-1 are the length-m paths
            # every length-m path must itself lie in the relation span
            exact = top == 0 or (
                len(piv) >= top and piv[:top] == list(range(top))
                and not red[:top, top:].any()
            )
            if exact:
                break
        else:
            raise NotAdmissible(f"paths of length {self.max_path_len} do not all vanish")
        self.loewy_bound = m
        # drop length-m columns: project the relation span to shorter paths
        short = cols[top:]
        if red.shape[0]:
            sub = red[:, top:]
            a2, piv2, r2 = ef.rref(sub, p)
            red2, piv2 = a2[:r2], piv2
        else:
            red2, piv2 = np.zeros((0, len(short)), dtype=np.int64), []
        pivset = set(piv2)
        basis_cols = [k for k in range(len(short)) if k not in pivset]
        basis = [short[k] for k in basis_cols]
        basis.sort(key=lambda q: (len(q[2]), q[0], q[1], q[2]))
        self.basis = basis
        self.dim = len(basis)
        self._short = short
        self._short_col = {_key(q): k for k, q in enumerate(short)}
        self._red, self._piv = red2, list(piv2)
        self._bidx = {_key(q): i for i, q in enumerate(basis)}
        self._basis_short_cols = [self._short_col[_key(q)] for q in basis]
        self.src = np.array([q[0] for q in basis], dtype=np.int64)
        self.tgt = np.array([q[1] for q in basis], dtype=np.int64)
        self.idempotents = [self._bidx[("e", i)] for i in range(self.n)]
        d = self.dim
        self.table = np.zeros((d, d, d), dtype=np.int64)
        for a, qa in enumerate(basis):
            for b, qb in enumerate(basis):
                if qa[1] != qb[0]:
                    continue
                self.table[a, b] = self.path_nf((qa[0], qb[1], qa[2] + qb[2]))

    def path_nf(self, path: Path) -> np.ndarray:
        """Coordinates of a path in the basis."""
        out = np.zeros(self.dim, dtype=np.int64)
        if len(path[2]) >= self.loewy_bound:
            return out
        k = _key(path)
        v = np.zeros(len(self._short), dtype=np.int64)
        v[self._short_col[k]] = 1
        red = ef.reduce_rows(v.reshape(1, -1), self._red, self._piv, self.p)[0]
        return red[self._basis_short_cols] % self.p

    def arrow_coords(self, k: int) -> np.ndarray:
        _, s, t = self.pres.arrows[k]
        return self.path_nf((s, t, (k,)))

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        t = np.einsum("i,ijk->jk", x % self.p, self.table) % self.p
        return (y % self.p) @ t % self.p

    def element_of_path(self, arrows: Sequence[int], source: Optional[int] = None) -> np.ndarray:
        if not arrows:
            return self.path_nf((source, source, ()))
        s = self.pres.arrows[arrows[0]][1]
        t = self.pres.arrows[arrows[-1]][2]
        return self.path_nf((s, t, tuple(arrows)))

    # -- helpers

    def paths_between(self, i: int, j: int) -> list[int]:
        """Basis indices of paths from ``i`` to ``j``."""
        key = (int(i), int(j))
        if key not in self._between:
            self._between[key] = [b for b in range(self.dim) if self.src[b] == i and self.tgt[b] == j]
        return list(self._between[key])

    def paths_from(self, i: int) -> list[int]:
        return [b for b in range(self.dim) if self.src[b] == i]

    def path_name(self, b: int) -> str:
        s, _, arrs = self.basis[b]
        if not arrs:
            return f"e_{self.pres.vertices[s]}"
        return "".join(self.pres.arrows[a][0] for a in arrs)

    def vertex_index(self, v) -> int:
        if isinstance(v, (int, np.integer)) and v not in self.pres.vertices:
            return int(v)
        return self.pres.vertices.index(v)

    def check_associative(self) -> bool:
        t = self.table
        p = self.p
        lhs = np.einsum("ijm,mkn->ijkn", t, t) % p
        rhs = np.einsum("jkm,imn->ijkn", t, t) % p
        return bool(np.array_equal(lhs, rhs))

    def __repr__(self):
        return f"BasicAlgebra(vertices={self.pres.vertices}, dim={self.dim}, p={self.p})"


def build_algebra(pres: QuiverPresentation, max_path_len: int = 30) -> BasicAlgebra:
    return BasicAlgebra(pres, max_path_len)


def projective(A: BasicAlgebra, i: int):
    """The right module e_i A."""
    from .rep_mod import Rep

    spaces = [A.paths_between(i, j) for j in range(A.n)]
    pos = [{b: k for k, b in enumerate(sp)} for sp in spaces]
    mats = []
    for k, (_, s, t) in enumerate(A.pres.arrows):
        m = np.zeros((len(spaces[t]), len(spaces[s])), dtype=np.int64)
        a = A.arrow_coords(k)
        for col, b in enumerate(spaces[s]):
            e = np.zeros(A.dim, dtype=np.int64)
            e[b] = 1
            prod = A.mul(e, a)
            for row, c in enumerate(spaces[t]):
                m[row, col] = prod[c]
        mats.append(m)
    return Rep(A, [len(sp) for sp in spaces], mats)


def injective(A: BasicAlgebra, i: int):
    """The right module D(A e_i); the space at ``j`` is dual to the paths ``j -> i``."""
    from .rep_mod import Rep

    spaces = [A.paths_between(j, i) for j in range(A.n)]
    mats = []
    for k, (_, s, t) in enumerate(A.pres.arrows):
        # (phi . a)(y) = phi(a y) for y in e_t A e_i
        m = np.zeros((len(spaces[t]), len(spaces[s])), dtype=np.int64)
        a = A.arrow_coords(k)
        for row, y in enumerate(spaces[t]):
            e = np.zeros(A.dim, dtype=np.int64)
            e[y] = 1
            prod = A.mul(a, e)
            for col, x in enumerate(spaces[s]):
                m[row, col] = prod[x]
        mats.append(m)
    return Rep(A, [len(sp) for sp in spaces], mats)


def cartan_matrix(A: BasicAlgebra) -> np.ndarray:
    """Entry (i, j) is dim P_i e_j, the number of basis paths from i to j."""
    c = np.zeros((A.n, A.n), dtype=np.int64)
    for b in range(A.dim):
        c[A.src[b], A.tgt[b]] += 1
    return c


@dataclass
class NakayamaData:
    permutation: list
    witnesses: list  # ModMap P_i -> I_sigma(i)
    socle_elements: list  # coordinates of a generator of soc(e_i A), lying in e_i A e_sigma(i)


def self_injective_check(A: BasicAlgebra) -> NakayamaData:
    if A._nakayama is not None:
        return A._nakayama
    from .rep_mod import is_isomorphic, socle_vectors

    perm, wits, socs = [], [], []
    for i in range(A.n):
        P = projective(A, i)
        soc = socle_vectors(P)
        sdim = [s.shape[0] for s in soc]
        if sum(sdim) != 1:
            raise NotSelfInjective(A.pres.vertices[i], "socle of the projective is not simple")
        j = int(np.argmax(sdim))
        iso = is_isomorphic(P, injective(A, j))
        if iso is None:
            raise NotSelfInjective(A.pres.vertices[i], "projective is not injective")
        vec = np.zeros(A.dim, dtype=np.int64)
        for k, b in enumerate(A.paths_between(i, j)):
            vec[b] = soc[j][0, k]
        perm.append(j)
        wits.append(iso)
        socs.append(vec)
    if sorted(perm) != list(range(A.n)):
        raise NotSelfInjective(A.pres.vertices[0], "socle map is not a permutation")
    A._nakayama = NakayamaData(perm, wits, socs)
    return A._nakayama


def is_self_injective(A: BasicAlgebra) -> bool:
    try:
        self_injective_check(A)
        return True
    except NotSelfInjective:
        return False
