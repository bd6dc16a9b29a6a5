"""
Right modules over a basic algebra, stored as quiver representations.

A module M has a vector space M e_j per vertex and a matrix per arrow
``a: s -> t`` sending M e_s to M e_t (column vectors). A vector of M in
"global" form concatenates the vertex spaces in vertex order.
"""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from . import exactfield as ef
from . import structure
from .algebra_core import BasicAlgebra, NotSelfInjective, injective, projective, self_injective_check


class AlgebraMismatch(ValueError):
    pass


class RelationViolation(ValueError):
    pass


class DecompositionInconclusive(Exception):
    pass


def _z(r, c):
    return np.zeros((r, c), dtype=np.int64)


class Rep:
    """A representation of the quiver of ``algebra`` satisfying its relations.

    Args:
        algebra: the BasicAlgebra acted on.
        dims: dimension of each vertex space.
        mats: one matrix per arrow, shape (dims[target], dims[source]).
        check: verify shapes and relations.
    """

    def __init__(self, algebra: BasicAlgebra, dims: Sequence[int], mats: Sequence[np.ndarray], check: bool = True):
        self.algebra = algebra
        self.p = algebra.p
        self.dims = [int(d) for d in dims]
        self.mats = [np.asarray(m, dtype=np.int64).reshape(self.dims[t], self.dims[s]) % self.p
                     for m, (_, s, t) in zip(mats, algebra.pres.arrows)]
        if len(self.mats) != len(algebra.pres.arrows):
            raise ValueError("one matrix per arrow required")
        self.offsets = np.concatenate([[0], np.cumsum(self.dims)]).astype(int).tolist()
        self.dim = self.offsets[-1]
        self._paths = {}
        self._cache = {}
        if check:
            self.validate()

    @property
    def dimvec(self) -> tuple:
        return tuple(self.dims)

    def validate(self):
        A = self.algebra
        for k, rel in enumerate(A.pres.relations):
            s = A.pres.arrows[rel[0][1][0]][1]
            t = A.pres.arrows[rel[0][1][-1]][2]
            acc = _z(self.dims[t], self.dims[s])
            for c, path in rel:
                acc = (acc + c * self.arrow_path_matrix(path, s)) % self.p
            if acc.any():
                raise RelationViolation(f"relation {k} is not satisfied")

    def arrow_path_matrix(self, arrows: Sequence[int], source: int) -> np.ndarray:
        m = np.eye(self.dims[source], dtype=np.int64)
        for a in arrows:
            m = ef.matmul(self.mats[a], m, self.p)
        return m

    def path_matrix(self, b: int) -> np.ndarray:
        """Action of the basis path ``b`` from M e_src to M e_tgt."""
        if b not in self._paths:
            s, _, arrs = self.algebra.basis[b]
            self._paths[b] = self.arrow_path_matrix(arrs, s)
        return self._paths[b]

    def global_arrow(self, a: int) -> np.ndarray:
        _, s, t = self.algebra.pres.arrows[a]
        g = _z(self.dim, self.dim)
        o = self.offsets
        g[o[t]:o[t + 1], o[s]:o[s + 1]] = self.mats[a]
        return g

    def act(self, x: np.ndarray) -> np.ndarray:
        """Global matrix of right multiplication by an algebra element."""
        g = _z(self.dim, self.dim)
        o = self.offsets
        A = self.algebra
        for b in np.flatnonzero(x % self.p):
            s, t = A.src[b], A.tgt[b]
            g[o[t]:o[t + 1], o[s]:o[s + 1]] += int(x[b]) * self.path_matrix(b)
        return g % self.p

    def split(self, v: np.ndarray) -> list:
        o = self.offsets
        return [v[o[j]:o[j + 1]] for j in range(len(self.dims))]

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        return f"Rep(dims={self.dims})"


class ModMap:
    """Module homomorphism given by one block per vertex (target dim x source dim)."""

    def __init__(self, source: Rep, target: Rep, blocks: Sequence[np.ndarray]):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("maps must stay over one algebra")
        self.source = source
        self.target = target
        p = source.p
        self.blocks = [np.asarray(b, dtype=np.int64).reshape(target.dims[j], source.dims[j]) % p
                       for j, b in enumerate(blocks)]

    @classmethod
    def zero(cls, source: Rep, target: Rep) -> "ModMap":
        return cls(source, target, [_z(target.dims[j], source.dims[j]) for j in range(len(source.dims))])

    @classmethod
    def identity(cls, M: Rep) -> "ModMap":
        return cls(M, M, [np.eye(d, dtype=np.int64) for d in M.dims])

    @classmethod
    def from_matrix(cls, source: Rep, target: Rep, g: np.ndarray) -> "ModMap":
        so, to = source.offsets, target.offsets
        return cls(source, target, [g[to[j]:to[j + 1], so[j]:so[j + 1]] for j in range(len(source.dims))])

    def matrix(self) -> np.ndarray:
        g = _z(self.target.dim, self.source.dim)
        so, to = self.source.offsets, self.target.offsets
        for j, b in enumerate(self.blocks):
            g[to[j]:to[j + 1], so[j]:so[j + 1]] = b
        return g

    def flat(self) -> np.ndarray:
        if not self.blocks:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([b.reshape(-1) for b in self.blocks])

    def compose(self, other: "ModMap") -> "ModMap":
        """``self o other``."""
        p = self.source.p
        return ModMap(other.source, self.target, [ef.matmul(a, b, p) for a, b in zip(self.blocks, other.blocks)])

    def __matmul__(self, other: "ModMap") -> "ModMap":
        return self.compose(other)

    def __add__(self, other: "ModMap") -> "ModMap":
        return ModMap(self.source, self.target, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "ModMap") -> "ModMap":
        return ModMap(self.source, self.target, [a - b for a, b in zip(self.blocks, other.blocks)])

    def scale(self, c: int) -> "ModMap":
        return ModMap(self.source, self.target, [int(c) * b for b in self.blocks])

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self) -> bool:
        return not any(b.any() for b in self.blocks)

    def is_intertwiner(self) -> bool:
        p = self.source.p
        for k, (_, s, t) in enumerate(self.source.algebra.pres.arrows):
            lhs = ef.matmul(self.target.mats[k], self.blocks[s], p)
            rhs = ef.matmul(self.blocks[t], self.source.mats[k], p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_iso(self) -> bool:
        p = self.source.p
        return self.source.dims == self.target.dims and all(
            ef.rank(b, p) == b.shape[0] for b in self.blocks)

    def inverse(self) -> "ModMap":
        p = self.source.p
        inv = [ef.inverse(b, p) for b in self.blocks]
        if any(i is None for i in inv):
            raise ValueError("map is not invertible")
        return ModMap(self.target, self.source, inv)

    def rank(self) -> int:
        return sum(ef.rank(b, self.source.p) for b in self.blocks)

    def __repr__(self):
        return f"ModMap({self.source.dims} -> {self.target.dims})"


def linear_combination(maps: Sequence[ModMap], coeffs, source: Rep, target: Rep) -> ModMap:
    p = source.p
    blocks = [_z(target.dims[j], source.dims[j]) for j in range(len(source.dims))]
    for c, f in zip(coeffs, maps):
        c = int(c) % p
        if c:
            for j in range(len(blocks)):
                blocks[j] = (blocks[j] + c * f.blocks[j]) % p
    return ModMap(source, target, blocks)


# -- constructors


def simple(A: BasicAlgebra, i: int) -> Rep:
    dims = [1 if j == i else 0 for j in range(A.n)]
    return Rep(A, dims, [_z(dims[t], dims[s]) for _, s, t in A.pres.arrows])


def zero_rep(A: BasicAlgebra) -> Rep:
    return Rep(A, [0] * A.n, [_z(0, 0) for _ in A.pres.arrows])


def direct_sum(reps: Sequence[Rep], algebra: Optional[BasicAlgebra] = None):
    """Return ``(S, inclusions, projections)``; vertex j of S stacks the summands' spaces."""
    A = algebra if algebra is not None else reps[0].algebra
    n = A.n
    if not reps:
        Z = zero_rep(A)
        return Z, [], []
    dims = [sum(R.dims[j] for R in reps) for j in range(n)]
    mats = []
    for k, (_, s, t) in enumerate(A.pres.arrows):
        m = _z(dims[t], dims[s])
        rs = cs = 0
        for R in reps:
            m[rs:rs + R.dims[t], cs:cs + R.dims[s]] = R.mats[k]
            rs += R.dims[t]
            cs += R.dims[s]
        mats.append(m)
    S = Rep(A, dims, mats, check=False)
    incl, proj = [], []
    off = [0] * n
    for R in reps:
        ib, pb = [], []
        for j in range(n):
            e = _z(dims[j], R.dims[j])
            e[off[j]:off[j] + R.dims[j], :] = np.eye(R.dims[j], dtype=np.int64)
            ib.append(e)
            pb.append(e.T.copy())
            off[j] += R.dims[j]
        incl.append(ModMap(R, S, ib))
        proj.append(ModMap(S, R, pb))
    return S, incl, proj


def map_from_projective(A: BasicAlgebra, i: int, P: Rep, M: Rep, m: np.ndarray) -> ModMap:
    """The map ``P_i -> M`` sending e_i to ``m`` in M e_i (P must be ``projective(A, i)``)."""
    blocks = []
    for j in range(A.n):
        cols = [ef.matmul(M.path_matrix(b), m.reshape(-1, 1), A.p).reshape(-1) for b in A.paths_between(i, j)]
        blocks.append(np.array(cols, dtype=np.int64).T.reshape(M.dims[j], len(cols)) if cols else _z(M.dims[j], 0))
    return ModMap(P, M, blocks)


def _proj_cache(A: BasicAlgebra, i: int) -> Rep:
    cache = A.__dict__.setdefault("_proj_reps", {})
    if i not in cache:
        cache[i] = projective(A, i)
    return cache[i]


def _inj_cache(A: BasicAlgebra, i: int) -> Rep:
    cache = A.__dict__.setdefault("_inj_reps", {})
    if i not in cache:
        cache[i] = injective(A, i)
    return cache[i]


def proj_rep(A: BasicAlgebra, i: int) -> Rep:
    return _proj_cache(A, i)


def inj_rep(A: BasicAlgebra, i: int) -> Rep:
    return _inj_cache(A, i)


# -- hom spaces


class HomSpace:
    """Basis of Hom(M, N) as intertwiners.

    ``flat`` holds the basis maps as rows (vertex blocks flattened row-major);
    the coordinates of a map are its entries at the ``free`` positions.
    """

    def __init__(self, M: Rep, N: Rep):
        if M.algebra is not N.algebra:
            raise AlgebraMismatch("modules over different algebras")
        A = M.algebra
        p = A.p
        sizes = [N.dims[j] * M.dims[j] for j in range(A.n)]
        off = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
        total = int(off[-1])
        eqs = []
        for k, (_, s, t) in enumerate(A.pres.arrows):
            r = N.dims[t] * M.dims[s]
            if r == 0:
                continue
            row = _z(r, total)
            if sizes[s]:
                row[:, off[s]:off[s + 1]] = np.kron(N.mats[k], np.eye(M.dims[s], dtype=np.int64))
            if sizes[t]:
                row[:, off[t]:off[t + 1]] = (row[:, off[t]:off[t + 1]]
                                             - np.kron(np.eye(N.dims[t], dtype=np.int64), M.mats[k].T))
            eqs.append(row % p)
        system = np.concatenate(eqs) if eqs else _z(0, total)
        self.M, self.N = M, N
        self.offsets = off
        self.flat = ef.kernel(system, p) if total else _z(0, 0)
        self.free = ef.free_columns(system, p) if total else []
        self.dim = self.flat.shape[0]
        self._basis = None

    def to_map(self, vec: np.ndarray) -> ModMap:
        M, N = self.M, self.N
        blocks = []
        for j in range(len(M.dims)):
            blocks.append(vec[self.offsets[j]:self.offsets[j + 1]].reshape(N.dims[j], M.dims[j]))
        return ModMap(M, N, blocks)

    @property
    def basis(self) -> list:
        if self._basis is None:
            self._basis = [self.to_map(v) for v in self.flat]
        return self._basis

    def coords(self, f: ModMap) -> np.ndarray:
        v = f.flat()
        return v[self.free] % self.M.p if self.dim else np.zeros(0, dtype=np.int64)

    def combo(self, c) -> ModMap:
        c = np.asarray(c, dtype=np.int64) % self.M.p
        if self.dim == 0:
            return ModMap.zero(self.M, self.N)
        return self.to_map(ef.matmul(c.reshape(1, -1), self.flat, self.M.p)[0])


def hom_space(M: Rep, N: Rep) -> HomSpace:
    key = ("hom", id(N))
    hit = M._cache.get(key)
    if hit is not None and hit[0] is N:
        return hit[1]
    H = HomSpace(M, N)
    M._cache[key] = (N, H)
    return H


def end_algebra(M: Rep) -> structure.FDAlgebra:
    """End(M) with multiplication ``a * b = a o b``."""
    key = ("end",)
    if key in M._cache:
        return M._cache[key]
    H = hom_space(M, M)
    d = H.dim
    table = np.zeros((d, d, d), dtype=np.int64)
    for a, fa in enumerate(H.basis):
        for b, fb in enumerate(H.basis):
            table[a, b] = H.coords(fa @ fb)
    one = H.coords(ModMap.identity(M)) if d else None
    E = structure.FDAlgebra(table, M.p, one)
    M._cache[key] = E
    return E


# -- graded subspaces and submodules


def _rref_rows(rows: np.ndarray, p: int, n: int) -> np.ndarray:
    if rows.size == 0:
        return _z(0, n)
    return ef.row_basis(rows.reshape(-1, n), p)


def closure(M: Rep, gens: Sequence[np.ndarray]) -> list:
    """Smallest graded subspace containing ``gens[j]`` (rows in M e_j) closed under arrows."""
    p = M.p
    A = M.algebra
    spaces = [_rref_rows(np.asarray(g, dtype=np.int64), p, M.dims[j]) for j, g in enumerate(gens)]
    changed = True
    while changed:
        changed = False
        for k, (_, s, t) in enumerate(A.pres.arrows):
            if spaces[s].shape[0] == 0 or M.dims[t] == 0:
                continue
            img = ef.matmul(spaces[s], M.mats[k].T, p)
            new = _rref_rows(np.concatenate([spaces[t], img]), p, M.dims[t])
            if new.shape[0] > spaces[t].shape[0]:
                spaces[t] = new
                changed = True
    return spaces


class SubmoduleWitness:
    """A submodule given by RREF bases per vertex (rows), with its inclusion."""

    def __init__(self, parent: Rep, bases: Sequence[np.ndarray]):
        p = parent.p
        A = parent.algebra
        self.parent = parent
        self.bases = [_rref_rows(np.asarray(b, dtype=np.int64), p, parent.dims[j]) for j, b in enumerate(bases)]
        self.pivots = [ef.rref(b, p)[1] if b.shape[0] else [] for b in self.bases]
        mats = []
        for k, (_, s, t) in enumerate(A.pres.arrows):
            img = ef.matmul(parent.mats[k], self.bases[s].T, p)  # dims[t] x k_s
            sub_img = img[self.pivots[t], :] if self.bases[t].shape[0] else _z(0, img.shape[1])
            check = ef.matmul(self.bases[t].T, sub_img, p)
            if not np.array_equal(check, img):
                raise ValueError("subspace is not closed under the action")
            mats.append(sub_img)
        self.sub = Rep(A, [b.shape[0] for b in self.bases], mats, check=False)
        self.inclusion = ModMap(self.sub, parent, [b.T.copy() for b in self.bases])

    @property
    def dim(self) -> int:
        return self.sub.dim


def submodule_generated(M: Rep, generators: Sequence[tuple]) -> SubmoduleWitness:
    """Submodule generated by ``(vertex, vector)`` pairs."""
    gens = [[] for _ in M.dims]
    for j, v in generators:
        gens[j].append(np.asarray(v, dtype=np.int64).reshape(-1))
    arrs = [np.array(g, dtype=np.int64).reshape(-1, M.dims[j]) if g else _z(0, M.dims[j]) for j, g in enumerate(gens)]
    return SubmoduleWitness(M, closure(M, arrs))


def quotient(M: Rep, sub: SubmoduleWitness):
    """Return ``(M/sub, projection)``."""
    if sub.parent is not M:
        raise ValueError("witness belongs to a different module")
    p = M.p
    A = M.algebra
    qproj, lifts = [], []
    for j in range(A.n):
        B, piv = sub.bases[j], sub.pivots[j]
        n = M.dims[j]
        free = [c for c in range(n) if c not in set(piv)]
        red = ef.reduce_rows(np.eye(n, dtype=np.int64), B, piv, p) if B.shape[0] else np.eye(n, dtype=np.int64)
        qproj.append(red[:, free].T.copy())  # q_j x n
        lift = _z(n, len(free))
        for c, f in enumerate(free):
            lift[f, c] = 1
        lifts.append(lift)
    mats = []
    for k, (_, s, t) in enumerate(A.pres.arrows):
        mats.append(ef.matmul(qproj[t], ef.matmul(M.mats[k], lifts[s], p), p))
    Q = Rep(A, [q.shape[0] for q in qproj], mats, check=False)
    return Q, ModMap(M, Q, qproj)


def kernel_sub(f: ModMap) -> SubmoduleWitness:
    p = f.source.p
    return SubmoduleWitness(f.source, [ef.kernel(b, p) if b.shape[1] else _z(0, 0) for b in f.blocks])


def image_sub(f: ModMap) -> SubmoduleWitness:
    p = f.source.p
    return SubmoduleWitness(f.target, [_rref_rows(b.T.copy(), p, b.shape[0]) for b in f.blocks])


def cokernel(f: ModMap):
    return quotient(f.target, image_sub(f))


def socle_vectors(M: Rep) -> list:
    """Per-vertex bases of soc M = joint kernel of all arrows out of each vertex."""
    p = M.p
    A = M.algebra
    out = []
    for j in range(A.n):
        outs = [M.mats[k] for k, (_, s, _t) in enumerate(A.pres.arrows) if s == j and M.mats[k].shape[0]]
        if M.dims[j] == 0:
            out.append(_z(0, 0))
        elif outs:
            out.append(_rref_rows(ef.kernel(np.concatenate(outs), p), p, M.dims[j]))
        else:
            out.append(np.eye(M.dims[j], dtype=np.int64))
    return out


def radical_vectors(M: Rep) -> list:
    p = M.p
    A = M.algebra
    out = []
    for j in range(A.n):
        imgs = [M.mats[k].T for k, (_, _s, t) in enumerate(A.pres.arrows) if t == j and M.mats[k].shape[1]]
        out.append(_rref_rows(np.concatenate(imgs), p, M.dims[j]) if imgs else _z(0, M.dims[j]))
    return out


def radical(M: Rep) -> SubmoduleWitness:
    return SubmoduleWitness(M, radical_vectors(M))


def socle(M: Rep) -> SubmoduleWitness:
    return SubmoduleWitness(M, socle_vectors(M))


def top(M: Rep) -> Rep:
    return quotient(M, radical(M))[0]


def loewy_layers(M: Rep) -> list:
    """Radical layers as dimension vectors, top first."""
    layers = []
    cur = M
    while cur.dim:
        rad = radical(cur)
        layers.append(tuple(cur.dims[j] - rad.sub.dims[j] for j in range(len(cur.dims))))
        cur = rad.sub
    return layers


def socle_layers(M: Rep) -> list:
    """Socle layers as dimension vectors, socle first."""
    layers = []
    cur = M
    while cur.dim:
        soc = socle(cur)
        layers.append(tuple(soc.sub.dims))
        cur = quotient(cur, soc)[0]
    return layers


def structural(M: Rep):
    rad = radical(M)
    soc = socle(M)
    return rad, soc, quotient(M, rad)[0], loewy_layers(M)


# -- covers, envelopes, syzygies


def top_generators(M: Rep) -> list:
    """``(vertex, vector)`` pairs lifting a basis of top(M), vertex by vertex."""
    p = M.p
    rad = radical_vectors(M)
    gens = []
    for j in range(M.algebra.n):
        if M.dims[j] == 0:
            continue
        sp = ef.Subspace.span(rad[j], p, M.dims[j]) if rad[j].shape[0] else ef.Subspace.zero(M.dims[j], p)
        for v in sp.complement():
            gens.append((j, v))
    return gens


def map_from_projective_sum(M: Rep, gens: Sequence[tuple]):
    """``(P, f)`` with P = sum of P_j over ``gens`` and f sending generators to the vectors."""
    A = M.algebra
    Ps = [proj_rep(A, j) for j, _ in gens]
    P, incl, proj = direct_sum(Ps, A)
    if not gens:
        return P, ModMap.zero(P, M)
    g = _z(M.dim, P.dim)
    for (j, v), pr in zip(gens, proj):
        f = map_from_projective(A, j, proj_rep(A, j), M, np.asarray(v))
        g = (g + ef.matmul(f.matrix(), pr.matrix(), A.p)) % A.p
    return P, ModMap.from_matrix(P, M, g)


def projective_cover(M: Rep):
    """Return ``(P, epi, gens)`` for the minimal projective cover."""
    gens = top_generators(M)
    P, f = map_from_projective_sum(M, gens)
    return P, f, gens


def syzygy(M: Rep) -> Rep:
    return syzygy_with_maps(M)[0]


def syzygy_with_maps(M: Rep):
    """Return ``(Omega M, inclusion into P, cover P, epi)``."""
    P, epi, _ = projective_cover(M)
    K = kernel_sub(epi)
    return K.sub, K.inclusion, P, epi


def injective_envelope(M: Rep):
    """Return ``(I, iota)`` with I a sum of indecomposable injectives D(A e_i)."""
    A = M.algebra
    p = A.p
    self_injective_check(A)
    soc = socle_vectors(M)
    pieces = []
    for i in range(A.n):
        B = soc[i]
        piv = ef.rref(B, p)[1] if B.shape[0] else []
        for c in piv:
            pieces.append((i, c))
    Is = [inj_rep(A, i) for i, _ in pieces]
    I, incl, _ = direct_sum(Is, A)
    g = _z(I.dim, M.dim)
    for (i, c), inc in zip(pieces, incl):
        # f(m)(x) = phi(m x), phi = coordinate c of M e_i
        blocks = []
        Ii = inj_rep(A, i)
        for j in range(A.n):
            rows = [M.path_matrix(x)[c, :] for x in A.paths_between(j, i)]
            blocks.append(np.array(rows, dtype=np.int64).reshape(Ii.dims[j], M.dims[j]))
        f = ModMap(M, Ii, blocks)
        g = (g + ef.matmul(inc.matrix(), f.matrix(), p)) % p
    return I, ModMap.from_matrix(M, I, g)


def cosyzygy(M: Rep) -> Rep:
    return cosyzygy_with_maps(M)[0]


def cosyzygy_with_maps(M: Rep):
    """Return ``(Omega^-1 M, projection from I, I, iota)``."""
    I, iota = injective_envelope(M)
    C, pi = cokernel(iota)
    return C, pi, I, iota


# -- projective summands


def strip_projective(M: Rep):
    """Remove projective summands. Return ``(M_min, proj: M -> M_min, section: M_min -> M)``."""
    A = M.algebra
    p = A.p
    nak = self_injective_check(A)
    gens = []
    for i in range(A.n):
        if M.dims[i] == 0:
            continue
        j = nak.permutation[i]
        w = M.act(nak.socle_elements[i])
        o = M.offsets
        blk = w[o[j]:o[j + 1], o[i]:o[i + 1]]  # M e_i -> M e_j
        if not blk.any():
            continue
        # choose m's with independent images m . omega
        chosen = []
        img = _z(0, M.dims[j])
        for c in range(M.dims[i]):
            col = blk[:, c]
            if not col.any():
                continue
            new = _rref_rows(np.concatenate([img, col.reshape(1, -1)]), p, M.dims[j])
            if new.shape[0] > img.shape[0]:
                img = new
                e = np.zeros(M.dims[i], dtype=np.int64)
                e[c] = 1
                chosen.append(e)
        gens.extend((i, e) for e in chosen)
    if not gens:
        return M, ModMap.identity(M), ModMap.identity(M)
    Q, iota = map_from_projective_sum(M, gens)
    Mmin, pi = cokernel(iota)
    if Mmin.dim == 0:
        return Mmin, pi, ModMap.zero(Mmin, M)
    H = hom_space(Mmin, M)
    # solve pi o s = id
    target = ModMap.identity(Mmin).flat()
    cols = np.array([(pi @ f).flat() for f in H.basis], dtype=np.int64).T
    c = ef.solve(cols, target, p)
    if c is None:
        raise RuntimeError("projective summand does not split")
    return Mmin, pi, H.combo(c)


def is_projective(M: Rep) -> bool:
    return strip_projective(M)[0].dim == 0


# -- Nakayama functor


def presentation(M: Rep):
    """Minimal projective presentation as generator data.

    Returns ``(gens0, gens1, lam)`` where ``gens0``/``gens1`` list the vertices of
    the summands of P_0 and P_1 and ``lam[l][r]`` is the algebra element in
    e_{u_l} A e_{w_r} giving the component P_{w_r} -> P_{u_l}.
    """
    A = M.algebra
    P0, epi, g0 = projective_cover(M)
    K = kernel_sub(epi)
    g1 = top_generators(K.sub)
    u = [j for j, _ in g0]
    w = [j for j, _ in g1]
    lam = [[np.zeros(A.dim, dtype=np.int64) for _ in w] for _ in u]
    for r, (wr, v) in enumerate(g1):
        # element of P0 at vertex wr
        x = ef.matmul(K.inclusion.blocks[wr], v.reshape(-1, 1), A.p).reshape(-1)
        off = 0
        for l, ul in enumerate(u):
            paths = A.paths_between(ul, wr)
            seg = x[off:off + len(paths)]
            for k, b in enumerate(paths):
                lam[l][r][b] = seg[k]
            off += len(paths)
    return u, w, lam


def nakayama(M: Rep) -> Rep:
    A = M.algebra
    p = A.p
    if M.dim == 0:
        return zero_rep(A)
    u, w, lam = presentation(M)
    I0, _, _ = direct_sum([inj_rep(A, j) for j in u], A)
    if not w:
        return I0
    I1, _, _ = direct_sum([inj_rep(A, j) for j in w], A)
    blocks = []
    for j in range(A.n):
        rows_u = [A.paths_between(j, ul) for ul in u]
        cols_w = [A.paths_between(j, wr) for wr in w]
        blk = _z(I0.dims[j], I1.dims[j])
        ro = 0
        for l, ys in enumerate(rows_u):
            co = 0
            for r, xs in enumerate(cols_w):
                if lam[l][r].any():
                    for a, y in enumerate(ys):
                        ey = np.zeros(A.dim, dtype=np.int64)
                        ey[y] = 1
                        prod = A.mul(ey, lam[l][r])
                        for b, x in enumerate(xs):
                            blk[ro + a, co + b] = prod[x]
                co += len(xs)
            ro += len(ys)
        blocks.append(blk)
    f = ModMap(I1, I0, blocks)
    return cokernel(f)[0]


# -- iso and decomposition


def _rng(seed):
    return np.random.default_rng(seed)


def _indecomposable_iso(X: Rep, Y: Rep) -> Optional[ModMap]:
    """Isomorphism between modules with local endomorphism rings, or None."""
    if X.dims != Y.dims:
        return None
    if X.dim == 0:
        return ModMap.zero(X, Y)
    H, G = hom_space(X, Y), hom_space(Y, X)
    for f in H.basis:
        if f.is_iso():
            return f
    for f in H.basis:
        fm = f.matrix()
        for g in G.basis:
            if ef.rank(ef.matmul(g.matrix(), fm, X.p), X.p) == X.dim:
                return f
    return None


def is_isomorphic(M: Rep, N: Rep, seed: int = 0) -> Optional[ModMap]:
    """An isomorphism M -> N, or None when none exists."""
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules over different algebras")
    if M.dims != N.dims:
        return None
    if M.dim == 0:
        return ModMap.zero(M, N)
    H = hom_space(M, N)
    if H.dim != hom_space(M, M).dim or H.dim != hom_space(N, N).dim:
        return None
    for f in H.basis:
        if f.is_iso():
            return f
    rng = _rng(seed)
    for _ in range(24):
        f = H.combo(rng.integers(0, M.p, H.dim))
        if f.is_iso():
            return f
    # exact fallback: compare indecomposable summands
    dm = decompose_full(M, seed)
    dn = decompose_full(N, seed)
    if len(dm) != len(dn):
        return None
    used = [False] * len(dn)
    total = ModMap.zero(M, N)
    for X, ix, px in dm:
        for k, (Y, iy, py) in enumerate(dn):
            if used[k]:
                continue
            g = _indecomposable_iso(X, Y)
            if g is not None:
                used[k] = True
                total = total + (iy @ g @ px)
                break
        else:
            return None
    return total if total.is_iso() else None


def _split_once(M: Rep, seed: int, tries: int = 64):
    """Find a nontrivial decomposition M = K + I, or None if End(M) is local."""
    p = M.p
    E = end_algebra(M)
    if E.is_local():
        return None
    H = hom_space(M, M)
    rng = _rng(seed)
    candidates = list(H.basis)
    for k in range(tries):
        if k < len(candidates):
            f = candidates[k]
        else:
            f = H.combo(rng.integers(0, p, H.dim))
        x = f.matrix()
        mp = structure.min_poly(x, p)
        facs = structure.factor_poly(mp, p)
        if len(facs) < 2:
            continue
        f1, k1 = facs[0]
        y = structure.poly_eval_matrix(f1, x, p)
        y = ef.mat_pow(y, k1, p)
        ym = ModMap.from_matrix(M, M, y)
        return kernel_sub(ym), image_sub(ym)
    raise DecompositionInconclusive(f"no splitting element found for module with dims {M.dims}")


def decompose_full(M: Rep, seed: int = 0) -> list:
    """Indecomposable summands as ``(X, inclusion, projection)`` triples."""
    p = M.p
    if M.dim == 0:
        return []
    parts = _split_once(M, seed)
    if parts is None:
        return [(M, ModMap.identity(M), ModMap.identity(M))]
    K, I = parts
    blocks_inv = []
    for j in range(M.algebra.n):
        B = np.concatenate([K.bases[j], I.bases[j]]).T  # columns: basis of K then I
        inv = ef.inverse(B, p) if B.size else _z(0, 0)
        if inv is None:
            raise RuntimeError("Fitting decomposition failed")
        blocks_inv.append(inv)
    pk = ModMap(M, K.sub, [blocks_inv[j][:K.bases[j].shape[0]] for j in range(M.algebra.n)])
    pi = ModMap(M, I.sub, [blocks_inv[j][K.bases[j].shape[0]:] for j in range(M.algebra.n)])
    out = []
    for W, incl, proj in ((K.sub, K.inclusion, pk), (I.sub, I.inclusion, pi)):
        for X, ix, px in decompose_full(W, seed + 1):
            out.append((X, incl @ ix, px @ proj))
    return out


def decompose(M: Rep, seed: int = 0) -> list:
    """Indecomposable summands grouped up to isomorphism: ``[(X, multiplicity)]``."""
    classes = []
    for X, _, _ in decompose_full(M, seed):
        for c in classes:
            if _indecomposable_iso(c[0], X) is not None:
                c[1] += 1
                break
        else:
            classes.append([X, 1])
    return [(X, m) for X, m in classes]


def is_indecomposable(M: Rep) -> bool:
    return M.dim > 0 and end_algebra(M).is_local()


# -- trace and reject


def trace_reject(M: Rep, V, side: str = "trace") -> SubmoduleWitness:
    """Trace: submodule generated by M e_j, j not in V. Reject: smallest R with soc(M/R) avoiding V."""
    A = M.algebra
    V = set(V)
    if side == "trace":
        gens = [np.eye(M.dims[j], dtype=np.int64) if j not in V else _z(0, M.dims[j]) for j in range(A.n)]
        return SubmoduleWitness(M, closure(M, gens))
    if side == "reject":
        # m with m x = 0 for every path x ending outside V
        p = A.p
        bases = []
        for j in range(A.n):
            rows = [M.path_matrix(x) for t in range(A.n) if t not in V for x in A.paths_between(j, t)]
            rows = [r for r in rows if r.shape[0]]
            if M.dims[j] == 0:
                bases.append(_z(0, 0))
            elif rows:
                bases.append(ef.kernel(np.concatenate(rows), p))
            else:
                bases.append(np.eye(M.dims[j], dtype=np.int64))
        return SubmoduleWitness(M, bases)
    raise ValueError(f"unknown side {side!r}")


def hom_dim(M: Rep, N: Rep) -> int:
    return hom_space(M, N).dim


def random_module(A: BasicAlgebra, rng, max_gens: int = 2, max_rel: int = 2) -> Rep:
    """Quotient of a random projective sum by a random submodule."""
    k = int(rng.integers(1, max_gens + 1))
    verts = [int(rng.integers(0, A.n)) for _ in range(k)]
    P, _, _ = direct_sum([proj_rep(A, v) for v in verts], A)
    gens = []
    for _ in range(int(rng.integers(0, max_rel + 1))):
        j = int(rng.integers(0, A.n))
        if P.dims[j]:
            gens.append((j, rng.integers(0, A.p, P.dims[j])))
    sub = submodule_generated(P, gens)
    return quotient(P, sub)[0]
