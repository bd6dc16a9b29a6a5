"""
Two-term complexes of projectives, homotopy Hom, tilting checks, and the
two constructions of the Okuyama complex.

A complex ``P^0 -> P^1`` is stored as vertex lists for the two terms and the
differential. A map ``sum P_{a_r} -> sum P_{b_l}`` is a tensor ``lam`` of shape
``(len(b), len(a), dim A)`` where ``lam[l, r]`` is the element of
``e_{b_l} A e_{a_r}`` that the generator of the r-th summand is sent to
(left multiplication). Composition is ``(mu o lam)[m, r] = sum_l mu[m, l] lam[l, r]``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import exactfield as ef
from . import structure
from .algebra_core import BasicAlgebra, self_injective_check


def _zeros(A: BasicAlgebra, nt: int, ns: int) -> np.ndarray:
    return np.zeros((nt, ns, A.dim), dtype=np.int64)


def compose(A: BasicAlgebra, mu: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Composite of two maps in tensor form."""
    if mu.shape[1] == 0 or mu.shape[0] == 0 or lam.shape[1] == 0:
        return _zeros(A, mu.shape[0], lam.shape[1])
    return np.einsum("mli,lrj,ijk->mrk", mu, lam, A.table, optimize=True) % A.p


class TwoTermComplex:
    """Complex ``deg0 -> deg1`` of projective sums; deg0 sits in degree 0.

    Args:
        A: the algebra.
        deg0, deg1: vertex index per summand.
        d: differential tensor, shape (len(deg1), len(deg0), dim A).
    """

    def __init__(self, A: BasicAlgebra, deg0: Sequence[int], deg1: Sequence[int], d: Optional[np.ndarray] = None):
        self.A = A
        self.deg0 = [int(v) for v in deg0]
        self.deg1 = [int(v) for v in deg1]
        self._mats = None
        self._homs = {}
        if d is None:
            d = _zeros(A, len(self.deg1), len(self.deg0))
        self.d = np.asarray(d, dtype=np.int64).reshape(len(self.deg1), len(self.deg0), A.dim) % A.p
        for l, b in enumerate(self.deg1):
            for r, a in enumerate(self.deg0):
                allowed = set(A.paths_between(b, a))
                bad = [k for k in np.flatnonzero(self.d[l, r]) if k not in allowed]
                if bad:
                    raise ValueError("differential entry outside e_b A e_a")

    @property
    def mult0(self) -> list:
        return [self.deg0.count(i) for i in range(self.A.n)]

    @property
    def mult1(self) -> list:
        return [self.deg1.count(i) for i in range(self.A.n)]

    def k0_class(self) -> tuple:
        return tuple(a - b for a, b in zip(self.mult0, self.mult1))

    def __repr__(self):
        V = self.A.pres.vertices
        return f"TwoTermComplex({[V[i] for i in self.deg0]} -> {[V[i] for i in self.deg1]})"


def stalk(A: BasicAlgebra, verts: Sequence[int], degree: int = 0) -> TwoTermComplex:
    return TwoTermComplex(A, verts, []) if degree == 0 else TwoTermComplex(A, [], verts)


def direct_sum(cs: Sequence[TwoTermComplex]) -> TwoTermComplex:
    A = cs[0].A
    deg0 = [v for c in cs for v in c.deg0]
    deg1 = [v for c in cs for v in c.deg1]
    d = _zeros(A, len(deg1), len(deg0))
    r = c0 = 0
    for c in cs:
        d[r:r + len(c.deg1), c0:c0 + len(c.deg0)] = c.d
        r += len(c.deg1)
        c0 += len(c.deg0)
    return TwoTermComplex(A, deg0, deg1, d)


class _Space:
    """The projective sum ``sum_l P_{v_l}`` with its path basis.

    Row ``off[l] + k`` is the k-th path starting at ``v_l``. A map from a
    projective sum is stored by its generator images ``G`` (one column per
    source summand); ``R[x]`` is the right action of the basis path x.
    """

    def __init__(self, A: BasicAlgebra, verts: Sequence[int]):
        self.verts = list(verts)
        self.paths = [A.paths_from(v) for v in self.verts]
        self.off = np.concatenate([[0], np.cumsum([len(ps) for ps in self.paths])]).astype(int)
        self.dim = int(self.off[-1])
        self.gen_rows = [int(self.off[l]) + ps.index(A.idempotents[v])
                         for l, (v, ps) in enumerate(zip(self.verts, self.paths))]
        self.R = np.zeros((A.dim, self.dim, self.dim), dtype=np.int64)
        for l, ps in enumerate(self.paths):
            a, b = self.off[l], self.off[l + 1]
            # table[z, x, y] = coefficient of y in z x
            self.R[:, a:b, a:b] = A.table[np.ix_(ps, range(A.dim), ps)].transpose(1, 2, 0)

    def identity(self) -> np.ndarray:
        G = np.zeros((self.dim, len(self.verts)), dtype=np.int64)
        G[self.gen_rows, range(len(self.verts))] = 1
        return G


def _space(A: BasicAlgebra, verts: Sequence[int]) -> _Space:
    cache = A.__dict__.setdefault("_proj_spaces", {})
    key = tuple(int(v) for v in verts)
    if key not in cache:
        cache[key] = _Space(A, key)
    return cache[key]


class _HomSlots:
    """Coordinates of Hom(src, tgt): entries of G in e_{b_l} A e_{a_r}."""

    def __init__(self, A: BasicAlgebra, src: _Space, tgt: _Space):
        rows, cols, paths = [], [], []
        for r, a in enumerate(src.verts):
            for l, b in enumerate(tgt.verts):
                for k, x in enumerate(tgt.paths[l]):
                    if A.tgt[x] == a:
                        rows.append(int(tgt.off[l]) + k)
                        cols.append(r)
                        paths.append(x)
        self.A, self.src, self.tgt = A, src, tgt
        self.rows = np.array(rows, dtype=int)
        self.cols = np.array(cols, dtype=int)
        self.paths = paths
        self.n = len(rows)
        self.shape = (tgt.dim, len(src.verts))

    def to_G(self, v: np.ndarray) -> np.ndarray:
        G = np.zeros(self.shape, dtype=np.int64)
        G[self.rows, self.cols] = v
        return G

    def to_Gs(self, vs: np.ndarray) -> np.ndarray:
        Gs = np.zeros((vs.shape[0],) + self.shape, dtype=np.int64)
        Gs[:, self.rows, self.cols] = vs
        return Gs

    def vec(self, G: np.ndarray) -> np.ndarray:
        """Slot values of G (or of a stack of them)."""
        return G[..., self.rows, self.cols]


def full_matrix(A: BasicAlgebra, G: np.ndarray, src: _Space, tgt: _Space) -> np.ndarray:
    """Matrix of the module map with generator images ``G``; leading axes are a stack."""
    lead = G.shape[:-2]
    Gs = G.reshape((int(np.prod(lead, dtype=int)),) + G.shape[-2:])
    out = np.zeros((Gs.shape[0], tgt.dim, src.dim), dtype=np.int64)
    for r, xs in enumerate(src.paths):
        if not xs or tgt.dim == 0:
            continue
        # column for path x of summand r is R_x applied to the generator image
        blk = ef.batch_matmul(tgt.R[xs][None], Gs[:, None, :, r:r + 1], A.p)[..., 0]
        out[:, :, src.off[r]:src.off[r + 1]] = blk.transpose(0, 2, 1)
    return out.reshape(lead + out.shape[1:])


def tensor_to_G(A: BasicAlgebra, lam: np.ndarray, src: _Space, tgt: _Space) -> np.ndarray:
    G = np.zeros((tgt.dim, len(src.verts)), dtype=np.int64)
    for l, ps in enumerate(tgt.paths):
        G[tgt.off[l]:tgt.off[l + 1], :] = lam[l][:, ps].T
    return G % A.p


def G_to_tensor(A: BasicAlgebra, G: np.ndarray, src: _Space, tgt: _Space) -> np.ndarray:
    lam = _zeros(A, len(tgt.verts), len(src.verts))
    for l, ps in enumerate(tgt.paths):
        lam[l][:, ps] = G[tgt.off[l]:tgt.off[l + 1], :].T
    return lam


class _Cx:
    """Matrix data of a complex: the two spaces, the differential and its matrix."""

    def __init__(self, C: "TwoTermComplex"):
        A = C.A
        self.S0, self.S1 = _space(A, C.deg0), _space(A, C.deg1)
        self.dG = tensor_to_G(A, C.d, self.S0, self.S1)
        self.dF = full_matrix(A, self.dG, self.S0, self.S1)


def _cx(C: "TwoTermComplex") -> _Cx:
    if C._mats is None:
        C._mats = _Cx(C)
    return C._mats


def _cols(tgt: _Space, src: _Space) -> int:
    return tgt.dim * len(src.verts)


class HomotopyHom:
    """Hom(C, D[shift]) in the homotopy category, shift in {-1, 0, 1}.

    Unknowns are the stacked slot values of the component maps; ``flat``
    spans the chain maps, ``null`` the null-homotopic ones, and ``classes``
    lists coordinate vectors (at ``free``) of a basis of the quotient.
    Component maps are generator-image matrices.
    """

    def __init__(self, C: TwoTermComplex, D: TwoTermComplex, shift: int = 0):
        A = C.A
        p = A.p
        self.C, self.D, self.shift = C, D, shift
        c, dd = _cx(C), _cx(D)
        if shift == 0:
            parts = [(c.S0, dd.S0), (c.S1, dd.S1)]
        elif shift == 1:
            parts = [(c.S0, dd.S1)]
        elif shift == -1:
            parts = [(c.S1, dd.S0)]
        else:
            raise ValueError("shift must be -1, 0 or 1")
        self.spaces = parts
        self.slots = [_HomSlots(A, s, t) for s, t in parts]
        self.offsets = np.concatenate([[0], np.cumsum([sl.n for sl in self.slots])]).astype(int)
        n = int(self.offsets[-1])
        self.n_unknowns = n
        system = self._constraint_matrix()
        if n == 0:
            self.flat = np.zeros((0, 0), dtype=np.int64)
            self.free = []
        elif system.shape[0] == 0:
            self.flat = np.eye(n, dtype=np.int64)
            self.free = list(range(n))
        else:
            self.flat = ef.kernel(system, p)
            self.free = ef.free_columns(system, p)
        self.n_chain = self.flat.shape[0]
        nulls = self._null_vectors()
        if nulls.shape[0]:
            self.null = ef.Subspace.span(nulls[:, self.free], p, self.n_chain)
        else:
            self.null = ef.Subspace.zero(self.n_chain, p)
        self.classes = self.null.complement()
        self.dim = self.classes.shape[0]
        self._class_free = [int(np.flatnonzero(r)[0]) for r in self.classes]

    def _unit_Gs(self, k: int) -> np.ndarray:
        sl = self.slots[k]
        return sl.to_Gs(np.eye(sl.n, dtype=np.int64))

    def _constraint_matrix(self) -> np.ndarray:
        A, p = self.C.A, self.C.A.p
        c, dd = _cx(self.C), _cx(self.D)
        if self.shift == 1 or self.n_unknowns == 0:
            return np.zeros((0, self.n_unknowns), dtype=np.int64)
        if self.shift == 0:
            # d_D f0 - f1 d_C, as generator images of a map C0 -> D1
            U0, U1 = self._unit_Gs(0), self._unit_Gs(1)
            a = ef.batch_matmul(dd.dF[None], U0, p).reshape(len(U0), _cols(dd.S1, c.S0))
            F1 = full_matrix(A, U1, c.S1, dd.S1)
            b = ef.batch_matmul(F1, c.dG[None], p).reshape(len(U1), _cols(dd.S1, c.S0))
            rows = np.concatenate([a, (-b) % p])
            return rows.T.copy()
        U = self._unit_Gs(0)
        a = ef.batch_matmul(dd.dF[None], U, p).reshape(len(U), _cols(dd.S1, c.S1))
        F = full_matrix(A, U, c.S1, dd.S0)
        b = ef.batch_matmul(F, c.dG[None], p).reshape(len(U), _cols(dd.S0, c.S0))
        return np.concatenate([a, b], axis=1).T.copy()

    def _null_vectors(self) -> np.ndarray:
        A, p = self.C.A, self.C.A.p
        c, dd = _cx(self.C), _cx(self.D)
        n = self.n_unknowns
        if self.shift == 0:
            hs = _HomSlots(A, c.S1, dd.S0)
            if hs.n == 0:
                return np.zeros((0, n), dtype=np.int64)
            H = hs.to_Gs(np.eye(hs.n, dtype=np.int64))
            f0 = ef.batch_matmul(full_matrix(A, H, c.S1, dd.S0), c.dG[None], p)
            f1 = ef.batch_matmul(dd.dF[None], H, p)
            return np.concatenate([self.slots[0].vec(f0), self.slots[1].vec(f1)], axis=1)
        if self.shift == 1:
            out = []
            h0 = _HomSlots(A, c.S0, dd.S0)
            if h0.n:
                H = h0.to_Gs(np.eye(h0.n, dtype=np.int64))
                out.append(self.slots[0].vec(ef.batch_matmul(dd.dF[None], H, p)))
            h1 = _HomSlots(A, c.S1, dd.S1)
            if h1.n:
                H = h1.to_Gs(np.eye(h1.n, dtype=np.int64))
                F = full_matrix(A, H, c.S1, dd.S1)
                out.append(self.slots[0].vec(ef.batch_matmul(F, c.dG[None], p)))
            return np.concatenate(out) if out else np.zeros((0, n), dtype=np.int64)
        return np.zeros((0, n), dtype=np.int64)

    # -- conversions between unknown vectors and component maps

    def to_maps(self, v: np.ndarray) -> list:
        return [sl.to_G(v[self.offsets[k]:self.offsets[k + 1]]) for k, sl in enumerate(self.slots)]

    def to_vec(self, maps: Sequence[np.ndarray]) -> np.ndarray:
        if not self.slots:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([sl.vec(m) for sl, m in zip(self.slots, maps)], axis=-1) % self.C.A.p

    def coords_of_maps(self, maps) -> np.ndarray:
        v = self.to_vec(maps)
        return v[..., self.free] if self.n_chain else np.zeros(v.shape[:-1] + (0,), dtype=np.int64)

    def is_chain_map(self, maps) -> bool:
        v = self.to_vec(maps)
        if self.n_unknowns == 0:
            return True
        system = self._constraint_matrix()
        return not ef.matmul(system, v.reshape(-1, 1), self.C.A.p).any()

    def chain_map(self, coords: np.ndarray) -> list:
        v = ef.matmul(np.asarray(coords, dtype=np.int64).reshape(1, -1), self.flat, self.C.A.p)[0] \
            if self.n_chain else np.zeros(self.n_unknowns, dtype=np.int64)
        return self.to_maps(v)

    def class_coords(self, maps) -> np.ndarray:
        """Class coordinates of a chain map, or of a stack of them (leading axis)."""
        c = self.coords_of_maps(maps)
        if self.dim == 0:
            return np.zeros(c.shape[:-1] + (0,), dtype=np.int64)
        red = ef.reduce_rows(c.reshape(-1, self.n_chain), self.null.basis, self.null.pivots, self.C.A.p)
        return red[:, self._class_free].reshape(c.shape[:-1] + (self.dim,))

    def class_basis(self) -> list:
        return [self.chain_map(v) for v in self.classes]

    def class_stack(self) -> list:
        """Component maps of the class basis, stacked along a leading axis."""
        if self.dim == 0:
            return [np.zeros((0,) + sl.shape, dtype=np.int64) for sl in self.slots]
        vs = ef.matmul(self.classes, self.flat, self.C.A.p)
        return [sl.to_Gs(vs[:, self.offsets[k]:self.offsets[k + 1]]) for k, sl in enumerate(self.slots)]

    def is_null(self, maps) -> bool:
        return self.dim == 0 or not self.class_coords(maps).any()


def homotopy_hom(C: TwoTermComplex, D: TwoTermComplex, shift: int = 0) -> HomotopyHom:
    key = (id(D), shift)
    hit = C._homs.get(key)
    if hit is not None and hit[0] is D:
        return hit[1]
    H = HomotopyHom(C, D, shift)
    C._homs[key] = (D, H)
    return H


def identity_maps(C: TwoTermComplex) -> list:
    c = _cx(C)
    return [c.S0.identity(), c.S1.identity()]


def compose_chain(A: BasicAlgebra, f: list, g: list, mid: TwoTermComplex, tgt: TwoTermComplex) -> list:
    """``f o g`` for degree-0 chain maps with f: mid -> tgt.

    Either argument may be a stack along a leading axis; stacks broadcast.
    """
    m, t = _cx(mid), _cx(tgt)
    out = []
    for fk, gk, S, U in zip(f, g, (m.S0, m.S1), (t.S0, t.S1)):
        out.append(ef.batch_matmul(full_matrix(A, fk, S, U), gk, A.p))
    return out


@dataclass
class EndTable:
    """End(T) in the homotopy category.

    ``radical_part`` is the nilpotent ideal of classes of chain maps whose
    components are radical maps between projectives; it lies in the radical.
    """

    complex: TwoTermComplex
    hom: HomotopyHom
    algebra: structure.FDAlgebra
    radical_part: Optional[ef.Subspace] = None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def is_associative(self) -> bool:
        return self.algebra.check_associative()

    def n_summand_classes(self) -> int:
        """Number of isomorphism classes of indecomposable summands."""
        if self.dim == 0:
            return 0
        E = self.algebra
        if self.radical_part is not None and self.radical_part.dim:
            E = E.quotient(self.radical_part)
        return E.semisimple_quotient().n_simple_components()


def end_table(T: TwoTermComplex) -> EndTable:
    A = T.A
    H = homotopy_hom(T, T, 0)
    d = H.dim
    if d == 0:
        return EndTable(T, H, structure.FDAlgebra(np.zeros((0, 0, 0), dtype=np.int64), A.p))
    B = H.class_stack()
    prods = compose_chain(A, [b[:, None] for b in B], [b[None] for b in B], T, T)
    table = H.class_coords(prods)
    one = H.class_coords(identity_maps(T))
    return EndTable(T, H, structure.FDAlgebra(table, A.p, one), _radical_part(H))


def _radical_part(H: HomotopyHom) -> ef.Subspace:
    A, p = H.C.A, H.C.A.p
    idem = set(A.idempotents)
    cols = [int(H.offsets[k]) + j for k, sl in enumerate(H.slots) for j, x in enumerate(sl.paths) if x in idem]
    if H.n_chain == 0:
        return ef.Subspace.zero(H.dim, p)
    # chain maps (in flat coordinates) vanishing on all idempotent slots
    vals = H.flat[:, cols] if cols else np.zeros((H.n_chain, 0), dtype=np.int64)
    rad_chain = ef.left_kernel(vals, p) if cols else np.eye(H.n_chain, dtype=np.int64)
    if rad_chain.shape[0] == 0:
        return ef.Subspace.zero(H.dim, p)
    red = ef.reduce_rows(rad_chain, H.null.basis, H.null.pivots, p)[:, H._class_free]
    return ef.Subspace.span(red, p, H.dim)


# -- homotopy isomorphism


def homotopy_iso(C: TwoTermComplex, D: TwoTermComplex, seed: int = 0, tries: int = 64) -> Optional[tuple]:
    """Return ``(f, g)`` chain maps with g f ~ id and f g ~ id, or None if none was found.

    A None answer after the necessary dimension checks pass is a search
    failure, not a proof of non-isomorphism.
    """
    A = C.A
    p = A.p
    if C.k0_class() != D.k0_class():
        return None
    HCD, HDC = homotopy_hom(C, D), homotopy_hom(D, C)
    HCC, HDD = homotopy_hom(C, C), homotopy_hom(D, D)
    if not (HCD.dim == HDC.dim == HCC.dim == HDD.dim):
        return None
    if HCC.dim == 0:
        return HCD.chain_map(np.zeros(0, dtype=np.int64)), HDC.chain_map(np.zeros(0, dtype=np.int64))
    c, dd = _cx(C), _cx(D)
    fS, gS = HCD.class_stack(), HDC.class_stack()
    gF = [full_matrix(A, g, S, U) for g, S, U in zip(gS, (dd.S0, dd.S1), (c.S0, c.S1))]
    target = np.concatenate([HCC.class_coords(identity_maps(C)), HDD.class_coords(identity_maps(D))])
    m = fS[0].shape[0]
    rng = np.random.default_rng(seed)
    for k in range(m + tries):
        coeff = np.eye(m, dtype=np.int64)[k] if k < m else rng.integers(0, p, m)
        f = [np.tensordot(coeff, fk, axes=1) % p for fk in fS]
        gf = [ef.batch_matmul(gF[j], f[j][None], p) for j in range(2)]
        fF = [full_matrix(A, f[j], S, U) for j, (S, U) in enumerate(zip((c.S0, c.S1), (dd.S0, dd.S1)))]
        fg = [ef.batch_matmul(fF[j][None], gS[j], p) for j in range(2)]
        cols = np.concatenate([HCC.class_coords(gf), HDD.class_coords(fg)], axis=1)
        sol = ef.solve(cols.T.copy(), target, p)
        if sol is not None:
            g = [np.tensordot(sol, gk, axes=1) % p for gk in gS]
            return f, g
    return None


# -- Nakayama functor on complexes


def _nakayama_element(A: BasicAlgebra, lam: np.ndarray, a: int, b: int) -> tuple:
    """Transport N applied to P_a -> P_b (given by lam) back to projectives.

    Returns ``(a', b', lam')`` with N(P_a) = I_a ~ P_a' and the transported map.
    """
    from .rep_mod import inj_rep, proj_rep

    nak = self_injective_check(A)
    inv = {s: i for i, s in enumerate(nak.permutation)}
    a2, b2 = inv[a], inv[b]
    wa, wb = nak.witnesses[a2], nak.witnesses[b2]  # P_a2 -> I_a, P_b2 -> I_b
    p = A.p
    v = a2  # vertex where the generator of P_a2 lives
    gen = np.zeros(len(A.paths_between(a2, v)), dtype=np.int64)
    gen[A.paths_between(a2, v).index(A.idempotents[v])] = 1
    x = ef.matmul(wa.blocks[v], gen.reshape(-1, 1), p).reshape(-1)  # in I_a at v
    # N(lam): I_a -> I_b, at vertex v entry [y, x] = coefficient of x in y * lam
    ys = A.paths_between(v, b)
    xs = A.paths_between(v, a)
    blk = np.zeros((len(ys), len(xs)), dtype=np.int64)
    for i, y in enumerate(ys):
        ey = np.zeros(A.dim, dtype=np.int64)
        ey[y] = 1
        prod = A.mul(ey, lam)
        for j, xx in enumerate(xs):
            blk[i, j] = prod[xx]
    yv = ef.matmul(blk, x.reshape(-1, 1), p).reshape(-1)
    winv = ef.inverse(wb.blocks[v], p)
    z = ef.matmul(winv, yv.reshape(-1, 1), p).reshape(-1)  # in P_b2 at v
    out = np.zeros(A.dim, dtype=np.int64)
    for k, path in enumerate(A.paths_between(b2, v)):
        out[path] = z[k]
    return a2, b2, out


def nakayama_complex(T: TwoTermComplex) -> TwoTermComplex:
    A = T.A
    nak = self_injective_check(A)
    inv = {s: i for i, s in enumerate(nak.permutation)}
    deg0 = [inv[a] for a in T.deg0]
    deg1 = [inv[b] for b in T.deg1]
    d = _zeros(A, len(deg1), len(deg0))
    for l, b in enumerate(T.deg1):
        for r, a in enumerate(T.deg0):
            if T.d[l, r].any():
                d[l, r] = _nakayama_element(A, T.d[l, r], a, b)[2]
    return TwoTermComplex(A, deg0, deg1, d)


# -- tilting

TILTING = "Tilting"
NOT_TILTING = "NotTilting"


def is_tilting(T: TwoTermComplex, seed: int = 0) -> dict:
    A = T.A
    h1 = homotopy_hom(T, T, 1).dim
    hm1 = homotopy_hom(T, T, -1).dim
    E = end_table(T)
    classes = E.n_summand_classes()
    cond1 = h1 == 0 and hm1 == 0
    cond2 = classes == A.n
    cond3 = homotopy_iso(nakayama_complex(T), T, seed) is not None
    verdict = TILTING if (cond1 and cond2 and cond3) else NOT_TILTING
    return {
        "verdict": verdict,
        "hom_shift_plus": h1,
        "hom_shift_minus": hm1,
        "summand_classes": classes,
        "nakayama_stable": cond3,
        "end_dim": E.dim,
        "conditions": [cond1, cond2, cond3],
    }


# -- constructions


def _nakayama_stable_vertices(A: BasicAlgebra, U: Sequence[int]) -> bool:
    nak = self_injective_check(A)
    return set(nak.permutation[u] for u in U) == set(U)


def _element_space(A: BasicAlgebra, j: int, i: int) -> np.ndarray:
    """Rows: standard coordinate vectors of the basis paths j -> i."""
    rows = np.zeros((len(A.paths_between(j, i)), A.dim), dtype=np.int64)
    for k, b in enumerate(A.paths_between(j, i)):
        rows[k, b] = 1
    return rows


def minimal_approximation(A: BasicAlgebra, i: int, U: Sequence[int]) -> list:
    """Components ``(j, lam)`` of the minimal left add(Q_U)-approximation of P_i.

    The multiplicity of P_j is dim e_j A e_i / R_j with R_j the maps that factor
    through a radical map between the complementary projectives.
    """
    p = A.p
    comp = [j for j in range(A.n) if j not in set(U)]
    out = []
    for j in comp:
        full = _element_space(A, j, i)
        if full.shape[0] == 0:
            continue
        gens = []
        for j2 in comp:
            for r in A.paths_between(j, j2):
                if r == A.idempotents[j]:
                    continue  # only radical maps P_j2 -> P_j
                er = np.zeros(A.dim, dtype=np.int64)
                er[r] = 1
                for s in A.paths_between(j2, i):
                    es = np.zeros(A.dim, dtype=np.int64)
                    es[s] = 1
                    gens.append(A.mul(er, es))
        R = ef.Subspace.span(np.array(gens, dtype=np.int64).reshape(-1, A.dim), p, A.dim)
        for row in R.complement_in(full):
            out.append((j, row))
    return out


def build_okuyama(A: BasicAlgebra, U: Sequence[int]) -> TwoTermComplex:
    """T_U: P_i -> L_i for i in U, the stalk P_i in degree 1 otherwise."""
    U = sorted(set(int(u) for u in U))
    if not _nakayama_stable_vertices(A, U):
        warnings.warn("subset is not Nakayama-stable; the complex need not be tilting", RuntimeWarning)
    parts = []
    for i in range(A.n):
        if i in U:
            comps = minimal_approximation(A, i, U)
            d = _zeros(A, len(comps), 1)
            for l, (_, lam) in enumerate(comps):
                d[l, 0] = lam
            parts.append(TwoTermComplex(A, [i], [j for j, _ in comps], d))
        else:
            parts.append(stalk(A, [i], 1))
    return direct_sum(parts)


def universal_approximation(A: BasicAlgebra, i: int, U: Sequence[int]) -> list:
    """Left add(P_V)-approximation of P_i (V the complement of U), pruned greedily.

    Starts from every basis map P_i -> P_j, j in V, and drops components that
    factor through the remaining ones.
    """
    p = A.p
    V = [j for j in range(A.n) if j not in set(U)]
    comps = []
    for j in reversed(V):
        for b in A.paths_between(j, i):
            lam = np.zeros(A.dim, dtype=np.int64)
            lam[b] = 1
            comps.append((j, lam))
    changed = True
    while changed:
        changed = False
        for k in range(len(comps)):
            j, lam = comps[k]
            others = comps[:k] + comps[k + 1:]
            gens = []
            for j2, lam2 in others:
                for r in A.paths_between(j, j2):
                    er = np.zeros(A.dim, dtype=np.int64)
                    er[r] = 1
                    gens.append(A.mul(er, lam2))
            if gens and ef.Subspace.span(np.array(gens), p, A.dim).contains(lam):
                comps = others
                changed = True
                break
    return comps


def silting_mutate_regular(A: BasicAlgebra, U: Sequence[int]) -> TwoTermComplex:
    """Mutation of the stalk complex A at the summand P_U, shifted by [-1].

    P_i for i in U is replaced by the cone of its left approximation by the
    complementary projectives; the complementary projectives are kept.
    """
    U = sorted(set(int(u) for u in U))
    kept = [j for j in range(A.n) if j not in U]
    parts = [stalk(A, [j], 1) for j in reversed(kept)]
    for i in reversed(U):
        comps = universal_approximation(A, i, U)
        d = _zeros(A, len(comps), 1)
        for l, (_, lam) in enumerate(comps):
            d[l, 0] = lam
        parts.append(TwoTermComplex(A, [i], [j for j, _ in comps], d))
    return direct_sum(parts)


def regular_complex(A: BasicAlgebra) -> TwoTermComplex:
    return stalk(A, list(range(A.n)), 0)


def nakayama_stable_subsets(A: BasicAlgebra) -> list:
    nak = self_injective_check(A)
    out = []
    for mask in range(1 << A.n):
        U = [i for i in range(A.n) if mask >> i & 1]
        if set(nak.permutation[u] for u in U) == set(U):
            out.append(U)
    return out
