"""
The stable module category of a self-injective algebra.

Objects are modules without projective summands; a morphism is a module map
modulo those factoring through a projective. Triangles are realised by
injective pushouts (cones) and projective pullbacks (cocones) and carry the
short exact sequence they come from.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import exactfield as ef
from .rep_mod import (
    ModMap,
    Rep,
    cokernel,
    cosyzygy,
    direct_sum,
    end_algebra,
    hom_space,
    injective_envelope,
    is_isomorphic,
    kernel_sub,
    nakayama,
    projective_cover,
    strip_projective,
    syzygy,
    zero_rep,
)


class ZeroModule(ValueError):
    pass


class StableHomSpace:
    """Hom(M, N) modulo maps factoring through the projective cover of N."""

    def __init__(self, M: Rep, N: Rep):
        self.M, self.N = M, N
        self.hom = H = hom_space(M, N)
        p = M.p
        if H.dim == 0:
            self.projective_subspace = ef.Subspace.zero(0, p)
            self._quot = np.zeros((0, 0), dtype=np.int64)
        else:
            P, epi, _ = projective_cover(N)
            G = hom_space(M, P)
            vecs = [H.coords(epi @ g) for g in G.basis]
            self.projective_subspace = ef.Subspace.span(np.array(vecs, dtype=np.int64).reshape(-1, H.dim), p, H.dim)
            self._quot = self.projective_subspace.complement()
        self.dim = self._quot.shape[0]
        self._qbasis = None

    @property
    def quotient_basis(self) -> list:
        if self._qbasis is None:
            self._qbasis = [self.hom.combo(v) for v in self._quot]
        return self._qbasis

    def is_zero_map(self, f: ModMap) -> bool:
        if self.hom.dim == 0:
            return True
        return self.projective_subspace.contains(self.hom.coords(f))

    def class_coords(self, f: ModMap) -> np.ndarray:
        """Coordinates of the class of ``f`` in the quotient basis."""
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        red = self.projective_subspace.reduce(self.hom.coords(f))[0]
        free = [int(np.flatnonzero(r)[0]) for r in self._quot]
        return red[free]


def stable_hom(M: Rep, N: Rep) -> StableHomSpace:
    key = ("sthom", id(N))
    hit = M._cache.get(key)
    if hit is not None and hit[0] is N:
        return hit[1]
    S = StableHomSpace(M, N)
    M._cache[key] = (N, S)
    return S


def stable_hom_dim(M: Rep, N: Rep) -> int:
    return stable_hom(M, N).dim


@dataclass
class StableMap:
    representative: ModMap
    space: Optional[StableHomSpace] = None

    def __post_init__(self):
        if self.space is None:
            self.space = stable_hom(self.representative.source, self.representative.target)

    def is_zero(self) -> bool:
        return self.space.is_zero_map(self.representative)


def _rep(f) -> ModMap:
    return f.representative if isinstance(f, StableMap) else f


def stable_end_algebra(M: Rep):
    S = stable_hom(M, M)
    E = end_algebra(M)
    return E.quotient(S.projective_subspace) if E.dim else E


def is_brick(M: Rep) -> bool:
    if M.dim == 0:
        raise ZeroModule("zero module is not a brick")
    B = stable_end_algebra(M)
    return B.is_division()


def minimal(M: Rep) -> Rep:
    return strip_projective(M)[0]


def is_stably_isomorphic(M: Rep, N: Rep) -> bool:
    return is_isomorphic(minimal(M), minimal(N)) is not None


def is_stably_zero(M: Rep) -> bool:
    return minimal(M).dim == 0


# -- triangles


@dataclass
class StTriangle:
    """A -f-> B -g-> C -h-> Omega^-1 A, all objects minimal.

    ``witness`` holds the short exact sequence ``0 -> X -> Y -> Z -> 0`` of
    modules the triangle was read off from (keys ``ses``).
    """

    A: Rep
    B: Rep
    C: Rep
    f: ModMap
    g: ModMap
    h: Optional[ModMap]
    witness: dict = field(default_factory=dict)

    def composites_vanish(self) -> bool:
        ok = stable_hom(self.A, self.C).is_zero_map(self.g @ self.f)
        if self.h is not None:
            ok = ok and stable_hom(self.B, self.h.target).is_zero_map(self.h @ self.g)
        return ok

    def witness_exact(self) -> bool:
        i, q = self.witness["ses"]
        p = i.source.p
        for j in range(len(i.source.dims)):
            a, b = i.blocks[j], q.blocks[j]
            if ef.rank(a, p) != a.shape[1] or ef.rank(b, p) != b.shape[0]:
                return False
            if ef.matmul(b, a, p).any():
                return False
            if a.shape[1] + b.shape[0] != a.shape[0]:
                return False
        return True


def cone(f) -> StTriangle:
    """Triangle A -> B -> C -> Omega^-1 A with C = coker(A -> I(A) + B)."""
    f = _rep(f)
    A, B = f.source, f.target
    I, iota = injective_envelope(A)
    S, (inI, inB), (prI, prB) = direct_sum([I, B])
    emb = inI @ iota - inB @ f
    C0, q = cokernel(emb)
    Cmin, pc, sc = strip_projective(C0)
    g = pc @ q @ inB
    sh, pi_sh = cokernel(iota)
    # C0 -> I/A induced by the projection onto I
    hq = _descend(q, pi_sh @ prI)
    h = hq @ sc
    return StTriangle(A, B, Cmin, f, g, h, {"ses": (emb, q), "middle": S})


def _descend(q: ModMap, g: ModMap) -> ModMap:
    """The map ``h`` with ``h o q = g`` for a surjection ``q``."""
    p = q.source.p
    blocks = []
    for j in range(len(q.source.dims)):
        Q = q.blocks[j]
        if Q.shape[0] == 0:
            blocks.append(np.zeros((g.target.dims[j], 0), dtype=np.int64))
            continue
        # h Q = G  <=>  Q^T h^T = G^T
        sol = ef.solve_many(Q.T.copy(), g.blocks[j].T.copy(), p)
        if sol is None:
            raise ValueError("map does not descend along the quotient")
        blocks.append(sol.T.copy())
    return ModMap(q.target, g.target, blocks)


def _lift(q: ModMap, g: ModMap) -> ModMap:
    """A linear (vertexwise) lift ``s`` with ``q o s = g``; a module map only when one exists."""
    p = q.source.p
    blocks = []
    for j in range(len(q.source.dims)):
        sol = ef.solve_many(q.blocks[j], g.blocks[j], p)
        if sol is None:
            raise ValueError("no vertexwise lift")
        blocks.append(sol)
    return ModMap(g.source, q.source, blocks)


def cocone(f) -> StTriangle:
    """Triangle W -> A -> B -> Omega^-1 W with W = ker(A + P(B) -> B).

    The returned triangle has ``A`` = W, ``B`` = A, ``C`` = B, ``f`` = W -> A,
    ``g`` = f and ``h`` = None; :func:`cocone_connecting` computes the third map.
    """
    f = _rep(f)
    A, B = f.source, f.target
    P, epi, _ = projective_cover(B)
    S, (inA, inP), (prA, prP) = direct_sum([A, P])
    q = f @ prA + epi @ prP
    K = kernel_sub(q)
    Wmin, pw, sw = strip_projective(K.sub)
    u = prA @ K.inclusion @ sw
    return StTriangle(Wmin, A, B, u, f, None,
                      {"ses": (K.inclusion, q), "middle": S, "strip": (pw, sw), "kernel": K})


def cocone_connecting(t: StTriangle) -> ModMap:
    """Connecting map B -> Omega^-1 W of a cocone triangle, read off its sequence."""
    i, q = t.witness["ses"]
    pw, _ = t.witness["strip"]
    W0 = i.source
    I, iota = injective_envelope(W0)
    # extend iota along i: e o i = iota
    H = hom_space(i.target, I)
    p = W0.p
    cols = np.array([(e @ i).flat() for e in H.basis], dtype=np.int64).reshape(H.dim, -1).T
    c = ef.solve(cols, iota.flat(), p) if H.dim else None
    if c is None:
        if iota.is_zero():
            e = ModMap.zero(i.target, I)
        else:
            raise RuntimeError("injective extension failed")
    else:
        e = H.combo(c)
    sh, pi_sh = cokernel(iota)
    s = _lift(q, ModMap.identity(q.target))
    h = pi_sh @ e @ s
    return h


def serre(M: Rep) -> Rep:
    if M.dim == 0:
        return M
    return minimal(nakayama(syzygy(M)))


def shift(M: Rep) -> Rep:
    """Suspension M[1] = Omega^-1 M."""
    return minimal(cosyzygy(M)) if M.dim else M


def unshift(M: Rep) -> Rep:
    """Desuspension M[-1] = Omega M."""
    return minimal(syzygy(M)) if M.dim else M
