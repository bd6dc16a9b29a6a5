"""
Simple-minded systems: filtration stripping, torsion-pair triangles,
minimal approximations and left/right mutation.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import exactfield as ef
from . import structure
from .rep_mod import (
    ModMap,
    Rep,
    cosyzygy,
    end_algebra,
    hom_space,
    is_isomorphic,
    kernel_sub,
    nakayama,
    simple,
    syzygy,
    trace_reject,
)
from .stable_cat import (
    StTriangle,
    cocone,
    cone,
    is_brick,
    minimal,
    stable_hom,
)


class NotABrick(ValueError):
    def __init__(self, i: int):
        self.index = i
        super().__init__(f"member {i} is not a brick")


class NotOrthogonal(ValueError):
    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"members {i} and {j} are not orthogonal")


class CapExceeded(Exception):
    def __init__(self, depth: int):
        self.depth = depth
        super().__init__(f"cap exceeded at depth {depth}")


class MinimalizationInconclusive(Exception):
    pass


REACHED0 = "Reached0"
STUCK = "Stuck"
CAP_EXCEEDED = "CapExceeded"

SMS = "SMS"
NOT_SMS = "NotSMS"
INCONCLUSIVE = "Inconclusive"


@dataclass
class SmsCandidate:
    members: list
    orthogonality_certificate: np.ndarray
    brick_certificates: list

    def __len__(self):
        return len(self.members)


def verify_orthogonal_bricks(members: Sequence[Rep]) -> SmsCandidate:
    members = [minimal(M) for M in members]
    n = len(members)
    for i, M in enumerate(members):
        if M.dim == 0 or not is_brick(M):
            raise NotABrick(i)
    cert = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            cert[i, j] = stable_hom(members[i], members[j]).dim
            if i != j and cert[i, j]:
                raise NotOrthogonal(i, j)
    return SmsCandidate(members, cert, [int(cert[i, i]) for i in range(n)])


def _as_candidate(S) -> SmsCandidate:
    if isinstance(S, SmsCandidate):
        return S
    return verify_orthogonal_bricks(S)


# -- stripping


@dataclass
class StripTrace:
    steps: list
    remainder: Rep
    status: str

    @property
    def length(self) -> int:
        return len(self.steps)


def strip(M: Rep, S, cap: Optional[int] = None) -> StripTrace:
    """Greedy S-filtration of M from the top, one cocone per step."""
    members = S.members if isinstance(S, SmsCandidate) else list(S)
    R = minimal(M)
    if cap is None:
        cap = 4 * max(M.dim, 1)
    steps = []
    while R.dim:
        if len(steps) >= cap:
            return StripTrace(steps, R, CAP_EXCEEDED)
        for i, X in enumerate(members):
            st = stable_hom(R, X)
            if st.dim:
                f = st.quotient_basis[0]
                t = cocone(f)
                steps.append((i, f, t))
                R = t.A
                break
        else:
            return StripTrace(steps, R, STUCK)
    return StripTrace(steps, R, REACHED0)


def s_length(M: Rep, S, cap: Optional[int] = None) -> Optional[int]:
    t = strip(M, S, cap)
    return t.length if t.status == REACHED0 else None


# -- minimal approximations


def _nilpotent(x: np.ndarray, p: int) -> bool:
    n = x.shape[0]
    return not ef.mat_pow(x, n, p).any() if n else True


def _find_non_nilpotent(M: Rep, ideal: np.ndarray, seed: int) -> Optional[np.ndarray]:
    """Global matrix of a non-nilpotent element of a one-sided ideal of End(M), or None.

    ``ideal`` holds coordinate rows (in the basis of hom_space(M, M)).
    """
    if ideal.shape[0] == 0:
        return None
    H = hom_space(M, M)
    E = end_algebra(M)
    rad = E.radical()
    p = M.p
    if not rad.reduce(ideal).any():
        return None  # nil one-sided ideal sits inside the radical
    rng = np.random.default_rng(seed)
    cands = list(ideal)
    for k in range(200):
        c = cands[k] if k < len(cands) else rng.integers(0, p, ideal.shape[0]) @ ideal % p
        x = H.combo(c).matrix()
        if not _nilpotent(x, p):
            return x
    raise MinimalizationInconclusive("ideal outside the radical but no non-nilpotent element found")


def _fitting(M: Rep, x: np.ndarray):
    p = M.p
    y = ef.mat_pow(x, max(M.dim, 1), p)
    ym = ModMap.from_matrix(M, M, y)
    from .rep_mod import image_sub

    return kernel_sub(ym), image_sub(ym)


def right_minimalize(u: ModMap, seed: int = 0) -> ModMap:
    """Drop summands of the source on which ``u`` vanishes stably."""
    while u.source.dim:
        C, M = u.source, u.target
        H = hom_space(C, C)
        st = stable_hom(C, M)
        p = C.p
        if H.dim == 0:
            break
        rows = np.array([st.class_coords(u @ phi) for phi in H.basis], dtype=np.int64).reshape(H.dim, st.dim)
        lk = ef.left_kernel(rows, p) if st.dim else np.eye(H.dim, dtype=np.int64)
        x = _find_non_nilpotent(C, lk, seed)
        if x is None:
            break
        K, _ = _fitting(C, x)
        Kmin_in = K.inclusion
        u = u @ Kmin_in
    src = u.source
    Cm, pc, sc = _strip(src)
    return u @ sc


def left_minimalize(v: ModMap, seed: int = 0) -> ModMap:
    """Drop summands of the target that ``v`` misses stably."""
    while v.target.dim:
        M, D = v.source, v.target
        H = hom_space(D, D)
        st = stable_hom(M, D)
        p = D.p
        if H.dim == 0:
            break
        rows = np.array([st.class_coords(phi @ v) for phi in H.basis], dtype=np.int64).reshape(H.dim, st.dim)
        lk = ef.left_kernel(rows, p) if st.dim else np.eye(H.dim, dtype=np.int64)
        x = _find_non_nilpotent(D, lk, seed)
        if x is None:
            break
        K, I = _fitting(D, x)
        # v lands in ker(phi^N) stably; project along im(phi^N)
        proj = _projection_onto(D, K, I)
        v = proj @ v
    Dm, pd, sd = _strip(v.target)
    return pd @ v


def _strip(M: Rep):
    from .rep_mod import strip_projective

    return strip_projective(M)


def _projection_onto(M: Rep, K, I) -> ModMap:
    p = M.p
    blocks = []
    for j in range(M.algebra.n):
        B = np.concatenate([K.bases[j], I.bases[j]]).T
        inv = ef.inverse(B, p) if B.size else np.zeros((0, 0), dtype=np.int64)
        blocks.append(inv[:K.bases[j].shape[0]])
    return ModMap(M, K.sub, blocks)


# -- torsion triangles

LEFT = "Left"
RIGHT = "Right"


@dataclass
class TorsionTriangleResult:
    """Parts of a torsion-pair triangle ``first -> M -> second ->``.

    Left: first in the left perpendicular of X, second in F(X).
    Right: first in F(X), second in the right perpendicular of X.
    """

    side: str
    M: Rep
    first: Rep
    second: Rep
    first_map: ModMap  # first -> M
    second_map: ModMap  # M -> second
    triangle: Optional[StTriangle]
    minimal: bool = True
    depth: int = 0
    log: list = field(default_factory=list)


def _left(M: Rep, X: Sequence[Rep], cap: int, depth: int, log: list):
    if depth > cap:
        raise CapExceeded(depth)
    for i, Xi in enumerate(X):
        st = stable_hom(M, Xi)
        if st.dim:
            f = st.quotient_basis[0]
            t = cocone(f)
            log.append(("cocone", i, M.dims, t.A.dims))
            Y, y = t.A, t.f
            uY = _left(Y, X, cap, depth + 1, log)
            return y @ uY
    return ModMap.identity(M)


def _right(M: Rep, X: Sequence[Rep], cap: int, depth: int, log: list):
    if depth > cap:
        raise CapExceeded(depth)
    for i, Xi in enumerate(X):
        st = stable_hom(Xi, M)
        if st.dim:
            f = st.quotient_basis[0]
            t = cone(f)
            log.append(("cone", i, M.dims, t.C.dims))
            Y, y = t.C, t.g
            vY = _right(Y, X, cap, depth + 1, log)
            return vY @ y
    return ModMap.identity(M)


def torsion_triangle(M: Rep, X, side: str = LEFT, cap: Optional[int] = None, seed: int = 0) -> TorsionTriangleResult:
    members = X.members if isinstance(X, SmsCandidate) else [minimal(x) for x in X]
    M = minimal(M)
    if cap is None:
        cap = 4 * max(M.dim, 1)
    log: list = []
    if side == LEFT:
        u = _left(M, members, cap, 0, log)
        u = right_minimalize(u, seed)
        t = cone(u)
        return TorsionTriangleResult(LEFT, M, u.source, t.C, u, t.g, t, True, len(log), log)
    if side == RIGHT:
        v = _right(M, members, cap, 0, log)
        v = left_minimalize(v, seed)
        t = cocone(v)
        return TorsionTriangleResult(RIGHT, M, t.A, v.target, t.f, v, t, True, len(log), log)
    raise ValueError(f"unknown side {side!r}")


def minimalize_triangle(t: TorsionTriangleResult, seed: int = 0) -> TorsionTriangleResult:
    """Cancel summands of the approximation that carry no part of the map."""
    if t.side == LEFT:
        u = right_minimalize(t.first_map, seed)
        tri = cone(u)
        return TorsionTriangleResult(LEFT, t.M, u.source, tri.C, u, tri.g, tri, True, t.depth, t.log)
    v = left_minimalize(t.second_map, seed)
    tri = cocone(v)
    return TorsionTriangleResult(RIGHT, t.M, tri.A, v.target, tri.f, v, tri, True, t.depth, t.log)


def pad_triangle(t: TorsionTriangleResult, U: Rep) -> TorsionTriangleResult:
    """Add U to the approximation with zero map (a split, non-minimal triangle)."""
    from .rep_mod import direct_sum

    if t.side == LEFT:
        S, (i1, i2), (p1, p2) = direct_sum([t.first, U])
        u = t.first_map @ p1
        tri = cone(u)
        return TorsionTriangleResult(LEFT, t.M, S, tri.C, u, tri.g, tri, False, t.depth, t.log)
    S, (i1, i2), (p1, p2) = direct_sum([t.second, U])
    v = i1 @ t.second_map
    tri = cocone(v)
    return TorsionTriangleResult(RIGHT, t.M, tri.A, S, tri.f, v, tri, False, t.depth, t.log)


# -- mutation


def _member_index(members: Sequence[Rep], X) -> list:
    idx = []
    for x in X:
        if isinstance(x, (int, np.integer)):
            idx.append(int(x))
            continue
        xm = minimal(x)
        for k, m in enumerate(members):
            if is_isomorphic(xm, m) is not None:
                idx.append(k)
                break
        else:
            raise ValueError("mutation subset is not contained in the system")
    return sorted(set(idx))


def alpha(M: Rep, X, cap: Optional[int] = None, seed: int = 0) -> Rep:
    return torsion_triangle(syzygy(M), X, LEFT, cap, seed).first


def beta(M: Rep, X, cap: Optional[int] = None, seed: int = 0) -> Rep:
    return torsion_triangle(cosyzygy(M), X, RIGHT, cap, seed).second


def _mutate(S, X, which: str, cap, seed, check: bool):
    cand = _as_candidate(S)
    members = cand.members
    idx = _member_index(members, X)
    sub = [members[k] for k in idx]
    if not nu_shift_stable(sub):
        warnings.warn("mutation subset is not Nakayama-stable; output is unverified", RuntimeWarning)
    out, triangles = [], {}
    for k, M in enumerate(members):
        if k in idx:
            out.append(M)
            continue
        if which == "+":
            tt = torsion_triangle(syzygy(M), sub, LEFT, cap, seed)
            out.append(tt.first)
        else:
            tt = torsion_triangle(cosyzygy(M), sub, RIGHT, cap, seed)
            out.append(tt.second)
        triangles[k] = tt
    res = verify_orthogonal_bricks(out) if check else SmsCandidate(out, np.zeros((0, 0)), [])
    res.triangles = triangles
    return res


def mu_plus(S, X, cap: Optional[int] = None, seed: int = 0, check: bool = True) -> SmsCandidate:
    return _mutate(S, X, "+", cap, seed, check)


def mu_minus(S, X, cap: Optional[int] = None, seed: int = 0, check: bool = True) -> SmsCandidate:
    return _mutate(S, X, "-", cap, seed, check)


def okuyama_trace(Sj: Rep, U: Sequence[int]) -> Rep:
    """Largest submodule of Omega(S_j) whose top avoids the vertices in U."""
    O = syzygy(Sj)
    return minimal(trace_reject(O, U, "trace").sub)


def okuyama_reject(Sj: Rep, U: Sequence[int]) -> Rep:
    """Dual fast path: Omega^-1(S_j) modulo its reject with respect to U."""
    from .rep_mod import quotient

    C = cosyzygy(Sj)
    R = trace_reject(C, U, "reject")
    return minimal(quotient(C, R)[0])


def match_up_to_iso(A: Sequence[Rep], B: Sequence[Rep]) -> Optional[list]:
    """Bijection between two lists up to (stable) isomorphism of minimal reps."""
    if len(A) != len(B):
        return None
    used = [False] * len(B)
    perm = []
    for a in A:
        for k, b in enumerate(B):
            if not used[k] and is_isomorphic(a, b) is not None:
                used[k] = True
                perm.append(k)
                break
        else:
            return None
    return perm


def nu_shift_stable(members) -> bool:
    members = members.members if isinstance(members, SmsCandidate) else [minimal(m) for m in members]
    images = [minimal(nakayama(m)) for m in members]
    return match_up_to_iso(images, members) is not None


def is_sms(candidate, cap: Optional[int] = None) -> dict:
    """Strip every simple module over the candidate; verdict plus per-simple traces."""
    try:
        cand = _as_candidate(candidate)
    except (NotABrick, NotOrthogonal) as e:
        return {"verdict": NOT_SMS, "reason": str(e), "traces": []}
    A = cand.members[0].algebra
    traces = []
    verdict = SMS
    for i in range(A.n):
        t = strip(simple(A, i), cand, cap if cap is not None else 64)
        traces.append(t)
        if t.status == STUCK:
            verdict = NOT_SMS
        elif t.status == CAP_EXCEEDED and verdict == SMS:
            verdict = INCONCLUSIVE
    return {"verdict": verdict, "traces": traces, "candidate": cand}
