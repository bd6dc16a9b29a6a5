"""
Finite-dimensional associative F_p-algebras given by structure constants.

Used for endomorphism rings (local tests, brick tests, idempotent splitting)
and for the endomorphism algebra of a two-term complex.

The radical is computed with the characteristic-p trace-form method: for a
faithful matrix representation of size n, put I_{-1} = A and

    I_i = { x in I_{i-1} : g_i(x y) = 0 for all y in A },  i = 0 .. floor(log_p n)

where g_i(x) = (Tr(x~^(p^i)) mod p^(i+1)) / p^i for an integer lift x~ of x.
The last I_i is the radical.
"""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
import sympy

from . import exactfield as ef


def _int_matpow_trace(m: np.ndarray, e: int, mod: int) -> int:
    n = m.shape[0]
    big = n * mod * mod >= 2**62
    a = (m.astype(object) if big else m.astype(np.int64)) % mod
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else (result @ base) % mod
        e >>= 1
        if e:
            base = (base @ base) % mod
    return int(sum(result[i, i] for i in range(n))) % mod


def _batch_pow_trace(ms: np.ndarray, e: int, mod: int) -> np.ndarray:
    """Traces of ``m^e mod mod`` over a stack of square matrices."""
    n = ms.shape[-1]
    if n * mod * mod >= 2**62:
        return np.array([_int_matpow_trace(m, e, mod) for m in ms], dtype=np.int64)
    exact = n * (mod - 1) ** 2 < 2**53
    dt = np.float64 if exact else np.int64
    result = None
    base = (ms % mod).astype(dt)
    while e:
        if e & 1:
            result = base if result is None else np.fmod(np.matmul(result, base), mod)
        e >>= 1
        if e:
            base = np.fmod(np.matmul(base, base), mod)
    return np.trace(result, axis1=1, axis2=2).astype(np.int64) % mod


class FDAlgebra:
    """Unital algebra with basis b_0..b_{d-1} and ``table[i, j] = coords(b_i b_j)``.

    Args:
        table: int array of shape (d, d, d).
        p: prime modulus.
        one: coordinates of the identity element.
    """

    def __init__(self, table: np.ndarray, p: int, one: Optional[np.ndarray] = None):
        self.p = p
        self.table = np.asarray(table, dtype=np.int64) % p
        self.dim = self.table.shape[0] if self.table.ndim == 3 else 0
        if self.dim == 0:
            self.table = np.zeros((0, 0, 0), dtype=np.int64)
        self.one = None if one is None else np.asarray(one, dtype=np.int64) % p
        if self.one is None and self.dim:
            self.one = self._find_one()
        self._radical = None

    # -- basic arithmetic

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        t = np.einsum("i,ijk->jk", x % self.p, self.table) % self.p
        return (y % self.p) @ t % self.p

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> x y`` acting on column coordinate vectors."""
        t = np.einsum("i,ijk->jk", x % self.p, self.table) % self.p
        return t.T.copy()

    def right_matrix(self, y: np.ndarray) -> np.ndarray:
        """Matrix of ``x -> x y`` acting on column coordinate vectors."""
        t = np.einsum("j,ijk->ik", y % self.p, self.table) % self.p
        return t.T.copy()

    def _find_one(self) -> np.ndarray:
        # e with e b_j = b_j for all j: sum_i e_i table[i, j, :] = b_j
        d, p = self.dim, self.p
        m = self.table.transpose(1, 2, 0).reshape(d * d, d)
        rhs = np.eye(d, dtype=np.int64).reshape(d * d)
        e = ef.solve(m, rhs, p)
        if e is None:
            raise ValueError("algebra has no left identity")
        return e

    def check_associative(self) -> bool:
        p = self.p
        t = self.table
        lhs = np.einsum("ijm,mkn->ijkn", t, t) % p
        rhs = np.einsum("jkm,imn->ijkn", t, t) % p
        return bool(np.array_equal(lhs, rhs))

    def power(self, x: np.ndarray, e: int) -> np.ndarray:
        result = self.one.copy()
        base = x % self.p
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- structure

    def radical(self) -> ef.Subspace:
        if self._radical is not None:
            return self._radical
        d, p = self.dim, self.p
        if d == 0:
            self._radical = ef.Subspace.zero(0, p)
            return self._radical
        # left regular representation is faithful for a unital algebra
        reps = self.table.transpose(0, 2, 1)  # reps[k] = matrix of y -> b_k y
        top = 0
        while p ** (top + 1) <= d:
            top += 1
        cur = np.eye(d, dtype=np.int64)  # rows: basis of I_{i-1} in coordinates
        chunk = max(1, 2_000_000 // (d ** 3))
        for i in range(top + 1):
            if cur.shape[0] == 0:
                break
            mod = p ** (i + 1)
            g = np.zeros((cur.shape[0], d), dtype=np.int64)
            if i == 0:
                # the plain trace form is bilinear
                traces = np.trace(reps, axis1=1, axis2=2) % p
                prods = ef.matmul(cur, self.table.reshape(d, d * d), p).reshape(-1, d)
                g = ef.matmul(prods, traces.reshape(-1, 1), p).reshape(cur.shape[0], d)
                chunk_range = []
            else:
                chunk_range = range(0, cur.shape[0], chunk)
            for lo in chunk_range:
                xs = cur[lo:lo + chunk]
                # coordinates of x_a b_b, then their regular matrices
                prods = ef.matmul(xs, self.table.reshape(d, d * d), p)
                mats = ef.matmul(prods.reshape(-1, d), reps.reshape(d, d * d), p)
                tr = _batch_pow_trace(mats.reshape(-1, d, d), p**i, mod)
                g[lo:lo + chunk] = ((tr // p**i) % p).reshape(xs.shape[0], d)
            # coefficient vectors c with c @ g = 0
            lk = ef.left_kernel(g, p)
            cur = ef.row_basis(ef.matmul(lk, cur, p), p) if lk.shape[0] else np.zeros((0, d), dtype=np.int64)
        self._radical = ef.Subspace.span(cur, p, d)
        return self._radical

    def quotient(self, ideal: ef.Subspace) -> "FDAlgebra":
        """A / ideal for a two-sided ideal, on a basis of standard complement vectors."""
        comp = ideal.complement()
        k = comp.shape[0]
        p = self.p
        table = np.zeros((k, k, k), dtype=np.int64)
        free = [int(np.flatnonzero(r)[0]) for r in comp]
        for a in range(k):
            for b in range(k):
                prod = self.mul(comp[a], comp[b])
                red = ideal.reduce(prod)[0]
                table[a, b] = red[free]
        one = ideal.reduce(self.one)[0][free] if k else None
        return FDAlgebra(table, p, one)

    def center(self) -> ef.Subspace:
        d, p = self.dim, self.p
        if d == 0:
            return ef.Subspace.zero(0, p)
        # x b_j - b_j x = 0 for all j
        blocks = []
        for j in range(d):
            e = np.zeros(d, dtype=np.int64)
            e[j] = 1
            blocks.append((self.right_matrix(e) - self.left_matrix(e)) % p)
        return ef.Subspace.span(ef.kernel(np.concatenate(blocks), p), p, d)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.transpose(1, 0, 2)))

    def n_simple_components(self) -> int:
        """Number of simple components, for a semisimple algebra."""
        z = self.center()
        if z.dim == 0:
            return 0
        p = self.p
        # Frobenius z -> z^p is F_p-linear on the commutative centre
        images = np.array([self.power(v, p) for v in z.basis])
        diff = (images - z.basis) % p
        # coordinates relative to z.basis: read at pivots
        coords = diff[:, list(z.pivots)]
        return z.dim - ef.rank(coords, p)

    def semisimple_quotient(self) -> "FDAlgebra":
        return self.quotient(self.radical())

    def is_local(self) -> bool:
        """True iff A / rad A is a (finite) division ring, hence a field."""
        if self.dim == 0:
            return False
        b = self.semisimple_quotient()
        return b.dim > 0 and b.is_commutative() and b.n_simple_components() == 1

    def is_division(self) -> bool:
        return self.dim > 0 and self.radical().dim == 0 and self.is_commutative() and self.n_simple_components() == 1


def from_matrices(mats: Sequence[np.ndarray], p: int) -> FDAlgebra:
    """Algebra spanned by linearly independent square matrices closed under product.

    The matrices are flattened; products are expressed in the span by solving.
    """
    d = len(mats)
    if d == 0:
        return FDAlgebra(np.zeros((0, 0, 0), dtype=np.int64), p)
    flat = np.array([m.reshape(-1) for m in mats], dtype=np.int64).T % p
    prods = []
    for a in range(d):
        for b in range(d):
            prods.append(ef.matmul(mats[a], mats[b], p).reshape(-1))
    sol = ef.solve_many(flat, np.array(prods, dtype=np.int64).T, p)
    if sol is None:
        raise ValueError("matrices do not span a subalgebra")
    table = sol.T.reshape(d, d, d)
    n = mats[0].shape[0]
    one = ef.solve(flat, np.eye(n, dtype=np.int64).reshape(-1), p)
    return FDAlgebra(table, p, one)


# -- polynomials over F_p (coefficients low degree first)


def min_poly(m: np.ndarray, p: int) -> list[int]:
    """Monic minimal polynomial of a square matrix, coefficients from degree 0 up."""
    n = m.shape[0]
    if n == 0:
        return [1]
    powers = [np.eye(n, dtype=np.int64).reshape(-1)]
    cur = np.eye(n, dtype=np.int64)
    while True:
        cur = ef.matmul(cur, m, p)
        vec = cur.reshape(-1)
        basis = np.array(powers, dtype=np.int64).T
        c = ef.solve(basis, vec, p)
        if c is not None:
            return [int((-x) % p) for x in c] + [1]
        powers.append(vec)


def factor_poly(coeffs: Sequence[int], p: int) -> list[tuple[list[int], int]]:
    """Monic irreducible factors with multiplicities, each low degree first."""
    x = sympy.Symbol("x")
    expr = sum(int(c) * x**k for k, c in enumerate(coeffs))
    poly = sympy.Poly(expr, x, modulus=p)
    _, facs = poly.factor_list()
    out = []
    for f, mult in facs:
        cs = [int(c) % p for c in reversed(f.all_coeffs())]
        lead = pow(cs[-1], -1, p)
        out.append(([(c * lead) % p for c in cs], int(mult)))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def poly_eval_matrix(coeffs: Sequence[int], m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in reversed(list(coeffs)):
        out = (ef.matmul(out, m, p) + int(c) * np.eye(n, dtype=np.int64)) % p
    return out
