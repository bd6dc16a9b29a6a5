"""
Dense linear algebra over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays whose entries are kept in ``[0, p)``.
Every routine is a pure function of its inputs; pivoting always takes the first
nonzero entry in column order so results are reproducible bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


class DimensionError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Fp:
    """The prime field of order ``p``."""

    p: int

    def __post_init__(self):
        if not (2 <= self.p < 2**31) or not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not a prime below 2^31")

    def __call__(self, x) -> np.ndarray:
        return as_mat(x, self.p)

    def inv(self, a: int) -> int:
        return pow(int(a) % self.p, -1, self.p)


def as_mat(x, p: int) -> np.ndarray:
    a = np.array(x, dtype=np.int64)
    return a % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


_EXACT_FLOAT = 2**53


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    if a.shape[1] * (p - 1) ** 2 < _EXACT_FLOAT:
        # BLAS in double precision is exact below 2^53
        return np.fmod(a.astype(np.float64) @ b.astype(np.float64), p).astype(np.int64)
    if p < 3037000499 // max(1, a.shape[1]):
        return (a @ b) % p
    # large moduli: accumulate column by column to avoid overflow
    out = zeros(a.shape[0], b.shape[1])
    for k in range(a.shape[1]):
        out = (out + np.outer(a[:, k], b[k, :]) % p) % p
    return out


def batch_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Broadcasting ``a @ b`` mod p for stacks of matrices."""
    k = a.shape[-1]
    if k == 0:
        shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
        return np.zeros(shape, dtype=np.int64)
    if k * (p - 1) ** 2 < _EXACT_FLOAT:
        return np.fmod(np.matmul(a.astype(np.float64), b.astype(np.float64)), p).astype(np.int64)
    if p < 3037000499 // max(1, k):
        return np.matmul(a, b) % p
    out = np.remainder(a[..., :, :1] * b[..., :1, :], p)
    for j in range(1, k):
        out = (out + np.remainder(a[..., :, j:j + 1] * b[..., j:j + 1, :], p)) % p
    return out


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int], int]:
    """Reduced row-echelon form. Returns ``(matrix, pivot_columns, rank)``.

    The returned matrix has the same shape as ``m``; rows past the rank are zero.
    """
    a = as_mat(m, p).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[np.ix_(hit, np.arange(c, cols))] = (
                a[np.ix_(hit, np.arange(c, cols))] - np.outer(col[hit], a[r, c:]) % p
            ) % p
        pivots.append(c)
        r += 1
    return a, pivots, r


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return rref(m, p)[2]


def row_basis(m: np.ndarray, p: int) -> np.ndarray:
    """RREF basis of the row space (rows are basis vectors)."""
    if m.shape[0] == 0:
        return zeros(0, m.shape[1])
    a, _, r = rref(m, p)
    return a[:r]


def kernel(m: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel ``{v : m v = 0}`` as the rows of a matrix.

    Basis vector ``j`` has a 1 in the ``j``-th free column and 0 in the other
    free columns, so coordinates of a kernel element are read off at the free
    columns (see :func:`free_columns`).
    """
    rows, cols = m.shape
    if rows == 0:
        return identity(cols)
    a, piv, r = rref(m, p)
    free = [c for c in range(cols) if c not in set(piv)]
    out = zeros(len(free), cols)
    for j, f in enumerate(free):
        out[j, f] = 1
        if r:
            out[j, piv] = (-a[:r, f]) % p
    return out


def free_columns(m: np.ndarray, p: int) -> list[int]:
    cols = m.shape[1]
    if m.shape[0] == 0:
        return list(range(cols))
    piv = set(rref(m, p)[1])
    return [c for c in range(cols) if c not in piv]


def left_kernel(m: np.ndarray, p: int) -> np.ndarray:
    return kernel(m.T.copy(), p)


def solve(m: np.ndarray, b, p: int) -> Optional[np.ndarray]:
    """Some ``v`` with ``m v = b``, or ``None`` when the system is inconsistent."""
    b = as_mat(b, p).reshape(-1)
    rows, cols = m.shape
    if b.shape[0] != rows:
        raise DimensionError("right-hand side length does not match row count")
    aug = np.concatenate([as_mat(m, p), b.reshape(-1, 1)], axis=1)
    a, piv, r = rref(aug, p)
    if piv and piv[-1] == cols:
        return None
    v = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(piv):
        v[c] = a[i, cols]
    return v


def solve_many(m: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Solve ``m X = b`` column by column in one elimination; ``None`` if any column fails."""
    rows, cols = m.shape
    k = b.shape[1]
    aug = np.concatenate([as_mat(m, p), as_mat(b, p)], axis=1)
    a, piv, r = rref(aug, p)
    mpiv = [c for c in piv if c < cols]
    if len(mpiv) != len(piv):
        return None
    x = zeros(cols, k)
    for i, c in enumerate(mpiv):
        x[c] = a[i, cols:]
    return x


def inverse(m: np.ndarray, p: int) -> Optional[np.ndarray]:
    n = m.shape[0]
    if m.shape != (n, n):
        raise DimensionError("inverse of a non-square matrix")
    if n == 0:
        return zeros(0, 0)
    aug = np.concatenate([as_mat(m, p), identity(n)], axis=1)
    a, piv, r = rref(aug, p)
    if r < n or piv[n - 1] != n - 1:
        return None
    return a[:, n:].copy()


def mat_pow(m: np.ndarray, e: int, p: int) -> np.ndarray:
    result = identity(m.shape[0])
    base = m % p
    while e:
        if e & 1:
            result = matmul(result, base, p)
        base = matmul(base, base, p)
        e >>= 1
    return result


def reduce_rows(v: np.ndarray, basis: np.ndarray, pivots: Sequence[int], p: int) -> np.ndarray:
    """Reduce the rows of ``v`` modulo an RREF ``basis`` with the given pivots."""
    if len(pivots) == 0 or v.shape[0] == 0:
        return v % p
    coeff = v[:, list(pivots)]
    return (v - matmul(coeff, basis, p)) % p


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``F_p^n`` held by an RREF basis (rows)."""

    p: int
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple

    @classmethod
    def span(cls, vectors, p: int, ambient_dim: Optional[int] = None) -> "Subspace":
        v = np.array(vectors, dtype=np.int64)
        if v.size == 0:
            n = ambient_dim if ambient_dim is not None else (v.shape[1] if v.ndim == 2 else 0)
            return cls(p, n, zeros(0, n), ())
        if v.ndim == 1:
            v = v.reshape(1, -1)
        if ambient_dim is not None and v.shape[1] != ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        a, piv, r = rref(v, p)
        return cls(p, v.shape[1], a[:r], tuple(piv))

    @classmethod
    def zero(cls, n: int, p: int) -> "Subspace":
        return cls(p, n, zeros(0, n), ())

    @classmethod
    def full(cls, n: int, p: int) -> "Subspace":
        return cls(p, n, identity(n), tuple(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim or other.p != self.p:
            raise DimensionError("subspaces live in different ambient spaces")

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.atleast_2d(as_mat(v, self.p))
        return reduce_rows(v, self.basis, self.pivots, self.p)

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        return other.dim == 0 or not self.reduce(other.basis).any()

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(np.concatenate([self.basis, other.basis]), self.p, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        # x U = y V  <=>  [x, -y] [U; V] = 0
        stacked = np.concatenate([self.basis, (-other.basis) % self.p])
        lk = left_kernel(stacked, self.p)
        if lk.shape[0] == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        vecs = matmul(lk[:, : self.dim], self.basis, self.p)
        return Subspace.span(vecs, self.p, self.ambient_dim)

    def quotient_basis(self, other: "Subspace") -> np.ndarray:
        """Rows extending this basis to a basis of ``other`` (requires ``self <= other``)."""
        self._check(other)
        if not other.contains_space(self):
            raise DimensionError("quotient basis requested for a non-contained subspace")
        return self.complement_in(other.basis)

    def complement_in(self, vectors: np.ndarray) -> np.ndarray:
        """Greedy choice of rows of ``vectors`` independent modulo this subspace."""
        chosen = []
        cur = self
        for row in vectors:
            red = cur.reduce(row)
            if red.any():
                chosen.append(row % self.p)
                cur = Subspace.span(np.concatenate([cur.basis, red]), self.p, self.ambient_dim)
        if not chosen:
            return zeros(0, self.ambient_dim)
        return np.array(chosen, dtype=np.int64)

    def complement(self) -> np.ndarray:
        """Standard basis vectors at the non-pivot coordinates."""
        free = [c for c in range(self.ambient_dim) if c not in set(self.pivots)]
        out = zeros(len(free), self.ambient_dim)
        for i, c in enumerate(free):
            out[i, c] = 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.pivots, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"
