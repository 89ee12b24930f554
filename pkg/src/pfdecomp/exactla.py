"""Exact linear algebra over prime fields F_p.

Matrices are plain ``numpy.int64`` arrays with entries in ``[0, p)``.  A
:class:`Subspace` stores its basis as the rows of a reduced row echelon
matrix; the transpose is the reduced column echelon basis, and because that
form is unique, subspace equality is array equality.

The elimination kernels are compiled with numba.  Products of two residues
stay below ``2**62`` for ``p < 2**31`` so int64 never overflows.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numba import njit

MAX_PRIME = 2**31


class LinAlgError(ValueError):
    """Raised on dimension mismatches and violated preconditions."""


class FieldPrime(int):
    """A prime ``p`` with ``2 <= p < 2**31``; behaves as a plain ``int``."""

    def __new__(cls, p):
        if isinstance(p, bool) or int(p) != p:
            raise LinAlgError(f"field must be an integer prime, got {p!r}")
        p = int(p)
        if not 2 <= p < MAX_PRIME or not _is_prime(p):
            raise LinAlgError(f"{p} is not a prime in [2, 2^31)")
        return super().__new__(cls, p)


@lru_cache(maxsize=256)
def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if p % q == 0:
            return p == q
    i = 17
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


# ---------------------------------------------------------------------------
# compiled kernels


@njit(cache=True, nogil=True)
def _inv_mod(a, p):
    # extended Euclid; a is a nonzero residue
    t, new_t = 0, 1
    r, new_r = p, a
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return t % p


@njit(cache=True, nogil=True)
def _rref(a, p):
    """Reduced row echelon form of ``a`` (copied). Returns (R, rank, pivots)."""
    a = a.copy()
    m, n = a.shape
    piv = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        k = -1
        for i in range(r, m):
            if a[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(c, n):
                tmp = a[k, j]
                a[k, j] = a[r, j]
                a[r, j] = tmp
        if a[r, c] != 1:
            inv = _inv_mod(a[r, c], p)
            for j in range(c, n):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(m):
            if i != r:
                f = a[i, c]
                if f != 0:
                    for j in range(c, n):
                        if a[r, j] != 0:
                            a[i, j] = (a[i, j] - f * a[r, j]) % p
        piv[r] = c
        r += 1
    return a, r, piv[:r]


@njit(cache=True, nogil=True)
def _matmul(a, b, p):
    m, k = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), dtype=np.int64)
    for i in range(m):
        for l in range(k):
            x = a[i, l]
            if x != 0:
                for j in range(n):
                    out[i, j] = (out[i, j] + x * b[l, j]) % p
    return out


@njit(cache=True, nogil=True)
def _independent_mask(rows, p):
    """mask[i] is True iff rows[i] is not in the span of rows[:i]."""
    m, n = rows.shape
    basis = np.zeros((m, n), dtype=np.int64)
    pivots = np.empty(m, dtype=np.int64)
    nb = 0
    mask = np.zeros(m, dtype=np.bool_)
    v = np.empty(n, dtype=np.int64)
    for i in range(m):
        for j in range(n):
            v[j] = rows[i, j]
        for k in range(nb):
            f = v[pivots[k]]
            if f != 0:
                for j in range(n):
                    if basis[k, j] != 0:
                        v[j] = (v[j] - f * basis[k, j]) % p
        lead = -1
        for j in range(n):
            if v[j] != 0:
                lead = j
                break
        if lead < 0:
            continue
        mask[i] = True
        inv = _inv_mod(v[lead], p)
        for j in range(n):
            v[j] = (v[j] * inv) % p
        # keep stored rows reduced at the new pivot so later reductions stay exact
        for k in range(nb):
            f = basis[k, lead]
            if f != 0:
                for j in range(n):
                    basis[k, j] = (basis[k, j] - f * v[j]) % p
        for j in range(n):
            basis[nb, j] = v[j]
        pivots[nb] = lead
        nb += 1
    return mask


# ---------------------------------------------------------------------------
# matrices


def mat(entries, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build an int64 matrix from nested rows, reducing entries mod ``p``.

    ``shape`` is needed to disambiguate empty matrices (``[]`` could be 0xk).
    """
    a = np.array(entries, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise LinAlgError(f"expected a 2-d matrix, got shape {a.shape}")
    return a % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise LinAlgError(f"cannot multiply {a.shape} by {b.shape}")
    if a.size == 0 or b.size == 0:
        return zeros(a.shape[0], b.shape[1])
    # numpy's integer matmul is exact while the accumulated sum fits in int64
    if (p - 1) ** 2 * a.shape[1] < 2**62:
        return (a @ b) % p
    return _matmul(np.ascontiguousarray(a), np.ascontiguousarray(b), int(p))


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Return the reduced row echelon form and its pivot columns."""
    if a.size == 0:
        return a.copy(), np.zeros(0, dtype=np.int64)
    r, rank, piv = _rref(np.ascontiguousarray(a, dtype=np.int64), int(p))
    return r, piv


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return int(_rref(np.ascontiguousarray(a, dtype=np.int64), int(p))[1])


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    d = a.shape[0]
    if a.shape != (d, d):
        raise LinAlgError(f"cannot invert non-square matrix of shape {a.shape}")
    if d == 0:
        return zeros(0, 0)
    r, piv = rref(np.hstack([a, identity(d)]), p)
    if len(piv) < d or piv[d - 1] != d - 1:
        raise LinAlgError("matrix is singular")
    return r[:, d:].copy()


def is_invertible(a: np.ndarray, p: int) -> bool:
    return a.ndim == 2 and a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """One solution ``x`` of ``a @ x = b`` (``b`` a matrix of right-hand sides).

    Free variables are set to zero. Raises :class:`LinAlgError` when the system
    is inconsistent.
    """
    m, n = a.shape
    if b.shape[0] != m:
        raise LinAlgError(f"right-hand side has {b.shape[0]} rows, expected {m}")
    x = zeros(n, b.shape[1])
    if m == 0 or b.shape[1] == 0:
        return x
    r, piv = rref(np.hstack([a, b]), p)
    if len(piv) and piv[-1] >= n:
        raise LinAlgError("linear system is inconsistent")
    for i, c in enumerate(piv):
        x[c] = r[i, n:]
    return x


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_p^d held in canonical (reduced echelon) form.

    ``rows`` is a ``dim x ambient_dim`` matrix in reduced row echelon form;
    use :attr:`basis` for the column-echelon basis matrix. Construct through
    :meth:`span`, :meth:`zero`, :meth:`full` or the module-level operations;
    the raw constructor trusts its input.
    """

    ambient_dim: int
    p: int
    rows: np.ndarray

    @classmethod
    def zero(cls, d: int, p: int) -> "Subspace":
        return cls(d, p, zeros(0, d))

    @classmethod
    def full(cls, d: int, p: int) -> "Subspace":
        return cls(d, p, identity(d))

    @classmethod
    def span(cls, basis: np.ndarray, p: int) -> "Subspace":
        """Column space of ``basis`` (a ``d x k`` matrix)."""
        return cls.from_rows(np.asarray(basis, dtype=np.int64).T % p, p)

    @classmethod
    def from_rows(cls, rows: np.ndarray, p: int) -> "Subspace":
        rows = np.asarray(rows, dtype=np.int64)
        d = rows.shape[1]
        if rows.shape[0] == 0 or d == 0:
            return cls.zero(d, p)
        r, rk, _ = _rref(np.ascontiguousarray(rows), int(p))
        out = r[:rk].copy()
        out.flags.writeable = False
        return cls(d, p, out)

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    @property
    def basis(self) -> np.ndarray:
        """Basis as columns, in reduced column echelon form."""
        return self.rows.T.copy()

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, -1) % self.p
        return rank(np.vstack([self.rows, v]), self.p) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        _check_same(self, other)
        if self.is_zero or other.is_full:
            return True
        if self.dim > other.dim:
            return False
        return rank(np.vstack([other.rows, self.rows]), self.p) == other.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.p == other.p
            and np.array_equal(self.rows, other.rows)
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.p, self.rows.tobytes()))

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p}, rows={self.rows.tolist()})"


def _check_same(s: Subspace, t: Subspace) -> None:
    if s.ambient_dim != t.ambient_dim or s.p != t.p:
        raise LinAlgError(
            f"ambient mismatch: F_{s.p}^{s.ambient_dim} vs F_{t.p}^{t.ambient_dim}"
        )


def image(m: np.ndarray, p: int) -> Subspace:
    """Column space of ``m``."""
    return Subspace.span(m, p)


def kernel(m: np.ndarray, p: int) -> Subspace:
    """Null space ``{x : m x = 0}``; dimension is ``cols - rank``."""
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return Subspace.full(cols, p)
    r, rk, piv = _rref(np.ascontiguousarray(m, dtype=np.int64), int(p))
    piv = piv.tolist()
    free = sorted(set(range(cols)) - set(piv))
    if not free:
        return Subspace.zero(cols, p)
    gens = zeros(len(free), cols)
    for k, f in enumerate(free):
        gens[k, f] = 1
        for i, c in enumerate(piv):
            gens[k, c] = (-r[i, f]) % p
    return Subspace.from_rows(gens, p)


def subspace_sum(s: Subspace, t: Subspace) -> Subspace:
    _check_same(s, t)
    if t.is_zero or s.is_full:
        return s
    if s.is_zero or t.is_full:
        return t
    return Subspace.from_rows(np.vstack([s.rows, t.rows]), s.p)


def intersect(s: Subspace, t: Subspace) -> Subspace:
    """Intersection via the Zassenhaus block elimination."""
    _check_same(s, t)
    if s.is_zero or t.is_full:
        return s
    if t.is_zero or s.is_full:
        return t
    d = s.ambient_dim
    block = np.vstack([np.hstack([s.rows, s.rows]), np.hstack([t.rows, zeros(t.dim, d)])])
    r, rk, piv = _rref(block, int(s.p))
    keep = [i for i in range(rk) if piv[i] >= d]
    if not keep:
        return Subspace.zero(d, s.p)
    return Subspace.from_rows(r[keep, d:], s.p)


def preimage(m: np.ndarray, s: Subspace) -> Subspace:
    """``{x : m x in s}``.

    Computed as the kernel of ``N m`` where the rows of ``N`` cut out ``s``.
    """
    if s.ambient_dim != m.shape[0]:
        raise LinAlgError(
            f"subspace lives in dimension {s.ambient_dim}, map has {m.shape[0]} rows"
        )
    p = s.p
    if s.is_full:
        return Subspace.full(m.shape[1], p)
    annihilator = kernel(s.rows, p).rows if not s.is_zero else identity(s.ambient_dim)
    return kernel(matmul(annihilator, m, p), p)


def complement_in(s: Subspace, t: Subspace) -> Subspace:
    """Deterministic complement of ``s`` inside ``t``.

    Scans the canonical basis of ``t`` in order and keeps each vector that is
    independent of ``s`` plus the vectors already kept.
    """
    _check_same(s, t)
    if not s <= t:
        raise LinAlgError("complement_in requires s to be contained in t")
    if s.is_zero:
        return t
    mask = _independent_mask(np.vstack([s.rows, t.rows]), int(s.p))[s.dim:]
    return Subspace.from_rows(t.rows[mask], s.p)


def gaussian_binomial(d: int, k: int, p: int) -> int:
    """Number of ``k``-dimensional subspaces of F_p^d."""
    if not 0 <= k <= d:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (d - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def enumerate_subspaces(d: int, p: int, bound: int = 4096) -> list[Subspace]:
    """All subspaces of F_p^d, each once, ordered by dimension then pivots.

    Every subspace has exactly one reduced echelon basis, so enumerating pivot
    sets and the free entries of each echelon pattern hits each subspace once.
    """
    if p**d > bound:
        raise LinAlgError(f"p^d = {p}^{d} exceeds enumeration bound {bound}")
    out = []
    for k in range(d + 1):
        for piv in itertools.combinations(range(d), k):
            free = [
                (i, j)
                for i, c in enumerate(piv)
                for j in range(c + 1, d)
                if j not in piv
            ]
            for values in itertools.product(range(p), repeat=len(free)):
                rows = zeros(k, d)
                for i, c in enumerate(piv):
                    rows[i, c] = 1
                for (i, j), v in zip(free, values):
                    rows[i, j] = v
                rows.flags.writeable = False
                out.append(Subspace(d, p, rows))
    return out
