"""Finite fields F_{p^m}, exact linear algebra over F_p and module maps.

Field elements are integers ``0 <= a < q`` whose base-``p`` digits are the
coefficients of a polynomial in ``x`` (lowest degree first) reduced modulo
the fixed irreducible polynomial of the field.  Matrices over F_p are numpy
integer arrays; vectors are rows and matrices act on the right, matching
the permutation convention in :mod:`twrgraph.perm`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

SEED = 0x5EED

# lowest degree first; these are the moduli recorded in every report
FIXED_MODULI = {
    (2, 2): (1, 1, 1),      # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),   # x^3 + x + 1
    (3, 2): (1, 0, 1),      # x^2 + 1
}


class FieldError(ValueError):
    pass


class DegenerateForm(ValueError):
    """The standard form restricted to a subspace has a non-zero radical."""

    def __init__(self, radical):
        super().__init__("form is degenerate on the subspace (radical dim %d)" % len(radical))
        self.radical = radical


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, m)`` with ``q = p^m``, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            return (p, m) if r == 1 else None
    return None


def _poly_mod(a: list[int], mod: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    d = len(mod) - 1
    lead_inv = pow(mod[-1], -1, p)
    while len(a) > d and any(a[d:]):
        top = len(a) - 1
        while top >= d and a[top] == 0:
            top -= 1
        if top < d:
            break
        c = a[top] * lead_inv % p
        for i, mc in enumerate(mod):
            a[top - d + i] = (a[top - d + i] - c * mc) % p
    return (a + [0] * d)[:d]


def is_irreducible(mod: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    d = len(mod) - 1
    if d < 1 or mod[-1] % p == 0:
        return False
    for e in range(1, d // 2 + 1):
        for coeffs in itertools.product(range(p), repeat=e):
            div = list(coeffs) + [1]
            if not any(_poly_mod(list(mod), div, p)):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    if (p, m) in FIXED_MODULI:
        return FIXED_MODULI[(p, m)]
    if m == 1:
        return (0, 1)
    for coeffs in itertools.product(range(p), repeat=m):
        mod = tuple(coeffs) + (1,)
        if mod[0] and is_irreducible(mod, p):
            return mod
    raise FieldError("no irreducible polynomial found")


def poly_str(mod: Sequence[int]) -> str:
    terms = []
    for i in range(len(mod) - 1, -1, -1):
        c = mod[i]
        if not c:
            continue
        mono = "1" if i == 0 else ("x" if i == 1 else "x^%d" % i)
        terms.append(mono if c == 1 and i else "%d%s" % (c, "" if i == 0 else "*" + mono))
    return " + ".join(terms) or "0"


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError("%d is not prime" % self.p)
        if len(self.modulus) != self.m + 1 or not is_irreducible(self.modulus, self.p):
            raise FieldError("modulus %r is not irreducible of degree %d over F_%d"
                             % (self.modulus, self.m, self.p))

    @property
    def q(self) -> int:
        return self.p ** self.m

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "q": self.q, "modulus": list(self.modulus),
                "modulus_str": poly_str(self.modulus)}


class GF:
    """Table-driven arithmetic in F_q."""

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        self.spec = FieldSpec(p, m, tuple(modulus) if modulus else default_modulus(p, m))
        self.p, self.m, self.q = p, m, p ** m
        q = self.q
        digits = [self.to_coeffs(a) for a in range(q)]
        self.add_table = np.zeros((q, q), dtype=np.int64)
        self.mul_table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                self.add_table[a, b] = self.from_coeffs(
                    [(x + y) % p for x, y in zip(digits[a], digits[b])])
                prod = [0] * (2 * m - 1)
                for i, x in enumerate(digits[a]):
                    if x:
                        for j, y in enumerate(digits[b]):
                            prod[i + j] += x * y
                self.mul_table[a, b] = self.from_coeffs(_poly_mod(prod, self.spec.modulus, p))
        self.neg_table = np.array([int(np.where(self.add_table[a] == 0)[0][0]) for a in range(q)])
        self.inv_table = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv_table[a] = int(np.where(self.mul_table[a] == 1)[0][0])
        self._add = self.add_table.tolist()
        self._mul = self.mul_table.tolist()
        self._neg = self.neg_table.tolist()
        self._inv = self.inv_table.tolist()

    def __repr__(self):
        return "GF(%d) mod %s" % (self.q, poly_str(self.spec.modulus))

    def to_coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_coeffs(self, cs: Sequence[int]) -> int:
        a = 0
        for c in reversed(list(cs)):
            a = a * self.p + int(c) % self.p
        return a

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in %r" % self)
        return self._inv[a]

    @cached_property
    def basis(self) -> list[int]:
        """The F_p-basis 1, x, ..., x^(m-1) as field elements."""
        return [self.p ** i for i in range(self.m)]

    def mul_matrix(self, a: int) -> np.ndarray:
        """m x m matrix over F_p of ``y -> y*a`` in the coefficient basis (rows)."""
        return np.array([self.to_coeffs(self.mul(b, a)) for b in self.basis], dtype=np.int64)


# -- matrices over F_p --------------------------------------------------------

def as_fp(M, p: int) -> np.ndarray:
    return np.asarray(M, dtype=np.int64) % p


def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p and the pivot columns."""
    A = as_fp(M, p).copy()
    if A.ndim != 2:
        raise ValueError("matrix expected")
    rows, cols = A.shape
    inv = [0] + [pow(a, -1, p) for a in range(1, p)]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        if A[r, c] != 1:
            A[r] = (A[r] * inv[int(A[r, c])]) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M, p: int) -> int:
    return len(rref(M, p)[1])


def row_space(M, p: int) -> np.ndarray:
    """Echelonized basis of the row space (rows)."""
    R, piv = rref(M, p)
    return R[: len(piv)]


def null_space(M, p: int) -> np.ndarray:
    """Basis (rows) of ``{x : M x^T = 0}``, in reduced echelon form."""
    M = as_fp(M, p)
    rows, cols = M.shape
    R, piv = rref(M, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, c in enumerate(piv):
            basis[i, c] = (-R[r, f]) % p
    if len(free):
        basis = row_space(basis, p)
    return basis


def kernel(M, p: int) -> np.ndarray:
    """Basis of ``{x : x M = 0}`` (the map is ``x -> x M``)."""
    return null_space(as_fp(M, p).T, p)


def solve(M, target, p: int) -> np.ndarray | None:
    """Some ``x`` with ``x M = target``, or None."""
    M = as_fp(M, p)
    t = as_fp(target, p).reshape(1, -1)
    aug = np.vstack([M, t]).T  # columns: rows of M, then target
    R, piv = rref(aug, p)
    n = M.shape[0]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = R[r, n]
    return x


def mat_mul(A, B, p: int) -> np.ndarray:
    return (as_fp(A, p) @ as_fp(B, p)) % p


def same_subspace(A, B, p: int) -> bool:
    ra, rb = row_space(A, p), row_space(B, p)
    return ra.shape == rb.shape and bool(np.all(ra == rb))


def orthocomplement(S, dim: int, p: int) -> np.ndarray:
    """Complement of span(S) under the standard dot product.

    Raises :class:`DegenerateForm` when the form has a radical on span(S).
    """
    S = as_fp(S, p).reshape(-1, dim)
    if S.shape[0] == 0 or not S.any():
        return np.eye(dim, dtype=np.int64)
    S = row_space(S, p)
    perp = null_space(S, p)
    if perp.shape[0]:
        rad = null_space(np.vstack([null_space(S, p), null_space(perp, p)]), p)
        if rad.shape[0]:
            raise DegenerateForm(rad)
    return perp.reshape(-1, dim)


def matrix_to_json(M, p: int) -> dict:
    M = as_fp(M, p)
    rows, cols = M.shape
    return {"rows": rows, "cols": cols, "p": p, "data": M.reshape(-1).tolist()}


def matrix_from_json(d: dict) -> np.ndarray:
    return np.array(d["data"], dtype=np.int64).reshape(d["rows"], d["cols"]) % d["p"]


# -- modules --------------------------------------------------------------------

@dataclass
class ModuleAction:
    """A right F_p-module for a group given by generators: ``v -> v @ mats[i]``."""

    p: int
    dim: int
    mats: list[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        self.mats = [as_fp(M, self.p) for M in self.mats]
        for M in self.mats:
            if M.shape != (self.dim, self.dim):
                raise ValueError("generator matrix of shape %r in module of dim %d"
                                 % (M.shape, self.dim))

    def check_invertible(self) -> bool:
        return all(rank(M, self.p) == self.dim for M in self.mats)

    def word(self, letters: Sequence[int]) -> np.ndarray:
        out = np.eye(self.dim, dtype=np.int64)
        for i in letters:
            out = mat_mul(out, self.mats[i], self.p)
        return out


def permutation_module(perms: Sequence[Sequence[int]], degree: int, p: int) -> ModuleAction:
    """Basis e_0..e_{n-1} permuted as ``e_i -> e_{g[i]}``."""
    mats = []
    for g in perms:
        M = np.zeros((degree, degree), dtype=np.int64)
        M[np.arange(degree), np.asarray(g)] = 1
        mats.append(M)
    return ModuleAction(p, degree, mats)


def equivariant_hom_space(A: ModuleAction, B: ModuleAction) -> list[np.ndarray]:
    """Basis of ``{X : A_g X = X B_g for every generator g}``.

    ``X`` has shape ``(A.dim, B.dim)`` and maps ``v -> v X``.
    """
    if A.p != B.p or len(A.mats) != len(B.mats):
        raise ValueError("modules over different fields or generator lists")
    p, a, b = A.p, A.dim, B.dim
    if not A.mats:
        eqs = np.zeros((0, a * b), dtype=np.int64)
    else:
        Ia, Ib = np.eye(a, dtype=np.int64), np.eye(b, dtype=np.int64)
        eqs = np.vstack([(np.kron(Ag, Ib) - np.kron(Ia, Bg.T)) % p
                         for Ag, Bg in zip(A.mats, B.mats)])
    sol = null_space(eqs, p) if eqs.shape[0] else np.eye(a * b, dtype=np.int64)
    return [row.reshape(a, b) for row in sol]


def is_equivariant(X, A: ModuleAction, B: ModuleAction) -> bool:
    p = A.p
    return all(np.array_equal(mat_mul(Ag, X, p), mat_mul(X, Bg, p))
               for Ag, Bg in zip(A.mats, B.mats))


def submodule_copy_of(V: ModuleAction, W: ModuleAction, seed: int = SEED,
                      trials: int = 10**4) -> np.ndarray | None:
    """An injective equivariant ``X : V -> W``, or None.

    Tries the echelon basis of Hom(V, W) first, then seeded random
    combinations; when the hom space has at most 2^16 elements it is
    enumerated exhaustively before giving up.
    """
    p = V.p
    basis = equivariant_hom_space(V, W)
    for X in basis:
        if rank(X, p) == V.dim:
            return X
    if not basis:
        return None
    stack = np.stack(basis)
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        c = rng.integers(0, p, size=len(basis))
        X = np.tensordot(c, stack, axes=1) % p
        if rank(X, p) == V.dim:
            return X
    if p ** len(basis) <= 2**16:
        for c in itertools.product(range(p), repeat=len(basis)):
            X = np.tensordot(np.array(c), stack, axes=1) % p
            if rank(X, p) == V.dim:
                return X
    return None


def solve_matrix_inverse(M, p: int) -> np.ndarray:
    M = as_fp(M, p)
    n = M.shape[0]
    R, piv = rref(np.hstack([M, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return R[:, n:]
