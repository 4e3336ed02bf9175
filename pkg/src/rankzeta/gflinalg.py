"""Finite fields F_q (q <= 256), matrices over them, and subspaces.

Field elements are ints ``0..q-1``.  For ``q = p^e`` with ``e > 1`` the int
encodes a polynomial in the primitive element: base-``p`` digit ``j`` is the
coefficient of ``x^j``.  Matrices are tuples of row tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence

from .budget import SUBSPACE_CAP, check_budget
from .qcombinat import qbin

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"q={q} is not a prime power")
    return p, e


def _digits(x: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds: Sequence[int], p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


def _polymulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    e = len(modulus) - 1
    prod_ = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod_[i + j] = (prod_[i + j] + x * y) % p
    # reduce by the monic modulus, highest degree first
    for d in range(len(prod_) - 1, e - 1, -1):
        c = prod_[d]
        if c:
            for j in range(e + 1):
                prod_[d - e + j] = (prod_[d - e + j] - c * modulus[j]) % p
    return prod_[:e]


def _is_primitive(low: list[int], p: int, e: int) -> bool:
    modulus = low + [1]
    q = p**e
    x = [0] * e
    x[1] = 1
    one = [1] + [0] * (e - 1)
    cur = one
    for k in range(1, q):
        cur = _polymulmod(cur, x, modulus, p)
        if cur == one:
            return k == q - 1
        if not any(cur):
            return False
    return False


@lru_cache(maxsize=None)
def primitive_modulus(p: int, e: int) -> tuple[int, ...]:
    """Least monic primitive polynomial of degree ``e`` over F_p.

    Candidates are ordered by the integer encoding of their lower
    coefficients; returned low-to-high including the leading 1.
    """
    for code in range(p**e):
        low = _digits(code, p, e)
        if low[0] == 0:
            continue
        if _is_primitive(low, p, e):
            return tuple(low + [1])
    raise AssertionError(f"no primitive polynomial of degree {e} over F_{p}")


class FieldSpec:
    """The finite field F_q with full addition/multiplication tables."""

    def __init__(self, q: int, check: bool | None = None):
        if q > 256:
            raise ValueError("fields with q > 256 are not supported")
        p, e = _prime_power(q)
        self.q, self.p, self.e = q, p, e
        if e == 1:
            self.modulus: tuple[int, ...] | None = None
            self.add = [[(a + b) % q for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        else:
            self.modulus = primitive_modulus(p, e)
            ds = [_digits(a, p, e) for a in range(q)]
            mod = list(self.modulus)
            self.add = [[_undigits([(x + y) % p for x, y in zip(ds[a], ds[b])], p) for b in range(q)] for a in range(q)]
            self.mul = [[_undigits(_polymulmod(ds[a], ds[b], mod, p), p) for b in range(q)] for a in range(q)]
        self.neg = [self.add[a].index(0) for a in range(q)]
        self.sub = [[self.add[a][self.neg[b]] for b in range(q)] for a in range(q)]
        self.inv = [0] + [self.mul[a].index(1) for a in range(1, q)]
        if check if check is not None else q <= 16:
            self.check_axioms()

    def check_axioms(self) -> None:
        q, add, mul = self.q, self.add, self.mul
        els = range(q)
        for a in els:
            assert add[a][0] == a and mul[a][1] == a
            if a:
                assert mul[a][self.inv[a]] == 1
            for b in els:
                assert add[a][b] == add[b][a] and mul[a][b] == mul[b][a]
                for c in els:
                    assert add[add[a][b]][c] == add[a][add[b][c]]
                    assert mul[mul[a][b]][c] == mul[a][mul[b][c]]
                    assert mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]]

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self.q == other.q and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec(q={self.q})"

    def to_json(self) -> dict:
        out = {"q": self.q, "p": self.p, "e": self.e}
        if self.modulus is not None:
            out["modulus"] = list(self.modulus)
        return out


@lru_cache(maxsize=None)
def gf(q: int) -> FieldSpec:
    """Shared :class:`FieldSpec` for ``q``."""
    return FieldSpec(q)


def as_field(f: FieldSpec | int) -> FieldSpec:
    return f if isinstance(f, FieldSpec) else gf(f)


# --- matrices ---------------------------------------------------------------


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def zero_matrix(n: int, m: int) -> Matrix:
    return tuple((0,) * m for _ in range(n))


def elementary(n: int, m: int, i: int, j: int) -> Matrix:
    """``E_ij``: one at ``(i, j)``, zero elsewhere."""
    return tuple(tuple(1 if (r, c) == (i, j) else 0 for c in range(m)) for r in range(n))


def transpose(M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not M:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*M))


def flatten(M: Matrix) -> Vector:
    return tuple(x for row in M for x in row)


def unflatten(v: Sequence[int], n: int, m: int) -> Matrix:
    return tuple(tuple(v[r * m:(r + 1) * m]) for r in range(n))


def rref(M: Sequence[Sequence[int]], F: FieldSpec | int, ncols: int | None = None) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row echelon form.

    Returns ``(R, rank, pivots)``; ``R`` has the shape of ``M`` with the
    zero rows at the bottom.
    """
    F = as_field(F)
    A = [list(r) for r in M]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    nrows = len(A)
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        row = A[r]
        s = row[c]
        if s != 1:
            si = inv[s]
            row = A[r] = [mul[si][x] for x in row]
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(nrows):
            if i != r:
                f = A[i][c]
                if f:
                    nf = neg[f]
                    mrow = mul[nf]
                    Ai = A[i]
                    for j in nz:
                        Ai[j] = add[Ai[j]][mrow[row[j]]]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in A), r, tuple(pivots)


def rank(M: Sequence[Sequence[int]], F: FieldSpec | int, ncols: int | None = None) -> int:
    if not M:
        return 0
    return rref(M, F, ncols)[1]


def row_basis(M: Sequence[Sequence[int]], F: FieldSpec | int, ncols: int | None = None) -> Matrix:
    """Nonzero rows of the RREF: the canonical basis of the row space."""
    if not M:
        return ()
    R, r, _ = rref(M, F, ncols)
    return R[:r]


def nullspace(M: Sequence[Sequence[int]], F: FieldSpec | int, ncols: int) -> Matrix:
    """Basis (in RREF) of ``{x : M x = 0}`` in ``F^ncols``."""
    F = as_field(F)
    if not M:
        return tuple(tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols))
    R, r, piv = rref(M, F, ncols)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for row_i, pc in enumerate(piv):
            v[pc] = F.neg[R[row_i][f]]
        basis.append(v)
    return row_basis(basis, F, ncols) if basis else ()


def vec_dot(u: Sequence[int], v: Sequence[int], F: FieldSpec) -> int:
    add, mul = F.add, F.mul
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = add[s][mul[a][b]]
    return s


def lin_comb(coeffs: Sequence[int], vectors: Sequence[Sequence[int]], F: FieldSpec, length: int) -> Vector:
    add, mul = F.add, F.mul
    out = [0] * length
    for c, vec in zip(coeffs, vectors):
        if c:
            mc = mul[c]
            for j, x in enumerate(vec):
                if x:
                    out[j] = add[out[j]][mc[x]]
    return tuple(out)


def mat_mul(A: Matrix, B: Matrix, F: FieldSpec) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(vec_dot(row, col, F) for col in Bt) for row in A)


def trace_pairing(M: Matrix, N: Matrix, F: FieldSpec | int) -> int:
    """``Tr(M N^T) = sum_ij M_ij N_ij``."""
    F = as_field(F)
    if len(M) != len(N) or any(len(a) != len(b) for a, b in zip(M, N)):
        raise ValueError("trace_pairing needs matrices of the same shape")
    return vec_dot(flatten(M), flatten(N), F)


# --- subspaces --------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``F_q^ambient`` held by its RREF basis (canonical)."""

    ambient: int
    basis: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def span(cls, vectors: Sequence[Sequence[int]], ambient: int, F: FieldSpec | int) -> "Subspace":
        return cls(ambient, row_basis(as_matrix(vectors), F, ambient))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, tuple(tuple(1 if j == i else 0 for j in range(ambient)) for i in range(ambient)))

    def perp(self, F: FieldSpec | int) -> "Subspace":
        """Orthogonal complement for the standard dot product."""
        return Subspace(self.ambient, nullspace(self.basis, F, self.ambient))

    def contains(self, v: Sequence[int], F: FieldSpec | int) -> bool:
        return rank(self.basis + (tuple(v),), F, self.ambient) == self.dim

    def is_subspace_of(self, other: "Subspace", F: FieldSpec | int) -> bool:
        return all(other.contains(v, F) for v in self.basis)

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "basis": [list(r) for r in self.basis]}


def row_space(M: Matrix, F: FieldSpec | int, ncols: int | None = None) -> Subspace:
    if ncols is None:
        ncols = len(M[0]) if M else 0
    return Subspace(ncols, row_basis(M, F, ncols))


def col_space(M: Matrix, F: FieldSpec | int, ncols: int | None = None) -> Subspace:
    nrows = len(M)
    if ncols is None:
        ncols = len(M[0]) if M else 0
    return Subspace(nrows, row_basis(transpose(M, ncols), F, nrows))


def count_subspaces(ambient: int, u: int, q: int) -> int:
    return int(qbin(ambient, u, q))


def enumerate_subspaces(ambient: int, u: int, q: FieldSpec | int, cap: int | None = None) -> Iterator[Subspace]:
    """Every ``u``-dimensional subspace of ``F_q^ambient`` exactly once.

    Order: pivot-column sets lexicographically, then the free entries of the
    RREF basis lexicographically.
    """
    qq = q.q if isinstance(q, FieldSpec) else q
    if not 0 <= u <= ambient:
        raise ValueError(f"u={u} outside [0, {ambient}]")
    check_budget(f"subspaces of dim {u} in F_{qq}^{ambient}", count_subspaces(ambient, u, qq), cap, SUBSPACE_CAP)
    if u == 0:
        yield Subspace(ambient, ())
        return
    for piv in combinations(range(ambient), u):
        pivset = set(piv)
        free = [(r, c) for r, p in enumerate(piv) for c in range(p + 1, ambient) if c not in pivset]
        for vals in product(range(qq), repeat=len(free)):
            rows = [[0] * ambient for _ in range(u)]
            for r, p in enumerate(piv):
                rows[r][p] = 1
            for (r, c), x in zip(free, vals):
                rows[r][c] = x
            yield Subspace(ambient, tuple(tuple(row) for row in rows))
