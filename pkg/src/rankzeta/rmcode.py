"""Matrix rank-metric codes: duals, supports, supported subcodes, optimal
anticodes and generalized rank weights."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Iterator, Sequence

from .budget import CODEWORD_CAP, check_budget
from .gflinalg import (
    FieldSpec,
    Matrix,
    Subspace,
    as_field,
    as_matrix,
    elementary,
    enumerate_subspaces,
    flatten,
    lin_comb,
    nullspace,
    rank,
    row_basis,
    transpose,
    unflatten,
)

WeightTuple = tuple[int, ...]


class DependentGeneratorsError(ValueError):
    pass


class RankMetricCode:
    """An F_q-linear subspace of ``n x m`` matrices, normalized to ``n <= m``.

    ``generators`` are kept as given (transposed if the input had
    ``n > m``); ``basis`` is the canonical RREF basis of the flattened code.
    """

    def __init__(self, field: FieldSpec | int, n: int, m: int, generators: Sequence[Matrix] = (),
                 strict: bool = True):
        F = as_field(field)
        gens = [as_matrix(G) for G in generators]
        for G in gens:
            if len(G) != n or any(len(row) != m for row in G):
                raise ValueError(f"generator of shape {len(G)}x{len(G[0]) if G else 0}, expected {n}x{m}")
            if any(not 0 <= x < F.q for row in G for x in row):
                raise ValueError(f"generator entry outside F_{F.q}")
        self.transposed = n > m
        if self.transposed:
            n, m = m, n
            gens = [transpose(G) for G in gens]
        self.field = F
        self.n, self.m = n, m
        flat = [flatten(G) for G in gens]
        basis = row_basis(flat, F, n * m)
        if len(basis) < len(gens):
            if strict:
                raise DependentGeneratorsError(f"{len(gens)} generators span only dimension {len(basis)}")
            gens = [unflatten(v, n, m) for v in basis]
        self.generators: tuple[Matrix, ...] = tuple(gens)
        self.basis = basis
        self.k = len(basis)
        self._weights: WeightTuple | None = None

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def basis_matrices(self) -> tuple[Matrix, ...]:
        return tuple(unflatten(v, self.n, self.m) for v in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankMetricCode):
            return NotImplemented
        return (self.field, self.n, self.m, self.basis) == (other.field, other.n, other.m, other.basis)

    def __hash__(self) -> int:
        return hash((self.q, self.n, self.m, self.basis))

    def __repr__(self) -> str:
        return f"RankMetricCode(q={self.q}, n={self.n}, m={self.m}, k={self.k})"

    @cached_property
    def dual(self) -> "RankMetricCode":
        ker = nullspace(self.basis, self.field, self.n * self.m)
        return RankMetricCode(self.field, self.n, self.m, [unflatten(v, self.n, self.m) for v in ker])

    def codewords(self, cap: int | None = None) -> Iterator[Matrix]:
        check_budget("codewords", self.q**self.k, cap, CODEWORD_CAP)
        nm = self.n * self.m
        for coeffs in product(range(self.q), repeat=self.k):
            yield unflatten(lin_comb(coeffs, self.basis, self.field, nm), self.n, self.m)

    def contains(self, M: Matrix) -> bool:
        return rank(self.basis + (flatten(as_matrix(M)),), self.field, self.n * self.m) == self.k

    # dims of supported subcodes, cached per subspace
    @cached_property
    def _col_dims(self) -> dict:
        return {}

    @cached_property
    def _row_dims(self) -> dict:
        return {}

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "m": self.m,
                "generators": [[list(r) for r in G] for G in self.generators]}


def make_code(field: FieldSpec | int, n: int, m: int, generators: Sequence[Matrix] = (),
              reduce: bool = False) -> RankMetricCode:
    """Build a code; dependent generators raise unless ``reduce`` is set."""
    return RankMetricCode(field, n, m, generators, strict=not reduce)


def zero_code(q: int, n: int, m: int) -> RankMetricCode:
    return RankMetricCode(q, n, m, [])


def full_space(q: int, n: int, m: int) -> RankMetricCode:
    return RankMetricCode(q, n, m, [elementary(n, m, i, j) for i in range(n) for j in range(m)])


def dual(C: RankMetricCode) -> RankMetricCode:
    return C.dual


def code_from_json(obj: dict) -> RankMetricCode:
    for key in ("q", "n", "m", "generators"):
        if key not in obj:
            raise ValueError(f"code JSON is missing field '{key}'")
    return RankMetricCode(int(obj["q"]), int(obj["n"]), int(obj["m"]), obj["generators"])


def load_code(path: str | Path) -> RankMetricCode:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return code_from_json(obj)


def random_code(q: int, n: int, m: int, k: int, rng: random.Random) -> RankMetricCode:
    """Uniformly random ``k``-dimensional code (rejection on dependence)."""
    if not 0 <= k <= n * m:
        raise ValueError("need 0 <= k <= nm")
    F = as_field(q)
    while True:
        vecs = [tuple(rng.randrange(q) for _ in range(n * m)) for _ in range(k)]
        if rank(vecs, F, n * m) == k:
            return RankMetricCode(F, n, m, [unflatten(v, n, m) for v in vecs])


# --- distances --------------------------------------------------------------


def matrix_rank(M: Matrix, F: FieldSpec) -> int:
    return rank(M, F, len(M[0]) if M else 0)


def min_distance(C: RankMetricCode, cap: int | None = None) -> int:
    """Minimum rank over nonzero codewords by enumeration; ``n+1`` for ``{0}``."""
    if C.k == 0:
        return C.n + 1
    return min(matrix_rank(M, C.field) for M in C.codewords(cap) if any(map(any, M)))


def maxrank(C: RankMetricCode, cap: int | None = None) -> int:
    if C.k == 0:
        return 0
    return max(matrix_rank(M, C.field) for M in C.codewords(cap))


# --- supports and supported subcodes ---------------------------------------


def _subcode_coeffs(C: RankMetricCode, constraint_rows: list[list[int]]) -> tuple:
    # constraint_rows[l] = linear image of basis element l; kernel of x -> x * rows
    width = len(constraint_rows[0]) if constraint_rows else 0
    if width == 0:
        return tuple(tuple(1 if j == i else 0 for j in range(C.k)) for i in range(C.k))
    return nullspace(transpose(constraint_rows), C.field, C.k)


def _col_constraints(C: RankMetricCode, U: Subspace) -> list[list[int]]:
    # colsp(M) <= U  iff  h^T M = 0 for every h in U-perp
    F = C.field
    H = U.perp(F).basis
    rows = []
    for B in C.basis_matrices:
        Bt = transpose(B)
        row = []
        for h in H:
            row.extend(_dot_cols(h, Bt, F))
        rows.append(row)
    return rows


def _row_constraints(C: RankMetricCode, U: Subspace) -> list[list[int]]:
    # rowsp(M) <= U  iff  M h = 0 for every h in U-perp
    F = C.field
    H = U.perp(F).basis
    rows = []
    for B in C.basis_matrices:
        row = []
        for h in H:
            row.extend(_dot_cols(h, B, F))
        rows.append(row)
    return rows


def _dot_cols(h, vectors, F) -> list[int]:
    add, mul = F.add, F.mul
    out = []
    for v in vectors:
        s = 0
        for a, b in zip(h, v):
            if a and b:
                s = add[s][mul[a][b]]
        out.append(s)
    return out


def _check_ambient(U: Subspace, expected: int, what: str) -> None:
    if U.ambient != expected:
        raise ValueError(f"{what}: subspace lives in F_q^{U.ambient}, expected F_q^{expected}")


def _subcode_from_coeffs(C: RankMetricCode, coeffs) -> RankMetricCode:
    nm = C.n * C.m
    gens = [unflatten(lin_comb(x, C.basis, C.field, nm), C.n, C.m) for x in coeffs]
    return RankMetricCode(C.field, C.n, C.m, gens)


def supported_subcode_col(C: RankMetricCode, U: Subspace) -> RankMetricCode:
    """``C(U) = {M in C : colsp(M) <= U}`` for ``U <= F_q^n``, by linear solving."""
    _check_ambient(U, C.n, "column support")
    if C.k == 0:
        return C
    return _subcode_from_coeffs(C, _subcode_coeffs(C, _col_constraints(C, U)))


def supported_subcode_row(C: RankMetricCode, U: Subspace) -> RankMetricCode:
    """``C[U] = {M in C : rowsp(M) <= U}`` for ``U <= F_q^m``."""
    _check_ambient(U, C.m, "row support")
    if C.k == 0:
        return C
    return _subcode_from_coeffs(C, _subcode_coeffs(C, _row_constraints(C, U)))


def dim_col_subcode(C: RankMetricCode, U: Subspace) -> int:
    cache = C._col_dims
    if U not in cache:
        _check_ambient(U, C.n, "column support")
        if C.k == 0 or U.dim == C.n:
            cache[U] = C.k
        else:
            rows = _col_constraints(C, U)
            cache[U] = C.k - rank(rows, C.field, len(rows[0]))
    return cache[U]


def dim_row_subcode(C: RankMetricCode, U: Subspace) -> int:
    cache = C._row_dims
    if U not in cache:
        _check_ambient(U, C.m, "row support")
        if C.k == 0 or U.dim == C.m:
            cache[U] = C.k
        else:
            rows = _row_constraints(C, U)
            cache[U] = C.k - rank(rows, C.field, len(rows[0]))
    return cache[U]


def supports_of_matrices(mats: Sequence[Matrix], F: FieldSpec, n: int, m: int) -> tuple[Subspace, Subspace]:
    """Column and row support of the span of ``mats``."""
    if not mats:
        return Subspace.zero(n), Subspace.zero(m)
    # column support: row space of the n x (len*m) block [M_1 | M_2 | ...] transposed
    cols = [col for M in mats for col in transpose(M)]
    rows = [row for M in mats for row in M]
    return Subspace(n, row_basis(cols, F, n)), Subspace(m, row_basis(rows, F, m))


def code_supports(D: RankMetricCode) -> tuple[Subspace, Subspace]:
    """``(colsupp(D), rowsupp(D))`` computed from the basis."""
    return supports_of_matrices(D.basis_matrices, D.field, D.n, D.m)


# --- optimal anticodes and generalized weights ------------------------------


@dataclass(frozen=True)
class Anticode:
    """``F^{n x m}(U)`` (kind ``"col"``) or ``F^{n x m}[U]`` (kind ``"row"``)."""

    kind: str
    subspace: Subspace

    @property
    def u(self) -> int:
        return self.subspace.dim

    def intersection_dim(self, C: RankMetricCode) -> int:
        if self.kind == "col":
            return dim_col_subcode(C, self.subspace)
        return dim_row_subcode(C, self.subspace)


def optimal_anticodes(n: int, m: int, q: FieldSpec | int, u: int, cap: int | None = None) -> Iterator[Anticode]:
    """All optimal anticodes of dimension ``m*u`` in ``F_q^{n x m}``.

    Column type always; row type as well when ``n == m`` (the two types
    coincide only for ``u in {0, n}``, where just the column one is emitted).
    """
    if not 0 <= u <= n:
        raise ValueError(f"u={u} outside [0, {n}]")
    subs = list(enumerate_subspaces(n, u, q, cap))
    for U in subs:
        yield Anticode("col", U)
    if n == m and 0 < u < n:
        for U in subs:
            yield Anticode("row", U)


def max_intersection_dims(C: RankMetricCode, cap: int | None = None) -> list[int]:
    """``[max_{A in A_u} dim(C cap A) for u in 0..n]``."""
    out = []
    for u in range(C.n + 1):
        best = 0
        for A in optimal_anticodes(C.n, C.m, C.field, u, cap):
            best = max(best, A.intersection_dim(C))
            if best == C.k:
                break
        out.append(best)
    return out


def generalized_weights(C: RankMetricCode, cap: int | None = None) -> WeightTuple:
    """``(d_0, d_1, ..., d_k)`` with ``d_0 = 0``."""
    if C._weights is not None:
        return C._weights
    best = max_intersection_dims(C, cap)
    d = [0]
    for i in range(1, C.k + 1):
        d.append(next(u for u in range(C.n + 1) if best[u] >= i))
    C._weights = tuple(d)
    return C._weights


def distance(C: RankMetricCode) -> int:
    """Minimum distance from the weight tuple (``n+1`` for the zero code)."""
    return generalized_weights(C)[1] if C.k else C.n + 1


def dual_distance(C: RankMetricCode) -> int:
    return distance(C.dual)


def check_weight_tuple(d: Sequence[int], n: int, m: int) -> list[str]:
    """Violated structural properties of a generalized weight tuple (empty if fine)."""
    k = len(d) - 1
    bad = []
    if d[0] != 0:
        bad.append("d_0 != 0")
    if k and d[k] > n:
        bad.append("d_k > n")
    for i in range(1, k):
        if d[i] > d[i + 1]:
            bad.append(f"d_{i} > d_{i + 1}")
    for i in range(1, k - m + 1):
        if not d[i] < d[i + m]:
            bad.append(f"d_{i} >= d_{i + m}")
    for i in range(1, k + 1):
        if d[i] > n - (k - i) // m:
            bad.append(f"d_{i} above n - floor((k-i)/m)")
        if d[i] < -(-i // m):
            bad.append(f"d_{i} below ceil(i/m)")
    return bad


def generalized_weights_oracle(C: RankMetricCode, cap: int | None = None) -> WeightTuple:
    """Weights as the least support dimension over ``i``-dimensional subcodes.

    Enumerates subcodes directly, so it shares nothing with the anticode
    computation in :func:`generalized_weights`.
    """
    from .budget import SUBCODE_CAP
    from .qcombinat import qbin

    n, m, F = C.n, C.m, C.field
    out = [0]
    for i in range(1, C.k + 1):
        check_budget(f"{i}-dimensional subcodes", int(qbin(C.k, i, C.q)), cap, SUBCODE_CAP)
        best = n
        for S in enumerate_subspaces(C.k, i, C.q, cap=10**18):
            mats = [unflatten(lin_comb(x, C.basis, F, n * m), n, m) for x in S.basis]
            col, row = supports_of_matrices(mats, F, n, m)
            best = min(best, col.dim, row.dim) if n == m else min(best, col.dim)
        out.append(best)
    return tuple(out)
