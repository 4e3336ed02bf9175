"""Hamming-metric block codes: generalized weights, the BMD predicate and
closed forms for BMD codes."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Sequence

from .budget import SUBCODE_CAP, check_budget
from .gflinalg import FieldSpec, as_field, enumerate_subspaces, lin_comb, nullspace, rank, row_basis
from .qcombinat import qbin
from .rmcode import DependentGeneratorsError, WeightTuple

STATED_REGIME = "q >= 3"


class BlockCode:
    """Linear code in ``F_q^n`` given by independent generator rows."""

    def __init__(self, field: FieldSpec | int, n: int, generators: Sequence[Sequence[int]] = ()):
        F = as_field(field)
        gens = [tuple(int(x) for x in g) for g in generators]
        for g in gens:
            if len(g) != n:
                raise ValueError(f"generator of length {len(g)}, expected {n}")
            if any(not 0 <= x < F.q for x in g):
                raise ValueError(f"generator entry outside F_{F.q}")
        basis = row_basis(gens, F, n)
        if len(basis) < len(gens):
            raise DependentGeneratorsError(f"{len(gens)} generators span only dimension {len(basis)}")
        self.field = F
        self.n = n
        self.generators = tuple(gens)
        self.basis = basis
        self.k = len(basis)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def in_stated_regime(self) -> bool:
        return self.q >= 3

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlockCode):
            return NotImplemented
        return (self.field, self.n, self.basis) == (other.field, other.n, other.basis)

    def __hash__(self) -> int:
        return hash((self.q, self.n, self.basis))

    def __repr__(self) -> str:
        return f"BlockCode(q={self.q}, n={self.n}, k={self.k})"

    @cached_property
    def dual(self) -> "BlockCode":
        return BlockCode(self.field, self.n, nullspace(self.basis, self.field, self.n))

    @cached_property
    def _support_dims(self) -> dict[frozenset, int]:
        """``dim C(S)`` for every coordinate set ``S``."""
        out = {}
        n, F = self.n, self.field
        for size in range(n + 1):
            for S in combinations(range(n), size):
                outside = [j for j in range(n) if j not in S]
                punct = [[row[j] for j in outside] for row in self.basis]
                out[frozenset(S)] = self.k - rank(punct, F, len(outside))
        return out

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "generators": [list(g) for g in self.generators]}


def block_code_from_json(obj: dict) -> BlockCode:
    for key in ("q", "n", "generators"):
        if key not in obj:
            raise ValueError(f"block code JSON is missing field '{key}'")
    return BlockCode(int(obj["q"]), int(obj["n"]), obj["generators"])


def random_block_code(q: int, n: int, k: int, rng: random.Random) -> BlockCode:
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    F = as_field(q)
    while True:
        vecs = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(k)]
        if rank(vecs, F, n) == k:
            return BlockCode(F, n, vecs)


def generalized_hamming_weights(C: BlockCode) -> WeightTuple:
    """``(d_0, ..., d_k)`` with ``d_i = min{|S| : dim C(S) >= i}``."""
    best = [C.n + 1] * (C.k + 1)
    for S, dim in C._support_dims.items():
        for i in range(dim + 1):
            best[i] = min(best[i], len(S))
    return tuple(best)


def generalized_hamming_weights_oracle(C: BlockCode, cap: int | None = None) -> WeightTuple:
    """Minimum support size over all ``i``-dimensional subcodes."""
    n, F = C.n, C.field
    out = [0]
    for i in range(1, C.k + 1):
        check_budget(f"{i}-dimensional subcodes", int(qbin(C.k, i, C.q)), cap, SUBCODE_CAP)
        best = n
        for S in enumerate_subspaces(C.k, i, C.q, cap=10**18):
            rows = [lin_comb(x, C.basis, F, n) for x in S.basis]
            best = min(best, sum(1 for j in range(n) if any(r[j] for r in rows)))
        out.append(best)
    return tuple(out)


def hamming_distance(C: BlockCode) -> int:
    return generalized_hamming_weights(C)[1] if C.k else C.n + 1


def hamming_dual_distance(C: BlockCode) -> int:
    return hamming_distance(C.dual)


def is_iBMD_hamming(C: BlockCode, i: int) -> bool:
    if not 0 <= i <= C.k:
        raise ValueError(f"i={i} outside [0, k={C.k}]")
    return C.n - hamming_dual_distance(C) - generalized_hamming_weights(C)[i] < 0


def is_iMDS(C: BlockCode, i: int) -> bool:
    if not 1 <= i <= C.k:
        raise ValueError(f"i={i} outside [1, k={C.k}]")
    return generalized_hamming_weights(C)[i] == C.n - C.k + i


def minimal_bmd_index_hamming(C: BlockCode) -> int | None:
    for i in range(1, C.k + 1):
        if is_iBMD_hamming(C, i):
            return i
    return None


def ibmd_iff_imds_check(C: BlockCode, i: int) -> bool:
    return is_iBMD_hamming(C, i) == is_iMDS(C, i)


def _require_bmd(C: BlockCode, j: int) -> None:
    i0 = minimal_bmd_index_hamming(C)
    if i0 is None or j < i0:
        raise ValueError(f"closed forms need a minimally i-BMD code with i <= j; got j={j}, minimal index {i0}")


def closed_form_b(C: BlockCode, j: int, u: int) -> Fraction:
    """``b_u^(j) = [k-n+u+d_j choose j]_q`` for a BMD code, 0 for ``u < 0``."""
    _require_bmd(C, j)
    if u < 0:
        return Fraction(0)
    return qbin(C.k - C.n + u + generalized_hamming_weights(C)[j], j, C.q)


def closed_form_A(C: BlockCode, j: int, w: int) -> Fraction:
    """``A_w^(j) = C(n,w) sum_{u=d_j}^{w} (-1)^(w-u) C(w,u) [k-n+u choose j]_q``."""
    _require_bmd(C, j)
    d_j = generalized_hamming_weights(C)[j]
    return comb(C.n, w) * sum(
        ((-1) ** (w - u) * comb(w, u) * qbin(C.k - C.n + u, j, C.q) for u in range(d_j, w + 1)), Fraction(0)
    )


def hamming_binomial_moments(C: BlockCode, j: int) -> list[Fraction]:
    """``B_u^(j) = sum_{|S|=u} [dim C(S) choose j]_q``."""
    out = [Fraction(0)] * (C.n + 1)
    for S, dim in C._support_dims.items():
        out[len(S)] += qbin(dim, j, C.q)
    return out


def hamming_distribution(C: BlockCode, j: int) -> list[Fraction]:
    """``A_w^(j)`` by inverting the moments with ordinary binomials."""
    n = C.n
    B = hamming_binomial_moments(C, j)
    return [sum(((-1) ** (w - u) * comb(n - u, w - u) * B[u] for u in range(w + 1)), Fraction(0))
            for w in range(n + 1)]


def hamming_distribution_oracle(C: BlockCode, j: int, cap: int | None = None) -> list[Fraction]:
    """``A_w^(j)`` by counting ``j``-dimensional subcodes by support size."""
    check_budget(f"{j}-dimensional subcodes", int(qbin(C.k, j, C.q)), cap, SUBCODE_CAP)
    n, F = C.n, C.field
    counts = [0] * (n + 1)
    for S in enumerate_subspaces(C.k, j, C.q, cap=10**18):
        rows = [lin_comb(x, C.basis, F, n) for x in S.basis]
        counts[sum(1 for t in range(n) if any(r[t] for r in rows))] += 1
    return [Fraction(c) for c in counts]


def hamming_normalized_moment(C: BlockCode, j: int, u: int) -> Fraction:
    """``B_{u+d_j}^(j) / C(n, u+d_j)`` for ``0 <= u <= n - d_j``."""
    d_j = generalized_hamming_weights(C)[j]
    if not 0 <= u <= C.n - d_j:
        raise ValueError(f"u={u} outside [0, {C.n - d_j}]")
    return hamming_binomial_moments(C, j)[u + d_j] / comb(C.n, u + d_j)
