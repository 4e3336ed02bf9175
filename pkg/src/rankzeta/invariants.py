"""Generalized binomial moments, rank weight distributions, normalized
moments and weight enumerators, with a brute-force subcode oracle."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .budget import SUBCODE_CAP, check_budget
from .gflinalg import enumerate_subspaces, lin_comb, unflatten
from .qcombinat import (
    HomogeneousPoly,
    bernstein,
    binom2,
    from_bernstein_basis,
    qbin,
    rational_json,
)
from .rmcode import (
    RankMetricCode,
    dim_col_subcode,
    dim_row_subcode,
    dual_distance,
    generalized_weights,
    supports_of_matrices,
)


def _check_index(C: RankMetricCode, i: int) -> None:
    if not 0 <= i <= C.k:
        raise ValueError(f"i={i} outside [0, k={C.k}]")


def binomial_moments(C: RankMetricCode, i: int, cap: int | None = None) -> list[Fraction]:
    """``[B_0^(i), ..., B_n^(i)]``.

    Sums ``[dim C(U) choose i]_q`` over ``u``-dimensional ``U <= F_q^n``;
    for square codes the column and row sums are averaged.
    """
    _check_index(C, i)
    n, q = C.n, C.q
    square = C.n == C.m
    out = []
    for u in range(n + 1):
        total = Fraction(0)
        for U in enumerate_subspaces(n, u, q, cap):
            total += qbin(dim_col_subcode(C, U), i, q)
            if square:
                total += qbin(dim_row_subcode(C, U), i, q)
        out.append(total / 2 if square else total)
    for u, B in enumerate(out):
        if B.denominator != 1:
            warnings.warn(f"non-integral B_{u}^({i}) = {B}", stacklevel=2)
    return out


def moments_to_distribution(B: list[Fraction], n: int, q: int) -> list[Fraction]:
    """``A_w = sum_{u<=w} [n-u w-u] (-1)^(w-u) q^C(w-u,2) B_u``."""
    return [
        sum((qbin(n - u, w - u, q) * (-1) ** (w - u) * q ** binom2(w - u) * B[u] for u in range(w + 1)), Fraction(0))
        for w in range(n + 1)
    ]


def distribution_to_moments(A: list[Fraction], n: int, q: int) -> list[Fraction]:
    """``B_u = sum_{w<=u} [n-w u-w] A_w``."""
    return [sum((qbin(n - w, u - w, q) * A[w] for w in range(u + 1)), Fraction(0)) for u in range(n + 1)]


def rank_distribution(C: RankMetricCode, i: int, cap: int | None = None) -> list[Fraction]:
    """``[A_0^(i), ..., A_n^(i)]`` via inversion of the binomial moments."""
    return moments_to_distribution(binomial_moments(C, i, cap), C.n, C.q)


def rank_distribution_oracle(C: RankMetricCode, i: int, cap: int | None = None) -> list[Fraction]:
    """``A^(i)`` by enumerating every ``i``-dimensional subcode of ``C``."""
    _check_index(C, i)
    check_budget(f"{i}-dimensional subcodes", int(qbin(C.k, i, C.q)), cap, SUBCODE_CAP)
    n, m, F = C.n, C.m, C.field
    square = n == m
    counts = [0] * (n + 1)
    basis = C.basis
    for S in enumerate_subspaces(C.k, i, C.q, cap=10**18):
        mats = [unflatten(lin_comb(x, basis, F, n * m), n, m) for x in S.basis]
        colsupp, rowsupp = supports_of_matrices(mats, F, n, m)
        counts[colsupp.dim] += 1
        if square:
            counts[rowsupp.dim] += 1
    if square:
        return [Fraction(c, 2) for c in counts]
    return [Fraction(c) for c in counts]


def normalized_moment(C: RankMetricCode, i: int, u: int, B: list[Fraction] | None = None) -> Fraction:
    """``b_u^(i)`` for any integer ``u``, closed form past ``n - d_perp - d_i``."""
    if u < 0:
        return Fraction(0)
    n, m, k, q = C.n, C.m, C.k, C.q
    d_i = generalized_weights(C)[i]
    top = n - dual_distance(C) - d_i
    if u <= top:
        if B is None:
            B = binomial_moments(C, i)
        return B[u + d_i] / qbin(n, u + d_i, q)
    return qbin(k - m * (n - u - d_i), i, q)


def normalized_moments(C: RankMetricCode, i: int, B: list[Fraction] | None = None,
                       length: int | None = None) -> list[Fraction]:
    """``[b_0^(i), ..., b_{L-1}^(i)]``; ``L`` defaults to ``n - d_i + 1``."""
    _check_index(C, i)
    if B is None:
        B = binomial_moments(C, i)
    if length is None:
        length = C.n - generalized_weights(C)[i] + 1
    return [normalized_moment(C, i, u, B) for u in range(length)]


def enumerator_from_distribution(A: list[Fraction]) -> HomogeneousPoly:
    return HomogeneousPoly(len(A) - 1, A)


def weight_enumerator(C: RankMetricCode, i: int) -> HomogeneousPoly:
    """``W^(i)(X, Y) = sum_w A_w^(i) X^(n-w) Y^w``."""
    return enumerator_from_distribution(rank_distribution(C, i))


def bernstein_expansion(C: RankMetricCode, i: int) -> list[Fraction]:
    """Coefficients ``(b_0, ..., b_{n-d_i})`` attached to ``B_{n,d_i}, ..., B_{n,n}``."""
    return normalized_moments(C, i)


def enumerator_from_bernstein(coeffs: list[Fraction], d_i: int, n: int, q: int) -> HomogeneousPoly:
    return from_bernstein_basis([Fraction(0)] * d_i + list(coeffs), n, q)


def bernstein_polys(n: int, q: int) -> list[HomogeneousPoly]:
    return [bernstein(n, u, q) for u in range(n + 1)]


@dataclass(frozen=True)
class InvariantProfile:
    i: int
    d_i: int
    B: tuple[Fraction, ...]
    A: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    W: HomogeneousPoly

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "d_i": self.d_i,
            "B": [rational_json(x) for x in self.B],
            "A": [rational_json(x) for x in self.A],
            "b": [rational_json(x) for x in self.b],
            "W": self.W.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "InvariantProfile":
        from .qcombinat import parse_rational

        return cls(
            i=int(obj["i"]),
            d_i=int(obj["d_i"]),
            B=tuple(parse_rational(x) for x in obj["B"]),
            A=tuple(parse_rational(x) for x in obj["A"]),
            b=tuple(parse_rational(x) for x in obj["b"]),
            W=HomogeneousPoly.from_json(obj["W"]),
        )


def profile(C: RankMetricCode, i: int, cap: int | None = None) -> InvariantProfile:
    B = binomial_moments(C, i, cap)
    A = moments_to_distribution(B, C.n, C.q)
    return InvariantProfile(
        i=i,
        d_i=generalized_weights(C, cap)[i],
        B=tuple(B),
        A=tuple(A),
        b=tuple(normalized_moments(C, i, B)),
        W=enumerator_from_distribution(A),
    )
