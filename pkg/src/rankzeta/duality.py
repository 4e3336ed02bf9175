"""MacWilliams identities for generalized binomial moments and the derived
transforms for normalized moments, zeta series and rank distributions.

Moment tables are indexed ``table[j][u] = B_u^(j)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .classify import wei_dual_weights
from .invariants import (
    binomial_moments,
    distribution_to_moments,
    moments_to_distribution,
    normalized_moment,
)
from .qcombinat import TruncatedSeries, qbin, qpow
from .rmcode import RankMetricCode, generalized_weights

Table = Sequence[Sequence[Fraction]]


def _coeff(j: int, i: int, K: int, q: int) -> Fraction:
    # q^{j(K-i+j)} [K choose i-j], K may be negative
    return qpow(q, j * (K - i + j)) * qbin(K, i - j, q)


def moments_of_dual_to_primal(Bdual: Table, n: int, m: int, k: int, i: int, q: int) -> list[Fraction]:
    """``B_u^(i)(C)`` for ``u = 0..n`` from the dual's moments ``B^(j)(C-perp)``, ``j <= i``.

    ``k`` is the dimension of ``C``.
    """
    if len(Bdual) < i + 1:
        raise ValueError(f"need dual moment rows j=0..{i}, got {len(Bdual)}")
    for j in range(i + 1):
        if len(Bdual[j]) != n + 1:
            raise ValueError(f"dual moment row {j} has length {len(Bdual[j])}, expected {n + 1}")
    out = []
    for u in range(n + 1):
        K = k - m * (n - u)
        out.append(sum((_coeff(j, i, K, q) * Bdual[j][n - u] for j in range(i + 1)), Fraction(0)))
    return out


def primal_to_dual_moments(B: Table, n: int, m: int, k: int, q: int) -> list[list[Fraction]]:
    """Invert the identity: rows ``B^(j)(C-perp)`` for ``j < len(B)``.

    The ``j = i`` term has coefficient ``q^(i(k-m(n-u)))``, so row ``i`` of the
    dual follows from row ``i`` of ``C`` and the dual rows already solved.
    """
    rows = len(B)
    dual: list[list[Fraction]] = []
    for i in range(rows):
        if len(B[i]) != n + 1:
            raise ValueError(f"moment row {i} has length {len(B[i])}, expected {n + 1}")
        row = [Fraction(0)] * (n + 1)
        for u in range(n + 1):
            K = k - m * (n - u)
            rest = sum((_coeff(j, i, K, q) * dual[j][n - u] for j in range(i)), Fraction(0))
            row[n - u] = (B[i][u] - rest) / qpow(q, i * K)
        dual.append(row)
    return dual


def moment_table(C: RankMetricCode, rows: int) -> list[list[Fraction]]:
    """Rows ``B^(j)(C)`` for ``j < rows``; rows past ``k`` are zero."""
    return [binomial_moments(C, j) if j <= C.k else [Fraction(0)] * (C.n + 1) for j in range(rows)]


def dual_normalized_moments(D: RankMetricCode, i: int) -> list[Fraction]:
    """``b_u^(i)(C)`` for ``0 <= u <= n - d_i - d``, where ``D = C-perp``.

    Uses only data of ``D``: its normalized moments, its weights and (through
    Wei duality) the weights of ``C``.
    """
    n, m, q = D.n, D.m, D.q
    k = n * m - D.k
    if not 0 <= i <= k:
        raise ValueError(f"i={i} outside [0, k={k}]")
    dC = wei_dual_weights(D)
    dD = generalized_weights(D)
    d_i = dC[i]
    d = dC[1] if k else n + 1
    top = n - d_i - d
    Bd = {j: binomial_moments(D, j) for j in range(min(i, D.k) + 1)}
    out = []
    for u in range(top + 1):
        K = k - m * (n - d_i - u)
        total = Fraction(0)
        for j in range(min(i, D.k) + 1):
            total += _coeff(j, i, K, q) * normalized_moment(D, j, n - u - dD[j] - d_i, Bd[j])
        out.append(total)
    return out


def dual_zeta(D: RankMetricCode, i: int) -> TruncatedSeries:
    """``Z^(i)(C)`` modulo ``T^(n-d_i-d+1)`` from the double sum over ``D = C-perp`` data."""
    n, m, q = D.n, D.m, D.q
    k = n * m - D.k
    if not 0 <= i <= k:
        raise ValueError(f"i={i} outside [0, k={k}]")
    dC = wei_dual_weights(D)
    dD = generalized_weights(D)
    d_i = dC[i]
    d = dC[1] if k else n + 1
    order = n - d_i - d
    if order < 0:
        raise ValueError(f"empty valid range: n - d_i - d = {order}")
    coeffs = [Fraction(0)] * (order + 1)
    for j in range(min(i, D.k) + 1):
        Bj = binomial_moments(D, j)
        outer = qpow(q, j * (k - m * dD[j] - i + j))
        for t in range(n - dD[j] - d_i + 1):
            e = n - d_i - dD[j] - t
            if e > order:
                continue
            inner = qbin(k - m * (t + dD[j]), i - j, q) / qpow(q, j * m * t)
            coeffs[e] += outer * inner * normalized_moment(D, j, t, Bj)
    return TruncatedSeries(coeffs, order)


def dual_rank_distribution(Adual: Table, n: int, m: int, k: int, i: int, q: int) -> list[Fraction]:
    """``A^(i)(C)`` from ``A^(j)(C-perp)``, ``j <= i``, with ``k = dim C``."""
    if len(Adual) < i + 1:
        raise ValueError(f"need dual distribution rows j=0..{i}, got {len(Adual)}")
    out = []
    for w in range(n + 1):
        total = Fraction(0)
        for u in range(w + 1):
            K = k - m * (n - u)
            inner = Fraction(0)
            for j in range(i + 1):
                Bj = sum((qbin(n - t, u, q) * Adual[j][t] for t in range(n - u + 1)), Fraction(0))
                inner += _coeff(j, i, K, q) * Bj
            total += (-1) ** (w - u) * qpow(q, (w - u) * (w - u - 1) // 2) * qbin(n - u, n - w, q) * inner
        out.append(total)
    return out


def dual_rank_distribution_composed(Adual: Table, n: int, m: int, k: int, i: int, q: int) -> list[Fraction]:
    """Same as :func:`dual_rank_distribution` via explicit moment tables."""
    Bdual = [distribution_to_moments(list(Adual[j]), n, q) for j in range(i + 1)]
    return moments_to_distribution(moments_of_dual_to_primal(Bdual, n, m, k, i, q), n, q)
