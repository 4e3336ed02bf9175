"""Zeta functions of rank-metric codes, BMD reference series and the
beta expansion of weight enumerators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .invariants import binomial_moments, normalized_moment, weight_enumerator
from .qcombinat import (
    HomogeneousPoly,
    TruncatedSeries,
    bernstein,
    binom2,
    bell_full_all,
    qbin,
    rational_json,
    series_reciprocal,
)
from .rmcode import RankMetricCode, dual_distance, generalized_weights


class InternalConsistencyError(RuntimeError):
    """Two computations that must agree did not."""


class DegenerateReferenceError(ZeroDivisionError):
    """The reference series has vanishing constant term."""


def degree_bound(C: RankMetricCode, i: int) -> int:
    return C.n - dual_distance(C) - generalized_weights(C)[i] + i + 1


def default_order(C: RankMetricCode, i: int) -> int:
    # 2n+2 can fall short of the degree bound for large i
    return max(2 * C.n + 2, degree_bound(C, i) + 2)


def zeta_factor(i: int, q: int, m: int, order: int) -> TruncatedSeries:
    """``prod_{j=0}^{i} (1 - q^(mj) T)`` expanded with the q-binomial theorem."""
    Q = q**m
    return TruncatedSeries(
        [qbin(i + 1, t, Q) * (-1) ** t * Q ** binom2(t) for t in range(min(i + 1, order) + 1)], order
    )


def zeta_series(C: RankMetricCode, i: int, order: int | None = None) -> TruncatedSeries:
    """``Z^(i) = sum_u b_u^(i) T^u`` modulo ``T^(order+1)``."""
    if order is None:
        order = default_order(C, i)
    if order < 0:
        raise ValueError("order must be >= 0")
    B = binomial_moments(C, i)
    return TruncatedSeries([normalized_moment(C, i, u, B) for u in range(order + 1)], order)


def zeta_polynomial(C: RankMetricCode, i: int, order: int | None = None,
                    Z: TruncatedSeries | None = None) -> TruncatedSeries:
    """``P^(i) = Z^(i) prod_{j<=i} (1 - q^(mj) T)``, checked to vanish above the degree bound."""
    bound = degree_bound(C, i)
    if Z is None:
        Z = zeta_series(C, i, order)
    if Z.order <= bound:
        raise ValueError(f"order {Z.order} does not pass the degree bound {bound}")
    P = Z * zeta_factor(i, C.q, C.m, Z.order)
    for u in range(max(bound + 1, 0), P.order + 1):
        if P[u] != 0:
            raise InternalConsistencyError(f"P^({i}) has coefficient {P[u]} at T^{u} above bound {bound}")
    return P


# --- reference objects -------------------------------------------------------


def reference_moment(tau: int, j: int, u: int, q: int, m: int) -> Fraction:
    """``b_{tau,u}^(j)``; zero for ``u < 0``."""
    if u < 0:
        return Fraction(0)
    return qbin(tau + m * (u - (tau - j) // m), j, q)


def m_polynomial(tau: int, j: int, r: int, q: int, m: int, n: int) -> HomogeneousPoly:
    """``M_{tau,r}^(j) = sum_{u=0}^{n-r} b_{tau,u}^(j) B_{n,u+r}``."""
    total = HomogeneousPoly(n)
    for u in range(n - r + 1):
        total = total + bernstein(n, u + r, q) * reference_moment(tau, j, u, q, m)
    return total


@dataclass(frozen=True)
class BmdReference:
    tau: int
    j: int
    q: int
    m: int
    n: int
    b: tuple[Fraction, ...]
    p: tuple[Fraction, ...]
    Z: TruncatedSeries
    P: TruncatedSeries
    M: tuple[HomogeneousPoly, ...]

    def to_json(self) -> dict:
        return {
            "tau": self.tau,
            "j": self.j,
            "Z": self.Z.to_json(),
            "P": self.P.to_json(),
            "M": [x.to_json() for x in self.M],
        }


def bmd_reference(tau: int, j: int, q: int, m: int, n: int, order: int | None = None) -> BmdReference:
    if not 0 <= tau < m:
        raise ValueError(f"tau={tau} outside [0, {m - 1}]")
    if order is None:
        order = max(2 * n + 2, j + 2)
    b = [reference_moment(tau, j, u, q, m) for u in range(order + 1)]
    Q = q**m
    p = [
        sum(
            (qbin(j + 1, t, Q) * (-1) ** t * Q ** binom2(t) * reference_moment(tau, j, u - t, q, m)
             for t in range(j + 2)),
            Fraction(0),
        )
        for u in range(order + 1)
    ]
    Z = TruncatedSeries(b, order)
    P = TruncatedSeries(p, order)
    if P.degree() > j:
        raise InternalConsistencyError(f"P_{tau}^({j}) has degree {P.degree()} > {j}")
    M = tuple(m_polynomial(tau, j, r, q, m, n) for r in range(n + 1))
    return BmdReference(tau, j, q, m, n, tuple(b), tuple(p), Z, P, M)


def phi(n: int, q: int) -> list[HomogeneousPoly]:
    """Coefficients of ``phi_n(X,Y,T) = sum_u B_{n,u} T^(n-u)``, indexed by the power of ``T``."""
    return [bernstein(n, n - t, q) for t in range(n + 1)]


def enumerator_from_zeta(C: RankMetricCode, i: int, Z: TruncatedSeries | None = None) -> HomogeneousPoly:
    """Coefficient of ``T^(n-d_i)`` in ``Z^(i) phi_n``."""
    n = C.n
    d_i = generalized_weights(C)[i]
    if Z is None:
        Z = zeta_series(C, i, max(n - d_i, 0))
    ph = phi(n, C.q)
    total = HomogeneousPoly(n)
    for u in range(n - d_i + 1):
        total = total + ph[n - d_i - u] * Z[u]
    return total


# --- beta coefficients --------------------------------------------------------


def _bell_quotient(num: TruncatedSeries, den: TruncatedSeries, length: int) -> list[Fraction]:
    """Coefficients of ``num/den`` from Bell polynomials of ``den``."""
    c0 = den[0]
    if c0 == 0:
        raise DegenerateReferenceError("reference series has zero constant term")
    x = [c0] + [-den[a] for a in range(1, length)]
    P = bell_full_all(length - 1, x)
    return [
        sum((num[j] * P[u - j] / c0 ** (u - j + 1) for j in range(u + 1)), Fraction(0))
        for u in range(length)
    ]


def beta_coefficients(C: RankMetricCode, i: int, tau: int, order: int | None = None,
                      count: int | None = None) -> list[Fraction]:
    """``beta_{tau,0}^(i), ..., beta_{tau,n-d_i}^(i)``, or the first ``count`` of the series.

    Computed from the zeta polynomials through Bell polynomials, then checked
    against the same formula on the zeta series and against series division.
    """
    n = C.n
    length = n - generalized_weights(C)[i] + 1 if count is None else count
    if order is None:
        order = max(default_order(C, i), length - 1)
    if order < length - 1:
        raise ValueError(f"order {order} too small for {length} coefficients")
    # the P-based path needs P past its degree bound
    order = max(order, degree_bound(C, i) + 1)
    Z = zeta_series(C, i, order)
    P = zeta_polynomial(C, i, Z=Z)
    ref = bmd_reference(tau, i, C.q, C.m, n, order)
    if ref.P[0] == 0:
        raise DegenerateReferenceError(f"p_{{{tau},0}}^({i}) = 0")
    full = _bell_quotient(P, ref.P, order + 1)
    via_b = _bell_quotient(Z, ref.Z, order + 1)
    via_div = list((Z * series_reciprocal(ref.Z)).coeffs)
    if full != via_b or full != via_div:
        raise InternalConsistencyError("beta coefficients disagree between Bell and division paths")
    B = TruncatedSeries(full, order)
    if ref.Z * B != Z or ref.P * B != P:
        raise InternalConsistencyError("beta series fails Z_C = Z_tau * beta")
    return full[:length]


def enumerator_from_beta(C: RankMetricCode, i: int, tau: int,
                         beta: list[Fraction] | None = None) -> HomogeneousPoly:
    """``sum_j beta_{tau,j} M_{tau,d_i+j}``."""
    n, q, m = C.n, C.q, C.m
    d_i = generalized_weights(C)[i]
    if beta is None:
        beta = beta_coefficients(C, i, tau)
    total = HomogeneousPoly(n)
    for j, bj in enumerate(beta):
        if bj:
            total = total + m_polynomial(tau, i, d_i + j, q, m, n) * bj
    return total


@dataclass(frozen=True)
class ZetaProfile:
    i: int
    order: int
    Z: TruncatedSeries
    P: TruncatedSeries
    degree_bound: int
    tau: int | None = None
    beta: tuple[Fraction, ...] | None = None

    def to_json(self) -> dict:
        out = {
            "i": self.i,
            "order": self.order,
            "Z": [rational_json(c) for c in self.Z.coeffs],
            "P": [rational_json(c) for c in self.P.coeffs[: max(self.degree_bound, 0) + 1]],
            "degree_bound": self.degree_bound,
        }
        if self.beta is not None:
            out["beta"] = {"tau": self.tau, "values": [rational_json(c) for c in self.beta]}
        return out


def zeta_profile(C: RankMetricCode, i: int, order: int | None = None, tau: int | None = None) -> ZetaProfile:
    if order is None:
        order = default_order(C, i)
    bound = degree_bound(C, i)
    # P is verified one step past its bound even when Z is requested shorter
    work = max(order, bound + 1)
    Zw = zeta_series(C, i, work)
    P = zeta_polynomial(C, i, Z=Zw)
    if work > order:
        P = P.truncate(max(bound, 0))
    Z = Zw.truncate(order)
    beta = None
    if tau is not None:
        beta = tuple(beta_coefficients(C, i, tau))
    return ZetaProfile(i, order, Z, P, bound, tau, beta)


def check_enumerator_paths(C: RankMetricCode, i: int) -> HomogeneousPoly:
    """Weight enumerator from moments and from the zeta series; raises if they differ."""
    W = weight_enumerator(C, i)
    if enumerator_from_zeta(C, i) != W:
        raise InternalConsistencyError(f"zeta extraction disagrees with W^({i})")
    return W
