"""Cross-checks of every fast formula against an independent computation.

Each check yields PASS, FAIL or SKIP (enumeration budget exceeded).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .budget import EnumerationBudgetError
from .classify import is_iBMD, is_iMRD, minimal_bmd_index, wei_dual_weights
from .duality import (
    dual_normalized_moments,
    dual_rank_distribution,
    dual_zeta,
    moment_table,
    moments_of_dual_to_primal,
    primal_to_dual_moments,
)
from .gflinalg import count_subspaces
from .invariants import (
    InvariantProfile,
    binomial_moments,
    distribution_to_moments,
    moments_to_distribution,
    normalized_moments,
    profile,
    rank_distribution,
    rank_distribution_oracle,
)
from .qcombinat import qbin
from .rmcode import (
    RankMetricCode,
    dual_distance,
    generalized_weights,
    generalized_weights_oracle,
    min_distance,
)
from .zeta import (
    InternalConsistencyError,
    beta_coefficients,
    bmd_reference,
    default_order,
    enumerator_from_beta,
    enumerator_from_zeta,
    zeta_polynomial,
    zeta_series,
)

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


class _Mismatch(Exception):
    pass


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise _Mismatch(msg)


def _run(name: str, fn: Callable[[], None]) -> CheckResult:
    try:
        fn()
    except EnumerationBudgetError as exc:
        return CheckResult(name, SKIP, str(exc))
    except (_Mismatch, InternalConsistencyError) as exc:
        return CheckResult(name, FAIL, str(exc))
    return CheckResult(name, PASS)


def code_checks(C: RankMetricCode, cap: int | None = None) -> list[tuple[str, Callable[[], None]]]:
    n, m, k, q = C.n, C.m, C.k, C.q
    D = C.dual

    def weights():
        _expect(generalized_weights(C, cap) == generalized_weights_oracle(C, cap), "anticode weights != subcode weights")

    def dual_weights():
        _expect(generalized_weights(D, cap) == generalized_weights_oracle(D, cap), "dual weights != subcode weights")

    def dist():
        d = generalized_weights(C)[1] if k else n + 1
        _expect(d == min_distance(C, cap), "d_1 != minimum rank of codewords")
        _expect(dual_distance(C) == min_distance(D, cap), "d(C-perp) != minimum rank of dual codewords")

    def wei():
        _expect(wei_dual_weights(C) == generalized_weights(D), "Wei duality of C != weights of C-perp")
        _expect(wei_dual_weights(D) == generalized_weights(C), "Wei duality of C-perp != weights of C")

    def qbin_counts():
        for u in range(n + 1):
            _expect(qbin(n, u, q) == count_subspaces(n, u, q), f"[{n} {u}]_{q} != subspace count")

    def distribution():
        for i in range(k + 1):
            _expect(rank_distribution(C, i, cap) == rank_distribution_oracle(C, i, cap),
                    f"A^({i}) from moments != subcode count")

    def roundtrip():
        for i in range(k + 1):
            B = binomial_moments(C, i, cap)
            _expect(distribution_to_moments(moments_to_distribution(B, n, q), n, q) == B, f"B->A->B at i={i}")

    def zeta_poly():
        for i in range(k + 1):
            zeta_polynomial(C, i)

    def zeta_enum():
        for i in range(k + 1):
            _expect(enumerator_from_zeta(C, i) == profile(C, i, cap).W, f"zeta extraction != W^({i})")

    def beta():
        for i in range(k + 1):
            W = profile(C, i, cap).W
            for tau in range(m):
                b = beta_coefficients(C, i, tau)
                _expect(enumerator_from_beta(C, i, tau, b) == W, f"sum beta M != W^({i}) at tau={tau}")

    def zmrdp():
        for i in range(k + 1):
            N = default_order(C, i)
            Z = zeta_series(C, i, N)
            P = zeta_polynomial(C, i, Z=Z)
            for tau in range(m):
                ref = bmd_reference(tau, i, q, m, n, N)
                _expect(ref.Z * P == Z * ref.P, f"Z_tau P_C != Z_C P_tau at i={i}, tau={tau}")

    def bmd_closed_form():
        tau = k % m
        for i in range(k + 1):
            if is_iBMD(C, i):
                Z = zeta_series(C, i)
                ref = bmd_reference(tau, i, q, m, n, Z.order)
                _expect(Z == ref.Z, f"i-BMD zeta != reference at i={i}")

    def macwilliams():
        TC = moment_table(C, k + 1)
        TD = moment_table(D, k + 1)
        for i in range(k + 1):
            _expect(moments_of_dual_to_primal(TD, n, m, k, i, q) == TC[i], f"MacWilliams fails at i={i}")
        _expect(primal_to_dual_moments(TC, n, m, k, q) == TD, "inverse MacWilliams != dual moments")

    def dual_transforms():
        AD = [rank_distribution(D, j) if j <= D.k else [Fraction(0)] * (n + 1) for j in range(k + 1)]
        for i in range(k + 1):
            _expect(dual_rank_distribution(AD, n, m, k, i, q) == rank_distribution(C, i),
                    f"dual rank distribution at i={i}")
            b = dual_normalized_moments(D, i)
            _expect(b == normalized_moments(C, i)[: len(b)], f"dual normalized moments at i={i}")
            if b:
                Z = dual_zeta(D, i)
                _expect(Z == zeta_series(C, i, Z.order), f"dual zeta at i={i}")

    def implications():
        for i in range(1, k + 1):
            if is_iBMD(C, i):
                _expect(is_iMRD(C, i), f"{i}-BMD but not {i}-MRD")
            if i + m <= k and is_iMRD(C, i):
                _expect(is_iMRD(C, i + m), f"{i}-MRD but not {i + m}-MRD")
        i0 = minimal_bmd_index(C)
        if i0 is not None and i0 >= 2 and k >= 1:
            _expect(not is_iMRD(C, i0 - 1), f"minimally {i0}-BMD but {i0 - 1}-MRD")
        if k and is_iBMD(C, k):
            _expect(generalized_weights(C)[k] == n, "k-BMD but d_k != n")

    return [
        ("generalized weights", weights),
        ("dual generalized weights", dual_weights),
        ("minimum distances", dist),
        ("wei duality", wei),
        ("qbin vs subspace count", qbin_counts),
        ("rank distribution vs subcodes", distribution),
        ("moment/distribution round trip", roundtrip),
        ("zeta polynomial degree bound", zeta_poly),
        ("enumerator from zeta", zeta_enum),
        ("beta: Bell vs division, W reconstruction", beta),
        ("Z_tau P_C = Z_C P_tau", zmrdp),
        ("BMD closed form", bmd_closed_form),
        ("MacWilliams identity", macwilliams),
        ("dual transforms", dual_transforms),
        ("classification implications", implications),
    ]


def run_code_checks(C: RankMetricCode, cap: int | None = None) -> list[CheckResult]:
    return [_run(name, fn) for name, fn in code_checks(C, cap)]


def profile_checks(C: RankMetricCode, obj: dict) -> list[tuple[str, Callable[[], None]]]:
    """Identities a stored profile must satisfy, internal ones first."""
    n, q = C.n, C.q

    def parsed() -> InvariantProfile:
        try:
            return InvariantProfile.from_json(obj)
        except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise _Mismatch(f"malformed profile: {exc}") from None

    def shape():
        p = parsed()
        _expect(len(p.B) == n + 1 and len(p.A) == n + 1 and p.W.degree == n, "profile lengths do not match n")

    def inversion():
        p = parsed()
        _expect(moments_to_distribution(list(p.B), n, q) == list(p.A), "A != inversion of B")

    def enumerator():
        p = parsed()
        _expect(list(p.W.coeffs) == list(p.A), "W coefficients != A")

    def normalized():
        p = parsed()
        for u, b in enumerate(p.b):
            w = u + p.d_i
            if w <= n - dual_distance(C):
                _expect(b == p.B[w] / qbin(n, w, q), f"b_{u} != B_{w}/[{n} {w}]")

    def recompute():
        p = parsed()
        _expect(0 <= p.i <= C.k, f"profile index {p.i} outside [0, {C.k}]")
        fresh = profile(C, p.i)
        for field in ("d_i", "B", "A", "b", "W"):
            _expect(getattr(fresh, field) == getattr(p, field), f"stored {field} != recomputed {field}")

    return [
        ("profile shape", shape),
        ("profile B->A inversion", inversion),
        ("profile W = sum A_w X^(n-w) Y^w", enumerator),
        ("profile b_u = B_(u+d_i)/[n u+d_i]", normalized),
        ("profile matches recomputation", recompute),
    ]


def run_profile_checks(C: RankMetricCode, obj: dict) -> list[CheckResult]:
    return [_run(name, fn) for name, fn in profile_checks(C, obj)]


def first_failure(results: list[CheckResult]) -> CheckResult | None:
    for r in results:
        if r.status == FAIL:
            return r
    return None
