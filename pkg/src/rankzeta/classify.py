"""BMD / MRD / QMRD predicates and Wei-type duality of the weight hierarchy."""

from __future__ import annotations

from dataclasses import dataclass

from .rmcode import RankMetricCode, distance, dual_distance, generalized_weights


def _d(C: RankMetricCode, i: int) -> int:
    # d_1 of the zero code is n + 1, so {0} counts as 1-BMD
    if C.k == 0 and i == 1:
        return C.n + 1
    return generalized_weights(C)[i]


def is_iBMD(C: RankMetricCode, i: int) -> bool:
    if not 0 <= i <= max(C.k, 1):
        raise ValueError(f"i={i} outside [0, k={C.k}]")
    return C.n - dual_distance(C) - _d(C, i) < 0


def minimal_bmd_index(C: RankMetricCode) -> int | None:
    """Smallest ``i >= 1`` with ``C`` ``i``-BMD; ``None`` if there is none."""
    top = max(C.k, 1)
    if not is_iBMD(C, top):
        return None
    lo, hi = 1, top
    while lo < hi:
        mid = (lo + hi) // 2
        if is_iBMD(C, mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def is_iMRD(C: RankMetricCode, i: int) -> bool:
    if not 1 <= i <= C.k:
        raise ValueError(f"i={i} outside [1, k={C.k}]")
    return generalized_weights(C)[i] == C.n - (C.k - i) // C.m


def is_MRD(C: RankMetricCode) -> bool:
    return C.k == C.m * (C.n - distance(C) + 1)


def is_QMRD(C: RankMetricCode) -> bool:
    if C.k % C.m == 0:
        return False
    return distance(C) == C.n - (-(-C.k // C.m)) + 1


def is_DQMRD(C: RankMetricCode) -> bool:
    return is_QMRD(C) and is_QMRD(C.dual)


def dual_weight_tuple(weights, n: int, m: int) -> tuple[int, ...]:
    """Weights ``(d_0, ..., d_{nm-k})`` of the dual from ``(d_0, ..., d_k)``.

    Within a residue class ``p mod m`` the dual weights are the complement in
    ``{1..n}`` of the reflected weights of ``C`` in class ``p + k``.
    """
    d = tuple(weights)
    k = len(d) - 1
    kd = n * m - k
    if k < 0 or kd < 0 or (k and d[0] != 0):
        raise ValueError(f"not a weight tuple for n={n}, m={m}: {d}")
    out = [0] * (kd + 1)
    for p in range(1, m + 1):
        own = {d[i] for i in range(1, k + 1) if (i - p - k) % m == 0}
        if len(own) != sum(1 for i in range(1, k + 1) if (i - p - k) % m == 0):
            raise ValueError(f"repeated weight in residue class {(p + k) % m} of {d}")
        if any(not 1 <= x <= n for x in own):
            raise ValueError(f"weight out of range in {d}")
        comp = sorted(set(range(1, n + 1)) - {n + 1 - x for x in own})
        slots = list(range(p, kd + 1, m))
        if len(comp) != len(slots):
            raise ValueError(f"inconsistent weight tuple {d} for n={n}, m={m}")
        for i, x in zip(slots, comp):
            out[i] = x
    return tuple(out)


def wei_dual_weights(C: RankMetricCode) -> tuple[int, ...]:
    """Weights of ``C``'s dual, derived from the weights of ``C`` alone."""
    return dual_weight_tuple(generalized_weights(C), C.n, C.m)


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    m: int
    k: int
    weights: tuple[int, ...]
    dual_distance: int
    is_iBMD: tuple[bool, ...]
    is_iMRD: tuple[bool | None, ...]
    minimal_bmd_index: int | None
    is_MRD: bool
    is_QMRD: bool
    is_DQMRD: bool
    alpha: int
    rho: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "weights": list(self.weights),
            "dual_distance": self.dual_distance,
            "is_iBMD": list(self.is_iBMD),
            "is_iMRD": list(self.is_iMRD),
            "minimal_bmd_index": self.minimal_bmd_index,
            "is_MRD": self.is_MRD,
            "is_QMRD": self.is_QMRD,
            "is_DQMRD": self.is_DQMRD,
            "alpha": self.alpha,
            "rho": self.rho,
        }


def classify(C: RankMetricCode) -> ClassificationReport:
    k = C.k
    alpha, rho = divmod(k, C.m)
    return ClassificationReport(
        n=C.n,
        m=C.m,
        k=k,
        weights=generalized_weights(C),
        dual_distance=dual_distance(C),
        is_iBMD=tuple(is_iBMD(C, i) for i in range(k + 1)),
        # i-MRD is undefined at i = 0
        is_iMRD=(None,) + tuple(is_iMRD(C, i) for i in range(1, k + 1)),
        minimal_bmd_index=minimal_bmd_index(C),
        is_MRD=is_MRD(C),
        is_QMRD=is_QMRD(C),
        is_DQMRD=is_DQMRD(C),
        alpha=alpha,
        rho=rho,
    )


def dqmrd_weights(n: int, m: int, k: int) -> tuple[int, ...]:
    """Weights ``(d_0, ..., d_k)`` every DQMRD code with these parameters must have."""
    if k % m == 0:
        raise ValueError("DQMRD needs m not dividing k")
    alpha, rho = divmod(k, m)
    out = [0]
    for i in range(1, k + 1):
        if i <= rho:
            out.append(n - alpha)
        elif i >= rho + 1 + (alpha - 1) * m:
            out.append(n)
        else:
            s = (i - rho - 1) // m
            out.append(n + 1 + s - alpha)
    return tuple(out)
