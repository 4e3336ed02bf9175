"""Enumeration caps shared by the brute-force paths."""

from __future__ import annotations

import os

SUBSPACE_CAP = 10**7
CODEWORD_CAP = 2**24
SUBCODE_CAP = 10**6

ENV_VAR = "RANKZETA_BUDGET"

_override: int | None = None


class EnumerationBudgetError(RuntimeError):
    """An enumeration would exceed its configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: enumeration of {size} items exceeds budget {cap}")


def set_override(cap: int | None) -> None:
    """Process-wide cap used when no explicit cap is passed (CLI ``--budget``)."""
    global _override
    _override = cap


def resolve_cap(cap: int | None, default: int) -> int:
    """Explicit cap wins, then :func:`set_override`, then the environment, then ``default``."""
    if cap is not None:
        return cap
    if _override is not None:
        return _override
    env = os.environ.get(ENV_VAR)
    if env:
        return int(float(env))
    return default


def check_budget(what: str, size: int, cap: int | None, default: int) -> None:
    limit = resolve_cap(cap, default)
    if size > limit:
        raise EnumerationBudgetError(what, size, limit)
