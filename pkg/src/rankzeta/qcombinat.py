"""Exact q-combinatorics: q-binomials, q-Bernstein polynomials, ordinary Bell
polynomials and truncated power series over the rationals.

All values are :class:`fractions.Fraction` (or ``int`` where the result is
known to be integral); nothing here touches floating point.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

Rational = Fraction


def qpow(q: int, e: int) -> Fraction:
    """``q**e`` as an exact rational, negative exponents allowed."""
    if e >= 0:
        return Fraction(q**e)
    return Fraction(1, q ** (-e))


def binom2(x: int) -> int:
    """The ordinary binomial coefficient ``C(x, 2)`` for any integer ``x``."""
    return x * (x - 1) // 2


@lru_cache(maxsize=None)
def _qbin_nonneg(a: int, b: int, q: int) -> int:
    # a >= b > 0
    num = 1
    den = 1
    for i in range(1, b + 1):
        num *= q ** (a - i + 1) - 1
        den *= q**i - 1
    return num // den


def qbin(a: int, b: int, q: int) -> Fraction:
    """Extended q-binomial coefficient ``[a b]_q`` for arbitrary integers.

    Cases:

    * ``b < 0`` or ``0 <= a < b``: 0
    * ``b == 0``: 1 (also for ``a < 0``)
    * ``a >= b > 0``: the usual product, a positive integer
    * ``a < 0 < b``: ``(-1)^b q^(ab - C(b,2)) [-a+b-1 b]_q``, generally a
      non-integral rational
    """
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if b < 0:
        return Fraction(0)
    if b == 0:
        return Fraction(1)
    if a >= b:
        return Fraction(_qbin_nonneg(a, b, q))
    if a >= 0:
        return Fraction(0)
    sign = -1 if b % 2 else 1
    return sign * qpow(q, a * b - binom2(b)) * qbin(-a + b - 1, b, q)


def qbin_product(a: int, b: int, q: int) -> Fraction:
    """``prod_{i=1}^b (q^(a-i+1) - 1)/(q^i - 1)`` evaluated directly.

    This is the polynomial continuation of the q-binomial in ``q^a``; it is
    kept separate from :func:`qbin` so the case analysis there can be
    checked against it.
    """
    if b < 0:
        return Fraction(0)
    val = Fraction(1)
    for i in range(1, b + 1):
        val *= (qpow(q, a - i + 1) - 1) / (q**i - 1)
    return val


def qbin_identities_check(a: int, b: int, c: int, q: int, which: Iterable[int] = (1, 2, 3)) -> bool:
    """Check the three classical q-binomial identities at one argument triple.

    1. ``[a b][b c] = [a c][a-c a-b]`` (only asserted for ``a, b, c >= 0``)
    2. ``sum_j [c j] (-1)^j q^C(j,2) a^(c-j) b^j = prod_{j<c} (a - q^j b)``
       with ``a, b`` read as numbers (empty product is 1; needs ``c >= 0``)
    3. q-Vandermonde, both forms.

    Identities whose argument restrictions are not met count as holding.
    """
    ok = True
    which = set(which)
    if 1 in which and a >= 0 and b >= 0 and c >= 0:
        ok &= qbin(a, b, q) * qbin(b, c, q) == qbin(a, c, q) * qbin(a - c, a - b, q)
    if 2 in which and c >= 0:
        lhs = sum(
            (qbin(c, j, q) * (-1) ** j * qpow(q, binom2(j)) * Fraction(a) ** (c - j) * Fraction(b) ** j
             for j in range(c + 1)),
            Fraction(0),
        )
        rhs = Fraction(1)
        for j in range(c):
            rhs *= a - qpow(q, j) * b
        ok &= lhs == rhs
    if 3 in which:
        lhs = qbin(a + b, c, q)
        r1 = sum((qpow(q, j * (b - c + j)) * qbin(a, j, q) * qbin(b, c - j, q) for j in range(c + 1)), Fraction(0))
        r2 = sum((qpow(q, (c - j) * (a - j)) * qbin(a, j, q) * qbin(b, c - j, q) for j in range(c + 1)), Fraction(0))
        ok &= lhs == r1 == r2
    return bool(ok)


def fmt_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str | int) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(s.strip())


def rational_json(x: Fraction | int) -> int | str:
    """JSON form of a rational: a bare int when integral, else ``"p/q"``."""
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


class HomogeneousPoly:
    """Homogeneous polynomial of fixed degree ``n`` in ``X, Y``.

    ``coeffs[w]`` multiplies ``X^(n-w) Y^w``.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Sequence[Fraction | int] | None = None):
        if degree < 0:
            raise ValueError("degree must be >= 0")
        if coeffs is None:
            coeffs = [0] * (degree + 1)
        if len(coeffs) != degree + 1:
            raise ValueError(f"need {degree + 1} coefficients, got {len(coeffs)}")
        self.degree = degree
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @classmethod
    def monomial(cls, n: int, t: int, coeff: Fraction | int = 1) -> "HomogeneousPoly":
        """``coeff * X^(n-t) Y^t``."""
        c = [0] * (n + 1)
        c[t] = coeff
        return cls(n, c)

    def __add__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return HomogeneousPoly(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        return self + other * -1

    def __mul__(self, other):
        if isinstance(other, HomogeneousPoly):
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return HomogeneousPoly(self.degree + other.degree, out)
        return HomogeneousPoly(self.degree, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.degree, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, x, y):
        return sum(c * Fraction(x) ** (self.degree - w) * Fraction(y) ** w for w, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        return f"HomogeneousPoly({self.degree}, [{', '.join(fmt_rational(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        n = self.degree
        terms = []
        for w, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = ""
            if n - w:
                mono += "X" + (f"^{n - w}" if n - w > 1 else "")
            if w:
                mono += "Y" + (f"^{w}" if w > 1 else "")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mag.denominator != 1 and mono:
                body = f"({fmt_rational(mag)}){mono}"
            else:
                body = fmt_rational(mag) + mono
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [rational_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "HomogeneousPoly":
        return cls(int(obj["degree"]), [parse_rational(c) for c in obj["coeffs"]])


class TruncatedSeries:
    """Power series in ``T`` known modulo ``T^(order+1)``.

    Binary operations require equal orders; use :meth:`truncate` to align
    explicitly.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence[Fraction | int], order: int | None = None):
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = [Fraction(c) for c in coeffs[: order + 1]]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order)

    def __getitem__(self, u: int) -> Fraction:
        if u < 0:
            return Fraction(0)
        if u > self.order:
            raise IndexError(f"coefficient {u} beyond truncation order {self.order}")
        return self.coeffs[u]

    def _check(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected TruncatedSeries")
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}; truncate explicitly")

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series known to order {self.order} to {order}")
        return TruncatedSeries(self.coeffs, order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        self._check(other)
        N = self.order
        out = [Fraction(0)] * (N + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(N + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(out, N)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * series_reciprocal(other)
        return TruncatedSeries([c / other for c in self.coeffs], self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def degree(self) -> int:
        """Index of the last nonzero coefficient (-1 for zero)."""
        for u in range(self.order, -1, -1):
            if self.coeffs[u]:
                return u
        return -1

    def __repr__(self) -> str:
        return f"TruncatedSeries([{', '.join(fmt_rational(c) for c in self.coeffs)}], order={self.order})"

    def __str__(self) -> str:
        out = ""
        for u, c in enumerate(self.coeffs):
            if c == 0:
                continue
            t = "" if u == 0 else ("T" if u == 1 else f"T^{u}")
            mag = abs(c)
            if t and mag == 1:
                body = t
            elif t and mag.denominator != 1:
                body = f"({fmt_rational(mag)}){t}"
            else:
                body = fmt_rational(mag) + t
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return (out or "0") + f" + O(T^{self.order + 1})"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [rational_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "TruncatedSeries":
        return cls([parse_rational(c) for c in obj["coeffs"]], int(obj["order"]))


class SingularSeriesError(ZeroDivisionError):
    """Raised when inverting a series with zero constant term."""


def series_reciprocal(Q: TruncatedSeries) -> TruncatedSeries:
    """``1/Q`` modulo ``T^(N+1)`` by long division."""
    c0 = Q.coeffs[0]
    if c0 == 0:
        raise SingularSeriesError("series has zero constant term")
    N = Q.order
    y = [Fraction(0)] * (N + 1)
    y[0] = 1 / c0
    for a in range(1, N + 1):
        s = sum((Q.coeffs[j] * y[a - j] for j in range(1, a + 1)), Fraction(0))
        y[a] = -s / c0
    return TruncatedSeries(y, N)


def series_reciprocal_bell(Q: TruncatedSeries) -> TruncatedSeries:
    """``1/Q`` through ordinary Bell polynomials.

    Writing ``Q = c0 (1 - sum_{u>=1} (c_u/c0) T^u)`` with ``c_u = -Q_u``, the
    reciprocal of the bracket has coefficients ``c0^-a P_a(c0, c1, ..., ca)``.
    """
    c0 = Q.coeffs[0]
    if c0 == 0:
        raise SingularSeriesError("series has zero constant term")
    x = [c0] + [-c for c in Q.coeffs[1:]]
    vals = bell_full_all(Q.order, x)
    return TruncatedSeries([v / c0 ** (a + 1) for a, v in enumerate(vals)], Q.order)


def bernstein(n: int, u: int, q: int) -> HomogeneousPoly:
    """q-Bernstein polynomial ``[n u]_q Y^u prod_{j<n-u} (X - q^j Y)``."""
    if not 0 <= u <= n:
        raise ValueError(f"u={u} outside [0, {n}]")
    # coefficients of prod (X - q^j Y) in ascending Y-degree, degree n-u
    poly = [Fraction(1)]
    for j in range(n - u):
        nxt = [Fraction(0)] * (len(poly) + 1)
        for w, c in enumerate(poly):
            nxt[w] += c
            nxt[w + 1] -= c * q**j
        poly = nxt
    c = qbin(n, u, q)
    return HomogeneousPoly(n, [Fraction(0)] * u + [c * p for p in poly])


def monomial_in_bernstein_basis(n: int, t: int, q: int) -> list[Fraction]:
    """Coefficients ``lam_u`` (``t <= u <= n``) with ``X^(n-t) Y^t = sum lam_u B_{n,u}``."""
    if not 0 <= t <= n:
        raise ValueError(f"t={t} outside [0, {n}]")
    inv = 1 / qbin(n, t, q)
    return [inv * qbin(u, t, q) for u in range(t, n + 1)]


def to_bernstein_basis(poly: HomogeneousPoly, q: int) -> list[Fraction]:
    """Coordinates of ``poly`` in the basis ``B_{n,0}, ..., B_{n,n}``."""
    n = poly.degree
    out = [Fraction(0)] * (n + 1)
    for t, c in enumerate(poly.coeffs):
        if c:
            for off, lam in enumerate(monomial_in_bernstein_basis(n, t, q)):
                out[t + off] += c * lam
    return out


def from_bernstein_basis(coords: Sequence[Fraction], n: int, q: int) -> HomogeneousPoly:
    total = HomogeneousPoly(n)
    for u, c in enumerate(coords):
        if c:
            total = total + bernstein(n, u, q) * c
    return total


# --- Bell polynomials -------------------------------------------------------


def _need(x: Sequence, count: int, what: str) -> None:
    if len(x) < count:
        raise ValueError(f"{what} needs arguments x_0..x_{count - 1}, got {len(x)}")


def _bell_table(a_max: int, x: Sequence[Fraction]) -> list[list[Fraction]]:
    """``table[b][a] = P_{a,b}(x)`` for ``0 <= b, a <= a_max``.

    Row ``b`` holds the coefficients of ``S(X)^b`` where
    ``S(X) = sum_{j>=1} x_j x_0^(j-1) X^j``.
    """
    x0 = Fraction(x[0]) if x else Fraction(0)
    S = [Fraction(0)] * (a_max + 1)
    pw = Fraction(1)
    for j in range(1, a_max + 1):
        if j < len(x):
            S[j] = Fraction(x[j]) * pw
        pw *= x0
    table = [[Fraction(0)] * (a_max + 1) for _ in range(a_max + 1)]
    table[0][0] = Fraction(1)
    for b in range(1, a_max + 1):
        prev = table[b - 1]
        row = table[b]
        for i in range(b - 1, a_max + 1):
            if prev[i]:
                for j in range(1, a_max + 1 - i):
                    if S[j]:
                        row[i + j] += prev[i] * S[j]
    return table


def bell_partial(a: int, b: int, x: Sequence[Fraction | int]) -> Fraction:
    """Homogeneous ordinary partial Bell polynomial ``P_{a,b}`` evaluated at ``x``."""
    if a < 0 or b < 0:
        raise ValueError("a and b must be non-negative")
    if b > a:
        return Fraction(0)
    if b == 0:
        return Fraction(1 if a == 0 else 0)
    _need(x, a - b + 2, f"P_{{{a},{b}}}")
    return _bell_table(a, x)[b][a]


def bell_full(a: int, x: Sequence[Fraction | int]) -> Fraction:
    """``P_a(x) = sum_b P_{a,b}(x)``."""
    if a == 0:
        return Fraction(1)
    _need(x, a + 1, f"P_{a}")
    table = _bell_table(a, x)
    return sum((table[b][a] for b in range(a + 1)), Fraction(0))


def bell_full_all(a_max: int, x: Sequence[Fraction | int]) -> list[Fraction]:
    """``[P_0(x), ..., P_{a_max}(x)]`` sharing one table."""
    if a_max > 0:
        _need(x, a_max + 1, f"P_{a_max}")
    table = _bell_table(a_max, x)
    return [sum((table[b][a] for b in range(a + 1)), Fraction(0)) for a in range(a_max + 1)]


def compositions(a: int, b: int):
    """All compositions of ``a`` into ``b`` positive parts."""
    if b == 0:
        if a == 0:
            yield ()
        return
    for cuts in combinations(range(1, a), b - 1):
        bounds = (0,) + cuts + (a,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(b))


def bell_partial_monomials(a: int, b: int) -> dict[tuple[int, ...], int]:
    """Symbolic ``P_{a,b}``: exponent vectors over ``x_0..x_a`` mapped to coefficients."""
    terms: Counter = Counter()
    for comp in compositions(a, b):
        exps = [0] * (a + 1)
        exps[0] = a - b
        for part in comp:
            exps[part] += 1
        terms[tuple(exps)] += 1
    return dict(terms)


def bell_full_monomials(a: int) -> dict[tuple[int, ...], int]:
    """Symbolic ``P_a = sum_{b=1}^{a} P_{a,b}`` (``P_0 = 1``)."""
    if a == 0:
        return {(0,): 1}
    out: dict[tuple[int, ...], int] = {}
    for b in range(1, a + 1):
        for e, c in bell_partial_monomials(a, b).items():
            out[e] = out.get(e, 0) + c
    return out


def format_monomials(terms: dict[tuple[int, ...], int]) -> str:
    """``3x_0^2x_1^2x_3 + ...``, grouped by the power of ``x_0``."""
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, key=lambda e: (e[0], [-x for x in e[1:]])):
        c = terms[e]
        body = "".join(f"x_{j}" + (f"^{x}" if x > 1 else "") for j, x in enumerate(e) if x)
        lead = "" if c == 1 and body else str(c)
        parts.append(lead + body)
    return " + ".join(parts)


def bell_partial_by_compositions(a: int, b: int, x: Sequence[Fraction | int]) -> Fraction:
    """Reference evaluation of ``P_{a,b}`` by summing over compositions.

    Exponential in ``a``; only for checking :func:`bell_partial`.
    """
    if b == 0:
        return Fraction(1 if a == 0 else 0)
    if b > a:
        return Fraction(0)
    total = Fraction(0)
    for comp in compositions(a, b):
        term = Fraction(x[0]) ** (a - b)
        for part in comp:
            term *= x[part]
        total += term
    return total
