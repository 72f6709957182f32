"""Truncated formal power series in t with polynomial-in-u coefficients.

The coefficient ring is Q[u], dense polynomials over exact rationals
(:class:`UPoly`).  A :class:`TruncatedSeries` holds coefficients for
t^0 .. t^order inclusive; arithmetic between series of different orders
truncates to the shorter one, so precision never silently inflates.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

__all__ = [
    "UPoly",
    "TruncatedSeries",
    "series_exp",
    "series_log",
    "series_pow_u",
    "series_inverse",
    "sine_quotient",
    "lagrange_invert",
]


class UPoly:
    """Dense polynomial in the auxiliary variable u over Fraction."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()) -> None:
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(q) -> "UPoly":
        return UPoly((Fraction(q),))

    @staticmethod
    def zero() -> "UPoly":
        return UPoly(())

    @staticmethod
    def u() -> "UPoly":
        return UPoly((0, 1))

    @property
    def degree(self) -> float:
        """Degree, with -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coefficient(self, j: int) -> Fraction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Fraction(0)

    def times_u(self) -> "UPoly":
        if not self.coeffs:
            return self
        return UPoly((Fraction(0),) + self.coeffs)

    def __add__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(
            tuple(self.coefficient(j) + other.coefficient(j) for j in range(n))
        )

    def __sub__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(
            tuple(self.coefficient(j) - other.coefficient(j) for j in range(n))
        )

    def __neg__(self) -> "UPoly":
        return UPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, UPoly):
            if not self.coeffs or not other.coeffs:
                return UPoly.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return UPoly(out)
        return UPoly(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UPoly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append(f"{c}*u")
            else:
                parts.append(f"{c}*u^{j}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UPoly({self.coeffs})"


class TruncatedSeries:
    """Series sum_k c_k(u) t^k known exactly for k = 0..order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs) -> None:
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = list(coeffs)
        if len(cs) != order + 1:
            raise ValueError(f"expected {order + 1} coefficients, got {len(cs)}")
        self.order = order
        self.coeffs = tuple(c if isinstance(c, UPoly) else UPoly.const(c) for c in cs)

    @staticmethod
    def zero(order: int) -> "TruncatedSeries":
        return TruncatedSeries(order, [UPoly.zero()] * (order + 1))

    @staticmethod
    def one(order: int) -> "TruncatedSeries":
        return TruncatedSeries(order, [UPoly.const(1)] + [UPoly.zero()] * order)

    @staticmethod
    def t(order: int) -> "TruncatedSeries":
        cs = [UPoly.zero()] * (order + 1)
        if order >= 1:
            cs[1] = UPoly.const(1)
        return TruncatedSeries(order, cs)

    @staticmethod
    def from_dict(order: int, entries: dict) -> "TruncatedSeries":
        cs = [UPoly.zero()] * (order + 1)
        for k, c in entries.items():
            if 0 <= k <= order:
                cs[k] = c if isinstance(c, UPoly) else UPoly.const(c)
        return TruncatedSeries(order, cs)

    def coefficient(self, k: int) -> UPoly:
        if k < 0:
            return UPoly.zero()
        if k > self.order:
            raise IndexError(f"coefficient t^{k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def constant_term(self) -> UPoly:
        return self.coeffs[0]

    def valuation_at_least(self, v: int) -> bool:
        return all(self.coeffs[k].is_zero() for k in range(min(v, self.order + 1)))

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(order, self.coeffs[: order + 1])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            n, [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)]
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            n, [self.coeffs[k] - other.coeffs[k] for k in range(n + 1)]
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            out = [UPoly.zero()] * (n + 1)
            for i in range(n + 1):
                a = self.coeffs[i]
                if a.is_zero():
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
            return TruncatedSeries(n, out)
        return TruncatedSeries(self.order, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def shift_up(self) -> "TruncatedSeries":
        """Multiply by t (order preserved, top coefficient dropped)."""
        return TruncatedSeries(
            self.order, (UPoly.zero(),) + self.coeffs[: self.order]
        )

    def shift_down(self) -> "TruncatedSeries":
        """Divide by t; requires zero constant term.  Order drops by one."""
        if not self.coeffs[0].is_zero():
            raise ValueError("cannot divide by t: non-zero constant term")
        return TruncatedSeries(self.order - 1, self.coeffs[1:])

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(t)); inner must have zero constant term."""
        if not inner.coeffs[0].is_zero():
            raise ValueError("composition requires inner constant term 0")
        n = min(self.order, inner.order)
        # Horner evaluation in the truncated ring.
        result = TruncatedSeries.from_dict(n, {0: self.coeffs[n]})
        inner_t = inner.truncate(n)
        for k in range(n - 1, -1, -1):
            result = result * inner_t
            result = TruncatedSeries(
                n, [result.coeffs[0] + self.coeffs[k]] + list(result.coeffs[1:])
            )
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                terms.append(f"({c})*t^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"<series order {self.order}: {body}>"


def series_exp(f: TruncatedSeries) -> TruncatedSeries:
    """exp(f) for f with zero constant term."""
    if not f.constant_term().is_zero():
        raise ValueError("series_exp requires constant term 0")
    n = f.order
    result = TruncatedSeries.one(n)
    power = TruncatedSeries.one(n)
    for m in range(1, n + 1):
        power = power * f
        result = result + power * Fraction(1, factorial(m))
    return result


def series_log(f: TruncatedSeries) -> TruncatedSeries:
    """log(f) for f with constant term 1."""
    if f.constant_term() != UPoly.const(1):
        raise ValueError("series_log requires constant term 1")
    n = f.order
    g = f - TruncatedSeries.one(n)
    result = TruncatedSeries.zero(n)
    power = TruncatedSeries.one(n)
    for m in range(1, n + 1):
        power = power * g
        result = result + power * Fraction((-1) ** (m + 1), m)
    return result


def series_pow_u(f: TruncatedSeries) -> TruncatedSeries:
    """f(t)^u = exp(u * log f) for f with constant term 1 and u-free coefficients."""
    if any(not c.is_constant() for c in f.coeffs):
        raise ValueError("series_pow_u requires coefficients constant in u")
    logf = series_log(f)
    return series_exp(
        TruncatedSeries(logf.order, [c.times_u() for c in logf.coeffs])
    )


def series_inverse(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse 1/f for f with constant term 1."""
    if f.constant_term() != UPoly.const(1):
        raise ValueError("series_inverse requires constant term 1")
    n = f.order
    inv = [UPoly.zero()] * (n + 1)
    inv[0] = UPoly.const(1)
    for m in range(1, n + 1):
        acc = UPoly.zero()
        for k in range(1, m + 1):
            if not f.coeffs[k].is_zero():
                acc = acc + f.coeffs[k] * inv[m - k]
        inv[m] = -acc
    return TruncatedSeries(n, inv)


def sine_quotient(order: int) -> TruncatedSeries:
    """The even series (t/2) / sin(t/2) to the given order.

    Inverts sin(x)/x = sum (-1)^m x^(2m) / (2m+1)! at x = t/2.
    """
    if order < 1:
        raise ValueError("order must be positive")
    entries = {}
    for m in range(0, order // 2 + 1):
        entries[2 * m] = Fraction((-1) ** m, 4**m * factorial(2 * m + 1))
    return series_inverse(TruncatedSeries.from_dict(order, entries))


def lagrange_invert(q: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse r of q: q(r(t)) = t modulo t^(order+1).

    Requires q(0) = 0 and [t]q = 1.  Coefficients of r are found by
    back-substitution: once r is correct modulo t^k, the defect of q(r)
    at t^k is subtracted from r.
    """
    if not q.constant_term().is_zero():
        raise ValueError("lagrange_invert requires constant term 0")
    if q.order < 1 or q.coefficient(1) != UPoly.const(1):
        raise ValueError("lagrange_invert requires coefficient of t equal to 1")
    n = q.order
    r = TruncatedSeries.t(n)
    for k in range(2, n + 1):
        defect = q.compose(r).coefficient(k)
        if defect.is_zero():
            continue
        cs = list(r.coeffs)
        cs[k] = cs[k] - defect
        r = TruncatedSeries(n, cs)
    return r
