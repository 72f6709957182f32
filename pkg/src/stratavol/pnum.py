"""Positive-tree counts p_{s_1,..,s_n} and the series built from them.

The numbers are computed by the recursion

    (s-2)! = p_{s_1,..,s_n}
             + sum_{t=2}^{n} (s-2)_{t-2} / t! *
               sum_{labeled partitions I_1,..,I_t of {1..n}}
                   prod_j (sum_{i in I_j} s_i - 1) * p_{s_{I_j}},

with s = s_1 + .. + s_n, base case p_s = (s-2)! for a single index, and
(x)_m the falling factorial, (x)_0 = 1.  Labeled partitions into t blocks
are enumerated as unordered set partitions times t! labelings, so the 1/t!
is applied exactly once.

The recursion runs in exact rationals and the result is asserted to be a
positive integer before it is stored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterator

__all__ = [
    "PartitionIndex",
    "PNumberTable",
    "p_value",
    "p_bw_value",
    "WeightedMonomialSeries",
    "t_series",
    "exp_subscript_series",
    "verify_multivariate_relation",
    "HomogeneousVolumePolynomial",
    "pgvn_polynomial",
    "compositions",
    "set_partitions",
    "default_table",
]


@dataclass(frozen=True)
class PartitionIndex:
    """Sorted (non-increasing) tuple of integer indices, each >= 2."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(sorted(self.parts, reverse=True))
        if not parts:
            raise ValueError("at least one part required")
        if any(p < 2 for p in parts):
            raise ValueError("all parts must be >= 2")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


class PNumberTable:
    """Idempotent insert-only memo of computed p-numbers.

    Concurrent duplicate computation is harmless: any two computations of
    the same key produce identical values, so last-write-wins is safe.
    """

    def __init__(self) -> None:
        self.entries: dict[PartitionIndex, int] = {}

    def __contains__(self, key: PartitionIndex) -> bool:
        return key in self.entries

    def __getitem__(self, key: PartitionIndex) -> int:
        return self.entries[key]

    def store(self, key: PartitionIndex, value: int) -> None:
        if value <= 0:
            raise ValueError(f"p-number for {key.parts} must be positive, got {value}")
        self.entries[key] = value

    def __len__(self) -> int:
        return len(self.entries)

    def to_json(self) -> str:
        items = sorted(self.entries.items(), key=lambda kv: (kv[0].weight, kv[0].parts))
        return json.dumps(
            [{"parts": list(k.parts), "value": str(v)} for k, v in items]
        )

    @staticmethod
    def from_json(text: str) -> "PNumberTable":
        table = PNumberTable()
        for item in json.loads(text):
            key = PartitionIndex(tuple(int(p) for p in item["parts"]))
            table.store(key, int(item["value"]))
        return table


_DEFAULT_TABLE = PNumberTable()


def default_table() -> PNumberTable:
    return _DEFAULT_TABLE


def set_partitions(n: int) -> Iterator[list[tuple[int, ...]]]:
    """Unordered partitions of {0,..,n-1} into non-empty blocks.

    Element i joins an existing block or opens a new one, which is the
    restricted-growth enumeration; each partition appears exactly once.
    """
    blocks: list[list[int]] = []

    def rec(i: int) -> Iterator[list[tuple[int, ...]]]:
        if i == n:
            yield [tuple(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1)
        blocks.pop()

    yield from rec(0)


def _falling(x: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= x - i
    return out


def p_value(parts, table: PNumberTable | None = None) -> int:
    """The positive integer p_{s_1,..,s_n}; indices may come in any order."""
    key = parts if isinstance(parts, PartitionIndex) else PartitionIndex(tuple(parts))
    if table is None:
        table = _DEFAULT_TABLE
    if key in table:
        return table[key]

    n = len(key)
    s = key.weight
    if n == 1:
        value = factorial(s - 2)
    else:
        acc = Fraction(factorial(s - 2)) - _recursion_sum(key.parts, table)
        if acc.denominator != 1 or acc <= 0:
            raise AssertionError(
                f"recursion for {key.parts} gave non positive-integer value {acc}"
            )
        value = int(acc)
    table.store(key, value)
    return value


def _recursion_sum(parts: tuple[int, ...], table: PNumberTable | None = None) -> Fraction:
    """The subtracted double sum of the recursion, for indices in the given order.

    Exposed separately so the permutation invariance of the right-hand side
    can be tested on unsorted inputs.
    """
    n = len(parts)
    s = sum(parts)
    acc = Fraction(0)
    for blocks in set_partitions(n):
        t = len(blocks)
        if t < 2:
            continue
        term = Fraction(_falling(s - 2, t - 2) * factorial(t), factorial(t))
        for block in blocks:
            block_sum = sum(parts[i] for i in block)
            term *= (block_sum - 1) * p_value(
                tuple(parts[i] for i in block), table
            )
        acc += term
    return acc


def p_bw_value(b: tuple[int, ...], w: tuple[int, ...]) -> int:
    """Block-wall value p^b_w; depends only on the sums b_i + w_i."""
    if len(b) != len(w):
        raise ValueError("b and w must have the same length")
    if any(x < 1 for x in b) or any(x < 1 for x in w):
        raise ValueError("all block sizes must be >= 1")
    return p_value(tuple(bi + wi for bi, wi in zip(b, w)))


# ---------------------------------------------------------------------------
# Multivariate generating series
# ---------------------------------------------------------------------------

Monomial = tuple[int, tuple[int, ...]]  # (power of t, sorted subscript multiset)


class WeightedMonomialSeries:
    """Series in t whose coefficients are polynomials in t_2, t_3, ...

    Terms are kept only while both the power of t and the subscript weight
    (the sum of the subscripts of the t_i factors) stay <= weight.  In all
    series arising here the subscript weight of a term never exceeds its
    t-power, so products truncated this way are exact in every extracted
    t-coefficient.
    """

    __slots__ = ("weight", "terms")

    def __init__(self, weight: int, terms: dict[Monomial, Fraction] | None = None) -> None:
        if weight < 1:
            raise ValueError("weight must be positive")
        self.weight = weight
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for (tp, subs), c in terms.items():
                self._add_term(tp, subs, Fraction(c))

    def _add_term(self, t_pow: int, subs: tuple[int, ...], coeff: Fraction) -> None:
        if coeff == 0 or t_pow > self.weight or sum(subs) > self.weight:
            return
        key = (t_pow, tuple(sorted(subs)))
        new = self.terms.get(key, Fraction(0)) + coeff
        if new == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    @staticmethod
    def one(weight: int) -> "WeightedMonomialSeries":
        return WeightedMonomialSeries(weight, {(0, ()): Fraction(1)})

    def __add__(self, other: "WeightedMonomialSeries") -> "WeightedMonomialSeries":
        out = WeightedMonomialSeries(min(self.weight, other.weight), dict(self.terms))
        for (tp, subs), c in other.terms.items():
            out._add_term(tp, subs, c)
        return out

    def __mul__(self, other):
        if isinstance(other, WeightedMonomialSeries):
            out = WeightedMonomialSeries(min(self.weight, other.weight))
            for (tp1, s1), c1 in self.terms.items():
                for (tp2, s2), c2 in other.terms.items():
                    out._add_term(tp1 + tp2, s1 + s2, c1 * c2)
            return out
        out = WeightedMonomialSeries(self.weight)
        for (tp, subs), c in self.terms.items():
            out._add_term(tp, subs, c * other)
        return out

    __rmul__ = __mul__

    def coefficient_of_t(self, k: int) -> dict[tuple[int, ...], Fraction]:
        """Coefficient of t^k as a map subscript-multiset -> rational."""
        return {
            subs: c for (tp, subs), c in self.terms.items() if tp == k and c != 0
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedMonomialSeries):
            return NotImplemented
        return self.terms == other.terms


def _partitions_min2(total: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of total into parts >= 2, non-increasing."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 1, -1):
        if total - first == 1:
            continue
        for rest in _partitions_min2(total - first, first):
            yield (first,) + rest


def _multiplicity_factor(parts: tuple[int, ...]) -> int:
    """prod over distinct part values of (multiplicity)!"""
    out = 1
    run = 1
    for a, b in zip(parts, parts[1:]):
        if a == b:
            run += 1
        else:
            out *= factorial(run)
            run = 1
    out *= factorial(run)
    return out


def t_series(weight: int, table: PNumberTable | None = None) -> WeightedMonomialSeries:
    """The generating series of the p-numbers, truncated to total weight.

    The term at t^s carries (s-1) * p_{s_1,..,s_n} / (prod multiplicities!)
    on the monomial t_{s_1}..t_{s_n}, for every partition of s into parts
    >= 2 (this is the composition sum divided by n!, folded over equal
    parts).
    """
    if weight < 1:
        raise ValueError("weight must be positive")
    series = WeightedMonomialSeries.one(weight)
    for s in range(2, weight + 1):
        for parts in _partitions_min2(s):
            coeff = Fraction(s - 1, _multiplicity_factor(parts)) * p_value(parts, table)
            series._add_term(s, parts, coeff)
    return series


def exp_subscript_series(weight: int) -> WeightedMonomialSeries:
    """exp(sum_{i>=2} t_i t^i) in the truncated monomial algebra."""
    x = WeightedMonomialSeries(weight)
    for i in range(2, weight + 1):
        x._add_term(i, (i,), Fraction(1))
    result = WeightedMonomialSeries.one(weight)
    power = WeightedMonomialSeries.one(weight)
    for m in range(1, weight // 2 + 1):
        power = power * x
        result = result + power * Fraction(1, factorial(m))
    return result


def verify_multivariate_relation(
    k_max: int, weight: int, table: PNumberTable | None = None
) -> bool:
    """Check (1/k!) [t^k] T^k = [t^k] exp(sum t_i t^i) for 0 <= k <= k_max."""
    if weight < k_max:
        raise ValueError("weight must be at least k_max")
    t_ser = t_series(weight, table)
    rhs = exp_subscript_series(weight)
    power = WeightedMonomialSeries.one(weight)
    for k in range(k_max + 1):
        if k > 0:
            power = power * t_ser
        lhs_coeff = {
            subs: c / factorial(k) for subs, c in power.coefficient_of_t(k).items()
        }
        if lhs_coeff != rhs.coefficient_of_t(k):
            return False
    return True


# ---------------------------------------------------------------------------
# The homogeneous polynomial carrying the top-degree counting terms
# ---------------------------------------------------------------------------


def compositions(total: int, n: int, minimum: int = 1) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of n integers >= minimum summing to total."""
    if n == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (n - 1) + 1):
        for rest in compositions(total - first, n - 1, minimum):
            yield (first,) + rest


@dataclass(frozen=True)
class HomogeneousVolumePolynomial:
    """Symmetric homogeneous polynomial of degree 2g in (L_1,..,L_n).

    terms maps the exponent tuple (2s_1-2,..,2s_n-2) of each composition
    to its (strictly positive) rational coefficient.
    """

    genus: int
    n: int
    terms: dict[tuple[int, ...], Fraction] = field(compare=False)

    def __post_init__(self) -> None:
        for exps, coeff in self.terms.items():
            if sum(exps) != 2 * self.genus:
                raise ValueError(f"term {exps} does not have total degree {2 * self.genus}")
            if coeff <= 0:
                raise ValueError(f"coefficient of {exps} is not positive")

    def evaluate(self, lengths) -> Fraction:
        values = tuple(Fraction(x) for x in lengths)
        if len(values) != self.n:
            raise ValueError(f"expected {self.n} lengths")
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for val, e in zip(values, exps):
                term *= val**e
            total += term
        return total


def pgvn_polynomial(
    g: int, n: int, table: PNumberTable | None = None
) -> HomogeneousVolumePolynomial:
    """2^n sum over compositions s of g+n of p_{2s} prod L_i^{2s_i-2}/(2s_i)!."""
    if g < 0 or n < 1:
        raise ValueError("need g >= 0 and n >= 1")
    terms: dict[tuple[int, ...], Fraction] = {}
    for comp in compositions(g + n, n, minimum=1):
        exps = tuple(2 * s - 2 for s in comp)
        coeff = Fraction(2**n) * p_value(tuple(2 * s for s in comp), table)
        for s in comp:
            coeff /= factorial(2 * s)
        terms[exps] = terms.get(exps, Fraction(0)) + coeff
    return HomogeneousVolumePolynomial(genus=g, n=n, terms=terms)
