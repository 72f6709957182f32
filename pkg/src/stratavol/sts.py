"""Square-tiled surfaces in minimal strata and the cylinder cross-check.

A surface with N unit squares is a pair of permutations of {0,..,N-1}:
``sigma_h`` maps each square to its right neighbor, ``sigma_v`` to its
upper neighbor.  The pair must act transitively (connected surface).
Surfaces are counted up to simultaneous conjugation (square relabeling).

The vertex permutation acts on bottom-left corners: rotating a full turn
counterclockwise around the corner of square x visits the squares

    x -> left -> below-left -> right of that -> up,

which composes to sigma_v o sigma_h o sigma_v^{-1} o sigma_h^{-1}.  A
corner whose vertex has 4m incident squares lies on a cycle of length m,
so cone points of the flat metric are the nontrivial cycles; membership in
the minimal stratum of genus g means a single cycle of length 2g-1
(for g = 1 the vertex permutation is trivial and the marked point is a
regular point).

Counting convention: the census reports both the plain number of
conjugacy classes and the 1/|Aut|-weighted number.  The cylinder identity
(census counts against the metric-counting route) holds for the
UNWEIGHTED class count; this is pinned by verify_cylinder_formula for
g = 1 first and then required at g = 2, where the two counts coincide
anyway because a translation fixing the unique cone point is trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations as _all_perms
from math import factorial

from .permutation import (
    Perm,
    centralizer_elements,
    centralizer_generators,
    centralizer_order,
    conjugate,
    cycles,
    from_cycle_type,
    identity,
    inverse,
    is_transitive,
    partitions,
)
from .ribbon import PerimeterPair, counting_function

__all__ = [
    "SquareTiledSurface",
    "CylinderDecomposition",
    "enumerate_sts",
    "zero_profile",
    "cylinder_decomposition",
    "census",
    "verify_cylinder_formula",
    "MAX_SQUARES",
]

MAX_SQUARES = 8


@dataclass(frozen=True)
class SquareTiledSurface:
    """Pair of permutations on labeled squares (right and upper neighbor)."""

    sigma_h: Perm
    sigma_v: Perm

    def __post_init__(self) -> None:
        if len(self.sigma_h) != len(self.sigma_v):
            raise ValueError("permutations must act on the same squares")

    @property
    def num_squares(self) -> int:
        return len(self.sigma_h)

    def is_connected(self) -> bool:
        return is_transitive(self.sigma_h, self.sigma_v)

    def vertex_permutation(self) -> Perm:
        """Action on bottom-left corners: sigma_v o sigma_h o sigma_v^-1 o sigma_h^-1."""
        inv_h = inverse(self.sigma_h)
        inv_v = inverse(self.sigma_v)
        n = self.num_squares
        return tuple(
            self.sigma_v[self.sigma_h[inv_v[inv_h[x]]]] for x in range(n)
        )

    def euler_consistent(self) -> bool:
        """V - E + F = 2 - 2g with V = vertex cycles, E = 2N, F = N."""
        c = self.vertex_permutation()
        v = len(cycles(c))
        n = self.num_squares
        profile = zero_profile(self)
        genus = (sum(profile) + 2) // 2
        return v - 2 * n + n == 2 - 2 * genus


@dataclass(frozen=True)
class CylinderDecomposition:
    """Cylinders as (circumference, height) pairs, sorted."""

    cylinders: tuple[tuple[int, int], ...]

    @property
    def n_cylinders(self) -> int:
        return len(self.cylinders)

    def total_squares(self) -> int:
        return sum(length * height for length, height in self.cylinders)


def zero_profile(surface: SquareTiledSurface) -> list[int]:
    """Sorted cone orders: (cycle length - 1) over nontrivial vertex cycles.

    A trivial vertex permutation (torus) reports [0]: the distinguished
    marked point is a regular point, a zero of order 0.
    """
    c = surface.vertex_permutation()
    profile = sorted(len(cyc) - 1 for cyc in cycles(c) if len(cyc) > 1)
    return profile if profile else [0]


def _admissible(sh: Perm, sv: Perm, g: int) -> bool:
    """Transitive and in the minimal stratum of genus g."""
    if not is_transitive(sh, sv):
        return False
    inv_h = inverse(sh)
    inv_v = inverse(sv)
    n = len(sh)
    # vertex permutation, inline for speed
    nontrivial = 0
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            length += 1
            x = sv[sh[inv_v[inv_h[x]]]]
        if length > 1:
            if g == 1:
                return False
            nontrivial += 1
            if nontrivial > 1 or length != 2 * g - 1:
                return False
    if g == 1:
        return True
    return nontrivial == 1


def cylinder_decomposition(surface: SquareTiledSurface) -> CylinderDecomposition:
    """Split the surface along its singular horizontal circles.

    Rows are the cycles of sigma_h.  The circle below a row is singular
    iff it carries a cone point, i.e. the vertex permutation moves some
    corner of the row.  A cylinder is a maximal stack of rows whose
    internal circles are regular; stacking is well defined there because
    sigma_v then maps a row bijectively onto the next.
    """
    sh, sv = surface.sigma_h, surface.sigma_v
    n = surface.num_squares
    c = surface.vertex_permutation()
    row_list = cycles(sh)
    if all(c[x] == x for x in range(n)):
        # Torus case: the marked point is regular and every corner level is
        # equivalent; the surface is one cylinder around any row.
        length = len(row_list[0])
        if any(len(row) != length for row in row_list):
            raise AssertionError("trivial vertex permutation with uneven rows")
        return CylinderDecomposition(((length, n // length),))

    row_of = [0] * n
    for idx, row in enumerate(row_list):
        for x in row:
            row_of[x] = idx
    singular_below = [any(c[x] != x for x in row) for row in row_list]

    def top_is_singular(idx: int) -> bool:
        return any(c[sv[x]] != sv[x] for x in row_list[idx])

    covered = [False] * len(row_list)
    cylinders = []
    for idx, row in enumerate(row_list):
        if not singular_below[idx]:
            continue
        height = 1
        cur = idx
        covered[cur] = True
        while not top_is_singular(cur):
            nxt = row_of[sv[row_list[cur][0]]]
            if len(row_list[nxt]) != len(row) or covered[nxt]:
                raise AssertionError("inconsistent cylinder stack")
            covered[nxt] = True
            cur = nxt
            height += 1
        cylinders.append((len(row), height))
    if not all(covered):
        raise AssertionError("cylinder decomposition did not cover all rows")
    decomposition = CylinderDecomposition(tuple(sorted(cylinders)))
    if decomposition.total_squares() != n:
        raise AssertionError("cylinder areas do not sum to the square count")
    return decomposition


# ---------------------------------------------------------------------------
# Enumeration up to simultaneous conjugation
# ---------------------------------------------------------------------------

_CLASS_CACHE: dict[tuple[int, int], list[tuple[SquareTiledSurface, int]]] = {}


def enumerate_sts(g: int, n_squares: int) -> list[tuple[SquareTiledSurface, int]]:
    """Conjugacy classes of admissible pairs with exactly n_squares squares.

    Returns (representative, |Aut|) with |Aut| the centralizer order of
    the pair.  sigma_h runs over one representative per cycle type; for
    each, the admissible sigma_v split into orbits under conjugation by
    the centralizer of sigma_h, found by closure over its generators.
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    if n_squares < 1 or n_squares > MAX_SQUARES:
        raise ValueError(f"need 1 <= N <= {MAX_SQUARES}")
    if n_squares < 2 * g - 1:
        return []
    key = (g, n_squares)
    if key in _CLASS_CACHE:
        return _CLASS_CACHE[key]

    out: list[tuple[SquareTiledSurface, int]] = []
    for ctype in partitions(n_squares):
        sh = from_cycle_type(ctype)
        z_order = centralizer_order(ctype)
        if g == 1:
            # The vertex permutation is trivial iff the pair commutes.
            candidates = {
                sv for sv in centralizer_elements(sh) if is_transitive(sh, sv)
            }
        else:
            candidates = {
                sv for sv in _all_perms(range(n_squares)) if _admissible(sh, sv, g)
            }
        gens = centralizer_generators(sh)
        if not gens:
            gens = [identity(n_squares)]
        while candidates:
            start = min(candidates)
            orbit = {start}
            frontier = [start]
            while frontier:
                nxt = []
                for sv in frontier:
                    for gen in gens:
                        moved = conjugate(gen, sv)
                        if moved not in orbit:
                            orbit.add(moved)
                            nxt.append(moved)
                frontier = nxt
            candidates -= orbit
            aut, remainder = divmod(z_order, len(orbit))
            if remainder:
                raise AssertionError("orbit size does not divide the centralizer order")
            out.append((SquareTiledSurface(sh, min(orbit)), aut))
    out.sort(key=lambda pair: (pair[0].sigma_h, pair[0].sigma_v))
    _CLASS_CACHE[key] = out
    return out


def census(g: int, n_max: int) -> dict[tuple[int, int], tuple[int, Fraction]]:
    """Counts by (cylinder count n, squares N) for all N <= n_max.

    Values are (class count, 1/|Aut|-weighted class count).
    """
    table: dict[tuple[int, int], tuple[int, Fraction]] = {}
    for n_squares in range(1, n_max + 1):
        for surface, aut in enumerate_sts(g, n_squares):
            decomposition = cylinder_decomposition(surface)
            n_cyl = decomposition.n_cylinders
            if not 1 <= n_cyl <= g:
                raise AssertionError(f"cylinder count {n_cyl} outside 1..{g}")
            count, weighted = table.get((n_cyl, n_squares), (0, Fraction(0)))
            table[(n_cyl, n_squares)] = (count + 1, weighted + Fraction(1, aut))
    return table


def _h_tuple_count(lengths: tuple[int, ...], budget: int) -> int:
    """Number of positive h-tuples with sum h_i * L_i <= budget."""
    if not lengths:
        return 1
    first, rest = lengths[0], lengths[1:]
    total = 0
    remaining = budget - sum(rest)  # each later h_i contributes at least L_i
    h = 1
    while h * first <= remaining:
        total += _h_tuple_count(rest, budget - h * first)
        h += 1
    return total


def _length_tuples(n: int, budget: int):
    """Positive L-tuples usable within the budget (sum L_i <= budget)."""
    if n == 0:
        yield ()
        return
    for first in range(1, budget - (n - 1) + 1):
        for rest in _length_tuples(n - 1, budget - first):
            yield (first,) + rest


def predicted_cumulative_count(g: int, n_cyl: int, n_max: int) -> Fraction:
    """Right-hand side of the cylinder identity, summed up to n_max squares.

    (1/n!) * sum over positive (h, L) with sum h_i L_i <= N of
    L_1 .. L_n * P^{g-n}_{n,n}(L; L), with the counting function evaluated
    exactly at every lattice point (walls included).
    """
    total = Fraction(0)
    for lengths in _length_tuples(n_cyl, n_max):
        weight = _h_tuple_count(lengths, n_max)
        if weight == 0:
            continue
        value = counting_function(
            g - n_cyl, n_cyl, n_cyl, PerimeterPair(lengths, lengths)
        )
        if value == 0:
            continue
        twist = 1
        for length in lengths:
            twist *= length
        total += Fraction(twist * weight) * value
    return total / factorial(n_cyl)


def verify_cylinder_formula(g: int, n_max: int) -> bool:
    """Cross-check the census against the tree/metric counting route.

    For every n <= g the unweighted number of n-cylinder classes with at
    most n_max squares must equal the exact lattice sum of the counting
    functions.
    """
    table = census(g, n_max)
    for n_cyl in range(1, g + 1):
        observed = sum(
            count
            for (n, n_squares), (count, _) in table.items()
            if n == n_cyl and n_squares <= n_max
        )
        predicted = predicted_cumulative_count(g, n_cyl, n_max)
        if predicted != observed:
            return False
    return True
