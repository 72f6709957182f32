"""One-face bipartite ribbon graphs, integral metrics, and positive trees.

Conventions
-----------

A graph in the enumerated family has k black vertices labeled 1..k, l white
vertices labeled 1..l, one boundary component, and genus g, which forces
E = k + l - 1 + 2g edges.  Every edge joins a black vertex to a white one,
so an edge carries one dart at each end; identifying both darts of edge e
with the index e gives the compact encoding used here:

* ``rho_black``: permutation of the edge set, sending each edge to the next
  edge counterclockwise around its black endpoint (cycles = black vertices);
* ``rho_white``: the same around white endpoints;
* the boundary components are the cycles of rho_black o rho_white, so the
  one-face condition says that product is a single E-cycle.

Since all E-cycles are conjugate, every isomorphism class has a
representative whose product is the fixed cycle sigma = (0 1 .. E-1), and
isomorphisms between such representatives are exactly conjugations by
powers of sigma (the centralizer of an E-cycle is the cyclic group it
generates).  Enumeration therefore scans rho_black over S_E and classifies
the labeled survivors up to the E rotations, which also yields |Aut|.

A dart-level view (rotation, pairing) is exposed for inspection and
serialization: dart 2e is the black end of edge e, dart 2e+1 its white end.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations as _all_perms
from math import factorial

from .permutation import (
    Perm,
    compose,
    conjugate,
    cycle_count,
    cycles,
    inverse,
)
from .pnum import p_bw_value

__all__ = [
    "RibbonGraph",
    "PerimeterPair",
    "EdgeForm",
    "Wall",
    "MetricAssignment",
    "enumerate_graphs",
    "count_metrics",
    "counting_function",
    "tree_weights",
    "count_positive_trees",
    "wall_sample_point",
    "p0_oracle",
    "fit_ray_polynomial",
    "verify_wall_constancy",
    "MAX_EDGES",
]

MAX_EDGES = 8


@dataclass(frozen=True)
class RibbonGraph:
    """Bipartite combinatorial map with labeled colored vertices.

    ``black_labels[e]`` / ``white_labels[e]`` give the 1-based label of the
    black / white endpoint of edge e.
    """

    rho_black: Perm
    rho_white: Perm
    black_labels: tuple[int, ...]
    white_labels: tuple[int, ...]

    @property
    def num_edges(self) -> int:
        return len(self.rho_black)

    @property
    def k(self) -> int:
        return max(self.black_labels)

    @property
    def l(self) -> int:
        return max(self.white_labels)

    def face_count(self) -> int:
        return cycle_count(compose(self.rho_black, self.rho_white))

    def genus(self) -> int:
        v = self.k + self.l
        e = self.num_edges
        f = self.face_count()
        twice_g = 2 - (v - e + f)
        if twice_g < 0 or twice_g % 2 != 0:
            raise ValueError("inconsistent map data: Euler formula fails")
        return twice_g // 2

    def is_tree(self) -> bool:
        return self.genus() == 0

    def edge_endpoints(self, e: int) -> tuple[int, int]:
        """(black label, white label) of edge e."""
        return self.black_labels[e], self.white_labels[e]

    # Dart-level view: dart 2e = black end of e, dart 2e+1 = white end.

    @property
    def dart_count(self) -> int:
        return 2 * self.num_edges

    def rotation(self) -> Perm:
        rot = [0] * self.dart_count
        for e in range(self.num_edges):
            rot[2 * e] = 2 * self.rho_black[e]
            rot[2 * e + 1] = 2 * self.rho_white[e] + 1
        return tuple(rot)

    def pairing(self) -> Perm:
        pair = [0] * self.dart_count
        for e in range(self.num_edges):
            pair[2 * e] = 2 * e + 1
            pair[2 * e + 1] = 2 * e
        return tuple(pair)

    def vertices(self) -> list[tuple[str, int, tuple[int, ...]]]:
        """(color, label, edges in cyclic order) for every vertex."""
        out = []
        for cyc in cycles(self.rho_black):
            out.append(("black", self.black_labels[cyc[0]], cyc))
        for cyc in cycles(self.rho_white):
            out.append(("white", self.white_labels[cyc[0]], cyc))
        return out

    def to_json(self, aut: int | None = None) -> dict[str, object]:
        data: dict[str, object] = {
            "darts": self.dart_count,
            "rotation": list(self.rotation()),
            "pairing": list(self.pairing()),
            "colors": [
                {"color": color, "label": label, "edges": list(cyc)}
                for color, label, cyc in self.vertices()
            ],
            "genus": self.genus(),
            "faces": self.face_count(),
        }
        if aut is not None:
            data["aut"] = aut
        return data


@dataclass(frozen=True)
class PerimeterPair:
    """Prescribed vertex perimeters: black tuple L and white tuple L'."""

    black: tuple
    white: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "black", tuple(self.black))
        object.__setattr__(self, "white", tuple(self.white))

    def is_balanced(self) -> bool:
        return sum(self.black) == sum(self.white)

    def all_positive(self) -> bool:
        return all(x > 0 for x in self.black) and all(x > 0 for x in self.white)

    def scale(self, c) -> "PerimeterPair":
        return PerimeterPair(
            tuple(c * x for x in self.black), tuple(c * x for x in self.white)
        )


@dataclass(frozen=True)
class EdgeForm:
    """The linear function sum_{i in I} L_i - sum_{j in J} L'_j on H_{k,l}."""

    black: frozenset[int]
    white: frozenset[int]
    k: int
    l: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "black", frozenset(self.black))
        object.__setattr__(self, "white", frozenset(self.white))
        if not self.black and not self.white:
            raise ValueError("(I, J) must not both be empty")
        if len(self.black) == self.k and len(self.white) == self.l:
            raise ValueError("(I^c, J^c) must not both be empty")

    def evaluate(self, p: PerimeterPair):
        return sum(p.black[i - 1] for i in self.black) - sum(
            p.white[j - 1] for j in self.white
        )

    def vector(self) -> tuple[int, ...]:
        """Coefficients against coordinates (L_1..L_k, L'_1..L'_l)."""
        vec = [0] * (self.k + self.l)
        for i in self.black:
            vec[i - 1] = 1
        for j in self.white:
            vec[self.k + j - 1] = -1
        return tuple(vec)


@dataclass(frozen=True)
class MetricAssignment:
    """Positive integral edge weights of a graph."""

    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(w < 1 for w in self.weights):
            raise ValueError("metric weights must be positive integers")

    def perimeters(self, graph: RibbonGraph) -> PerimeterPair:
        """The vertex perimeters this metric induces on the graph."""
        black = [0] * graph.k
        white = [0] * graph.l
        for e, w in enumerate(self.weights):
            b, wl = graph.edge_endpoints(e)
            black[b - 1] += w
            white[wl - 1] += w
        return PerimeterPair(tuple(black), tuple(white))


@dataclass(frozen=True)
class Wall:
    """Intersection of walls of H_{k,l}: the locus where the equations vanish."""

    k: int
    l: int
    equations: tuple[EdgeForm, ...]

    @staticmethod
    def full_space(k: int, l: int) -> "Wall":
        return Wall(k, l, ())

    @staticmethod
    def partition_wall(b: tuple[int, ...], w: tuple[int, ...]) -> "Wall":
        """The block wall with consecutive black blocks b and white blocks w.

        For a single block the equation coincides with the ambient balance
        relation, so the wall is all of H_{k,l}.
        """
        if len(b) != len(w):
            raise ValueError("b and w must have the same length")
        if any(x < 1 for x in b) or any(x < 1 for x in w):
            raise ValueError("block sizes must be >= 1")
        k, l = sum(b), sum(w)
        if len(b) == 1:
            return Wall.full_space(k, l)
        equations = []
        b_start = w_start = 0
        for bi, wi in zip(b, w):
            blacks = frozenset(range(b_start + 1, b_start + bi + 1))
            whites = frozenset(range(w_start + 1, w_start + wi + 1))
            equations.append(EdgeForm(blacks, whites, k, l))
            b_start += bi
            w_start += wi
        return Wall(k, l, tuple(equations))

    @staticmethod
    def diagonal(n: int) -> "Wall":
        """V_n = {L_1 = L'_1, .., L_n = L'_n} inside H_{n,n}."""
        return Wall.partition_wall((1,) * n, (1,) * n)


# ---------------------------------------------------------------------------
# Enumeration of the graph families
# ---------------------------------------------------------------------------

_GRAPH_CACHE: dict[tuple[int, int, int], list[tuple[RibbonGraph, int]]] = {}


def _sigma(e: int) -> Perm:
    return tuple((i + 1) % e for i in range(e))


def enumerate_graphs(g: int, k: int, l: int) -> list[tuple[RibbonGraph, int]]:
    """All isomorphism classes of the (g, k, l) family with |Aut| counts."""
    if g < 0 or k < 1 or l < 1:
        raise ValueError("need g >= 0, k >= 1, l >= 1")
    key = (g, k, l)
    if key in _GRAPH_CACHE:
        return _GRAPH_CACHE[key]
    n_edges = k + l - 1 + 2 * g
    if n_edges > MAX_EDGES:
        raise ValueError(
            f"(g,k,l)=({g},{k},{l}) needs {n_edges} edges; bound is {MAX_EDGES}"
        )
    sigma = _sigma(n_edges)
    rotations = [
        tuple((i + j) % n_edges for i in range(n_edges)) for j in range(n_edges)
    ]

    # Base pairs: rho_black with k cycles whose partner has l cycles, up to
    # the sigma-rotations; the stabilizer acts on labelings below.
    base_seen: set[Perm] = set()
    classes: list[tuple[RibbonGraph, int]] = []
    for rho_b in _all_perms(range(n_edges)):
        if cycle_count(rho_b) != k:
            continue
        rho_w = compose(inverse(rho_b), sigma)
        if cycle_count(rho_w) != l:
            continue
        orbit = [conjugate(rot, rho_b) for rot in rotations]
        if min(orbit) in base_seen:
            continue
        base_seen.add(min(orbit))
        stab = [j for j, image in enumerate(orbit) if image == rho_b]
        classes.extend(_labeled_classes(rho_b, rho_w, rotations, stab))
    _GRAPH_CACHE[key] = classes
    return classes


def _cycle_index_map(perm_cycles: list[tuple[int, ...]], n: int) -> list[int]:
    idx = [0] * n
    for ci, cyc in enumerate(perm_cycles):
        for e in cyc:
            idx[e] = ci
    return idx


def _labeled_classes(
    rho_b: Perm, rho_w: Perm, rotations: list[Perm], stab: list[int]
) -> list[tuple[RibbonGraph, int]]:
    """Split the labelings of one base pair into isomorphism classes."""
    n_edges = len(rho_b)
    b_cycles = cycles(rho_b)
    w_cycles = cycles(rho_w)
    k, l = len(b_cycles), len(w_cycles)
    b_idx = _cycle_index_map(b_cycles, n_edges)
    w_idx = _cycle_index_map(w_cycles, n_edges)

    def build(lb: tuple[int, ...], lw: tuple[int, ...], aut: int) -> tuple[RibbonGraph, int]:
        graph = RibbonGraph(
            rho_b,
            rho_w,
            tuple(lb[b_idx[e]] for e in range(n_edges)),
            tuple(lw[w_idx[e]] for e in range(n_edges)),
        )
        return graph, aut

    if stab == [0]:
        # No symmetry: every pair of labelings is its own class, aut = 1.
        return [
            build(lb, lw, 1)
            for lb in _all_perms(range(1, k + 1))
            for lw in _all_perms(range(1, l + 1))
        ]

    # Induced action of each stabilizer rotation on cycle indices.
    actions = []
    for j in stab:
        rot = rotations[j]
        b_map = tuple(b_idx[rot[cyc[0]]] for cyc in b_cycles)
        w_map = tuple(w_idx[rot[cyc[0]]] for cyc in w_cycles)
        actions.append((b_map, w_map))

    out = []
    seen: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    for lb in _all_perms(range(1, k + 1)):
        for lw in _all_perms(range(1, l + 1)):
            if (lb, lw) in seen:
                continue
            orbit = set()
            aut = 0
            for b_map, w_map in actions:
                moved_b = tuple(lb[b_map[ci]] for ci in range(k))
                moved_w = tuple(lw[w_map[ci]] for ci in range(l))
                orbit.add((moved_b, moved_w))
                if (moved_b, moved_w) == (lb, lw):
                    aut += 1
            seen.update(orbit)
            out.append(build(lb, lw, aut))
    return out


# ---------------------------------------------------------------------------
# Integral metrics
# ---------------------------------------------------------------------------


class _MetricContext:
    """Spanning-tree data for fast metric counting on one graph."""

    def __init__(self, graph: RibbonGraph) -> None:
        self.graph = graph
        n_edges = graph.num_edges
        k, l = graph.k, graph.l
        # Vertices 0..k-1 black, k..k+l-1 white.
        self.ends = [
            (graph.black_labels[e] - 1, k + graph.white_labels[e] - 1)
            for e in range(n_edges)
        ]
        adjacency: dict[int, list[tuple[int, int]]] = {v: [] for v in range(k + l)}
        for e, (b, w) in enumerate(self.ends):
            adjacency[b].append((w, e))
            adjacency[w].append((b, e))
        tree_edges: list[int] = []
        visited = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u, e in adjacency[v]:
                if u not in visited:
                    visited.add(u)
                    tree_edges.append(e)
                    stack.append(u)
        if len(visited) != k + l:
            raise ValueError("graph is not connected")
        self.tree_edges = tree_edges
        in_tree = set(tree_edges)
        self.free_edges = [e for e in range(n_edges) if e not in in_tree]
        self.tree_forms = [
            _split_form(self.ends, tree_edges, e, k, l) for e in tree_edges
        ]

    def count(self, black, white) -> int:
        if sum(black) != sum(white):
            return 0
        if any(x < 1 for x in black) or any(x < 1 for x in white):
            return 0
        k = self.graph.k
        bounds = []
        for e in self.free_edges:
            b, w = self.ends[e]
            ub = min(black[b], white[w - k])
            if ub < 1:
                return 0
            bounds.append(ub)
        total = 0
        assignment = [0] * len(self.free_edges)

        def rec(pos: int) -> None:
            nonlocal total
            if pos == len(self.free_edges):
                total += self._tree_positive(black, white, assignment)
                return
            for value in range(1, bounds[pos] + 1):
                assignment[pos] = value
                rec(pos + 1)

        rec(0)
        return total

    def _tree_positive(self, black, white, assignment) -> int:
        k = self.graph.k
        res_black = list(black)
        res_white = list(white)
        for e, value in zip(self.free_edges, assignment):
            b, w = self.ends[e]
            res_black[b] -= value
            res_white[w - k] -= value
        for bset, wset in self.tree_forms:
            weight = sum(res_black[i] for i in bset) - sum(res_white[j] for j in wset)
            if weight < 1:
                return 0
        return 1


def _split_form(
    ends: list[tuple[int, int]],
    tree_edges: list[int],
    removed: int,
    k: int,
    l: int,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Bridge form of a tree edge: labels on the black-endpoint side.

    Returns (black indices 0-based, white indices 0-based) of the component
    of the tree minus ``removed`` containing the black endpoint of it.
    """
    adjacency: dict[int, list[int]] = {v: [] for v in range(k + l)}
    for e in tree_edges:
        if e == removed:
            continue
        b, w = ends[e]
        adjacency[b].append(w)
        adjacency[w].append(b)
    start = ends[removed][0]
    component = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adjacency[v]:
            if u not in component:
                component.add(u)
                stack.append(u)
    blacks = tuple(sorted(v for v in component if v < k))
    whites = tuple(sorted(v - k for v in component if v >= k))
    return blacks, whites


_CONTEXT_CACHE: dict[RibbonGraph, _MetricContext] = {}


def _context(graph: RibbonGraph) -> _MetricContext:
    ctx = _CONTEXT_CACHE.get(graph)
    if ctx is None:
        ctx = _MetricContext(graph)
        _CONTEXT_CACHE[graph] = ctx
    return ctx


def count_metrics(graph: RibbonGraph, p: PerimeterPair) -> int:
    """Number of positive integral edge weights realizing the perimeters.

    The 2g weights of edges outside a spanning tree range over bounded
    intervals; the remaining weights are forced linearly by the tree and
    checked for positivity.  Infeasible perimeters give 0.
    """
    if len(p.black) != graph.k or len(p.white) != graph.l:
        raise ValueError("perimeter arity does not match the graph")
    return _context(graph).count(p.black, p.white)


def counting_function(g: int, k: int, l: int, p: PerimeterPair) -> Fraction:
    """Automorphism-weighted metric count over the whole (g, k, l) family."""
    total = Fraction(0)
    for graph, aut in enumerate_graphs(g, k, l):
        n = count_metrics(graph, p)
        if n:
            total += Fraction(n, aut)
    return total


def tree_weights(tree: RibbonGraph, p: PerimeterPair) -> tuple:
    """The unique weight vector on a tree with the prescribed perimeters.

    Entries follow edge order; values are exact rationals (integers at
    integer perimeters).  Requires balanced perimeters.
    """
    if not tree.is_tree():
        raise ValueError("tree_weights requires a genus-0 graph")
    if not p.is_balanced():
        raise ValueError("perimeters must balance: sum L = sum L'")
    ctx = _context(tree)
    order = {e: i for i, e in enumerate(ctx.tree_edges)}
    values = [None] * tree.num_edges
    for e in range(tree.num_edges):
        bset, wset = ctx.tree_forms[order[e]]
        values[e] = sum(p.black[i] for i in bset) - sum(p.white[j] for j in wset)
    return tuple(values)


_TREE_FORMS_CACHE: dict[tuple[int, int], list[list[tuple[tuple[int, ...], tuple[int, ...]]]]] = {}


def _tree_forms(k: int, l: int) -> list[list[tuple[tuple[int, ...], tuple[int, ...]]]]:
    key = (k, l)
    forms = _TREE_FORMS_CACHE.get(key)
    if forms is None:
        forms = [
            _context(graph).tree_forms for graph, _ in enumerate_graphs(0, k, l)
        ]
        _TREE_FORMS_CACHE[key] = forms
    return forms


def count_positive_trees(k: int, l: int, p: PerimeterPair) -> int:
    """Number of trees of the (0, k, l) family positive at the given point.

    Perimeters may be arbitrary rationals; only the signs of the induced
    edge weights matter.
    """
    black, white = p.black, p.white
    count = 0
    for forms in _tree_forms(k, l):
        for bset, wset in forms:
            weight = sum(black[i] for i in bset) - sum(white[j] for j in wset)
            if weight <= 0:
                break
        else:
            count += 1
    return count


# ---------------------------------------------------------------------------
# Walls: sampling and the positive-tree oracle
# ---------------------------------------------------------------------------


def _all_forms(k: int, l: int) -> list[EdgeForm]:
    out = []
    for bmask in range(2**k):
        blacks = frozenset(i + 1 for i in range(k) if bmask >> i & 1)
        for wmask in range(2**l):
            whites = frozenset(j + 1 for j in range(l) if wmask >> j & 1)
            if not blacks and not whites:
                continue
            if len(blacks) == k and len(whites) == l:
                continue
            out.append(EdgeForm(blacks, whites, k, l))
    return out


def _rref(rows: list[tuple]) -> list[list[Fraction]]:
    """Reduced row-echelon form over the rationals; zero rows dropped."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [row for row in mat[:r]]


def _reduce_against(vec: list[Fraction], rref_rows: list[list[Fraction]]) -> list[Fraction]:
    v = list(vec)
    for row in rref_rows:
        pivot = next(i for i, x in enumerate(row) if x != 0)
        if v[pivot] != 0:
            factor = v[pivot]
            v = [a - factor * b for a, b in zip(v, row)]
    return v


def wall_sample_point(wall: Wall, seed: int = 0, retries: int = 500) -> PerimeterPair:
    """A positive rational point in the open part of the wall.

    The wall's equations (plus the ambient balance relation) are put in
    reduced row-echelon form; free coordinates are drawn as integers in
    [1, 10^6] and pivots solved, rejecting draws that leave the positive
    cone or that accidentally annihilate a form not implied by the wall.
    Deterministic for a given seed.
    """
    k, l = wall.k, wall.l
    d = k + l
    balance = tuple([1] * k + [-1] * l)
    rows = [balance] + [eq.vector() for eq in wall.equations]
    rref = _rref(rows)
    pivot_cols = [next(i for i, x in enumerate(row) if x != 0) for row in rref]
    free_cols = [c for c in range(d) if c not in pivot_cols]
    forms = _all_forms(k, l)
    implied = [
        all(x == 0 for x in _reduce_against(list(f.vector()), rref)) for f in forms
    ]

    rng = random.Random(seed)
    for _ in range(retries):
        x: list[Fraction] = [Fraction(0)] * d
        for c in free_cols:
            x[c] = Fraction(rng.randint(1, 10**6))
        for row, pc in zip(reversed(rref), reversed(pivot_cols)):
            x[pc] = -sum(row[c] * x[c] for c in range(d) if c != pc)
        if any(v <= 0 for v in x):
            continue
        point = PerimeterPair(tuple(x[:k]), tuple(x[k:]))
        if all(
            implied[i] or forms[i].evaluate(point) != 0 for i in range(len(forms))
        ):
            return point
    raise ValueError("wall admits no positive sample point (retries exhausted)")


def p0_oracle(b: tuple[int, ...], w: tuple[int, ...], seed: int = 0) -> int:
    """Positive-tree count at a generic point of the block wall W^b_w.

    Brute-force oracle for the p-numbers: enumerates every tree of the
    family and tests positivity of its forced weights at a sampled point.
    """
    k, l = sum(b), sum(w)
    if k > 4 or l > 4:
        raise ValueError("oracle bound: sum(b) <= 4 and sum(w) <= 4")
    wall = Wall.partition_wall(tuple(b), tuple(w))
    point = wall_sample_point(wall, seed=seed)
    return count_positive_trees(k, l, point)


# ---------------------------------------------------------------------------
# Ray interpolation
# ---------------------------------------------------------------------------


def fit_ray_polynomial(
    g: int, k: int, l: int, p: PerimeterPair, c_max: int
) -> list[Fraction]:
    """Interpolate c -> counting_function(g, k, l, c*p) as an exact polynomial.

    The point p must lie in an open cell, so the whole ray c*p stays in it
    and the counting function restricted to the ray is a polynomial of
    degree at most 2g.  Newton forward differences at c = 1..c_max recover
    it; differences of order above 2g must vanish, otherwise the cell
    assumption is wrong and a ValueError is raised.

    Returns the monomial coefficients [a_0, .., a_deg] in c.
    """
    if c_max < 2 * g + 2:
        raise ValueError("c_max must be at least 2g + 2")
    values = [
        counting_function(g, k, l, p.scale(c)) for c in range(1, c_max + 1)
    ]
    diffs: list[Fraction] = []
    row = [Fraction(v) for v in values]
    while row:
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    for j in range(2 * g + 1, len(diffs)):
        if diffs[j] != 0:
            raise ValueError(
                f"finite difference of order {j} is {diffs[j]} != 0: "
                "degree bound 2g violated (point not in an open cell?)"
            )
    degree = min(2 * g, len(diffs) - 1)
    coeffs = [Fraction(0)] * (degree + 1)
    for j in range(degree + 1):
        if diffs[j] == 0:
            continue
        # binom(c-1, j) expanded in powers of c
        poly = [Fraction(1)]
        for i in range(j):
            # multiply by (c - 1 - i)
            shifted = [Fraction(0)] + poly
            poly = [
                s - (1 + i) * a
                for s, a in zip(shifted, poly + [Fraction(0)])
            ]
        scale = diffs[j] / factorial(j)
        for deg, a in enumerate(poly):
            coeffs[deg] += scale * a
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


# ---------------------------------------------------------------------------
# Wall-crossing constancy checks
# ---------------------------------------------------------------------------


def _sign_pattern(k: int, l: int, p: PerimeterPair) -> tuple[int, ...]:
    out = []
    for form in _all_forms(k, l):
        v = form.evaluate(p)
        out.append(0 if v == 0 else (1 if v > 0 else -1))
    return tuple(out)


def verify_wall_constancy(n_cells: int = 4) -> bool:
    """Constancy of the positive-tree count across open cells.

    Checks, for k = l <= 3, that points of distinct top-dimensional cells
    of H^+ all give (k + l - 2)! positive trees, and that points of at
    least ``n_cells`` distinct open cells of H^+ intersected with the open
    diagonal wall V_3 all give the same count p_{2,2,2} = 11 (similarly
    V_2 and p_{2,2} = 1).
    """
    for k in (1, 2, 3):
        expected = factorial(2 * k - 2)
        patterns = set()
        for seed in range(6):
            point = wall_sample_point(Wall.full_space(k, k), seed=seed)
            patterns.add(_sign_pattern(k, k, point))
            if count_positive_trees(k, k, point) != expected:
                return False
        if k > 1 and len(patterns) < 2:
            return False

    # H^+ of V_2 has exactly two open cells (only sign(L_1 - L_2) varies);
    # V_3 has enough cells to meet the requested count.
    for n, required, lengths_pool in (
        (2, 2, [(5, 1), (1, 5), (2, 7), (9, 4)]),
        (3, n_cells, [(1, 2, 4), (2, 3, 4), (4, 2, 1), (3, 4, 2), (1, 4, 2), (4, 3, 2)]),
    ):
        wall = Wall.diagonal(n)
        balance = tuple([1] * n + [-1] * n)
        rref = _rref([balance] + [eq.vector() for eq in wall.equations])
        expected = p_bw_value((1,) * n, (1,) * n)
        patterns = set()
        for lengths in lengths_pool:
            point = PerimeterPair(lengths, lengths)
            for form in _all_forms(n, n):
                if form.evaluate(point) == 0 and any(
                    x != 0 for x in _reduce_against(list(form.vector()), rref)
                ):
                    raise ValueError(f"cell point {lengths} is not in the open wall")
            patterns.add(_sign_pattern(n, n, point))
            if count_positive_trees(n, n, point) != expected:
                return False
        if len(patterns) < required:
            return False
    return True
