from itertools import permutations

import pytest

from stratavol.permutation import (
    centralizer_elements,
    centralizer_generators,
    centralizer_order,
    compose,
    conjugate,
    cycle_count,
    cycle_type,
    cycles,
    from_cycle_type,
    identity,
    inverse,
    is_transitive,
    partitions,
)


def test_compose_applies_right_first():
    p = (1, 2, 0)
    q = (1, 0, 2)
    assert compose(p, q) == tuple(p[q[i]] for i in range(3))


def test_inverse():
    p = (2, 0, 3, 1)
    assert compose(p, inverse(p)) == identity(4)
    assert compose(inverse(p), p) == identity(4)


def test_conjugate_is_homomorphism():
    p = (1, 2, 0, 3)
    q = (0, 2, 1, 3)
    pi = (3, 1, 0, 2)
    assert conjugate(pi, compose(p, q)) == compose(conjugate(pi, p), conjugate(pi, q))


def test_cycles_start_at_minimum():
    assert cycles((1, 0, 3, 2)) == [(0, 1), (2, 3)]
    assert cycle_count((1, 0, 3, 2)) == 2
    assert cycle_type((1, 2, 0, 4, 3)) == (3, 2)


def test_from_cycle_type_round_trip():
    for ctype in partitions(6):
        assert cycle_type(from_cycle_type(ctype)) == ctype


def test_partition_counts():
    assert sum(1 for _ in partitions(8)) == 22
    assert list(partitions(3)) == [(3,), (2, 1), (1, 1, 1)]


def test_transitivity():
    assert is_transitive((1, 2, 0), (0, 1, 2))
    assert not is_transitive((1, 0, 2), (0, 1, 2))


@pytest.mark.parametrize("ctype", [(4,), (2, 2), (3, 1), (2, 1, 1), (1, 1, 1, 1)])
def test_centralizer_elements_match_order_and_commute(ctype):
    p = from_cycle_type(ctype)
    elems = set(centralizer_elements(p))
    assert len(elems) == centralizer_order(ctype)
    assert all(compose(z, p) == compose(p, z) for z in elems)
    # against the brute-force centralizer
    n = len(p)
    brute = {z for z in permutations(range(n)) if compose(z, p) == compose(p, z)}
    assert elems == brute


def test_generators_lie_in_centralizer():
    p = from_cycle_type((3, 2, 2, 1))
    for gen in centralizer_generators(p):
        assert compose(gen, p) == compose(p, gen)
