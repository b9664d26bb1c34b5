"""Permutation primitives and closure enumeration."""

import pytest
from hypothesis import given, strategies as st

from csgroups.perm import (
    DegreeMismatchError,
    OrderCapExceededError,
    Permutation,
    close,
    compose,
    element_order,
    from_cycles,
    identity,
    inverse,
)


def perm_strategy(deg: int):
    return st.permutations(range(deg)).map(lambda im: Permutation(tuple(im)))


class TestPermutation:
    def test_identity(self):
        e = identity(4)
        assert e.images == (0, 1, 2, 3)

    def test_compose_applies_right_factor_first(self):
        # compose(p, q)(i) = p(q(i))
        p = from_cycles(3, [(0, 1)])
        q = from_cycles(3, [(1, 2)])
        assert compose(p, q).images == (1, 2, 0)
        assert compose(q, p).images == (2, 0, 1)

    def test_from_cycles_three_cycle(self):
        p = from_cycles(5, [(0, 1, 2)])
        assert p.images == (1, 2, 0, 3, 4)

    def test_cycles_round_trip(self):
        p = from_cycles(6, [(0, 3), (1, 4, 5)])
        assert from_cycles(6, p.cycles()) == p

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            compose(identity(3), identity(4))

    def test_element_order(self):
        assert element_order(identity(3)) == 1
        assert element_order(from_cycles(6, [(0, 1), (2, 3, 4)])) == 6

    @given(perm_strategy(5))
    def test_inverse_cancels(self, p):
        assert compose(p, inverse(p)) == identity(5)
        assert compose(inverse(p), p) == identity(5)

    @given(perm_strategy(4), perm_strategy(4), perm_strategy(4))
    def test_compose_associative(self, p, q, r):
        assert compose(compose(p, q), r) == compose(p, compose(q, r))


class TestClosure:
    def test_symmetric_group_from_standard_generators(self):
        table = close([from_cycles(3, [(0, 1)]), from_cycles(3, [(0, 1, 2)])])
        assert len(table) == 6

    def test_identity_is_index_zero(self):
        table = close([from_cycles(4, [(0, 1, 2, 3)])])
        assert table.elements[0] == identity(4)

    def test_generator_order_does_not_matter(self):
        a = from_cycles(4, [(0, 1)])
        b = from_cycles(4, [(0, 1, 2, 3)])
        t1 = close([a, b])
        t2 = close([b, a])
        assert set(t1.lookup) == set(t2.lookup)
        assert len(t1) == 24

    def test_closure_cap(self):
        gens = [from_cycles(7, [(0, 1)]), from_cycles(7, [tuple(range(7))])]
        with pytest.raises(OrderCapExceededError):
            close(gens, cap=100)

    def test_single_generator_cyclic(self):
        table = close([from_cycles(5, [tuple(range(5))])])
        assert len(table) == 5
