from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from pilab.errors import NotMultilinearInLayer, Overflow
from pilab.freealg import (MultilinearPoly, alternate, capelli, capelli_list,
                           format_poly, is_alternating, layered_generators,
                           layered_space_dim, parse_poly, specialize_frames,
                           substitute, w, x)

F = Fraction


def test_capelli_1():
    assert capelli(1) == MultilinearPoly({(w(1), 1, w(2)): F(1)})


def test_capelli_2():
    expected = MultilinearPoly({
        (w(1), 1, w(2), 2, w(3)): F(1),
        (w(1), 2, w(2), 1, w(3)): F(-1),
    })
    assert capelli(2) == expected


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_capelli_term_count(m):
    c = capelli(m)
    assert len(c.terms) == factorial(m)
    assert all(abs(v) == 1 for v in c.terms.values())


@pytest.mark.parametrize("m,size", [(1, 4), (2, 8), (3, 16)])
def test_capelli_list_size(m, size):
    assert len(capelli_list(m)) == size


def test_capelli_list_contains_commutator():
    lst = capelli_list(2)
    comm = MultilinearPoly({(1, 2): F(1), (2, 1): F(-1)})
    assert comm in lst
    assert lst[0] == capelli(2)


def test_alternate_basic():
    f = MultilinearPoly.monomial((1, 2))
    out = alternate(f, [1, 2])
    assert out == MultilinearPoly({(1, 2): F(1), (2, 1): F(-1)})


def test_alternate_symmetric_is_zero():
    f = MultilinearPoly({(1, 2): F(1), (2, 1): F(1)})
    assert alternate(f, [1, 2]).is_zero()


def test_alternate_idempotent_up_to_scale():
    f = MultilinearPoly.monomial((1, 2, 3))
    once = alternate(f, [1, 2, 3])
    twice = alternate(once, [1, 2, 3])
    assert twice == once.scale(factorial(3))


def test_alternate_sign_under_swap():
    f = MultilinearPoly.monomial((w(1), 1, w(2), 2, 3))
    g = alternate(f, [1, 2, 3])
    for a, b in [(1, 2), (1, 3), (2, 3)]:
        assert g.swap(a, b) == -g
    assert is_alternating(g, [1, 2, 3])


def test_alternate_requires_layer_in_every_term():
    f = MultilinearPoly({(1, 2): F(1), (1,): F(1)})
    with pytest.raises(NotMultilinearInLayer):
        alternate(f, [1, 2])


def test_capelli_equals_alternated_word():
    for m in (1, 2, 3, 4):
        base = []
        for i in range(1, m + 1):
            base.extend([w(i), i])
        base.append(w(m + 1))
        assert capelli(m) == alternate(MultilinearPoly.monomial(base), range(1, m + 1))


@pytest.mark.parametrize("mu,t,s,expected", [
    (1, 1, 0, 1),
    (2, 1, 0, 2),
    (1, 2, 0, 1),
])
def test_layered_space_dim_small(mu, t, s, expected):
    assert layered_space_dim(mu, t, s) == expected


def test_layered_space_dim_overflow():
    with pytest.raises(Overflow):
        layered_space_dim(5, 5, 0)


def test_layered_stream_trivial():
    polys = list(layered_generators(1, 1, 0))
    assert polys == [MultilinearPoly.monomial((w(1), 1, w(2)))]


def test_layered_stream_counts_and_alternation():
    for mu, t, s in [(1, 1, 0), (2, 1, 0), (1, 2, 0), (2, 2, 0), (1, 2, 1), (1, 1, 2), (0, 0, 2)]:
        n = mu * t + s * (t + 1)
        if n > 8 or n == 0:
            continue
        polys = list(layered_generators(mu, t, s))
        assert len(polys) == layered_space_dim(mu, t, s)
        small = [tuple(range(i * t + 1, (i + 1) * t + 1)) for i in range(mu)]
        big = [tuple(range(mu * t + i * (t + 1) + 1, mu * t + (i + 1) * (t + 1) + 1))
               for i in range(s)]
        for p in polys:
            for layer in small + big:
                assert is_alternating(p, layer)


def test_layered_stream_subset_policy():
    polys = list(layered_generators(2, 1, 0, frame_policy="subsets"))
    # 2 cosets x 2^3 frame subsets
    assert len(polys) == 2 * 8


def test_substitute_identity():
    f = capelli(2)
    assert substitute(f, {1: (1,)}) == f


def test_substitute_one_slot_kills_commutator():
    comm = MultilinearPoly({(1, 2): F(1), (2, 1): F(-1)})
    assert substitute(comm, {2: ()}).is_zero()


def test_substitute_word():
    f = MultilinearPoly.monomial((1, 2))
    assert substitute(f, {1: (3, 4)}) == MultilinearPoly.monomial((3, 4, 2))


def test_format_round_trip():
    f = capelli(2) + MultilinearPoly.monomial((), F(3, 2))
    assert parse_poly(format_poly(f)) == f


@given(st.lists(st.tuples(st.lists(st.integers(-3, 3).filter(lambda t: t != 0),
                                   max_size=4),
                          st.fractions(max_denominator=6)), max_size=5))
@settings(max_examples=60, deadline=None)
def test_format_round_trip_random(raw):
    f = MultilinearPoly()
    for word, coeff in raw:
        f = f + MultilinearPoly.monomial(tuple(word), coeff)
    assert parse_poly(format_poly(f)) == f
