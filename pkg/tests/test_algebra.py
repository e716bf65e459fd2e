import json
from fractions import Fraction
from math import comb

import pytest

from pilab.algebra import (FDAlgebra, basis_vector, block_triangular,
                           direct_sum, dump_algebra, from_json_dict,
                           load_algebra, matrix_algebra, monoid_word_count,
                           monoid_words, multiply, nilpotent_free,
                           quotient_by_ideal, radical, to_json_dict, ts_index,
                           unitalize, universal_fundamental,
                           wedderburn_blocks)
from pilab.errors import (DimensionMismatch, InvalidParams, NotAssociative,
                          NotSplit, ParseError, TooLarge)
from pilab.linalg import solve_coords

F = Fraction


def rational_field():
    return matrix_algebra(1)


def zero_square(dim=2):
    """A nonzero algebra with A*A = 0."""
    table = [[{} for _ in range(dim)] for _ in range(dim)]
    return FDAlgebra(dim, [f"z{i}" for i in range(dim)], table)


def test_matrix_units_product():
    m2 = matrix_algebra(2)
    e11 = basis_vector(4, 0)
    e12 = basis_vector(4, 1)
    e21 = basis_vector(4, 2)
    assert multiply(m2, e11, e12) == e12
    assert multiply(m2, e11, e21) == (0, 0, 0, 0)


def test_multiply_zero():
    m2 = matrix_algebra(2)
    x = tuple(F(k) for k in (1, 2, 3, 4))
    assert multiply(m2, x, (F(0),) * 4) == (0, 0, 0, 0)


def test_multiply_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        multiply(matrix_algebra(2), (F(1),), basis_vector(4, 0))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_matrix_algebra_semisimple(n):
    a = matrix_algebra(n)
    assert radical(a) == []
    assert wedderburn_blocks(a) == [n]
    assert ts_index(a) == (n * n, 0)


def test_ut2_radical():
    a = block_triangular(1, 1)
    assert a.dim == 3
    (j,) = radical(a)
    # radical is spanned by the strictly upper unit e12 (basis index 2)
    assert j[2] != 0 and j[0] == 0 and j[1] == 0
    assert ts_index(a) == (2, 1)
    assert wedderburn_blocks(a) == [1, 1]


def test_zero_multiplication_algebra_is_radical():
    a = zero_square(2)
    assert len(radical(a)) == 2
    assert ts_index(a) == (0, 1)
    assert wedderburn_blocks(a) == []


def test_nilpotent_free_index():
    a = nilpotent_free(1, 2)
    assert a.dim == 2
    assert ts_index(a) == (0, 2)


def test_block_triangular_dims():
    a = block_triangular(2, 1)
    assert a.dim == 4 + 1 + 2
    assert ts_index(a) == (5, 1)
    assert wedderburn_blocks(a) == [2, 1]


def test_direct_sum_structure():
    a = direct_sum(matrix_algebra(2), matrix_algebra(3))
    assert a.dim == 13
    assert wedderburn_blocks(a) == [3, 2]
    assert ts_index(a) == (13, 0)


def test_direct_sum_ts_additivity():
    for a, b in [(matrix_algebra(2), block_triangular(1, 1)),
                 (block_triangular(1, 1), nilpotent_free(1, 2)),
                 (rational_field(), matrix_algebra(2))]:
        ta, sa = ts_index(a)
        tb, sb = ts_index(b)
        assert ts_index(direct_sum(a, b)) == (ta + tb, max(sa, sb))


def test_m2_plus_q_blocks():
    a = direct_sum(matrix_algebra(2), rational_field())
    assert wedderburn_blocks(a) == [2, 1]


def test_unitalize():
    a = unitalize(zero_square(1))
    assert a.has_unit
    assert ts_index(a) == (1, 1)


def test_radical_is_ideal():
    for a in [block_triangular(1, 1), block_triangular(2, 1),
              unitalize(nilpotent_free(2, 2))]:
        rad = radical(a)
        rad_rows = [dict(enumerate(v)) for v in rad]
        for v in rad:
            for i in range(a.dim):
                e = basis_vector(a.dim, i)
                for prod in (multiply(a, v, e), multiply(a, e, v)):
                    if any(prod):
                        assert solve_coords(rad_rows, dict(enumerate(prod))) is not None


def test_quotient_has_zero_radical():
    for a in [block_triangular(1, 1), block_triangular(2, 1)]:
        abar = quotient_by_ideal(a, radical(a))
        assert radical(abar) == []


def test_associativity_validation():
    table = [[{} for _ in range(2)] for _ in range(2)]
    table[0][0] = {1: F(1)}
    table[1][1] = {0: F(1)}
    # x*x = y, y*y = x is not associative: (xx)x = yx = 0, x(xx) = xy = 0... pick worse
    table[0][1] = {}
    table[1][0] = {}
    # (xx)y = y*y = x but x(xy) = x*0 = 0
    with pytest.raises(NotAssociative):
        FDAlgebra(2, ["x", "y"], table)


def test_bad_unit_rejected():
    table = [[{0: F(1)}]]
    with pytest.raises(InvalidParams):
        FDAlgebra(1, ["e"], table, [F(2)])


def test_not_split_complex_numbers():
    # Q[i]: field extension; center spectrum is irrational
    table = [[{0: F(1)}, {1: F(1)}], [{1: F(1)}, {0: F(-1)}]]
    a = FDAlgebra(2, ["1", "i"], table, [F(1), F(0)])
    with pytest.raises(NotSplit):
        wedderburn_blocks(a)


def test_not_split_quaternions():
    # rational Hamilton quaternions: a division algebra of dimension 4
    basis = ["1", "i", "j", "k"]
    mult = {
        ("1", "1"): ("1", 1), ("1", "i"): ("i", 1), ("1", "j"): ("j", 1), ("1", "k"): ("k", 1),
        ("i", "1"): ("i", 1), ("j", "1"): ("j", 1), ("k", "1"): ("k", 1),
        ("i", "i"): ("1", -1), ("j", "j"): ("1", -1), ("k", "k"): ("1", -1),
        ("i", "j"): ("k", 1), ("j", "i"): ("k", -1),
        ("j", "k"): ("i", 1), ("k", "j"): ("i", -1),
        ("k", "i"): ("j", 1), ("i", "k"): ("j", -1),
    }
    idx = {s: i for i, s in enumerate(basis)}
    table = [[{} for _ in range(4)] for _ in range(4)]
    for (x, y), (z, c) in mult.items():
        table[idx[x]][idx[y]] = {idx[z]: F(c)}
    a = FDAlgebra(4, basis, table, [F(1), F(0), F(0), F(0)])
    with pytest.raises(NotSplit):
        wedderburn_blocks(a)


def test_universal_fundamental_example():
    a, grading = universal_fundamental([1], 1, 1)
    assert a.dim == 5
    assert sorted(a.basis_names) == sorted(["e", "x", "ex", "xe", "exe"])
    assert ts_index(a) == (1, 1)


def test_universal_fundamental_word_counts():
    for i in range(0, 5):
        for j in range(0, 5):
            if i + j == 0 or i + j > 8:
                continue
            assert monoid_word_count(i, j) == comb(j + 1, i)


def test_universal_fundamental_dimension_formula():
    a, grading = universal_fundamental([1, 1], 1, 2)
    d, m = grading.abar_dim, grading.nvars
    expected = sum(count * d ** i * m ** j
                   for (i, j), count in grading.counts.items())
    assert a.dim == expected == grading.dimension


def test_universal_fundamental_radical_nilpotency():
    for blocks, s in [([1], 1), ([1], 2), ([2], 1), ([1, 1], 1)]:
        a, _ = universal_fundamental(blocks, s, 1)
        t, s_out = ts_index(a)
        assert s_out == s
        assert t == sum(n * n for n in blocks)


def test_universal_fundamental_quotient_by_x_ideal():
    a, grading = universal_fundamental([2], 1, 2)
    # killing every basis element whose word contains a b-slot leaves Abar
    assert ts_index(a)[0] == 4


def test_universal_fundamental_too_large():
    with pytest.raises(TooLarge):
        universal_fundamental([3], 3, 3, max_dim=100)


def test_monoid_words_no_aa():
    for w in monoid_words(3):
        assert "aa" not in w


def test_json_round_trip(tmp_path):
    for a in [matrix_algebra(2), block_triangular(2, 1), zero_square(2),
              nilpotent_free(2, 2)]:
        doc = to_json_dict(a)
        b = from_json_dict(json.loads(json.dumps(doc)))
        assert b.dim == a.dim
        assert b.table == a.table
        assert b.unit_coords == a.unit_coords
        path = tmp_path / "alg.json"
        dump_algebra(a, path)
        c = load_algebra(path)
        assert c.table == a.table


def test_json_rationals_exact(tmp_path):
    table = [[{0: F(1, 3)}]]
    a = FDAlgebra(1, ["e"], table, None, validate=False)
    path = tmp_path / "frac.json"
    dump_algebra(a, path)
    b = load_algebra(path)
    assert b.table[0][0][0] == F(1, 3)


def test_json_parse_errors():
    with pytest.raises(ParseError):
        from_json_dict({"dim": 1})
    with pytest.raises(ParseError):
        from_json_dict({"dim": 1, "basis": ["e"], "unit": None, "table": [[["x"]]]})


def test_associativity_check_on_constructors():
    for a in [matrix_algebra(3), block_triangular(1, 2), nilpotent_free(2, 2),
              direct_sum(matrix_algebra(2), rational_field())]:
        a.check_associativity()
