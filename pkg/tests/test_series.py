import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pilab.errors import InsufficientData, InvalidParams
from pilab.series import (MultiNiceRational, NiceRational, NoFit, dimension,
                          expand, fit, quasi_polynomial)


def test_expand_geometric():
    assert expand(NiceRational([1], [1]), 5) == [1, 1, 1, 1, 1]


def test_expand_two_pole():
    assert expand(NiceRational([1], [1, 2]), 6) == [1, 1, 2, 2, 3, 3]


def test_expand_cancellation():
    f = NiceRational([1, -1], [1])
    assert f.denominator_exponents == ()
    assert expand(f, 4) == [1, 0, 0, 0]


def test_dimension_single():
    assert dimension(NiceRational([1], [1])) == 1


def test_dimension_double():
    assert dimension(NiceRational([1], [1, 2])) == 2


def test_dimension_after_cancellation():
    assert dimension(NiceRational([1, 1], [2])) == 1  # (1+t)/(1-t^2) = 1/(1-t)


def test_dimension_zero_function():
    assert dimension(NiceRational([], [1, 1])) == 0


def test_quasi_polynomial_floor():
    qp = quasi_polynomial(NiceRational([1], [1, 2]))
    assert qp.modulus == 2
    for k in range(qp.valid_from, qp.valid_from + 12):
        assert qp.value(k) == k // 2 + 1
    assert qp.degree == 1


def test_quasi_polynomial_linear():
    qp = quasi_polynomial(NiceRational([1], [1, 1]))
    assert qp.modulus == 1
    for k in range(20):
        assert qp.value(k) == k + 1


def test_quasi_polynomial_indicator():
    qp = quasi_polynomial(NiceRational([1], [3]))
    assert qp.modulus == 3
    for k in range(qp.valid_from, 15):
        assert qp.value(k) == (1 if k % 3 == 0 else 0)
    assert qp.degree == 0


def random_nice(rng):
    n_num = rng.randint(0, 4)
    numer = [rng.randint(-4, 4) for _ in range(n_num)] + [rng.randint(1, 4)]
    exps = [rng.randint(1, 4) for _ in range(rng.randint(0, 3))]
    return NiceRational(numer, exps)


def test_expand_matches_quasi_polynomial_random():
    rng = random.Random(5)
    for _ in range(40):
        f = random_nice(rng)
        qp = quasi_polynomial(f)
        upto = qp.valid_from + 3 * qp.modulus + 1
        coeffs = expand(f, upto + 1)
        for k in range(qp.valid_from, upto + 1):
            assert qp.value(k) == coeffs[k], (f, k)


def test_dimension_equals_degree_plus_one_when_positive():
    rng = random.Random(9)
    seen = 0
    while seen < 25:
        f = random_nice(rng)
        qp = quasi_polynomial(f)
        probe = expand(f, qp.valid_from + 6 * max(1, qp.modulus))
        if not probe or min(probe[qp.valid_from:]) <= 0:
            continue
        seen += 1
        assert dimension(f) == qp.degree + 1


def test_fit_constant():
    f = fit([1, 1, 1, 1, 1, 1], [1])
    assert f == NiceRational([1], [1])


def test_fit_linear():
    f = fit([1, 2, 3, 4, 5, 6], [1, 1])
    assert f == NiceRational([1], [1, 1])


def test_fit_no_fit():
    assert fit([1, 1, 2, 2, 3, 3], [1]) is NoFit


def test_fit_insufficient():
    with pytest.raises(InsufficientData):
        fit([1, 2], [1], margin=5)


def test_fit_round_trip_random():
    rng = random.Random(3)
    for _ in range(30):
        f = random_nice(rng)
        need = len(f.numerator) + 5 + 1
        prefix = expand(f, max(need, 8))
        got = fit(prefix, f.denominator_exponents)
        assert got == f


def test_invalid_numerator():
    with pytest.raises(InvalidParams):
        NiceRational([Fraction(1, 2)], [1])


def test_invalid_exponent():
    with pytest.raises(InvalidParams):
        NiceRational([1], [0])


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_quasi_round_trip_property(seed):
    rng = random.Random(seed)
    f = random_nice(rng)
    qp = quasi_polynomial(f)
    upto = qp.valid_from + 2 * max(1, qp.modulus)
    coeffs = expand(f, upto + 1)
    for k in range(qp.valid_from, upto + 1):
        assert qp.value(k) == coeffs[k]


def test_multivariate_box_expand():
    # 1/((1-x)(1-y)) over a 3x3 box: all ones
    f = MultiNiceRational(2, {(0, 0): 1}, [(1, 0), (0, 1)])
    out = f.box_expand([3, 3])
    assert out == {(i, j): 1 for i in range(3) for j in range(3)}


def test_multivariate_matches_univariate_diagonal():
    f = MultiNiceRational(1, {(0,): 1}, [(1,), (2,)])
    out = f.box_expand([8])
    uni = expand(NiceRational([1], [1, 2]), 8)
    assert [out.get((k,), 0) for k in range(8)] == uni


def test_multivariate_rejects_mixed_sign():
    with pytest.raises(InvalidParams):
        MultiNiceRational(2, {(0, 0): 1}, [(1, -1)])
