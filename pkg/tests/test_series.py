from fractions import Fraction
from itertools import product
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from gkm.series import (Box, ExactSeries, binomial_row, divisors, moebius, multinomial_weight,
                        one_minus_pow, partitions, product_over_table, series_mul)


def poly(box, terms):
    return ExactSeries.from_terms(box, terms.items())


# --- series_mul ---------------------------------------------------------------

def test_one_plus_t_times_one_minus_t():
    box = Box.orthant(1, 5)
    assert poly(box, {(0,): 1, (1,): 1}) * poly(box, {(0,): 1, (1,): -1}) == poly(box, {(0,): 1, (2,): -1})


def test_one_is_identity():
    box = Box.orthant(2, 4)
    s = poly(box, {(0, 0): 3, (1, 2): -7, (2, 2): Fraction(1, 3)})
    assert ExactSeries.one(box) * s == s


def test_laurent_product():
    box = Box((0, -2), (2, 2))
    a = poly(box, {(0, 0): 1, (1, 1): -1})
    b = poly(box, {(0, 0): 1, (1, -1): -1})
    assert (a * b).terms == {(0, 0): 1, (1, 1): -1, (1, -1): -1, (2, 0): 1}


def test_product_is_truncated_to_the_box():
    box = Box.orthant(1, 2)
    t = poly(box, {(1,): 1})
    assert (t * t * t).terms == {}


def test_variable_count_mismatch():
    with pytest.raises(ValueError):
        series_mul(ExactSeries.one(Box.orthant(1, 2)), ExactSeries.one(Box.orthant(2, 2)))


def test_terms_outside_box_rejected():
    with pytest.raises(ValueError):
        ExactSeries(Box.orthant(1, 2), {(3,): 1})


def sparse_series(nvars=2, bound=4):
    exps = st.tuples(*[st.integers(0, bound)] * nvars)
    return st.dictionaries(exps, st.integers(-5, 5), max_size=6)


@settings(max_examples=60, deadline=None)
@given(sparse_series(), sparse_series(), sparse_series())
def test_mul_associative_and_commutative(a, b, c):
    box = Box.orthant(2, 6)
    a, b, c = (poly(box, x) for x in (a, b, c))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(sparse_series(), sparse_series())
def test_mul_matches_naive_convolution(a, b):
    box = Box.orthant(2, 5)
    want = {}
    for (ea, ca), (eb, cb) in product(a.items(), b.items()):
        e = (ea[0] + eb[0], ea[1] + eb[1])
        if e in box:
            want[e] = want.get(e, 0) + ca * cb
    assert (poly(box, a) * poly(box, b)).terms == {e: c for e, c in want.items() if c}


# --- one_minus_pow --------------------------------------------------------------

def test_one_minus_pow_examples():
    assert one_minus_pow((1,), 2, Box.orthant(1, 3)).terms == {(0,): 1, (1,): -2, (2,): 1}
    assert one_minus_pow((1, 1), 196884, Box.orthant(2, 2)).terms == {(0, 0): 1, (1, 1): -196884}
    assert one_minus_pow((2,), 3, Box.orthant(1, 5)).terms == {(0,): 1, (2,): -3, (4,): 3}


def test_one_minus_pow_errors():
    with pytest.raises(ValueError):
        one_minus_pow((0, 0), 1, Box.orthant(2, 3))
    with pytest.raises(ValueError):
        one_minus_pow((1,), -1, Box.orthant(1, 3))
    with pytest.raises(ValueError):
        # v^-1 never leaves a box that is unbounded below in v
        one_minus_pow((0, -1), 1, Box((0, None), (3, 3)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 30), st.integers(0, 30), st.sampled_from([(1,), (2,), (3,)]))
def test_one_minus_pow_exponents_add(d, e, alpha):
    box = Box.orthant(1, 9)
    assert one_minus_pow(alpha, d, box) * one_minus_pow(alpha, e, box) == one_minus_pow(alpha, d + e, box)


def test_huge_exponent_binomials_exact():
    d = 196884
    s = one_minus_pow((1,), d, Box.orthant(1, 6))
    assert s.terms == {(k,): (-1) ** k * comb(d, k) for k in range(7)}
    assert binomial_row(d, 6) == [comb(d, k) for k in range(7)]
    squared = s * s
    assert squared.terms == {(k,): (-1) ** k * comb(2 * d, k) for k in range(7)}


# --- product_over_table ------------------------------------------------------

def test_product_over_table_examples():
    assert product_over_table({(1,): 1}, Box.orthant(1, 4)).terms == {(0,): 1, (1,): -1}
    p = product_over_table({(1, 0): 1, (0, 1): 1, (1, 1): 1}, Box.orthant(2, 2))
    # the xy coefficient cancels: -1 from the factor 1 - xy, +1 from x * y
    assert p.terms == {(0, 0): 1, (1, 0): -1, (0, 1): -1}


def test_a2_root_product_is_weyl_numerator():
    # (1-x)(1-y)(1-xy) = 1 - x - y + x^2 y + x y^2 - x^2 y^2, six terms for |S3| = 6
    p = product_over_table({(1, 0): 1, (0, 1): 1, (1, 1): 1}, Box.orthant(2, 6))
    assert p.terms == {(0, 0): 1, (1, 0): -1, (0, 1): -1, (2, 1): 1, (1, 2): 1, (2, 2): -1}


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.sampled_from([(1, 0), (0, 1), (1, 1), (2, 1), (0, 2)]), st.integers(0, 6), min_size=1),
       st.randoms())
def test_product_order_independent(table, rnd):
    box = Box.orthant(2, 5)
    items = list(table.items())
    rnd.shuffle(items)
    prod = ExactSeries.one(box)
    for a, d in items:
        prod = prod * one_minus_pow(a, d, box)
    assert prod == product_over_table(table, box)


# --- moebius, divisors ---------------------------------------------------------

def test_moebius_examples():
    assert (moebius(1), moebius(6), moebius(12)) == (1, 1, 0)
    assert [moebius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    with pytest.raises(ValueError):
        moebius(0)


def test_moebius_sum_vanishes_up_to_10000():
    for n in range(1, 10001):
        assert sum(moebius(d) for d in divisors(n)) == (1 if n == 1 else 0)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


# --- partitions, multinomial weights --------------------------------------------

def test_partition_examples():
    got = list(partitions((2, 2), [(1, 1), (2, 2), (2, 1), (1, 2)]))
    assert sorted(map(sorted, (p.items() for p in got))) == [[((1, 1), 2)], [((2, 2), 1)]]
    assert list(partitions((1,), [(1,)])) == [{(1,): 1}]
    assert list(partitions((3,), [(2,)])) == []


def test_partition_errors():
    with pytest.raises(ValueError):
        list(partitions((0, 0), [(1, 0)]))
    with pytest.raises(ValueError):
        list(partitions((2, 1), [(0, 0), (1, 0)]))


def naive_partitions(beta, parts):
    """Every multiplicity vector with entries bounded by the height of beta."""
    parts = sorted(set(parts))
    bound = sum(beta)
    out = []
    for mult in product(range(bound + 1), repeat=len(parts)):
        total = tuple(sum(k * p[t] for k, p in zip(mult, parts)) for t in range(len(beta)))
        if total == tuple(beta):
            out.append({p: k for p, k in zip(parts, mult) if k})
    return out


nonzero_degree = st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda e: e != (0, 0))


@settings(max_examples=80, deadline=None)
@given(st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda b: 0 < sum(b) <= 8),
       st.lists(nonzero_degree, min_size=1, max_size=5, unique=True))
def test_partitions_match_exhaustive_search(beta, parts):
    got = list(partitions(beta, parts))
    key = lambda p: sorted(p.items())
    assert len(got) == len({tuple(key(p)) for p in got}), "duplicate multiset"
    assert sorted(map(key, got)) == sorted(map(key, naive_partitions(beta, parts)))


def test_multinomial_weight():
    assert multinomial_weight({(1,): 1}) == 1
    assert multinomial_weight({(1,): 2}) == Fraction(1, 2)
    assert multinomial_weight({(1,): 1, (2,): 2}) == 1
    a = {(1, 0): 3, (0, 1): 2, (1, 1): 1}
    assert multinomial_weight(a) == Fraction(factorial(5), factorial(3) * factorial(2))
    with pytest.raises(ValueError):
        multinomial_weight({})


# --- boxes ------------------------------------------------------------------------

def test_box_multiples():
    box = Box((0, -1), (4, 5))
    assert box.multiples((1, 2)) == (0, 2)
    assert box.multiples((1, -1)) == (0, 1)
    lo, hi = Box.orthant(2).multiples((1, 0))
    assert hi == float("inf")


def test_box_height_bound():
    box = Box.orthant(3, 4)
    assert (1, 2, 1) in box
    assert (1, 2, 2) not in box
    assert (-1, 0, 0) not in box
