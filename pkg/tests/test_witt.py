import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gkm.lie import enumerate_lyndon_dims, lyndon_dims
from gkm.moonshine import block_generator_table, j_coefficients, monster_generator_table, uv_specialization
from gkm.series import Box, divisors, moebius
from gkm.witt import (CoverageError, check_generators, generator_series, nonzero, pushforward_grading,
                      pushforward_table, verify_witt_identity, witt_dimensions)


def necklace(n, k):
    """Classical one-variable Witt count (1/k) sum_{d | k} mu(k/d) n^d."""
    return sum(moebius(k // d) * n ** d for d in divisors(k)) // k


def test_two_generators():
    d = witt_dimensions({(1,): 2}, Box.orthant(1, 6))
    assert [d[(k,)] for k in range(1, 7)] == [2, 1, 2, 3, 6, 9]


@pytest.mark.parametrize("n", [1, 2, 3, 5, 196884])
def test_one_variable_matches_necklace_count(n):
    d = witt_dimensions({(1,): n}, Box.orthant(1, 6))
    assert [d[(k,)] for k in range(1, 7)] == [necklace(n, k) for k in range(1, 7)]
    assert d[(2,)] == n * (n - 1) // 2


def test_monster_generators_give_c1():
    j = j_coefficients(10)
    d = witt_dimensions(monster_generator_table(3, j), Box.orthant(2, upper=(3, 3)))
    assert d[(1, 1)] == 196884


def test_identity_for_one_generator():
    g = {(1,): 1}
    d = witt_dimensions(g, Box.orthant(1, 5))
    assert nonzero(d) == {(1,): 1}
    box = Box.orthant(1, 5)
    assert generator_series(g, box).terms == {(0,): 1, (1,): -1}
    assert verify_witt_identity(g, d, box) == []


def test_identity_holds_and_tampering_is_caught():
    g = {(1,): 2}
    box = Box.orthant(1, 6)
    d = witt_dimensions(g, box)
    assert verify_witt_identity(g, d, box) == []
    bad = dict(d)
    bad[(3,)] = 3
    report = verify_witt_identity(g, bad, box)
    assert report and report[0].exponent == (3,)


def test_coverage_gap_named():
    g = {(1,): 2}
    box = Box.orthant(1, 4)
    d = witt_dimensions(g, box)
    del d[(3,)]
    with pytest.raises(CoverageError) as err:
        verify_witt_identity(g, d, box)
    assert err.value.degree == (3,)


def test_generator_table_checks():
    with pytest.raises(ValueError):
        check_generators({(0, 0): 1})
    with pytest.raises(ValueError):
        check_generators({(1, -1): 1})
    with pytest.raises(ValueError):
        check_generators({(1,): -1})
    with pytest.raises(ValueError):
        check_generators({(1,): 1, (1, 0): 1})
    assert check_generators({(1,): 0, (2,): 3}) == {(2,): 3}


def test_pushforward_examples():
    g = {(1, 0): 1, (0, 1): 1}
    assert pushforward_grading(g, [[1, 0], [0, 1]]) == g
    assert pushforward_grading(g, [[1, 1]]) == {(1,): 2}
    with pytest.raises(ValueError):
        pushforward_grading({(1, 1): 1}, [[1, -1]])


def test_monster_grading_collapses_to_c_of_i_plus_j_minus_1():
    j = j_coefficients(12)
    jmax = 5
    pushed = pushforward_grading(block_generator_table(jmax, j), uv_specialization(jmax))
    want = monster_generator_table(jmax, j)
    # image degrees (l + 1, j - l); those with both coordinates <= some bound are complete
    for (a, b), n in want.items():
        if a + b - 1 <= jmax:
            assert pushed[(a, b)] == n


def random_table(rnd, nvars=2, max_support=4, max_count=5, max_deg=3):
    degs = [tuple(rnd.randint(0, max_deg) for _ in range(nvars)) for _ in range(rnd.randint(1, max_support))]
    return {d: rnd.randint(1, max_count) for d in degs if any(d)}


def test_pushforward_commutes_with_dimensions():
    rnd = random.Random(7)
    for _ in range(20):
        g = random_table(rnd, nvars=3, max_deg=2)
        if not g:
            continue
        psi = [[1, 1, 0], [0, 1, 1]]
        box = Box.orthant(3, 6)
        upstairs = pushforward_table(witt_dimensions(g, box), psi)
        down = witt_dimensions(pushforward_grading(g, psi), Box.orthant(2, 6))
        for e, v in nonzero(down).items():
            # a degree downstairs is complete when every preimage of height <= 6 was computed,
            # which holds if its own height is at most 6 (psi never lowers height here)
            if sum(e) <= 6:
                assert upstairs.get(e, 0) == v, e


@settings(max_examples=25, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any), st.integers(1, 3),
                       min_size=1, max_size=3))
def test_witt_matches_lyndon_enumeration(g):
    box = Box.orthant(2, 5)
    want = nonzero(enumerate_lyndon_dims(g, box, max_symbols=9)) if sum(g.values()) <= 9 else None
    got = nonzero(witt_dimensions(g, box))
    if want is not None:
        assert got == want
    assert got == nonzero(lyndon_dims(g, box, max_symbols=20))


def test_integrality_is_checked_per_degree():
    d = witt_dimensions({(1, 0): 3, (0, 1): 2, (1, 1): 5}, Box.orthant(2, 7))
    assert all(isinstance(v, int) and v >= 0 for v in d.values())


def test_threaded_evaluation_matches_serial():
    g = {(1, 0): 2, (0, 1): 3, (1, 1): 1}
    box = Box.orthant(2, 12)
    assert witt_dimensions(g, box, workers=4) == witt_dimensions(g, box, workers=1)
