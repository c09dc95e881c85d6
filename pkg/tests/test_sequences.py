import random
import threading
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import random_interior_u
from toricvol import build_germ, orthant
from toricvol.errors import InvariantViolation
from toricvol.ideals import MonomialIdeal, lct, maximal_ideal, multiplicity, power, random_primary_ideal
from toricvol.sequences import (
    GradedSequence,
    check_graded,
    default_truncation,
    lct_sequence,
    mult_sequence,
    normalized_multiplicity,
)
from toricvol.valuations import ToricValuation, log_discrepancy, normalized_volume, volume


def test_powers_of_x2_y3(a2):
    s = GradedSequence.powers(MonomialIdeal(a2, [(2, 0), (0, 3)]))
    nm = normalized_multiplicity(s, 8)
    assert nm.value == Fraction(25, 6)
    assert set(nm.lct.trend) == {Fraction(5, 6)}
    assert set(nm.mult.trend) == {6}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_maximal_ideal_powers_give_n_to_the_n(n):
    s = GradedSequence.powers(maximal_ideal(orthant(n)))
    nm = normalized_multiplicity(s, 4)
    assert nm.value == n**n
    assert set(nm.lct.trend) == {n}
    assert set(nm.mult.trend) == {1}


def test_default_truncations():
    assert default_truncation(2) == 24
    assert default_truncation(3) == 12


def test_indexing_from_one(a2):
    s = GradedSequence.powers(maximal_ideal(a2))
    with pytest.raises(IndexError):
        s[0]


GERMS = [
    [(1, 0), (0, 1)],
    [(1, 0), (1, 3)],
    [(1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 1, 1)],
    [(1, 0, 1), (0, 1, 1), (-1, -1, 1)],
]
_germs = [build_germ(r) for r in GERMS]


@pytest.mark.parametrize("g", _germs[:2], ids=["A2", "planar"])
def test_gradedness_exhaustive_rank2(g):
    rng = random.Random(5)
    check_graded(GradedSequence.powers(random_primary_ideal(g, rng, max_power=3, extra=2)), 10)
    u = random_interior_u(g, rng, spread=3)
    check_graded(GradedSequence.of_valuation(ToricValuation.of(g, u)), 10)


@pytest.mark.parametrize("g", _germs[2:], ids=["blowup", "P2"])
def test_gradedness_exhaustive_rank3(g):
    rng = random.Random(6)
    check_graded(GradedSequence.powers(random_primary_ideal(g, rng, max_power=2, extra=1, spread=2)), 10)
    check_graded(GradedSequence.of_valuation(ToricValuation.of(g, (Fraction(1, 3), Fraction(1, 5), 1))), 10)


def test_check_graded_detects_violation(a2):
    # m -> (x^m) for m odd, (x^(m+5)) for m even is not graded
    def bad(m):
        return MonomialIdeal(a2, [(m + 5 * (m % 2 == 0), 0), (0, m)])

    with pytest.raises(InvariantViolation):
        check_graded(GradedSequence(a2, bad), 6)


@given(st.sampled_from(_germs), st.integers(0, 10**6), st.integers(2, 3))
def test_subsequence_has_same_normalized_multiplicity(g, seed, N):
    a = random_primary_ideal(g, random.Random(seed), max_power=3, extra=2, spread=2)
    s = GradedSequence.powers(a)
    sub = s.subsequence(N)
    for M in (1, 2, 4):
        assert normalized_multiplicity(sub, M).value == normalized_multiplicity(s, M).value
    assert lct_sequence(s, 3).lower == lct(a)
    assert mult_sequence(s, 4).estimate == multiplicity(a)


@given(st.sampled_from(_germs), st.integers(0, 10**6))
def test_valuation_sequence_bounds(g, seed):
    v = ToricValuation.of(g, random_interior_u(g, random.Random(seed), spread=3))
    s = GradedSequence.of_valuation(v)
    lt = lct_sequence(s, 6)
    assert lt.lower <= log_discrepancy(v)
    mt = mult_sequence(s, 8)
    assert all(volume(v) <= x for x in mt.trend)


@pytest.mark.parametrize(
    "rays,u",
    [
        ([(1, 0), (0, 1)], (Fraction(2, 3), 1)),
        ([(1, 0), (1, 3)], (2, 1)),
        ([(1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 1, 1)], (Fraction(1, 7), Fraction(2, 9), 1)),
        ([(1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 1, 1)], (Fraction(1, 3), Fraction(1, 5), 1)),
    ],
)
def test_normalized_multiplicity_of_valuation_sequence(rays, u):
    g = build_germ(rays)
    v = ToricValuation.of(g, u)
    nm = normalized_multiplicity(GradedSequence.of_valuation(v))
    nv = normalized_volume(v)
    assert nm.value <= Fraction(105, 100) * nv
    assert nm.value >= Fraction(95, 100) * nv


def test_mult_sequence_rejects_increasing_doubling(a2):
    # a_1 = (x, y), a_2 = (x^5, y^5): not a genuine graded sequence
    def ev(m):
        return MonomialIdeal(a2, [(1, 0), (0, 1)]) if m == 1 else MonomialIdeal(a2, [(5 * m, 0), (0, 5 * m)])

    with pytest.raises(InvariantViolation):
        mult_sequence(GradedSequence(a2, ev), 2)


def test_cache_is_thread_safe(blowup):
    calls = []

    def ev(m):
        calls.append(m)
        return power(maximal_ideal(blowup), m)

    s = GradedSequence(blowup, ev)
    results = []
    threads = [threading.Thread(target=lambda: results.append(s[3])) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r is results[0] for r in results)
    assert s[3] is results[0]
