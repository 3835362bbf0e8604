import pickle
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mating_forge.angles import (Angle, AngleError, angle_new, angles_with_denominator, conjugate, in_closed_arc,
                                 in_open_arc, is_periodic, orbit, orbit_type, preimages, times_d)

from conftest import A

dens = st.integers(min_value=1, max_value=2000)


@st.composite
def angles(draw):
    d = draw(dens)
    return Angle(draw(st.integers(min_value=0, max_value=d - 1)), d)


def test_reduction_examples():
    assert angle_new(2, 6) == A("1/3")
    assert angle_new(7, 3) == A("1/3")
    assert str(angle_new(0, 5)) == "0/1"
    assert angle_new(-1, 3) == A("2/3")
    with pytest.raises(AngleError):
        angle_new(1, 0)


def test_doubling_examples():
    assert times_d(A("1/3")) == A("2/3")
    assert times_d(A("2/3")) == A("1/3")
    assert times_d(A("1/7")) == A("2/7")
    assert times_d(A("1/4"), 3) == A("3/4")


def test_orbit_type_examples():
    assert orbit_type(A("1/3")) == (0, 2)
    assert orbit_type(A("1/6")) == (1, 2)
    assert orbit_type(A("1/7")) == (0, 3)
    assert orbit_type(A("0")) == (0, 1)
    assert orbit_type(A("1/4")) == (2, 1)
    assert orbit(A("1/7")) == [A("1/7"), A("2/7"), A("4/7")]
    assert is_periodic(A("1/3")) and not is_periodic(A("1/6"))


def test_conjugate_examples():
    assert conjugate(A("1/3")) == A("2/3")
    assert conjugate(A("0")) == A("0")
    assert conjugate(A("1/7")) == A("6/7")


def test_arcs():
    assert in_open_arc(A("1/2"), A("1/3"), A("2/3"))
    assert not in_open_arc(A("1/3"), A("1/3"), A("2/3"))
    assert in_closed_arc(A("1/3"), A("1/3"), A("2/3"))
    assert in_open_arc(A("0"), A("5/6"), A("1/6"))  # wraps through 0
    assert not in_open_arc(A("1/2"), A("5/6"), A("1/6"))


def test_parse_and_pickle():
    a = A("10/14")
    assert (a.num, a.den) == (5, 7) and str(a) == "5/7"
    assert pickle.loads(pickle.dumps(a)) == a
    assert a.as_fraction() == Fraction(5, 7)
    assert Angle.from_fraction(Fraction(3, 9)) == A("1/3")
    with pytest.raises(AttributeError):
        a.num = 3
    with pytest.raises(ValueError):
        Angle.parse("x/3")


def test_denominator_universe():
    assert angles_with_denominator(4) == [A("0"), A("1/4"), A("1/2"), A("3/4")]


@given(angles())
def test_reduced_and_ranged(a):
    assert 0 <= a.num < a.den or (a.num == 0 and a.den == 1)
    assert Fraction(a.num, a.den).denominator == a.den


@given(angles())
def test_conjugation_commutes_with_doubling(a):
    assert conjugate(times_d(a)) == times_d(conjugate(a))
    assert conjugate(conjugate(a)) == a


@given(angles())
def test_orbit_type_matches_brute_force(a):
    seq = [a.as_fraction()]
    while True:
        nxt = (2 * seq[-1]) % 1
        if nxt in seq:
            i = seq.index(nxt)
            assert orbit_type(a) == (i, len(seq) - i)
            return
        seq.append(nxt)


@given(angles(), st.integers(min_value=2, max_value=5))
def test_preimages_map_back(a, d):
    pre = preimages(a, d)
    assert len(set(pre)) == d
    assert all(times_d(p, d) == a for p in pre)


@given(angles(), angles())
def test_total_order(a, b):
    assert (a < b) + (b < a) + (a == b) == 1
