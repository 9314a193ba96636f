from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tcbivar.intervals import (
    EmptyIntervalError,
    ExtNat,
    INF,
    Interval,
    ext_max,
    ext_min,
    shifted_ceil_div,
    shifted_product,
)


def test_infinity_absorbs_addition():
    assert INF + ExtNat(3) == INF
    assert ExtNat(3) + INF == INF
    assert ExtNat(2) + ExtNat(5) == ExtNat(7)


def test_comparisons_are_total():
    values = [ExtNat(0), ExtNat(1), ExtNat(7), INF]
    for a in values:
        for b in values:
            assert (a <= b) or (b <= a)
    assert ExtNat(3) < INF
    assert not INF < INF
    assert INF <= INF


def test_negative_rejected():
    with pytest.raises(ValueError):
        ExtNat(-1)


def test_shifted_product_conventions():
    assert shifted_product(ExtNat(2), ExtNat(1)) == ExtNat(5)
    assert shifted_product(INF, ExtNat(0)) == INF
    assert shifted_product(ExtNat(0), INF) == INF


def test_shifted_ceil_div_conventions():
    # ceil((a+1)/(b+1)) - 1
    assert shifted_ceil_div(ExtNat(2), ExtNat(0)) == ExtNat(2)
    assert shifted_ceil_div(ExtNat(5), ExtNat(1)) == ExtNat(2)
    assert shifted_ceil_div(ExtNat(4), ExtNat(1)) == ExtNat(2)  # ceil(5/2)=3
    assert shifted_ceil_div(INF, ExtNat(3)) == INF
    assert shifted_ceil_div(ExtNat(9), INF) == ExtNat(0)
    assert shifted_ceil_div(INF, INF) == ExtNat(0)


def test_saturating_sub():
    assert ExtNat(5).saturating_sub(ExtNat(2)) == ExtNat(3)
    assert ExtNat(2).saturating_sub(ExtNat(5)) == ExtNat(0)
    assert INF.saturating_sub(ExtNat(400)) == INF
    assert ExtNat(7).saturating_sub(INF) == ExtNat(0)


def test_interval_invariants():
    with pytest.raises(EmptyIntervalError):
        Interval(ExtNat(3), ExtNat(1))
    assert Interval(INF, INF).is_point
    # lo = inf forces hi = inf through the order
    with pytest.raises(EmptyIntervalError):
        Interval(INF, ExtNat(4))


def test_meet():
    a = Interval(ExtNat(1), ExtNat(5))
    b = Interval(ExtNat(3), INF)
    assert a.meet(b) == Interval(ExtNat(3), ExtNat(5))
    with pytest.raises(EmptyIntervalError):
        a.meet(Interval(ExtNat(6), ExtNat(9)))


def test_json_round_trip():
    for iv in (Interval.full(), Interval.exactly(3), Interval.exactly(None),
               Interval(ExtNat(1), ExtNat(4))):
        assert Interval.from_json(iv.to_json()) == iv


_extnats = st.one_of(st.integers(min_value=0, max_value=40).map(ExtNat),
                     st.just(INF))


@given(_extnats, _extnats)
def test_shifted_ceil_div_inverts_shifted_product(a, b):
    # the divided bound is exactly the least x with (x+1)(b+1) >= a+1
    x = shifted_ceil_div(a, b)
    if b.is_inf:
        assert x == ExtNat(0)
        return
    assert a <= shifted_product(x, b)
    if not x.is_inf and x.value > 0:
        assert not a <= shifted_product(ExtNat(x.value - 1), b)


@given(_extnats, _extnats, _extnats)
def test_ext_minmax_consistency(a, b, c):
    assert ext_max(a, b) == ext_max(b, a)
    assert ext_min(a, ext_min(b, c)) == ext_min(ext_min(a, b), c)
    assert ext_min(a, b) <= ext_max(a, b)
