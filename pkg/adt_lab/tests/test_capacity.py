import itertools
from fractions import Fraction

import pytest

from adt_lab.capacity import (
    NON_NEGATIVE,
    CapacityRegion,
    GainClass,
    Inequality,
    RatePair,
    baseline_region,
    c_no,
    c_pf,
    capacity_pairs,
    contains,
    corner_points,
    corollary1_holds,
    dominating_corners,
    interaction_gain,
    rate,
    two_way_region,
)
from adt_lab.channel import ChannelConfig
from adt_lab.exceptions import DegenerateChannelError


def _c_no_by_band(m: int, n: int) -> Fraction:
    if m == n:
        return Fraction(n)
    alpha = Fraction(m, n) if n else None
    if alpha is not None and alpha <= Fraction(2, 3):
        return Fraction(m)
    if alpha is not None and alpha < 1:
        return Fraction(2 * n, 3)
    if alpha is not None and alpha < Fraction(3, 2):
        return Fraction(2 * m, 3)
    return Fraction(n)


def _c_pf_by_band(m: int, n: int) -> Fraction:
    if m == n:
        return Fraction(n)
    return Fraction(2 * max(m, n), 3)


@pytest.mark.parametrize("m,n", list(itertools.product(range(13), repeat=2)))
def test_capacities_match_band_formulas(m: int, n: int) -> None:
    assert c_no(m, n) == _c_no_by_band(m, n)
    assert c_pf(m, n) == _c_pf_by_band(m, n)


def test_spot_values() -> None:
    assert c_no(1, 2) == 1
    assert c_pf(1, 2) == Fraction(4, 3)
    assert c_pf(2, 1) == Fraction(4, 3)
    assert c_no(1, 0) == 0


def test_region_of_one_two_two_one() -> None:
    cfg = ChannelConfig(1, 2, 2, 1)
    region = two_way_region(cfg)
    assert contains(region, rate("4/3", "4/3"))
    assert rate("4/3", "4/3") in corner_points(region)
    assert not contains(region, rate("3/2", 1))


def test_region_of_two_four_three_one() -> None:
    region = two_way_region(ChannelConfig(2, 4, 3, 1))
    assert contains(region, rate("8/3", 2))
    assert rate("8/3", 2) in corner_points(region)


def test_silent_configuration_has_one_corner() -> None:
    region = two_way_region(ChannelConfig(0, 0, 0, 0))
    assert corner_points(region) == [RatePair(Fraction(0), Fraction(0))]


def test_region_serialization() -> None:
    region = two_way_region(ChannelConfig(1, 2, 2, 1))
    lines = str(region).splitlines()
    assert "1 0 4/3" in lines
    assert "1 1 3" in lines
    assert str(rate("4/3", "2/3")) == "4/3 2/3"


@pytest.mark.parametrize("m,n,mt,nt", list(itertools.product(range(0, 9, 2), repeat=4)))
def test_baselines_nest_around_the_region(m: int, n: int, mt: int, nt: int) -> None:
    cfg = ChannelConfig(m, n, mt, nt)
    region = two_way_region(cfg)
    for corner in corner_points(baseline_region(cfg, "no")):
        assert contains(region, corner)
    outer = baseline_region(cfg, "pf")
    for corner in corner_points(region):
        assert contains(outer, corner)


def test_unknown_baseline() -> None:
    with pytest.raises(ValueError):
        baseline_region(ChannelConfig(1, 2, 2, 1), "genie")


@pytest.mark.parametrize(
    "text,gain",
    [
        ("1,2/4,2", GainClass.PERFECT_FEEDBACK_ACHIEVABLE),
        ("1,2/2,1", GainClass.PERFECT_FEEDBACK_ACHIEVABLE),
        ("1,3/1,3", GainClass.FEEDBACK_GAIN_NO_INTERACTION_GAIN),
        ("1,1/1,1", GainClass.NO_FEEDBACK_GAIN),
    ],
)
def test_gain_classes(text: str, gain: GainClass) -> None:
    assert interaction_gain(ChannelConfig.parse(text)) == gain


@pytest.mark.parametrize("text", ["1,2/2,1", "1,2/1,0", "1,2/4,2"])
def test_corollary_regimes(text: str) -> None:
    assert corollary1_holds(ChannelConfig.parse(text))


@pytest.mark.parametrize("text", ["1,3/1,3", "1,1/1,1", "0,0/0,0", "0,3/3,2"])
def test_outside_corollary_regimes(text: str) -> None:
    assert not corollary1_holds(ChannelConfig.parse(text))


def test_capacity_pairs() -> None:
    baseline, perfect = capacity_pairs(ChannelConfig(1, 2, 1, 0))
    assert baseline == rate(1, 0)
    assert perfect == rate("4/3", "2/3")


@pytest.mark.parametrize("text", ["0,0/1,2", "1,2/0,0", "0,0/0,0"])
def test_gain_needs_both_directions(text: str) -> None:
    with pytest.raises(DegenerateChannelError):
        interaction_gain(ChannelConfig.parse(text))


def test_dominance_is_checked_along_edges() -> None:
    region = CapacityRegion(
        (
            Inequality(Fraction(1), Fraction(0), Fraction(2)),
            Inequality(Fraction(0), Fraction(1), Fraction(2)),
            Inequality(Fraction(1), Fraction(1), Fraction(2)),
        )
        + NON_NEGATIVE,
    )
    baseline = rate(1, "1/2")
    assert not any(
        corner.forward >= baseline.forward and corner.backward >= baseline.backward
        for corner in corner_points(region)
    )
    assert dominating_corners(region, baseline) == [
        baseline,
        rate(1, 1),
        rate("3/2", "1/2"),
    ]


def test_nothing_dominates_an_outside_point() -> None:
    region = two_way_region(ChannelConfig(1, 2, 1, 0))
    assert dominating_corners(region, rate(2, 2)) == []
