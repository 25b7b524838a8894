import math
from fractions import Fraction

import pytest

from adt_lab.capacity import Inequality, rate
from adt_lab.channel import (
    Band,
    ChannelConfig,
    Regime,
    classify_regime,
    format_ratio,
    forward_outputs,
    level_ratio,
    output_forms,
)
from adt_lab.exceptions import ConfigParseError, DegenerateChannelError, DomainError
from adt_lab.gf2 import BitVector


def test_parse_and_format() -> None:
    cfg = ChannelConfig.parse(" 1, 2 / 2,1 ")
    assert cfg == ChannelConfig(1, 2, 2, 1)
    assert str(cfg) == "1,2/2,1"
    assert cfg.gamma == Fraction(1, 2)


@pytest.mark.parametrize("text", ["1,2", "a,b/c,d", "1,2/2,-1", ""])
def test_parse_rejects(text: str) -> None:
    with pytest.raises(ConfigParseError):
        ChannelConfig.parse(text)


def test_negative_levels() -> None:
    with pytest.raises(DomainError):
        ChannelConfig(-1, 0, 0, 0)


def test_ratios() -> None:
    assert level_ratio(1, 2) == Fraction(1, 2)
    assert level_ratio(1, 0) == math.inf
    assert level_ratio(0, 0) is None


def test_rationals_print_in_lowest_terms() -> None:
    values = (Fraction(4, 2), Fraction(8, 6), Fraction(0), math.inf, None)
    assert [format_ratio(value) for value in values] == ["2", "4/3", "0", "inf", "undefined"]
    assert str(rate(2, "4/3")) == "2 4/3"
    assert str(Inequality(Fraction(1), Fraction(-1), Fraction(8, 2))) == "1 -1 4"


def test_forward_law_on_one_two() -> None:
    x1 = BitVector.parse("10")
    x2 = BitVector.parse("00")
    y1, y2 = forward_outputs(x1, x2, 1, 2)
    assert str(y1) == "10"
    assert str(y2) == "01"


def test_forms_follow_the_bit_law() -> None:
    x1 = BitVector.parse("101")
    x2 = BitVector.parse("011")
    y1, y2 = forward_outputs(x1, x2, 1, 3)
    form1, form2 = output_forms(x1.levels(), x2.levels(), 1, 3)
    assert BitVector.from_levels(form1) == y1
    assert BitVector.from_levels(form2) == y2


def test_transforms() -> None:
    cfg = ChannelConfig(1, 2, 3, 1)
    assert cfg.mirrored() == ChannelConfig(3, 1, 1, 2)
    assert cfg.swapped() == ChannelConfig(2, 1, 1, 3)


@pytest.mark.parametrize(
    "ratio,band",
    [
        (Fraction(0), Band.LOW),
        (Fraction(2, 3), Band.LOW),
        (Fraction(3, 4), Band.MID_LOW),
        (Fraction(1), Band.ONE),
        (Fraction(5, 4), Band.MID_HIGH),
        (Fraction(3, 2), Band.HIGH),
        (math.inf, Band.HIGH),
    ],
)
def test_bands(ratio: Fraction, band: Band) -> None:
    assert Band.of(ratio) == band


@pytest.mark.parametrize(
    "text,regime",
    [
        ("1,2/2,1", Regime.R4),
        ("2,4/3,1", Regime.R4),
        ("2,1/1,2", Regime.R4P),
        ("1,3/1,3", Regime.R1),
        ("3,1/3,1", Regime.R1P),
        ("1,1/1,1", Regime.MIDDLE),
        ("1,1/2,1", Regime.R2),
        ("1,3/1,1", Regime.R3),
    ],
)
def test_regimes(text: str, regime: Regime) -> None:
    assert classify_regime(ChannelConfig.parse(text)).regime == regime


def test_regime_of_silent_direction() -> None:
    with pytest.raises(DegenerateChannelError):
        classify_regime(ChannelConfig(0, 0, 1, 2))
