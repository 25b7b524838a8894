import itertools
from collections import Counter
from fractions import Fraction

import pytest

from adt_lab.capacity import contains, rate, two_way_region
from adt_lab.channel import ChannelConfig
from adt_lab.decomposition import (
    Pairing,
    PairingKind,
    R4Case,
    Target,
    block_rate,
    chains,
    decompose,
    parse_plan,
    plan,
    r4_case,
    serialize_plan,
    side_condition_holds,
    validate,
)
from adt_lab.exceptions import PlanParseError


def test_low_band() -> None:
    assert str(decompose(2, 4)) == "(1,2)^2"
    assert str(decompose(1, 4)) == "(0,1)^2 (1,2)^1"


def test_high_band() -> None:
    decomposition = decompose(3, 1)
    assert decomposition.count((1, 0)) == 1
    assert decomposition.count((2, 1)) == 1


def test_empty_channel() -> None:
    decomposition = decompose(0, 0)
    assert decomposition.parts == ()
    assert str(decomposition) == "-"


def test_middle_band_stays_whole() -> None:
    decomposition = decompose(4, 5)
    assert decomposition.undecomposed
    assert decomposition.parts == (((4, 5), 1),)


@pytest.mark.parametrize("m,n", list(itertools.product(range(21), repeat=2)))
def test_every_decomposition_is_valid(m: int, n: int) -> None:
    assert validate(decompose(m, n), m, n)


@pytest.mark.parametrize("scale", [1, 2, 3, 5])
def test_band_rules_agree_on_boundaries(scale: int) -> None:
    # alpha = 1/2: both low-band rules give (1,2)^m
    assert decompose(scale, 2 * scale).parts == (((1, 2), scale),)
    assert decompose(2 * scale, 4 * scale).parts == (((1, 2), 2 * scale),)
    # alpha = 2: both high-band rules give (2,1)^n
    assert decompose(2 * scale, scale).parts == (((2, 1), scale),)


def test_validate_rejects_wrong_sums() -> None:
    assert not validate(decompose(2, 4), 2, 5)


@pytest.mark.parametrize("m,n", list(itertools.product(range(13), repeat=2)))
def test_level_chains_realize_the_decomposition(m: int, n: int) -> None:
    expected = Counter()
    for part, mult in decompose(m, n).parts:
        expected[part] += mult
    assert Counter(part for part, _ in chains(m, n)) == expected


def test_chains_are_disjoint() -> None:
    levels = [level for _, chain in chains(5, 8) for level in chain]
    assert sorted(levels) == list(range(1, 9))


def test_side_conditions() -> None:
    assert side_condition_holds(PairingKind.V, 1, 3)
    assert not side_condition_holds(PairingKind.V, 1, 4)
    assert side_condition_holds(PairingKind.IV, 2, 1)
    assert not side_condition_holds(PairingKind.IV, 3, 1)
    assert not side_condition_holds(PairingKind.II, 2, 1)


def test_block_rates() -> None:
    assert block_rate(PairingKind.V, 1, 1) == rate(2, "4/3")
    assert block_rate(PairingKind.III, 1, 1) == rate(2, "2/3")
    assert block_rate(PairingKind.IV, 2, 2) == rate("8/3", "8/3")


def test_plan_for_two_four_three_one() -> None:
    schedule = plan(ChannelConfig(2, 4, 3, 1), Target.PERFECT_BOTH)
    assert len(schedule.pairings) == 2
    assert {pairing.kind for pairing in schedule.pairings} == {PairingKind.II, PairingKind.IV}
    assert schedule.predicted == rate("8/3", 2)
    assert schedule.executable


def test_plan_for_one_two_two_one() -> None:
    schedule = plan(ChannelConfig(1, 2, 2, 1), Target.PERFECT_BOTH)
    assert [pairing.kind for pairing in schedule.pairings] == [PairingKind.IV]
    assert schedule.predicted == rate("4/3", "4/3")
    assert schedule.executable


def test_plan_with_spare_forward_levels() -> None:
    schedule = plan(ChannelConfig(2, 3, 1, 0), Target.FAVOR_BACKWARD)
    assert [pairing.kind for pairing in schedule.pairings] == [PairingKind.III]
    assert schedule.predicted == rate(2, "2/3")


@pytest.mark.parametrize("target", list(Target))
@pytest.mark.parametrize("m,n,mt,nt", list(itertools.product(range(5), repeat=4)))
def test_plans_stay_inside_the_region(target: Target, m: int, n: int, mt: int, nt: int) -> None:
    cfg = ChannelConfig(m, n, mt, nt)
    schedule = plan(cfg, target)
    assert contains(two_way_region(cfg), schedule.predicted)


def test_silent_plan() -> None:
    schedule = plan(ChannelConfig(0, 0, 0, 0), Target.FAVOR_FORWARD)
    assert schedule.predicted == rate(0, 0)


def test_plan_records_round_trip() -> None:
    schedule = plan(ChannelConfig(2, 4, 3, 1), Target.PERFECT_BOTH)
    text = serialize_plan(schedule)
    assert "PREDICTED 8/3 2" in text
    assert "EXECUTABLE true" in text
    parsed = parse_plan(text)
    assert parsed.config == schedule.config
    assert parsed.pairings == schedule.pairings
    assert parsed.predicted == schedule.predicted
    assert "FINITE -" in text
    assert parsed.finite is None


def test_plan_records_reject_garbage() -> None:
    with pytest.raises(PlanParseError):
        parse_plan("CONFIG 1,2/2,1\nTARGET perfect-both\nPAIR (1,2) x iv 1 1 R4\n")


def test_mirror_swap_of_a_pairing() -> None:
    pairing = Pairing((1, 2), 1, (1, 0), 1, PairingKind.II, block_rate(PairingKind.II, 1, 1), "R4")
    assert pairing.executable
    flipped = pairing.mirror_swapped()
    assert flipped.kind == PairingKind.II_T
    assert (flipped.forward, flipped.backward) == ((0, 1), (2, 1))
    assert flipped.rate == rate("2/3", "4/3")
    assert flipped.rate.forward == Fraction(2, 3)


@pytest.mark.parametrize(
    "config, expected",
    [
        ("1,2/2,1", R4Case.BOTH),
        ("1,2/1,2", R4Case.BACKWARD),
        ("2,1/2,1", R4Case.FORWARD),
        ("2,1/1,2", R4Case.NEITHER),
    ],
)
def test_r4_cases(config: str, expected: R4Case) -> None:
    assert r4_case(ChannelConfig.parse(config)) is expected


def _pairing(kind: PairingKind, forward: tuple, i: int, backward: tuple, j: int) -> Pairing:
    return Pairing(forward, i, backward, j, kind, block_rate(kind, i, j), "R4")


def test_executable_counts_follow_the_side_conditions() -> None:
    assert _pairing(PairingKind.V, (2, 3), 1, (2, 1), 3).executable
    assert not _pairing(PairingKind.V, (2, 3), 1, (2, 1), 4).executable
    assert _pairing(PairingKind.III, (2, 3), 2, (1, 0), 3).executable
    assert not _pairing(PairingKind.III, (2, 3), 1, (1, 0), 2).executable
    assert _pairing(PairingKind.V_T, (1, 2), 3, (3, 2), 1).executable
    # no construction for unequal iv counts
    assert not _pairing(PairingKind.IV, (1, 2), 1, (2, 1), 2).executable
