import numpy as np
import pytest

from adt_lab.capacity import rate
from adt_lab.channel import ChannelConfig
from adt_lab.decomposition import (
    Pairing,
    PairingKind,
    SchemePlan,
    Target,
    parse_plan,
    plan,
    serialize_plan,
)
from adt_lab.exceptions import DomainError
from adt_lab.schemes import load_scheme
from adt_lab.schemes.compiler import Scheme
from adt_lab.schemes.symbols import Node
from adt_lab.simulator import (
    achieved_rates,
    dump_transcript,
    random_sources,
    reference_region,
    run,
    verify,
    with_finite_rates,
)


def test_sources_must_fit_the_table(example_one: Scheme) -> None:
    with pytest.raises(DomainError):
        run(example_one, 1 << example_one.program.table.width)


def test_decoded_values_are_the_sums(example_one: Scheme) -> None:
    rng = np.random.default_rng(7)
    table = example_one.program.table
    sources = random_sources(rng, table.width)
    transcript = run(example_one, sources)
    targets = {
        Node.N1T: example_one.program.forward_targets,
        Node.N2T: example_one.program.forward_targets,
        Node.N1: example_one.program.backward_targets,
        Node.N2: example_one.program.backward_targets,
    }
    for event in transcript.events:
        expected = bin(targets[event.node][event.index - 1] & sources).count("1") % 2
        assert event.value == expected
        assert 1 <= event.slot <= transcript.length


def test_runs_are_linear(example_one: Scheme) -> None:
    rng = np.random.default_rng(3)
    width = example_one.program.table.width
    first = random_sources(rng, width)
    second = random_sources(rng, width)
    joint = run(example_one, first ^ second)
    left = run(example_one, first)
    right = run(example_one, second)
    for both, one, other in zip(joint.slots, left.slots, right.slots):
        assert both == one ^ other


def test_flip_does_not_reach_back_in_time(example_one: Scheme) -> None:
    base = run(example_one, 0)
    flipped = run(example_one, 0, flips={Node.N1: {0}})
    assert base.slots[0] == flipped.slots[0]


def test_report(example_one: Scheme) -> None:
    report = verify(example_one, seed=11)
    assert report.seed == 11
    assert report.passed
    assert report.basis_failures == ()
    assert report.linearity_failures == 0
    assert report.causality_failures == 0
    assert report.region_member
    assert (report.forward_functions, report.backward_functions, report.length) == (8, 4, 6)


def test_verification_is_deterministic(example_one: Scheme) -> None:
    assert verify(example_one, seed=5) == verify(example_one, seed=5)


def test_genie_schemes_use_the_feedback_baseline() -> None:
    scheme = load_scheme("pf:1,2")
    achieved = achieved_rates(run(scheme, 0))
    assert str(achieved) == "4/3 0"
    assert all(inequality.holds(achieved) for inequality in reference_region(scheme).inequalities)


def test_transcript_dump(example_one: Scheme) -> None:
    transcript = run(example_one, 0)
    lines = dump_transcript(transcript).splitlines()
    slot_lines = [line for line in lines if line.startswith("t=")]
    decode_lines = [line for line in lines if line.startswith("dec ")]
    assert len(slot_lines) == 6
    assert len(decode_lines) == len(transcript.events)
    assert slot_lines[0].startswith("t=1 X1=00 X2=00")


def test_silent_scheme_rates() -> None:
    assert str(achieved_rates(run(load_scheme("nf:0,1"), 0))) == "0 0"


def test_plans_carry_their_finite_rates() -> None:
    schedule = with_finite_rates(plan(ChannelConfig(1, 2, 2, 1), Target.PERFECT_BOTH))
    assert schedule.predicted == rate("4/3", "4/3")
    assert schedule.finite == rate("4/3", "2/3")
    text = serialize_plan(schedule)
    assert "FINITE 4/3 2/3" in text
    assert parse_plan(text).finite == schedule.finite


def test_finite_rates_follow_the_stage_length() -> None:
    schedule = plan(ChannelConfig(1, 2, 2, 1), Target.PERFECT_BOTH)
    assert with_finite_rates(schedule, stage_length=3).finite == rate("4/3", "8/9")


def test_rate_only_plans_have_no_finite_rates() -> None:
    pairing = Pairing((1, 2), 1, (2, 1), 1, PairingKind.RATE, rate("4/3", "4/3"), "R4")
    corner = rate("4/3", "4/3")
    schedule = SchemePlan(ChannelConfig(1, 2, 2, 1), Target.PERFECT_BOTH, corner, (pairing,))
    assert with_finite_rates(schedule).finite is None


def test_no_flip_reaches_back_in_time(example_one: Scheme) -> None:
    base = run(example_one, 0)
    for node in Node:
        for index, reception in enumerate(example_one.receptions[node]):
            flipped = run(example_one, 0, flips={node: {index}})
            earlier = reception.slot - 1
            assert flipped.slots[:earlier] == base.slots[:earlier]
            now, then = flipped.slots[earlier], base.slots[earlier]
            assert (now.x1, now.x2) == (then.x1, then.x2)


def test_every_reception_is_flipped_once(example_one: Scheme) -> None:
    positions = sum(len(receptions) for receptions in example_one.receptions.values())
    report = verify(example_one, random_pairs=1, flip_checks=positions)
    assert report.causality_failures == 0
