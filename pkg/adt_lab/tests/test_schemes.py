from fractions import Fraction
from typing import List

import pytest

from adt_lab.capacity import contains, rate, two_way_region
from adt_lab.channel import ChannelConfig
from adt_lab.decomposition import PairingKind, Target, parse_plan, plan
from adt_lab.exceptions import (
    ParameterError,
    SchemeContractError,
    UnknownSchemeError,
    UnsupportedSchemeError,
)
from adt_lab.schemes import build_program, load_scheme
from adt_lab.schemes.compiler import Scheme, compile_program
from adt_lab.schemes.compose import compose
from adt_lab.schemes.elementary import non_feedback
from adt_lab.schemes.example_two import completed_layers, layer_start, vacant_layers
from adt_lab.schemes.lemma_four import (
    Orientation,
    block_tiles,
    lemma4_block,
    lemma4_i,
    mirror_swap,
    relayed_unit_23_21,
)
from adt_lab.schemes.program import FeedbackMode, ProgramBuilder, mirror, swap
from adt_lab.schemes.symbols import Kind, Node, Symbols, SymbolTable
from adt_lab.simulator import achieved_rates, run, verify


def _achieved(scheme: Scheme) -> str:
    return str(achieved_rates(run(scheme, 0)))


def test_example_one(example_one: Scheme) -> None:
    assert example_one.length == 6
    assert example_one.forward_functions == 8
    assert example_one.backward_functions == 4
    assert _achieved(example_one) == "4/3 2/3"
    assert verify(example_one).passed


@pytest.mark.parametrize("stage_length", range(1, 9))
def test_example_one_rate_law(stage_length: int) -> None:
    scheme = load_scheme(f"ex1:L={stage_length}")
    expected = rate("4/3", Fraction(4 * stage_length - 4, 3 * stage_length))
    assert achieved_rates(run(scheme, 0)) == expected


def test_example_one_approaches_perfect_feedback() -> None:
    backward = achieved_rates(run(load_scheme("ex1:L=8"), 0)).backward
    assert Fraction(4, 3) - backward <= Fraction(1, 6)


def test_example_one_schedule(example_one: Scheme) -> None:
    expected = {
        Node.N1T: {1: 6, 2: 1, 3: 6, 4: 2, 5: 5, 6: 3, 7: 5, 8: 4},
        Node.N2T: {1: 1, 2: 6, 3: 2, 4: 6, 5: 3, 6: 5, 7: 4, 8: 5},
        Node.N1: {1: 5, 2: 1, 3: 5, 4: 2},
        Node.N2: {1: 1, 2: 5, 3: 2, 4: 5},
    }
    for node, slots in expected.items():
        decoded = example_one.decoded(node)
        assert {idx: rule.slot for idx, rule in decoded.items()} == slots


def test_example_one_neutralizes_feedback_interference() -> None:
    stage_length = 3
    scheme = load_scheme(f"ex1:L={stage_length}")
    table = scheme.program.table
    sym = Symbols(table)
    bottoms = {
        Node.N1: ("Yt1", lambda slot: sym.Ft(2 * slot)),
        Node.N2: ("Yt2", lambda slot: sym.Ft(2 * slot - 1)),
    }
    for node, (channel, clean) in bottoms.items():
        receptions = [
            reception
            for reception in scheme.receptions[node]
            if reception.channel == channel
            and reception.level == 2
            and reception.slot <= 2 * stage_length - 2
        ]
        assert len(receptions) == 2 * stage_length - 2
        for reception in receptions:
            assert reception.form & ~table.owned_by(node) == clean(reception.slot)


def test_perfect_feedback_schedule() -> None:
    scheme = load_scheme("pf:1,2")
    assert {idx: rule.slot for idx, rule in scheme.decoded(Node.N1T).items()} == {
        1: 3,
        2: 1,
        3: 3,
        4: 2,
    }
    assert {idx: rule.slot for idx, rule in scheme.decoded(Node.N2T).items()} == {
        1: 1,
        2: 3,
        3: 2,
        4: 3,
    }


@pytest.mark.parametrize(
    "stage_length,layers",
    [(1, 4), (1, 8), (2, 1), (2, 3), (2, 4), (2, 8), (2, 16)],
)
def test_example_two_counts(stage_length: int, layers: int) -> None:
    scheme = load_scheme(f"ex2:L={stage_length},M={layers}")
    completed = completed_layers(stage_length, layers)
    assert scheme.length == (3 * stage_length + 1) * layers
    assert scheme.forward_functions == 4 * stage_length * completed
    assert scheme.backward_functions == 2 * stage_length * completed
    assert verify(scheme).passed


def test_example_two_needs_short_stages() -> None:
    with pytest.raises(UnsupportedSchemeError, match="L <= 2"):
        build_program("ex2:L=3,M=8")


@pytest.mark.parametrize(
    "identifier,achieved",
    [
        ("ex2:L=1,M=1", "1 1/2"),
        ("ex2:L=1,M=8", "1 1/2"),
        ("ex2:L=2,M=2", "0 0"),
        ("ex2:L=2,M=3", "8/21 4/21"),
        ("ex2:L=2,M=4", "4/7 2/7"),
        ("ex2:L=2,M=16", "1 1/2"),
    ],
)
def test_example_two_rates(identifier: str, achieved: str) -> None:
    assert _achieved(load_scheme(identifier)) == achieved


def test_example_two_vacant_slots() -> None:
    assert vacant_layers(1) == 0
    assert vacant_layers(2) == 2
    assert verify(load_scheme("ex2:L=1,M=4")).vacant_forward == 0
    report = verify(load_scheme("ex2:L=2,M=4"))
    assert report.vacant_forward == 2
    assert str(report.achieved) == "4/7 2/7"


def test_example_two_completes_layer_by_layer() -> None:
    stage_length, layers = 2, 8
    scheme = load_scheme(f"ex2:L={stage_length},M={layers}")
    lag = vacant_layers(stage_length)
    for layer in range(1, layers + 1):
        end = layer_start(stage_length, layer + 1)
        ready = max(0, layer - lag)
        for node in (Node.N1T, Node.N2T):
            decoded = scheme.decoded(node)
            assert all(decoded[idx].slot <= end for idx in range(1, 4 * stage_length * ready + 1))
        for node in (Node.N1, Node.N2):
            decoded = scheme.decoded(node)
            assert all(decoded[idx].slot <= end for idx in range(1, 2 * stage_length * ready + 1))


def test_example_two_first_layer_schedule() -> None:
    scheme = load_scheme("ex2:L=2,M=3")

    def slots(node: Node, count: int) -> List[int]:
        decoded = scheme.decoded(node)
        return [decoded[idx].slot for idx in range(1, count + 1)]

    assert slots(Node.N1T, 8) == [21, 1, 21, 2, 6, 3, 5, 4]
    assert slots(Node.N2T, 8) == [1, 21, 2, 21, 3, 6, 4, 5]
    assert slots(Node.N1, 4) == [7, 15, 5, 6]
    assert slots(Node.N2, 4) == [15, 7, 6, 5]


@pytest.mark.parametrize("stage_length", range(1, 9))
def test_ring_scheme_rates(stage_length: int) -> None:
    scheme = load_scheme(f"l4i:L={stage_length}")
    slots = 3 * stage_length + 1
    assert achieved_rates(run(scheme, 0)) == rate(
        Fraction(2 * stage_length, slots),
        Fraction(stage_length, slots),
    )


def test_ring_scheme_passes() -> None:
    scheme = load_scheme("l4i:L=2")
    report = verify(scheme)
    assert report.passed
    assert str(report.achieved) == "4/7 2/7"


def test_ring_scheme_schedule() -> None:
    scheme = load_scheme("l4i:L=2")
    expected = {
        Node.N1T: {1: 7, 2: 6, 3: 6, 4: 7},
        Node.N2T: {1: 6, 2: 7, 3: 7, 4: 6},
        Node.N1: {1: 5, 2: 3},
        Node.N2: {1: 5, 2: 3},
    }
    for node, slots in expected.items():
        assert {idx: rule.slot for idx, rule in scheme.decoded(node).items()} == slots


def test_ring_scheme_on_a_single_source() -> None:
    scheme = load_scheme("l4i:L=2")
    transcript = run(scheme, scheme.program.table.sym(Kind.A, 1))
    for event in transcript.events:
        forward = event.node in {Node.N1T, Node.N2T}
        assert event.value == int(forward and event.index == 1)
        assert event.slot <= 7


def test_backward_heavy_ring() -> None:
    scheme = compile_program(lemma4_i(2, Orientation.BACKWARD_HEAVY))
    assert scheme.config == ChannelConfig(0, 1, 1, 0)
    assert _achieved(scheme) == "2/7 4/7"
    assert verify(scheme).passed


@pytest.mark.parametrize(
    "identifier,achieved",
    [
        ("l4:v:i=1,j=1", "2 4/3"),
        ("l4:iii:i=1,j=1", "2 2/3"),
        ("pf:1,2", "4/3 0"),
        ("pf:1,0", "0 2/3"),
        ("nf:0,1", "0 0"),
        ("nf:2,3", "2 0"),
        ("nf~:2,1", "0 1"),
    ],
)
def test_catalog_rates(identifier: str, achieved: str) -> None:
    scheme = load_scheme(identifier)
    report = verify(scheme)
    assert report.passed
    assert str(report.achieved) == achieved


def test_tiled_block_has_spare_forward_parts() -> None:
    program = lemma4_block(PairingKind.III, 2, 1)
    assert program.config == ChannelConfig(4, 6, 1, 0)
    scheme = compile_program(program)
    assert verify(scheme).passed
    assert _achieved(scheme) == "4 2/3"


def test_block_side_condition() -> None:
    with pytest.raises(UnsupportedSchemeError, match="violates"):
        lemma4_block(PairingKind.V, 1, 4)


def test_block_without_tiling() -> None:
    with pytest.raises(UnsupportedSchemeError, match="tiling"):
        lemma4_block(PairingKind.IV, 1, 2)


@pytest.mark.parametrize(
    "identifier, forward, backward, achieved",
    [
        ("l4:v:i=1,j=2,L=2", 12, 12, "2 2"),
        ("l4:v:i=1,j=3,L=2", 12, 16, "2 8/3"),
        ("l4:v:i=2,j=3,L=2", 24, 20, "4 10/3"),
        ("l4:iii:i=2,j=3,L=2", 24, 8, "4 4/3"),
    ],
)
def test_blocks_with_more_backward_parts(
    identifier: str,
    forward: int,
    backward: int,
    achieved: str,
) -> None:
    scheme = load_scheme(identifier)
    assert scheme.length == 6
    assert scheme.forward_functions == forward
    assert scheme.backward_functions == backward
    assert verify(scheme, random_pairs=5, flip_checks=16).passed
    assert _achieved(scheme) == achieved


def test_relayed_cycles_do_not_collide() -> None:
    # three backward parts start their cycles in consecutive slots
    program = relayed_unit_23_21(3, 3)
    assert program.config == ChannelConfig(2, 3, 6, 3)
    assert len(program.backward_targets) == 28
    assert verify(compile_program(program)).passed


def test_relayed_unit_limits() -> None:
    with pytest.raises(ParameterError):
        relayed_unit_23_21(4, 2)
    with pytest.raises(ParameterError):
        relayed_unit_23_21(2, 0)


def test_mirrored_block_tiles_cover_the_heavy_side() -> None:
    tiles = block_tiles(PairingKind.V_T, 3, 1, 2, 4)
    assert [tile.config for tile in tiles] == [ChannelConfig(3, 6, 3, 2)]
    scheme = compile_program(tiles[0])
    assert verify(scheme, random_pairs=5, flip_checks=16).passed
    assert _achieved(scheme) == "8/3 2"


def test_swap_relabels_nodes() -> None:
    program = swap(non_feedback(1, 2))
    assert program.config == ChannelConfig(2, 1, 0, 0)
    assert verify(compile_program(program)).passed


def test_mirror_moves_to_the_backward_channel() -> None:
    program = mirror(non_feedback(1, 2))
    assert program.config == ChannelConfig(0, 0, 1, 2)
    assert program.length == 1
    assert _achieved(compile_program(program)) == "0 1"


def test_mirror_swap_of_the_spare_level_unit() -> None:
    program = mirror_swap(build_program("l4:iii:i=1,j=1"), "iii~")
    assert program.config == ChannelConfig(0, 1, 3, 2)
    assert verify(compile_program(program)).passed


def test_composed_plan_reaches_its_corner() -> None:
    cfg = ChannelConfig(2, 4, 3, 1)
    schedule = plan(cfg, Target.PERFECT_BOTH)
    region = two_way_region(cfg)
    assert contains(region, schedule.predicted)
    assert any(inequality.is_active(schedule.predicted) for inequality in region.inequalities)
    scheme = compile_program(compose(schedule))
    assert scheme.config == cfg
    report = verify(scheme, random_pairs=5, flip_checks=16)
    assert report.passed


def test_composed_plan_relabels_staggered_tiles() -> None:
    text = (
        "CONFIG 3,2/3,6\n"
        "TARGET perfect-both\n"
        "CORNER 2 4\n"
        "PAIR (3,2)^1 (1,2)^3 v 2 4 R4\n"
    )
    schedule = parse_plan(text)
    assert schedule.executable
    scheme = compile_program(compose(schedule, stage_length=2))
    assert scheme.config == ChannelConfig(3, 2, 3, 6)
    assert scheme.length == 6
    assert verify(scheme, random_pairs=5, flip_checks=16).passed
    assert _achieved(scheme) == "2 8/3"


def test_non_executable_plans_are_refused() -> None:
    schedule = plan(ChannelConfig(3, 4, 3, 4), Target.FAVOR_FORWARD)
    assert not schedule.executable
    with pytest.raises(UnsupportedSchemeError):
        compose(schedule)


def test_unknown_identifiers() -> None:
    with pytest.raises(UnknownSchemeError, match="ex1:L=<L>"):
        build_program("ex9:L=2")
    with pytest.raises(UnknownSchemeError):
        build_program("ex1:L=two")


def test_missing_plan_file() -> None:
    with pytest.raises(ParameterError):
        build_program("compose:/nonexistent/plan.txt")


def test_bad_parameters() -> None:
    with pytest.raises(ParameterError):
        build_program("l4i:L=0")


def test_uncomputable_transmission() -> None:
    table = SymbolTable.build({Kind.A: 1, Kind.B: 1})
    sym = Symbols(table)
    builder = ProgramBuilder(
        "bad",
        ChannelConfig(1, 1, 0, 0),
        table,
        length=1,
        feedback=FeedbackMode.NONE,
    )
    builder.forward(1, [sym.b(1)], [sym.b(1)])
    with pytest.raises(SchemeContractError):
        compile_program(builder.build([sym.F(1)], ()))


def test_undecoded_targets_fail_verification() -> None:
    table = SymbolTable.build({Kind.A: 1, Kind.B: 1})
    sym = Symbols(table)
    builder = ProgramBuilder(
        "silent",
        ChannelConfig(1, 1, 0, 0),
        table,
        length=1,
        feedback=FeedbackMode.NONE,
    )
    scheme = compile_program(builder.build([sym.F(1)], ()))
    assert scheme.undecoded_targets() == ("F1@1~", "F1@2~")
    assert not verify(scheme).passed
