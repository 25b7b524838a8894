"""Single-block schemes: non-feedback fills, genie baselines and unit blocks."""
from adt_lab.channel import ChannelConfig
from adt_lab.exceptions import UnsupportedSchemeError
from adt_lab.schemes.program import (
    FeedbackMode,
    Program,
    ProgramBuilder,
    mirror,
    swap,
)
from adt_lab.schemes.symbols import Kind, Symbols, SymbolTable


def _silent(m: int, n: int) -> Program:
    builder = ProgramBuilder(
        f"nf:{m},{n}",
        ChannelConfig(m, n, 0, 0),
        SymbolTable.build({}),
        length=1,
        feedback=FeedbackMode.NONE,
    )
    return builder.build((), (), {"m": m, "n": n})


def _non_feedback_program(m: int, n: int) -> Program:  # noqa: C901
    if m == n:
        table = SymbolTable.build({Kind.A: n, Kind.B: n})
        sym = Symbols(table)
        builder = ProgramBuilder(
            f"nf:{m},{n}",
            ChannelConfig(m, n, 0, 0),
            table,
            length=1,
            feedback=FeedbackMode.NONE,
        )
        builder.forward(
            1,
            [sym.a(idx) for idx in range(1, n + 1)],
            [sym.b(idx) for idx in range(1, n + 1)],
        )
        return builder.build([sym.F(idx) for idx in range(1, n + 1)], (), {"m": m, "n": n})
    if min(m, n) == 0:
        return _silent(m, n)
    if (m, n) in {(1, 2), (2, 1)}:
        table = SymbolTable.build({Kind.A: 1, Kind.B: 1})
        sym = Symbols(table)
        builder = ProgramBuilder(
            f"nf:{m},{n}",
            ChannelConfig(m, n, 0, 0),
            table,
            length=1,
            feedback=FeedbackMode.NONE,
        )
        builder.forward(1, [sym.a(1), sym.a(1)], [sym.b(1), sym.b(1)])
        return builder.build([sym.F(1)], (), {"m": m, "n": n})
    if (m, n) == (2, 3):
        table = SymbolTable.build({Kind.A: 2, Kind.B: 2})
        sym = Symbols(table)
        builder = ProgramBuilder(
            "nf:2,3",
            ChannelConfig(2, 3, 0, 0),
            table,
            length=1,
            feedback=FeedbackMode.NONE,
        )
        builder.forward(1, [sym.a(1), sym.a(2)], [sym.b(2), sym.b(1)])
        return builder.build([sym.F(1), sym.F(2)], (), {"m": 2, "n": 3})
    if (m, n) == (3, 2):
        return swap(_non_feedback_program(2, 3), name="nf:3,2")
    raise UnsupportedSchemeError(f"no non-feedback scheme for ({m},{n})")


def non_feedback(m: int, n: int, backward: bool = False) -> Program:
    """
    Non-feedback scheme reaching c_no(m, n) in one slot.

    Channels with a zero level count carry nothing; (k, k) sends one
    function per level; (1, 2) and (2, 1) repeat each symbol on both
    levels; (2, 3) staggers two symbols so that the middle level carries
    a clean sum; (3, 2) is its relabeling.

    :param m: cross levels.
    :param n: direct levels.
    :param backward: place the scheme on the backward channel instead.
    :raises UnsupportedSchemeError: for a non-elementary channel.
    :return: program.
    """
    program = _non_feedback_program(m, n)
    if backward:
        program = mirror(program, name=f"nf~:{m},{n}")
    return program


def perfect_feedback_12() -> Program:
    """Genie feedback on (1,2): four sums in three slots."""
    table = SymbolTable.build({Kind.A: 4, Kind.B: 4})
    sym = Symbols(table)
    builder = ProgramBuilder(
        "pf:1,2",
        ChannelConfig(1, 2, 0, 0),
        table,
        length=3,
        feedback=FeedbackMode.GENIE,
    )
    builder.forward(1, [sym.a(1), sym.a(2)], [sym.b(2), sym.b(1)])
    builder.forward(2, [sym.a(3), sym.a(4)], [sym.b(4), sym.b(3)])
    # each transmitter relays what the opposite receiver still lacks
    builder.forward(3, [sym.F(1), sym.F(3)], [sym.F(2), sym.F(4)])
    return builder.build([sym.F(idx) for idx in range(1, 5)], ())


def perfect_feedback_10() -> Program:
    """Genie feedback on a backward (1,0) channel: two sums in three slots."""
    table = SymbolTable.build({Kind.AT: 2, Kind.BT: 2})
    sym = Symbols(table)
    builder = ProgramBuilder(
        "pf:1,0",
        ChannelConfig(0, 0, 1, 0),
        table,
        length=3,
        feedback=FeedbackMode.GENIE,
    )
    builder.backward(1, [sym.at(1)], [sym.bt(2)])
    builder.backward(2, [sym.Ft(2)], [sym.Ft(1)])
    builder.backward(3, [sym.Ft(1)], [sym.Ft(2)])
    return builder.build((), [sym.Ft(1), sym.Ft(2)])


def _spare_level_stage(builder: ProgramBuilder, sym: Symbols) -> None:
    # forward slots 1 and 2 of the (2,3) unit blocks
    builder.forward(1, [sym.a(1), sym.a(2)], [sym.b(2), sym.b(1)])
    builder.forward(
        2,
        [sym.a(3) ^ sym.bt(2), sym.a(4), sym.a(3)],
        [sym.b(4) ^ sym.at(1), sym.b(3), sym.b(4)],
    )


def feedback_unit_23_10() -> Program:
    """
    (2,3)/(1,0) unit: C_no forward while the third forward level relays feedback.

    Forward rate 2 and backward rate 2/3 over three slots.

    :return: program.
    """
    table = SymbolTable.build({Kind.A: 6, Kind.B: 6, Kind.AT: 2, Kind.BT: 2})
    sym = Symbols(table)
    builder = ProgramBuilder(
        "l4:iii",
        ChannelConfig(2, 3, 1, 0),
        table,
        length=3,
    )
    _spare_level_stage(builder, sym)
    builder.forward(
        3,
        [sym.a(5) ^ sym.Ft(1) ^ sym.a(4), sym.a(6), sym.a(5)],
        [sym.b(6) ^ sym.Ft(2) ^ sym.b(3), sym.b(5), sym.b(6)],
    )
    builder.backward(1, [sym.at(1)], [sym.bt(2)])
    builder.backward(2, [sym.Ft(2) ^ sym.b(3)], [sym.Ft(1) ^ sym.a(4)])
    builder.backward(
        3,
        [sym.Ft(1) ^ sym.b(5) ^ sym.b(4)],
        [sym.Ft(2) ^ sym.a(6) ^ sym.a(3)],
    )
    return builder.build(
        [sym.F(idx) for idx in range(1, 7)],
        [sym.Ft(1), sym.Ft(2)],
    )


def feedback_unit_23_21() -> Program:
    """
    (2,3)/(2,1) unit: forward rate 2 and backward rate 4/3 over three slots.

    :return: program.
    """
    table = SymbolTable.build({Kind.A: 6, Kind.B: 6, Kind.AT: 4, Kind.BT: 4})
    sym = Symbols(table)
    builder = ProgramBuilder(
        "l4:v",
        ChannelConfig(2, 3, 2, 1),
        table,
        length=3,
    )
    _spare_level_stage(builder, sym)
    builder.forward(
        3,
        [sym.a(5) ^ sym.Ft(1) ^ sym.bt(4), sym.a(6) ^ sym.bt(2), sym.a(5)],
        [sym.b(6) ^ sym.Ft(2) ^ sym.at(3), sym.b(5) ^ sym.at(1), sym.b(6)],
    )
    builder.backward(1, [sym.at(1), sym.at(2)], [sym.bt(2), sym.bt(1)])
    builder.backward(2, [sym.at(3), sym.at(4)], [sym.bt(4), sym.bt(3)])
    builder.backward(
        3,
        [sym.b(5) ^ sym.Ft(1) ^ sym.Ft(4), sym.F(6)],
        [sym.a(6) ^ sym.Ft(2) ^ sym.Ft(3), sym.F(5)],
    )
    return builder.build(
        [sym.F(idx) for idx in range(1, 7)],
        [sym.Ft(idx) for idx in range(1, 5)],
    )
