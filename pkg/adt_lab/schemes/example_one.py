"""
Two-way scheme on (1,2)/(2,1) with in-band feedback.

Stage 1 (slots 1..2L) sends fresh forward symbols on both levels while the
backward channel returns one received forward function per node and
carries fresh backward symbols underneath. Interference neutralization
leaves each bottom backward level with a clean backward sum. Stage 2
(slots 2L+1..3L) resolves the remaining functions in reverse order, each
decoded function supplying side information for the previous one.
"""
from adt_lab.channel import ChannelConfig
from adt_lab.exceptions import ParameterError
from adt_lab.schemes.program import Program, ProgramBuilder
from adt_lab.schemes.symbols import Kind, Symbols, SymbolTable


def _stage_one(builder: ProgramBuilder, sym: Symbols, stage_length: int) -> None:
    for ell in range(1, 2 * stage_length + 1):
        two = 2 * ell
        builder.forward(
            ell,
            [
                sym.a(two - 1) ^ sym.Ft(two - 4) ^ sym.a(two - 4),
                sym.a(two)
                ^ sym.bt(two - 5)
                ^ sym.F(two - 5)
                ^ sym.a(two - 5)
                ^ sym.at(two - 8),
            ],
            [
                sym.b(two) ^ sym.Ft(two - 5) ^ sym.b(two - 5),
                sym.b(two - 1)
                ^ sym.at(two - 4)
                ^ sym.F(two - 4)
                ^ sym.b(two - 4)
                ^ sym.bt(two - 9),
            ],
        )
        if ell > 2 * stage_length - 2:
            # the last two slots only return forward functions
            builder.backward(ell, [sym.F(two)], [sym.F(two - 1)])
            continue
        builder.backward(
            ell,
            [
                sym.at(two) ^ sym.F(two) ^ sym.at(two - 5),
                sym.at(two - 1)
                ^ sym.a(two - 1)
                ^ sym.Ft(two - 4)
                ^ sym.a(two - 4)
                ^ sym.at(two - 4)
                ^ sym.F(two - 4),
            ],
            [
                sym.bt(two - 1) ^ sym.F(two - 1) ^ sym.bt(two - 4),
                sym.bt(two)
                ^ sym.b(two)
                ^ sym.Ft(two - 5)
                ^ sym.b(two - 5)
                ^ sym.bt(two - 5)
                ^ sym.F(two - 5),
            ],
        )


def _stage_two_forward(builder: ProgramBuilder, sym: Symbols, slot: int, k: int) -> None:
    prev = 4 * (k - 1)
    builder.forward(
        slot,
        [
            sym.Ft(4 * k - 3)
            ^ sym.bt(4 * k - 3)
            ^ sym.F(4 * k - 3)
            ^ sym.bt(prev - 2)
            ^ sym.Ft(prev - 2),
            sym.Ft(4 * k - 1)
            ^ sym.Ft(prev - 3)
            ^ sym.bt(4 * k - 1)
            ^ sym.F(4 * k - 1)
            ^ sym.bt(prev)
            ^ sym.Ft(prev)
            ^ sym.Ft(4 * k - 2),
        ],
        [
            sym.Ft(4 * k - 2)
            ^ sym.at(4 * k - 2)
            ^ sym.F(4 * k - 2)
            ^ sym.at(prev - 3)
            ^ sym.Ft(prev - 3),
            sym.Ft(4 * k)
            ^ sym.Ft(prev - 2)
            ^ sym.at(4 * k)
            ^ sym.F(4 * k)
            ^ sym.at(prev - 1)
            ^ sym.Ft(prev - 1)
            ^ sym.Ft(4 * k - 3),
        ],
    )


def _stage_two_backward(builder: ProgramBuilder, sym: Symbols, slot: int, k: int) -> None:
    one = 4 * (k - 1)
    two = 4 * (k - 2)
    builder.backward(
        slot,
        [
            sym.F(4 * k - 3)
            ^ sym.a(4 * k - 3)
            ^ sym.Ft(one - 2)
            ^ sym.a(one - 2)
            ^ sym.F(one - 2),
            sym.F(4 * k - 1)
            ^ sym.a(4 * k - 1)
            ^ sym.Ft(one)
            ^ sym.a(one)
            ^ sym.F(one)
            ^ sym.F(4 * k - 2)
            ^ sym.a(one - 3)
            ^ sym.Ft(two - 2)
            ^ sym.a(two - 2)
            ^ sym.F(two - 2),
        ],
        [
            sym.F(4 * k - 2)
            ^ sym.b(4 * k - 2)
            ^ sym.Ft(one - 3)
            ^ sym.b(one - 3)
            ^ sym.F(one - 3),
            sym.F(4 * k)
            ^ sym.b(4 * k)
            ^ sym.Ft(one - 1)
            ^ sym.b(one - 1)
            ^ sym.F(one - 1)
            ^ sym.F(4 * k - 3)
            ^ sym.b(one - 2)
            ^ sym.Ft(two - 3)
            ^ sym.b(two - 3)
            ^ sym.F(two - 3),
        ],
    )


def two_way_12_21(stage_length: int) -> Program:
    """
    Build the (1,2)/(2,1) scheme.

    :param stage_length: L >= 1.
    :raises ParameterError: if L < 1.
    :return: program over 3L slots with 4L forward and 4(L-1) backward sums.
    """
    if stage_length < 1:
        raise ParameterError(f"L must be >= 1, got {stage_length}")
    table = SymbolTable.build(
        {
            Kind.A: 4 * stage_length,
            Kind.B: 4 * stage_length,
            Kind.AT: 4 * (stage_length - 1),
            Kind.BT: 4 * (stage_length - 1),
        },
    )
    sym = Symbols(table)
    builder = ProgramBuilder(
        f"ex1:L={stage_length}",
        ChannelConfig(1, 2, 2, 1),
        table,
        length=3 * stage_length,
    )
    _stage_one(builder, sym, stage_length)
    last = 4 * stage_length
    for ell in range(1, stage_length + 1):
        slot = 2 * stage_length + ell
        k = stage_length - ell + 1
        if ell == 1:
            builder.forward(
                slot,
                [sym.F(last - 3), sym.F(last - 1)],
                [sym.F(last - 2), sym.F(last)],
            )
        else:
            _stage_two_forward(builder, sym, slot, k)
        _stage_two_backward(builder, sym, slot, k)
    return builder.build(
        [sym.F(idx) for idx in range(1, last + 1)],
        [sym.Ft(idx) for idx in range(1, 4 * (stage_length - 1) + 1)],
        {"L": stage_length},
    )
