"""
Nested retrospective scheme on (1,2)/(1,0) with in-band feedback.

The schedule runs M layers of 3L+1 slots. Layer i introduces forward
sums F_{4L(i-1)+1..4Li} and backward sums F~_{2L(i-1)+1..2Li}. Side
information for a layer arrives one or more layers later, so completion
slips by whole layers; the first 2^(L+1)-2L-2 layers' worth of forward
slots in part 4 stay vacant.

Every symbol with a non-positive index is null, term by term. Only the
sums of the first M - (2^(L+1)-2L-2) layers are targets; later layers
are still in flight when the run ends.

From L = 3 on the layered recurrence asks a middle stage-1 pair to
finish before the pair it was relayed through, so only L <= 2 is built.
"""
from adt_lab.channel import ChannelConfig
from adt_lab.exceptions import ParameterError, UnsupportedSchemeError
from adt_lab.schemes.program import Program, ProgramBuilder
from adt_lab.schemes.symbols import Kind, Symbols, SymbolTable

MAX_STAGE_LENGTH = 2


def vacant_layers(stage_length: int) -> int:
    return 2 ** (stage_length + 1) - 2 * stage_length - 2


def completed_layers(stage_length: int, layers: int) -> int:
    return max(0, layers - vacant_layers(stage_length))


def layer_start(stage_length: int, layer: int) -> int:
    """Slot just before the first slot of a layer."""
    return (3 * stage_length + 1) * (layer - 1)


def _part_two(
    builder: ProgramBuilder,
    sym: Symbols,
    layer: int,
    ell: int,
    stage_length: int,
) -> None:
    slot = layer_start(stage_length, layer) + 2 * ell - 1
    p = (layer - 1) * stage_length + ell
    # relays the part-4 reception of an earlier layer
    depth = (layer - 1) - (2 ** (stage_length - ell + 1) - 2)
    x = depth * stage_length - (stage_length - ell + 1)
    builder.forward(
        slot,
        [
            sym.a(4 * p - 3) ^ sym.a(4 * (x + 1)) ^ sym.a(4 * x - 2) ^ sym.Ft(2 * x - 1),
            sym.a(4 * p - 2) ^ sym.a(4 * x) ^ sym.a(4 * (x - 1) - 2),
        ],
        [
            sym.b(4 * p - 2) ^ sym.b(4 * (x + 1) - 1) ^ sym.b(4 * x - 3) ^ sym.Ft(2 * x),
            sym.b(4 * p - 3) ^ sym.b(4 * x - 1) ^ sym.b(4 * (x - 1) - 3),
        ],
    )
    relay = ((layer - 1) - (2 ** ell - 2)) * stage_length - (ell - 1)
    y = (layer - (2 ** (ell + 1) - 2)) * stage_length - ell
    builder.backward(
        slot,
        [sym.b(4 * relay - 3) ^ sym.b(4 * (y + 1)) ^ sym.b(4 * y - 2) ^ sym.Ft(2 * y - 1)],
        [sym.a(4 * relay - 2) ^ sym.a(4 * (y + 1) - 1) ^ sym.a(4 * y - 3) ^ sym.Ft(2 * y)],
    )


def _part_one(
    builder: ProgramBuilder,
    sym: Symbols,
    layer: int,
    ell: int,
    stage_length: int,
) -> None:
    slot = layer_start(stage_length, layer) + 2 * ell
    p = (layer - 1) * stage_length + ell
    builder.forward(
        slot,
        [
            sym.a(4 * p - 1)
            ^ sym.b(4 * (p - 1) - 3)
            ^ sym.b(4 * (p - 1))
            ^ sym.a(4 * (p - 2) - 2)
            ^ sym.bt(2 * (p - 1))
            ^ sym.at(2 * (p - 2) - 1),
            sym.a(4 * p)
            ^ sym.a(4 * (p - 1) - 2)
            ^ sym.a(4 * (p - 2))
            ^ sym.a(4 * (p - 3) - 2),
        ],
        [
            sym.b(4 * p)
            ^ sym.a(4 * (p - 1) - 2)
            ^ sym.a(4 * (p - 1) - 1)
            ^ sym.b(4 * (p - 2) - 3)
            ^ sym.at(2 * (p - 1) - 1)
            ^ sym.bt(2 * (p - 2)),
            sym.b(4 * p - 1)
            ^ sym.b(4 * (p - 1) - 3)
            ^ sym.b(4 * (p - 2) - 1)
            ^ sym.b(4 * (p - 3) - 3),
        ],
    )
    builder.backward(
        slot,
        [
            sym.at(2 * p - 1)
            ^ sym.F(4 * p - 2)
            ^ sym.a(4 * p - 1)
            ^ sym.b(4 * (p - 1) - 3)
            ^ sym.b(4 * (p - 1))
            ^ sym.b(4 * (p - 2) - 2)
            ^ sym.bt(2 * (p - 1)),
        ],
        [
            sym.bt(2 * p)
            ^ sym.F(4 * p - 3)
            ^ sym.b(4 * p)
            ^ sym.a(4 * (p - 1) - 2)
            ^ sym.a(4 * (p - 1) - 1)
            ^ sym.a(4 * (p - 2) - 3)
            ^ sym.at(2 * (p - 1) - 1),
        ],
    )


def _part_three(
    builder: ProgramBuilder,
    sym: Symbols,
    layer: int,
    stage_length: int,
) -> None:
    slot = layer_start(stage_length, layer) + 2 * stage_length + 1
    top = layer * stage_length
    builder.forward(
        slot,
        [
            sym.F(4 * top)
            ^ sym.b(4 * top - 3)
            ^ sym.a(4 * (top - 1) - 2)
            ^ sym.bt(2 * top)
            ^ sym.at(2 * (top - 1) - 1),
            sym.a(4 * top - 1)
            ^ sym.a(4 * top - 2)
            ^ sym.a(4 * (top - 1))
            ^ sym.a(4 * (top - 2) - 2),
        ],
        [
            sym.F(4 * top - 1)
            ^ sym.a(4 * top - 2)
            ^ sym.b(4 * (top - 1) - 3)
            ^ sym.at(2 * top - 1)
            ^ sym.bt(2 * (top - 1)),
            sym.b(4 * top)
            ^ sym.b(4 * top - 3)
            ^ sym.b(4 * (top - 1) - 1)
            ^ sym.b(4 * (top - 2) - 3),
        ],
    )
    # node 2 only learns F~_{2Li-1} if 2~ masks it with a-symbols
    builder.backward(
        slot,
        [sym.b(4 * top - 3) ^ sym.b(4 * (top - 1) - 2) ^ sym.Ft(2 * top)],
        [sym.a(4 * top - 2) ^ sym.a(4 * (top - 1) - 3) ^ sym.Ft(2 * top - 1)],
    )
    builder.forward(
        slot + 1,
        [sym.Ft(2 * top - 1), sym.a(4 * top - 3) ^ sym.a(4 * (top - 1) - 2)],
        [sym.Ft(2 * top), sym.b(4 * top - 2) ^ sym.b(4 * (top - 1) - 3)],
    )
    builder.backward(slot + 1, [sym.Ft(2 * top - 1)], [sym.Ft(2 * top)])


def _part_four(
    builder: ProgramBuilder,
    sym: Symbols,
    layer: int,
    ell: int,
    stage_length: int,
) -> None:
    slot = layer_start(stage_length, layer) + 2 * stage_length + ell
    p = (layer - (2 ** (ell - 1) - 2)) * stage_length - (ell - 2)
    if p > 0:
        carry_a = sym.at(2 * (p - 1) - 1)
        carry_b = sym.bt(2 * (p - 1))
        if ell == stage_length + 1:
            # p - 1 closed a layer: both receivers hold F~_{2p-3} and F~_{2p-2}
            carry_a ^= sym.Ft(2 * (p - 1) - 1)
            carry_b ^= sym.Ft(2 * (p - 1))
        builder.forward(
            slot,
            [sym.F(4 * p - 3) ^ sym.F(4 * p) ^ sym.at(2 * p) ^ carry_a, sym.Ft(2 * p - 1)],
            [sym.F(4 * p - 2) ^ sym.F(4 * p - 1) ^ sym.bt(2 * p - 1) ^ carry_b, sym.Ft(2 * p)],
        )
    back = (layer - (2 ** (ell - 2) - 2)) * stage_length - ell
    builder.backward(
        slot,
        [
            sym.b(4 * (back + 3) - 1)
            ^ sym.b(4 * (back + 2) - 3)
            ^ sym.b(4 * (back + 2))
            ^ sym.b(4 * (back + 1) - 2)
            ^ sym.Ft(2 * (back + 2)),
        ],
        [
            sym.a(4 * (back + 3))
            ^ sym.a(4 * (back + 2) - 2)
            ^ sym.a(4 * (back + 2) - 1)
            ^ sym.a(4 * (back + 1) - 3)
            ^ sym.Ft(2 * (back + 2) - 1),
        ],
    )


def two_way_12_10(stage_length: int, layers: int) -> Program:
    """
    Build the layered (1,2)/(1,0) scheme.

    :param stage_length: L, 1 or 2.
    :param layers: M >= 1.
    :raises ParameterError: if L or M is below 1.
    :raises UnsupportedSchemeError: for L above 2.
    :return: program over (3L+1)M slots.
    """
    if stage_length < 1 or layers < 1:
        raise ParameterError(f"need L >= 1 and M >= 1, got L={stage_length} M={layers}")
    if stage_length > MAX_STAGE_LENGTH:
        raise UnsupportedSchemeError(
            f"the layered (1,2)/(1,0) scheme is built for L <= {MAX_STAGE_LENGTH}, "
            f"got L={stage_length}",
        )
    done = completed_layers(stage_length, layers)
    table = SymbolTable.build(
        {
            Kind.A: 4 * stage_length * layers,
            Kind.B: 4 * stage_length * layers,
            Kind.AT: 2 * stage_length * layers,
            Kind.BT: 2 * stage_length * layers,
        },
    )
    sym = Symbols(table)
    builder = ProgramBuilder(
        f"ex2:L={stage_length},M={layers}",
        ChannelConfig(1, 2, 1, 0),
        table,
        length=(3 * stage_length + 1) * layers,
    )
    for layer in range(1, layers + 1):
        for ell in range(1, stage_length + 1):
            _part_two(builder, sym, layer, ell, stage_length)
            _part_one(builder, sym, layer, ell, stage_length)
        _part_three(builder, sym, layer, stage_length)
        for ell in range(3, stage_length + 2):
            _part_four(builder, sym, layer, ell, stage_length)
    return builder.build(
        [sym.F(idx) for idx in range(1, 4 * stage_length * done + 1)],
        [sym.Ft(idx) for idx in range(1, 2 * stage_length * done + 1)],
        {"L": stage_length, "M": layers},
    )
