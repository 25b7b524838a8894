"""
Interactive unit blocks and their multi-copy tilings.

The ring scheme on (0,1)/(1,0) lives here. Every link of that network
is a single straight wire: 1 -> 1~ -> 2 -> 2~ -> 1. Stage 1 circulates
running sums around the ring, the next slot closes it, and each later
pair of slots hands one retrospectively decodable pair of forward sums
to both receivers while returning one backward sum.

Blocks with more backward than forward parts run relayed units: several
feedback cycles share one forward copy, each starting on its own slot so
their bottom-level relays never meet.
"""
import enum
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from adt_lab.channel import ChannelConfig
from adt_lab.decomposition import PairingKind, Part, chains, side_condition_holds
from adt_lab.exceptions import ParameterError, UnsupportedSchemeError
from adt_lab.schemes.elementary import (
    feedback_unit_23_10,
    feedback_unit_23_21,
    non_feedback,
)
from adt_lab.schemes.example_one import two_way_12_21
from adt_lab.schemes.example_two import two_way_12_10
from adt_lab.schemes.layout import Placement, compose_programs
from adt_lab.schemes.program import Program, ProgramBuilder, mirror, swap
from adt_lab.schemes.symbols import Kind, Symbols, SymbolTable

logger = logging.getLogger(__name__)


class Orientation(str, enum.Enum):  # noqa: WPS600
    """Which direction gets the larger share of the ring scheme."""

    FORWARD_HEAVY = "forward-heavy"
    BACKWARD_HEAVY = "backward-heavy"


def mirror_swap(program: Program, name: str) -> Program:
    """Mirror, then exchange node labels: (m,n)/(mt,nt) becomes (nt,mt)/(n,m)."""
    return swap(mirror(program), name=name)


def _ring_stage_one(builder: ProgramBuilder, sym: Symbols, stage_length: int) -> None:
    for ell in range(1, stage_length + 1):
        builder.forward(
            ell,
            [_ring_u(sym, ell)],
            [_ring_v(sym, ell)],
        )
        builder.backward(
            ell,
            [_ring_u(sym, ell) ^ sym.at(ell)],
            [_ring_v(sym, ell) ^ sym.bt(ell)],
        )


def _ring_u(sym: Symbols, ell: int) -> int:
    # U_l = a_{2l-1} + a_{2l-2} + Q_{l-1}
    if ell < 1:
        return 0
    return sym.a(2 * ell - 1) ^ sym.a(2 * ell - 2) ^ _ring_q(sym, ell - 1)


def _ring_v(sym: Symbols, ell: int) -> int:
    # V_l = b_{2l} + b_{2l-3} + P_{l-1}
    if ell < 1:
        return 0
    return sym.b(2 * ell) ^ sym.b(2 * ell - 3) ^ _ring_p(sym, ell - 1)


def _ring_p(sym: Symbols, ell: int) -> int:
    if ell < 1:
        return 0
    return _ring_u(sym, ell) ^ sym.at(ell)


def _ring_q(sym: Symbols, ell: int) -> int:
    if ell < 1:
        return 0
    return _ring_v(sym, ell) ^ sym.bt(ell)


def lemma4_i(stage_length: int, orientation: Orientation = Orientation.FORWARD_HEAVY) -> Program:
    """
    Ring scheme on (0,1)/(1,0) over 3L+1 slots.

    Forward-heavy computes 2L forward and L backward sums; backward-heavy
    is its mirrored and swapped form with the counts exchanged.

    :param stage_length: L >= 1.
    :param orientation: which direction carries 2L sums.
    :raises ParameterError: if L < 1.
    :return: program.
    """
    if stage_length < 1:
        raise ParameterError(f"L must be >= 1, got {stage_length}")
    big = stage_length
    table = SymbolTable.build({Kind.A: 2 * big, Kind.B: 2 * big, Kind.AT: big, Kind.BT: big})
    sym = Symbols(table)
    name = f"l4i:L={big},{orientation.value}"
    builder = ProgramBuilder(
        name,
        ChannelConfig(0, 1, 1, 0),
        table,
        length=3 * big + 1,
    )
    _ring_stage_one(builder, sym, big)
    closing = big + 1
    builder.forward(
        closing,
        [_ring_q(sym, big) ^ _ring_u(sym, big - 1)],
        [_ring_p(sym, big) ^ _ring_v(sym, big - 1)],
    )
    builder.backward(
        closing,
        [sym.b(2 * big) ^ sym.b(2 * big - 3) ^ sym.Ft(big)],
        [sym.a(2 * big - 1) ^ sym.a(2 * big - 2) ^ sym.Ft(big)],
    )
    for k in range(big, 0, -1):
        slot = big + 2 + 2 * (big - k)
        first = sym.F(2 * k) ^ sym.F(2 * k - 3)
        second = sym.F(2 * k - 1) ^ sym.F(2 * k - 2)
        builder.forward(
            slot,
            [first ^ sym.at(k - 1) ^ sym.at(k)],
            [second ^ sym.bt(k - 1) ^ sym.bt(k)],
        )
        builder.backward(slot, [first], [second])
        builder.forward(slot + 1, [second], [first])
        if k >= 2:
            builder.backward(
                slot + 1,
                [sym.b(2 * k - 1) ^ sym.b(2 * k - 5) ^ sym.Ft(k - 1)],
                [sym.a(2 * k) ^ sym.a(2 * k - 4) ^ sym.Ft(k - 1)],
            )
    program = builder.build(
        [sym.F(idx) for idx in range(1, 2 * big + 1)],
        [sym.Ft(idx) for idx in range(1, big + 1)],
        {"L": big, "orientation": orientation.value},
    )
    if orientation == Orientation.BACKWARD_HEAVY:
        program = mirror_swap(program, name)
    return program


_BASES: Dict[PairingKind, Callable[[int, int], Program]] = {
    PairingKind.I: lambda big, layers: lemma4_i(big, Orientation.FORWARD_HEAVY),
    PairingKind.I_T: lambda big, layers: lemma4_i(big, Orientation.BACKWARD_HEAVY),
    PairingKind.II: two_way_12_10,
    PairingKind.II_T: lambda big, layers: mirror_swap(
        two_way_12_10(big, layers),
        f"ex2~:L={big},M={layers}",
    ),
    PairingKind.III: lambda big, layers: feedback_unit_23_10(),
    PairingKind.III_T: lambda big, layers: mirror_swap(feedback_unit_23_10(), "l4:iii~"),
    PairingKind.IV: lambda big, layers: two_way_12_21(big),
    PairingKind.V: lambda big, layers: feedback_unit_23_21(),
    PairingKind.V_T: lambda big, layers: mirror_swap(feedback_unit_23_21(), "l4:v~"),
}


def level_pool(m: int, n: int) -> Dict[Part, List[Tuple[int, ...]]]:
    """Free level chains of a direction, grouped by part type."""
    pool: Dict[Part, List[Tuple[int, ...]]] = {}
    for part, levels in chains(m, n):
        pool.setdefault(part, []).append(levels)
    return pool


def take_chain(pool: Dict[Part, List[Tuple[int, ...]]], part: Part) -> Tuple[int, ...]:
    """Next free chain of a part type."""
    free = pool.get(part)
    if not free:
        raise UnsupportedSchemeError(f"no free level chain for part {part}")
    return free.pop(0)


@dataclass(frozen=True)
class _Relay:
    """Feedback terms one forward slot of a (2,3) copy superimposes."""

    top_1: int = 0
    middle_1: int = 0
    top_2: int = 0
    middle_2: int = 0


_SILENT_RELAY = _Relay()


def _lay(vector: List[int], levels: Sequence[int], forms: Sequence[int]) -> None:
    for level, form in zip(levels, forms):
        vector[level - 1] ^= form


def _forward_23(sym: Symbols, x: int, y: int, relay: _Relay) -> Tuple[List[int], List[int]]:
    # middle level stays a clean sum, top level carries the relay
    return (
        [sym.a(x) ^ relay.top_1, sym.a(y) ^ relay.middle_1, sym.a(x)],
        [sym.b(y) ^ relay.top_2, sym.b(x) ^ relay.middle_2, sym.b(y)],
    )


def _cycle_starts(channels: int, length: int) -> List[Tuple[int, int]]:
    # backward channel c opens a three-slot cycle in slots c+1, c+4, ...
    return [
        (channel, start)
        for channel in range(channels)
        for start in range(channel + 1, length - 1, 3)
    ]


def _check_periods(periods: int) -> None:
    if periods < 1:
        raise ParameterError(f"L must be >= 1, got {periods}")


def relayed_unit_23_21(channels: int, periods: int) -> Program:
    """
    One (2,3) forward part relaying feedback for up to three (2,1) backward parts.

    Backward part c runs the (2,3)/(2,1) unit cycle shifted by c slots, so
    the single forward relay slot of every cycle lands on a different slot.
    Over 3L slots the forward part carries 2 sums per slot and each backward
    part 4 sums per completed cycle.

    :param channels: backward (2,1) parts, 1 to 3.
    :param periods: L, the program runs 3L slots.
    :raises ParameterError: on a channel count outside 1..3 or L < 1.
    :return: program on (2,3)/(2k,k).
    """
    if not 1 <= channels <= 3:
        raise ParameterError(f"one (2,3) part relays 1 to 3 backward parts, got {channels}")
    _check_periods(periods)
    length = 3 * periods
    starts = _cycle_starts(channels, length)
    table = SymbolTable.build(
        {
            Kind.A: 2 * length,
            Kind.B: 2 * length,
            Kind.AT: 4 * len(starts),
            Kind.BT: 4 * len(starts),
        },
    )
    sym = Symbols(table)
    builder = ProgramBuilder(
        f"l4:v:k={channels},L={periods}",
        ChannelConfig(2, 3, 2 * channels, channels),
        table,
        length=length,
    )
    levels = [chain for _, chain in chains(2 * channels, channels)]
    first = [[0] * (2 * channels) for _ in range(length)]
    second = [[0] * (2 * channels) for _ in range(length)]
    relays: Dict[int, _Relay] = {}
    for cycle, (channel, start) in enumerate(starts):
        offset = 4 * cycle
        at = [sym.at(offset + idx) for idx in range(1, 5)]
        bt = [sym.bt(offset + idx) for idx in range(1, 5)]
        ft = [sym.Ft(offset + idx) for idx in range(1, 5)]
        chain = levels[channel]
        _lay(first[start - 1], chain, [at[0], at[1]])
        _lay(second[start - 1], chain, [bt[1], bt[0]])
        _lay(first[start], chain, [at[2], at[3]])
        _lay(second[start], chain, [bt[3], bt[2]])
        relay = start + 2
        x, y = 2 * relay - 1, 2 * relay
        relays[relay] = _Relay(ft[0] ^ bt[3], bt[1], ft[1] ^ at[2], at[0])
        _lay(first[relay - 1], chain, [sym.b(x) ^ ft[0] ^ ft[3], sym.F(y)])
        _lay(second[relay - 1], chain, [sym.a(y) ^ ft[1] ^ ft[2], sym.F(x)])
    for slot in range(1, length + 1):
        x1, x2 = _forward_23(sym, 2 * slot - 1, 2 * slot, relays.get(slot, _SILENT_RELAY))
        builder.forward(slot, x1, x2)
        builder.backward(slot, first[slot - 1], second[slot - 1])
    return builder.build(
        [sym.F(idx) for idx in range(1, 2 * length + 1)],
        [sym.Ft(idx) for idx in range(1, 4 * len(starts) + 1)],
        {"channels": channels, "L": periods},
    )


# forward copy of the first and second relay, per backward (1,0) part
_PAIR_RELAYS = ((0, 0), (1, 1), (0, 1))


def relayed_pair_23_10(periods: int) -> Program:
    """
    Two (2,3) forward parts relaying feedback for three (1,0) backward parts.

    Each backward part runs the (2,3)/(1,0) unit cycle shifted by its index,
    and its two relays go to the forward copies that are free in those slots.
    Over 3L slots the forward parts carry 4 sums per slot and each backward
    part 2 sums per completed cycle.

    :param periods: L, the program runs 3L slots.
    :return: program on (4,6)/(3,0).
    """
    _check_periods(periods)
    length = 3 * periods
    starts = _cycle_starts(len(_PAIR_RELAYS), length)
    table = SymbolTable.build(
        {
            Kind.A: 4 * length,
            Kind.B: 4 * length,
            Kind.AT: 2 * len(starts),
            Kind.BT: 2 * len(starts),
        },
    )
    sym = Symbols(table)
    builder = ProgramBuilder(
        f"l4:iii:pair,L={periods}",
        ChannelConfig(4, 6, 3, 0),
        table,
        length=length,
    )
    forward_levels = [chain for _, chain in chains(4, 6)]
    backward_levels = [chain for _, chain in chains(3, 0)]

    def symbols_of(copy: int, slot: int) -> Tuple[int, int]:
        base = 4 * (slot - 1) + 2 * copy
        return base + 1, base + 2

    first = [[0] * 3 for _ in range(length)]
    second = [[0] * 3 for _ in range(length)]
    relays: Dict[Tuple[int, int], _Relay] = {}
    for cycle, (channel, start) in enumerate(starts):
        at1, bt2 = sym.at(2 * cycle + 1), sym.bt(2 * cycle + 2)
        ft1, ft2 = sym.Ft(2 * cycle + 1), sym.Ft(2 * cycle + 2)
        chain = backward_levels[channel]
        early, late = _PAIR_RELAYS[channel]
        _lay(first[start - 1], chain, [at1])
        _lay(second[start - 1], chain, [bt2])
        x, y = symbols_of(early, start + 1)
        relays[(early, start + 1)] = _Relay(top_1=bt2, top_2=at1)
        _lay(first[start], chain, [ft2 ^ sym.b(x)])
        _lay(second[start], chain, [ft1 ^ sym.a(y)])
        x_late, y_late = symbols_of(late, start + 2)
        relays[(late, start + 2)] = _Relay(top_1=ft1 ^ sym.a(y), top_2=ft2 ^ sym.b(x))
        _lay(first[start + 1], chain, [ft1 ^ sym.b(x_late) ^ sym.b(y)])
        _lay(second[start + 1], chain, [ft2 ^ sym.a(y_late) ^ sym.a(x)])
    for slot in range(1, length + 1):
        x1 = [0] * 6
        x2 = [0] * 6
        for copy, chain in enumerate(forward_levels):
            forms_1, forms_2 = _forward_23(
                sym,
                *symbols_of(copy, slot),
                relays.get((copy, slot), _SILENT_RELAY),
            )
            _lay(x1, chain, forms_1)
            _lay(x2, chain, forms_2)
        builder.forward(slot, x1, x2)
        builder.backward(slot, first[slot - 1], second[slot - 1])
    return builder.build(
        [sym.F(idx) for idx in range(1, 4 * length + 1)],
        [sym.Ft(idx) for idx in range(1, 2 * len(starts) + 1)],
        {"L": periods},
    )


_MIRRORED: Dict[PairingKind, PairingKind] = {
    PairingKind.I_T: PairingKind.I,
    PairingKind.II_T: PairingKind.II,
    PairingKind.III_T: PairingKind.III,
    PairingKind.V_T: PairingKind.V,
}


def _heavy_tiles(
    kind: PairingKind,
    i: int,
    j: int,
    stage_length: int,
    unit: Program,
) -> List[Program]:
    if kind == PairingKind.III:
        pairs = max(0, j - i)
        singles = j - 3 * pairs
        fills = i - 2 * pairs - singles
        return (
            [relayed_pair_23_10(stage_length)] * pairs
            + [unit] * singles
            + [non_feedback(2, 3)] * fills
        )
    if kind == PairingKind.V:
        tiles = []
        for copy in range(i):
            share = j // i + (copy < j % i)
            if share == 0:
                tiles.append(non_feedback(2, 3))
            elif share == 1:
                tiles.append(unit)
            else:
                tiles.append(relayed_unit_23_21(share, stage_length))
        return tiles
    if i != j:
        raise UnsupportedSchemeError(f"{kind.value} with i={i}, j={j}: no tiling for unequal counts")
    return [unit] * i


def block_tiles(
    kind: PairingKind,
    forward_count: int,
    backward_count: int,
    stage_length: int,
    layers: int,
) -> List[Program]:
    """
    Unit programs that together run a block, in their own labeling.

    Kinds iii and v with more backward than forward parts hand each forward
    part several backward parts on staggered cycles; spare forward parts run
    without feedback. Kinds i, ii and iv need equal counts. Mirrored kinds
    tile the mirrored block.

    :param kind: block kind.
    :param forward_count: i.
    :param backward_count: j.
    :param stage_length: L of the stage-based and staggered units.
    :param layers: M of the layered unit.
    :raises UnsupportedSchemeError: if no tiling covers the counts.
    :return: programs, one per placement.
    """
    if kind not in _BASES:
        raise UnsupportedSchemeError(f"no unit scheme for kind {kind.value}")
    if not side_condition_holds(kind, forward_count, backward_count):
        raise UnsupportedSchemeError(
            f"i={forward_count}, j={backward_count} violates the side condition of {kind.value}",
        )
    heavy = _MIRRORED.get(kind)
    if heavy is None:
        unit = _BASES[kind](stage_length, layers)
        return _heavy_tiles(kind, forward_count, backward_count, stage_length, unit)
    unit = _BASES[heavy](stage_length, layers)
    tiles = _heavy_tiles(heavy, backward_count, forward_count, stage_length, unit)
    mirrored = _BASES[kind](stage_length, layers)
    return [
        mirrored if tile is unit else mirror_swap(tile, f"{tile.name}~")
        for tile in tiles
    ]


def _parts_of(m: int, n: int) -> Set[Part]:
    return {part for part, _ in chains(m, n)}


def _oriented(program: Program, forward: Optional[Part], backward: Optional[Part]) -> Program:
    for candidate in (program, swap(program, name=f"swap({program.name})")):
        cfg = candidate.config
        forward_parts = _parts_of(cfg.m, cfg.n)
        backward_parts = _parts_of(cfg.mt, cfg.nt)
        if forward_parts <= {forward} and backward_parts <= {backward}:
            return candidate
    raise UnsupportedSchemeError(f"{program.name} runs on {program.config}, not on {forward}/{backward}")


def _claim(m: int, n: int, pool: Dict[Part, List[Tuple[int, ...]]]) -> Tuple[int, ...]:
    levels = [0] * max(m, n)
    for part, local in chains(m, n):
        for here, there in zip(local, take_chain(pool, part)):
            levels[here - 1] = there
    return tuple(levels)


def place(
    program: Program,
    forward: Optional[Part],
    backward: Optional[Part],
    forward_pool: Dict[Part, List[Tuple[int, ...]]],
    backward_pool: Dict[Part, List[Tuple[int, ...]]],
) -> Placement:
    """
    Put a program on free chains of the given part types.

    The program is relabeled when only its swapped form matches the parts.
    Each local chain lands on the next free global chain of its part type.

    :param program: unit program.
    :param forward: forward part type, None for a backward-only program.
    :param backward: backward part type, None for a forward-only program.
    :param forward_pool: free forward chains, consumed.
    :param backward_pool: free backward chains, consumed.
    :raises UnsupportedSchemeError: if neither labeling fits or chains run out.
    :return: placement.
    """
    fitted = _oriented(program, forward, backward)
    cfg = fitted.config
    return Placement(
        fitted,
        _claim(cfg.m, cfg.n, forward_pool),
        _claim(cfg.mt, cfg.nt, backward_pool),
    )


_BLOCK_CONFIGS: Dict[PairingKind, Callable[[int, int], ChannelConfig]] = {
    PairingKind.I: lambda i, j: ChannelConfig(0, i, j, 0),
    PairingKind.II: lambda i, j: ChannelConfig(i, 2 * i, j, 0),
    PairingKind.III: lambda i, j: ChannelConfig(2 * i, 3 * i, j, 0),
    PairingKind.IV: lambda i, j: ChannelConfig(i, 2 * i, 2 * j, j),
    PairingKind.V: lambda i, j: ChannelConfig(2 * i, 3 * i, 2 * j, j),
}


def lemma4_block(
    kind: PairingKind,
    forward_count: int,
    backward_count: int,
    stage_length: int = 2,
    layers: int = 4,
) -> Program:
    """
    Copies of a unit block on the parts (kind's forward)^i / (backward)^j.

    Kinds i, ii and iv run i == j copies. Kind iii covers 3i >= 2j and
    kind v covers 3i >= j, see ``block_tiles``.

    :param kind: one of i, ii, iii, iv, v.
    :param forward_count: i.
    :param backward_count: j.
    :param stage_length: L of the stage-based and staggered units.
    :param layers: M of the layered unit.
    :raises UnsupportedSchemeError: on a violated side condition or a
        multiplicity split no tiling covers.
    :return: program.
    """
    i, j = forward_count, backward_count
    if kind not in _BLOCK_CONFIGS:
        raise UnsupportedSchemeError(f"no block for kind {kind.value}")
    if i < 1 or j < 1:
        raise ParameterError(f"need i, j >= 1, got i={i} j={j}")
    tiles = block_tiles(kind, i, j, stage_length, layers)

    config = _BLOCK_CONFIGS[kind](i, j)
    forward_part = (config.m // i, config.n // i)
    backward_part = (config.mt // j, config.nt // j)
    forward_pool = level_pool(config.m, config.n)
    backward_pool = level_pool(config.mt, config.nt)
    placements = [
        place(tile, forward_part, backward_part, forward_pool, backward_pool)
        for tile in tiles
    ]
    name = f"l4:{kind.value}:i={i},j={j}"
    if kind in {PairingKind.I, PairingKind.II, PairingKind.IV} or j > i:
        name = f"{name},L={stage_length}"
    if kind == PairingKind.II:
        name = f"{name},M={layers}"
    logger.debug("Tiling %s with %d unit copies", name, len(placements))
    return compose_programs(
        name,
        config,
        placements,
        {"kind": kind.value, "i": i, "j": j, "L": stage_length, "M": layers},
    )
