"""Run several unit programs side by side on disjoint level chains."""
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from adt_lab.channel import ChannelConfig
from adt_lab.exceptions import ParameterError, UnsupportedSchemeError
from adt_lab.gf2 import Forms
from adt_lab.schemes.program import FeedbackMode, Program, SlotSignals
from adt_lab.schemes.symbols import SymbolTable


@dataclass(frozen=True)
class Placement:
    """
    A unit program and the global levels its local levels land on.

    ``forward_levels[k - 1]`` is the global forward level (1 on top) that
    carries local level k; likewise for the backward channel.
    """

    program: Program
    forward_levels: Tuple[int, ...]
    backward_levels: Tuple[int, ...]


def _check(config: ChannelConfig, placements: Sequence[Placement]) -> None:
    used_forward: set = set()
    used_backward: set = set()
    for placement in placements:
        unit = placement.program.config
        if len(placement.forward_levels) != unit.q:
            raise ParameterError(
                f"{placement.program.name}: {unit.q} forward levels needed, "
                f"{len(placement.forward_levels)} given",
            )
        if len(placement.backward_levels) != unit.qt:
            raise ParameterError(
                f"{placement.program.name}: {unit.qt} backward levels needed, "
                f"{len(placement.backward_levels)} given",
            )
        for level in placement.forward_levels:
            if not 1 <= level <= config.q or level in used_forward:
                raise ParameterError(f"forward level {level} unavailable")
            used_forward.add(level)
        for level in placement.backward_levels:
            if not 1 <= level <= config.qt or level in used_backward:
                raise ParameterError(f"backward level {level} unavailable")
            used_backward.add(level)


def _feedback(placements: Sequence[Placement]) -> FeedbackMode:
    modes = {placement.program.feedback for placement in placements}
    if FeedbackMode.GENIE in modes:
        if len(placements) > 1:
            raise UnsupportedSchemeError("genie programs cannot share the channel")
        return FeedbackMode.GENIE
    if FeedbackMode.IN_BAND in modes:
        return FeedbackMode.IN_BAND
    return FeedbackMode.NONE


def _spread(
    target: List[List[int]],
    forms: Forms,
    levels: Sequence[int],
    offset: int,
) -> None:
    for local, form in enumerate(forms):
        target[levels[local] - 1].append(form << offset)


def _merge(columns: List[List[int]]) -> Forms:
    merged = []
    for column in columns:
        value = 0
        for form in column:
            value ^= form
        merged.append(value)
    return tuple(merged)


def compose_programs(
    name: str,
    config: ChannelConfig,
    placements: Sequence[Placement],
    params: Optional[Mapping[str, Any]] = None,
) -> Program:
    """
    Interleave unit programs over the levels of one configuration.

    All units are repeated in time, each copy with fresh symbols, until
    they share a common period. Each copy gets its own block of the
    combined symbol table, tagged "u<unit>.<copy>:".

    :param name: name of the result.
    :param config: configuration of the shared channel.
    :param placements: units with their level chains.
    :param params: parameters recorded on the result.
    :raises ParameterError: if level chains do not fit the units.
    :raises UnsupportedSchemeError: if a genie program would share the channel.
    :return: combined program.
    """
    if not placements:
        empty = SlotSignals(
            forward=((0,) * config.q, (0,) * config.q),
            backward=((0,) * config.qt, (0,) * config.qt),
        )
        return Program(
            name=name,
            config=config,
            table=SymbolTable.build({}),
            slots=(empty,),
            forward_targets=(),
            backward_targets=(),
            feedback=FeedbackMode.NONE,
            params=dict(params or {}),
        )
    _check(config, placements)
    feedback = _feedback(placements)
    period = math.lcm(*(placement.program.length for placement in placements))

    tables: List[Tuple[SymbolTable, str]] = []
    offsets: Dict[Tuple[int, int], int] = {}
    offset = 0
    for unit, placement in enumerate(placements, start=1):
        for copy in range(period // placement.program.length):
            offsets[(unit, copy)] = offset
            tables.append((placement.program.table, f"u{unit}.{copy}:"))
            offset += placement.program.table.width
    table = SymbolTable.concat(tables)

    slots = []
    for slot in range(period):
        forward = [[[] for _ in range(config.q)] for _ in range(2)]
        backward = [[[] for _ in range(config.qt)] for _ in range(2)]
        for unit, placement in enumerate(placements, start=1):
            length = placement.program.length
            signals = placement.program.slots[slot % length]
            shift = offsets[(unit, slot // length)]
            for sender in range(2):
                _spread(forward[sender], signals.forward[sender], placement.forward_levels, shift)
                _spread(backward[sender], signals.backward[sender], placement.backward_levels, shift)
        slots.append(
            SlotSignals(
                forward=(_merge(forward[0]), _merge(forward[1])),
                backward=(_merge(backward[0]), _merge(backward[1])),
            ),
        )

    forward_targets: List[int] = []
    backward_targets: List[int] = []
    for unit, placement in enumerate(placements, start=1):
        for copy in range(period // placement.program.length):
            shift = offsets[(unit, copy)]
            forward_targets.extend(form << shift for form in placement.program.forward_targets)
            backward_targets.extend(form << shift for form in placement.program.backward_targets)

    return Program(
        name=name,
        config=config,
        table=table,
        slots=tuple(slots),
        forward_targets=tuple(forward_targets),
        backward_targets=tuple(backward_targets),
        feedback=feedback,
        params=dict(params or {}),
    )
