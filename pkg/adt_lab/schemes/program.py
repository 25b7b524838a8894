"""Declarative slot-by-slot schedules of linear forms over source symbols."""
import enum
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from adt_lab.channel import ChannelConfig
from adt_lab.exceptions import ParameterError
from adt_lab.gf2 import Forms
from adt_lab.schemes.symbols import MIRROR_KINDS, SWAP_KINDS, SymbolTable


class FeedbackMode(str, enum.Enum):  # noqa: WPS600
    """How forward transmitters learn about forward receptions."""

    IN_BAND = "in-band"
    GENIE = "genie"
    NONE = "none"


@dataclass(frozen=True)
class SlotSignals:
    """Per-level forms sent by every node in one slot."""

    forward: Tuple[Forms, Forms]
    backward: Tuple[Forms, Forms]

    @property
    def forward_silent(self) -> bool:
        return not any(any(forms) for forms in self.forward)

    @property
    def backward_silent(self) -> bool:
        return not any(any(forms) for forms in self.backward)


@dataclass(frozen=True)
class Program:
    """
    What each node puts on each level of each slot.

    Forms are masks over the symbol table. The compiler turns them into
    causal encoders, so a form only states which function of the sources
    a node should emit, never how the node learned it.
    """

    name: str
    config: ChannelConfig
    table: SymbolTable
    slots: Tuple[SlotSignals, ...]
    forward_targets: Tuple[int, ...]
    backward_targets: Tuple[int, ...]
    feedback: FeedbackMode = FeedbackMode.IN_BAND
    params: Mapping[str, Any] = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.slots)

    def vacant_slots(self) -> Tuple[int, int]:
        """Slots with a silent forward phase and with a silent backward phase."""
        forward = sum(1 for slot in self.slots if slot.forward_silent)
        backward = sum(1 for slot in self.slots if slot.backward_silent)
        return forward, backward


def _pad(forms: Sequence[int], size: int, slot: int) -> Forms:
    if len(forms) > size:
        raise ParameterError(f"slot {slot}: {len(forms)} levels exceed {size}")
    return tuple(forms) + (0,) * (size - len(forms))


class ProgramBuilder:
    """
    Mutable helper used by scheme definitions.

    Level lists are given top level first and padded with silent levels
    at the bottom.
    """

    def __init__(
        self,
        name: str,
        config: ChannelConfig,
        table: SymbolTable,
        length: int,
        feedback: FeedbackMode = FeedbackMode.IN_BAND,
    ) -> None:
        self.name = name
        self.config = config
        self.table = table
        self.feedback = feedback
        self._forward: List[List[Forms]] = [
            [_pad((), config.q, slot), _pad((), config.q, slot)]
            for slot in range(1, length + 1)
        ]
        self._backward: List[List[Forms]] = [
            [_pad((), config.qt, slot), _pad((), config.qt, slot)]
            for slot in range(1, length + 1)
        ]

    def _check(self, slot: int) -> None:
        if not 1 <= slot <= len(self._forward):
            raise ParameterError(f"slot {slot} outside 1..{len(self._forward)}")

    def forward(
        self,
        slot: int,
        x1: Sequence[int] = (),
        x2: Sequence[int] = (),
    ) -> None:
        self._check(slot)
        self._forward[slot - 1] = [
            _pad(x1, self.config.q, slot),
            _pad(x2, self.config.q, slot),
        ]

    def backward(
        self,
        slot: int,
        xt1: Sequence[int] = (),
        xt2: Sequence[int] = (),
    ) -> None:
        self._check(slot)
        self._backward[slot - 1] = [
            _pad(xt1, self.config.qt, slot),
            _pad(xt2, self.config.qt, slot),
        ]

    def build(
        self,
        forward_targets: Sequence[int],
        backward_targets: Sequence[int],
        params: Optional[Dict[str, Any]] = None,
    ) -> Program:
        slots = tuple(
            SlotSignals(
                forward=(fwd[0], fwd[1]),
                backward=(bwd[0], bwd[1]),
            )
            for fwd, bwd in zip(self._forward, self._backward)
        )
        return Program(
            name=self.name,
            config=self.config,
            table=self.table,
            slots=slots,
            forward_targets=tuple(forward_targets),
            backward_targets=tuple(backward_targets),
            feedback=self.feedback,
            params=dict(params or {}),
        )


def mirror(program: Program, name: Optional[str] = None) -> Program:
    """
    Exchange the roles of the two directions.

    Forward content of slot i becomes backward content of slot i and
    backward content of slot i becomes forward content of slot i + 1,
    which keeps every dependency causal. A trailing slot whose forward
    phase would be the only content is kept, an all-silent one dropped.

    :param program: program to mirror.
    :param name: name of the result.
    :return: mirrored program.
    """
    cfg = program.config
    mirrored_cfg = cfg.mirrored()
    table = program.table.relabeled(MIRROR_KINDS)
    silent_fwd = (0,) * mirrored_cfg.q
    silent_bwd = (0,) * mirrored_cfg.qt
    forward: List[Tuple[Forms, Forms]] = [(silent_fwd, silent_fwd)]
    backward: List[Tuple[Forms, Forms]] = []
    for slot in program.slots:
        backward.append(slot.forward)
        forward.append(slot.backward)
    backward.append((silent_bwd, silent_bwd))
    slots = [
        SlotSignals(forward=fwd, backward=bwd) for fwd, bwd in zip(forward, backward)
    ]
    while len(slots) > 1 and slots[-1].forward_silent and slots[-1].backward_silent:
        slots.pop()
    params = dict(program.params)
    params["mirrored"] = not params.get("mirrored", False)
    return replace(
        program,
        name=name or f"mirror({program.name})",
        config=mirrored_cfg,
        table=table,
        slots=tuple(slots),
        forward_targets=program.backward_targets,
        backward_targets=program.forward_targets,
        params=params,
    )


def swap(program: Program, name: Optional[str] = None) -> Program:
    """
    Exchange the labels of forward transmitters 1 and 2.

    Sources a and b trade places with the forward inputs, which turns the
    forward (m, n) into (n, m). Nodes 1 and 2 are also the backward
    receivers, so the backward (mt, nt) turns into (nt, mt) while backward
    transmissions stay as they are.

    :param program: program to relabel.
    :param name: name of the result.
    :return: swapped program.
    """
    table = program.table.relabeled(SWAP_KINDS)
    slots = tuple(
        SlotSignals(
            forward=(slot.forward[1], slot.forward[0]),
            backward=slot.backward,
        )
        for slot in program.slots
    )
    return replace(
        program,
        name=name or f"swap({program.name})",
        config=program.config.swapped(),
        table=table,
        slots=slots,
        params=dict(program.params),
    )
