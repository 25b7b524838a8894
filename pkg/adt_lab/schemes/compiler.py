"""
Compile a declarative program into causal linear encoders and decoders.

Every node keeps an echelon basis of what it has observed so far. An
emission is accepted only if its symbolic form lies in the span of the
node's own sources and its earlier observations; the coefficients of
that expression are the encoder. Receivers solve for their targets the
same way, the first time the span allows it.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from adt_lab.channel import ChannelConfig, output_forms
from adt_lab.exceptions import SchemeContractError
from adt_lab.gf2 import Forms
from adt_lab.schemes.program import FeedbackMode, Program
from adt_lab.schemes.symbols import Node

logger = logging.getLogger(__name__)

FORWARD_SENDERS = (Node.N1, Node.N2)
BACKWARD_SENDERS = (Node.N1T, Node.N2T)


def parity(value: int) -> int:
    return bin(value).count("1") & 1


@dataclass(frozen=True)
class LinearForm:
    """own . sources + combo . observations over F_2."""

    own: int
    combo: int

    def evaluate(self, sources: int, observed: int) -> int:
        return parity(self.own & sources) ^ parity(self.combo & observed)


@dataclass(frozen=True)
class Reception:
    """One observed level: which channel output, when, and what it carries."""

    slot: int
    phase: int
    channel: str
    level: int
    form: int


@dataclass(frozen=True)
class Emission:
    """Encoder of one node for one phase, a form per level."""

    levels: Tuple[LinearForm, ...]
    available: int


@dataclass(frozen=True)
class DecodeRule:
    index: int
    slot: int
    form: LinearForm


def reception_order(feedback: FeedbackMode, stage: str) -> Tuple[Tuple[Node, str], ...]:
    """
    Which node sees which channel output after a stage of a slot.

    Compiler and simulator walk slots in the same order, so observation
    indices agree between them.

    :param feedback: feedback mode of the program.
    :param stage: "forward", "backward" or "genie".
    :return: (node, channel) pairs in delivery order.
    """
    if stage == "forward":
        return ((Node.N1T, "Y1"), (Node.N2T, "Y2"))
    if stage == "backward":
        return ((Node.N1, "Yt1"), (Node.N2, "Yt2"))
    if feedback != FeedbackMode.GENIE:
        return ()
    return (
        (Node.N1, "Y1"),
        (Node.N1, "Y2"),
        (Node.N2, "Y1"),
        (Node.N2, "Y2"),
        (Node.N1T, "Yt1"),
        (Node.N1T, "Yt2"),
        (Node.N2T, "Yt1"),
        (Node.N2T, "Yt2"),
    )


class Knowledge:
    """Span of a node's own sources and its observations so far."""

    def __init__(self, own: int) -> None:
        self.own = own
        self.count = 0
        # pivot bit -> (residual outside own, full form, observation combo)
        self._basis: Dict[int, Tuple[int, int, int]] = {}

    def reduce(self, residual: int, full: int, combo: int) -> Tuple[int, int, int]:
        while residual:
            entry = self._basis.get(residual.bit_length() - 1)
            if entry is None:
                break
            residual ^= entry[0]
            full ^= entry[1]
            combo ^= entry[2]
        return residual, full, combo

    def observe(self, form: int) -> Optional[int]:
        """
        Record the next observation.

        :param form: symbolic content of the observation.
        :return: new pivot bit, or None if nothing new was learned.
        """
        combo = 1 << self.count
        self.count += 1
        residual, full, combo = self.reduce(form & ~self.own, form, combo)
        if not residual:
            return None
        pivot = residual.bit_length() - 1
        self._basis[pivot] = (residual, full, combo)
        return pivot

    def express(self, target: int) -> Optional[LinearForm]:
        residual, full, combo = self.reduce(target & ~self.own, 0, 0)
        if residual:
            return None
        return LinearForm(own=target ^ full, combo=combo)


class _Decoder:
    """Targets of one receiver, resolved as soon as their residual vanishes."""

    def __init__(self, knowledge: Knowledge, targets: Tuple[int, ...]) -> None:
        self.knowledge = knowledge
        self.targets = targets
        self.rules: List[DecodeRule] = []
        self._state: Dict[int, Tuple[int, int, int]] = {}
        self._waiting: Dict[int, List[int]] = {}
        for index, target in enumerate(targets, start=1):
            self._state[index] = (target & ~knowledge.own, 0, 0)
            self._attempt(index, slot=1)

    def _attempt(self, index: int, slot: int) -> None:
        residual, full, combo = self.knowledge.reduce(*self._state[index])
        if residual:
            self._state[index] = (residual, full, combo)
            self._waiting.setdefault(residual.bit_length() - 1, []).append(index)
            return
        del self._state[index]  # noqa: WPS420
        form = LinearForm(own=self.targets[index - 1] ^ full, combo=combo)
        self.rules.append(DecodeRule(index=index, slot=slot, form=form))

    def on_pivot(self, pivot: Optional[int], slot: int) -> None:
        if pivot is None:
            return
        for index in self._waiting.pop(pivot, []):
            self._attempt(index, slot)


@dataclass(frozen=True)
class Scheme:
    """
    A compiled program: encoders, reception layout and decoders per node.

    ``emissions`` is keyed by (node, slot). ``receptions`` lists, per node,
    every observed level in observation order.
    """

    program: Program
    emissions: Mapping[Tuple[Node, int], Emission]
    receptions: Mapping[Node, Tuple[Reception, ...]]
    decoders: Mapping[Node, Tuple[DecodeRule, ...]]

    @property
    def name(self) -> str:
        return self.program.name

    @property
    def config(self) -> ChannelConfig:
        return self.program.config

    @property
    def length(self) -> int:
        return self.program.length

    @property
    def feedback(self) -> FeedbackMode:
        return self.program.feedback

    def decoded(self, node: Node) -> Dict[int, DecodeRule]:
        return {rule.index: rule for rule in self.decoders[node]}

    @property
    def forward_functions(self) -> int:
        """Forward targets decoded at both 1~ and 2~."""
        both = set(self.decoded(Node.N1T)) & set(self.decoded(Node.N2T))
        return len(both)

    @property
    def backward_functions(self) -> int:
        both = set(self.decoded(Node.N1)) & set(self.decoded(Node.N2))
        return len(both)

    def undecoded_targets(self) -> Tuple[str, ...]:
        """Declared targets some receiver never resolves, e.g. "F3@1~"."""
        missing = []
        groups = (
            ("F", self.program.forward_targets, BACKWARD_SENDERS),
            ("F~", self.program.backward_targets, FORWARD_SENDERS),
        )
        for prefix, targets, receivers in groups:
            for node in receivers:
                decoded = self.decoded(node)
                for index in range(1, len(targets) + 1):
                    if index not in decoded:
                        missing.append(f"{prefix}{index}@{node.value}")
        return tuple(missing)


def _emit(
    program: Program,
    encoder: Knowledge,
    node: Node,
    slot: int,
    forms: Forms,
) -> Emission:
    levels = []
    for level, form in enumerate(forms, start=1):
        linear = encoder.express(form)
        if linear is None:
            raise SchemeContractError(
                f"{program.name}: node {node.value} cannot send "
                f"{program.table.describe(form)} on level {level} of slot {slot}",
            )
        levels.append(linear)
    return Emission(levels=tuple(levels), available=encoder.count)


def compile_program(program: Program) -> Scheme:  # noqa: WPS210, WPS231
    """
    Check causality of every emission and derive all encoders and decoders.

    :param program: declarative schedule.
    :raises SchemeContractError: if some node is asked to send a form it
        cannot know yet.
    :return: compiled scheme.
    """
    cfg = program.config
    table = program.table
    knowledge = {node: Knowledge(table.owned_by(node)) for node in Node}
    if program.feedback == FeedbackMode.NONE:
        encoders = {node: Knowledge(table.owned_by(node)) for node in Node}
    else:
        encoders = knowledge
    decoders = {
        Node.N1T: _Decoder(knowledge[Node.N1T], program.forward_targets),
        Node.N2T: _Decoder(knowledge[Node.N2T], program.forward_targets),
        Node.N1: _Decoder(knowledge[Node.N1], program.backward_targets),
        Node.N2: _Decoder(knowledge[Node.N2], program.backward_targets),
    }
    receptions: Dict[Node, List[Reception]] = {node: [] for node in Node}
    emissions: Dict[Tuple[Node, int], Emission] = {}

    def deliver(stage: str, slot: int, phase: int, outputs: Dict[str, Forms]) -> None:
        for node, channel in reception_order(program.feedback, stage):
            for level, form in enumerate(outputs[channel], start=1):
                receptions[node].append(Reception(slot, phase, channel, level, form))
                pivot = knowledge[node].observe(form)
                decoders[node].on_pivot(pivot, slot)

    for slot, signals in enumerate(program.slots, start=1):
        for node, forms in zip(FORWARD_SENDERS, signals.forward):
            emissions[(node, slot)] = _emit(program, encoders[node], node, slot, forms)
        y1, y2 = output_forms(signals.forward[0], signals.forward[1], cfg.m, cfg.n)
        deliver("forward", slot, 2 * slot - 1, {"Y1": y1, "Y2": y2})

        for node, forms in zip(BACKWARD_SENDERS, signals.backward):
            emissions[(node, slot)] = _emit(program, encoders[node], node, slot, forms)
        yt1, yt2 = output_forms(
            signals.backward[0],
            signals.backward[1],
            cfg.mt,
            cfg.nt,
        )
        deliver("backward", slot, 2 * slot, {"Yt1": yt1, "Yt2": yt2})
        deliver(
            "genie",
            slot,
            2 * slot,
            {"Y1": y1, "Y2": y2, "Yt1": yt1, "Yt2": yt2},
        )

    scheme = Scheme(
        program=program,
        emissions=emissions,
        receptions={node: tuple(items) for node, items in receptions.items()},
        decoders={node: tuple(dec.rules) for node, dec in decoders.items()},
    )
    logger.debug(
        "Compiled %s over %d slots: K=%d K~=%d",
        program.name,
        program.length,
        scheme.forward_functions,
        scheme.backward_functions,
    )
    return scheme
