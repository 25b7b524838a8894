"""
Slot-by-slot execution of compiled schemes and their verification.

A run walks the same phase order the compiler used: forward emissions,
forward receptions, backward emissions, backward receptions, then genie
deliveries. Encoders only ever see the observation prefix they were
compiled against.
"""
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Set, Tuple

import numpy as np

from adt_lab.capacity import (
    ZERO_RATE,
    CapacityRegion,
    RatePair,
    baseline_region,
    contains,
    two_way_region,
)
from adt_lab.channel import ChannelConfig, backward_outputs, forward_outputs
from adt_lab.decomposition import SchemePlan
from adt_lab.exceptions import ContractViolationError, DomainError
from adt_lab.gf2 import BitVector
from adt_lab.schemes.compiler import (
    BACKWARD_SENDERS,
    FORWARD_SENDERS,
    Emission,
    Scheme,
    compile_program,
    parity,
    reception_order,
)
from adt_lab.schemes.compose import compose
from adt_lab.schemes.program import FeedbackMode
from adt_lab.schemes.symbols import Node
from adt_lab.settings import settings

logger = logging.getLogger(__name__)

# observation indices to invert, per node
Flips = Mapping[Node, Set[int]]


@dataclass(frozen=True)
class SlotRecord:
    """Everything sent and received in one slot."""

    slot: int
    x1: BitVector
    x2: BitVector
    y1: BitVector
    y2: BitVector
    xt1: BitVector
    xt2: BitVector
    yt1: BitVector
    yt2: BitVector

    def sent_by(self, node: Node) -> BitVector:
        return {
            Node.N1: self.x1,
            Node.N2: self.x2,
            Node.N1T: self.xt1,
            Node.N2T: self.xt2,
        }[node]

    def __xor__(self, other: "SlotRecord") -> "SlotRecord":
        return SlotRecord(
            self.slot,
            self.x1 ^ other.x1,
            self.x2 ^ other.x2,
            self.y1 ^ other.y1,
            self.y2 ^ other.y2,
            self.xt1 ^ other.xt1,
            self.xt2 ^ other.xt2,
            self.yt1 ^ other.yt1,
            self.yt2 ^ other.yt2,
        )


@dataclass(frozen=True)
class DecodeEvent:
    node: Node
    index: int
    value: int
    slot: int


@dataclass(frozen=True)
class Transcript:
    """A complete run: per-slot signals, the sources and every decode."""

    config: ChannelConfig
    slots: Tuple[SlotRecord, ...]
    sources: int
    events: Tuple[DecodeEvent, ...]

    @property
    def length(self) -> int:
        return len(self.slots)

    def decoded_at(self, node: Node) -> Dict[int, DecodeEvent]:
        return {event.index: event for event in self.events if event.node == node}

    @property
    def forward_functions(self) -> int:
        """K: forward indices decoded at both 1~ and 2~."""
        return len(set(self.decoded_at(Node.N1T)) & set(self.decoded_at(Node.N2T)))

    @property
    def backward_functions(self) -> int:
        return len(set(self.decoded_at(Node.N1)) & set(self.decoded_at(Node.N2)))


@dataclass(frozen=True)
class BasisFailure:
    source: str
    node: Node
    index: int
    expected: int
    got: int


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of basis, linearity and causality checks plus rate accounting."""

    scheme: str
    seed: int
    achieved: RatePair
    region_member: bool
    forward_functions: int
    backward_functions: int
    length: int
    vacant_forward: int
    vacant_backward: int
    basis_failures: Tuple[BasisFailure, ...] = ()
    linearity_failures: int = 0
    causality_failures: int = 0
    undecoded: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        clean = not (
            self.basis_failures
            or self.linearity_failures
            or self.causality_failures
            or self.undecoded
        )
        return clean and self.region_member


class _Observer:
    """Observation history of one node as a packed int."""

    def __init__(self, flips: Set[int]) -> None:
        self.bits = 0
        self.count = 0
        self._flips = flips

    def push(self, level_bit: int) -> None:
        if self.count in self._flips:
            level_bit ^= 1
        self.bits |= (level_bit & 1) << self.count
        self.count += 1


def _encode(emission: Emission, node: Node, slot: int, sources: int, seen: _Observer) -> BitVector:
    if emission.available > seen.count:
        raise ContractViolationError(
            f"node {node.value} at slot {slot} needs {emission.available} "
            f"observations, has {seen.count}",
        )
    prefix = seen.bits & ((1 << emission.available) - 1)
    levels = []
    for form in emission.levels:
        if form.combo >> emission.available:
            raise ContractViolationError(
                f"node {node.value} at slot {slot} reads beyond its causal prefix",
            )
        levels.append(form.evaluate(sources, prefix))
    return BitVector.from_levels(levels)


def run(scheme: Scheme, sources: int, flips: Optional[Flips] = None) -> Transcript:
    """
    Execute a compiled scheme on one source assignment.

    :param scheme: compiled scheme.
    :param sources: packed source bits, bit i is symbol i of the table.
    :param flips: observations to invert, for causality checks.
    :raises DomainError: if sources use bits outside the symbol table.
    :raises ContractViolationError: if an encoder would read a future observation.
    :return: transcript.
    """
    width = scheme.program.table.width
    if sources < 0 or sources >> width:
        raise DomainError(f"sources need at most {width} bits")
    cfg = scheme.config
    flips = flips or {}
    seen = {node: _Observer(set(flips.get(node, ()))) for node in Node}

    def deliver(stage: str, outputs: Mapping[str, BitVector]) -> None:
        for node, channel in reception_order(scheme.feedback, stage):
            for level_bit in outputs[channel].levels():
                seen[node].push(level_bit)

    records = []
    for slot in range(1, scheme.length + 1):
        x1, x2 = (
            _encode(scheme.emissions[(node, slot)], node, slot, sources, seen[node])
            for node in FORWARD_SENDERS
        )
        y1, y2 = forward_outputs(x1, x2, cfg.m, cfg.n)
        deliver("forward", {"Y1": y1, "Y2": y2})
        xt1, xt2 = (
            _encode(scheme.emissions[(node, slot)], node, slot, sources, seen[node])
            for node in BACKWARD_SENDERS
        )
        yt1, yt2 = backward_outputs(xt1, xt2, cfg.mt, cfg.nt)
        deliver("backward", {"Yt1": yt1, "Yt2": yt2})
        deliver("genie", {"Y1": y1, "Y2": y2, "Yt1": yt1, "Yt2": yt2})
        records.append(SlotRecord(slot, x1, x2, y1, y2, xt1, xt2, yt1, yt2))

    events = []
    for node in Node:
        for rule in sorted(scheme.decoders[node], key=lambda item: (item.slot, item.index)):
            value = rule.form.evaluate(sources, seen[node].bits)
            events.append(DecodeEvent(node, rule.index, value, rule.slot))
            logger.debug("node %s decoded %d=%d at slot %d", node.value, rule.index, value, rule.slot)
    return Transcript(cfg, tuple(records), sources, tuple(events))


def achieved_rates(transcript: Transcript) -> RatePair:
    """(K/N, K~/N) exactly; (0, 0) for an empty run."""
    if not transcript.length:
        return ZERO_RATE
    return RatePair(
        Fraction(transcript.forward_functions, transcript.length),
        Fraction(transcript.backward_functions, transcript.length),
    )


def with_finite_rates(
    plan: SchemePlan,
    stage_length: Optional[int] = None,
    layers: Optional[int] = None,
) -> SchemePlan:
    """
    Compose an executable plan, run it once and record the rates it reaches.

    Plans that are not executable come back unchanged.

    :param plan: plan.
    :param stage_length: L of the stage-based units, settings default if None.
    :param layers: M of the layered unit, settings default if None.
    :return: plan with ``finite`` set.
    """
    if not plan.executable:
        return plan
    scheme = compile_program(compose(plan, stage_length, layers))
    return replace(plan, finite=achieved_rates(run(scheme, 0)))


def random_sources(rng: np.random.Generator, width: int) -> int:
    """Uniform packed source bits for a symbol table of the given width."""
    bits = rng.integers(0, 2, size=width, dtype=np.uint8)
    packed = np.packbits(bits, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _basis_failures(scheme: Scheme) -> List[BasisFailure]:
    program = scheme.program
    targets = {
        Node.N1T: program.forward_targets,
        Node.N2T: program.forward_targets,
        Node.N1: program.backward_targets,
        Node.N2: program.backward_targets,
    }
    failures = []
    for bit in range(program.table.width):
        sources = 1 << bit
        for event in run(scheme, sources).events:
            expected = parity(targets[event.node][event.index - 1] & sources)
            if event.value != expected:
                failures.append(
                    BasisFailure(program.table.label(bit), event.node, event.index, expected, event.value),
                )
    return failures


def _linearity_failures(scheme: Scheme, rng: np.random.Generator, pairs: int) -> int:
    width = scheme.program.table.width
    failures = 0
    for _ in range(pairs):
        first = random_sources(rng, width)
        second = random_sources(rng, width)
        left = run(scheme, first)
        right = run(scheme, second)
        both = run(scheme, first ^ second)
        slots_ok = all(
            joint == one ^ other
            for joint, one, other in zip(both.slots, left.slots, right.slots)
        )
        values_ok = all(
            joint.value == one.value ^ other.value
            for joint, one, other in zip(both.events, left.events, right.events)
        )
        if not (slots_ok and values_ok):
            failures += 1
    return failures


def _flip_positions(scheme: Scheme, limit: int) -> List[Tuple[Node, int, int]]:
    positions = [
        (node, index, reception.phase)
        for node in Node
        for index, reception in enumerate(scheme.receptions[node])
    ]
    if len(positions) <= limit:
        return positions
    picks = np.unique(np.linspace(0, len(positions) - 1, limit).astype(int))
    return [positions[pick] for pick in picks]


def _causality_failures(scheme: Scheme, limit: int) -> int:
    base = run(scheme, 0)
    failures = 0
    for node, index, phase in _flip_positions(scheme, limit):
        flipped = run(scheme, 0, flips={node: {index}})
        for before, after in zip(base.slots, flipped.slots):
            for sender in Node:
                sent_phase = 2 * before.slot - (1 if sender in FORWARD_SENDERS else 0)
                if sent_phase <= phase and before.sent_by(sender) != after.sent_by(sender):
                    failures += 1
    return failures


def reference_region(scheme: Scheme) -> CapacityRegion:
    """Region achieved rates must lie in; genie feedback is measured against its own baseline."""
    if scheme.feedback == FeedbackMode.GENIE:
        return baseline_region(scheme.config, "pf")
    return two_way_region(scheme.config)


def verify(
    scheme: Scheme,
    seed: Optional[int] = None,
    random_pairs: Optional[int] = None,
    flip_checks: Optional[int] = None,
) -> VerificationReport:
    """
    Check a scheme on the standard basis, for linearity and for causality.

    Failures are collected in the report, never raised.

    :param scheme: compiled scheme.
    :param seed: seed of the random pairs, settings default if None.
    :param random_pairs: number of linearity pairs, settings default if None.
    :param flip_checks: cap on flipped observations, settings default if None.
    :return: report.
    """
    seed = settings.seed if seed is None else seed
    random_pairs = settings.random_pairs if random_pairs is None else random_pairs
    flip_checks = settings.causality_flips if flip_checks is None else flip_checks
    rng = np.random.default_rng(seed)

    zero_run = run(scheme, 0)
    achieved = achieved_rates(zero_run)
    vacant_forward, vacant_backward = scheme.program.vacant_slots()
    report = VerificationReport(
        scheme=scheme.name,
        seed=seed,
        achieved=achieved,
        region_member=contains(reference_region(scheme), achieved),
        forward_functions=zero_run.forward_functions,
        backward_functions=zero_run.backward_functions,
        length=zero_run.length,
        vacant_forward=vacant_forward,
        vacant_backward=vacant_backward,
        basis_failures=tuple(_basis_failures(scheme)),
        linearity_failures=_linearity_failures(scheme, rng, random_pairs),
        causality_failures=_causality_failures(scheme, flip_checks),
        undecoded=scheme.undecoded_targets(),
    )
    logger.info(
        "Verified %s: achieved %s, %s",
        scheme.name,
        achieved,
        "PASS" if report.passed else "FAIL",
    )
    return report


def dump_transcript(transcript: Transcript) -> str:
    """
    Line records: one ``t=`` line per slot, then one ``dec`` line per decode.

    :param transcript: run to render.
    :return: text ending with a newline.
    """
    lines = []
    for record in transcript.slots:
        lines.append(
            f"t={record.slot} X1={record.x1} X2={record.x2} Y1={record.y1} Y2={record.y2} "
            f"X~1={record.xt1} X~2={record.xt2} Y~1={record.yt1} Y~2={record.yt2}",
        )
    for event in transcript.events:
        lines.append(f"dec node={event.node.value} l={event.index} v={event.value} t={event.slot}")
    return "\n".join(lines) + "\n"
