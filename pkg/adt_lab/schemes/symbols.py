"""Source symbols as bit positions, and the nodes that own them."""
import enum
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Tuple

from adt_lab.exceptions import ParameterError


class Node(str, enum.Enum):  # noqa: WPS600
    """The four terminals; tilded nodes send on the backward channel."""

    N1 = "1"
    N2 = "2"
    N1T = "1~"
    N2T = "2~"


class Kind(str, enum.Enum):  # noqa: WPS600
    """Source sequences: a, b forward; a~, b~ backward."""

    A = "a"
    B = "b"
    AT = "a~"
    BT = "b~"

    @property
    def owner(self) -> Node:
        return _OWNERS[self]


_OWNERS = {
    Kind.A: Node.N1,
    Kind.B: Node.N2,
    Kind.AT: Node.N1T,
    Kind.BT: Node.N2T,
}

MIRROR_KINDS = {Kind.A: Kind.AT, Kind.B: Kind.BT, Kind.AT: Kind.A, Kind.BT: Kind.B}
SWAP_KINDS = {Kind.A: Kind.B, Kind.B: Kind.A, Kind.AT: Kind.AT, Kind.BT: Kind.BT}


@dataclass(frozen=True)
class Segment:
    """A run of consecutive bits holding symbols kind_1..kind_size."""

    kind: Kind
    offset: int
    size: int
    tag: str = ""

    @property
    def mask(self) -> int:
        return ((1 << self.size) - 1) << self.offset


@dataclass(frozen=True)
class SymbolTable:
    """Maps every source symbol of a scheme to one bit of a packed int."""

    segments: Tuple[Segment, ...]

    @classmethod
    def build(cls, sizes: Mapping[Kind, int]) -> "SymbolTable":
        """
        Lay out a, b, a~, b~ blocks one after another.

        :param sizes: number of symbols per kind, missing kinds are empty.
        :return: table.
        """
        segments = []
        offset = 0
        for kind in Kind:
            size = sizes.get(kind, 0)
            if size < 0:
                raise ParameterError(f"negative size for {kind.value}")
            segments.append(Segment(kind, offset, size))
            offset += size
        return cls(tuple(segments))

    @classmethod
    def concat(cls, tables: Iterable[Tuple["SymbolTable", str]]) -> "SymbolTable":
        """Stack tables; each gets a tag that prefixes its labels."""
        segments = []
        offset = 0
        for table, tag in tables:
            for segment in table.segments:
                segments.append(
                    Segment(segment.kind, offset + segment.offset, segment.size, tag),
                )
            offset += table.width
        return cls(tuple(segments))

    @property
    def width(self) -> int:
        return max((seg.offset + seg.size for seg in self.segments), default=0)

    def size(self, kind: Kind) -> int:
        return sum(seg.size for seg in self.segments if seg.kind == kind)

    def owned_by(self, node: Node) -> int:
        mask = 0
        for segment in self.segments:
            if segment.kind.owner == node:
                mask |= segment.mask
        return mask

    def sym(self, kind: Kind, index: int) -> int:
        """
        Mask of symbol kind_index in the first segment of that kind.

        Non-positive indices are null.

        :param kind: symbol sequence.
        :param index: 1-based index.
        :raises ParameterError: for an index past the end.
        :return: single-bit mask or 0.
        """
        if index <= 0:
            return 0
        segment = next(seg for seg in self.segments if seg.kind == kind)
        if index > segment.size:
            raise ParameterError(f"{kind.value}{index} exceeds {segment.size} symbols")
        return 1 << (segment.offset + index - 1)

    def relabeled(self, mapping: Mapping[Kind, Kind]) -> "SymbolTable":
        return SymbolTable(
            tuple(replace(seg, kind=mapping[seg.kind]) for seg in self.segments),
        )

    def label(self, bit: int) -> str:
        for segment in self.segments:
            if segment.offset <= bit < segment.offset + segment.size:
                return f"{segment.tag}{segment.kind.value}{bit - segment.offset + 1}"
        raise ParameterError(f"bit {bit} outside the table")

    def describe(self, form: int) -> str:
        """Human-readable xor of the symbols in a linear form."""
        if not form:
            return "0"
        terms = []
        bit = 0
        while form >> bit:
            if (form >> bit) & 1:
                terms.append(self.label(bit))
            bit += 1
        return "+".join(terms)


class Symbols:
    """Shorthand used by scheme definitions: ``s.a(3)``, ``s.F(2)``."""

    def __init__(self, table: SymbolTable) -> None:
        self.table = table

    def _get(self, kind: Kind, index: int) -> int:
        return self.table.sym(kind, index)

    def a(self, index: int) -> int:
        return self._get(Kind.A, index)

    def b(self, index: int) -> int:
        return self._get(Kind.B, index)

    def at(self, index: int) -> int:
        return self._get(Kind.AT, index)

    def bt(self, index: int) -> int:
        return self._get(Kind.BT, index)

    def F(self, index: int) -> int:  # noqa: N802
        return self.a(index) ^ self.b(index)

    def Ft(self, index: int) -> int:  # noqa: N802
        return self.at(index) ^ self.bt(index)
