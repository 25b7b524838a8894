"""
GF(2) level vectors and the shift algebra of the deterministic model.

Level 1 is the top (least attenuated) level. Bits are packed into an int
with level 1 at the low-order end, so ``shift_down`` is a left shift.
"""
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from adt_lab.exceptions import DimensionError, DomainError, NotInvertibleError

Forms = Tuple[int, ...]


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over F_2, one bit per signal level."""

    bits: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise DomainError(f"negative length {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise DomainError(f"bits {self.bits:#x} overflow length {self.length}")

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(0, length)

    @classmethod
    def from_levels(cls, levels: Iterable[int]) -> "BitVector":
        """
        Build a vector from top-to-bottom level bits.

        :param levels: bits, level 1 first.
        :return: packed vector.
        """
        bits = 0
        length = 0
        for level_bit in levels:
            bits |= (level_bit & 1) << length
            length += 1
        return cls(bits, length)

    @classmethod
    def parse(cls, text: str) -> "BitVector":
        return cls.from_levels(int(char) for char in text)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, level: int) -> int:
        if not 1 <= level <= self.length:
            raise DomainError(f"level {level} outside 1..{self.length}")
        return (self.bits >> (level - 1)) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        return xor(self, other)

    def levels(self) -> Tuple[int, ...]:
        return tuple((self.bits >> idx) & 1 for idx in range(self.length))

    def __str__(self) -> str:
        return "".join(str(level_bit) for level_bit in self.levels())


def xor(a: BitVector, b: BitVector) -> BitVector:
    """
    Levelwise modulo-2 sum.

    :param a: first vector.
    :param b: second vector.
    :raises DimensionError: if lengths differ.
    :return: a xor b.
    """
    if a.length != b.length:
        raise DimensionError(f"length {a.length} != {b.length}")
    return BitVector(a.bits ^ b.bits, a.length)


def shift_down(x: BitVector, shift: int) -> BitVector:
    """
    Apply G^shift: content moves ``shift`` levels toward the bottom.

    :param x: vector.
    :param shift: number of levels.
    :raises DomainError: if shift is outside 0..len(x).
    :return: shifted vector, top ``shift`` levels cleared.
    """
    if not 0 <= shift <= x.length:
        raise DomainError(f"shift {shift} outside 0..{x.length}")
    mask = (1 << x.length) - 1
    return BitVector((x.bits << shift) & mask, x.length)


def shift_forms(forms: Sequence[int], shift: int) -> Forms:
    """Symbolic counterpart of ``shift_down`` on per-level linear forms."""
    if not 0 <= shift <= len(forms):
        raise DomainError(f"shift {shift} outside 0..{len(forms)}")
    return (0,) * shift + tuple(forms[: len(forms) - shift])


def xor_forms(first: Sequence[int], second: Sequence[int]) -> Forms:
    if len(first) != len(second):
        raise DimensionError(f"length {len(first)} != {len(second)}")
    return tuple(left ^ right for left, right in zip(first, second))


def _unshear(z: BitVector, step: int) -> BitVector:
    # solves (I + G^step) x = z by forward substitution, top level first
    bits = 0
    for idx in range(z.length):
        level_bit = (z.bits >> idx) & 1
        if idx >= step:
            level_bit ^= (bits >> (idx - step)) & 1
        bits |= level_bit << idx
    return BitVector(bits, z.length)


def reconstruct_inputs(
    y1: BitVector,
    y2: BitVector,
    m: int,
    n: int,
) -> Tuple[BitVector, BitVector]:
    """
    Recover both forward inputs from both forward outputs.

    With d = |n - m|, y1 + G^d y2 (or y2 + G^d y1 when m > n) equals
    (I + G^{2d}) x1, which is unipotent and inverted level by level.

    :param y1: output at the first receiver.
    :param y2: output at the second receiver.
    :param m: cross levels.
    :param n: direct levels.
    :raises NotInvertibleError: if m == n.
    :raises DimensionError: if output lengths are not max(m, n).
    :return: (x1, x2).
    """
    if m == n:
        raise NotInvertibleError(f"(m, n) = ({m}, {n}) is not invertible")
    q = max(m, n)
    if y1.length != q or y2.length != q:
        raise DimensionError(f"outputs must have length {q}")
    gap = abs(n - m)
    if m < n:
        x1 = _unshear(y1 ^ shift_down(y2, gap), 2 * gap if 2 * gap <= q else q)
        return x1, y2 ^ shift_down(x1, gap)
    x1 = _unshear(y2 ^ shift_down(y1, gap), 2 * gap if 2 * gap <= q else q)
    return x1, y1 ^ shift_down(x1, gap)
