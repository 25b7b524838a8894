"""Four-node full-duplex deterministic network and its regime bands."""
import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from adt_lab.exceptions import (
    ConfigParseError,
    DegenerateChannelError,
    DimensionError,
    DomainError,
)
from adt_lab.gf2 import BitVector, Forms, shift_down, shift_forms, xor_forms

Ratio = Union[Fraction, float]

_CONFIG_RE = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*/\s*(\d+)\s*,\s*(\d+)\s*$")
_TWO_THIRDS = Fraction(2, 3)
_THREE_HALVES = Fraction(3, 2)


def level_ratio(num: int, den: int) -> Optional[Ratio]:
    """
    Exact ratio of level counts.

    :param num: numerator.
    :param den: denominator.
    :return: Fraction, ``math.inf`` for x/0 with x > 0, None for 0/0.
    """
    if den:
        return Fraction(num, den)
    if num:
        return math.inf
    return None


def format_ratio(value: Optional[Ratio]) -> str:
    """Lowest terms, integers bare: 2, 4/3, inf, undefined."""
    if value is None:
        return "undefined"
    if value == math.inf:
        return "inf"
    return str(value)


@dataclass(frozen=True)
class ChannelConfig:
    """Level counts of the forward (m, n) and backward (mt, nt) channels."""

    m: int
    n: int
    mt: int
    nt: int

    def __post_init__(self) -> None:
        for name in ("m", "n", "mt", "nt"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "ChannelConfig":
        """
        Parse the "m,n/mt,nt" form, e.g. "1,2/2,1".

        :param text: textual configuration.
        :raises ConfigParseError: on malformed input.
        :return: configuration.
        """
        match = _CONFIG_RE.match(text)
        if match is None:
            raise ConfigParseError(f"expected 'm,n/mt,nt', got {text!r}")
        m, n, mt, nt = (int(group) for group in match.groups())
        return cls(m, n, mt, nt)

    @property
    def q(self) -> int:
        return max(self.m, self.n)

    @property
    def qt(self) -> int:
        return max(self.mt, self.nt)

    @property
    def alpha(self) -> Optional[Ratio]:
        return level_ratio(self.m, self.n)

    @property
    def alpha_t(self) -> Optional[Ratio]:
        return level_ratio(self.mt, self.nt)

    @property
    def gamma(self) -> Optional[Ratio]:
        return level_ratio(self.nt, self.n)

    def mirrored(self) -> "ChannelConfig":
        """Exchange the forward and backward directions."""
        return ChannelConfig(self.mt, self.nt, self.m, self.n)

    def swapped(self) -> "ChannelConfig":
        """Exchange node labels 1 and 2, turning (m, n) into (n, m)."""
        return ChannelConfig(self.n, self.m, self.nt, self.mt)

    def __str__(self) -> str:
        return f"{self.m},{self.n}/{self.mt},{self.nt}"


def _combine(
    x1: BitVector,
    x2: BitVector,
    m: int,
    n: int,
) -> Tuple[BitVector, BitVector]:
    q = max(m, n)
    if x1.length != q or x2.length != q:
        raise DimensionError(f"inputs must have length {q}")
    y1 = shift_down(x1, q - n) ^ shift_down(x2, q - m)
    y2 = shift_down(x1, q - m) ^ shift_down(x2, q - n)
    return y1, y2


def forward_outputs(
    x1: BitVector,
    x2: BitVector,
    m: int,
    n: int,
) -> Tuple[BitVector, BitVector]:
    """
    Receptions at nodes 1~ and 2~.

    :param x1: node 1 input.
    :param x2: node 2 input.
    :param m: cross levels.
    :param n: direct levels.
    :return: (y1, y2).
    """
    return _combine(x1, x2, m, n)


def backward_outputs(
    xt1: BitVector,
    xt2: BitVector,
    mt: int,
    nt: int,
) -> Tuple[BitVector, BitVector]:
    """Receptions at nodes 1 and 2; same law with backward level counts."""
    return _combine(xt1, xt2, mt, nt)


def output_forms(
    x1: Forms,
    x2: Forms,
    m: int,
    n: int,
) -> Tuple[Forms, Forms]:
    """Channel law applied to per-level linear forms instead of bits."""
    q = max(m, n)
    if len(x1) != q or len(x2) != q:
        raise DimensionError(f"inputs must have length {q}")
    y1 = xor_forms(shift_forms(x1, q - n), shift_forms(x2, q - m))
    y2 = xor_forms(shift_forms(x1, q - m), shift_forms(x2, q - n))
    return y1, y2


class Band(str, enum.Enum):  # noqa: WPS600
    """Interval of a level ratio that fixes the capacity formulas."""

    LOW = "[0,2/3]"
    MID_LOW = "(2/3,1)"
    ONE = "{1}"
    MID_HIGH = "(1,3/2)"
    HIGH = "[3/2,inf]"

    @classmethod
    def of(cls, ratio: Ratio) -> "Band":
        if ratio <= _TWO_THIRDS:
            return cls.LOW
        if ratio < 1:
            return cls.MID_LOW
        if ratio == 1:
            return cls.ONE
        if ratio < _THREE_HALVES:
            return cls.MID_HIGH
        return cls.HIGH

    @property
    def is_middle(self) -> bool:
        return self in {Band.MID_LOW, Band.ONE, Band.MID_HIGH}


class Regime(str, enum.Enum):  # noqa: WPS600
    """Regime families; primed members are forward/backward mirrors."""

    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    R1P = "R1'"
    R2P = "R2'"
    R3P = "R3'"
    R4P = "R4'"
    MIDDLE = "MIDDLE"

    @property
    def mirror(self) -> "Regime":
        return _MIRRORS.get(self, self)


_MIRRORS = {
    Regime.R2: Regime.R2P,
    Regime.R2P: Regime.R2,
    Regime.R3: Regime.R3P,
    Regime.R3P: Regime.R3,
    Regime.R4: Regime.R4P,
    Regime.R4P: Regime.R4,
}


@dataclass(frozen=True)
class RegimeLabel:
    """Regime of a configuration together with its raw bands."""

    regime: Regime
    forward_band: Band
    backward_band: Band

    def __str__(self) -> str:
        return (
            f"{self.regime.value} alpha{self.forward_band.value} "
            f"alpha~{self.backward_band.value}"
        )


def _side(band: Band) -> str:
    if band.is_middle:
        return "mid"
    return "low" if band == Band.LOW else "high"


_REGIMES = {
    ("low", "low"): Regime.R1,
    ("high", "high"): Regime.R1P,
    ("mid", "high"): Regime.R2,
    ("high", "mid"): Regime.R2P,
    ("low", "mid"): Regime.R3,
    ("mid", "low"): Regime.R3P,
    ("low", "high"): Regime.R4,
    ("high", "low"): Regime.R4P,
    ("mid", "mid"): Regime.MIDDLE,
}


def classify_regime(cfg: ChannelConfig) -> RegimeLabel:
    """
    Regime label from the bands of alpha and alpha~.

    :param cfg: configuration.
    :raises DegenerateChannelError: if a direction has no levels.
    :return: label with bands.
    """
    alpha = cfg.alpha
    alpha_t = cfg.alpha_t
    if alpha is None or alpha_t is None:
        raise DegenerateChannelError(f"{cfg} has an all-zero direction")
    forward_band = Band.of(alpha)
    backward_band = Band.of(alpha_t)
    regime = _REGIMES[(_side(forward_band), _side(backward_band))]
    return RegimeLabel(regime, forward_band, backward_band)
