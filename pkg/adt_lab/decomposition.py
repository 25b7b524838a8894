"""
Network decomposition into elementary subchannels and the pairing planner.

A direction (m, n) with alpha outside the middle band splits into
orthogonal elementary parts. The planner pairs forward parts with backward
parts so that each pair runs a known interactive unit scheme, and reports
the rate the pairing achieves as its blocks grow.
"""
import enum
import logging
from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from adt_lab.capacity import (
    ZERO_RATE,
    RatePair,
    c_no,
    c_pf,
    capacity_pairs,
    contains,
    corner_points,
    rate,
    two_way_region,
)
from adt_lab.channel import ChannelConfig, Regime, RegimeLabel, classify_regime
from adt_lab.exceptions import ConfigParseError, PlanParseError

logger = logging.getLogger(__name__)

Part = Tuple[int, int]

ELEMENTARY_PARTS = frozenset({(0, 1), (1, 2), (2, 3), (1, 0), (2, 1), (3, 2)})

_THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class Decomposition:
    """Multiset of parts in emission order; ``undecomposed`` marks the middle band."""

    parts: Tuple[Tuple[Part, int], ...]
    undecomposed: bool = False

    def count(self, part: Part) -> int:
        return sum(mult for kind, mult in self.parts if kind == part)

    def __str__(self) -> str:
        if not self.parts:
            return "-"
        return " ".join(f"({m},{n})^{mult}" for (m, n), mult in self.parts)


def _collect(*items: Tuple[Part, int]) -> Decomposition:
    return Decomposition(tuple((part, mult) for part, mult in items if mult > 0))


def decompose(m: int, n: int) -> Decomposition:
    """
    Split (m, n) into elementary parts by the band of alpha = m / n.

    At alpha = 1/2 both low-band rules give (1,2)^m, at alpha = 3/2 and
    alpha = 2 both high-band rules agree as well.

    :param m: cross levels.
    :param n: direct levels.
    :return: decomposition, the channel itself for the middle band.
    """
    if 2 * m <= n:
        return _collect(((0, 1), n - 2 * m), ((1, 2), m))
    if 3 * m <= 2 * n:
        return _collect(((1, 2), 2 * n - 3 * m), ((2, 3), 2 * m - n))
    if 2 * m < 3 * n:
        return Decomposition((((m, n), 1),), undecomposed=True)
    if m < 2 * n:
        return _collect(((2, 1), 2 * m - 3 * n), ((3, 2), 2 * n - m))
    return _collect(((1, 0), m - 2 * n), ((2, 1), n))


def validate(decomposition: Decomposition, m: int, n: int) -> bool:
    """
    Check level sums and that every part is elementary or the marked original.

    :param decomposition: candidate.
    :param m: cross levels of the original.
    :param n: direct levels of the original.
    :return: flag.
    """
    sum_m = sum(part[0] * mult for part, mult in decomposition.parts)
    sum_n = sum(part[1] * mult for part, mult in decomposition.parts)
    if (sum_m, sum_n) != (m, n):
        return False
    if decomposition.undecomposed:
        return decomposition.parts == (((m, n), 1),)
    return all(
        part in ELEMENTARY_PARTS and mult > 0 for part, mult in decomposition.parts
    )


def chains(m: int, n: int) -> List[Tuple[Part, Tuple[int, ...]]]:
    """
    Level chains of a direction, each an independent sub-channel.

    With d = |n - m| > 0, chain c holds levels c, c + d, ... (level 1 on
    top). Within a chain every output level sees the same-position level
    of one sender and the level above of the other, so a chain of length
    k is a (k-1, k) channel when m < n and a (k, k-1) channel when m > n.
    With m == n the whole direction is one (q, q) chain.

    :param m: cross levels.
    :param n: direct levels.
    :return: (part, levels) per chain, chain 1 first.
    """
    q = max(m, n)
    if q == 0:
        return []
    if m == n:
        return [((q, q), tuple(range(1, q + 1)))]
    step = abs(n - m)
    found = []
    for start in range(1, step + 1):
        levels = tuple(range(start, q + 1, step))
        size = len(levels)
        part = (size - 1, size) if m < n else (size, size - 1)
        found.append((part, levels))
    return found


class Target(str, enum.Enum):  # noqa: WPS600
    """Which corner of the region a plan aims at."""

    FAVOR_FORWARD = "favor-forward"
    FAVOR_BACKWARD = "favor-backward"
    PERFECT_BOTH = "perfect-both"


class R4Case(str, enum.Enum):  # noqa: WPS600
    """Which perfect-feedback rate of an R4 configuration survives the sum bounds."""

    BOTH = "I"
    BACKWARD = "II"
    FORWARD = "III"
    NEITHER = "IV"


class PairingKind(str, enum.Enum):  # noqa: WPS600
    """
    Block types a pairing can run.

    ``i``..``v`` are the interactive unit blocks, a trailing "~" marks the
    mirrored-and-swapped block that favors the backward direction. ``l3``
    and ``l3b`` trade feedback for backward rate one for one and have no
    executable scheme; their "~" forms are plain mirrors. ``sl`` carries
    backward feedback on the spare levels of a middle-band forward channel.
    ``rate`` stands for a whole configuration whose corner is reached by a
    construction the catalog does not execute.
    """

    I = "i"  # noqa: E741
    I_T = "i~"
    II = "ii"
    II_T = "ii~"
    III = "iii"
    III_T = "iii~"
    IV = "iv"
    V = "v"
    V_T = "v~"
    NF = "nf"
    L3 = "l3"
    L3_T = "l3~"
    L3B = "l3b"
    L3B_T = "l3b~"
    SL = "sl"
    SL_T = "sl~"
    RATE = "rate"

    @property
    def tilde(self) -> "PairingKind":
        return _TILDE.get(self, self)


_TILDE = {
    PairingKind.I: PairingKind.I_T,
    PairingKind.II: PairingKind.II_T,
    PairingKind.III: PairingKind.III_T,
    PairingKind.V: PairingKind.V_T,
    PairingKind.L3: PairingKind.L3_T,
    PairingKind.L3B: PairingKind.L3B_T,
    PairingKind.SL: PairingKind.SL_T,
}
_TILDE.update({value: key for key, value in list(_TILDE.items())})

# (forward part, backward part) of every unit block in its base labeling
UNIT_PARTS: Dict[PairingKind, Tuple[Part, Part]] = {
    PairingKind.I: ((0, 1), (1, 0)),
    PairingKind.I_T: ((0, 1), (1, 0)),
    PairingKind.II: ((1, 2), (1, 0)),
    PairingKind.II_T: ((0, 1), (2, 1)),
    PairingKind.III: ((2, 3), (1, 0)),
    PairingKind.III_T: ((0, 1), (3, 2)),
    PairingKind.IV: ((1, 2), (2, 1)),
    PairingKind.V: ((2, 3), (2, 1)),
    PairingKind.V_T: ((1, 2), (3, 2)),
    PairingKind.L3: ((1, 2), (1, 2)),
    PairingKind.L3_T: ((1, 2), (1, 2)),
    PairingKind.L3B: ((1, 2), (2, 3)),
    PairingKind.L3B_T: ((2, 3), (1, 2)),
}

# asymptotic (forward per forward part, backward per backward part)
_PER_PART: Dict[PairingKind, Tuple[Fraction, Fraction]] = {
    PairingKind.I: (Fraction(2, 3), _THIRD),
    PairingKind.I_T: (_THIRD, Fraction(2, 3)),
    PairingKind.II: (Fraction(4, 3), Fraction(2, 3)),
    PairingKind.II_T: (Fraction(2, 3), Fraction(4, 3)),
    PairingKind.III: (Fraction(2), Fraction(2, 3)),
    PairingKind.III_T: (Fraction(2, 3), Fraction(2)),
    PairingKind.IV: (Fraction(4, 3), Fraction(4, 3)),
    PairingKind.V: (Fraction(2), Fraction(4, 3)),
    PairingKind.V_T: (Fraction(4, 3), Fraction(2)),
}

_EQUAL_COUNTS = frozenset(
    {PairingKind.I, PairingKind.I_T, PairingKind.II, PairingKind.II_T, PairingKind.IV},
)


def _reverse(part: Optional[Part]) -> Optional[Part]:
    if part is None:
        return None
    return (part[1], part[0])


def unit_parts_match(kind: PairingKind, forward: Optional[Part], backward: Optional[Part]) -> bool:
    """Whether the parts are the unit's own or their relabeled pair."""
    base = UNIT_PARTS.get(kind)
    if base is None:
        return False
    swapped = (_reverse(base[0]), _reverse(base[1]))
    return (forward, backward) in {base, swapped}


def nf_supported(part: Part) -> bool:
    """Parts with an executable non-feedback scheme."""
    m, n = part
    return part in ELEMENTARY_PARTS or m == n or min(m, n) == 0


def side_condition_holds(kind: PairingKind, forward_count: int, backward_count: int) -> bool:
    """
    Multiplicity conditions under which a block reaches its stated rate.

    :param kind: block kind.
    :param forward_count: forward parts in the pairing.
    :param backward_count: backward parts in the pairing.
    :return: flag.
    """
    i, j = forward_count, backward_count
    checks: Dict[PairingKind, Callable[[], bool]] = {
        PairingKind.I: lambda: i == j,
        PairingKind.I_T: lambda: i == j,
        PairingKind.II: lambda: i == j,
        PairingKind.II_T: lambda: i == j,
        PairingKind.III: lambda: 3 * i >= 2 * j,
        PairingKind.III_T: lambda: 3 * j >= 2 * i,
        PairingKind.IV: lambda: 2 * i >= j and 2 * j >= i,
        PairingKind.V: lambda: 3 * i >= j,
        PairingKind.V_T: lambda: 3 * j >= i,
        PairingKind.L3: lambda: i <= 3 * j,
        PairingKind.L3_T: lambda: j <= 3 * i,
        PairingKind.L3B: lambda: i <= 6 * j,
        PairingKind.L3B_T: lambda: j <= 6 * i,
    }
    check = checks.get(kind)
    return True if check is None else check()


@dataclass(frozen=True)
class Pairing:
    """Forward parts and backward parts run together as one block type."""

    forward: Optional[Part]
    forward_count: int
    backward: Optional[Part]
    backward_count: int
    kind: PairingKind
    rate: RatePair
    case: str

    @property
    def executable(self) -> bool:
        i, j = self.forward_count, self.backward_count
        if self.kind == PairingKind.NF:
            parts = [part for part in (self.forward, self.backward) if part is not None]
            return len(parts) == 1 and nf_supported(parts[0])
        if self.kind not in _PER_PART:
            return False
        if not unit_parts_match(self.kind, self.forward, self.backward):
            return False
        if self.kind in _EQUAL_COUNTS:
            return i == j >= 1
        return i >= 1 and j >= 1 and self.side_condition

    @property
    def side_condition(self) -> bool:
        return side_condition_holds(self.kind, self.forward_count, self.backward_count)

    def swapped(self) -> "Pairing":
        return replace(
            self,
            forward=_reverse(self.forward),
            backward=_reverse(self.backward),
        )

    def mirror_swapped(self) -> "Pairing":
        """Exchange directions and node labels; rates trade places."""
        return Pairing(
            forward=_reverse(self.backward),
            forward_count=self.backward_count,
            backward=_reverse(self.forward),
            backward_count=self.forward_count,
            kind=self.kind.tilde,
            rate=RatePair(self.rate.backward, self.rate.forward),
            case=self.case,
        )

    def mirrored(self) -> "Pairing":
        return Pairing(
            forward=self.backward,
            forward_count=self.backward_count,
            backward=self.forward,
            backward_count=self.forward_count,
            kind=self.kind.tilde,
            rate=RatePair(self.rate.backward, self.rate.forward),
            case=self.case,
        )


def block_rate(kind: PairingKind, forward_count: int, backward_count: int) -> RatePair:
    """
    Asymptotic rate of a unit-block pairing.

    :param kind: one of the interactive unit kinds.
    :param forward_count: forward parts.
    :param backward_count: backward parts.
    :return: rate pair.
    """
    forward_rate, backward_rate = _PER_PART[kind]
    return RatePair(forward_rate * forward_count, backward_rate * backward_count)


def _block(
    kind: PairingKind,
    forward: Part,
    forward_count: int,
    backward: Part,
    backward_count: int,
    case: str,
) -> Optional[Pairing]:
    if forward_count == 0 and backward_count == 0:
        return None
    return Pairing(
        forward,
        forward_count,
        backward,
        backward_count,
        kind,
        block_rate(kind, forward_count, backward_count),
        case,
    )


def _fill(part: Part, count: int, backward: bool, case: str) -> Optional[Pairing]:
    if count <= 0:
        return None
    value = c_no(*part) * count
    if backward:
        return Pairing(None, 0, part, count, PairingKind.NF, RatePair(Fraction(0), value), case)
    return Pairing(part, count, None, 0, PairingKind.NF, RatePair(value, Fraction(0)), case)


def _lemma3(
    kind: PairingKind,
    forward_count: int,
    backward: Part,
    backward_count: int,
    case: str,
) -> Pairing:
    # one third of a level of backward rate per (1,2) forward part buys its gain
    per_backward = c_no(*backward)
    return Pairing(
        (1, 2),
        forward_count,
        backward,
        backward_count,
        kind,
        RatePair(
            Fraction(4, 3) * forward_count,
            per_backward * backward_count - _THIRD * forward_count,
        ),
        case,
    )


def _rate_only(cfg: ChannelConfig, corner: RatePair, case: str) -> Pairing:
    forward = (cfg.m, cfg.n) if cfg.q else None
    backward = (cfg.mt, cfg.nt) if cfg.qt else None
    return Pairing(
        forward,
        1 if forward else 0,
        backward,
        1 if backward else 0,
        PairingKind.RATE,
        corner,
        case,
    )


@dataclass(frozen=True)
class SchemePlan:
    """Pairings for one configuration and target, with their predicted rates."""

    config: ChannelConfig
    target: Target
    corner: RatePair
    pairings: Tuple[Pairing, ...]
    regime: Optional[RegimeLabel] = None
    # rates of the composed program at its stage length and layer count
    finite: Optional[RatePair] = None

    @property
    def predicted(self) -> RatePair:
        return predicted_rates(self)

    @property
    def executable(self) -> bool:
        return all(pairing.executable for pairing in self.pairings)


def predicted_rates(plan: SchemePlan) -> RatePair:
    """Sum of the pairing rates; (0, 0) for an empty plan."""
    total = ZERO_RATE
    for pairing in plan.pairings:
        total = total + pairing.rate
    return total


def target_corner(cfg: ChannelConfig, target: Target) -> RatePair:
    """
    Corner of the capacity region a target asks for.

    Perfect-both falls back to the favor-backward corner when the
    perfect-feedback pair lies outside the region.

    :param cfg: configuration.
    :param target: target.
    :return: corner.
    """
    region = two_way_region(cfg)
    corners = corner_points(region)
    if target == Target.PERFECT_BOTH:
        _, perfect = capacity_pairs(cfg)
        if contains(region, perfect):
            return perfect
        target = Target.FAVOR_BACKWARD
    if target == Target.FAVOR_FORWARD:
        return max(corners, key=lambda point: (point.forward, point.backward))
    return max(corners, key=lambda point: (point.backward, point.forward))


def _mirror_swap_config(cfg: ChannelConfig) -> ChannelConfig:
    return cfg.mirrored().swapped()


Recipe = Optional[List[Pairing]]


def _compact(items: Sequence[Optional[Pairing]]) -> List[Pairing]:
    return [item for item in items if item is not None]


def r4_case(cfg: ChannelConfig) -> R4Case:
    """Compare each perfect-feedback gain with the room the other direction leaves."""
    baseline, perfect = capacity_pairs(cfg)
    forward_fits = perfect.forward - baseline.forward <= cfg.mt - perfect.backward
    backward_fits = perfect.backward - baseline.backward <= cfg.n - perfect.forward
    if forward_fits and backward_fits:
        return R4Case.BOTH
    if backward_fits:
        return R4Case.BACKWARD
    if forward_fits:
        return R4Case.FORWARD
    return R4Case.NEITHER


def _r4_subregime(cfg: ChannelConfig) -> int:
    forward_mid = 2 * cfg.m >= cfg.n
    backward_mid = cfg.mt < 2 * cfg.nt
    if forward_mid:
        return 1 if backward_mid else 2
    return 3 if backward_mid else 4


def _r4_1_case1(cfg: ChannelConfig) -> Recipe:
    m, n, mt, nt = cfg.m, cfg.n, cfg.mt, cfg.nt
    ones, twos = 2 * n - 3 * m, 2 * m - n
    back_ones, back_twos = 2 * mt - 3 * nt, 2 * nt - mt
    if ones > back_ones:
        return _oriented(cfg, _r4_1_case1)
    paired = min(back_ones, 2 * ones)
    case = "R4-1/I"
    return _compact(
        [
            _block(PairingKind.IV, (1, 2), ones, (2, 1), paired, case),
            _block(PairingKind.V, (2, 3), twos, (2, 1), back_ones - paired, case),
            _fill((3, 2), back_twos, backward=True, case=case),
        ],
    )


def _r4_2_case1(cfg: ChannelConfig, case: str = "R4-2/I") -> Recipe:
    m, n, mt, nt = cfg.m, cfg.n, cfg.mt, cfg.nt
    ones, twos = 2 * n - 3 * m, 2 * m - n
    singles, doubles = mt - 2 * nt, nt
    shared = min(ones, singles)
    head = _block(PairingKind.II, (1, 2), shared, (1, 0), shared, case)
    if shared == ones:
        if doubles % 3 or twos < doubles // 3:
            return None
        return _compact(
            [
                head,
                _block(PairingKind.III, (2, 3), twos - doubles // 3, (1, 0), singles - shared, case),
                _block(PairingKind.V, (2, 3), doubles // 3, (2, 1), doubles, case),
            ],
        )
    return _compact(
        [
            head,
            _block(PairingKind.IV, (1, 2), ones - shared, (2, 1), doubles, case),
            _fill((2, 3), twos, backward=False, case=case),
        ],
    )


def _r4_3_case1(cfg: ChannelConfig) -> Recipe:
    return _oriented(cfg, lambda flipped: _r4_2_case1(flipped, case="R4-3/I"))


def _r4_4_case1(cfg: ChannelConfig) -> Recipe:
    m, n, mt, nt = cfg.m, cfg.n, cfg.mt, cfg.nt
    zeros_one, ones = n - 2 * m, m
    singles, doubles = mt - 2 * nt, nt
    case = "R4-4/I"
    first = min(ones, singles)
    second = min(zeros_one, doubles)
    third = min(ones - first, doubles - second)
    fourth = min(zeros_one - second, singles - first)
    return _compact(
        [
            _block(PairingKind.II, (1, 2), first, (1, 0), first, case),
            _block(PairingKind.II_T, (0, 1), second, (2, 1), second, case),
            _block(PairingKind.IV, (1, 2), third, (2, 1), third, case),
            _block(PairingKind.I, (0, 1), fourth, (1, 0), fourth, case),
            _fill((1, 2), ones - first - third, backward=False, case=case),
            _fill((0, 1), zeros_one - second - fourth, backward=False, case=case),
            _fill((1, 0), singles - first - fourth, backward=True, case=case),
            _fill((2, 1), doubles - second - third, backward=True, case=case),
        ],
    )


def _r4_case2(cfg: ChannelConfig, subregime: int) -> Recipe:
    m, n, mt, nt = cfg.m, cfg.n, cfg.mt, cfg.nt
    ones, twos = 2 * n - 3 * m, 2 * m - n
    if subregime == 1:
        back_ones, back_twos = 2 * mt - 3 * nt, 2 * nt - mt
        case = "R4-1/II"
        if ones < mt or mt < 2 * back_ones:
            return None
        return _compact(
            [
                _block(PairingKind.IV, (1, 2), 2 * back_ones, (2, 1), back_ones, case),
                _block(PairingKind.V_T, (1, 2), mt - 2 * back_ones, (3, 2), back_twos, case),
                _fill((1, 2), ones - mt, backward=False, case=case),
                _fill((2, 3), twos, backward=False, case=case),
            ],
        )
    if subregime == 2:
        singles, doubles = mt - 2 * nt, nt
        case = "R4-2/II"
        if ones < singles + 2 * doubles:
            return None
        return _compact(
            [
                _block(PairingKind.II, (1, 2), singles, (1, 0), singles, case),
                _block(PairingKind.IV, (1, 2), 2 * doubles, (2, 1), doubles, case),
                _fill((1, 2), ones - singles - 2 * doubles, backward=False, case=case),
                _fill((2, 3), twos, backward=False, case=case),
            ],
        )
    return None


def _plan_r4(cfg: ChannelConfig, corner: RatePair) -> Recipe:
    case = r4_case(cfg)
    subregime = _r4_subregime(cfg)
    baseline, perfect = capacity_pairs(cfg)
    if case == R4Case.BOTH:
        recipes = {1: _r4_1_case1, 2: _r4_2_case1, 3: _r4_3_case1, 4: _r4_4_case1}
        return recipes[subregime](cfg)
    if case == R4Case.BACKWARD and corner.backward == perfect.backward:
        return _r4_case2(cfg, subregime)
    if case == R4Case.FORWARD and corner.forward == perfect.forward:
        return _oriented(
            cfg,
            lambda flipped: _r4_case2(flipped, _r4_subregime(flipped)),
        )
    return None


def _r1_forward_recipe(cfg: ChannelConfig) -> Recipe:
    m, n, mt, nt = cfg.m, cfg.n, cfg.mt, cfg.nt
    if 2 * m < n:
        return None
    ones, twos = 2 * n - 3 * m, 2 * m - n
    if 2 * mt >= nt:
        back_ones, back_twos = 2 * nt - 3 * mt, 2 * mt - nt
        case = "R1-1/I"
        if ones <= 3 * back_ones:
            return _compact(
                [
                    _lemma3(PairingKind.L3, ones, (1, 2), back_ones, case),
                    _fill((2, 3), twos, backward=False, case=case),
                    _fill((2, 3), back_twos, backward=True, case=case),
                ],
            )
        if ones <= 6 * back_twos:
            return _compact(
                [
                    _lemma3(PairingKind.L3B, ones, (2, 3), back_twos, case),
                    _fill((2, 3), twos, backward=False, case=case),
                    _fill((1, 2), back_ones, backward=True, case=case),
                ],
            )
        return None
    case = "R1-2/I"
    return _compact(
        [
            _lemma3(PairingKind.L3, ones, (1, 2), mt, case),
            _fill((2, 3), twos, backward=False, case=case),
            _fill((0, 1), nt - 2 * mt, backward=True, case=case),
        ],
    )


def _plan_r1(cfg: ChannelConfig, corner: RatePair) -> Recipe:
    baseline, perfect = capacity_pairs(cfg)
    forward_gain = perfect.forward - baseline.forward
    backward_gain = perfect.backward - baseline.backward
    if forward_gain > baseline.backward or backward_gain > baseline.forward:
        return None
    if corner == RatePair(perfect.forward, baseline.backward - forward_gain):
        return _r1_forward_recipe(cfg)
    if corner == RatePair(baseline.forward - backward_gain, perfect.backward):
        mirrored = _r1_forward_recipe(cfg.mirrored())
        if mirrored is None:
            return None
        return [pairing.mirrored() for pairing in mirrored]
    return None


def _plan_r2(cfg: ChannelConfig, corner: RatePair) -> Recipe:
    baseline, perfect = capacity_pairs(cfg)
    if perfect.backward - baseline.backward > cfg.n - baseline.forward:
        return None
    if corner != RatePair(baseline.forward, perfect.backward):
        return None
    parts = decompose(cfg.mt, cfg.nt)
    spare = [part for part, _ in parts.parts if part in {(2, 1), (1, 0)}]
    if len(spare) != 1:
        return None
    part = spare[0]
    count = parts.count(part)
    case = "R2-1/I" if cfg.mt < 2 * cfg.nt else "R2-2/I"
    head = Pairing(
        (cfg.m, cfg.n),
        1,
        part,
        count,
        PairingKind.SL,
        RatePair(baseline.forward, c_pf(*part) * count),
        case,
    )
    return _compact([head, _fill((3, 2), parts.count((3, 2)), backward=True, case=case)])


def _plan_middle(cfg: ChannelConfig) -> Recipe:
    return _compact(
        [
            _fill((cfg.m, cfg.n), 1, backward=False, case="MIDDLE"),
            _fill((cfg.mt, cfg.nt), 1, backward=True, case="MIDDLE"),
        ],
    )


def _plan_degenerate(cfg: ChannelConfig) -> List[Pairing]:
    pairings = []
    for (m, n), backward in (((cfg.m, cfg.n), False), ((cfg.mt, cfg.nt), True)):
        for part, mult in decompose(m, n).parts:
            pairing = _fill(part, mult, backward=backward, case="DEGENERATE")
            if pairing is not None:
                pairings.append(pairing)
    return pairings


def _oriented(cfg: ChannelConfig, recipe: Callable[[ChannelConfig], Recipe]) -> Recipe:
    """Run a recipe on the mirrored-and-swapped configuration and map it back."""
    flipped = recipe(_mirror_swap_config(cfg))
    if flipped is None:
        return None
    return [pairing.mirror_swapped() for pairing in flipped]


# regime of the node-swapped configuration
_UNDER_SWAP = {
    Regime.R1P: Regime.R1,
    Regime.R2P: Regime.R3,
    Regime.R3P: Regime.R2,
    Regime.R4P: Regime.R4,
}


def _dispatch(cfg: ChannelConfig, regime: Regime, corner: RatePair) -> Recipe:
    if regime in _UNDER_SWAP:
        swapped = _dispatch(cfg.swapped(), _UNDER_SWAP[regime], corner)
        if swapped is None:
            return None
        return [pairing.swapped() for pairing in swapped]
    if regime == Regime.R4:
        return _plan_r4(cfg, corner)
    if regime == Regime.R1:
        return _plan_r1(cfg, corner)
    if regime == Regime.R2:
        return _plan_r2(cfg, corner)
    if regime == Regime.R3:
        flipped_corner = RatePair(corner.backward, corner.forward)
        return _oriented(cfg, lambda flipped: _plan_r2(flipped, flipped_corner))
    return _plan_middle(cfg)


def _accepts(cfg: ChannelConfig, pairings: Sequence[Pairing], corner: RatePair) -> bool:
    if not all(pairing.side_condition for pairing in pairings):
        return False
    total = ZERO_RATE
    for pairing in pairings:
        total = total + pairing.rate
    if total != corner:
        return False
    return contains(two_way_region(cfg), total) and _consumes(cfg, pairings)


def _consumes(cfg: ChannelConfig, pairings: Sequence[Pairing]) -> bool:
    used_forward: Counter = Counter()
    used_backward: Counter = Counter()
    for pairing in pairings:
        if pairing.forward is not None:
            used_forward[pairing.forward] += pairing.forward_count
        if pairing.backward is not None:
            used_backward[pairing.backward] += pairing.backward_count
    return _matches(used_forward, cfg.m, cfg.n) and _matches(used_backward, cfg.mt, cfg.nt)


def _matches(used: Counter, m: int, n: int) -> bool:
    whole = Counter({(m, n): 1}) if max(m, n) else Counter()
    parts = Counter({part: mult for part, mult in decompose(m, n).parts})
    return +used in (parts, whole)


def plan(cfg: ChannelConfig, target: Target) -> SchemePlan:
    """
    Pair forward and backward parts following the regime's recipe.

    Whenever a recipe is missing for the sub-case, or a produced pairing
    breaks its side condition, the plan keeps the corner as a single
    rate-only pairing and is not executable.

    :param cfg: configuration.
    :param target: corner to aim at.
    :return: plan.
    """
    corner = target_corner(cfg, target)
    if cfg.alpha is None or cfg.alpha_t is None:
        return SchemePlan(cfg, target, corner, tuple(_plan_degenerate(cfg)))
    label = classify_regime(cfg)
    regime = label.regime
    pairings = _dispatch(cfg, regime, corner)
    if pairings is not None and _accepts(cfg, pairings, corner):
        return SchemePlan(cfg, target, corner, tuple(pairings), label)
    logger.info("No executable recipe for %s (%s), keeping rate only", cfg, regime.value)
    fallback = _rate_only(cfg, corner, f"{regime.value}/rate-only")
    return SchemePlan(cfg, target, corner, (fallback,), label)


def _format_side(part: Optional[Part], count: int) -> str:
    if part is None or count == 0:
        return "-"
    return f"({part[0]},{part[1]})^{count}"


def serialize_plan(schedule: SchemePlan) -> str:
    """
    Line records: header lines, then one PAIR line per pairing.

    :param schedule: plan.
    :return: text ending with a newline.
    """
    regime = schedule.regime.regime.value if schedule.regime else "-"
    lines = [
        f"CONFIG {schedule.config}",
        f"TARGET {schedule.target.value}",
        f"REGIME {regime}",
        f"CORNER {schedule.corner}",
        f"PREDICTED {schedule.predicted}",
        f"FINITE {schedule.finite or '-'}",
        f"EXECUTABLE {'true' if schedule.executable else 'false'}",
    ]
    for pairing in schedule.pairings:
        lines.append(
            " ".join(
                [
                    "PAIR",
                    _format_side(pairing.forward, pairing.forward_count),
                    _format_side(pairing.backward, pairing.backward_count),
                    pairing.kind.value,
                    str(pairing.rate.forward),
                    str(pairing.rate.backward),
                    pairing.case,
                ],
            ),
        )
    return "\n".join(lines) + "\n"


def _parse_side(token: str) -> Tuple[Optional[Part], int]:
    if token == "-":
        return None, 0
    try:
        head, count = token.split("^")
        m, n = head.strip("()").split(",")
        return (int(m), int(n)), int(count)
    except ValueError as exc:
        raise PlanParseError(f"bad part {token!r}") from exc


def _parse_finite(text: str) -> Optional[RatePair]:
    if text == "-":
        return None
    forward, backward = text.split()
    return rate(Fraction(forward), Fraction(backward))


def parse_plan(text: str) -> SchemePlan:
    """
    Read back a serialized plan.

    :param text: output of serialize_plan.
    :raises PlanParseError: on malformed records.
    :return: plan; executability and prediction are recomputed, finite rates are read back.
    """
    header: Dict[str, str] = {}
    pairings = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key != "PAIR":
            header[key] = rest.strip()
            continue
        fields = rest.split()
        if len(fields) != 6:
            raise PlanParseError(f"line {lineno}: expected 6 fields after PAIR")
        forward, forward_count = _parse_side(fields[0])
        backward, backward_count = _parse_side(fields[1])
        try:
            kind = PairingKind(fields[2])
            pair_rate = rate(Fraction(fields[3]), Fraction(fields[4]))
        except ValueError as exc:
            raise PlanParseError(f"line {lineno}: {exc}") from exc
        pairings.append(
            Pairing(forward, forward_count, backward, backward_count, kind, pair_rate, fields[5]),
        )
    for key in ("CONFIG", "TARGET", "CORNER"):
        if key not in header:
            raise PlanParseError(f"missing {key} record")
    try:
        cfg = ChannelConfig.parse(header["CONFIG"])
        target = Target(header["TARGET"])
        corner_forward, corner_backward = header["CORNER"].split()
        corner = rate(Fraction(corner_forward), Fraction(corner_backward))
        finite = _parse_finite(header.get("FINITE", "-"))
    except (ConfigParseError, ValueError) as exc:
        raise PlanParseError(str(exc)) from exc
    label = None if cfg.alpha is None or cfg.alpha_t is None else classify_regime(cfg)
    return SchemePlan(cfg, target, corner, tuple(pairings), label, finite)
