"""Capacity formulas, the two-way region and interaction-gain classes."""
import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple

from adt_lab.channel import ChannelConfig, format_ratio
from adt_lab.exceptions import DegenerateChannelError

_TWO_THIRDS = Fraction(2, 3)
_THREE_HALVES = Fraction(3, 2)


@dataclass(frozen=True, order=True)
class RatePair:
    """Forward and backward computation rates, functions per slot."""

    forward: Fraction
    backward: Fraction

    def __add__(self, other: "RatePair") -> "RatePair":
        return RatePair(self.forward + other.forward, self.backward + other.backward)

    def scaled(self, factor: Fraction) -> "RatePair":
        return RatePair(self.forward * factor, self.backward * factor)

    def __str__(self) -> str:
        return f"{format_ratio(self.forward)} {format_ratio(self.backward)}"


ZERO_RATE = RatePair(Fraction(0), Fraction(0))


def rate(forward: object, backward: object) -> RatePair:
    return RatePair(Fraction(forward), Fraction(backward))  # type: ignore


@dataclass(frozen=True)
class Inequality:
    """a*R + b*R~ <= c."""

    a: Fraction
    b: Fraction
    c: Fraction

    def holds(self, point: RatePair) -> bool:
        return self.a * point.forward + self.b * point.backward <= self.c

    def is_active(self, point: RatePair) -> bool:
        return self.a * point.forward + self.b * point.backward == self.c

    def __str__(self) -> str:
        return " ".join(format_ratio(coef) for coef in (self.a, self.b, self.c))


def _ineq(a: int, b: int, c: object) -> Inequality:
    return Inequality(Fraction(a), Fraction(b), Fraction(c))  # type: ignore


NON_NEGATIVE = (_ineq(-1, 0, 0), _ineq(0, -1, 0))


@dataclass(frozen=True)
class CapacityRegion:
    """Closed polytope in the (R, R~) quadrant."""

    inequalities: Tuple[Inequality, ...]

    def __str__(self) -> str:
        return "\n".join(str(inequality) for inequality in self.inequalities)


class GainClass(str, enum.Enum):  # noqa: WPS600
    """What feedback and interaction buy for a configuration."""

    NO_FEEDBACK_GAIN = "NO_FEEDBACK_GAIN"
    FEEDBACK_GAIN_NO_INTERACTION_GAIN = "FEEDBACK_GAIN_NO_INTERACTION_GAIN"
    NET_INTERACTION_GAIN = "NET_INTERACTION_GAIN"
    PERFECT_FEEDBACK_ACHIEVABLE = "PERFECT_FEEDBACK_ACHIEVABLE"


def c_no(m: int, n: int) -> Fraction:
    """
    Non-feedback computation capacity of an (m, n) channel.

    :param m: cross levels.
    :param n: direct levels.
    :return: exact capacity, 0 for the all-zero channel.
    """
    if m < n:
        return min(Fraction(m), Fraction(2 * n, 3))
    if m > n:
        return min(Fraction(n), Fraction(2 * m, 3))
    return Fraction(n)


def c_pf(m: int, n: int) -> Fraction:
    """Perfect-feedback computation capacity of an (m, n) channel."""
    if m < n:
        return Fraction(2 * n, 3)
    if m > n:
        return Fraction(2 * m, 3)
    return Fraction(n)


def two_way_region(cfg: ChannelConfig) -> CapacityRegion:
    """
    Two-way computation capacity region.

    :param cfg: configuration.
    :return: individual perfect-feedback bounds plus both cut-set sums.
    """
    return CapacityRegion(
        (
            _ineq(1, 0, c_pf(cfg.m, cfg.n)),
            _ineq(0, 1, c_pf(cfg.mt, cfg.nt)),
            _ineq(1, 1, cfg.m + cfg.mt),
            _ineq(1, 1, cfg.n + cfg.nt),
        )
        + NON_NEGATIVE,
    )


def baseline_region(cfg: ChannelConfig, which: str) -> CapacityRegion:
    """
    Product region of the per-direction baselines.

    :param cfg: configuration.
    :param which: "no" (non-feedback) or "pf" (perfect feedback).
    :raises ValueError: for any other baseline name.
    :return: region.
    """
    formulas = {"no": c_no, "pf": c_pf}
    if which not in formulas:
        raise ValueError(f"unknown baseline {which!r}")
    capacity = formulas[which]
    return CapacityRegion(
        (
            _ineq(1, 0, capacity(cfg.m, cfg.n)),
            _ineq(0, 1, capacity(cfg.mt, cfg.nt)),
        )
        + NON_NEGATIVE,
    )


def contains(region: CapacityRegion, point: RatePair) -> bool:
    return all(inequality.holds(point) for inequality in region.inequalities)


def _intersection(first: Inequality, second: Inequality) -> Iterable[RatePair]:
    det = first.a * second.b - first.b * second.a
    if det == 0:
        return ()
    forward = (first.c * second.b - first.b * second.c) / det
    backward = (first.a * second.c - first.c * second.a) / det
    return (RatePair(forward, backward),)


def corner_points(region: CapacityRegion) -> List[RatePair]:
    """
    Vertices of a bounded region by pairwise intersection of its boundaries.

    :param region: region.
    :return: vertices sorted by R then R~, without duplicates.
    """
    corners = set()
    for first, second in itertools.combinations(region.inequalities, 2):
        for point in _intersection(first, second):
            if contains(region, point):
                corners.add(point)
    return sorted(corners)


def capacity_pairs(cfg: ChannelConfig) -> Tuple[RatePair, RatePair]:
    """(C_no, C~_no) and (C_pf, C~_pf)."""
    no_feedback = RatePair(c_no(cfg.m, cfg.n), c_no(cfg.mt, cfg.nt))
    perfect = RatePair(c_pf(cfg.m, cfg.n), c_pf(cfg.mt, cfg.nt))
    return no_feedback, perfect


def dominating_corners(region: CapacityRegion, point: RatePair) -> List[RatePair]:
    """
    Vertices of the part of a region that is at least ``point`` in both rates.

    Empty when ``point`` itself lies outside the region.

    :param region: region.
    :param point: lower-left corner of the clip.
    :return: vertices sorted like ``corner_points``.
    """
    clipped = CapacityRegion(
        region.inequalities
        + (_ineq(-1, 0, -point.forward), _ineq(0, -1, -point.backward)),
    )
    return corner_points(clipped)


def interaction_gain(cfg: ChannelConfig) -> GainClass:
    """
    Classify what interaction buys over the non-interactive baseline.

    A rate pair beating the baseline exists iff the region clipped to the
    baseline's upper-right quadrant has a vertex other than the baseline.

    :param cfg: configuration.
    :raises DegenerateChannelError: if a direction has no levels.
    :return: gain class.
    """
    if cfg.alpha is None or cfg.alpha_t is None:
        raise DegenerateChannelError(f"{cfg} has an all-zero direction")
    region = two_way_region(cfg)
    baseline, perfect = capacity_pairs(cfg)
    if perfect != baseline and contains(region, perfect):
        return GainClass.PERFECT_FEEDBACK_ACHIEVABLE
    if any(corner != baseline for corner in dominating_corners(region, baseline)):
        return GainClass.NET_INTERACTION_GAIN
    if perfect.forward > baseline.forward or perfect.backward > baseline.backward:
        return GainClass.FEEDBACK_GAIN_NO_INTERACTION_GAIN
    return GainClass.NO_FEEDBACK_GAIN


def corollary1_holds(cfg: ChannelConfig) -> bool:
    """
    Whether the perfect-feedback pair is the whole story.

    True when one direction is below 2/3 and the other above 3/2 and the
    feedback gains fit in the spare levels of the opposite direction.

    :param cfg: configuration.
    :return: flag.
    """
    alpha = cfg.alpha
    alpha_t = cfg.alpha_t
    if alpha is None or alpha_t is None:
        return False
    baseline, perfect = capacity_pairs(cfg)
    gain = perfect.forward - baseline.forward
    gain_t = perfect.backward - baseline.backward
    if alpha < _TWO_THIRDS and alpha_t > _THREE_HALVES:
        return gain <= cfg.mt - perfect.backward and gain_t <= cfg.n - perfect.forward
    if alpha > _THREE_HALVES and alpha_t < _TWO_THIRDS:
        return gain <= cfg.nt - perfect.backward and gain_t <= cfg.m - perfect.forward
    return False

