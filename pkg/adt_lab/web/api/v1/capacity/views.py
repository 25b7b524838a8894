from typing import Optional

from fastapi import APIRouter, HTTPException, Query
from starlette import status

from adt_lab.capacity import (
    RatePair,
    capacity_pairs,
    corner_points,
    corollary1_holds,
    interaction_gain,
    two_way_region,
)
from adt_lab.channel import ChannelConfig, classify_regime, format_ratio
from adt_lab.decomposition import Part, Target, decompose, plan, serialize_plan
from adt_lab.exceptions import AdtLabError, DegenerateChannelError
from adt_lab.simulator import with_finite_rates
from adt_lab.web.api.v1.capacity.schema import (
    DecompositionDTO,
    InequalityDTO,
    PairingDTO,
    PlanDTO,
    RateDTO,
    RegionDTO,
)

router = APIRouter()


def to_rate(pair: RatePair) -> RateDTO:
    return RateDTO(forward=format_ratio(pair.forward), backward=format_ratio(pair.backward))


def _side(part: Optional[Part], count: int) -> str:
    if part is None or count == 0:
        return "-"
    return f"({part[0]},{part[1]})^{count}"


def _parse(config: str) -> ChannelConfig:
    try:
        return ChannelConfig.parse(config)
    except AdtLabError as exc:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc)) from exc


@router.get("/region", response_model=RegionDTO)
def get_region(
    config: str = Query(..., description="Configuration as m,n/mt,nt"),
) -> RegionDTO:
    """
    Capacity region of a configuration with its baselines and gain class.

    :param config: configuration text.
    :raises HTTPException: if the configuration does not parse.
    :return: region.
    """
    cfg = _parse(config)
    region = two_way_region(cfg)
    baseline, perfect = capacity_pairs(cfg)
    try:
        regime: Optional[str] = str(classify_regime(cfg).regime.value)
    except DegenerateChannelError:
        regime = None
    try:
        gain_class: Optional[str] = interaction_gain(cfg).value
    except DegenerateChannelError:
        gain_class = None
    return RegionDTO(
        config=str(cfg),
        inequalities=[
            InequalityDTO(a=format_ratio(item.a), b=format_ratio(item.b), c=format_ratio(item.c))
            for item in region.inequalities
        ],
        corners=[to_rate(corner) for corner in corner_points(region)],
        no_feedback=to_rate(baseline),
        perfect_feedback=to_rate(perfect),
        regime=regime,
        gain_class=gain_class,
        corollary1=corollary1_holds(cfg),
    )


@router.get("/decompose", response_model=DecompositionDTO)
def get_decomposition(
    m: int = Query(..., ge=0, description="Cross levels"),
    n: int = Query(..., ge=0, description="Direct levels"),
) -> DecompositionDTO:
    """
    Elementary parts of an (m, n) channel.

    :param m: cross levels.
    :param n: direct levels.
    :return: decomposition.
    """
    decomposition = decompose(m, n)
    return DecompositionDTO(
        m=m,
        n=n,
        parts=str(decomposition),
        undecomposed=decomposition.undecomposed,
    )


@router.get("/plan", response_model=PlanDTO)
def get_plan(
    config: str = Query(..., description="Configuration as m,n/mt,nt"),
    target: Target = Query(Target.PERFECT_BOTH, description="Corner to aim at"),
    finite: bool = Query(False, description="Also compose and run the plan"),
) -> PlanDTO:
    """
    Pairings a regime recipe picks for the target corner.

    :param config: configuration text.
    :param target: target corner.
    :param finite: record the rates of the composed program too.
    :raises HTTPException: if the configuration does not parse.
    :return: plan.
    """
    cfg = _parse(config)
    schedule = plan(cfg, target)
    if finite:
        schedule = with_finite_rates(schedule)
    return PlanDTO(
        config=str(cfg),
        target=target.value,
        regime=schedule.regime.regime.value if schedule.regime else None,
        corner=to_rate(schedule.corner),
        predicted=to_rate(schedule.predicted),
        finite=to_rate(schedule.finite) if schedule.finite else None,
        executable=schedule.executable,
        pairings=[
            PairingDTO(
                forward=_side(pairing.forward, pairing.forward_count),
                backward=_side(pairing.backward, pairing.backward_count),
                kind=pairing.kind.value,
                rate=to_rate(pairing.rate),
                case=pairing.case,
                executable=pairing.executable,
            )
            for pairing in schedule.pairings
        ],
        serialized=serialize_plan(schedule),
    )
