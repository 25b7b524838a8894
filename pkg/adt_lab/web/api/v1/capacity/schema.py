from typing import List, Optional

from pydantic import BaseModel


class RateDTO(BaseModel):
    """Rate pair as exact rationals, integers bare."""

    forward: str
    backward: str


class InequalityDTO(BaseModel):
    """a R + b R~ <= c."""

    a: str
    b: str
    c: str


class RegionDTO(BaseModel):
    config: str
    inequalities: List[InequalityDTO]
    corners: List[RateDTO]
    no_feedback: RateDTO
    perfect_feedback: RateDTO
    regime: Optional[str]
    gain_class: Optional[str]
    corollary1: bool


class DecompositionDTO(BaseModel):
    m: int
    n: int
    parts: str
    undecomposed: bool


class PairingDTO(BaseModel):
    forward: str
    backward: str
    kind: str
    rate: RateDTO
    case: str
    executable: bool


class PlanDTO(BaseModel):
    """Plan with its serialized form, readable by ``compose:<file>``."""

    config: str
    target: str
    regime: Optional[str]
    corner: RateDTO
    predicted: RateDTO
    finite: Optional[RateDTO]
    executable: bool
    pairings: List[PairingDTO]
    serialized: str
