from typing import List, Optional

from pydantic import BaseModel, Field

from adt_lab.settings import settings
from adt_lab.web.api.v1.capacity.schema import RateDTO


class CatalogDTO(BaseModel):
    schemes: List[str]


class VerifyRequest(BaseModel):
    """Scheme to verify; the configured seed is used when none is given."""

    scheme: str = Field(..., examples=["ex1:L=2"])
    seed: Optional[int] = None


class SchemeLimits(BaseModel):
    """Upper bounds on the numbers an identifier may carry."""

    stage_length: Optional[int] = Field(None, alias="L", le=settings.max_stage_length)
    layers: Optional[int] = Field(None, alias="M", le=settings.max_layers)
    copies_forward: Optional[int] = Field(None, alias="i", le=settings.max_multiplicity)
    copies_backward: Optional[int] = Field(None, alias="j", le=settings.max_multiplicity)
    cross_levels: Optional[int] = Field(None, alias="m", le=settings.max_levels)
    direct_levels: Optional[int] = Field(None, alias="n", le=settings.max_levels)


class VerificationDTO(BaseModel):
    scheme: str
    seed: int
    achieved: RateDTO
    region_member: bool
    forward_functions: int
    backward_functions: int
    length: int
    vacant_forward: int
    vacant_backward: int
    basis_failures: int
    linearity_failures: int
    causality_failures: int
    undecoded: List[str]
    passed: bool
