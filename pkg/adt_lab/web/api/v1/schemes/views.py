
from fastapi import APIRouter, HTTPException, Request
from pydantic import ValidationError
from starlette import status

from adt_lab.exceptions import AdtLabError
from adt_lab.schemes import CATALOG, Scheme, load_scheme, scheme_parameters
from adt_lab.simulator import verify
from adt_lab.web.api.v1.capacity.views import to_rate
from adt_lab.web.api.v1.schemes.schema import (
    CatalogDTO,
    SchemeLimits,
    VerificationDTO,
    VerifyRequest,
)

router = APIRouter()


@router.get("", response_model=CatalogDTO)
def get_catalog() -> CatalogDTO:
    """
    Identifier patterns of every cataloged scheme.

    :return: catalog.
    """
    return CatalogDTO(schemes=list(CATALOG))


def _scheme(request: Request, identifier: str) -> Scheme:
    warmed = getattr(request.app.state, "schemes", {})
    if identifier in warmed:
        return warmed[identifier]
    return load_scheme(identifier)


@router.post("/verify", response_model=VerificationDTO)
def verify_scheme(body: VerifyRequest, request: Request) -> VerificationDTO:
    """
    Run the basis, linearity and causality checks on a scheme.

    Plan files are not accepted here, only catalog identifiers.

    :param body: scheme and seed.
    :param request: current request, for the warmed schemes.
    :raises HTTPException: for unknown identifiers, bad parameters or
        parameters above the configured limits.
    :return: verification report.
    """
    if body.scheme.startswith("compose:"):
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail="plan files are only accepted by the command line",
        )
    try:
        SchemeLimits.model_validate(scheme_parameters(body.scheme))
    except ValidationError as exc:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail=[f"{error['loc'][0]}: {error['msg']}" for error in exc.errors()],
        ) from exc
    try:
        scheme = _scheme(request, body.scheme)
    except AdtLabError as exc:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc)) from exc
    report = verify(scheme, seed=body.seed)
    return VerificationDTO(
        scheme=report.scheme,
        seed=report.seed,
        achieved=to_rate(report.achieved),
        region_member=report.region_member,
        forward_functions=report.forward_functions,
        backward_functions=report.backward_functions,
        length=report.length,
        vacant_forward=report.vacant_forward,
        vacant_backward=report.vacant_backward,
        basis_failures=len(report.basis_failures),
        linearity_failures=report.linearity_failures,
        causality_failures=report.causality_failures,
        undecoded=list(report.undecoded),
        passed=report.passed,
    )
