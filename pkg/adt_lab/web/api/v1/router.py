from fastapi.routing import APIRouter

from adt_lab.web.api.v1 import capacity, monitoring, schemes

api_router = APIRouter()
api_router.include_router(monitoring.router)
api_router.include_router(capacity.router, prefix="/capacity", tags=["capacity"])
api_router.include_router(schemes.router, prefix="/schemes", tags=["schemes"])
