from importlib import metadata

from fastapi import FastAPI
from fastapi.responses import UJSONResponse

from adt_lab.web.api.v1.router import api_router
from adt_lab.web.lifetime import register_shutdown_event, register_startup_event


def get_app() -> FastAPI:
    """
    Get FastAPI application.

    :return: application.
    """
    app = FastAPI(
        title="adt_lab",
        version=metadata.version("adt_lab"),
        docs_url="/api/docs",
        redoc_url="/api/redoc",
        openapi_url="/api/openapi.json",
        default_response_class=UJSONResponse,
    )

    register_startup_event(app)
    register_shutdown_event(app)

    app.include_router(router=api_router, prefix="/api/v1")

    return app
