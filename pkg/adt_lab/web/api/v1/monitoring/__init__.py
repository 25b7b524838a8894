"""API for checking project status."""
from adt_lab.web.api.v1.monitoring.views import router

__all__ = ["router"]
