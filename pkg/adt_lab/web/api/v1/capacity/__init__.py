"""Capacity region, decomposition and planning queries."""
from adt_lab.web.api.v1.capacity.views import router

__all__ = ["router"]
