"""Scheme catalog and verification."""
from adt_lab.web.api.v1.schemes.views import router

__all__ = ["router"]
