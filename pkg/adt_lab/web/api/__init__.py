"""adt_lab API package."""
