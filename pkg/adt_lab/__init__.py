"""adt_lab package."""
