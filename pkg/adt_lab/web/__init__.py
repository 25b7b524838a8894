"""HTTP surface of adt_lab."""
