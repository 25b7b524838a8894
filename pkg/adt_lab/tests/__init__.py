"""Tests for adt_lab."""
