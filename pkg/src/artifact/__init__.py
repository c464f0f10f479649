"""Exact computer algebra for Koszulness, linearity defect and stretched rings."""
