"""Exclusivity-structure bounds: complexes, exact LPs, Bell-box scenarios."""
