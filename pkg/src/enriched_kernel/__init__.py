"""Finite computational engine for skeleton-relative category theory:
weak enrichments, hom enrichments, a small-n tower of higher categories,
and constellations with Kan-extension composition, all decided by
exhaustive search."""

__version__ = "0.1.0"
