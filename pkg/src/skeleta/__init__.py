"""Abstract 1-skeletons of (Z2)^k-actions: coloring axioms, faces, localization
obstructions, connectivity and the type (n, n) duality."""

__version__ = "0.1.0"
