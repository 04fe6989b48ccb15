"""Exact Yangian and affine Yangian actions on fixed-point bases of Laumon spaces."""

__version__ = "0.1.0"
