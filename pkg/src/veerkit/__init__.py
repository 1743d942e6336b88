"""Orderings of arcs, veering and FDTC bounds on planar surfaces with marked points."""
from .model import SurfaceSpec, build_surface, load_surface, seed_arcs
from .arcs import Arc, compare_right, crossings, intersection_number

__version__ = '0.1.0'
