"""Exact-arithmetic toolkit for convex-hull peeling sequences.

Counts and enumerates hull-peeling removal orders of rational point sets,
computes open-halfspace depth and minimal defending configurations, builds
certified recursive constructions with provably few peeling sequences, and
evaluates the associated growth bounds with rigorous rational enclosures.
"""

from .bounds import bound_report, count_upper_bound, defense_number, growth_base, optimal_m
from .construction import build, certify_construction
from .defense import base_set, gale_set, open_halfspace_depth
from .errors import (
    CertificationError,
    DegenerateInputError,
    InputError,
    PeelkitError,
    ResourceBudgetError,
)
from .peeling import defends_by_peeling, peel_count, peel_enumerate, simplified_census
from .pointset import Point, PointSet, origin, to_fraction
from .sampling import random_pointset
from .serialize import load_pointset, save_pointset

__version__ = "0.1.0"

__all__ = [
    "CertificationError",
    "DegenerateInputError",
    "InputError",
    "PeelkitError",
    "Point",
    "PointSet",
    "ResourceBudgetError",
    "base_set",
    "bound_report",
    "build",
    "certify_construction",
    "count_upper_bound",
    "defends_by_peeling",
    "defense_number",
    "gale_set",
    "growth_base",
    "load_pointset",
    "open_halfspace_depth",
    "optimal_m",
    "origin",
    "peel_count",
    "peel_enumerate",
    "random_pointset",
    "save_pointset",
    "simplified_census",
    "to_fraction",
    "__version__",
]
