"""Seeded random rational point sets for the falsification and oracle suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import InputError
from .geometry import is_general_position
from .pointset import PointSet, origin

# Multiplier mixing (seed, trial) into one deterministic stream per trial, so
# trials can run in any order (or in parallel) with identical results.
_TRIAL_STRIDE = 1_000_003


def random_pointset(
    dim: int,
    n: int,
    seed: int = 0,
    trial: int = 0,
    span: int = 64,
    origin_generic: bool = False,
    max_attempts: int = 1000,
) -> PointSet:
    """Sample n general-position points with coordinates k/span, |k| <= span.

    With origin_generic=True the set is additionally in general position
    together with the origin (so depth and defense queries at the origin are
    well-posed).  Rejection-samples until the position checks pass.
    """
    if dim < 1 or n < 1:
        raise InputError("dimension and size must be positive")
    rng = random.Random(seed * _TRIAL_STRIDE + trial)
    for _ in range(max_attempts):
        pts = [
            tuple(Fraction(rng.randint(-span, span), span) for _ in range(dim))
            for _ in range(n)
        ]
        ps = PointSet(dim, pts)
        probe = ps.appended(origin(dim)) if origin_generic else ps
        if is_general_position(probe):
            return ps
    raise InputError(
        f"could not sample a general-position set (dim={dim}, n={n}) "
        f"within {max_attempts} attempts; increase span"
    )
