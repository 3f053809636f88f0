"""Exact wall computations for tilt stability of objects on P^3."""

from .chern import ChernChar, Ch2, chi, delta, euler_pairing, make, make2, twist
from .walls import Semicircle, VerticalLine, beta_pm, q_wall, wall_between
from .bounds import bound_D, bound_E, extremal_walls
from .destab import (
    FilterSet,
    LargerThan,
    LeftOfVertical,
    MustCrossLine,
    CenterAtMost,
    RegionSpec,
    enumerate_candidate_walls,
    rank_bound,
)

__version__ = "0.1.0"

__all__ = [
    "Ch2", "ChernChar", "chi", "delta", "euler_pairing", "make", "make2", "twist",
    "Semicircle", "VerticalLine", "beta_pm", "q_wall", "wall_between",
    "bound_D", "bound_E", "extremal_walls",
    "CenterAtMost", "FilterSet", "LargerThan", "LeftOfVertical", "MustCrossLine", "RegionSpec",
    "enumerate_candidate_walls", "rank_bound",
]
