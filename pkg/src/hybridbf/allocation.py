"""
User-to-tile allocation: disjoint tile blocks, full sharing, and angle clusters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .beamformers import RfWeightPlan, SpatialInterval, quadratic_broadbeam_weights, squint_interval
from .core import ArrayLayout, UserSpec


@dataclass
class AllocationPlan:
    """Tile groups (0-based tile indices) and the users each group serves."""

    mode: str
    tile_groups: List[List[int]]
    group_users: List[List[int]]
    plan: RfWeightPlan
    cluster_size: Optional[int] = None
    intervals: Optional[List[SpatialInterval]] = None

    def __post_init__(self):
        flat = sorted(t for g in self.tile_groups for t in g)
        if flat != list(range(self.plan.n_tiles)):
            raise ValueError(f"tile groups {self.tile_groups} do not partition the tiles")

    def tile_of_user(self) -> dict:
        """First tile of each user's group; used as the RF-only assignment."""
        out = {}
        for tiles, users in zip(self.tile_groups, self.group_users):
            for j, k in enumerate(users):
                out[k] = tiles[j % len(tiles)]
        return out


def _broadbeam(layout: ArrayLayout, user: UserSpec, beta: float) -> np.ndarray:
    return quadratic_broadbeam_weights(layout.n_per_tile, squint_interval(user.theta, beta))


def disjoint_allocation(layout: ArrayLayout, users: Sequence[UserSpec], beta: float) -> AllocationPlan:
    """User ``k`` gets the ``k``-th contiguous block of ``N_d / K`` tiles, all on its own broad beam."""
    n_users, n_d = len(users), layout.n_tiles
    if n_users < 1 or n_d % n_users:
        raise ValueError(f"{n_users} users cannot split {n_d} tiles evenly")
    block = n_d // n_users
    groups = [list(range(k * block, (k + 1) * block)) for k in range(n_users)]
    weights = np.repeat([_broadbeam(layout, u, beta) for u in users], block, axis=0)
    return AllocationPlan("disjoint", groups, [[k] for k in range(n_users)],
                          RfWeightPlan(weights, phase_only=True))


def full_sharing_plan(layout: ArrayLayout, users: Sequence[UserSpec], beta: float) -> AllocationPlan:
    """Every tile carries the unweighted sum of all users' broad beams.

    The superposition is amplitude-bearing; a tile whose sum cancels to zero
    raises instead of being silently renormalized.
    """
    if len(users) < 2:
        raise ValueError("full sharing needs at least two users")
    summed = np.sum([_broadbeam(layout, u, beta) for u in users], axis=0)
    if np.linalg.norm(summed) < 1e-12:
        raise ValueError("superposed beams cancel; shared tile weights are zero")
    weights = np.tile(summed, (layout.n_tiles, 1))
    return AllocationPlan("full_sharing", [list(range(layout.n_tiles))],
                          [list(range(len(users)))], RfWeightPlan(weights, phase_only=False))


def covering_interval(intervals: Sequence[SpatialInterval]) -> SpatialInterval:
    """Smallest single interval containing all of ``intervals``."""
    return SpatialInterval.from_bounds(min(i.lower for i in intervals),
                                       max(i.upper for i in intervals))


def cluster_allocation(layout: ArrayLayout, users: Sequence[UserSpec], beta: float,
                       cluster_size: int) -> AllocationPlan:
    """Consecutive-by-angle clusters, each on ``cluster_size`` tiles sharing one hull broad beam.

    ``group_users`` holds indices into the caller's ``users`` list, so rates
    stay attributed to the original user order.
    """
    n_users, n_d = len(users), layout.n_tiles
    if n_users != n_d:
        raise ValueError(f"clustering needs one user per tile, got {n_users} users for {n_d} tiles")
    if cluster_size < 1 or n_users % cluster_size:
        raise ValueError(f"cluster size {cluster_size} does not divide {n_users} users")
    order = sorted(range(n_users), key=lambda k: users[k].theta)
    groups, members, hulls, weights = [], [], [], []
    for start in range(0, n_users, cluster_size):
        idx = order[start:start + cluster_size]
        hull = covering_interval([squint_interval(users[k].theta, beta) for k in idx])
        w = quadratic_broadbeam_weights(layout.n_per_tile, hull)
        groups.append(list(range(start, start + cluster_size)))
        members.append(idx)
        hulls.append(hull)
        weights.extend([w] * cluster_size)
    return AllocationPlan("clustered", groups, members, RfWeightPlan(np.array(weights), phase_only=True),
                          cluster_size=cluster_size, intervals=hulls)
