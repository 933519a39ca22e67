"""World model: bounds, obstacles, c-space inflation and collision queries.

Obstacles are grown by the vehicle's bounding-sphere radius plus a safety
margin so every later check can treat the vehicle as a point. Boundary
points count as colliding (obstacles are closed sets).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np


@dataclass(frozen=True)
class Vec3:
    """Position in the world frame, meters, z up."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"Vec3.{name} must be finite, got {v!r}")

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def scaled(self, k: float) -> "Vec3":
        return Vec3(self.x * k, self.y * k, self.z * k)

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def distance_to(self, other: "Vec3") -> float:
        return (self - other).norm()

    def horizontal_distance_to(self, other: "Vec3") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_array(self) -> np.ndarray:
        return np.array((self.x, self.y, self.z), dtype=float)

    @classmethod
    def from_array(cls, arr) -> "Vec3":
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))


@dataclass(frozen=True)
class AxisBox:
    """Axis-aligned box; degenerate (zero-extent) boxes are allowed."""

    min: Vec3
    max: Vec3

    def __post_init__(self):
        if self.min.x > self.max.x or self.min.y > self.max.y or self.min.z > self.max.z:
            raise ValueError(f"AxisBox min must be <= max componentwise: {self}")

    def contains(self, p: Vec3) -> bool:
        return (self.min.x <= p.x <= self.max.x
                and self.min.y <= p.y <= self.max.y
                and self.min.z <= p.z <= self.max.z)

    def center(self) -> Vec3:
        return Vec3((self.min.x + self.max.x) / 2.0,
                    (self.min.y + self.max.y) / 2.0,
                    (self.min.z + self.max.z) / 2.0)

    def expanded(self, amount: float) -> "AxisBox":
        return AxisBox(
            Vec3(self.min.x - amount, self.min.y - amount, self.min.z - amount),
            Vec3(self.max.x + amount, self.max.y + amount, self.max.z + amount),
        )

    def scaled_about_center(self, factor: float) -> "AxisBox":
        c = self.center()
        hx = (self.max.x - self.min.x) / 2.0 * factor
        hy = (self.max.y - self.min.y) / 2.0 * factor
        hz = (self.max.z - self.min.z) / 2.0 * factor
        return AxisBox(Vec3(c.x - hx, c.y - hy, c.z - hz),
                       Vec3(c.x + hx, c.y + hy, c.z + hz))

    def clipped_to(self, other: "AxisBox") -> "AxisBox":
        """Intersection with `other`; the boxes must overlap."""
        return AxisBox(
            Vec3(max(self.min.x, other.min.x), max(self.min.y, other.min.y),
                 max(self.min.z, other.min.z)),
            Vec3(min(self.max.x, other.max.x), min(self.max.y, other.max.y),
                 min(self.max.z, other.max.z)),
        )


@dataclass(frozen=True)
class Cylinder:
    """Vertical pillar: base disk center, radius, height upward from the base."""

    base_center: Vec3
    radius: float
    height: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError(f"Cylinder.radius must be > 0, got {self.radius}")
        if self.height <= 0:
            raise ValueError(f"Cylinder.height must be > 0, got {self.height}")


Obstacle = Union[Cylinder, AxisBox]


@dataclass(frozen=True)
class QuadModel:
    """Vehicle bounding sphere plus clearances and kinematic limits."""

    body_radius: float = 0.3
    safety_margin: float = 0.2
    max_speed: float = 2.0
    max_yaw_rate: float = 1.5

    def __post_init__(self):
        if self.body_radius <= 0:
            raise ValueError(f"QuadModel.body_radius must be > 0, got {self.body_radius}")
        if self.safety_margin < 0:
            raise ValueError(f"QuadModel.safety_margin must be >= 0, got {self.safety_margin}")
        if self.max_speed <= 0:
            raise ValueError(f"QuadModel.max_speed must be > 0, got {self.max_speed}")
        if self.max_yaw_rate <= 0:
            raise ValueError(f"QuadModel.max_yaw_rate must be > 0, got {self.max_yaw_rate}")

    @property
    def growth(self) -> float:
        """Obstacle inflation amount: bounding radius plus margin."""
        return self.body_radius + self.safety_margin


@dataclass(frozen=True)
class World:
    """Static planning volume: bounds, obstacles, and the filming target."""

    bounds: AxisBox
    obstacles: tuple[Obstacle, ...]
    target: Vec3

    def __post_init__(self):
        b = self.bounds
        if not (b.min.x < b.max.x and b.min.y < b.max.y and b.min.z < b.max.z):
            raise ValueError("World.bounds must have positive extent in every axis")
        if not b.contains(self.target):
            raise ValueError(f"World.target {self.target} lies outside bounds")
        object.__setattr__(self, "obstacles", tuple(self.obstacles))


def inflate(obstacle: Obstacle, quad: QuadModel) -> Obstacle:
    """Grow an obstacle by the vehicle's bounding radius plus safety margin.

    Cylinders grow radially and upward; their base also drops by the growth
    amount but never below ground (z=0), so pillars stay grounded. Boxes grow
    outward in every axis.
    """
    g = quad.growth
    if isinstance(obstacle, Cylinder):
        base = obstacle.base_center
        top = base.z + obstacle.height + g
        # never raise the base: keeps inflation monotone for sunken cylinders
        new_base_z = min(base.z, max(0.0, base.z - g))
        return Cylinder(
            base_center=Vec3(base.x, base.y, new_base_z),
            radius=obstacle.radius + g,
            height=top - new_base_z,
        )
    return obstacle.expanded(g)


class CollisionModel:
    """Point/segment c-free queries against one world inflated for one vehicle.

    Obstacle parameters are packed into arrays so batches of points can be
    classified in a single vectorized pass.
    """

    def __init__(self, world: World, quad: QuadModel):
        self.world = world
        self.quad = quad
        self.inflated = tuple(inflate(o, quad) for o in world.obstacles)

        cyls = [o for o in self.inflated if isinstance(o, Cylinder)]
        boxes = [o for o in self.inflated if isinstance(o, AxisBox)]
        self._cyl = np.array(
            [[c.base_center.x, c.base_center.y, c.radius * c.radius,
              c.base_center.z, c.base_center.z + c.height] for c in cyls],
            dtype=float,
        ).reshape(len(cyls), 5)
        self._box_min = np.array([[b.min.x, b.min.y, b.min.z] for b in boxes],
                                 dtype=float).reshape(len(boxes), 3)
        self._box_max = np.array([[b.max.x, b.max.y, b.max.z] for b in boxes],
                                 dtype=float).reshape(len(boxes), 3)
        self._lo = world.bounds.min.as_array()
        self._hi = world.bounds.max.as_array()

    def free_points(self, pts: np.ndarray) -> np.ndarray:
        """Boolean mask over an (n, 3) array: True where the point is in c-free."""
        pts = np.atleast_2d(pts)
        free = np.all((pts >= self._lo) & (pts <= self._hi), axis=1)
        if self._cyl.size:
            dx = pts[:, 0, None] - self._cyl[:, 0]
            dy = pts[:, 1, None] - self._cyl[:, 1]
            z = pts[:, 2, None]
            hit = ((dx * dx + dy * dy <= self._cyl[:, 2])
                   & (z >= self._cyl[:, 3]) & (z <= self._cyl[:, 4]))
            free &= ~hit.any(axis=1)
        if self._box_min.size:
            inside = np.all(
                (pts[:, None, :] >= self._box_min) & (pts[:, None, :] <= self._box_max),
                axis=2,
            )
            free &= ~inside.any(axis=1)
        return free

    def point_free(self, p: Vec3) -> bool:
        return bool(self.free_points(p.as_array()[None, :])[0])

    def segment_points(self, a: Vec3, b: Vec3, step: float) -> np.ndarray:
        """Inclusive samples along a->b spaced at most `step` apart."""
        if step <= 0:
            raise ValueError(f"collision step must be > 0, got {step}")
        length = a.distance_to(b)
        n = max(1, math.ceil(length / step))
        ts = np.linspace(0.0, 1.0, n + 1)
        return a.as_array()[None, :] + ts[:, None] * (b.as_array() - a.as_array())

    def segment_free(self, a: Vec3, b: Vec3, step: float | None = None) -> bool:
        step = self.quad.body_radius if step is None else step
        return bool(self.free_points(self.segment_points(a, b, step)).all())


@lru_cache(maxsize=256)
def _cached_model(world: World, quad: QuadModel) -> CollisionModel:
    return CollisionModel(world, quad)


def collision_model(world: World, quad: QuadModel) -> CollisionModel:
    """Shared-cache accessor; World and QuadModel are immutable so reuse is safe."""
    return _cached_model(world, quad)


def is_free(world: World, quad: QuadModel, p: Vec3) -> bool:
    """True iff the vehicle can exist at `p`: inside bounds, outside every
    inflated obstacle. Points on an obstacle boundary count as colliding."""
    return collision_model(world, quad).point_free(p)


def segment_free(world: World, quad: QuadModel, a: Vec3, b: Vec3,
                 step: float | None = None) -> bool:
    """True iff `is_free` holds at a, b, and interpolated points spaced <= step.

    Defaults to step = body_radius: a sphere cannot slip between samples
    closer than its own radius.
    """
    return collision_model(world, quad).segment_free(a, b, step)
