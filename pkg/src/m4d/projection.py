"""4-D to 3-D projections and isoclinic rotations.

The 4-space carries coordinates (x, y, z, w) = (a0, a1, a2, a3).  The
modeling 3-space, where images live, is (x, y, w).

Double orthogonal projection (DOP) maps a point to its images in the 3-spaces
(x, y, z) and (x, y, w); the z-image is then rotated about the common (x, y)
plane into the modeling space so that the positive z-orientation is opposite
to the positive w-orientation, i.e. the z-image occupies (a0, a1, -a2).

4-D perspective projects from the center (0, 0, d, 0): a point maps to
(d a0/a2, d a1/a2, d a3/a2) for a2 != 0 and to (a0, a1, a3) for a2 == 0
exactly.  Points with 0 < |a2| <= epsilon are too close to the center
hyperplane for a stable image and raise NearCenterHyperplaneError; mesh
builders flag and clip them instead of extrapolating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from m4d.quat import Quaternion, mul, norm

_AXIS_INDEX = {"x": 0, "y": 1, "z": 2, "w": 3}
ORTHO_PLANES = ("xy", "xw", "yw", "xz", "yz", "zw")


class NearCenterHyperplaneError(ValueError):
    """Point too close to the a2 = 0 projection hyperplane."""

    def __init__(self, a2: float, epsilon: float):
        super().__init__(f"|a2| = {abs(a2)!r} within clip band epsilon = {epsilon!r}")
        self.a2 = a2
        self.epsilon = epsilon


class NonUnitRotorError(ValueError):
    pass


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    w: float

    def __post_init__(self):
        for c in (self.x, self.y, self.w):
            if not math.isfinite(c):
                raise ValueError(f"non-finite image coordinate {c!r}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.w)


@dataclass(frozen=True)
class PerspectiveConfig:
    d: float = 2.0
    epsilon: float = field(default=-1.0)  # sentinel: default 1e-9 * d

    def __post_init__(self):
        if not (math.isfinite(self.d) and self.d > 0.0):
            raise ValueError(f"focal distance must be positive, got {self.d!r}")
        if self.epsilon == -1.0:
            object.__setattr__(self, "epsilon", 1e-9 * self.d)
        if not (math.isfinite(self.epsilon) and self.epsilon > 0.0):
            raise ValueError(f"epsilon must be positive, got {self.epsilon!r}")


@dataclass(frozen=True)
class Rotor4:
    """A 4-D rotation p -> left * p * right with unit quaternion factors."""

    left: Quaternion
    right: Quaternion

    def __post_init__(self):
        for q, side in ((self.left, "left"), (self.right, "right")):
            n = norm(q)
            if abs(n - 1.0) > 1e-9:
                raise NonUnitRotorError(f"{side} factor has norm {n!r}")


IDENTITY_ROTOR = Rotor4(Quaternion(1, 0, 0, 0), Quaternion(1, 0, 0, 0))


def dop(p: Quaternion) -> tuple[Point3, Point3]:
    """(z-image, w-image) of p in the shared modeling space (x, y, w)."""
    return Point3(p.a0, p.a1, -p.a2), Point3(p.a0, p.a1, p.a3)


def dop_raw(p: Quaternion) -> tuple[tuple[float, float, float], tuple[float, float, float]]:
    """The projections before the overlap rotation: (a0,a1,a2) and (a0,a1,a3)."""
    return (p.a0, p.a1, p.a2), (p.a0, p.a1, p.a3)


def perspective(p: Quaternion, cfg: PerspectiveConfig) -> Point3:
    a2 = p.a2
    if a2 == 0.0:
        return Point3(p.a0, p.a1, p.a3)
    if abs(a2) <= cfg.epsilon:
        raise NearCenterHyperplaneError(a2, cfg.epsilon)
    return Point3(cfg.d * p.a0 / a2, cfg.d * p.a1 / a2, cfg.d * p.a3 / a2)


def ortho_plane(p: Quaternion, plane: str) -> tuple[float, float]:
    """Orthogonal projection onto one of the six axis 2-planes."""
    if plane not in ORTHO_PLANES:
        raise ValueError(f"unknown plane {plane!r}; expected one of {ORTHO_PLANES}")
    c = p.components()
    return (c[_AXIS_INDEX[plane[0]]], c[_AXIS_INDEX[plane[1]]])


def ortho_axes(p: Quaternion, axes: str) -> tuple[float, ...]:
    """Drop complementary coordinates; axes is a string over {x, y, z, w}."""
    c = p.components()
    return tuple(c[_AXIS_INDEX[a]] for a in axes)


def rotate4(p: Quaternion, r: Rotor4) -> Quaternion:
    """Isoclinic rotation left * p * right; an isometry for unit factors."""
    return mul(mul(r.left, p), r.right)
