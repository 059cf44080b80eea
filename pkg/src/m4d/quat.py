"""Double-precision quaternion arithmetic on points of R^4.

A quaternion (a0, a1, a2, a3) is read as the position vector of a point in
the 4-space (x, y, z, w); a0 is the scalar part and (a1, a2, a3) the vector
part.  All operations are pure functions on immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Norms at or below this count as zero (division guards).  Module-global so
# callers can tighten or relax it in one place.
ZERO_TOLERANCE = 1e-12


class ZeroNormError(ValueError):
    """Division by a quaternion of (numerically) zero norm."""


class ZeroVectorPartError(ValueError):
    """Trigonometric form requested for a quaternion with no vector part."""


@dataclass(frozen=True)
class Quaternion:
    a0: float
    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        for c in (self.a0, self.a1, self.a2, self.a3):
            if not math.isfinite(c):
                raise ValueError(f"non-finite quaternion component: {c!r}")

    def components(self) -> tuple[float, float, float, float]:
        return (self.a0, self.a1, self.a2, self.a3)

    def vector_part(self) -> tuple[float, float, float]:
        return (self.a1, self.a2, self.a3)


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
ZERO = Quaternion(0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class TrigForm:
    """modulus * (cos(phi/2) + axis * sin(phi/2)) with a unit 3-vector axis.

    trig_form() always picks axis = vector part normalized, so sin(phi/2) >= 0
    and phi lies in (0, pi] for a0 >= 0.  Quaternions with negative scalar
    part need phi in (pi, 2*pi); see trig_form().
    """

    modulus: float
    phi: float
    axis: tuple[float, float, float]

    def __post_init__(self):
        if not (math.isfinite(self.modulus) and self.modulus >= 0.0):
            raise ValueError(f"modulus must be finite and >= 0, got {self.modulus!r}")
        if not math.isfinite(self.phi):
            raise ValueError("phi must be finite")
        n = math.sqrt(sum(c * c for c in self.axis))
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"axis must be unit length, |axis| = {n!r}")


def add(a: Quaternion, b: Quaternion) -> Quaternion:
    return Quaternion(a.a0 + b.a0, a.a1 + b.a1, a.a2 + b.a2, a.a3 + b.a3)


def sub(a: Quaternion, b: Quaternion) -> Quaternion:
    return Quaternion(a.a0 - b.a0, a.a1 - b.a1, a.a2 - b.a2, a.a3 - b.a3)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Quaternionic product ab (a is the left factor); componentwise formula."""
    return Quaternion(
        a.a0 * b.a0 - a.a1 * b.a1 - a.a2 * b.a2 - a.a3 * b.a3,
        a.a0 * b.a1 + a.a1 * b.a0 + a.a2 * b.a3 - a.a3 * b.a2,
        a.a0 * b.a2 - a.a1 * b.a3 + a.a2 * b.a0 + a.a3 * b.a1,
        a.a0 * b.a3 + a.a1 * b.a2 - a.a2 * b.a1 + a.a3 * b.a0,
    )


def mul_scalar_vector(a: Quaternion, b: Quaternion) -> Quaternion:
    """Same product via the scalar-vector form (a0 b0 - a.b, a0 b + b0 a + a x b).

    Kept as an independent arithmetic path; cross-checked against mul() in the
    test suite.
    """
    dot = a.a1 * b.a1 + a.a2 * b.a2 + a.a3 * b.a3
    cx = a.a2 * b.a3 - a.a3 * b.a2
    cy = a.a3 * b.a1 - a.a1 * b.a3
    cz = a.a1 * b.a2 - a.a2 * b.a1
    return Quaternion(
        a.a0 * b.a0 - dot,
        a.a0 * b.a1 + b.a0 * a.a1 + cx,
        a.a0 * b.a2 + b.a0 * a.a2 + cy,
        a.a0 * b.a3 + b.a0 * a.a3 + cz,
    )


def conjugate(a: Quaternion) -> Quaternion:
    return Quaternion(a.a0, -a.a1, -a.a2, -a.a3)


def norm(a: Quaternion) -> float:
    return math.sqrt(a.a0 * a.a0 + a.a1 * a.a1 + a.a2 * a.a2 + a.a3 * a.a3)


def scale(a: Quaternion, s: float) -> Quaternion:
    return Quaternion(a.a0 * s, a.a1 * s, a.a2 * s, a.a3 * s)


def inverse(a: Quaternion, tol: float | None = None) -> Quaternion:
    """Multiplicative inverse conjugate(a) / |a|^2; raises ZeroNormError at |a| <= tol."""
    tol = ZERO_TOLERANCE if tol is None else tol
    if norm(a) <= tol:
        raise ZeroNormError(f"cannot invert quaternion with norm {norm(a)!r}")
    n2 = a.a0 * a.a0 + a.a1 * a.a1 + a.a2 * a.a2 + a.a3 * a.a3
    return Quaternion(a.a0 / n2, -a.a1 / n2, -a.a2 / n2, -a.a3 / n2)


def divide_left(a: Quaternion, b: Quaternion, tol: float | None = None) -> Quaternion:
    """Left division a^-1 b of b by a."""
    return mul(inverse(a, tol), b)


def divide_right(b: Quaternion, a: Quaternion, tol: float | None = None) -> Quaternion:
    """Right division b a^-1 of b by a."""
    return mul(b, inverse(a, tol))


def trig_form(a: Quaternion, tol: float | None = None) -> TrigForm:
    """Decompose a as |a| * (cos(phi/2) + n sin(phi/2)), n the unit vector part.

    phi = 2 * atan2(|vector part|, scalar part), which lands in (0, pi] when
    the scalar part is >= 0.  A negative scalar part forces phi in (pi, 2*pi):
    no angle in [-pi, pi] can reproduce a negative cos(phi/2), so the range is
    extended rather than breaking the from_trig round trip.
    """
    tol = ZERO_TOLERANCE if tol is None else tol
    vx, vy, vz = a.vector_part()
    vn = math.sqrt(vx * vx + vy * vy + vz * vz)
    if vn <= tol:
        raise ZeroVectorPartError("quaternion has no vector part; axis undefined")
    phi = 2.0 * math.atan2(vn, a.a0)
    return TrigForm(norm(a), phi, (vx / vn, vy / vn, vz / vn))


def from_trig(t: TrigForm) -> Quaternion:
    c = math.cos(t.phi / 2.0)
    s = math.sin(t.phi / 2.0)
    return Quaternion(
        t.modulus * c,
        t.modulus * s * t.axis[0],
        t.modulus * s * t.axis[1],
        t.modulus * s * t.axis[2],
    )
