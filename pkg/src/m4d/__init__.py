"""Minkowski quaternionic point set operations in R^4.

Models parametric point sets of dimension 0..3 in 4-space, combines them with
the Minkowski sum/difference and the quaternionic Minkowski product and
divisions, projects the results to the modeling 3-space (double orthogonal
projection, 4-D perspective, axis-plane projections), and numerically checks
the exact geometric identities the constructions satisfy.
"""

from m4d.quat import (
    Quaternion,
    TrigForm,
    ZeroNormError,
    ZeroVectorPartError,
    add,
    conjugate,
    divide_left,
    divide_right,
    from_trig,
    inverse,
    mul,
    norm,
    trig_form,
)

__all__ = [
    "Quaternion",
    "TrigForm",
    "ZeroNormError",
    "ZeroVectorPartError",
    "add",
    "conjugate",
    "divide_left",
    "divide_right",
    "from_trig",
    "inverse",
    "mul",
    "norm",
    "trig_form",
]

__version__ = "0.1.0"
