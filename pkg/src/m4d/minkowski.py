"""Minkowski sum, difference, product, and divisions of parametric sets.

Operands must carry disjoint parameter names (shared parameters would pose a
factorization problem, which is out of scope; callers rename instead) and the
combined dimension must stay at most three.  Results are built symbolically:
coordinate expressions are the expanded componentwise combinations of the
operand coordinates, with no algebraic simplification, so a derived set stays
serializable and evaluates along the same arithmetic path as the pointwise
quaternion operations.
"""

from __future__ import annotations

from m4d.expr import Add, Div, Expr, Mul, Neg, Sub
from m4d.paramset import NameCollisionError, ParamSet


class SharedParameterError(ValueError):
    """Operands share parameter names; that is a factorization problem."""


class DimensionOverflowError(ValueError):
    pass


def _merged_scope(a: ParamSet, b: ParamSet) -> tuple[tuple, dict]:
    shared = set(a.param_names()) & set(b.param_names())
    if shared:
        raise SharedParameterError(f"operands share parameters {sorted(shared)!r}")
    if len(a.params) + len(b.params) > 3:
        raise DimensionOverflowError(
            f"result dimension {len(a.params) + len(b.params)} exceeds 3"
        )
    constants = dict(a.constants)
    for name, value in b.constants.items():
        if name in constants and constants[name] != value:
            raise NameCollisionError(f"constant {name!r} bound to different values")
        constants[name] = value
    cross = (set(a.param_names()) & set(b.constants)) | (set(b.param_names()) & set(a.constants))
    if cross:
        raise NameCollisionError(f"parameter/constant name collision: {sorted(cross)!r}")
    return a.params + b.params, constants


def msum(a: ParamSet, b: ParamSet) -> ParamSet:
    params, constants = _merged_scope(a, b)
    coords = tuple(Add(x, y) for x, y in zip(a.coords, b.coords))
    return ParamSet(params, coords, constants, a.guards + b.guards)


def mdiff(a: ParamSet, b: ParamSet) -> ParamSet:
    params, constants = _merged_scope(a, b)
    coords = tuple(Sub(x, y) for x, y in zip(a.coords, b.coords))
    return ParamSet(params, coords, constants, a.guards + b.guards)


def _product_coords(a: tuple[Expr, ...], b: tuple[Expr, ...]) -> tuple[Expr, Expr, Expr, Expr]:
    """Expanded bilinear components of the quaternionic product, left factor a.

    Term grouping mirrors the componentwise formula in quat.mul exactly
    (left-associated sums), so sampling a product set reproduces the pointwise
    quaternion products bit for bit.
    """
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        Sub(Sub(Sub(Mul(a0, b0), Mul(a1, b1)), Mul(a2, b2)), Mul(a3, b3)),
        Sub(Add(Add(Mul(a0, b1), Mul(a1, b0)), Mul(a2, b3)), Mul(a3, b2)),
        Add(Add(Sub(Mul(a0, b2), Mul(a1, b3)), Mul(a2, b0)), Mul(a3, b1)),
        Add(Sub(Add(Mul(a0, b3), Mul(a1, b2)), Mul(a2, b1)), Mul(a3, b0)),
    )


def mprod(a: ParamSet, b: ParamSet) -> ParamSet:
    """Minkowski quaternionic product; a is the left factor."""
    params, constants = _merged_scope(a, b)
    coords = _product_coords(a.coords, b.coords)
    return ParamSet(params, coords, constants, a.guards + b.guards)


def _inverse_coords(a: tuple[Expr, ...]) -> tuple[tuple[Expr, Expr, Expr, Expr], Expr]:
    """Coordinates of a^-1 = conjugate(a) / |a|^2 plus the |a|^2 guard."""
    a0, a1, a2, a3 = a
    n2 = Add(Add(Add(Mul(a0, a0), Mul(a1, a1)), Mul(a2, a2)), Mul(a3, a3))
    return (Div(a0, n2), Div(Neg(a1), n2), Div(Neg(a2), n2), Div(Neg(a3), n2)), n2


def mdiv_left(a: ParamSet, b: ParamSet) -> ParamSet:
    """Left division a^-1 (x) b; a must be nowhere zero on its sampling box.

    The zero-norm condition is checked at sample time: evaluating the result
    raises ZeroNormAtSampleError at any assignment where |a| vanishes.
    """
    params, constants = _merged_scope(a, b)
    inv, n2 = _inverse_coords(a.coords)
    coords = _product_coords(inv, b.coords)
    return ParamSet(params, coords, constants, a.guards + b.guards + (n2,))


def mdiv_right(b: ParamSet, a: ParamSet) -> ParamSet:
    """Right division b (x) a^-1; a must be nowhere zero on its sampling box."""
    params, constants = _merged_scope(b, a)
    inv, n2 = _inverse_coords(a.coords)
    coords = _product_coords(b.coords, inv)
    return ParamSet(params, coords, constants, a.guards + b.guards + (n2,))
