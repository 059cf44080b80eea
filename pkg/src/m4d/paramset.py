"""Parametric point sets of dimension 0..3 in R^4.

A ParamSet is an ordered list of named parameter intervals plus four
coordinate expressions (x, y, z, w).  Intervals bound sampling, not
evaluation: eval_point accepts any finite assignment.  Sets are immutable
after construction and safe to evaluate from multiple threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from m4d.expr import (
    Add,
    Call,
    Const,
    Div,
    Expr,
    Mul,
    Neg,
    ParamRef,
    Pow,
    Sub,
    UnboundParamError,
    eval_expr,
    free_params,
    is_identifier,
)
from m4d.quat import ZERO_TOLERANCE, Quaternion


class NameCollisionError(ValueError):
    pass


class ZeroNormAtSampleError(ValueError):
    """A division's divisor set evaluated to (numerically) zero norm."""

    def __init__(self, assignment: dict[str, float]):
        super().__init__(f"divisor has zero norm at {assignment!r}")
        self.assignment = dict(assignment)


@dataclass(frozen=True)
class ParamInterval:
    name: str
    lo: float
    hi: float

    def __post_init__(self):
        if not is_identifier(self.name):
            raise ValueError(f"invalid parameter name {self.name!r}")
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval {self.lo!r}..{self.hi!r} for {self.name!r}")


@dataclass(frozen=True)
class ParamSet:
    params: tuple[ParamInterval, ...]
    coords: tuple[Expr, Expr, Expr, Expr]
    constants: dict[str, float] = field(default_factory=dict)
    # Expressions that must stay above the zero-norm tolerance (squared) at
    # every evaluated point; installed by the Minkowski divisions.
    guards: tuple[Expr, ...] = ()

    def __post_init__(self):
        if len(self.params) > 3:
            raise ValueError("point sets of dimension at most three are supported")
        if len(self.coords) != 4:
            raise ValueError("exactly four coordinate expressions required")
        names = [p.name for p in self.params]
        if len(set(names)) != len(names):
            raise NameCollisionError(f"duplicate parameter names in {names!r}")
        overlap = set(names) & set(self.constants)
        if overlap:
            raise NameCollisionError(f"names used as both parameter and constant: {sorted(overlap)!r}")
        bound = set(names) | set(self.constants)
        for e in self.coords + self.guards:
            missing = free_params(e) - bound
            if missing:
                raise UnboundParamError(sorted(missing)[0])

    def param_names(self) -> list[str]:
        return [p.name for p in self.params]


def dimension(s: ParamSet) -> int:
    return len(s.params)


def eval_point(s: ParamSet, assignment: dict[str, float]) -> Quaternion:
    """Evaluate the four coordinates at a full parameter assignment."""
    for p in s.params:
        if p.name not in assignment:
            raise UnboundParamError(p.name)
    env = dict(s.constants)
    env.update(assignment)
    for g in s.guards:
        if eval_expr(g, env) <= ZERO_TOLERANCE * ZERO_TOLERANCE:
            raise ZeroNormAtSampleError(assignment)
    return Quaternion(*(eval_expr(e, env) for e in s.coords))


def constant_set(q: Quaternion, constants: dict[str, float] | None = None) -> ParamSet:
    """The 0-dimensional set consisting of a single point."""
    return ParamSet((), tuple(Const(c) for c in q.components()), dict(constants or {}))


def _rename_expr(e: Expr, mapping: dict[str, str]) -> Expr:
    if isinstance(e, ParamRef):
        return ParamRef(mapping.get(e.name, e.name))
    if isinstance(e, Const):
        return e
    if isinstance(e, Neg):
        return Neg(_rename_expr(e.arg, mapping))
    if isinstance(e, (Add, Sub, Mul, Div)):
        return type(e)(_rename_expr(e.left, mapping), _rename_expr(e.right, mapping))
    if isinstance(e, Pow):
        return Pow(_rename_expr(e.base, mapping), e.exponent)
    if isinstance(e, Call):
        return Call(e.fn, _rename_expr(e.arg, mapping))
    raise TypeError(f"not an Expr node: {e!r}")


def rename_params(s: ParamSet, mapping: dict[str, str]) -> ParamSet:
    """Rename parameters; mapping must be injective and collision free."""
    names = s.param_names()
    unknown = set(mapping) - set(names)
    if unknown:
        raise NameCollisionError(f"not parameters of this set: {sorted(unknown)!r}")
    targets = [mapping.get(n, n) for n in names]
    if len(set(targets)) != len(targets):
        raise NameCollisionError(f"rename is not injective: {mapping!r}")
    collide = set(targets) & set(s.constants)
    if collide:
        raise NameCollisionError(f"rename collides with constants: {sorted(collide)!r}")
    params = tuple(ParamInterval(new, p.lo, p.hi) for new, p in zip(targets, s.params))
    coords = tuple(_rename_expr(e, mapping) for e in s.coords)
    guards = tuple(_rename_expr(e, mapping) for e in s.guards)
    return ParamSet(params, coords, dict(s.constants), guards)


def freeze_params(s: ParamSet, values: dict[str, float]) -> ParamSet:
    """Fix some parameters at given values, lowering the dimension.

    The frozen names move into the constant table, so the coordinate
    expressions are unchanged and remain re-evaluable.
    """
    names = s.param_names()
    unknown = set(values) - set(names)
    if unknown:
        raise NameCollisionError(f"not parameters of this set: {sorted(unknown)!r}")
    params = tuple(p for p in s.params if p.name not in values)
    constants = dict(s.constants)
    constants.update(values)
    return ParamSet(params, s.coords, constants, s.guards)
