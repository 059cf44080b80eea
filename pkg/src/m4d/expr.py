"""Arithmetic/trigonometric expression AST over named parameters.

Coordinate functions of parametric point sets are stored as these trees so
that derived sets (Minkowski combinations) remain serializable and
re-evaluable.  Two evaluation paths exist: a plain tree walker (eval_expr)
and a compiler to Python lambdas (compile_exprs) used for bulk sampling.
Both call the same libm functions in the same order, so they produce
bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

BUILTIN_CONSTANTS = {"pi": math.pi, "tau": math.tau}
FUNCTIONS = ("sin", "cos", "tan", "sqrt", "abs")

_IDENT_CHARS_OK = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


def is_identifier(name: str) -> bool:
    return bool(name) and name[0].isalpha() and set(name) <= _IDENT_CHARS_OK


class EvalError(ValueError):
    """Base for expression evaluation failures."""


class UnboundParamError(EvalError):
    def __init__(self, name: str):
        super().__init__(f"unbound parameter {name!r}")
        self.name = name


class DomainError(EvalError):
    """sqrt of a negative number or division by exact zero."""


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Const(Expr):
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"non-finite constant: {self.value!r}")


@dataclass(frozen=True)
class ParamRef(Expr):
    name: str

    def __post_init__(self):
        if not is_identifier(self.name):
            raise ValueError(f"invalid parameter name: {self.name!r}")


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or isinstance(self.exponent, bool) or self.exponent < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {self.exponent!r}")


@dataclass(frozen=True)
class Call(Expr):
    fn: str
    arg: Expr

    def __post_init__(self):
        if self.fn not in FUNCTIONS:
            raise ValueError(f"unknown function {self.fn!r}")


def eval_expr(e: Expr, env: dict[str, float]) -> float:
    """Evaluate e in IEEE binary64.  pi and tau are always bound."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, ParamRef):
        if e.name in env:
            return env[e.name]
        if e.name in BUILTIN_CONSTANTS:
            return BUILTIN_CONSTANTS[e.name]
        raise UnboundParamError(e.name)
    if isinstance(e, Neg):
        return -eval_expr(e.arg, env)
    if isinstance(e, Add):
        return eval_expr(e.left, env) + eval_expr(e.right, env)
    if isinstance(e, Sub):
        return eval_expr(e.left, env) - eval_expr(e.right, env)
    if isinstance(e, Mul):
        return eval_expr(e.left, env) * eval_expr(e.right, env)
    if isinstance(e, Div):
        num = eval_expr(e.left, env)
        den = eval_expr(e.right, env)
        if den == 0.0:
            raise DomainError("division by zero")
        return num / den
    if isinstance(e, Pow):
        return eval_expr(e.base, env) ** e.exponent
    if isinstance(e, Call):
        v = eval_expr(e.arg, env)
        if e.fn == "sin":
            return math.sin(v)
        if e.fn == "cos":
            return math.cos(v)
        if e.fn == "tan":
            return math.tan(v)
        if e.fn == "sqrt":
            if v < 0.0:
                raise DomainError(f"sqrt of negative number {v!r}")
            return math.sqrt(v)
        return abs(v)
    raise TypeError(f"not an Expr node: {e!r}")


def free_params(e: Expr) -> set[str]:
    """Parameter names referenced by e, excluding the builtin constants."""
    out: set[str] = set()
    _collect(e, out)
    return out - set(BUILTIN_CONSTANTS)


def _collect(e: Expr, out: set[str]) -> None:
    if isinstance(e, ParamRef):
        out.add(e.name)
    elif isinstance(e, Neg):
        _collect(e.arg, out)
    elif isinstance(e, (Add, Sub, Mul, Div)):
        _collect(e.left, out)
        _collect(e.right, out)
    elif isinstance(e, Pow):
        _collect(e.base, out)
    elif isinstance(e, Call):
        _collect(e.arg, out)


# ---------------------------------------------------------------------------
# printing

_PREC_ADD = 1
_PREC_MUL = 2
_PREC_POW = 3
_PREC_NEG = 4
_PREC_ATOM = 5


def format_float(v: float) -> str:
    """Lossless decimal form (17 significant digits for non-terminating values)."""
    return "%.17g" % v


def print_expr(e: Expr) -> str:
    return _print(e, 0)


def _print(e: Expr, parent_prec: int) -> str:
    if isinstance(e, Const):
        s = format_float(e.value)
        prec = _PREC_ATOM
    elif isinstance(e, ParamRef):
        s = e.name
        prec = _PREC_ATOM
    elif isinstance(e, Neg):
        s = "-" + _print(e.arg, _PREC_NEG + 1)
        prec = _PREC_NEG
    elif isinstance(e, Add):
        s = _print(e.left, _PREC_ADD) + " + " + _print(e.right, _PREC_ADD + 1)
        prec = _PREC_ADD
    elif isinstance(e, Sub):
        s = _print(e.left, _PREC_ADD) + " - " + _print(e.right, _PREC_ADD + 1)
        prec = _PREC_ADD
    elif isinstance(e, Mul):
        s = _print(e.left, _PREC_MUL) + "*" + _print(e.right, _PREC_MUL + 1)
        prec = _PREC_MUL
    elif isinstance(e, Div):
        s = _print(e.left, _PREC_MUL) + "/" + _print(e.right, _PREC_MUL + 1)
        prec = _PREC_MUL
    elif isinstance(e, Pow):
        s = _print(e.base, _PREC_POW + 1) + "^" + str(e.exponent)
        prec = _PREC_POW
    elif isinstance(e, Call):
        s = f"{e.fn}({_print(e.arg, 0)})"
        prec = _PREC_ATOM
    else:
        raise TypeError(f"not an Expr node: {e!r}")
    if prec < parent_prec:
        return "(" + s + ")"
    return s


# ---------------------------------------------------------------------------
# compilation to Python lambdas (bulk sampling path)

def _codegen(e: Expr, constants: dict[str, float]) -> str:
    if isinstance(e, Const):
        return repr(e.value)
    if isinstance(e, ParamRef):
        if e.name in constants:
            return repr(constants[e.name])
        if e.name in BUILTIN_CONSTANTS:
            return repr(BUILTIN_CONSTANTS[e.name])
        return "_p_" + e.name
    if isinstance(e, Neg):
        return "(-" + _codegen(e.arg, constants) + ")"
    if isinstance(e, Add):
        return "(" + _codegen(e.left, constants) + " + " + _codegen(e.right, constants) + ")"
    if isinstance(e, Sub):
        return "(" + _codegen(e.left, constants) + " - " + _codegen(e.right, constants) + ")"
    if isinstance(e, Mul):
        return "(" + _codegen(e.left, constants) + " * " + _codegen(e.right, constants) + ")"
    if isinstance(e, Div):
        return "(" + _codegen(e.left, constants) + " / " + _codegen(e.right, constants) + ")"
    if isinstance(e, Pow):
        return "(" + _codegen(e.base, constants) + " ** " + str(e.exponent) + ")"
    if isinstance(e, Call):
        fn = {"sin": "_sin", "cos": "_cos", "tan": "_tan", "sqrt": "_sqrt", "abs": "abs"}[e.fn]
        return fn + "(" + _codegen(e.arg, constants) + ")"
    raise TypeError(f"not an Expr node: {e!r}")


_COMPILE_NS = {
    "_sin": math.sin,
    "_cos": math.cos,
    "_tan": math.tan,
    "_sqrt": math.sqrt,
    "abs": abs,
    "__builtins__": {},
}


def compile_exprs(exprs: list[Expr], param_names: list[str], constants: dict[str, float] | None = None):
    """Compile exprs to one positional-arg callable returning a tuple.

    Constants are inlined as literals.  The generated code mirrors the tree
    walker exactly (same functions, same association order), so results agree
    bit for bit with eval_expr.  Domain failures surface as DomainError, like
    the walker.
    """
    constants = constants or {}
    args = ", ".join("_p_" + n for n in param_names)
    body = ", ".join(_codegen(e, constants) for e in exprs)
    src = f"lambda {args}: ({body},)" if len(exprs) == 1 else f"lambda {args}: ({body})"
    raw = eval(src, dict(_COMPILE_NS))

    def call(*values: float):
        try:
            return raw(*values)
        except ZeroDivisionError:
            raise DomainError("division by zero") from None
        except ValueError as exc:
            raise DomainError(str(exc)) from None

    return call


# ---------------------------------------------------------------------------
# JSON encoding ({"op": ..., "args": [...]} tagged objects)

def expr_to_json(e: Expr) -> dict:
    if isinstance(e, Const):
        return {"op": "const", "args": [e.value]}
    if isinstance(e, ParamRef):
        return {"op": "param", "args": [e.name]}
    if isinstance(e, Neg):
        return {"op": "neg", "args": [expr_to_json(e.arg)]}
    if isinstance(e, Add):
        return {"op": "add", "args": [expr_to_json(e.left), expr_to_json(e.right)]}
    if isinstance(e, Sub):
        return {"op": "sub", "args": [expr_to_json(e.left), expr_to_json(e.right)]}
    if isinstance(e, Mul):
        return {"op": "mul", "args": [expr_to_json(e.left), expr_to_json(e.right)]}
    if isinstance(e, Div):
        return {"op": "div", "args": [expr_to_json(e.left), expr_to_json(e.right)]}
    if isinstance(e, Pow):
        return {"op": "pow", "args": [expr_to_json(e.base), e.exponent]}
    if isinstance(e, Call):
        return {"op": e.fn, "args": [expr_to_json(e.arg)]}
    raise TypeError(f"not an Expr node: {e!r}")


def expr_from_json(obj) -> Expr:
    if not isinstance(obj, dict) or "op" not in obj or "args" not in obj:
        raise ValueError(f"malformed expression object: {obj!r}")
    op, args = obj["op"], obj["args"]
    if op == "const":
        return Const(float(args[0]))
    if op == "param":
        return ParamRef(str(args[0]))
    if op == "neg":
        return Neg(expr_from_json(args[0]))
    if op in ("add", "sub", "mul", "div"):
        cls = {"add": Add, "sub": Sub, "mul": Mul, "div": Div}[op]
        return cls(expr_from_json(args[0]), expr_from_json(args[1]))
    if op == "pow":
        return Pow(expr_from_json(args[0]), int(args[1]))
    if op in FUNCTIONS:
        return Call(op, expr_from_json(args[0]))
    raise ValueError(f"unknown expression op {op!r}")
