"""Shared test utilities: random program generation and token-level mutation."""

from __future__ import annotations

import random

from m4d import dsl
from m4d.expr import Add, Call, Const, Div, Expr, Mul, Neg, ParamRef, Pow, Sub
from m4d.dsl import (
    ConstDef,
    DerivedDef,
    Directive,
    RangeDef,
    SceneProgram,
    SetDef,
    tokenize,
)

_NAME_POOL = [
    "a", "b", "c", "e", "f", "g", "h", "k", "m", "n", "p", "q", "r", "s",
    "t", "u", "v", "w", "x", "y", "z", "u1", "u2", "v1", "v2", "w3", "alpha",
    "beta", "gam", "delta_1", "r2d2", "theta",
]


def _rand_const(rng: random.Random) -> Const:
    if rng.random() < 0.4:
        return Const(float(rng.randint(0, 9)))
    return Const(rng.uniform(0.0, 12.0))


def _rand_expr(rng: random.Random, scope: list[str], depth: int) -> Expr:
    if depth <= 0 or rng.random() < 0.3:
        if scope and rng.random() < 0.6:
            return ParamRef(rng.choice(scope))
        return _rand_const(rng)
    kind = rng.randrange(7)
    if kind == 0:
        return Neg(_rand_expr(rng, scope, depth - 1))
    if kind == 1:
        return Add(_rand_expr(rng, scope, depth - 1), _rand_expr(rng, scope, depth - 1))
    if kind == 2:
        return Sub(_rand_expr(rng, scope, depth - 1), _rand_expr(rng, scope, depth - 1))
    if kind == 3:
        return Mul(_rand_expr(rng, scope, depth - 1), _rand_expr(rng, scope, depth - 1))
    if kind == 4:
        return Div(_rand_expr(rng, scope, depth - 1), _rand_expr(rng, scope, depth - 1))
    if kind == 5:
        return Pow(_rand_expr(rng, scope, depth - 1), rng.randint(0, 3))
    return Call(rng.choice(("sin", "cos", "tan", "abs")), _rand_expr(rng, scope, depth - 1))


def random_program(rng: random.Random) -> SceneProgram:
    """A structurally valid random SceneProgram for round-trip testing."""
    names = rng.sample(_NAME_POOL, rng.randint(6, 12))
    stmts = []
    consts = []
    sets = []
    for _ in range(rng.randint(0, 2)):
        name = names.pop()
        value = rng.uniform(0.1, 6.0)
        stmts.append(ConstDef(name, value))
        consts.append(name)
        if rng.random() < 0.5:
            lo = rng.uniform(0.0, value)
            stmts.append(RangeDef(name, lo, lo + rng.uniform(0.0, 10.0)))
    for _ in range(rng.randint(1, 4)):
        if not names:
            break
        name = names.pop()
        nparams = rng.randint(1, 3)
        params = []
        taken = set(consts)
        for _ in range(nparams):
            cands = [n for n in _NAME_POOL if n not in taken and n != name]
            pname = rng.choice(cands)
            taken.add(pname)
            lo = rng.uniform(-6.0, 3.0)
            params.append((pname, lo, lo + rng.uniform(0.0, 9.0)))
        scope = [p[0] for p in params] + consts
        coords = tuple(_rand_expr(rng, scope, rng.randint(1, 3)) for _ in range(4))
        stmts.append(SetDef(name, tuple(params), coords))
        sets.append(name)
    while len(sets) >= 2 and names and rng.random() < 0.5:
        name = names.pop()
        op = rng.choice(dsl.MINK_OPS)
        stmts.append(DerivedDef(name, op, rng.choice(sets), rng.choice(sets)))
        sets.append(name)
    if rng.random() < 0.5:
        if rng.random() < 0.5:
            stmts.append(Directive("dop"))
        else:
            stmts.append(Directive("perspective", rng.uniform(0.5, 8.0)))
    return SceneProgram(tuple(stmts))


def mangle_source(text: str, rng: random.Random) -> str:
    """Insert comments and random whitespace without changing the token stream."""
    out = []
    for ln in text.splitlines():
        if rng.random() < 0.3:
            out.append("# noise %d" % rng.randint(0, 999))
        out.append(ln.replace(" = ", "  =  " if rng.random() < 0.5 else " = "))
    return "\n".join(out) + "\n"


def delete_token_mutants(text: str):
    """Yield (token_index, mutated_source) for every single-token deletion."""
    toks = tokenize(text)
    lines = text.split("\n")
    for idx, tok in enumerate(toks):
        if tok.kind == "eof":
            continue
        ln = lines[tok.line - 1]
        mutated_line = ln[: tok.col - 1] + ln[tok.col - 1 + len(tok.text) :]
        mutated = "\n".join(lines[: tok.line - 1] + [mutated_line] + lines[tok.line :])
        yield idx, mutated
