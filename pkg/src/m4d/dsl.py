"""Scene-definition language: lexer, parser, and canonical printer.

Grammar (LL(1), `#` starts a line comment, files are UTF-8, extension .m4d):

    program    := { stmt }
    stmt       := constdef | rangedef | setdef | deriveddef | directive
    constdef   := "const" IDENT "=" cexpr
    rangedef   := "range" IDENT "in" cexpr ".." cexpr
    setdef     := "set" IDENT "(" params ")" "=" "(" expr "," expr "," expr "," expr ")"
    params     := param { "," param }                        (1..3 params)
    param      := IDENT "in" cexpr ".." cexpr
    deriveddef := "set" IDENT "=" IDENT mink IDENT
    mink       := "(+)" | "(-)" | "(*)" | "(\\)" | "(/)"
    directive  := "project" ("dop" | "perspective" "d" "=" cexpr)

Expressions use standard infix precedence (unary minus binds tightest, then
`^` with a non-negative integer literal exponent, then `*` `/`, then `+` `-`)
with calls sin, cos, tan, sqrt, abs and the builtin constants pi and tau.
cexpr is an expression without parameter references; declared constants and
pi/tau are allowed and folded to a number at parse time.  `a (\\) b` is the
left division a^-1 (x) b, `a (/) b` the right division a (x) b^-1.

Angles are radians throughout.  Constant expressions are evaluated when
parsed; coordinate expressions keep references to declared constants so that
a scene can re-evaluate them when a constant changes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from m4d.expr import (
    Add,
    BUILTIN_CONSTANTS,
    Call,
    Const,
    Div,
    EvalError,
    Expr,
    FUNCTIONS,
    Mul,
    Neg,
    ParamRef,
    Pow,
    Sub,
    eval_expr,
    format_float,
    print_expr,
)

KEYWORDS = ("set", "const", "range", "project", "in", "dop", "perspective")
MINK_OPS = ("(+)", "(-)", "(*)", "(\\)", "(/)")
RESERVED = set(KEYWORDS) | set(FUNCTIONS) | set(BUILTIN_CONSTANTS)


class ParseError(ValueError):
    """Syntax or name diagnostic with a 1-based source position."""

    def __init__(self, message: str, line: int, col: int, found: str = "", expected: tuple[str, ...] = ()):
        loc = f"{line}:{col}: {message}"
        if found:
            loc += f" (found {found!r}"
            if expected:
                loc += ", expected " + " | ".join(expected)
            loc += ")"
        elif expected:
            loc += " (expected " + " | ".join(expected) + ")"
        super().__init__(loc)
        self.line = line
        self.col = col
        self.found = found
        self.expected = tuple(expected)


class DuplicateNameError(ParseError):
    pass


class UnknownNameError(ParseError):
    pass


class ArityError(ParseError):
    pass


# ---------------------------------------------------------------------------
# statements

@dataclass(frozen=True)
class ConstDef:
    name: str
    value: float


@dataclass(frozen=True)
class RangeDef:
    name: str
    lo: float
    hi: float


@dataclass(frozen=True)
class SetDef:
    name: str
    params: tuple[tuple[str, float, float], ...]  # (name, lo, hi)
    coords: tuple[Expr, Expr, Expr, Expr]


@dataclass(frozen=True)
class DerivedDef:
    name: str
    op: str  # one of MINK_OPS
    lhs: str
    rhs: str


@dataclass(frozen=True)
class Directive:
    mode: str  # "dop" | "perspective"
    d: float | None = None


Statement = ConstDef | RangeDef | SetDef | DerivedDef | Directive


@dataclass(frozen=True)
class SceneProgram:
    statements: tuple[Statement, ...] = field(default_factory=tuple)

    def set_names(self) -> list[str]:
        return [s.name for s in self.statements if isinstance(s, (SetDef, DerivedDef))]


# ---------------------------------------------------------------------------
# lexer

@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "number", "kw", "mink", "eof", or the symbol itself
    text: str
    line: int
    col: int
    value: float = 0.0


_SYMBOLS = ("(", ")", ",", "=", "+", "-", "*", "/", "^", "..")


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == "(" and i + 2 < n and text[i + 1] in "+-*/\\" and text[i + 2] == ")":
            toks.append(Token("mink", text[i : i + 3], line, col))
            i += 3
            col += 3
            continue
        if c.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == "." and i + 1 < n and text[i + 1].isdigit():
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
            if i < n and text[i] in "eE":
                j = i + 1
                if j < n and text[j] in "+-":
                    j += 1
                if j < n and text[j].isdigit():
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
            lit = text[start:i]
            toks.append(Token("number", lit, line, col, value=float(lit)))
            col += i - start
            continue
        if c.isalpha():
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            word = text[start:i]
            toks.append(Token("kw" if word in KEYWORDS else "ident", word, line, col))
            col += i - start
            continue
        if c == "." and i + 1 < n and text[i + 1] == ".":
            toks.append(Token("..", "..", line, col))
            i += 2
            col += 2
            continue
        if c in "(),=+-*/^":
            toks.append(Token(c, c, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, col, found=c)
    toks.append(Token("eof", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0
        self.consts: dict[str, float] = {}
        self.sets: set[str] = set()

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, message: str, tok: Token, expected: tuple[str, ...] = ()):
        raise ParseError(message, tok.line, tok.col, found=tok.text or "<eof>", expected=expected)

    def expect(self, kind: str, what: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            self.fail(f"expected {what}", t, expected=(what,))
        return self.next()

    def expect_kw(self, word: str) -> Token:
        t = self.peek()
        if t.kind != "kw" or t.text != word:
            self.fail(f"expected {word!r}", t, expected=(word,))
        return self.next()

    # -- statements ----------------------------------------------------

    def program(self) -> SceneProgram:
        stmts: list[Statement] = []
        while self.peek().kind != "eof":
            stmts.append(self.statement())
        return SceneProgram(tuple(stmts))

    def statement(self) -> Statement:
        t = self.peek()
        if t.kind == "kw" and t.text == "const":
            return self.constdef()
        if t.kind == "kw" and t.text == "range":
            return self.rangedef()
        if t.kind == "kw" and t.text == "set":
            return self.setdef_or_derived()
        if t.kind == "kw" and t.text == "project":
            return self.directive()
        self.fail("expected a statement", t, expected=("set", "const", "range", "project"))

    def fresh_name(self, tok: Token) -> str:
        name = tok.text
        if name in RESERVED:
            raise DuplicateNameError(f"name {name!r} is reserved", tok.line, tok.col, found=name)
        if name in self.consts or name in self.sets:
            raise DuplicateNameError(f"name {name!r} already defined", tok.line, tok.col, found=name)
        return name

    def constdef(self) -> ConstDef:
        self.next()
        name = self.fresh_name(self.expect("ident", "constant name"))
        self.expect("=", "'='")
        value = self.cexpr()
        self.consts[name] = value
        return ConstDef(name, value)

    def rangedef(self) -> RangeDef:
        self.next()
        tok = self.expect("ident", "constant name")
        if tok.text not in self.consts:
            raise UnknownNameError(f"range for undefined constant {tok.text!r}", tok.line, tok.col, found=tok.text)
        self.expect_kw("in")
        lo = self.cexpr()
        self.expect("..", "'..'")
        hi = self.cexpr()
        if lo > hi:
            raise ParseError(f"empty range {lo!r}..{hi!r}", tok.line, tok.col)
        return RangeDef(tok.text, lo, hi)

    def setdef_or_derived(self) -> Statement:
        self.next()
        name_tok = self.expect("ident", "set name")
        t = self.peek()
        if t.kind == "(":
            return self.setdef(name_tok)
        if t.kind == "=":
            return self.deriveddef(name_tok)
        self.fail("expected '(' or '='", t, expected=("(", "="))

    def setdef(self, name_tok: Token) -> SetDef:
        name = self.fresh_name(name_tok)
        self.expect("(", "'('")
        params: list[tuple[str, float, float]] = []
        while True:
            ptok = self.expect("ident", "parameter name")
            pname = ptok.text
            if pname in RESERVED:
                raise DuplicateNameError(f"name {pname!r} is reserved", ptok.line, ptok.col, found=pname)
            if pname in (p[0] for p in params):
                raise DuplicateNameError(f"duplicate parameter {pname!r}", ptok.line, ptok.col, found=pname)
            if pname in self.consts:
                raise DuplicateNameError(
                    f"parameter {pname!r} collides with a constant", ptok.line, ptok.col, found=pname
                )
            self.expect_kw("in")
            lo = self.cexpr()
            self.expect("..", "'..'")
            hi = self.cexpr()
            if lo > hi:
                raise ParseError(f"empty interval {lo!r}..{hi!r}", ptok.line, ptok.col)
            params.append((pname, lo, hi))
            t = self.peek()
            if t.kind == ",":
                if len(params) == 3:
                    self.fail("at most 3 parameters per set", t, expected=(")",))
                self.next()
                continue
            break
        self.expect(")", "')'")
        self.expect("=", "'='")
        open_tok = self.expect("(", "'('")
        scope = {p[0] for p in params} | set(self.consts)
        coords = [self.expr(scope)]
        while self.peek().kind == ",":
            self.next()
            coords.append(self.expr(scope))
        self.expect(")", "')'")
        if len(coords) != 4:
            raise ArityError(
                f"coordinate tuple must have exactly 4 expressions, got {len(coords)}",
                open_tok.line,
                open_tok.col,
            )
        self.sets.add(name)
        return SetDef(name, tuple(params), tuple(coords))

    def deriveddef(self, name_tok: Token) -> DerivedDef:
        name = self.fresh_name(name_tok)
        self.expect("=", "'='")
        lhs = self.operand()
        op_tok = self.peek()
        if op_tok.kind != "mink":
            self.fail("expected a Minkowski operator", op_tok, expected=MINK_OPS)
        self.next()
        rhs = self.operand()
        self.sets.add(name)
        return DerivedDef(name, op_tok.text, lhs, rhs)

    def operand(self) -> str:
        tok = self.expect("ident", "set name")
        if tok.text not in self.sets:
            raise UnknownNameError(f"unknown set {tok.text!r}", tok.line, tok.col, found=tok.text)
        return tok.text

    def directive(self) -> Directive:
        self.next()
        t = self.peek()
        if t.kind == "kw" and t.text == "dop":
            self.next()
            return Directive("dop")
        if t.kind == "kw" and t.text == "perspective":
            self.next()
            dtok = self.peek()
            if dtok.kind != "ident" or dtok.text != "d":
                self.fail("expected 'd'", dtok, expected=("d",))
            self.next()
            self.expect("=", "'='")
            d = self.cexpr()
            if d <= 0.0:
                raise ParseError(f"focal distance must be positive, got {d!r}", dtok.line, dtok.col)
            return Directive("perspective", d)
        self.fail("expected 'dop' or 'perspective'", t, expected=("dop", "perspective"))

    # -- expressions ---------------------------------------------------

    def cexpr(self) -> float:
        tok = self.peek()
        e = self.expr(set(self.consts), constant_only=True)
        try:
            return eval_expr(e, dict(self.consts))
        except EvalError as exc:
            raise ParseError(f"invalid constant expression: {exc}", tok.line, tok.col) from None

    def expr(self, scope: set[str], constant_only: bool = False) -> Expr:
        return self.additive(scope, constant_only)

    def additive(self, scope, constant_only) -> Expr:
        e = self.multiplicative(scope, constant_only)
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            rhs = self.multiplicative(scope, constant_only)
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def multiplicative(self, scope, constant_only) -> Expr:
        e = self.power(scope, constant_only)
        while self.peek().kind in ("*", "/"):
            op = self.next().kind
            rhs = self.power(scope, constant_only)
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def power(self, scope, constant_only) -> Expr:
        e = self.unary(scope, constant_only)
        while self.peek().kind == "^":
            self.next()
            etok = self.peek()
            if etok.kind != "number" or not etok.text.isdigit():
                self.fail("exponent must be a non-negative integer literal", etok, expected=("integer",))
            self.next()
            e = Pow(e, int(etok.text))
        return e

    def unary(self, scope, constant_only) -> Expr:
        if self.peek().kind == "-":
            self.next()
            return Neg(self.unary(scope, constant_only))
        return self.atom(scope, constant_only)

    def atom(self, scope, constant_only) -> Expr:
        t = self.peek()
        if t.kind == "number":
            self.next()
            return Const(t.value)
        if t.kind == "(":
            self.next()
            e = self.expr(scope, constant_only)
            self.expect(")", "')'")
            return e
        if t.kind == "ident":
            self.next()
            name = t.text
            if name in FUNCTIONS:
                self.expect("(", "'('")
                arg = self.expr(scope, constant_only)
                self.expect(")", "')'")
                return Call(name, arg)
            if name in BUILTIN_CONSTANTS:
                return Const(BUILTIN_CONSTANTS[name])
            if name in scope:
                return ParamRef(name)
            kind = "constant" if constant_only else "name"
            raise UnknownNameError(f"unknown {kind} {name!r}", t.line, t.col, found=name)
        self.fail("expected an expression", t, expected=("number", "identifier", "(", "-"))


def parse_program(text: str) -> SceneProgram:
    """Parse DSL source into a validated SceneProgram.

    Raises ParseError (or a DuplicateNameError / UnknownNameError / ArityError
    subclass) carrying 1-based line and column on any invalid input.
    """
    return _Parser(text).program()


# ---------------------------------------------------------------------------
# printer

def print_program(p: SceneProgram) -> str:
    """Canonical source text; parse_program(print_program(p)) equals p."""
    lines = []
    for s in p.statements:
        if isinstance(s, ConstDef):
            lines.append(f"const {s.name} = {format_float(s.value)}")
        elif isinstance(s, RangeDef):
            lines.append(f"range {s.name} in {format_float(s.lo)}..{format_float(s.hi)}")
        elif isinstance(s, SetDef):
            params = ", ".join(f"{n} in {format_float(lo)}..{format_float(hi)}" for n, lo, hi in s.params)
            coords = ", ".join(print_expr(e) for e in s.coords)
            lines.append(f"set {s.name}({params}) = ({coords})")
        elif isinstance(s, DerivedDef):
            lines.append(f"set {s.name} = {s.lhs} {s.op} {s.rhs}")
        elif isinstance(s, Directive):
            if s.mode == "dop":
                lines.append("project dop")
            else:
                lines.append(f"project perspective d = {format_float(s.d)}")
        else:
            raise TypeError(f"unknown statement {s!r}")
    return "\n".join(lines) + "\n"
