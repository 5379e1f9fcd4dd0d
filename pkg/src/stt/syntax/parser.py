"""Lexer and recursive-descent parser for types, expressions and programs.

Type precedence, loosest first: ``->`` (right associative) and ``rec``,
then ``|``, ``\\``, ``&``, and finally prefix ``not``.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from ..errors import ParseError, UnboundVar
from . import expr as E
from . import typeexpr as T

KEYWORDS = {"Any", "Empty", "Int", "not", "rec", "type", "let", "in", "fun", "multi"}

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|//[^\n]*)
  | (?P<tag>`[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>->)
  | (?P<int>-?[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>;;|\.\.|\?:|=>|[()\[\]{},:;|&\\=+<>*?])
""", re.VERBOSE)


class Token(NamedTuple):
    kind: str
    value: str
    line: int
    col: int


def tokenize(src: str) -> list:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError((line, pos - line_start + 1), ["a token"], src[pos])
        kind, text = m.lastgroup, m.group()
        col = pos - line_start + 1
        if kind == "ws":
            nl = text.count("\n")
            if nl:
                line += nl
                line_start = pos + text.rfind("\n") + 1
        elif kind == "tag":
            out.append(Token("tag", text[1:], line, col))
        elif kind == "int":
            out.append(Token("int", text, line, col))
        elif kind == "ident":
            out.append(Token("kw" if text in KEYWORDS else "ident", text, line, col))
        else:
            out.append(Token("punct", text, line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0
        self.types_seen = []

    # -- token helpers ----------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, value, kind=None) -> bool:
        t = self.tok
        return t.value == value and t.kind in ((kind,) if kind else ("punct", "kw"))

    def accept(self, value) -> bool:
        if self.at(value):
            self.i += 1
            return True
        return False

    def fail(self, *expected):
        t = self.tok
        raise ParseError((t.line, t.col), expected, t.value if t.kind != "eof" else None)

    def expect(self, value) -> Token:
        if not self.at(value):
            self.fail(repr(value))
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> str:
        t = self.tok
        if t.kind != "ident":
            self.fail("identifier")
        self.i += 1
        return t.value

    def integer(self) -> int:
        t = self.tok
        if t.kind != "int":
            self.fail("integer")
        self.i += 1
        return int(t.value)

    def pos(self):
        return (self.tok.line, self.tok.col)

    def end(self):
        if self.tok.kind != "eof":
            self.fail("end of input")

    # -- types ------------------------------------------------------------
    def type(self) -> T.TypeExpr:
        start = self.pos()
        t = self._arrow()
        self.types_seen.append((t, start))
        return t

    def _arrow(self):
        left = self._union()
        if self.accept("->"):
            return T.Arrow(left, self._arrow())
        return left

    def _union(self):
        t = self._diff()
        while self.accept("|"):
            t = T.Union(t, self._diff())
        return t

    def _diff(self):
        t = self._inter()
        while self.accept("\\"):
            t = T.Diff(t, self._inter())
        return t

    def _inter(self):
        t = self._unary()
        while self.accept("&"):
            t = T.Inter(t, self._unary())
        return t

    def _unary(self):
        if self.accept("not"):
            return T.Neg(self._unary())
        return self._atom()

    def _bound(self):
        if self.accept("*"):
            return None
        return self.integer()

    def _atom(self):
        t = self.tok
        if t.kind == "tag":
            self.i += 1
            return T.Tag(t.value)
        if t.kind == "ident":
            self.i += 1
            return T.Var(t.value)
        if self.accept("Any"):
            return T.Any()
        if self.accept("Empty"):
            return T.Empty()
        if self.accept("Int"):
            return T.INT
        if self.accept("rec"):
            name = self.ident()
            self.expect("=")
            return T.Rec(name, self._arrow())
        if self.accept("["):
            p = self.pos()
            lo = self._bound()
            self.expect("..")
            hi = self._bound()
            self.expect("]")
            if lo is not None and hi is not None and lo > hi:
                raise ParseError(p, ["an interval with lower bound <= upper bound"],
                                 f"[{lo}..{hi}]")
            return T.Interval(lo, hi)
        if self.accept("("):
            items = [self._arrow()]
            while self.accept(","):
                items.append(self._arrow())
            self.expect(")")
            out = items[-1]
            for x in reversed(items[:-1]):
                out = T.Prod(x, out)
            return out
        if self.accept("{"):
            return self._record_type()
        self.fail("a type")

    def _record_type(self):
        fields, seen, is_open = [], set(), False
        while not self.at("}"):
            if self.accept(".."):
                is_open = True
                break
            p = self.pos()
            label = self.ident()
            if label in seen:
                raise ParseError(p, ["a fresh field label"], label)
            seen.add(label)
            if self.accept("?:"):
                optional = True
            elif self.accept("?"):
                self.expect(":")
                optional = True
            else:
                self.expect(":")
                optional = False
            fields.append(T.Field(label, self._arrow(), optional))
            if not self.accept(","):
                break
        self.expect("}")
        return T.Record(tuple(fields), is_open)

    # -- expressions ------------------------------------------------------
    def expr(self) -> E.Expr:
        p = self.pos()
        if self.accept("let"):
            name = self.ident()
            ty = self.type() if self.accept(":") else None
            self.expect("=")
            bound = self.expr()
            self.expect("in")
            return E.Let(name, ty, bound, self.expr(), pos=p)
        return self._concat()

    def _concat(self):
        e = self._postfix()
        while self.at("+"):
            p = self.pos()
            self.i += 1
            e = E.Concat(e, self._postfix(), pos=p)
        return e

    def _postfix(self):
        e = self._primary()
        while True:
            p = self.pos()
            # `(` and `[` on a new line start the next item, not an application.
            glued = self.toks[self.i - 1].line == self.tok.line
            if glued and self.accept("["):
                idx = self.integer()
                if idx not in (0, 1):
                    raise ParseError(p, ["projection index 0 or 1"], str(idx))
                self.expect("]")
                e = E.Proj(e, idx, pos=p)
            elif glued and self.accept("("):
                groups = [self._arg_group()]
                while self.accept(";;"):
                    groups.append(self._arg_group())
                self.expect(")")
                for g in groups:
                    e = E.App(e, tuple(g), pos=p)
            elif self.accept("<"):
                label = self.ident()
                self.expect(">")
                e = E.Select(e, label, pos=p)
            elif self.accept("\\"):
                e = E.Delete(e, self.ident(), pos=p)
            else:
                return e

    def _arg_group(self):
        args = [self.expr()]
        while self.accept(","):
            args.append(self.expr())
        return args

    def _primary(self):
        t = self.tok
        p = self.pos()
        if t.kind == "int":
            self.i += 1
            return E.IntLit(int(t.value), pos=p)
        if t.kind == "tag":
            self.i += 1
            return E.TagLit(t.value, pos=p)
        if t.kind == "ident":
            self.i += 1
            return E.Var(t.value, pos=p)
        if self.accept("("):
            items = [self.expr()]
            while self.accept(","):
                items.append(self.expr())
            self.expect(")")
            out = items[-1]
            for x in reversed(items[:-1]):
                out = E.Pair(x, out, pos=p)
            return out
        if self.accept("{"):
            if self.accept("}"):
                return E.EmptyRec(pos=p)
            out = None
            while True:
                fp = self.pos()
                label = self.ident()
                self.expect("=>")
                lit = E.RecLit(label, self.expr(), pos=fp)
                out = lit if out is None else E.Concat(out, lit, pos=fp)
                if not self.accept(","):
                    break
            self.expect("}")
            return out
        if self.accept("fun"):
            return self._fun(p)
        if self.accept("multi"):
            return self._multi(p)
        self.fail("an expression")

    def _fun(self, p):
        self.expect("(")
        groups = [self._param_group()]
        while self.accept(";;"):
            groups.append(self._param_group())
        self.expect(")")
        returns = self.type() if self.accept(":") else None
        self.expect("{")
        body = self.expr()
        self.expect("}")
        return E.Fun(tuple(groups), returns, body, pos=p)

    def _param_group(self):
        params, seen = [], set()
        while True:
            p = self.pos()
            name = self.ident()
            if name in seen:
                raise ParseError(p, ["a distinct parameter name"], name)
            seen.add(name)
            self.expect(":")
            params.append(E.Param(name, self.type()))
            if not self.accept(","):
                return tuple(params)

    def _multi(self, p):
        self.expect("{")
        branches = []
        while True:
            bp = self.pos()
            branches.append(self._fun(bp))
            self.accept(";")
            if self.at("}"):
                break
        self.expect("}")
        shape = branches[0].arity_shape()
        for b in branches[1:]:
            if b.arity_shape() != shape:
                raise ParseError(b.pos, ["a branch with parameter groups shaped like "
                                         + str(shape)], str(b.arity_shape()))
        return E.Multi(tuple(branches), pos=p)

    # -- programs ---------------------------------------------------------
    def program(self):
        types, items = {}, []
        while self.tok.kind != "eof":
            if self.accept(";"):
                continue
            p = self.pos()
            if self.accept("type"):
                name = self.ident()
                if name in types:
                    raise ParseError(p, ["a fresh type name"], name)
                self.expect("=")
                ty = self.type()
                types[name] = ty
                items.append(E.TypeDecl(name, ty, pos=p))
            elif self.accept("let"):
                name = self.ident()
                ty = self.type() if self.accept(":") else None
                self.expect("=")
                bound = self.expr()
                if self.accept("in"):
                    items.append(E.ExprStmt(E.Let(name, ty, bound, self.expr(), pos=p), pos=p))
                else:
                    items.append(E.LetDecl(name, ty, bound, pos=p))
            elif self.at("multi") and self.toks[self.i + 1].kind == "ident":
                self.i += 1
                name = self.ident()
                ty = self.type() if self.accept(":") else None
                items.append(E.LetDecl(name, ty, self._multi(p), pos=p))
            else:
                items.append(E.ExprStmt(self.expr(), pos=p))
        return E.Program(types, items)


def _check_scoped(parser: Parser, scope):
    for t, p in parser.types_seen:
        T.unguarded_vars(t)
        for v in T.free_vars(t):
            if v not in scope:
                raise UnboundVar(v, p)


def parse_type(src: str, scope=()) -> T.TypeExpr:
    """Parse a type; free names must be in ``scope`` (declared type names)."""
    p = Parser(src)
    t = p.type()
    p.end()
    T.check_type(t, scope)
    return t


def parse_expr(src: str, scope=()) -> E.Expr:
    p = Parser(src)
    e = p.expr()
    p.end()
    _check_scoped(p, scope)
    return e


def parse_program(src: str, known_types=()) -> E.Program:
    """Parse a ``.stt`` file; all ``type`` declarations are mutually recursive."""
    p = Parser(src)
    prog = p.program()
    scope = set(known_types) | prog.types.keys()
    T.check_declarations({**{n: T.Any() for n in known_types}, **prog.types})
    _check_scoped(p, scope)
    return prog
