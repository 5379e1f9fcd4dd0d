"""Render type trees back to concrete syntax (inverse of ``parse_type``)."""

from __future__ import annotations

from . import typeexpr as T

# Binding strength: a child printed in a context stronger than its own
# level gets parenthesised.
_ARROW, _UNION, _DIFF, _INTER, _UNARY, _ATOM = range(6)


def _bound(b):
    return "*" if b is None else str(b)


def _pr(t: T.TypeExpr, ctx: int) -> str:
    match t:
        case T.Any():
            return "Any"
        case T.Empty():
            return "Empty"
        case T.Tag(name):
            return "`" + name
        case T.Var(name):
            return name
        case T.Interval(None, None):
            return "Int"
        case T.Interval(lo, hi):
            return f"[{_bound(lo)}..{_bound(hi)}]"
        case T.Prod(l, r):
            return f"({_pr(l, _ARROW)}, {_pr(r, _ARROW)})"
        case T.Record(fields, is_open):
            parts = [f"{f.label} {'?:' if f.optional else ':'} {_pr(f.ty, _ARROW)}"
                     for f in fields]
            if is_open:
                parts.append("..")
            return "{" + ", ".join(parts) + "}"
        case T.Arrow(d, c):
            s, level = f"{_pr(d, _UNION)} -> {_pr(c, _ARROW)}", _ARROW
        case T.Rec(name, body):
            s, level = f"rec {name} = {_pr(body, _ARROW)}", _ARROW
        case T.Union(l, r):
            s, level = f"{_pr(l, _UNION)} | {_pr(r, _DIFF)}", _UNION
        case T.Inter(l, r):
            s, level = f"{_pr(l, _INTER)} & {_pr(r, _UNARY)}", _INTER
        case T.Neg(x):
            s, level = f"not {_pr(x, _UNARY)}", _UNARY
        case _:
            raise TypeError(f"not a type expression: {t!r}")
    return f"({s})" if ctx > level else s


def print_type(t: T.TypeExpr) -> str:
    return _pr(t, _ARROW)
