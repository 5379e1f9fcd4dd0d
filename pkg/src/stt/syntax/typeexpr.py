"""Syntactic type trees and the well-formedness checks on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from ..errors import ContractivityError, UnboundVar


class TypeExpr:
    __slots__ = ()


@dataclass(frozen=True)
class Tag(TypeExpr):
    name: str


@dataclass(frozen=True)
class Interval(TypeExpr):
    """Integer interval; ``None`` stands for an infinite bound."""

    lo: Optional[int] = None
    hi: Optional[int] = None

    def __post_init__(self):
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}..{self.hi}]")


@dataclass(frozen=True)
class Any(TypeExpr):
    pass


@dataclass(frozen=True)
class Empty(TypeExpr):
    pass


@dataclass(frozen=True)
class Prod(TypeExpr):
    l: TypeExpr
    r: TypeExpr


@dataclass(frozen=True)
class Arrow(TypeExpr):
    dom: TypeExpr
    cod: TypeExpr


@dataclass(frozen=True)
class Union(TypeExpr):
    l: TypeExpr
    r: TypeExpr


@dataclass(frozen=True)
class Inter(TypeExpr):
    l: TypeExpr
    r: TypeExpr


@dataclass(frozen=True)
class Neg(TypeExpr):
    t: TypeExpr


@dataclass(frozen=True)
class Var(TypeExpr):
    name: str


@dataclass(frozen=True)
class Rec(TypeExpr):
    name: str
    body: TypeExpr


class Field(NamedTuple):
    label: str
    ty: TypeExpr
    optional: bool = False


@dataclass(frozen=True)
class Record(TypeExpr):
    fields: tuple = ()
    open: bool = False

    def field_map(self):
        return {f.label: f for f in self.fields}


def Diff(l: TypeExpr, r: TypeExpr) -> TypeExpr:
    return Inter(l, Neg(r))


INT = Interval(None, None)


def unions(ts, empty=Empty()):
    ts = list(ts)
    if not ts:
        return empty
    out = ts[0]
    for t in ts[1:]:
        out = Union(out, t)
    return out


def inters(ts):
    ts = list(ts)
    if not ts:
        return Any()
    out = ts[0]
    for t in ts[1:]:
        out = Inter(out, t)
    return out


def children(t: TypeExpr):
    match t:
        case Prod(l, r) | Union(l, r) | Inter(l, r):
            return (l, r)
        case Arrow(d, c):
            return (d, c)
        case Neg(x):
            return (x,)
        case Rec(_, body):
            return (body,)
        case Record(fields, _):
            return tuple(f.ty for f in fields)
    return ()


def free_vars(t: TypeExpr) -> set:
    match t:
        case Var(name):
            return {name}
        case Rec(name, body):
            return free_vars(body) - {name}
    out = set()
    for c in children(t):
        out |= free_vars(c)
    return out


def unguarded_vars(t: TypeExpr) -> set:
    """Free variables reachable from the root without crossing a constructor.

    Raises ContractivityError for a ``rec`` whose binder is reachable that way.
    """
    match t:
        case Var(name):
            return {name}
        case Prod() | Arrow() | Record():
            for c in children(t):
                unguarded_vars(c)
            return set()
        case Rec(name, body):
            inner = unguarded_vars(body)
            if name in inner:
                raise ContractivityError(name)
            return inner
    out = set()
    for c in children(t):
        out |= unguarded_vars(c)
    return out


def check_declarations(decls: dict) -> list:
    """Validate a set of mutually recursive ``type`` declarations.

    Returns the names in an order where every unguarded reference points to
    an earlier name.
    """
    deps = {}
    for name, body in decls.items():
        for v in free_vars(body):
            if v not in decls:
                raise UnboundVar(v)
        deps[name] = unguarded_vars(body) & decls.keys()
    order, state = [], {}

    def visit(n):
        if state.get(n) == "done":
            return
        if state.get(n) == "active":
            raise ContractivityError(n)
        state[n] = "active"
        for m in sorted(deps[n]):
            visit(m)
        state[n] = "done"
        order.append(n)

    for n in decls:
        visit(n)
    return order


def check_type(t: TypeExpr, scope=()) -> TypeExpr:
    unguarded_vars(t)
    for v in free_vars(t):
        if v not in scope:
            raise UnboundVar(v)
    return t
