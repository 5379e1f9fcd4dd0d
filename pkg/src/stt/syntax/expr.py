"""Expression trees of the checked language and top-level declarations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .typeexpr import TypeExpr

_pos = field(default=None, compare=False, repr=False)


class Expr:
    __slots__ = ()


class Param(NamedTuple):
    name: str
    ty: TypeExpr


@dataclass(frozen=True)
class IntLit(Expr):
    n: int
    pos: tuple = _pos


@dataclass(frozen=True)
class TagLit(Expr):
    name: str
    pos: tuple = _pos


@dataclass(frozen=True)
class Var(Expr):
    name: str
    pos: tuple = _pos


@dataclass(frozen=True)
class Pair(Expr):
    e1: Expr
    e2: Expr
    pos: tuple = _pos


@dataclass(frozen=True)
class Proj(Expr):
    e: Expr
    index: int
    pos: tuple = _pos


@dataclass(frozen=True)
class Fun(Expr):
    """``params`` is a tuple of parameter groups, each a tuple of Param."""

    params: tuple
    returns: Optional[TypeExpr]
    body: Expr
    pos: tuple = _pos

    def arity_shape(self):
        return tuple(len(g) for g in self.params)


@dataclass(frozen=True)
class Multi(Expr):
    branches: tuple
    pos: tuple = _pos


@dataclass(frozen=True)
class App(Expr):
    fn: Expr
    args: tuple
    pos: tuple = _pos


@dataclass(frozen=True)
class RecLit(Expr):
    label: str
    e: Expr
    pos: tuple = _pos


@dataclass(frozen=True)
class EmptyRec(Expr):
    pos: tuple = _pos


@dataclass(frozen=True)
class Concat(Expr):
    e1: Expr
    e2: Expr
    pos: tuple = _pos


@dataclass(frozen=True)
class Delete(Expr):
    e: Expr
    label: str
    pos: tuple = _pos


@dataclass(frozen=True)
class Select(Expr):
    e: Expr
    label: str
    pos: tuple = _pos


@dataclass(frozen=True)
class Let(Expr):
    name: str
    ty: Optional[TypeExpr]
    bound: Expr
    body: Expr
    pos: tuple = _pos


# Top-level declarations of a ``.stt`` file.

@dataclass(frozen=True)
class TypeDecl:
    name: str
    ty: TypeExpr
    pos: tuple = _pos


@dataclass(frozen=True)
class LetDecl:
    name: str
    ty: Optional[TypeExpr]
    bound: Expr
    pos: tuple = _pos


@dataclass(frozen=True)
class ExprStmt:
    e: Expr
    pos: tuple = _pos


@dataclass
class Program:
    types: dict
    items: list
