from .expr import (App, Concat, Delete, EmptyRec, Expr, ExprStmt, Fun, IntLit, Let,
                   LetDecl, Multi, Pair, Param, Program, Proj, RecLit, Select, TagLit,
                   TypeDecl)
from .expr import Var as EVar
from .parser import parse_expr, parse_program, parse_type, tokenize
from .printer import print_type
from .typeexpr import (INT, Any, Arrow, Diff, Empty, Field, Inter, Interval, Neg, Prod,
                       Rec, Record, Tag, TypeExpr, Union, Var, check_declarations,
                       free_vars, inters, unions, unguarded_vars)

__all__ = [
    "App", "Concat", "Delete", "EmptyRec", "Expr", "ExprStmt", "Fun", "IntLit", "Let",
    "LetDecl", "Multi", "Pair", "Param", "Program", "Proj", "RecLit", "Select", "TagLit",
    "TypeDecl", "EVar", "parse_expr", "parse_program", "parse_type", "tokenize",
    "print_type", "INT", "Any", "Arrow", "Diff", "Empty", "Field", "Inter", "Interval",
    "Neg", "Prod", "Rec", "Record", "Tag", "TypeExpr", "Union", "Var",
    "check_declarations", "free_vars", "inters", "unions", "unguarded_vars",
]
