"""Normalized type descriptors and the hash-consing store that owns them.

A descriptor keeps one component per kind of value: a tag leaf, an integer
leaf, and three decision diagrams (pairs, functions, records).  Set
operations act on each component independently.  Descriptors are interned
into integer handles (``TypeId``); recursive types are cycles through the
store, built by reserving a handle first and filling it in afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from . import bdd
from .bdd import ONE, ZERO
from .errors import ContractivityError, UnboundVar
from .syntax import typeexpr as T

INF = math.inf


# -- leaves -------------------------------------------------------------------

class TagLeaf(NamedTuple):
    """Finite set of tags (``positive``) or the complement of one."""

    tags: frozenset
    positive: bool

    def union(self, o):
        if self.positive and o.positive:
            return TagLeaf(self.tags | o.tags, True)
        if not self.positive and not o.positive:
            return TagLeaf(self.tags & o.tags, False)
        p, n = (self, o) if self.positive else (o, self)
        return TagLeaf(n.tags - p.tags, False)

    def inter(self, o):
        if self.positive and o.positive:
            return TagLeaf(self.tags & o.tags, True)
        if not self.positive and not o.positive:
            return TagLeaf(self.tags | o.tags, False)
        p, n = (self, o) if self.positive else (o, self)
        return TagLeaf(p.tags - n.tags, True)

    def neg(self):
        return TagLeaf(self.tags, not self.positive)

    def diff(self, o):
        return self.inter(o.neg())

    def is_empty(self):
        return self.positive and not self.tags

    def contains(self, name):
        return (name in self.tags) == self.positive


TAGS_NONE = TagLeaf(frozenset(), True)
TAGS_ALL = TagLeaf(frozenset(), False)


class IntLeaf(NamedTuple):
    """Sorted, disjoint, non-adjacent closed intervals; bounds may be +-inf."""

    intervals: tuple

    def union(self, o):
        merged = []
        for lo, hi in sorted(self.intervals + o.intervals):
            if merged and lo <= merged[-1][1] + 1:
                if hi > merged[-1][1]:
                    merged[-1] = (merged[-1][0], hi)
            else:
                merged.append((lo, hi))
        return IntLeaf(tuple(merged))

    def neg(self):
        out, cur = [], -INF
        for lo, hi in self.intervals:
            if lo > cur:
                out.append((cur, lo - 1))
            cur = hi + 1
        if cur != INF:
            out.append((cur, INF))
        return IntLeaf(tuple(out))

    def inter(self, o):
        out, i, j = [], 0, 0
        a, b = self.intervals, o.intervals
        while i < len(a) and j < len(b):
            lo, hi = max(a[i][0], b[j][0]), min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntLeaf(tuple(out))

    def diff(self, o):
        return self.inter(o.neg())

    def is_empty(self):
        return not self.intervals

    def contains(self, n):
        return any(lo <= n <= hi for lo, hi in self.intervals)


INTS_NONE = IntLeaf(())
INTS_ALL = IntLeaf(((-INF, INF),))


def interval_leaf(lo, hi):
    lo = -INF if lo is None else lo
    hi = INF if hi is None else hi
    return IntLeaf(((lo, hi),)) if lo <= hi else INTS_NONE


# -- atoms --------------------------------------------------------------------

class ProdAtom(NamedTuple):
    first: int
    second: int


class ArrowAtom(NamedTuple):
    dom: int
    cod: int


class FieldType(NamedTuple):
    """A record field: a type plus whether the field may be absent."""

    ty: int
    may_be_undef: bool


@dataclass(frozen=True, order=True)
class RecordAtom:
    """Quasi-constant map from labels to field types.

    ``fields`` is a sorted tuple of ``(label, FieldType)``; labels not
    listed map to absent-only (closed) or to anything-or-absent (open).
    """

    fields: tuple
    open: bool

    def field_map(self):
        return dict(self.fields)


class Descr(NamedTuple):
    tags: TagLeaf
    ints: IntLeaf
    prod: bdd.Bdd
    arrw: bdd.Bdd
    recd: bdd.Bdd


DESCR_EMPTY = Descr(TAGS_NONE, INTS_NONE, ZERO, ZERO, ZERO)
DESCR_ANY = Descr(TAGS_ALL, INTS_ALL, ONE, ONE, ONE)


@dataclass(frozen=True)
class EngineConfig:
    memo: bool = True
    strict_subset_opt: bool = True
    early_cutoff: bool = False


class Engine:
    """Type store plus every cache keyed on its handles.

    Handles are only meaningful within the engine that produced them.
    """

    def __init__(self, config: EngineConfig | None = None):
        self.config = config or EngineConfig()
        self._descrs: list = []
        self._index: dict = {}
        self._op_cache: dict = {}
        # Emptiness bookkeeping (see subtyping).
        self.empty_cache: dict = {}
        self.assumed: set = set()
        self.trail: list = []
        self.apply_cache: dict = {}
        self.aliases: dict = {}
        self.stats = {"empty_calls": 0}

        self.EMPTY = self.intern(DESCR_EMPTY)
        self.ANY = self.intern(DESCR_ANY)
        self.ANY_TAGS = self.intern(DESCR_EMPTY._replace(tags=TAGS_ALL))
        self.ANY_INT = self.intern(DESCR_EMPTY._replace(ints=INTS_ALL))
        self.ANY_PROD = self.intern(DESCR_EMPTY._replace(prod=ONE))
        self.ANY_ARROW = self.intern(DESCR_EMPTY._replace(arrw=ONE))
        self.ANY_RECORD = self.intern(DESCR_EMPTY._replace(recd=ONE))

    # -- store ------------------------------------------------------------
    def intern(self, d: Descr) -> int:
        tid = self._index.get(d)
        if tid is None:
            tid = len(self._descrs)
            self._descrs.append(d)
            self._index[d] = tid
        return tid

    def reserve(self) -> int:
        self._descrs.append(None)
        return len(self._descrs) - 1

    def fill(self, tid: int, d: Descr):
        assert self._descrs[tid] is None
        self._descrs[tid] = d
        self._index.setdefault(d, tid)

    def descr(self, tid: int) -> Descr:
        d = self._descrs[tid]
        if d is None:
            raise ContractivityError(f"#{tid}")
        return d

    def __len__(self):
        return len(self._descrs)

    # -- constructors -----------------------------------------------------
    def tag(self, name: str) -> int:
        return self.intern(DESCR_EMPTY._replace(tags=TagLeaf(frozenset([name]), True)))

    def tags(self, names, positive=True) -> int:
        return self.intern(DESCR_EMPTY._replace(tags=TagLeaf(frozenset(names), positive)))

    def interval(self, lo=None, hi=None) -> int:
        return self.intern(DESCR_EMPTY._replace(ints=interval_leaf(lo, hi)))

    def singleton(self, n: int) -> int:
        return self.interval(n, n)

    def prod(self, a: int, b: int) -> int:
        if a == self.ANY and b == self.ANY:
            return self.ANY_PROD
        if a == self.EMPTY or b == self.EMPTY:
            return self.EMPTY
        return self.intern(DESCR_EMPTY._replace(prod=bdd.atom(ProdAtom(a, b))))

    def arrow(self, a: int, b: int) -> int:
        if a == self.EMPTY and b == self.ANY:
            return self.ANY_ARROW
        return self.intern(DESCR_EMPTY._replace(arrw=bdd.atom(ArrowAtom(a, b))))

    def record_atom(self, fields: dict, is_open: bool):
        """Canonical atom for a record type, or None if it is trivially empty."""
        default = FieldType(self.ANY, True) if is_open else FieldType(self.EMPTY, True)
        kept = []
        for label in sorted(fields):
            f = fields[label]
            if f.ty == self.EMPTY and not f.may_be_undef:
                return None
            if f != default:
                kept.append((label, f))
        return RecordAtom(tuple(kept), is_open)

    def record(self, fields: dict, is_open: bool = False) -> int:
        """``fields`` maps labels to FieldType (or bare TypeIds, meaning required)."""
        fields = {k: v if isinstance(v, FieldType) else FieldType(v, False)
                  for k, v in fields.items()}
        a = self.record_atom(fields, is_open)
        if a is None:
            return self.EMPTY
        if not a.fields and a.open:
            return self.ANY_RECORD
        return self.intern(DESCR_EMPTY._replace(recd=bdd.atom(a)))

    def record_from_atom(self, a: RecordAtom) -> int:
        return self.record(a.field_map(), a.open)

    # -- boolean operations -----------------------------------------------
    def union(self, a: int, b: int) -> int:
        if a == b or b == self.EMPTY or a == self.ANY:
            return a
        if a == self.EMPTY or b == self.ANY:
            return b
        key = ("|", a, b) if a < b else ("|", b, a)
        r = self._op_cache.get(key)
        if r is None:
            x, y = self.descr(a), self.descr(b)
            r = self.intern(Descr(x.tags.union(y.tags), x.ints.union(y.ints),
                                  bdd.union(x.prod, y.prod), bdd.union(x.arrw, y.arrw),
                                  bdd.union(x.recd, y.recd)))
            self._op_cache[key] = r
        return r

    def inter(self, a: int, b: int) -> int:
        if a == b or b == self.ANY or a == self.EMPTY:
            return a
        if a == self.ANY or b == self.EMPTY:
            return b
        key = ("&", a, b) if a < b else ("&", b, a)
        r = self._op_cache.get(key)
        if r is None:
            x, y = self.descr(a), self.descr(b)
            r = self.intern(Descr(x.tags.inter(y.tags), x.ints.inter(y.ints),
                                  bdd.inter(x.prod, y.prod), bdd.inter(x.arrw, y.arrw),
                                  bdd.inter(x.recd, y.recd)))
            self._op_cache[key] = r
        return r

    def diff(self, a: int, b: int) -> int:
        if a == b or a == self.EMPTY or b == self.ANY:
            return self.EMPTY
        if b == self.EMPTY:
            return a
        key = ("\\", a, b)
        r = self._op_cache.get(key)
        if r is None:
            x, y = self.descr(a), self.descr(b)
            r = self.intern(Descr(x.tags.diff(y.tags), x.ints.diff(y.ints),
                                  bdd.diff(x.prod, y.prod), bdd.diff(x.arrw, y.arrw),
                                  bdd.diff(x.recd, y.recd)))
            self._op_cache[key] = r
        return r

    def neg(self, a: int) -> int:
        return self.diff(self.ANY, a)

    def union_all(self, ts) -> int:
        out = self.EMPTY
        for t in ts:
            out = self.union(out, t)
        return out

    def inter_all(self, ts) -> int:
        out = self.ANY
        for t in ts:
            out = self.inter(out, t)
        return out

    # -- queries delegated to the subtyping module --------------------------
    def is_empty(self, t: int) -> bool:
        from .subtyping import is_empty
        return is_empty(self, t)

    def is_subtype(self, s: int, t: int) -> bool:
        from .subtyping import is_subtype
        return is_subtype(self, s, t)

    def equiv(self, s: int, t: int) -> bool:
        return self.is_subtype(s, t) and self.is_subtype(t, s)

    # -- from syntax --------------------------------------------------------
    def norm(self, t: T.TypeExpr, env=None) -> int:
        """Translate a type tree; ``env`` maps free names to handles."""
        return self._norm(t, dict(env or {}))

    def _norm(self, t, env):
        match t:
            case T.Any():
                return self.ANY
            case T.Empty():
                return self.EMPTY
            case T.Tag(name):
                return self.tag(name)
            case T.Interval(lo, hi):
                return self.interval(lo, hi)
            case T.Prod(l, r):
                return self.prod(self._norm(l, env), self._norm(r, env))
            case T.Arrow(d, c):
                return self.arrow(self._norm(d, env), self._norm(c, env))
            case T.Union(l, r):
                return self.union(self._norm(l, env), self._norm(r, env))
            case T.Inter(l, r):
                return self.inter(self._norm(l, env), self._norm(r, env))
            case T.Neg(x):
                return self.neg(self._norm(x, env))
            case T.Var(name):
                if name not in env:
                    raise UnboundVar(name)
                return env[name]
            case T.Rec(name, body):
                T.unguarded_vars(t)
                hole = self.reserve()
                inner = self._norm(body, {**env, name: hole})
                self.fill(hole, self.descr(inner))
                return hole
            case T.Record(fields, is_open):
                return self.record({f.label: FieldType(self._norm(f.ty, env), f.optional)
                                    for f in fields}, is_open)
        raise TypeError(f"not a type expression: {t!r}")

    def declare(self, decls: dict, env=None) -> dict:
        """Normalize mutually recursive named declarations.

        Returns ``env`` extended with a handle per declared name.
        """
        order = T.check_declarations({**{n: T.Any() for n in (env or {})}, **decls})
        env = dict(env or {})
        holes = {name: self.reserve() for name in decls}
        for name, hole in holes.items():
            self.aliases.setdefault(hole, name)
        env.update(holes)
        for name in order:
            if name in decls:
                inner = self._norm(decls[name], env)
                self.fill(holes[name], self.descr(inner))
        # Structurally equal types built later intern to the canonical id; name that too.
        for name, hole in holes.items():
            self.aliases.setdefault(self._index[self._descrs[hole]], name)
        return env

    # -- printing -------------------------------------------------------------
    def to_type_expr(self, t: int, aliases: bool = True, expand_root: bool = True) -> T.TypeExpr:
        """Read a handle back as a type tree (a union of DNF summands).

        With ``aliases``, handles of declared names print as those names;
        ``expand_root`` still unfolds the outermost one.
        """
        return _Reader(self, self.aliases if aliases else {}).read(t, root=expand_root)

    def show(self, t: int, aliases: bool = True) -> str:
        from .syntax.printer import print_type
        return print_type(self.to_type_expr(t, aliases, expand_root=False))


# -- DNF reading back to syntax -------------------------------------------------

_KIND_TOPS = {
    "prod": T.Prod(T.Any(), T.Any()),
    "arrw": T.Arrow(T.Empty(), T.Any()),
    "recd": T.Record((), True),
}
_NON_TAGS = T.unions([T.INT, _KIND_TOPS["prod"], _KIND_TOPS["arrw"], _KIND_TOPS["recd"]])


def _bound(x):
    return None if x in (INF, -INF) else int(x)


class _Reader:
    def __init__(self, eng: Engine, aliases: dict):
        self.eng = eng
        self.aliases = aliases
        self.active = {}
        self.counter = 0

    def read(self, t: int, root: bool = False) -> T.TypeExpr:
        eng = self.eng
        if not root and t in self.aliases:
            return T.Var(self.aliases[t])
        if t == eng.ANY:
            return T.Any()
        if t == eng.EMPTY:
            return T.Empty()
        if t in self.active:
            if self.active[t] is None:
                self.counter += 1
                self.active[t] = f"X{self.counter}"
            return T.Var(self.active[t])
        self.active[t] = None
        d = eng.descr(t)
        direct = self.components(d)
        comp = eng.descr(eng.neg(t))
        if self._weight(comp) < self._weight(d):
            body = T.Neg(self.components(comp))
        else:
            body = direct
        name = self.active.pop(t)
        return T.Rec(name, body) if name else body

    @staticmethod
    def _weight(d: Descr):
        w = 0
        if not d.tags.is_empty():
            w += 2 if d.tags.positive else 3
        w += 0 if d.ints.is_empty() else 1
        for b in (d.prod, d.arrw, d.recd):
            w += 0 if b is ZERO else (1 if b is ONE else 2)
        return w

    def components(self, d: Descr) -> T.TypeExpr:
        parts = []
        if not d.tags.is_empty():
            tags = [T.Tag(n) for n in sorted(d.tags.tags)]
            if d.tags.positive:
                parts.extend(tags)
            else:
                parts.append(T.inters([T.Neg(_NON_TAGS)] + [T.Neg(x) for x in tags]))
        for lo, hi in d.ints.intervals:
            parts.append(T.Interval(_bound(lo), _bound(hi)))
        for kind, b in (("prod", d.prod), ("arrw", d.arrw), ("recd", d.recd)):
            for pos, negs in bdd.paths(b):
                lits = [self.atom(kind, a) for a in pos]
                lits += [T.Neg(self.atom(kind, a)) for a in negs]
                if not pos:
                    lits.insert(0, _KIND_TOPS[kind])
                parts.append(T.inters(lits))
        return T.unions(parts)

    def atom(self, kind, a) -> T.TypeExpr:
        if kind == "prod":
            return T.Prod(self.read(a.first), self.read(a.second))
        if kind == "arrw":
            return T.Arrow(self.read(a.dom), self.read(a.cod))
        fields = []
        for label, f in a.fields:
            fields.append(T.Field(label, self.read(f.ty), f.may_be_undef))
        return T.Record(tuple(fields), a.open)
