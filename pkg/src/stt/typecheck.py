"""Type assignment for expressions, on top of the engine's set operations."""

from __future__ import annotations

import itertools
from collections import ChainMap

from . import bdd
from .core import Engine, FieldType
from .errors import (AmbiguityError, ArgumentTypeError, NotAFunction, NotAPair, NotARecord,
                     PossiblyUndefinedField, ResourceError, SpecializationError,
                     StaticTypeError, UnboundVar)
from .subtyping import (arrow_empty, field_diff, field_inter, field_is_empty, field_union,
                        prod_empty, record_empty)
from .syntax import expr as E
from .values import render
from .witness import sample

MAX_POSITIVE_ARROWS = 12

# Tag standing for "field removed" while computing deletions; the lexer
# cannot produce it, so it never clashes with user tags.
DELETED_TAG = "#deleted"

TypeEnv = ChainMap


class QuasiRecord:
    """A record atom as an explicit field map plus the field type of every other label."""

    __slots__ = ("fields", "default")

    def __init__(self, fields: dict, default: FieldType):
        self.fields = fields
        self.default = default

    def get(self, label) -> FieldType:
        return self.fields.get(label, self.default)

    def replace(self, label, f: FieldType) -> "QuasiRecord":
        return QuasiRecord({**self.fields, label: f}, self.default)

    def key(self):
        return (tuple(sorted(self.fields.items())), self.default)


class Checker:
    def __init__(self, eng: Engine | None = None, types: dict | None = None):
        self.eng = eng or Engine()
        self.types = dict(types or {})

    # -- helpers ------------------------------------------------------------
    def ty(self, texpr) -> int:
        return self.eng.norm(texpr, self.types)

    def show(self, t: int) -> str:
        return self.eng.show(t)

    def witness(self, t: int):
        v = sample(self.eng, t)
        return None if v is None else render(v)

    def sub(self, s: int, t: int) -> bool:
        return self.eng.is_subtype(s, t)

    def require(self, found: int, expected: int, site, what="expression"):
        if not self.sub(found, expected):
            raise StaticTypeError(
                f"{what} has type {self.show(found)}, expected a subtype of {self.show(expected)}",
                site=site, expected=self.show(expected), found=self.show(found),
                witness=self.witness(self.eng.diff(found, expected)))

    def _arrow_summands(self, t: int):
        d = self.eng.descr(t)
        for pos, negs in bdd.paths(d.arrw):
            if not arrow_empty(self.eng, pos, negs):
                yield pos

    # -- functions and application ---------------------------------------------
    def dom(self, t: int, site=None) -> int:
        eng = self.eng
        if not self.sub(t, eng.ANY_ARROW):
            raise NotAFunction(f"expected a function, found {self.show(t)}", site=site,
                               expected=self.show(eng.ANY_ARROW), found=self.show(t))
        out = eng.ANY
        for pos in self._arrow_summands(t):
            out = eng.inter(out, eng.union_all(a.dom for a in pos))
        return out

    def apply(self, tf: int, ta: int, site=None) -> int:
        eng = self.eng
        d = self.dom(tf, site)
        if not self.sub(ta, d):
            raise ArgumentTypeError(
                f"argument of type {self.show(ta)} is outside the domain {self.show(d)}",
                site=site, expected=self.show(d), found=self.show(ta),
                witness=self.witness(eng.diff(ta, d)))
        if eng.is_empty(ta):
            return eng.EMPTY
        key = (tf, ta)
        if eng.config.memo and key in eng.apply_cache:
            return eng.apply_cache[key]
        out = eng.EMPTY
        for pos in self._arrow_summands(tf):
            if len(pos) > MAX_POSITIVE_ARROWS:
                raise ResourceError(f"intersection of {len(pos)} arrows is too large to apply")
            for k in range(len(pos)):
                for skipped in itertools.combinations(range(len(pos)), k):
                    if self.sub(ta, eng.union_all(pos[i].dom for i in skipped)):
                        continue
                    out = eng.union(out, eng.inter_all(a.cod for i, a in enumerate(pos)
                                                       if i not in skipped))
        if eng.config.memo:
            eng.apply_cache[key] = out
        return out

    # -- pairs ------------------------------------------------------------------
    def proj(self, t: int, index: int, site=None) -> int:
        eng = self.eng
        if not self.sub(t, eng.ANY_PROD):
            raise NotAPair(f"expected a pair, found {self.show(t)}", site=site,
                           expected=self.show(eng.ANY_PROD), found=self.show(t))
        out = eng.EMPTY
        for pos, negs in bdd.paths(eng.descr(t).prod):
            if prod_empty(eng, pos, negs):
                continue
            s1 = eng.inter_all(a.first for a in pos)
            s2 = eng.inter_all(a.second for a in pos)
            for k in range(len(negs) + 1):
                for chosen in itertools.combinations(range(len(negs)), k):
                    left = eng.diff(s1, eng.union_all(negs[i].first for i in chosen))
                    right = eng.diff(s2, eng.union_all(n.second for i, n in enumerate(negs)
                                                       if i not in chosen))
                    if eng.is_empty(left) or eng.is_empty(right):
                        continue
                    out = eng.union(out, left if index == 0 else right)
        return out

    # -- records ----------------------------------------------------------------
    def record_atoms(self, t: int, site=None) -> list:
        """Decompose a record type into a list of QuasiRecord summands.

        Negated atoms whose exclusion hinges on labels outside every explicit
        domain are dropped, which can only enlarge the result.
        """
        eng = self.eng
        if not self.sub(t, eng.ANY_RECORD):
            raise NotARecord(f"expected a record, found {self.show(t)}", site=site,
                             expected=self.show(eng.ANY_RECORD), found=self.show(t))
        out, seen = [], set()
        for pos, negs in bdd.paths(eng.descr(t).recd):
            if record_empty(eng, pos, negs):
                continue
            meet = QuasiRecord({}, FieldType(eng.ANY, True))
            for a in pos:
                meet = self._qr_inter(meet, self._qr(a))
            current = [meet]
            for n in negs:
                nq = self._qr(n)
                nxt = []
                for r in current:
                    if not field_is_empty(eng, field_diff(eng, r.default, nq.default)):
                        nxt.append(r)
                        continue
                    for lab in sorted(r.fields.keys() | nq.fields.keys()):
                        f = field_diff(eng, r.get(lab), nq.get(lab))
                        if not field_is_empty(eng, f):
                            nxt.append(r.replace(lab, f))
                current = nxt
            for r in current:
                if r.key() not in seen:
                    seen.add(r.key())
                    out.append(r)
        return out

    def _qr(self, atom) -> QuasiRecord:
        eng = self.eng
        return QuasiRecord(atom.field_map(),
                           FieldType(eng.ANY if atom.open else eng.EMPTY, True))

    def _qr_inter(self, a: QuasiRecord, b: QuasiRecord) -> QuasiRecord:
        labels = a.fields.keys() | b.fields.keys()
        return QuasiRecord({lab: field_inter(self.eng, a.get(lab), b.get(lab)) for lab in labels},
                           field_inter(self.eng, a.default, b.default))

    def _qr_type(self, r: QuasiRecord) -> int:
        eng = self.eng
        if r.default == FieldType(eng.ANY, True):
            is_open = True
        elif r.default == FieldType(eng.EMPTY, True):
            is_open = False
        else:
            raise AssertionError("record default is neither open nor closed")
        return eng.record(r.fields, is_open)

    def _merge_atoms(self, r1: QuasiRecord, r2: QuasiRecord, t: FieldType) -> QuasiRecord:
        eng = self.eng

        def field(f1, f2):
            if field_is_empty(eng, field_inter(eng, f1, t)):
                return f1
            return field_union(eng, field_diff(eng, f1, t), f2)

        labels = r1.fields.keys() | r2.fields.keys()
        return QuasiRecord({lab: field(r1.get(lab), r2.get(lab)) for lab in labels},
                           field(r1.default, r2.default))

    def merge_records(self, left: list, right: list, t: FieldType) -> int:
        eng = self.eng
        return eng.union_all(self._qr_type(self._merge_atoms(a, b, t))
                             for a in left for b in right)

    def rec_merge(self, r1: int, r2: int, t: FieldType, site=None) -> int:
        return self.merge_records(self.record_atoms(r1, site), self.record_atoms(r2, site), t)

    def rec_concat(self, t1: int, t2: int, site=None) -> int:
        """Type of ``e1 + e2``: fields of the right operand win when defined."""
        absent = FieldType(self.eng.EMPTY, True)
        return self.rec_merge(t2, t1, absent, site)

    def rec_delete(self, t: int, label: str, site=None) -> int:
        eng = self.eng
        marker = FieldType(eng.tag(DELETED_TAG), False)
        remover = QuasiRecord({label: FieldType(eng.EMPTY, True)}, marker)
        return self.merge_records([remover], self.record_atoms(t, site), marker)

    def rec_select(self, t: int, label: str, site=None) -> int:
        eng = self.eng
        out = eng.EMPTY
        for r in self.record_atoms(t, site):
            f = r.get(label)
            if f.may_be_undef:
                raise PossiblyUndefinedField(label, self.show(self._qr_type(r)), site=site)
            out = eng.union(out, f.ty)
        return out

    # -- multi-functions ------------------------------------------------------------
    def check_multi(self, branches, site=None) -> int:
        """Formation checks for a multi-function; branches are (domain, codomain).

        Branch numbers in diagnostics start at 1.
        """
        eng = self.eng
        doms = [d for d, _ in branches]
        for i, j in itertools.combinations(range(len(branches)), 2):
            overlap = eng.inter(doms[i], doms[j])
            if eng.is_empty(overlap):
                continue
            covering = [h for h in range(len(doms)) if self.sub(overlap, doms[h])]
            least = [h for h in covering if all(self.sub(doms[h], doms[k]) for k in covering)]
            if len(least) != 1:
                raise AmbiguityError(i + 1, j + 1, self.witness(overlap), site=site)
        for i, j in itertools.permutations(range(len(branches)), 2):
            (si, ti), (sj, tj) = branches[i], branches[j]
            if self.sub(si, sj) and not self.sub(ti, tj):
                raise SpecializationError(i + 1, j + 1, expected=self.show(tj),
                                          found=self.show(ti), site=site)
        return eng.inter_all(eng.arrow(s, t) for s, t in branches)

    # -- expressions ------------------------------------------------------------------
    def group_domain(self, group) -> int:
        types = [self.ty(p.ty) for p in group]
        out = types[-1]
        for t in reversed(types[:-1]):
            out = self.eng.prod(t, out)
        return out

    def bind_group(self, group, t: int) -> dict:
        """Parameter types when a group receives an argument of type ``t``."""
        out = {}
        for p in group[:-1]:
            out[p.name] = self.proj(t, 0)
            t = self.proj(t, 1)
        out[group[-1].name] = t
        return out

    def fun_parts(self, groups, returns, body, env) -> tuple:
        """(domain, codomain) of a curried function with the given groups."""
        dom = self.group_domain(groups[0])
        inner = env.new_child({p.name: self.ty(p.ty) for p in groups[0]})
        if len(groups) > 1:
            cod = self.eng.arrow(*self.fun_parts(groups[1:], returns, body, inner))
        else:
            found = self.type_of(body, inner)
            if returns is not None:
                cod = self.ty(returns)
                self.require(found, cod, body.pos, "function body")
            else:
                cod = found
        return dom, cod

    def positive_arrows(self, t: int):
        """The arrows of ``t`` if it is a plain intersection of arrows, else None."""
        d = self.eng.descr(t)
        if d.prod is not bdd.ZERO or d.recd is not bdd.ZERO or not d.tags.is_empty() \
                or not d.ints.is_empty():
            return None
        ps = list(bdd.paths(d.arrw))
        if len(ps) != 1 or ps[0][1] or not ps[0][0]:
            return None
        return [(a.dom, a.cod) for a in ps[0][0]]

    def check_fun(self, f: E.Fun, expected: int, env) -> None:
        """Check ``f`` against an annotation, once per arrow of an intersection."""
        arrows = self.positive_arrows(expected)
        if arrows is None:
            self.require(self.eng.arrow(*self.fun_parts(f.params, f.returns, f.body, env)),
                         expected, f.pos, "function")
            return
        declared = self.group_domain(f.params[0])
        for s, t in arrows:
            self.require(s, declared, f.pos, "annotated domain")
            inner = env.new_child(self.bind_group(f.params[0], s))
            if len(f.params) > 1:
                self.check_fun(E.Fun(f.params[1:], f.returns, f.body, pos=f.pos), t, inner)
            else:
                found = self.type_of(f.body, inner)
                self.require(found, t, f.body.pos, "function body")
                if f.returns is not None:
                    self.require(found, self.ty(f.returns), f.body.pos, "function body")

    def bind(self, name, ann, bound, env) -> int:
        """Type of ``bound`` as seen by the rest of the program.

        With an annotation, functions and multi-functions may refer to
        ``name`` recursively.
        """
        if ann is None:
            return self.type_of(bound, env)
        at = self.ty(ann)
        if isinstance(bound, (E.Fun, E.Multi)):
            inner = env.new_child({name: at})
        else:
            inner = env
        if isinstance(bound, E.Fun):
            self.check_fun(bound, at, inner)
        else:
            self.require(self.type_of(bound, inner), at, bound.pos, f"definition of {name}")
        return at

    def arg_type(self, args, env) -> int:
        types = [self.type_of(a, env) for a in args]
        out = types[-1]
        for t in reversed(types[:-1]):
            out = self.eng.prod(t, out)
        return out

    def type_of(self, e: E.Expr, env=None) -> int:
        eng = self.eng
        env = env if env is not None else TypeEnv()
        match e:
            case E.IntLit(n):
                return eng.singleton(n)
            case E.TagLit(name):
                return eng.tag(name)
            case E.Var(name):
                if name not in env:
                    raise UnboundVar(name, e.pos)
                return env[name]
            case E.Pair(a, b):
                return eng.prod(self.type_of(a, env), self.type_of(b, env))
            case E.Proj(x, index):
                return self.proj(self.type_of(x, env), index, e.pos)
            case E.Fun(params, returns, body):
                return eng.arrow(*self.fun_parts(params, returns, body, env))
            case E.Multi(branches):
                parts = [self.fun_parts(b.params, b.returns, b.body, env) for b in branches]
                return self.check_multi(parts, e.pos)
            case E.App(fn, args):
                return self.apply(self.type_of(fn, env), self.arg_type(args, env), e.pos)
            case E.RecLit(label, x):
                return eng.record({label: self.type_of(x, env)})
            case E.EmptyRec():
                return eng.record({})
            case E.Concat(a, b):
                return self.rec_concat(self.type_of(a, env), self.type_of(b, env), e.pos)
            case E.Delete(x, label):
                return self.rec_delete(self.type_of(x, env), label, e.pos)
            case E.Select(x, label):
                return self.rec_select(self.type_of(x, env), label, e.pos)
            case E.Let(name, ann, bound, body):
                t = self.bind(name, ann, bound, env)
                return self.type_of(body, env.new_child({name: t}))
        raise TypeError(f"not an expression: {e!r}")
