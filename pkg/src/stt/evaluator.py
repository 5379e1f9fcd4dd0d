"""Strict, left-to-right evaluation of checked expressions."""

from __future__ import annotations

from collections import ChainMap

from .errors import EvalError
from .syntax import expr as E
from .typecheck import Checker
from .values import Closure, MultiClosure, PairV, RecV, TagV


class Evaluator:
    def __init__(self, checker: Checker):
        self.checker = checker
        self.eng = checker.eng

    # -- dynamic types ------------------------------------------------------
    def value_type(self, v) -> int:
        """Singleton type of a first-order value; declared type of a closure."""
        eng = self.eng
        if isinstance(v, bool):
            raise TypeError("booleans are not values")
        if isinstance(v, int):
            return eng.singleton(v)
        if isinstance(v, TagV):
            return eng.tag(v.name)
        if isinstance(v, PairV):
            return eng.prod(self.value_type(v.fst), self.value_type(v.snd))
        if isinstance(v, RecV):
            return eng.record({k: self.value_type(x) for k, x in v.fields})
        return v.ty

    def type_env(self, env: dict) -> ChainMap:
        return ChainMap({k: self.value_type(v) for k, v in env.items()})

    # -- dispatch -------------------------------------------------------------
    def dispatch(self, m: MultiClosure, arg) -> int:
        """Index of the branch with the least domain containing ``arg``."""
        sub = self.eng.is_subtype
        vt = self.value_type(arg)
        fits = [i for i, d in enumerate(m.domains) if sub(vt, d)]
        least = [i for i in fits if all(sub(m.domains[i], m.domains[k]) for k in fits)]
        if len(least) != 1:
            raise EvalError(f"no unique most specific branch for {arg}")
        return least[0]

    # -- evaluation -------------------------------------------------------------
    def make_closure(self, e, env: dict, ty=None):
        if ty is None:
            ty = self.checker.type_of(e, self.type_env(env))
        if isinstance(e, E.Fun):
            return Closure(e.params, e.returns, e.body, env, ty)
        domains = tuple(self.checker.group_domain(b.params[0]) for b in e.branches)
        return MultiClosure(e.branches, domains, env, ty)

    def call(self, fv, arg):
        if isinstance(fv, MultiClosure):
            b = fv.branches[self.dispatch(fv, arg)]
            params, body, env = b.params, b.body, fv.env
        elif isinstance(fv, Closure):
            params, body, env = fv.params, fv.body, fv.env
        else:
            raise EvalError(f"cannot apply {fv}")
        group = params[0]
        inner = dict(env)
        rest = arg
        for p in group[:-1]:
            if not isinstance(rest, PairV):
                raise EvalError("too few arguments")
            inner[p.name], rest = rest.fst, rest.snd
        inner[group[-1].name] = rest
        if len(params) > 1:
            # Remaining groups: the closure is typed by what the call returns.
            ty = self.checker.apply(fv.ty, self.value_type(arg))
            return Closure(params[1:], None, body, inner, ty)
        return self.eval(body, inner)

    def eval(self, e: E.Expr, env: dict | None = None):
        env = env if env is not None else {}
        match e:
            case E.IntLit(n):
                return n
            case E.TagLit(name):
                return TagV(name)
            case E.Var(name):
                if name not in env:
                    raise EvalError(f"unbound variable {name}")
                return env[name]
            case E.Pair(a, b):
                va = self.eval(a, env)
                return PairV(va, self.eval(b, env))
            case E.Proj(x, index):
                v = self.eval(x, env)
                if not isinstance(v, PairV):
                    raise EvalError(f"projection of a non-pair {v}")
                return v.snd if index else v.fst
            case E.Fun() | E.Multi():
                return self.make_closure(e, env)
            case E.App(fn, args):
                fv = self.eval(fn, env)
                vals = [self.eval(a, env) for a in args]
                arg = vals[-1]
                for v in reversed(vals[:-1]):
                    arg = PairV(v, arg)
                return self.call(fv, arg)
            case E.RecLit(label, x):
                return RecV(((label, self.eval(x, env)),))
            case E.EmptyRec():
                return RecV(())
            case E.Concat(a, b):
                ra, rb = self.eval(a, env), self.eval(b, env)
                if not isinstance(ra, RecV) or not isinstance(rb, RecV):
                    raise EvalError("concatenation of non-records")
                return RecV.of({**ra.as_dict(), **rb.as_dict()})
            case E.Delete(x, label):
                r = self.eval(x, env)
                if not isinstance(r, RecV):
                    raise EvalError("deletion from a non-record")
                return RecV(tuple(kv for kv in r.fields if kv[0] != label))
            case E.Select(x, label):
                r = self.eval(x, env)
                if not isinstance(r, RecV) or label not in r.as_dict():
                    raise EvalError(f"field {label} is undefined")
                return r.as_dict()[label]
            case E.Let(name, ann, bound, body):
                return self.eval(body, self.bind(name, ann, bound, env))
        raise TypeError(f"not an expression: {e!r}")

    def bind(self, name, ann, bound, env: dict) -> dict:
        """Environment extended with ``name``; annotated functions may recurse."""
        if ann is not None and isinstance(bound, (E.Fun, E.Multi)):
            inner = dict(env)
            inner[name] = self.make_closure(bound, inner, self.checker.ty(ann))
            return inner
        return {**env, name: self.eval(bound, env)}

