"""Ground-truth membership over finite value universes.

Nothing here calls the subtyping algorithm: ``member`` reads type trees (or
descriptor components) directly, and ``Universe.denote`` computes the set
of enumerated values inhabiting a type tree as a boolean mask.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import bdd
from .core import Engine, FieldType
from .syntax import typeexpr as T
from .values import FunStub, PairV, RecV, TagV, depth, is_first_order, render


class ReportedCounterexample(AssertionError):
    def __init__(self, value, message):
        self.value = value
        super().__init__(f"{message}: {render(value)}")


# -- membership on type trees ---------------------------------------------------

def declarations_env(decls: dict) -> dict:
    env = {}
    for name, body in decls.items():
        env[name] = (body, env)
    return env


def member(v, t, decls=None, engine: Engine | None = None) -> bool:
    """Is ``v`` a value of ``t``?  ``t`` is a type tree or a handle of ``engine``."""
    if isinstance(t, int) and not isinstance(t, bool):
        if engine is None:
            raise ValueError("a type handle needs its engine")
        return _member_id(engine, v, t)
    return _member(v, t, declarations_env(decls or {}))


def _member(v, t, env) -> bool:
    match t:
        case T.Any():
            return True
        case T.Empty():
            return False
        case T.Tag(name):
            return isinstance(v, TagV) and v.name == name
        case T.Interval(lo, hi):
            return (isinstance(v, int) and (lo is None or lo <= v)
                    and (hi is None or v <= hi))
        case T.Prod(l, r):
            return isinstance(v, PairV) and _member(v.fst, l, env) and _member(v.snd, r, env)
        case T.Arrow():
            return isinstance(v, FunStub)
        case T.Union(l, r):
            return _member(v, l, env) or _member(v, r, env)
        case T.Inter(l, r):
            return _member(v, l, env) and _member(v, r, env)
        case T.Neg(x):
            return not _member(v, x, env)
        case T.Var(name):
            body, defenv = env[name]
            return _member(v, body, defenv)
        case T.Rec(name, body):
            inner = dict(env)
            inner[name] = (body, inner)
            return _member(v, body, inner)
        case T.Record(fields, is_open):
            if not isinstance(v, RecV):
                return False
            present = v.as_dict()
            for f in fields:
                if f.label in present:
                    if not _member(present[f.label], f.ty, env):
                        return False
                elif not f.optional:
                    return False
            return is_open or present.keys() <= {f.label for f in fields}
    raise TypeError(f"not a type expression: {t!r}")


def _member_id(eng: Engine, v, t) -> bool:
    d = eng.descr(t)
    if isinstance(v, bool):
        raise TypeError("booleans are not values")
    if isinstance(v, int):
        return d.ints.contains(v)
    if isinstance(v, TagV):
        return d.tags.contains(v.name)
    if isinstance(v, PairV):
        return bdd.evaluate(d.prod, lambda a: _member_id(eng, v.fst, a.first)
                            and _member_id(eng, v.snd, a.second))
    if isinstance(v, RecV):
        present = v.as_dict()
        return bdd.evaluate(d.recd, lambda a: _record_atom_member(eng, present, a))
    if isinstance(v, FunStub):
        return d.arrw is not bdd.ZERO
    ty = getattr(v, "ty", None)
    if ty is not None:
        return eng.is_subtype(ty, t)
    raise TypeError(f"not a value: {v!r}")


def _field_member(eng, present, label, f: FieldType) -> bool:
    if label in present:
        return _member_id(eng, present[label], f.ty)
    return f.may_be_undef


def _record_atom_member(eng, present, a) -> bool:
    explicit = a.field_map()
    for label, f in explicit.items():
        if not _field_member(eng, present, label, f):
            return False
    extra = present.keys() - explicit.keys()
    return a.open or not extra


# -- enumeration ----------------------------------------------------------------

@dataclass(frozen=True)
class UniverseSpec:
    tags: tuple = ("a", "b", "c")
    ints: tuple = (-3, 3)
    depth: int = 2
    labels: tuple = ("x", "y")

    @classmethod
    def parse(cls, text: str) -> "UniverseSpec":
        """Parse ``tags=a:b,ints=-3..3,depth=2,labels=x:y`` (counts also accepted)."""
        spec = cls()
        out = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, _, val = part.partition("=")
            key = key.strip()
            if key in ("tags", "labels"):
                if val.isdigit():
                    pool = "abcdefghij" if key == "tags" else "xyzuvw"
                    out[key] = tuple(pool[: int(val)])
                else:
                    out[key] = tuple(x for x in val.split(":") if x)
            elif key == "ints":
                lo, _, hi = val.partition("..")
                out[key] = (int(lo), int(hi))
            elif key == "depth":
                out[key] = int(val)
            else:
                raise ValueError(f"unknown universe key {key!r}")
        return cls(**{**spec.__dict__, **out})


def enumerate_values(spec: UniverseSpec) -> list:
    """Every first-order value within the bounds, without repetition.

    Base values are the integers in range and the tags.  Records are flat:
    each label is absent or holds a base value.  Pairs nest up to
    ``spec.depth`` levels over base values and smaller pairs.
    """
    lo, hi = spec.ints
    base = list(range(lo, hi + 1)) + [TagV(t) for t in spec.tags]
    records = []
    if spec.labels:
        for combo in itertools.product([None] + base, repeat=len(spec.labels)):
            records.append(RecV.of({lab: v for lab, v in zip(spec.labels, combo)
                                    if v is not None}))
    level = list(base)
    out = base + records
    for d in range(spec.depth):
        new = [PairV(a, b) for a in level for b in level if max(depth(a), depth(b)) == d]
        level += new
        out += new
    return out


def enumerate_universe(tags, int_range, max_depth, labels) -> list:
    return enumerate_values(UniverseSpec(tuple(tags), tuple(int_range), max_depth,
                                         tuple(labels)))


class Universe:
    """An enumerated universe with index arrays for vectorized denotations."""

    def __init__(self, spec: UniverseSpec | None = None):
        self.spec = spec or UniverseSpec()
        self.values = enumerate_values(self.spec)
        self.index = {v: i for i, v in enumerate(self.values)}
        n = len(self.values)
        self.size = n
        self.is_int = np.zeros(n, bool)
        self.int_val = np.zeros(n, np.int64)
        self.tag_code = np.full(n, -1, np.int64)
        self.is_pair = np.zeros(n, bool)
        self.fst = np.zeros(n, np.int64)
        self.snd = np.zeros(n, np.int64)
        self.is_rec = np.zeros(n, bool)
        self.tag_names = {t: i for i, t in enumerate(self.spec.tags)}
        self.field_idx = {lab: np.full(n, -1, np.int64) for lab in self.spec.labels}
        for i, v in enumerate(self.values):
            if isinstance(v, int):
                self.is_int[i] = True
                self.int_val[i] = v
            elif isinstance(v, TagV):
                self.tag_code[i] = self.tag_names[v.name]
            elif isinstance(v, PairV):
                self.is_pair[i] = True
                self.fst[i] = self.index[v.fst]
                self.snd[i] = self.index[v.snd]
            else:
                self.is_rec[i] = True
                for lab, x in v.fields:
                    self.field_idx[lab][i] = self.index[x]
        self.max_depth = max(depth(v) for v in self.values)

    def __len__(self):
        return self.size

    def denote(self, t: T.TypeExpr, decls=None) -> np.ndarray:
        """Boolean mask of the enumerated values that belong to ``t``."""
        env = {}
        if decls:
            rounds = (self.max_depth + 2) * (len(decls) + 1)
            masks = {name: np.zeros(self.size, bool) for name in decls}
            for _ in range(rounds):
                for name, body in decls.items():
                    masks[name] = self._den(body, masks)
            env = masks
        return self._den(t, env)

    def _den(self, t, env):
        n = self.size
        match t:
            case T.Any():
                return np.ones(n, bool)
            case T.Empty() | T.Arrow():
                return np.zeros(n, bool)
            case T.Tag(name):
                code = self.tag_names.get(name)
                return np.zeros(n, bool) if code is None else self.tag_code == code
            case T.Interval(lo, hi):
                m = self.is_int.copy()
                if lo is not None:
                    m &= self.int_val >= lo
                if hi is not None:
                    m &= self.int_val <= hi
                return m
            case T.Prod(l, r):
                return self.is_pair & self._den(l, env)[self.fst] & self._den(r, env)[self.snd]
            case T.Union(l, r):
                return self._den(l, env) | self._den(r, env)
            case T.Inter(l, r):
                return self._den(l, env) & self._den(r, env)
            case T.Neg(x):
                return ~self._den(x, env)
            case T.Var(name):
                return env[name]
            case T.Rec(name, body):
                mask = np.zeros(n, bool)
                for _ in range(self.max_depth + 2):
                    mask = self._den(body, {**env, name: mask})
                return mask
            case T.Record(fields, is_open):
                m = self.is_rec.copy()
                listed = {f.label: f for f in fields}
                for f in fields:
                    idx = self.field_idx.get(f.label)
                    if idx is None:
                        if not f.optional:
                            return np.zeros(n, bool)
                        continue
                    inner = self._den(f.ty, env)
                    present = idx >= 0
                    ok = present & inner[np.where(present, idx, 0)]
                    if f.optional:
                        ok |= ~present
                    m &= ok
                if not is_open:
                    for lab, idx in self.field_idx.items():
                        if lab not in listed:
                            m &= idx < 0
                return m
        raise TypeError(f"not a type expression: {t!r}")


# -- sweeps ---------------------------------------------------------------------

@dataclass
class SweepReport:
    subtype: bool
    checked: int
    witness: object = None
    notes: list = field(default_factory=list)


def soundness_sweep(eng: Engine, s, t, universe: Universe, decls=None,
                    env=None) -> SweepReport:
    """Cross-check one subtyping verdict against the enumerated universe.

    ``s`` and ``t`` are type trees (preferred: membership is then computed
    without the engine) or handles.
    """
    from .witness import sample

    trees = not isinstance(s, int)
    sid = eng.norm(s, env) if trees else s
    tid = eng.norm(t, env) if trees else t
    verdict = eng.is_subtype(sid, tid)
    if verdict:
        if trees:
            bad = universe.denote(s, decls) & ~universe.denote(t, decls)
            if bad.any():
                raise ReportedCounterexample(universe.values[int(np.argmax(bad))],
                                             "value of the subtype outside the supertype")
        else:
            for v in universe.values:
                if _member_id(eng, v, sid) and not _member_id(eng, v, tid):
                    raise ReportedCounterexample(v, "value of the subtype outside the supertype")
        return SweepReport(True, len(universe))
    w = sample(eng, eng.diff(sid, tid))
    if w is None:
        raise ReportedCounterexample(None, "no witness for a failed subtyping check")
    if is_first_order(w):
        if trees:
            ok = member(w, T.Diff(s, t), decls)
        else:
            ok = _member_id(eng, w, sid) and not _member_id(eng, w, tid)
        if not ok:
            raise ReportedCounterexample(w, "witness is not in the difference")
    return SweepReport(False, 1, w)
