"""Concrete inhabitants of non-empty types, used to explain failed checks."""

from __future__ import annotations

import itertools
import math

from . import bdd
from .core import Engine, FieldType
from .subtyping import (TOP_RECORD, arrow_empty, default_field, field_diff, field_inter,
                        field_of, field_subtype, field_union, is_empty, prod_empty,
                        record_empty, record_labels)
from .values import FunStub, PairV, RecV, TagV


def fresh_name(taken, prefix="#fresh") -> str:
    for n in itertools.count():
        name = f"{prefix}{n}"
        if name not in taken:
            return name


def sample(eng: Engine, t: int):
    """A value of type ``t``, or None when ``t`` is empty."""
    if is_empty(eng, t):
        return None
    v = _Sampler(eng).value(t)
    assert v is not None, "non-empty type without a finite inhabitant"
    return v


def smallest_int(intervals):
    lo, hi = intervals[0]
    if lo != -math.inf:
        return int(lo)
    if hi != math.inf:
        return int(min(hi, 0))
    return 0


class _Sampler:
    def __init__(self, eng: Engine):
        self.eng = eng
        self.active = set()

    def value(self, t):
        eng = self.eng
        if t in self.active or is_empty(eng, t):
            return None
        d = eng.descr(t)
        if not d.tags.is_empty():
            if d.tags.positive:
                return TagV(min(d.tags.tags))
            return TagV(fresh_name(d.tags.tags))
        if not d.ints.is_empty():
            return smallest_int(d.ints.intervals)
        self.active.add(t)
        try:
            for pos, negs in bdd.paths(d.prod):
                if not prod_empty(eng, pos, negs):
                    v = self.pair(pos, negs)
                    if v is not None:
                        return v
            for pos, negs in bdd.paths(d.recd):
                if not record_empty(eng, pos, negs):
                    v = self.record(pos, negs)
                    if v is not None:
                        return v
            for pos, negs in bdd.paths(d.arrw):
                if not arrow_empty(eng, pos, negs):
                    if pos:
                        shown = eng.show(eng.inter_all(eng.arrow(a.dom, a.cod) for a in pos))
                    else:
                        shown = "Empty -> Any"
                    return FunStub(shown)
        finally:
            self.active.discard(t)
        return None

    def pair(self, pos, negs):
        eng = self.eng
        s1 = eng.inter_all(a.first for a in pos)
        s2 = eng.inter_all(a.second for a in pos)
        for k in range(len(negs) + 1):
            for chosen in itertools.combinations(range(len(negs)), k):
                left = eng.diff(s1, eng.union_all(negs[i].first for i in chosen))
                right = eng.diff(s2, eng.union_all(n.second for i, n in enumerate(negs)
                                                   if i not in chosen))
                if is_empty(eng, left) or is_empty(eng, right):
                    continue
                v1 = self.value(left)
                v2 = self.value(right) if v1 is not None else None
                if v2 is not None:
                    return PairV(v1, v2)
        return None

    def record(self, pos, negs):
        eng = self.eng
        pos = tuple(pos) or (TOP_RECORD,)
        labels = record_labels(pos + tuple(negs))
        meet = {}
        for lab in labels:
            f = field_of(eng, pos[0], lab)
            for a in pos[1:]:
                f = field_inter(eng, f, field_of(eng, a, lab))
            meet[lab] = f
        tail = FieldType(eng.ANY if all(a.open for a in pos) else eng.EMPTY, True)
        for assignment in itertools.product(labels + [None], repeat=len(negs)):
            remaining = {}
            for lab in labels:
                cover = FieldType(eng.EMPTY, False)
                for n, where in zip(negs, assignment):
                    if where == lab:
                        cover = field_union(eng, cover, field_of(eng, n, lab))
                remaining[lab] = field_diff(eng, meet[lab], cover)
            if any(not f.may_be_undef and is_empty(eng, f.ty) for f in remaining.values()):
                continue
            tail_needed = [n for n, where in zip(negs, assignment) if where is None]
            if any(field_subtype(eng, tail, default_field(eng, n)) for n in tail_needed):
                continue
            fields = {}
            ok = True
            for lab in labels:
                f = remaining[lab]
                v = self.value(f.ty) if not is_empty(eng, f.ty) else None
                if v is not None:
                    fields[lab] = v
                elif not f.may_be_undef:
                    ok = False
                    break
            if not ok:
                continue
            if tail_needed:
                v = self.value(eng.ANY)
                fields[fresh_name(labels)] = v
            return RecV.of(fields)
        return None
