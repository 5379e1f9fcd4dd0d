"""Subtyping as emptiness of the difference, decided kind by kind.

Emptiness of recursive types is decided coinductively: a type under
examination is assumed empty while its components are checked.  A positive
answer is cached but stays provisional while any enclosing assumption is
still open; if that enclosing check fails, every answer recorded since it
started is discarded.  Negative answers never depend on assumptions and are
cached immediately.
"""

from __future__ import annotations

import itertools

from . import bdd
from .core import Engine, FieldType, RecordAtom


def is_subtype(eng: Engine, s: int, t: int) -> bool:
    return is_empty(eng, eng.diff(s, t))


def is_empty(eng: Engine, t: int) -> bool:
    if t == eng.EMPTY:
        return True
    d = eng.descr(t)
    if not d.tags.is_empty() or not d.ints.is_empty():
        return False
    memo = eng.config.memo
    if memo:
        cached = eng.empty_cache.get(t)
        if cached is not None:
            return cached
    if t in eng.assumed:
        return True
    eng.stats["empty_calls"] += 1
    eng.assumed.add(t)
    mark = len(eng.trail)
    try:
        result = (all(prod_empty(eng, p, n) for p, n in bdd.paths(d.prod))
                  and all(arrow_empty(eng, p, n) for p, n in bdd.paths(d.arrw))
                  and all(record_empty(eng, p, n) for p, n in bdd.paths(d.recd)))
    except BaseException:
        eng.assumed.discard(t)
        _rollback(eng, mark)
        raise
    eng.assumed.discard(t)
    if not memo:
        return result
    if result:
        eng.empty_cache[t] = True
        if eng.assumed:
            eng.trail.append(t)
        else:
            eng.trail.clear()
    else:
        _rollback(eng, mark)
        eng.empty_cache[t] = False
    return result


def _rollback(eng: Engine, mark: int):
    for x in eng.trail[mark:]:
        eng.empty_cache.pop(x, None)
    del eng.trail[mark:]


# -- products -------------------------------------------------------------------

def prod_empty(eng: Engine, positives, negatives) -> bool:
    """Is the intersection of the positive products minus the negative ones empty?"""
    s1 = eng.inter_all(a.first for a in positives)
    s2 = eng.inter_all(a.second for a in positives)
    if is_empty(eng, s1) or is_empty(eng, s2):
        return True
    return _prod_phi(eng, s1, s2, tuple(negatives))


def _prod_phi(eng, s1, s2, negs) -> bool:
    if not negs:
        return False
    (t1, t2), rest = negs[0], negs[1:]
    return ((is_subtype(eng, s1, t1) or _prod_phi(eng, eng.diff(s1, t1), s2, rest))
            and (is_subtype(eng, s2, t2) or _prod_phi(eng, s1, eng.diff(s2, t2), rest)))


def prod_empty_by_subsets(eng: Engine, positives, negatives) -> bool:
    """Same question as prod_empty, by enumerating every split of the negatives."""
    s1 = eng.inter_all(a.first for a in positives)
    s2 = eng.inter_all(a.second for a in positives)
    negatives = tuple(negatives)
    for k in range(len(negatives) + 1):
        for chosen in itertools.combinations(range(len(negatives)), k):
            left = eng.union_all(negatives[i].first for i in chosen)
            right = eng.union_all(n.second for i, n in enumerate(negatives)
                                  if i not in chosen)
            if not (is_subtype(eng, s1, left) or is_subtype(eng, s2, right)):
                return False
    return True


# -- arrows ---------------------------------------------------------------------

def arrow_empty(eng: Engine, positives, negatives) -> bool:
    """Is the intersection of the positive arrows minus the negative ones empty?"""
    positives = tuple(positives)
    domains = eng.union_all(a.dom for a in positives)
    for t1, t2 in negatives:
        if is_subtype(eng, t1, domains) and _arrow_phi(eng, t1, eng.neg(t2), positives, True):
            return True
    return False


def _arrow_phi(eng, t1, t2, arrows, untouched) -> bool:
    if not arrows:
        return is_empty(eng, t1) or is_empty(eng, t2)
    (s1, s2), rest = arrows[0], arrows[1:]
    cfg = eng.config
    if cfg.early_cutoff:
        if not (is_subtype(eng, t1, s1)
                or is_empty(eng, eng.inter(eng.inter_all(a.cod for a in rest), t2))):
            return False
    if cfg.strict_subset_opt and untouched and not rest:
        return _arrow_phi(eng, t1, eng.inter(t2, s2), (), False)
    return (_arrow_phi(eng, t1, eng.inter(t2, s2), rest, False)
            and _arrow_phi(eng, eng.diff(t1, s1), t2, rest, untouched))


def arrow_empty_by_subsets(eng: Engine, positives, negatives) -> bool:
    """Same question as arrow_empty, by enumerating every proper subset of the positives."""
    positives = tuple(positives)
    domains = eng.union_all(a.dom for a in positives)
    for t1, t2 in negatives:
        if not is_subtype(eng, t1, domains):
            continue
        ok = True
        for k in range(len(positives)):
            for chosen in itertools.combinations(range(len(positives)), k):
                dom = eng.union_all(positives[i].dom for i in chosen)
                cod = eng.inter_all(a.cod for i, a in enumerate(positives) if i not in chosen)
                if not (is_subtype(eng, t1, dom) or is_subtype(eng, cod, t2)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


# -- records --------------------------------------------------------------------

def default_field(eng: Engine, atom: RecordAtom) -> FieldType:
    return FieldType(eng.ANY if atom.open else eng.EMPTY, True)


def field_of(eng: Engine, atom: RecordAtom, label) -> FieldType:
    for lab, f in atom.fields:
        if lab == label:
            return f
    return default_field(eng, atom)


def field_inter(eng, a: FieldType, b: FieldType) -> FieldType:
    return FieldType(eng.inter(a.ty, b.ty), a.may_be_undef and b.may_be_undef)


def field_union(eng, a: FieldType, b: FieldType) -> FieldType:
    return FieldType(eng.union(a.ty, b.ty), a.may_be_undef or b.may_be_undef)


def field_diff(eng, a: FieldType, b: FieldType) -> FieldType:
    return FieldType(eng.diff(a.ty, b.ty), a.may_be_undef and not b.may_be_undef)


def field_subtype(eng, a: FieldType, b: FieldType) -> bool:
    return (b.may_be_undef or not a.may_be_undef) and is_subtype(eng, a.ty, b.ty)


def field_is_empty(eng, a: FieldType) -> bool:
    return not a.may_be_undef and is_empty(eng, a.ty)


TOP_RECORD = RecordAtom((), True)


def record_labels(atoms) -> list:
    return sorted({lab for a in atoms for lab, _ in a.fields})


def record_empty(eng: Engine, positives, negatives) -> bool:
    """Is the intersection of the positive record atoms minus the negative ones empty?

    Checks, for every assignment of each negative atom either to one explicit
    label or to the default tail, that some label (or the tail) is fully
    covered by the negatives assigned to it.
    """
    positives = tuple(positives) or (TOP_RECORD,)
    negatives = tuple(negatives)
    labels = record_labels(positives + negatives)
    meet = {}
    for lab in labels:
        f = field_of(eng, positives[0], lab)
        for a in positives[1:]:
            f = field_inter(eng, f, field_of(eng, a, lab))
        if field_is_empty(eng, f):
            return True
        meet[lab] = f
    tail = FieldType(eng.ANY if all(a.open for a in positives) else eng.EMPTY, True)
    choices = labels + [None]
    for assignment in itertools.product(choices, repeat=len(negatives)):
        covered = False
        for lab in labels:
            cover = FieldType(eng.EMPTY, False)
            for n, where in zip(negatives, assignment):
                if where == lab:
                    cover = field_union(eng, cover, field_of(eng, n, lab))
            if field_subtype(eng, meet[lab], cover):
                covered = True
                break
        if not covered:
            covered = any(where is None and field_subtype(eng, tail, default_field(eng, n))
                          for n, where in zip(negatives, assignment))
        if not covered:
            return False
    return True
