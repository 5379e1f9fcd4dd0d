"""Helpers shared by the test modules: engine configs, type builders, generators."""

from __future__ import annotations

import os
import random

from hypothesis import strategies as st

from stt.core import Engine, EngineConfig
from stt.syntax import parse_type
from stt.syntax import typeexpr as T

CONFIGS = {
    "default": EngineConfig(),
    "no-memo": EngineConfig(memo=False),
    "no-strict-subset-opt": EngineConfig(strict_subset_opt=False),
    "early-cutoff": EngineConfig(early_cutoff=True),
}


def active_config() -> EngineConfig:
    """Config selected by STT_TEST_CONFIG, so the whole suite can be rerun per variant."""
    return CONFIGS[os.environ.get("STT_TEST_CONFIG", "default")]


def new_engine(config=None) -> Engine:
    return Engine(config or active_config())


def ty(eng: Engine, src: str) -> int:
    return eng.norm(parse_type(src))


# -- random type trees ------------------------------------------------------------

TAGS = ("a", "b", "c")
LABELS = ("x", "y")
BOUNDS = (None, -3, -2, -1, 0, 1, 2, 3)


def random_interval(rng: random.Random) -> T.Interval:
    lo, hi = rng.choice(BOUNDS), rng.choice(BOUNDS)
    if lo is not None and hi is not None and lo > hi:
        lo, hi = hi, lo
    return T.Interval(lo, hi)


def random_type(rng: random.Random, depth: int, arrows: bool = False) -> T.TypeExpr:
    """A type tree of at most ``depth`` constructor levels, constants in the default universe."""
    leaves = ["tag", "int", "int", "any", "empty"]
    if depth <= 0:
        kind = rng.choice(leaves)
    else:
        kind = rng.choice(leaves + ["prod", "prod", "rec", "union", "union", "inter",
                                    "neg", "diff", "list"] + (["arrow"] if arrows else []))
    sub = lambda: random_type(rng, depth - 1, arrows)
    if kind == "tag":
        return T.Tag(rng.choice(TAGS))
    if kind == "int":
        return random_interval(rng)
    if kind == "any":
        return T.Any()
    if kind == "empty":
        return T.Empty()
    if kind == "prod":
        return T.Prod(sub(), sub())
    if kind == "arrow":
        return T.Arrow(sub(), sub())
    if kind == "rec":
        labels = rng.sample(LABELS, rng.randint(0, len(LABELS)))
        fields = tuple(T.Field(lab, sub(), rng.random() < 0.3) for lab in sorted(labels))
        return T.Record(fields, rng.random() < 0.5)
    if kind == "union":
        return T.Union(sub(), sub())
    if kind == "inter":
        return T.Inter(sub(), sub())
    if kind == "neg":
        return T.Neg(sub())
    if kind == "diff":
        return T.Diff(sub(), sub())
    return T.Rec("L", T.Union(T.Tag(rng.choice(TAGS)), T.Prod(sub(), T.Var("L"))))


# -- hypothesis strategies --------------------------------------------------------

def _intervals():
    return st.tuples(st.sampled_from(BOUNDS), st.sampled_from(BOUNDS)).map(
        lambda p: T.Interval(*sorted(p)) if None not in p else T.Interval(*p))


def _leaves():
    return st.one_of(st.sampled_from(TAGS).map(T.Tag), _intervals(),
                     st.just(T.Any()), st.just(T.Empty()))


def _records(children):
    field = st.tuples(children, st.booleans())
    return st.tuples(st.dictionaries(st.sampled_from(LABELS), field, max_size=2),
                     st.booleans()).map(
        lambda p: T.Record(tuple(T.Field(k, t, o) for k, (t, o) in sorted(p[0].items())), p[1]))


def types(arrows: bool = False, records: bool = True, max_leaves: int = 12):
    def extend(children):
        options = [
            st.builds(T.Prod, children, children),
            st.builds(T.Union, children, children),
            st.builds(T.Inter, children, children),
            st.builds(T.Neg, children),
        ]
        if arrows:
            options.append(st.builds(T.Arrow, children, children))
        if records:
            options.append(_records(children))
        return st.one_of(*options)
    return st.recursive(_leaves(), extend, max_leaves=max_leaves)


def arrow_types(max_leaves: int = 8):
    """Types mixing arrows with everything else."""
    return types(arrows=True, records=False, max_leaves=max_leaves)


def arrow_intersections():
    """Intersections of 1..3 arrows over interval/tag types."""
    simple = st.one_of(_intervals(), st.sampled_from(TAGS).map(T.Tag))
    arrow = st.builds(T.Arrow, simple, simple)
    return st.lists(arrow, min_size=1, max_size=3).map(T.inters)
