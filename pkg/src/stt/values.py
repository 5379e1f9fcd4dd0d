"""Run-time values.  Integers are plain Python ints."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TagV:
    name: str

    def __str__(self):
        return "`" + self.name


@dataclass(frozen=True)
class PairV:
    fst: object
    snd: object

    def __str__(self):
        return f"({render(self.fst)}, {render(self.snd)})"


@dataclass(frozen=True)
class RecV:
    """Record value; ``fields`` is a tuple of (label, value) sorted by label."""

    fields: tuple = ()

    @classmethod
    def of(cls, mapping):
        return cls(tuple(sorted(mapping.items())))

    def as_dict(self):
        return dict(self.fields)

    def __str__(self):
        return "{" + ", ".join(f"{k}={render(v)}" for k, v in self.fields) + "}"


@dataclass(frozen=True)
class FunStub:
    """Symbolic inhabitant of a function type."""

    text: str

    def __str__(self):
        return f"<fun: {self.text}>"


@dataclass(eq=False)
class Closure:
    params: tuple
    returns: object
    body: object
    env: dict
    ty: int
    name: str | None = None

    def __str__(self):
        return "<closure>"


@dataclass(eq=False)
class MultiClosure:
    branches: tuple
    domains: tuple
    env: dict
    ty: int
    name: str | None = None

    def __str__(self):
        return "<multi>"


def render(v) -> str:
    if isinstance(v, bool):
        raise TypeError("booleans are not values")
    if isinstance(v, int):
        return str(v)
    return str(v)


def is_first_order(v) -> bool:
    if isinstance(v, int) or isinstance(v, TagV):
        return True
    if isinstance(v, PairV):
        return is_first_order(v.fst) and is_first_order(v.snd)
    if isinstance(v, RecV):
        return all(is_first_order(x) for _, x in v.fields)
    return False


def depth(v) -> int:
    if isinstance(v, PairV):
        return 1 + max(depth(v.fst), depth(v.snd))
    if isinstance(v, RecV):
        return 1 + max((depth(x) for _, x in v.fields), default=0)
    return 0
