"""Checking and running declarations one after another, sharing state."""

from __future__ import annotations

from collections import ChainMap
from dataclasses import dataclass, field

from .core import Engine, EngineConfig
from .errors import SttError
from .evaluator import Evaluator
from .syntax import expr as E
from .syntax import parse_program
from .typecheck import Checker
from .values import render


@dataclass
class Outcome:
    """Result of one top-level item: a binding, an expression, or an error."""

    name: str | None
    type: str | None = None
    value: str | None = None
    error: SttError | None = None
    pos: tuple | None = None
    type_id: int | None = field(default=None, repr=False)
    raw: object = field(default=None, repr=False)


class Session:
    def __init__(self, config: EngineConfig | None = None, evaluate: bool = True):
        self.eng = Engine(config)
        self.checker = Checker(self.eng)
        self.evaluator = Evaluator(self.checker)
        self.type_decls: dict = {}
        self.tenv = ChainMap()
        self.venv: dict = {}
        self.evaluate = evaluate

    @property
    def type_names(self):
        return self.type_decls.keys()

    def declare_types(self, decls: dict):
        self.checker.types = self.eng.declare(decls, self.checker.types)
        self.type_decls.update(decls)

    def norm(self, texpr) -> int:
        return self.eng.norm(texpr, self.checker.types)

    def run_source(self, src: str) -> list:
        prog = parse_program(src, self.type_names)
        if prog.types:
            self.declare_types(prog.types)
        return [self.run_item(item) for item in prog.items
                if not isinstance(item, E.TypeDecl)]

    def _render(self, raw):
        return render(raw) if self.evaluate else None

    def run_item(self, item) -> Outcome:
        try:
            if isinstance(item, E.LetDecl):
                t = self.checker.bind(item.name, item.ty, item.bound, self.tenv)
                raw = None
                if self.evaluate:
                    self.venv = self.evaluator.bind(item.name, item.ty, item.bound, self.venv)
                    raw = self.venv[item.name]
                self.tenv = self.tenv.new_child({item.name: t})
                return Outcome(item.name, self.eng.show(t), self._render(raw), pos=item.pos,
                               type_id=t, raw=raw)
            t = self.checker.type_of(item.e, self.tenv)
            raw = self.evaluator.eval(item.e, self.venv) if self.evaluate else None
            return Outcome(None, self.eng.show(t), self._render(raw), pos=item.pos,
                           type_id=t, raw=raw)
        except SttError as err:
            return Outcome(getattr(item, "name", None), error=err, pos=item.pos)
