"""Exception hierarchy shared by every layer of the checker."""

from __future__ import annotations


class SttError(Exception):
    """Base class for all user-facing diagnostics."""

    kind = "error"

    def details(self) -> dict:
        return {}


class ParseError(SttError):
    kind = "syntax"

    def __init__(self, position, expected, found=None):
        self.position = position
        self.expected = tuple(expected)
        self.found = found
        line, col = position
        want = " or ".join(self.expected) if self.expected else "end of input"
        got = f", found {found!r}" if found is not None else ""
        self.message = f"expected {want}{got}"
        super().__init__(f"{line}:{col}: {self.message}")

    def details(self):
        return {"line": self.position[0], "col": self.position[1],
                "expected": list(self.expected), "found": self.found}


class ContractivityError(SttError):
    kind = "contractivity"

    def __init__(self, binder):
        self.binder = binder
        super().__init__(f"recursive type {binder!r} has a cycle that crosses no constructor")

    def details(self):
        return {"binder": self.binder}


class UnboundVar(SttError):
    kind = "unbound"

    def __init__(self, name, position=None):
        self.name = name
        self.position = position
        where = f"{position[0]}:{position[1]}: " if position else ""
        self.message = f"unbound name {name!r}"
        super().__init__(where + self.message)

    def details(self):
        return {"name": self.name}


class StaticTypeError(SttError):
    """A program was rejected by the type checker.

    ``expected``/``found`` are printed types, ``witness`` a printed value
    showing why the check failed (or None).
    """

    kind = "type"

    def __init__(self, message, site=None, expected=None, found=None, witness=None):
        self.site = site
        self.expected = expected
        self.found = found
        self.witness = witness
        super().__init__(message)

    def details(self):
        return {"expected": self.expected, "found": self.found, "witness": self.witness}


class NotAFunction(StaticTypeError):
    kind = "not-a-function"


class ArgumentTypeError(StaticTypeError):
    kind = "argument"


class NotAPair(StaticTypeError):
    kind = "not-a-pair"


class NotARecord(StaticTypeError):
    kind = "not-a-record"


class PossiblyUndefinedField(StaticTypeError):
    kind = "undefined-field"

    def __init__(self, label, atom, site=None):
        self.label = label
        self.atom = atom
        super().__init__(f"field {label!r} may be undefined in {atom}", site=site,
                         found=atom)


class AmbiguityError(StaticTypeError):
    kind = "ambiguity"

    def __init__(self, i, j, witness, site=None):
        self.i, self.j = i, j
        super().__init__(
            f"branches {i} and {j} overlap without a unique most specific branch",
            site=site, witness=witness)

    def details(self):
        return {"branches": [self.i, self.j], "witness": self.witness}


class SpecializationError(StaticTypeError):
    kind = "specialization"

    def __init__(self, i, j, expected=None, found=None, site=None):
        self.i, self.j = i, j
        super().__init__(
            f"branch {i} has a smaller domain than branch {j} but its result is not smaller",
            site=site, expected=expected, found=found)

    def details(self):
        return {"branches": [self.i, self.j], "expected": self.expected, "found": self.found}


class ResourceError(SttError):
    kind = "resource"


class EvalError(SttError):
    kind = "runtime"
