"""Command-line front end: ``stt subtype|check|type|empty|sample|sweep|repl``.

Exit codes: 0 success or true, 1 a checked negative answer (false, type
error found, counterexample), 2 an operational error (unreadable file,
syntax error, bad flags).
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import EngineConfig
from .errors import SttError
from .oracle import ReportedCounterexample, Universe, UniverseSpec, soundness_sweep
from .session import Session
from .syntax import parse_type
from .values import render
from .witness import sample

OK, NEGATIVE, FAILURE = 0, 1, 2


def _config(args) -> EngineConfig:
    return EngineConfig(memo=not args.no_memo,
                        strict_subset_opt=not args.no_strict_subset_opt,
                        early_cutoff=args.early_cutoff)


def _session(args, evaluate=True) -> Session:
    s = Session(_config(args), evaluate=evaluate)
    if getattr(args, "load", None):
        with open(args.load, encoding="utf-8") as fh:
            s.run_source(fh.read())
    return s


def error_record(err: Exception, filename=None) -> dict:
    pos = getattr(err, "site", None) or getattr(err, "position", None)
    kind = "io" if isinstance(err, OSError) else getattr(err, "kind", "error")
    rec = {"kind": kind, "message": getattr(err, "message", str(err)),
           "line": pos[0] if pos else None, "col": pos[1] if pos else None}
    for key in ("expected", "found", "witness"):
        val = getattr(err, key, None)
        if isinstance(val, tuple):
            val = " or ".join(val) or "end of input"
        rec[key] = val if val is None or isinstance(val, str) else str(val)
    if filename:
        rec["file"] = filename
    return rec


def format_error(rec: dict) -> str:
    where = ""
    if rec.get("file"):
        where = rec["file"] + ":"
    if rec.get("line") is not None:
        where += f"{rec['line']}:{rec['col']}:"
    head = f"{where} " if where else ""
    lines = [f"{head}error[{rec['kind']}]: {rec['message']}"]
    for key in ("expected", "found", "witness"):
        if rec.get(key) is not None and rec["kind"] != "syntax":
            lines.append(f"  {key}: {rec[key]}")
    return "\n".join(lines)


class Reporter:
    def __init__(self, args, command):
        self.json = args.json
        self.doc = {"command": command}

    def say(self, text):
        if not self.json:
            print(text)

    def finish(self, code, **fields):
        self.doc.update(fields)
        self.doc["exit_code"] = code
        if self.json:
            print(json.dumps(self.doc, indent=2, sort_keys=True))
        return code

    def fail(self, err, filename=None):
        rec = error_record(err, filename)
        if not self.json:
            print(format_error(rec), file=sys.stderr)
        return self.finish(FAILURE, verdict=None, errors=[rec])


# -- commands ---------------------------------------------------------------------

def cmd_subtype(args) -> int:
    rep = Reporter(args, "subtype")
    try:
        s = _session(args)
        left = parse_type(args.left, s.type_names)
        right = parse_type(args.right, s.type_names)
        lt, rt = s.norm(left), s.norm(right)
    except (SttError, OSError) as err:
        return rep.fail(err)
    eng = s.eng
    verdict = eng.is_subtype(lt, rt)
    witness = None
    if not verdict and args.witness:
        witness = render(sample(eng, eng.diff(lt, rt)))
    rep.say("[DEBUG:subtype]")
    rep.say(f"{eng.show(lt)} <= {eng.show(rt)}")
    rep.say(f": {'true' if verdict else 'false'}")
    if witness is not None:
        rep.say(f"witness: {witness}")
    return rep.finish(OK if verdict else NEGATIVE, left=eng.show(lt), right=eng.show(rt),
                      verdict=verdict, witness=witness)


def cmd_check(args) -> int:
    rep = Reporter(args, "check")
    rep.doc["file"] = args.file
    try:
        with open(args.file, encoding="utf-8") as fh:
            src = fh.read()
        s = Session(_config(args), evaluate=args.eval)
        outcomes = s.run_source(src)
    except (SttError, OSError) as err:
        return rep.fail(err, args.file)
    bindings, errors = [], []
    for o in outcomes:
        if o.error is not None:
            rec = error_record(o.error, args.file)
            if rec["line"] is None and o.pos:
                rec["line"], rec["col"] = o.pos
            if o.name:
                rec["binding"] = o.name
            errors.append(rec)
            if not rep.json:
                print(format_error(rec), file=sys.stderr)
            continue
        entry = {"name": o.name, "type": o.type}
        if args.eval:
            entry["value"] = o.value
        bindings.append(entry)
        label = o.name if o.name is not None else "-"
        rep.say(f"{label} : {o.type}" + (f" = {o.value}" if args.eval else ""))
    return rep.finish(NEGATIVE if errors else OK, verdict=not errors, bindings=bindings,
                      errors=errors)


def cmd_type(args) -> int:
    rep = Reporter(args, "type")
    rep.doc["expr"] = args.expr
    try:
        s = _session(args)
        outcomes = s.run_source(args.expr)
    except (SttError, OSError) as err:
        return rep.fail(err)
    errors = [error_record(o.error) for o in outcomes if o.error is not None]
    if errors:
        for rec in errors:
            if not rep.json:
                print(format_error(rec), file=sys.stderr)
        return rep.finish(NEGATIVE, verdict=False, errors=errors)
    last = outcomes[-1] if outcomes else None
    if last is not None:
        rep.say(f"{last.value} : {last.type}")
    return rep.finish(OK, verdict=True, type=last and last.type, value=last and last.value,
                      errors=[])


def _one_type(args, command):
    rep = Reporter(args, command)
    try:
        s = _session(args)
        t = s.norm(parse_type(args.type, s.type_names))
    except (SttError, OSError) as err:
        return rep, err, None
    rep.doc["type"] = s.eng.show(t)
    return rep, s, t


def cmd_empty(args) -> int:
    rep, s, t = _one_type(args, "empty")
    if t is None:
        return rep.fail(s)
    verdict = s.eng.is_empty(t)
    rep.say("true" if verdict else "false")
    return rep.finish(OK if verdict else NEGATIVE, verdict=verdict)


def cmd_sample(args) -> int:
    rep, s, t = _one_type(args, "sample")
    if t is None:
        return rep.fail(s)
    v = sample(s.eng, t)
    rep.say("none (the type is empty)" if v is None else render(v))
    return rep.finish(NEGATIVE if v is None else OK, verdict=v is not None,
                      witness=None if v is None else render(v))


def cmd_sweep(args) -> int:
    rep = Reporter(args, "sweep")
    try:
        spec = UniverseSpec.parse(args.universe or "")
        s = _session(args)
        left = parse_type(args.left, s.type_names)
        right = parse_type(args.right, s.type_names)
    except (SttError, OSError, ValueError) as err:
        return rep.fail(err)
    universe = Universe(spec)
    rep.doc["universe"] = {"tags": list(spec.tags), "ints": list(spec.ints),
                           "depth": spec.depth, "labels": list(spec.labels),
                           "size": len(universe)}
    try:
        report = soundness_sweep(s.eng, left, right, universe, s.type_decls,
                                 s.checker.types)
    except ReportedCounterexample as err:
        rep.say(f"counterexample: {err}")
        return rep.finish(NEGATIVE, verdict=False, counterexample=str(err))
    w = None if report.witness is None else render(report.witness)
    rep.say(f"subtype: {'true' if report.subtype else 'false'}; "
            f"{len(universe)} values, no counterexample"
            + (f"; witness {w} validated" if w else ""))
    return rep.finish(OK, verdict=True, subtype=report.subtype, witness=w)


# -- REPL ---------------------------------------------------------------------------

def repl_line(s: Session, line: str, out=print) -> bool:
    """Handle one REPL line; returns False when the session should end."""
    line = line.strip()
    if not line or line.startswith("//"):
        return True
    try:
        if line.startswith(":"):
            cmd, _, rest = line.partition(" ")
            if cmd in (":quit", ":q"):
                return False
            if cmd == ":subtype":
                if "<=" not in rest:
                    out("usage: :subtype T1 <= T2")
                    return True
                a, b = rest.split("<=", 1)
                lt = s.norm(parse_type(a, s.type_names))
                rt = s.norm(parse_type(b, s.type_names))
                out("true" if s.eng.is_subtype(lt, rt) else "false")
            elif cmd == ":empty":
                out("true" if s.eng.is_empty(s.norm(parse_type(rest, s.type_names))) else "false")
            elif cmd == ":sample":
                v = sample(s.eng, s.norm(parse_type(rest, s.type_names)))
                out("none" if v is None else render(v))
            else:
                out(f"unknown directive {cmd}; try :subtype, :empty, :sample, :quit")
            return True
        for o in s.run_source(line):
            if o.error is not None:
                out(format_error(error_record(o.error)))
            elif o.name is not None:
                out(f"{o.name} : {o.type}")
            else:
                out(f"{o.value} : {o.type}")
    except SttError as err:
        out(format_error(error_record(err)))
    return True


def cmd_repl(args) -> int:
    s = _session(args)
    interactive = sys.stdin.isatty()
    while True:
        if interactive:
            print("# ", end="", flush=True)
        line = sys.stdin.readline()
        if not line or not repl_line(s, line):
            return OK


# -- entry point ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON document")
    common.add_argument("--no-memo", action="store_true",
                        help="disable the persistent emptiness cache")
    common.add_argument("--no-strict-subset-opt", action="store_true",
                        help="check the full positive set in arrow emptiness")
    common.add_argument("--early-cutoff", action="store_true",
                        help="enable early exits in arrow emptiness")
    common.add_argument("--load", metavar="FILE", help="declarations to load first")

    p = argparse.ArgumentParser(prog="stt", description="Set-theoretic type checker.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("subtype", parents=[common], help="decide T1 <= T2")
    q.add_argument("left")
    q.add_argument("right")
    q.add_argument("--witness", action="store_true", help="show a value of T1 \\ T2")
    q.set_defaults(func=cmd_subtype)

    q = sub.add_parser("check", parents=[common], help="type-check a .stt file")
    q.add_argument("file")
    q.add_argument("--eval", action="store_true", help="also evaluate each binding")
    q.set_defaults(func=cmd_check)

    q = sub.add_parser("type", parents=[common], help="type (and run) an expression")
    q.add_argument("expr")
    q.set_defaults(func=cmd_type)

    q = sub.add_parser("empty", parents=[common], help="is the type empty?")
    q.add_argument("type")
    q.set_defaults(func=cmd_empty)

    q = sub.add_parser("sample", parents=[common], help="print a value of the type")
    q.add_argument("type")
    q.set_defaults(func=cmd_sample)

    q = sub.add_parser("sweep", parents=[common],
                       help="cross-check T1 <= T2 against enumerated values")
    q.add_argument("left")
    q.add_argument("right")
    q.add_argument("--universe", metavar="SPEC",
                   help="e.g. tags=3,ints=-3..3,depth=2,labels=2")
    q.set_defaults(func=cmd_sweep)

    q = sub.add_parser("repl", parents=[common], help="interactive toplevel")
    q.set_defaults(func=cmd_repl)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return FAILURE if exc.code else OK
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
