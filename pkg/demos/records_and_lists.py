"""Recursive list types and record operations, with values checked against their types.

Run with ``python demos/records_and_lists.py``.
"""

from stt import Session, parse_type
from stt.oracle import Universe, member, soundness_sweep
from stt.witness import sample
from stt.values import render

SOURCE = """
type Nat = [0..*]
type List = `nil | (Int, List)
type NatList = `nil | (Nat, NatList)

let xs : NatList = (1, (2, `nil))
let r = {name => `ada, age => 36}
let older = r + {age => 37}
let anon = r \\ name
"""


def main():
    s = Session()
    for out in s.run_source(SOURCE):
        print(f"{out.name} : {out.type} = {out.value}")
        assert member(out.raw, out.type_id, engine=s.eng)

    eng = s.eng
    lst, nats = s.norm(parse_type("List", s.type_names)), s.norm(parse_type("NatList", s.type_names))
    print("NatList <= List:", eng.is_subtype(nats, lst))
    print("List <= NatList:", eng.is_subtype(lst, nats))
    print("  a list of ints that is not a list of naturals:", render(sample(eng, eng.diff(lst, nats))))
    print("infinite lists are empty:", eng.is_empty(s.norm(parse_type("rec X = (Int, X)"))))

    # Cross-check a verdict against every value of a small finite universe.
    universe = Universe()
    report = soundness_sweep(eng, parse_type("{age : Nat, ..}", s.type_names),
                             parse_type("{age : Int, ..}"), universe,
                             s.type_decls, s.checker.types)
    print(f"sweep over {len(universe)} values: subtype={report.subtype}, no counterexample")


if __name__ == "__main__":
    main()
