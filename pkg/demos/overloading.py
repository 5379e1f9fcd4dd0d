"""Walk through intersection types for overloaded functions.

Run with ``python demos/overloading.py``.
"""

from stt import Session, parse_type
from stt.witness import sample
from stt.values import render

SOURCE = """
type A = [0..4]
type B = [5..9]
type I = [0..9]

multi pick {
  (x: A, y: I) : [0..1] { 0 } ;
  (x: I, y: B) : [0..1] { 1 } ;
  (x: A, y: B) : [0..1] { 1 }
}
"""


def main():
    s = Session()
    for out in s.run_source(SOURCE):
        if out.name:
            print(f"{out.name} : {out.type}")

    # Each call picks the branch with the least domain holding the argument.
    for expr in ("pick((2, 2))", "pick((7, 7))", "pick((2, 7))"):
        [out] = s.run_source(expr)
        print(f"{expr:14} = {out.value} : {out.type}")

    # Drop the third branch and the overlap between the first two is reported.
    [bad] = Session().run_source(SOURCE.replace(" ;\n  (x: A, y: B) : [0..1] { 1 }", ""))
    print(f"without the third branch: {bad.error}")
    print(f"  a value in both domains: {bad.error.witness}")

    eng = s.eng
    f = s.norm(parse_type("(([0..0] -> [1..1]) & ([1..1] -> [0..0]))"))
    g = s.norm(parse_type("[0..1] -> [0..1]"))
    print("negation-like table <= [0..1] -> [0..1]:", eng.is_subtype(f, g))
    print("and the converse:", eng.is_subtype(g, f))
    print("  a function in the difference:", render(sample(eng, eng.diff(g, f))))


if __name__ == "__main__":
    main()
