import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stt.core import FieldType
from stt.errors import (AmbiguityError, ArgumentTypeError, NotAFunction, NotAPair,
                        NotARecord, PossiblyUndefinedField, ResourceError,
                        SpecializationError, StaticTypeError, UnboundVar)
from stt.oracle import Universe, UniverseSpec, member
from stt.syntax import parse_expr
from stt.syntax import typeexpr as T
from stt.typecheck import Checker
from stt.values import PairV
from stt.witness import sample

from support import arrow_intersections, new_engine, ty, types


@pytest.fixture
def chk(eng):
    return Checker(eng)


def eq(chk, a, b):
    if isinstance(b, str):
        b = ty(chk.eng, b)
    return chk.eng.equiv(a, b)


def type_of(chk, src):
    return chk.type_of(parse_expr(src))


A, B, I = "[0..4]", "[5..9]", "[0..9]"


class TestTypeOf:
    @pytest.mark.parametrize("src, expected", [
        ("(3, `a)", "([3..3], `a)"),
        ("fun (x: Int): Int { x }", "Int -> Int"),
        ("fun (x: Int ;; y: Int): Int { x }", "Int -> (Int -> Int)"),
        ("fun (x: Int, y: `a) { (y, x) }", "(Int, `a) -> (`a, Int)"),
        ("(1, `a)[1]", "`a"),
        ("{a => 1} + {a => `t}", "{a : `t}"),
        ("({a => 1} + {b => 2}) \\ a", "{b : [2..2]}"),
        ("({a => 1} + {b => 2})<b>", "[2..2]"),
        ("let f = fun (x: Int ;; y: `a) : `a { y } in f(3)", "`a -> `a"),
        ("let f = fun (x: Int ;; y: `a) : `a { y } in f(3)(`a)", "`a"),
        ("{}", "{}"),
    ])
    def test_examples(self, chk, src, expected):
        assert eq(chk, type_of(chk, src), expected)

    def test_intersection_annotation(self, chk):
        t = type_of(chk, "let h : (Int -> Int) & (`a -> `a) = fun (x: Int | `a) { x } in h")
        assert eq(chk, t, "(Int -> Int) & (`a -> `a)")

    def test_annotation_rechecked_per_conjunct(self, chk):
        with pytest.raises(StaticTypeError):
            type_of(chk, "let h : (Int -> `a) & (`a -> `a) = fun (x: Int | `a) { x } in h")

    def test_return_annotation_checked(self, chk):
        with pytest.raises(StaticTypeError) as info:
            type_of(chk, "fun (x: Int): [0..*] { x }")
        assert info.value.witness == "-1"

    def test_errors(self, chk):
        with pytest.raises(UnboundVar):
            type_of(chk, "y")
        with pytest.raises(NotAFunction):
            type_of(chk, "3(4)")
        with pytest.raises(NotAPair):
            type_of(chk, "3[0]")
        with pytest.raises(NotARecord):
            type_of(chk, "(1, 2)<a>")
        with pytest.raises(ArgumentTypeError) as info:
            type_of(chk, "(fun (x: [0..3]) { x })(7)")
        assert info.value.witness == "7"

    def test_recursive_binding(self, chk):
        src = ("let len : (rec L = `nil | (Int, L)) -> [0..*] = "
               "fun (l: rec L = `nil | (Int, L)) : [0..*] { len(l[1]) } in len")
        with pytest.raises(NotAPair):
            type_of(chk, src)
        ok = ("let loop : Int -> `done = fun (x: Int) : `done { loop(x) } in loop(3)")
        assert eq(chk, type_of(chk, ok), "`done")


class TestMulti:
    def branches(self, chk, pairs):
        return [(ty(chk.eng, d), ty(chk.eng, c)) for d, c in pairs]

    def test_ambiguity(self, chk):
        bs = self.branches(chk, [(f"({A}, {I})", "[0..1]"), (f"({I}, {B})", "[0..1]")])
        with pytest.raises(AmbiguityError) as info:
            chk.check_multi(bs)
        err = info.value
        assert (err.i, err.j) == (1, 2)
        overlap = ty(chk.eng, f"({A}, {B})")
        w = sample(chk.eng, overlap)
        assert err.witness == str(w) and member(w, overlap, engine=chk.eng)

    def test_third_branch_resolves(self, chk):
        bs = self.branches(chk, [(f"({A}, {I})", "[0..1]"), (f"({I}, {B})", "[0..1]"),
                                 (f"({A}, {B})", "[0..1]")])
        t = chk.check_multi(bs)
        expected = chk.eng.inter_all(chk.eng.arrow(d, c) for d, c in bs)
        assert t == expected
        assert eq(chk, chk.dom(t), f"({A}, {I}) | ({I}, {B})")

    def test_specialization(self, chk):
        bs = self.branches(chk, [("Int", "[1..1]"), (A, "Int")])
        with pytest.raises(SpecializationError) as info:
            chk.check_multi(bs)
        assert (info.value.i, info.value.j) == (2, 1)

    def test_equivalent_domains_are_not_ambiguous_with_themselves(self, chk):
        bs = self.branches(chk, [("[0..1]", "`a"), ("[0..0] | [1..1]", "`a")])
        with pytest.raises(AmbiguityError):
            chk.check_multi(bs)

    def test_multi_expression(self, chk):
        t = type_of(chk, "multi { (x: Int) : Int { x } ; (x: `t | `f) : `t | `f { x } }")
        assert eq(chk, t, "(Int -> Int) & (`t | `f -> `t | `f)")

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.tuples(types(records=False, max_leaves=4),
                              types(records=False, max_leaves=4)), min_size=1, max_size=3))
    def test_accepted_multis_obey_laws(self, pairs):
        eng = new_engine()
        chk = Checker(eng)
        bs = [(eng.norm(d), eng.norm(c)) for d, c in pairs]
        try:
            t = chk.check_multi(bs)
        except (AmbiguityError, SpecializationError):
            return
        assert eng.equiv(chk.dom(t), eng.union_all(d for d, _ in bs))
        for si, ti in bs:
            if not eng.is_empty(si):
                assert eng.is_subtype(chk.apply(t, si), ti)


class TestDomApply:
    def test_dom(self, chk):
        assert eq(chk, chk.dom(ty(chk.eng, f"({A} -> `s) & ({B} -> `t)")), f"{A} | {B}")
        assert eq(chk, chk.dom(ty(chk.eng, "([1..4] -> `s) | ([2..6] -> `t)")), "[2..4]")
        assert eq(chk, chk.dom(chk.eng.ANY_ARROW), "Empty")
        with pytest.raises(NotAFunction):
            chk.dom(ty(chk.eng, "Int"))

    def test_apply_examples(self, chk):
        f = ty(chk.eng, f"(({A}, {I}) -> ([0..0], {I})) & (({I}, {B}) -> ({I}, [1..1]))")
        assert eq(chk, chk.apply(f, ty(chk.eng, f"({A}, {B})")), "([0..0], [1..1])")
        assert eq(chk, chk.apply(f, ty(chk.eng, f"({A}, {A})")), f"([0..0], {I})")
        g = ty(chk.eng, f"(({A}, {I}) -> [0..0]) | (({I}, {B}) -> [1..1])")
        assert eq(chk, chk.apply(g, ty(chk.eng, f"({A}, {B})")), "[0..0] | [1..1]")

    def test_apply_empty_argument(self, chk):
        assert chk.apply(ty(chk.eng, "Int -> Int"), chk.eng.EMPTY) == chk.eng.EMPTY

    def test_negative_arrows_ignored(self, chk):
        f = ty(chk.eng, "(Int -> Int) \\ ([0..0] -> [0..0])")
        assert eq(chk, chk.apply(f, ty(chk.eng, "[0..0]")), "Int")

    def test_resource_cap(self, chk):
        f = chk.eng.inter_all(chk.eng.arrow(chk.eng.singleton(i), chk.eng.singleton(i))
                              for i in range(13))
        with pytest.raises(ResourceError):
            chk.apply(f, chk.eng.singleton(0))

    @settings(max_examples=150, deadline=None)
    @given(arrow_intersections(), st.data())
    def test_apply_is_monotone(self, f, data):
        eng = new_engine()
        chk = Checker(eng)
        tf = eng.norm(f)
        d = chk.dom(tf)
        pieces = [eng.singleton(n) for n in range(-3, 4)] + [eng.tag(x) for x in "abc"]
        small = eng.union_all(p for p in pieces if data.draw(st.booleans()))
        big = eng.union(small, eng.union_all(p for p in pieces if data.draw(st.booleans())))
        ta, tb = eng.inter(small, d), eng.inter(big, d)
        assert eng.is_subtype(chk.apply(tf, ta), chk.apply(tf, tb))

    @settings(max_examples=150, deadline=None)
    @given(arrow_intersections(), st.integers(-3, 3) | st.sampled_from("abc"))
    def test_apply_is_sound_pointwise(self, f, point):
        # each arrow whose domain holds the point constrains the result
        eng = new_engine()
        chk = Checker(eng)
        tf = eng.norm(f)
        x = eng.singleton(point) if isinstance(point, int) else eng.tag(point)
        if not eng.is_subtype(x, chk.dom(tf)):
            return
        arrows = [f] if isinstance(f, T.Arrow) else list(_conjuncts(f))
        expected = eng.inter_all(eng.norm(a.cod) for a in arrows
                                 if eng.is_subtype(x, eng.norm(a.dom)))
        assert eng.equiv(chk.apply(tf, x), expected)


def _conjuncts(t):
    if isinstance(t, T.Inter):
        yield from _conjuncts(t.l)
        yield from _conjuncts(t.r)
    else:
        yield t


PAIRS = [v for v in Universe(UniverseSpec(("a", "b"), (-3, 3), 2, ())).values
         if isinstance(v, PairV)]


class TestProj:
    def test_examples(self, chk):
        assert eq(chk, chk.proj(ty(chk.eng, "(Int, `a)"), 0), "Int")
        assert eq(chk, chk.proj(ty(chk.eng, "([0..1], `a) | (`c, `d)"), 0), "[0..1] | `c")
        t = ty(chk.eng, "(Int, Int) & not (Int, [0..*])")
        assert eq(chk, chk.proj(t, 1), "[*..-1]")
        assert eq(chk, chk.proj(t, 0), "Int")

    @settings(max_examples=150, deadline=None)
    @given(types(records=False, max_leaves=8))
    def test_sound_against_oracle(self, t):
        eng = new_engine()
        chk = Checker(eng)
        x = eng.inter(eng.norm(t), eng.ANY_PROD)
        p0, p1 = chk.proj(x, 0), chk.proj(x, 1)
        for v in PAIRS:
            if member(v, T.Inter(t, T.Prod(T.Any(), T.Any()))):
                assert member(v.fst, p0, engine=eng) and member(v.snd, p1, engine=eng)


class TestRecords:
    def test_concat_identities(self, chk):
        t = chk.rec_concat(ty(chk.eng, "{a : Int, b : Int}"), ty(chk.eng, "{a ?: `true | `false}"))
        assert eq(chk, t, "{a : Int | `true | `false, b : Int}")
        t = chk.rec_concat(ty(chk.eng, "{a : Int}"), ty(chk.eng, "{..}"))
        assert eq(chk, t, "{a : Any, ..}")

    def test_concat_is_merge_with_absent(self, chk):
        r1, r2 = ty(chk.eng, "{a : Int, b ?: `x}"), ty(chk.eng, "{b : `y, c ?: Int}")
        absent = FieldType(chk.eng.EMPTY, True)
        assert chk.rec_concat(r1, r2) == chk.rec_merge(r2, r1, absent)

    def test_delete(self, chk):
        assert eq(chk, chk.rec_delete(ty(chk.eng, "{..}"), "a"), "{a ?: Empty, ..}")
        assert eq(chk, chk.rec_delete(ty(chk.eng, "{a : Int, b : `x}"), "a"), "{b : `x}")

    def test_select(self, chk):
        assert eq(chk, chk.rec_select(ty(chk.eng, "{a : [1..1]}"), "a"), "[1..1]")
        t = ty(chk.eng, "{a : Int} | {a : `true | `false}")
        assert eq(chk, chk.rec_select(t, "a"), "Int | `true | `false")
        with pytest.raises(PossiblyUndefinedField) as info:
            chk.rec_select(ty(chk.eng, "{a : Int} | {b : Int}"), "a")
        assert info.value.label == "a"

    def test_open_positive_closed_negative(self, chk):
        t = ty(chk.eng, "{a : Int, ..} \\ {a : Int}")
        assert eq(chk, chk.rec_select(t, "a"), "Int")

    FIELDS = ["none", "[0..1]", "? `x", "? [5..6]", "`y"]

    @pytest.mark.parametrize("f1, f2", list(itertools.product(FIELDS, FIELDS)))
    def test_concat_three_outcomes(self, chk, f1, f2):
        eng = chk.eng

        def field(f):
            if f == "none":
                return FieldType(eng.EMPTY, True)
            if f.startswith("?"):
                return FieldType(ty(eng, f[2:]), True)
            return FieldType(ty(eng, f), False)

        a1, a2 = field(f1), field(f2)
        r1 = eng.record({"l": a1}) if f1 != "none" else eng.record({})
        r2 = eng.record({"l": a2}) if f2 != "none" else eng.record({})
        if not a2.may_be_undef:
            expected = a2
        elif a2.ty == eng.EMPTY:
            expected = a1
        else:
            expected = FieldType(eng.union(a2.ty, a1.ty), a1.may_be_undef)
        want = eng.record({"l": expected}) if expected != FieldType(eng.EMPTY, True) \
            else eng.record({})
        assert eng.equiv(chk.rec_concat(r1, r2), want)
