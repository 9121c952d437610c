import itertools

import pytest
from hypothesis import given, settings, strategies as st

from enriched_kernel.errors import InvalidStructure
from enriched_kernel import fincat as fc
from enriched_kernel import universal as uv


def test_walking_arrow_validates():
    C = fc.walking_arrow()
    assert len(C.objects) == 2
    assert len(C.arrow_names) == 3
    assert C.compose("a", "id_0") == "a"


def test_partial_composition_rejected():
    with pytest.raises(InvalidStructure):
        fc.FinCategory("bad", ["x", "y"],
                       [("id_x", "x", "x"), ("id_y", "y", "y"), ("f", "x", "y")],
                       {"x": "id_x", "y": "id_y"},
                       {("id_x", "id_x"): "id_x", ("id_y", "id_y"): "id_y"})


def test_misassigned_identity_rejected():
    with pytest.raises(InvalidStructure):
        fc.FinCategory("bad", ["x", "y"],
                       [("id_x", "x", "x"), ("id_y", "y", "y"), ("f", "x", "y")],
                       {"x": "id_x", "y": "f"},
                       {("id_x", "id_x"): "id_x", ("id_y", "id_y"): "id_y",
                        ("id_x", "f"): "f", ("f", "id_y"): "f"})


def test_broken_associativity_rejected():
    # one object, three non-identity arrows with a scrambled table
    elems = ["e", "p", "q"]
    table = {}
    for a in elems:
        for b in elems:
            if a == "e":
                table[(a, b)] = b
            elif b == "e":
                table[(a, b)] = a
            else:
                table[(a, b)] = "p"
    table[("p", "q")] = "q"
    table[("q", "p")] = "p"
    table[("q", "q")] = "p"  # now (q.q).q = q but q.(q.q) = p
    with pytest.raises(InvalidStructure):
        fc.monoid_category("m", elems, table, "e")


def test_enumerate_functors_counts():
    # one-object discrete -> two-object discrete: 2 functors
    one = fc.discrete_category("one", ["x"])
    two = fc.discrete_category("two", ["a", "b"])
    assert len(list(fc.enumerate_functors(one, two))) == 2
    # walking arrow -> itself: 3 functors
    W = fc.walking_arrow()
    fs = list(fc.enumerate_functors(W, W))
    assert len(fs) == 3
    # nonempty -> empty: none
    assert list(fc.enumerate_functors(one, fc.empty_category())) == []


def test_enumerate_functors_deterministic():
    W = fc.walking_arrow()
    a = [(F.omap, F.amap) for F in fc.enumerate_functors(W, W)]
    b = [(F.omap, F.amap) for F in fc.enumerate_functors(W, W)]
    assert a == b


def test_enumerate_nat_trans():
    W = fc.walking_arrow()
    idw = fc.identity_functor(W)
    # id => id on the walking arrow: exactly the identity transformation
    ts = list(fc.enumerate_nat_trans(idw, idw))
    assert len(ts) == 1
    assert ts[0].components == {"0": "id_0", "1": "id_1"}
    # F => F contains the identity for any F
    for F in fc.enumerate_functors(W, W):
        comps = [t.components for t in fc.enumerate_nat_trans(F, F)]
        assert {x: W.id_of(F.omap[x]) for x in W.objects} in comps
    # constants at non-connected objects: empty
    D = fc.discrete_category("d2", ["a", "b"])
    ca = fc.constant_functor(D, D, "a")
    cb = fc.constant_functor(D, D, "b")
    assert list(fc.enumerate_nat_trans(ca, cb)) == []


def test_functor_iso_exists():
    W = fc.walking_arrow()
    idw = fc.identity_functor(W)
    ok, wit = fc.functor_iso_exists(idw, idw)
    assert ok and wit.is_iso()
    # constants at isomorphic objects
    C = fc.poset_category("iso2", ["a", "b"], lambda x, y: True)
    ca = fc.constant_functor(C, C, "a")
    cb = fc.constant_functor(C, C, "b")
    ok, wit = fc.functor_iso_exists(ca, cb)
    assert ok and wit.components["a"] == "a<=b"
    # constants at non-isomorphic objects
    ca2 = fc.constant_functor(W, W, "0")
    cb2 = fc.constant_functor(W, W, "1")
    ok, _ = fc.functor_iso_exists(ca2, cb2)
    assert not ok


def test_comma_slice_of_walking_arrow():
    # down(Id, ob(1)) on the walking arrow: slice over the terminal end,
    # 2 objects and 1 non-identity arrow
    W = fc.walking_arrow()
    K, pA, pB = fc.comma_category(fc.identity_functor(W), fc.point_functor(W, "1"))
    assert len(K.objects) == 2
    non_id = [f for f in K.arrow_names if not K.is_identity(f)]
    assert len(non_id) == 1
    # endo-arrow comma: ob(c) down ob(c)
    K2, _, _ = fc.comma_category(fc.point_functor(W, "0"), fc.point_functor(W, "0"))
    assert len(K2.objects) == 1  # only id_0 : 0 -> 0
    # empty source gives empty comma
    E = fc.empty_category()
    Fe = fc.FunctorMap("Fe", E, W, {}, {}, validate=False)
    K3, _, _ = fc.comma_category(Fe, fc.identity_functor(W))
    assert len(K3.objects) == 0


def test_product_category():
    W = fc.walking_arrow()
    P, p1, p2 = fc.product_category(W, W)
    assert len(P.objects) == 4
    assert len(P.arrow_names) == 9
    E = fc.empty_category()
    PE, _, _ = fc.product_category(W, E)
    assert len(PE.objects) == 0
    D2 = fc.discrete_category("d2", ["a", "b"])
    D3 = fc.discrete_category("d3", ["x", "y", "z"])
    P6, _, _ = fc.product_category(D2, D3)
    assert len(P6.objects) == 6
    assert all(P6.is_identity(f) for f in P6.arrow_names)


def test_opposite_involution():
    C = fc.chain_category(3)
    assert fc.opposite(fc.opposite(C)).objects == C.objects
    assert fc.opposite(fc.opposite(C))._then == C._then


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=4))
def test_product_counts_hypothesis(n, m):
    C = fc.chain_category(n)
    D = fc.chain_category(m)
    P, _, _ = fc.product_category(C, D)
    assert len(P.objects) == n * m
    assert len(P.arrow_names) == len(C.arrow_names) * len(D.arrow_names)


# -- universal constructions ----------------------------------------------

def lattice_category():
    # the divisibility lattice on {1,2,3,6}: has binary meets/joins
    divides = lambda x, y: int(y) % int(x) == 0
    return fc.poset_category("div6", ["1", "2", "3", "6"], divides)


def test_limit_product_in_poset():
    A = lattice_category()
    shape = fc.discrete_category("sh", ["l", "r"])
    D = uv.diagram_on(shape, A, {"l": "2", "r": "3"})
    w = uv.limit_of(D)
    assert w is not None
    assert w.apex == "1"  # meet of 2 and 3 in divisibility on {1,2,3,6}
    cw = uv.colimit_of(D)
    assert cw.apex == "6"


def test_limit_absent_is_none():
    D2 = fc.discrete_category("d2", ["a", "b"])
    shape = fc.discrete_category("sh", ["l", "r"])
    D = uv.diagram_on(shape, D2, {"l": "a", "r": "b"})
    assert uv.limit_of(D) is None
    assert uv.colimit_of(D) is None


def test_pullback_against_all_cones_oracle():
    # cospan x -> z <- y inside a 5-object poset with a genuine pullback
    elems = ["p", "x", "y", "z", "q"]
    order = {("p", "x"), ("p", "y"), ("p", "z"), ("x", "z"), ("y", "z"),
             ("q", "p"), ("q", "x"), ("q", "y"), ("q", "z")}
    A = fc.poset_category("P5", elems, lambda a, b: a == b or (a, b) in order)
    sh = fc.cospan_category()
    D = uv.diagram_on(sh, A, {"x": "x", "y": "y", "z": "z"},
                      {"x<=z": "x<=z", "y<=z": "y<=z"})
    w = uv.limit_of(D)
    assert w is not None and w.apex == "p"
    # oracle: p is the largest element mapping into both x and y
    cones = list(uv.enumerate_cones(D))
    apexes = {c.apex for c in cones}
    assert apexes == {"p", "q"}
    for c in cones:
        assert w.mediate(c) is not None


def test_pushout_in_poset_against_cocones():
    elems = ["a", "x", "y", "t"]
    order = {("a", "x"), ("a", "y"), ("a", "t"), ("x", "t"), ("y", "t")}
    A = fc.poset_category("P4", elems, lambda p, q: p == q or (p, q) in order)
    sh = fc.span_category()
    D = uv.diagram_on(sh, A, {"x": "x", "y": "y", "z": "a"},
                      {"z<=x": "a<=x", "z<=y": "a<=y"})
    w = uv.colimit_of(D)
    assert w is not None and w.apex == "t"
    cocones = list(uv.enumerate_cocones(D))
    assert all(w.mediate(c) for c in cocones)


def test_empty_diagram_gives_terminal_and_initial():
    A = fc.chain_category(3)
    r = uv.family_product(A, {}, "product")
    assert r is not None and r[0] == "2"
    r = uv.family_product(A, {}, "coproduct")
    assert r is not None and r[0] == "0"


def test_family_product_cases():
    A = lattice_category()
    # singleton family: the object itself, identity leg
    obj, legs, w = uv.family_product(A, {"i": "2"}, "product")
    assert obj == "2" and legs["i"] == A.id_of("2")
    # 3-fold product equals iterated binary product up to iso
    obj3, _, _ = uv.family_product(A, {"a": "2", "b": "3", "c": "6"}, "product")
    ob_ab, _, _ = uv.family_product(A, {"a": "2", "b": "3"}, "product")
    ob_abc, _, _ = uv.family_product(A, {"x": ob_ab, "c": "6"}, "product")
    assert A.iso_objects(obj3, ob_abc)


def test_check_mono_epi():
    W = fc.walking_arrow()
    assert uv.check_mono_epi(W, "id_0") == (True, True)
    # the unique non-identity arrow of the walking arrow: no distinct
    # parallel pairs exist, so it is both monic and epic
    assert uv.check_mono_epi(W, "a") == (True, True)
    # a collapsing arrow in a parallel-pair category
    P = fc.parallel_pair_category()
    elems = ["e", "c"]
    table = {("e", "e"): "e", ("e", "c"): "c", ("c", "e"): "c", ("c", "c"): "c"}
    M = fc.monoid_category("collapse", elems, table, "e")
    # glue: category with 0 =u,v=> 1 -c-> 2 where c.u = c.v
    objs = ["0", "1"]
    arrows = [("id_0", "0", "0"), ("id_1", "1", "1"),
              ("u", "0", "1"), ("v", "0", "1")]
    # add object 2 and collapsing arrow c
    objs.append("2")
    arrows += [("id_2", "2", "2"), ("c", "1", "2"), ("w", "0", "2")]
    ident = {"0": "id_0", "1": "id_1", "2": "id_2"}
    then = {("id_0", "id_0"): "id_0", ("id_1", "id_1"): "id_1",
            ("id_2", "id_2"): "id_2"}
    for a in ("u", "v"):
        then[("id_0", a)] = a
        then[(a, "id_1")] = a
        then[(a, "c")] = "w"
    then[("c", "id_2")] = "c"
    then[("id_1", "c")] = "c"
    then[("w", "id_2")] = "w"
    then[("id_0", "w")] = "w"
    C = fc.FinCategory("collapser", objs, arrows, ident, then)
    monic, _ = uv.check_mono_epi(C, "c")
    assert not monic


def test_universal_apexes_isomorphic():
    # two isomorphic candidate apexes; limit picks the lex-least but any
    # two universal apexes must be isomorphic
    A = fc.poset_category("iso2", ["a", "b"], lambda x, y: True)
    sh = fc.discrete_category("sh", ["i"])
    D = uv.diagram_on(sh, A, {"i": "a"})
    w = uv.limit_of(D)
    assert w.apex == "a"
    assert A.iso_objects("a", "b")


# -- free quotient ---------------------------------------------------------

def test_free_quotient_idempotent_loop():
    r = uv.free_quotient_category(
        ["x"], [("e", "x", "x")],
        [((("x"), ("e", "e")), (("x"), ("e",)))],
        bound=4)
    assert r.complete
    C = r.category
    assert len(C.arrow_names) == 2  # id and [e]
    e = [f for f in C.arrow_names if not C.is_identity(f)][0]
    assert C.compose(e, e) == e


def test_free_quotient_acyclic_paths():
    r = uv.free_quotient_category(
        ["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")], [], bound=2)
    assert r.complete
    C = r.category
    assert len(C.arrow_names) == 3 + 2 + 1  # ids, f, g, g.f
    f = "[f@a]"
    g = "[g@b]"
    assert C.compose(g, f) == "[f.g@a]"


def test_free_quotient_formal_iso_gluing():
    # the paper-style gluing: two copies of a point glued by formal
    # isos e, e_inv
    r = uv.free_quotient_category(
        ["p", "q"],
        [("e", "p", "q"), ("e_inv", "q", "p")],
        [((("p"), ("e", "e_inv")), (("p"), ())),
         ((("q"), ("e_inv", "e")), (("q"), ()))],
        bound=2)
    assert r.complete
    C = r.category
    e = "[e@p]"
    assert C.is_iso(e)


def test_free_quotient_incomplete_refused():
    # a free loop with no relations can never close within a bound
    r = uv.free_quotient_category(["x"], [("e", "x", "x")], [], bound=3)
    assert not r.complete
    assert r.category is None


# -- functor category / determinism ----------------------------------------

def test_functor_category_of_walking_arrow():
    W = fc.walking_arrow()
    K, obs, ars = fc.functor_category(W, W)
    assert len(K.objects) == 3
    # natural transformations compose correctly in the functor category
    for nm1 in K.arrow_names:
        for nm2 in K.arrow_names:
            if K.cod(nm1) == K.dom(nm2):
                assert K.compose(nm2, nm1) in set(K.arrow_names)


def test_limit_determinism():
    A = lattice_category()
    sh = fc.discrete_category("sh", ["l", "r"])
    D = uv.diagram_on(sh, A, {"l": "2", "r": "3"})
    w1 = uv.limit_of(D)
    w2 = uv.limit_of(D)
    assert w1.cone.key() == w2.cone.key()
    assert w1.mediating == w2.mediating
