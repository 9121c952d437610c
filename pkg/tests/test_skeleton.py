import pytest

from enriched_kernel.errors import CongruenceFailure, InvalidStructure
from enriched_kernel import fincat as fc
from enriched_kernel.skeleton import (
    SkeletonMap,
    quotient_by_congruence,
    skel_congruence_of_fragment,
)


def test_explicit_sk_equal():
    W = fc.walking_arrow()
    pt = fc.terminal_category()
    crush = fc.FunctorMap("crush", W, pt,
                          {"0": "*", "1": "*"},
                          {"id_0": "id_*", "id_1": "id_*", "a": "id_*"})
    sk = SkeletonMap.explicit(crush)
    assert sk.sk_equal("id_0", "id_1")
    assert sk.sk_equal("a", "a")
    idsk = SkeletonMap.identity(W)
    assert not idsk.sk_equal("id_0", "id_1")


def test_congruence_requires_parallel():
    P = fc.parallel_pair_category()
    with pytest.raises(InvalidStructure):
        SkeletonMap("congruence", P, classes=[["u", "id_0"]])


def test_collapse_parallel_is_congruence():
    P = fc.parallel_pair_category()
    sk = SkeletonMap.collapse_parallel(P)
    assert sk.sk_equal("u", "v")
    B, proj = quotient_by_congruence(sk)
    assert len(B.hom("0", "1")) == 1
    # projection is a functor: validated on construction
    assert proj.amap["u"] == proj.amap["v"]


def test_discrete_congruence_quotient_isomorphic_copy():
    W = fc.walking_arrow()
    sk = SkeletonMap.discrete(W)
    B, proj = quotient_by_congruence(sk)
    assert len(B.arrow_names) == len(W.arrow_names)
    assert B.objects == W.objects


def test_composition_incompatible_congruence_rejected():
    # category 0 =u,v=> 1 -c-> 2 with c.u != c.v: relating u,v only is
    # not composition-compatible
    objs = ["0", "1", "2"]
    arrows = [("id_0", "0", "0"), ("id_1", "1", "1"), ("id_2", "2", "2"),
              ("u", "0", "1"), ("v", "0", "1"), ("c", "1", "2"),
              ("cu", "0", "2"), ("cv", "0", "2")]
    ident = {"0": "id_0", "1": "id_1", "2": "id_2"}
    then = {("id_0", "id_0"): "id_0", ("id_1", "id_1"): "id_1",
            ("id_2", "id_2"): "id_2", ("c", "id_2"): "c", ("id_1", "c"): "c"}
    for a, ca in (("u", "cu"), ("v", "cv")):
        then[("id_0", a)] = a
        then[(a, "id_1")] = a
        then[(a, "c")] = ca
        then[("id_0", ca)] = ca
        then[(ca, "id_2")] = ca
    C = fc.FinCategory("two-step", objs, arrows, ident, then)
    with pytest.raises(CongruenceFailure):
        SkeletonMap("congruence", C, classes=[["u", "v"]])
    # relating the downstream pair as well is fine
    sk = SkeletonMap("congruence", C, classes=[["u", "v"], ["cu", "cv"]])
    assert sk.sk_equal("cu", "cv")


def test_skel_congruence_of_fragment():
    # fragment: two objects denoting categories, parallel iso functors in
    # one class, a rigid non-isomorphic pair in separate classes
    I2 = fc.poset_category("I2", ["a", "b"], lambda x, y: True)  # iso pair
    pt = fc.terminal_category()
    # functors pt -> I2 picking a and b: naturally isomorphic
    Fa = fc.point_functor(I2, "a", "Fa")
    Fb = fc.point_functor(I2, "b", "Fb")
    W = fc.walking_arrow()
    # functors pt -> W picking 0 and 1: not isomorphic
    G0 = fc.point_functor(W, "0", "G0")
    G1 = fc.point_functor(W, "1", "G1")

    frag_objs = ["pt", "I2", "W"]
    frag_arrows = [("id_pt", "pt", "pt"), ("id_I2", "I2", "I2"),
                   ("id_W", "W", "W"),
                   ("Fa", "pt", "I2"), ("Fb", "pt", "I2"),
                   ("G0", "pt", "W"), ("G1", "pt", "W")]
    ident = {"pt": "id_pt", "I2": "id_I2", "W": "id_W"}
    then = {}
    for f, d, c in frag_arrows:
        then[(ident[d], f)] = f
        then[(f, ident[c])] = f
    frag = fc.FinCategory("frag", frag_objs, frag_arrows, ident, then)
    cat_of = {"pt": pt, "I2": I2, "W": W}
    fun_of = {"id_pt": fc.identity_functor(pt),
              "id_I2": fc.identity_functor(I2),
              "id_W": fc.identity_functor(W),
              "Fa": Fa, "Fb": Fb, "G0": G0, "G1": G1}
    sk = skel_congruence_of_fragment(frag, cat_of, fun_of)
    assert sk.sk_equal("Fa", "Fb")
    assert not sk.sk_equal("G0", "G1")
    B, proj = quotient_by_congruence(sk)
    assert len(B.hom("pt", "I2")) == 1
    assert len(B.hom("pt", "W")) == 2


def test_single_functor_fragment_discrete():
    pt = fc.terminal_category()
    frag = fc.discrete_category("frag", ["pt"])
    sk = skel_congruence_of_fragment(frag, {"pt": pt},
                                     {"id_pt": fc.identity_functor(pt)})
    assert sk.class_of("id_pt") == ("id_pt",)


def test_quotient_projection_functorial():
    P = fc.parallel_pair_category()
    sk = SkeletonMap.collapse_parallel(P)
    B, proj = quotient_by_congruence(sk)
    for (f, g), h in P._then.items():
        assert B.then(proj.amap[f], proj.amap[g]) == proj.amap[h]
