import pytest

from enriched_kernel.errors import Absent, InvalidStructure, PreconditionFailed
from enriched_kernel import fincat as fc
from enriched_kernel.skeleton import SkeletonMap
from enriched_kernel.tensor import meet_tensor, thin_set_fragment
from enriched_kernel import enriched as en
from enriched_kernel.homenrich import HomEnrichmentProvider
from enriched_kernel import constellation as cs


@pytest.fixture(scope="module")
def T01():
    return thin_set_fragment()


@pytest.fixture(scope="module")
def skid(T01):
    return SkeletonMap.identity(T01.base)


def thin_enrichment_of(C, T, name=None):
    hom = {}
    comp = {}
    for a in C.objects:
        for b in C.objects:
            hom[(a, b)] = "1" if C.hom(a, b) else "0"
    for a in C.objects:
        for b in C.objects:
            for c in C.objects:
                dom = T.ob(hom[(a, b)], hom[(b, c)])
                comp[(a, b, c)] = T.base.hom(dom, hom[(a, c)])[0]
    return en.EnrichedSet(name or C.name, T, C.objects, hom, comp)


def forced_map(S, Tgt, f0, name="m"):
    A = S.tensor.base
    f1 = {}
    for a in S.carrier:
        for b in S.carrier:
            arrows = A.hom(S.h(a, b), Tgt.h(f0[a], f0[b]))
            assert arrows, "thin map must exist"
            f1[(a, b)] = arrows[0]
    return en.EnrichedMap(name, S, Tgt, f0, f1)


def trivial_data(T01, skid, n=3):
    """The trivial constellation data over an n-object path category."""
    base_cat = fc.chain_category(n, "path%d" % n)
    S = thin_enrichment_of(base_cat, T01, "S")
    walk = fc.walking_arrow("Iw", "d0", "d1", "step")
    I_one = thin_enrichment_of(walk, T01, "I")
    J_cat = fc.chain_category(3, "J3")
    J_one = thin_enrichment_of(J_cat, T01, "J")
    I = {}
    J = {}
    e1 = {}
    e2 = {}
    e3 = {}
    i1 = {}
    i2 = {}
    for a in S.carrier:
        for b in S.carrier:
            I[(a, b)] = I_one
            i1[(a, b)] = "d0"
            i2[(a, b)] = "d1"
    for a in S.carrier:
        for b in S.carrier:
            for c in S.carrier:
                J[(a, b, c)] = J_one
                e1[(a, b, c)] = forced_map(I_one, J_one,
                                           {"d0": "0", "d1": "1"}, "e1")
                e2[(a, b, c)] = forced_map(I_one, J_one,
                                           {"d0": "1", "d1": "2"}, "e2")
                e3[(a, b, c)] = forced_map(I_one, J_one,
                                           {"d0": "0", "d1": "2"}, "e3")
    return cs.ConstellationData(S, I, J, e1, e2, e3, i1, i2,
                                handedness="left", sk=skid)


# -- yoneda ---------------------------------------------------------------------

def test_yoneda_reconstruction(T01, skid):
    from enriched_kernel.tensor import meet_tensor
    Tm = meet_tensor()
    A = Tm.base
    els = ["p", "q"]
    S = en.EnrichedSet("S", Tm, els,
                       {(a, b): "6" for a in els for b in els},
                       {(a, b, c): "6<=6" for a in els for b in els
                        for c in els})
    sk = SkeletonMap.identity(A)
    # Phi induced by composing with an honest arrow: here everything is
    # forced in the thin lattice
    Phi = {c: "6<=6" for c in els}
    ok = cs.yoneda_reconstruct(S, "p", "q", Phi, "6<=6", Tm, sk)
    assert ok
    # scrambled component: mistype it to trigger the precondition report
    with pytest.raises(PreconditionFailed):
        cs.yoneda_reconstruct(S, "p", "q", {"p": "2<=2", "q": "6<=6"},
                              "6<=6", Tm, sk)


def test_yoneda_singleton_degenerates_to_unit_law(T01, skid):
    Tm = meet_tensor()
    sk = SkeletonMap.identity(Tm.base)
    S = en.EnrichedSet("one", Tm, ["p"], {("p", "p"): "6"},
                       {("p", "p", "p"): "6<=6"})
    assert cs.yoneda_reconstruct(S, "p", "p", {"p": "6<=6"}, "6<=6", Tm, sk)


# -- adjunctions ------------------------------------------------------------------

def test_identity_adjunction(T01, skid):
    Tm = meet_tensor()
    sk = SkeletonMap.identity(Tm.base)
    els = ["p", "q"]
    S = en.EnrichedSet("S", Tm, els,
                       {(a, b): "6" for a in els for b in els},
                       {(a, b, c): "6<=6" for a in els for b in els
                        for c in els})
    idm = en.identity_we_arrow(S)
    phi = {(a, c): "6<=6" for a in els for c in els}
    ok, witness = cs.check_adjunction(idm, idm, phi, "left", Tm, sk)
    assert ok, witness
    ok, witness = cs.check_adjunction(idm, idm, phi, "right", Tm, sk)
    assert ok, witness


def test_non_adjoint_rejected(T01, skid):
    Tm = meet_tensor()
    sk = SkeletonMap.identity(Tm.base)
    els = ["p", "q"]
    hom = {(a, b): ("6" if a == b else "2") for a in els for b in els}
    comp = {}
    for a in els:
        for b in els:
            for c in els:
                d = Tm.ob(hom[(a, b)], hom[(b, c)])
                comp[(a, b, c)] = Tm.base.hom(d, hom[(a, c)])[0]
    S = en.EnrichedSet("rigid", Tm, els, hom, comp)
    idm = en.identity_we_arrow(S)
    # phi components into the off-diagonal hom cannot be invertible
    phi = {(a, c): Tm.base.hom(S.h(a, c), S.h(a, c))[0]
           for a in els for c in els}
    ok, witness = cs.check_adjunction(idm, idm, phi, "left", Tm, sk)
    # identity phi on a rigid set is fine; break it by swapping source
    swap = [m for m in en.enumerate_we_arrows(S, S, sk)
            if m.f0 == {"p": "q", "q": "p"}][0]
    ok2, witness2 = cs.check_adjunction(
        swap, swap, {(a, c): phi[(a, c)] for a in els for c in els},
        "left", Tm, sk)
    assert not ok2


# -- kan search -------------------------------------------------------------------

def test_search_kan_identity(T01, skid):
    W = fc.walking_arrow("W", "x", "y", "f")
    S = thin_enrichment_of(fc.chain_category(3), T01, "S")
    I_one = thin_enrichment_of(W, T01, "I")
    prov = HomEnrichmentProvider(I_one, S, T01, skid)
    idm = en.identity_we_arrow(I_one)
    wits = cs.search_kan(idm, prov, prov, kind="Lan", pointwise=True)
    assert wits
    w = wits[0]
    # the identity restriction admits the identity extension
    assert any(w.k0[nm] == nm for nm in w.k0)


def test_search_kan_extension_by_composition(T01, skid):
    # include the walking arrow into the 3-chain as the first leg: every
    # arrow diagram extends canonically
    S = thin_enrichment_of(fc.chain_category(3), T01, "S")
    walk = fc.walking_arrow("Iw", "d0", "d1", "step")
    I_one = thin_enrichment_of(walk, T01, "I")
    J_one = thin_enrichment_of(fc.chain_category(3, "J3"), T01, "J")
    e1 = forced_map(I_one, J_one, {"d0": "0", "d1": "1"}, "e1")
    prov_I = HomEnrichmentProvider(I_one, S, T01, skid)
    prov_J = HomEnrichmentProvider(J_one, S, T01, skid)
    wits = cs.search_kan(e1, prov_I, prov_J, kind="Lan", pointwise=True)
    assert wits
    w = wits[0]
    # extension restricts back to the original on carriers
    for nm, wname in w.k0.items():
        u = prov_I.map_of(nm)
        z = prov_J.map_of(wname)
        back = en.compose_we_arrows(z, e1)
        assert back.f0 == u.f0


def test_kan_witnesses_sk_related(T01, skid):
    # a rigid instance where multiple pointwise extensions exist: all
    # witnesses must be pairwise SK-related
    S = thin_enrichment_of(fc.chain_category(2), T01, "S")
    pt = fc.discrete_category("ptc", ["p"])
    P_one = thin_enrichment_of(pt, T01, "P")
    walk = fc.walking_arrow("Iw", "d0", "d1", "step")
    I_one = thin_enrichment_of(walk, T01, "I")
    e = forced_map(P_one, I_one, {"p": "d0"}, "e")
    prov_P = HomEnrichmentProvider(P_one, S, T01, skid)
    prov_I = HomEnrichmentProvider(I_one, S, T01, skid)
    wits = cs.search_kan(e, prov_P, prov_I, kind="Lan", pointwise=True,
                         max_witnesses=8)
    assert wits
    if len(wits) >= 2:
        ok = cs.kan_witnesses_sk_related(prov_P, prov_I, wits[0], wits[1],
                                         T01, skid)
        assert ok


# -- the constellation ---------------------------------------------------------------

@pytest.fixture(scope="module")
def stell3(T01, skid):
    data = trivial_data(T01, skid, 3)
    return cs.build_constellation(data, T01, skid)


def test_constellation_data_validates(T01, skid):
    trivial_data(T01, skid, 2)


def test_broken_e3_rejected(T01, skid):
    data = trivial_data(T01, skid, 2)
    # scramble e3 so the endpoint equations fail
    bad_e3 = dict(data.e3)
    walk = data.I[("0", "0")]
    J_one = data.J[("0", "0", "0")]
    bad_e3[("0", "0", "1")] = forced_map(walk, J_one,
                                         {"d0": "1", "d1": "2"}, "bad")
    with pytest.raises(InvalidStructure):
        cs.ConstellationData(data.base, data.I, data.J, data.e1, data.e2,
                             bad_e3, data.i1, data.i2)


def test_constellation_homs_are_base_homs(stell3):
    # for the trivial data over a path category the hom carrier at (a,b)
    # is the set of arrows a -> b: a singleton iff a <= b
    for a in stell3.carrier:
        for b in stell3.carrier:
            size = 1 if int(a) <= int(b) else 0
            assert len(stell3.hom[(a, b)].carrier) == size


def test_constellation_composition_is_path_composition(stell3):
    # composing the unique arrows a->b and b->c gives the unique a->c;
    # the composed hom element equals the directly glued-and-restricted
    # diagram map
    comp = stell3.comp[("0", "1", "2")]
    (el,) = list(comp.f0)
    assert comp.f0[el] == stell3.hom[("0", "2")].carrier[0]


def test_stell_associativity(stell3, T01, skid):
    hyp, conc = cs.check_stell_associativity(stell3, T01, skid)
    assert hyp
    assert conc


def test_system_functor_identity(stell3, T01, skid):
    s_maps = {}
    for (a, b), H in stell3.hom.items():
        s_maps[(a, b)] = en.identity_we_arrow(H)
    sprime, report = cs.system_functor(stell3, stell3, s_maps, None,
                                       T01, skid)
    assert report["intertwine"] and report["arrow_law"]


def test_lens_build_trivial(stell3, T01, skid):
    data = stell3.data
    S = data.base
    walk = data.I[("0", "1")]
    J_one = data.J[("0", "0", "0")]
    u_d = forced_map(walk, J_one, {"d0": "0", "d1": "1"}, "u_d")
    leg2 = forced_map(walk, J_one, {"d0": "1", "d1": "2"}, "leg2")
    u_c = forced_map(walk, J_one, {"d0": "0", "d1": "2"}, "u_c")
    L_carrier = list(stell3.carrier)
    L_homs = {}
    for a in stell3.carrier:
        for b in stell3.carrier:
            if stell3.hom[(a, b)].carrier:
                L_homs[(a, b)] = list(stell3.hom[(a, b)].carrier)
    lens = cs.lens_build(stell3, L_carrier, L_homs, u_d, u_c, leg2,
                         "d1", T01, skid)
    # T0(s): arrow diagrams landing at s: one per predecessor
    for s in L_carrier:
        expected = sum(1 for w in stell3.carrier if int(w) <= int(s))
        assert len(lens.t0[s].carrier) == expected
    assert lens.report["lens_4_2_equivalence"]
    assert lens.report["image_pentagon"]
    # T10 of the unique composable pair respects composition
    # (already folded into the 4.2 verdict) and T11 tables exist
    assert lens.t11


def test_lens_empty_homs_degenerates(stell3, T01, skid):
    data = stell3.data
    walk = data.I[("0", "1")]
    J_one = data.J[("0", "0", "0")]
    u_d = forced_map(walk, J_one, {"d0": "0", "d1": "1"}, "u_d")
    leg2 = forced_map(walk, J_one, {"d0": "1", "d1": "2"}, "leg2")
    u_c = forced_map(walk, J_one, {"d0": "0", "d1": "2"}, "u_c")
    lens = cs.lens_build(stell3, ["0"], {}, u_d, u_c, leg2, "d1",
                         T01, skid)
    assert not lens.t10
    assert set(lens.t0) == {"0"}
