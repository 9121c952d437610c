import pytest

from enriched_kernel.errors import NotClosed, PreconditionFailed
from enriched_kernel import fincat as fc
from enriched_kernel import ncat as nc


def ncat1(cat):
    return nc.NCat(1, cat=cat, name=cat.name)


@pytest.fixture(scope="module")
def W2():
    """Inc of the walking arrow: a 2-category with discrete homs."""
    return nc.inc(ncat1(fc.walking_arrow()))


def test_inc_of_category_has_discrete_homs(W2):
    assert W2.level == 2
    h = W2.hom[("0", "1")]
    assert h.level == 1
    assert set(h.cat.objects) == {"a"}
    assert all(h.cat.is_identity(f) for f in h.cat.arrow_names)


def test_inc_validates_and_is_associative(W2):
    ok, witness = nc.check_ncat_associative(W2, strict_only=True)
    assert ok, witness
    # construction-time typing validation
    nc.NCat(2, carrier=W2.carrier, hom=W2.hom, comp=W2.comp)


def test_for_inc_identity():
    for cat in [fc.walking_arrow(), fc.chain_category(3),
                fc.parallel_pair_category(),
                fc.poset_category("sq", ["a", "b"], lambda x, y: True)]:
        x = ncat1(cat)
        back = nc.forget(nc.inc(x))
        assert back.key() == x.key()


def test_for_inc_identity_level3(W2):
    x3 = nc.inc(W2)
    assert x3.level == 3
    back = nc.forget(x3)
    assert back.key() == W2.key()


def test_forget_from_3_to_1_composite(W2):
    x3 = nc.inc(W2)
    assert nc.forget_to(x3, 1).key() == nc.forget(nc.forget(x3)).key()


def test_ncat_product_counts(W2):
    P = nc.ncat_product(W2, W2)
    assert P.level == 2
    assert len(P.carrier) == 4
    h = P.hom[("(0,0)", "(1,1)")]
    assert h.level == 1
    assert len(h.cat.objects) == 1  # a x a
    ok, _ = nc.check_ncat_associative(P, strict_only=True)
    assert ok


def test_ncat_unit():
    I1 = nc.ncat_unit(1)
    assert len(I1.cat.objects) == 1
    I2 = nc.ncat_unit(2)
    assert I2.carrier == ("@",)
    assert I2.hom[("@", "@")].key() == I1.key()
    I3 = nc.ncat_unit(3)
    assert I3.hom[("@", "@")].key() == I2.key()


def test_unit_arrows(W2):
    lam = nc.unit_lambda(W2)
    assert lam.tgt.key() == W2.key()
    rho = nc.unit_rho(W2)
    assert rho.tgt.key() == W2.key()
    # the unit laws: projections land where they should
    for o in lam.src.carrier:
        i, x = nc.split_pair(o)
        assert lam.f0[o] == x
    for o in rho.src.carrier:
        x, i = nc.split_pair(o)
        assert rho.f0[o] == x


def test_coproduct_cross_homs_empty(W2):
    C = nc.ncat_coproduct(W2, W2)
    assert len(C.carrier) == 4
    assert nc.is_empty_ncat(C.hom[("l:0", "r:0")])
    ok, _ = nc.check_ncat_associative(C, strict_only=True)
    assert ok


def test_symmetrizer_and_associator(W2):
    s = nc.ncat_symmetrizer(W2, W2)
    assert s.f0["(0,1)"] == "(1,0)"
    a = nc.ncat_associator(W2, W2, W2)
    assert a.f0["((0,1),0)"] == "(0,(1,0))"


# -- equivalences ---------------------------------------------------------------

def test_level1_equivalence_classical():
    # 2-object contractible vs one object: equivalent, not isomorphic
    contract = fc.poset_category("ctr", ["a", "b"], lambda x, y: True)
    pt = fc.terminal_category()
    ok, wit = nc.n_equivalence("cats", ncat1(contract), ncat1(pt))
    assert ok
    # rigid non-equivalent pair
    ok, _ = nc.n_equivalence("cats", ncat1(fc.walking_arrow()), ncat1(pt))
    assert not ok


def test_self_equivalence_with_identity_witness(W2):
    idf = nc.identity_nfunctor(W2)
    ok, wit = nc.n_equivalent1_functors(idf, idf)
    assert ok
    ok, _ = nc.n_equivalence("cats", W2, W2)
    assert ok


def test_level2_functor_equivalence_iso_cells():
    # a 2-category with an isomorphism 2-cell between two parallel
    # 1-cells: the two point-functors at those cells are 2-equivalent
    iso_cat = fc.poset_category("isoh", ["u", "v"], lambda x, y: True)
    comp_cat, _, _ = fc.product_category(iso_cat, iso_cat)
    # build by hand: carrier {x, y}, hom(x,y) = iso_cat, hom(x,x) etc
    # use Inc of the walking arrow but fatten one hom
    pt = fc.terminal_category("pt1")
    disc1 = fc.discrete_category("d1", ["i"])

    def const_functor(src_cat, tgt_cat, obj):
        return fc.constant_functor(src_cat, tgt_cat, obj)

    hom = {("x", "x"): nc.NCat(1, cat=disc1),
           ("y", "y"): nc.NCat(1, cat=fc.discrete_category("d2", ["j"])),
           ("x", "y"): nc.NCat(1, cat=iso_cat),
           ("y", "x"): nc.NCat(1, cat=fc.empty_category("e"))}
    comp = {}
    for a in ("x", "y"):
        for b in ("x", "y"):
            for c in ("x", "y"):
                src = nc.ncat_product(hom[(a, b)], hom[(b, c)])
                tgt = hom[(a, c)]
                if not src.cat.objects:
                    comp[(a, b, c)] = nc.empty_nfunctor_to(
                        nc.NCat(1, cat=src.cat), tgt)
                    continue
                if (a, b, c) == ("x", "x", "y"):
                    omap = {o: nc.split_pair(o)[1] for o in src.cat.objects}
                elif (a, b, c) == ("x", "y", "y"):
                    omap = {o: nc.split_pair(o)[0] for o in src.cat.objects}
                elif a == b == c:
                    omap = {o: tgt.cat.objects[0] for o in src.cat.objects}
                else:
                    omap = {o: tgt.cat.objects[0] for o in src.cat.objects}
                amap = {}
                for f in src.cat.arrow_names:
                    d = omap[src.cat.dom(f)]
                    cc = omap[src.cat.cod(f)]
                    cands = tgt.cat.hom(d, cc)
                    amap[f] = cands[0]
                comp[(a, b, c)] = nc.NFunctor(
                    1, src, tgt,
                    fun=fc.FunctorMap("c", src.cat, tgt.cat, omap, amap,
                                      validate=False))
    X = nc.NCat(2, carrier=["x", "y"], hom=hom, comp=comp, name="fat",
                validate=False)
    # two level-2 endofunctors of X differing by which 1-cell x->y they
    # pick cannot be built directly here; instead check that the
    # transformation-family machinery sees the iso cells
    I2 = nc.ncat_unit(2)
    maps = nc.enumerate_nfunctors(I2, X)
    pickers = [m for m in maps if m.f0["@"] == "x"]
    assert pickers
    if len(pickers) >= 2:
        ok, _ = nc.n_equivalent1_functors(pickers[0], pickers[1])
        assert ok


# -- fragments --------------------------------------------------------------------

def test_fragment_category_skel_at_level1():
    # two naturally isomorphic functors fall in one sk(1) class
    I2cat = fc.poset_category("I2", ["a", "b"], lambda x, y: True)
    pt = fc.terminal_category()
    x_pt = ncat1(pt)
    x_I2 = ncat1(I2cat)
    Fa = nc.NFunctor(1, x_pt, x_I2, fun=fc.point_functor(I2cat, "a", "Fa"))
    Fb = nc.NFunctor(1, x_pt, x_I2, fun=fc.point_functor(I2cat, "b", "Fb"))
    ncats = {"pt": x_pt, "I2": x_I2}
    funs = {"id_pt": nc.identity_nfunctor(x_pt),
            "id_I2": nc.identity_nfunctor(x_I2),
            "Fa": Fa, "Fb": Fb}
    frag, sk = nc.fragment_category(ncats, funs)
    assert sk.sk_equal("Fa", "Fb")
    # a rigid pair stays separate
    W = fc.walking_arrow()
    x_W = ncat1(W)
    G0 = nc.NFunctor(1, x_pt, x_W, fun=fc.point_functor(W, "0", "G0"))
    G1 = nc.NFunctor(1, x_pt, x_W, fun=fc.point_functor(W, "1", "G1"))
    frag2, sk2 = nc.fragment_category(
        {"pt": x_pt, "W": x_W},
        {"id_pt": nc.identity_nfunctor(x_pt),
         "id_W": nc.identity_nfunctor(x_W), "G0": G0, "G1": G1})
    assert not sk2.sk_equal("G0", "G1")


def test_fragment_not_closed_raises():
    W = fc.walking_arrow()
    x_W = ncat1(W)
    swapish = nc.NFunctor(1, x_W, x_W,
                          fun=fc.constant_functor(W, W, "0", "c0"))
    with pytest.raises(NotClosed):
        nc.fragment_category({"W": x_W}, {"c0": swapish})


# -- addresses --------------------------------------------------------------------

def test_addresses_level1_only_empty():
    x = ncat1(fc.chain_category(3))
    assert nc.addresses(x) == [()]
    assert nc.address_count(x) == 1


def test_addresses_level2(W2):
    addrs = nc.addresses(W2)
    assert () in addrs
    assert (("0", "1"),) in addrs
    # length-2 refinements step into the hom categories' object pairs
    assert (("0", "1"), ("a", "a")) in addrs
    assert len(addrs) == nc.address_count(W2)


def test_addresses_level3_count(W2):
    x3 = nc.inc(W2)
    assert len(nc.addresses(x3)) == nc.address_count(x3)


def test_address_map_identity(W2):
    idf = nc.identity_nfunctor(W2)
    for addr in nc.addresses(W2):
        sub = nc.address_map(idf, addr)
        if isinstance(sub, dict):
            assert all(k == v for k, v in sub.items())
        else:
            assert sub.key() == nc.identity_nfunctor(sub.src).key()


# -- simplicial actions --------------------------------------------------------------

def test_surjective_insert_on_1_category():
    x = ncat1(fc.walking_arrow())
    s0 = nc.DeltaArrow(2, 1, [0, 0])
    y = nc.simplicial_action(s0, x)
    assert y.level == 2
    assert y.carrier == ("@",)
    assert y.hom[("@", "@")].key() == x.key()
    ok, _ = nc.check_ncat_associative(y, strict_only=True)
    assert ok


def test_insert_then_delete_round_trip(W2):
    for depth in (0, 1):
        up = nc.insert_level(W2, depth)
        assert up.level == 3
        down = nc.delete_level(up, depth)
        assert down.key() == W2.key()


def test_delta_round_trip_via_arrows():
    x = ncat1(fc.chain_category(2))
    s0 = nc.DeltaArrow(2, 1, [0, 0])      # insert at 0
    d0 = nc.DeltaArrow(1, 2, [1])          # delete at 0
    y = nc.simplicial_action(s0, x)
    z = nc.simplicial_action(d0, y)
    assert z.key() == x.key()


def test_delete_requires_singleton(W2):
    with pytest.raises(PreconditionFailed):
        nc.delete_level(W2, 0)  # carrier has two cells


def test_action_on_empty():
    e = nc.ncat_empty(2)
    s0 = nc.DeltaArrow(3, 2, [0, 0, 1])
    out = nc.simplicial_action(s0, e)
    assert nc.is_empty_ncat(out) and out.level == 3


def test_primitive_decomposition_recomposes():
    import itertools
    for p, q in [(1, 3), (3, 1), (2, 2), (3, 2), (2, 4)]:
        for mapping in itertools.combinations_with_replacement(range(q), p):
            f = nc.DeltaArrow(p, q, list(mapping))
            steps = f.primitive_decomposition()
            cur = nc.DeltaArrow(p, p, list(range(p)))
            for s in steps:
                cur = s.compose_with(cur)
            assert cur.mapping == f.mapping, (f, steps)


def test_composite_action_matches_stepwise():
    x = ncat1(fc.chain_category(2))
    f = nc.DeltaArrow(3, 1, [0, 0, 0])  # two inserts
    y = nc.simplicial_action(f, x)
    assert y.level == 3
    y2 = nc.insert_level(nc.insert_level(x, 0), 0)
    assert y.key() == y2.key()
