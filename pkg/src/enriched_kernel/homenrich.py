"""The enrichment of the set of enriched maps between two enriched sets.

For each ordered pair of maps the category P collects every base arrow
into the product of target hom objects that commutes, after sk, with
every test arrow through a source hom object; the hom object is the
colimit of the domain functor on P.  Composition tensors two such
colimits and inverts the comparison arrow (verified invertible, never
assumed).
"""

import itertools

from .errors import (
    Absent,
    CapabilityMissing,
    FlagMissing,
    InvalidStructure,
    ShapeMismatch,
    TauNotIso,
    UNotIso,
    as_budget,
)
from .fincat import FinCategory, FunctorMap, product_category
from .universal import Cone, check_mono_epi, colimit_of, family_product
from .enriched import (
    EnrichedMap,
    EnrichedSet,
    check_we_sk_arrow,
    compose_we_arrows,
    enumerate_we_arrows,
    we_product,
)


class PairEnrichment:
    """All data attached to one ordered pair of maps: the category P,
    the domain functor, the colimit, the arrow to the product, and the
    inclusion/monic flags."""

    def __init__(self, product_obj, product_legs, product_witness,
                 p_objects, P, p, witness, q, apex_in_p, monic):
        self.product_obj = product_obj
        self.product_legs = product_legs
        self.product_witness = product_witness
        self.p_objects = p_objects      # object id -> (domain, arrow)
        self.P = P
        self.p = p
        self.witness = witness          # colimit UniversalWitness
        self.q = q                      # hom_obj -> product_obj
        self.apex_in_p = apex_in_p
        self.monic = monic

    @property
    def hom_obj(self):
        return self.witness.apex

    def leg_of(self, domain, arrow):
        return self.witness.cone.legs[_p_object_name(domain, arrow)]


def _p_object_name(domain, arrow):
    return "(%s|%s)" % (domain, arrow)


def _pair_condition(C, D, Phi, Psi, T, sk, legs, pi, memo):
    """The sk-commutation test for one candidate arrow pi into the
    product: for every x, y and every test arrow t into h_C(x,y)."""
    A = T.base
    a = A.dom(pi)
    for x in C.carrier:
        for y in C.carrier:
            hxy = C.h(x, y)
            proj_y = A.compose(legs[y], pi)
            proj_x = A.compose(legs[x], pi)
            for t in memo[hxy]:
                t0 = A.dom(t)
                lhs = A.compose_many(
                    D.c(Phi.f0[x], Phi.f0[y], Psi.f0[y]),
                    T.ar(A.compose(Phi.f1[(x, y)], t), proj_y),
                    T.sigma(a, t0))
                rhs = A.compose(
                    D.c(Phi.f0[x], Psi.f0[x], Psi.f0[y]),
                    T.ar(proj_x, A.compose(Psi.f1[(x, y)], t)))
                if not sk.sk_equal(lhs, rhs):
                    return False
    return True


def hom_object(C, D, Phi, Psi, T, sk, budget=None):
    """The enrichment data for one ordered pair (Phi, Psi) of maps
    C -> D.  Raises Absent when the product or the colimit is missing."""
    budget = as_budget(budget)
    if T.symmetrizer is None or T.associator is None:
        raise CapabilityMissing("hom enrichment needs symmetrizer and associator")
    A = T.base
    fam = {x: D.h(Phi.f0[x], Psi.f0[x]) for x in C.carrier}
    prod = family_product(A, fam, "product", budget)
    if prod is None:
        raise Absent("product of target homs missing",
                     trace=[("product", Phi.name, Psi.name)])
    prod_obj, legs, prod_wit = prod
    arrows_into = {}
    for hxy in set(C.hom.values()):
        arrows_into[hxy] = [t for t in A.arrow_names if A.cod(t) == hxy]
    p_objects = {}
    for pi in A.arrow_names:
        if A.cod(pi) != prod_obj:
            continue
        budget.spend()
        if _pair_condition(C, D, Phi, Psi, T, sk, legs, pi, arrows_into):
            p_objects[_p_object_name(A.dom(pi), pi)] = (A.dom(pi), pi)
    P, p = _build_slice(A, p_objects, "P[%s,%s]" % (Phi.name, Psi.name))
    w = colimit_of(p, budget)
    if w is None:
        raise Absent("hom colimit missing",
                     trace=[("colimit", Phi.name, Psi.name)])
    # the mediating arrow from the colimit into the product
    q_c = [m for m in A.hom(w.apex, prod_obj)
           if all(A.compose(m, w.cone.legs[o]) == p_objects[o][1]
                  for o in p_objects)]
    q = q_c[0] if len(q_c) == 1 else None
    apex_in_p = (q is not None
                 and _p_object_name(w.apex, q) in p_objects)
    monic = None
    if q is not None:
        monic, _ = check_mono_epi(A, q)
    return PairEnrichment(prod_obj, legs, prod_wit, p_objects, P, p, w, q,
                          apex_in_p, monic)


def _build_slice(A, p_objects, name):
    """The full subcategory of the slice over the product on the given
    objects; arrows commute with the structure arrows strictly."""
    arrows = []
    ardata = {}
    for o1, (a1, pi1) in sorted(p_objects.items()):
        for o2, (a2, pi2) in sorted(p_objects.items()):
            for u in A.hom(a1, a2):
                if A.compose(pi2, u) == pi1:
                    nm = "%s:%s->%s" % (u, o1, o2)
                    arrows.append((nm, o1, o2))
                    ardata[nm] = (u, o1, o2)
    ident = {o: "%s:%s->%s" % (A.id_of(d[0]), o, o)
             for o, d in p_objects.items()}
    then = {}
    by_dom = {}
    for nm, (u, o1, o2) in ardata.items():
        by_dom.setdefault(o1, []).append(nm)
    for nm1, (u1, o1, o2) in ardata.items():
        for nm2 in by_dom.get(o2, ()):
            u2, _, o3 = ardata[nm2]
            then[(nm1, nm2)] = "%s:%s->%s" % (A.then(u1, u2), o1, o3)
    P = FinCategory(name, sorted(p_objects), arrows, ident, then,
                    validate=False)
    p = FunctorMap("p", P, A, {o: d[0] for o, d in p_objects.items()},
                   {nm: d[0] for nm, d in ardata.items()}, validate=False)
    return P, p


def leg_for_arrow(A, pair, v):
    """Recognise an arrow v : X -> product as a P-object and return its
    universal leg X -> hom_obj; InvalidStructure if v fails the
    commutation condition."""
    o = _p_object_name(A.dom(v), v)
    if o not in pair.p_objects:
        raise InvalidStructure("arrow %r is not a P-object" % v)
    return pair.witness.cone.legs[o]


class HomEnrichmentProvider:
    """Lazy hom-enrichment over one pair of enriched sets: computes the
    carrier (all sk-lax maps), per-pair colimit data and the composition
    arrows on demand, with memoisation."""

    def __init__(self, C, D, T, sk, budget=None, carrier_maps=None):
        self.C = C
        self.D = D
        self.tensor = T
        self.sk = sk
        self.budget = as_budget(budget)
        if carrier_maps is None:
            carrier_maps = enumerate_we_arrows(C, D, sk, self.budget)
        self.maps = list(carrier_maps)
        self.names = {}
        for i, m in enumerate(self.maps):
            self.names[m.key()] = "m%d" % i
        self._pairs = {}
        self._comps = {}

    def name_of(self, m):
        return self.names[m.key()]

    def map_of(self, name):
        return self.maps[int(name[1:])]

    def pair(self, F, G):
        k = (F.key(), G.key())
        if k not in self._pairs:
            self._pairs[k] = hom_object(self.C, self.D, F, G, self.tensor,
                                        self.sk, self.budget)
        return self._pairs[k]

    def hom(self, F, G):
        return self.pair(F, G).hom_obj

    def comp(self, F, G, H):
        k = (F.key(), G.key(), H.key())
        if k not in self._comps:
            self._comps[k] = hom_compose(self, F, G, H)
        return self._comps[k]

    def materialize(self, subset=None, name=None):
        """The enriched hom-set as an EnrichedSet; subset restricts the
        carrier (full-sub-enrichment)."""
        maps = self.maps if subset is None else [m for m in self.maps
                                                 if m.key() in subset]
        names = [self.name_of(m) for m in maps]
        hom = {}
        comp = {}
        for m1 in maps:
            for m2 in maps:
                hom[(self.name_of(m1), self.name_of(m2))] = self.hom(m1, m2)
        for m1 in maps:
            for m2 in maps:
                for m3 in maps:
                    comp[(self.name_of(m1), self.name_of(m2),
                          self.name_of(m3))] = self.comp(m1, m2, m3)
        return EnrichedSet(name or "h[%s,%s]" % (self.C.name, self.D.name),
                           self.tensor, names, hom, comp)


def tensor_of_pairs(provider, pairA, pairB, tensor=None):
    """The colimit of the tensored diagram over P_A x P_B together with
    the comparison into hom_A tensor hom_B (checked invertible)."""
    T = tensor or provider.tensor
    A = T.base
    PA, PB = pairA.P, pairB.P
    prodP, pr1, pr2 = product_category(PA, PB)
    omap = {}
    amap = {}
    for o in prodP.objects:
        o1, o2 = pr1.omap[o], pr2.omap[o]
        omap[o] = T.ob(pairA.p.omap[o1], pairB.p.omap[o2])
    for f in prodP.arrow_names:
        f1, f2 = pr1.amap[f], pr2.amap[f]
        amap[f] = T.ar(pairA.p.amap[f1], pairB.p.amap[f2])
    D = FunctorMap("tens", prodP, A, omap, amap, validate=False)
    w = colimit_of(D, provider.budget)
    if w is None:
        raise Absent("tensored colimit missing")
    target = T.ob(pairA.hom_obj, pairB.hom_obj)
    cands = []
    for u in A.hom(w.apex, target):
        if all(A.compose(u, w.cone.legs[o])
               == T.ar(pairA.witness.cone.legs[pr1.omap[o]],
                       pairB.witness.cone.legs[pr2.omap[o]])
               for o in prodP.objects):
            cands.append(u)
    if len(cands) != 1:
        raise UNotIso("comparison arrow not uniquely induced",
                      pair=(pairA, pairB))
    u = cands[0]
    u_inv = A.inverse(u)
    if u_inv is None:
        raise UNotIso("comparison arrow not invertible",
                      pair=(pairA, pairB))
    return prodP, pr1, pr2, w, u, u_inv


def hom_compose(provider, F, G, H):
    """The composition arrow hom(F,G) . hom(G,H) -> hom(F,H)."""
    T = provider.tensor
    A = T.base
    e12 = provider.pair(F, G)
    e23 = provider.pair(G, H)
    e13 = provider.pair(F, H)
    prodP, pr1, pr2, w, u, u_inv = tensor_of_pairs(provider, e12, e23)
    # recognise the tensored colimit as a P-object for (F, H): its arrow
    # into the product has, at carrier element c, the pointwise composite
    legs = {}
    for o in prodP.objects:
        o1, o2 = pr1.omap[o], pr2.omap[o]
        a1, pi1 = e12.p_objects[o1]
        a2, pi2 = e23.p_objects[o2]
        comps = {}
        for c in provider.C.carrier:
            comps[c] = A.compose(
                provider.D.c(F.f0[c], G.f0[c], H.f0[c]),
                T.ar(A.compose(e12.product_legs[c], pi1),
                     A.compose(e23.product_legs[c], pi2)))
        legs[o] = e13.product_witness.mediate(
            Cone(T.ob(a1, a2), comps))
    phi_c = [m for m in A.hom(w.apex, e13.product_obj)
             if all(A.compose(m, w.cone.legs[o]) == legs[o]
                    for o in prodP.objects)]
    if len(phi_c) != 1:
        raise Absent("composite arrow into the product not induced")
    phi = phi_c[0]
    e = leg_for_arrow(A, e13, phi)
    return A.compose(e, u_inv)


# -- forward and backward composition functors --------------------------------

def _induced_hom_arrow(provider_src, provider_tgt, pair_src, pair_tgt,
                       product_map):
    """The arrow between hom objects induced by a map between the two
    products that sends P-objects to P-objects."""
    A = provider_src.tensor.base
    legs = {}
    for o, (a, pi) in pair_src.p_objects.items():
        shifted = A.compose(product_map, pi)
        legs[o] = leg_for_arrow(A, pair_tgt, shifted)
    cands = [m for m in A.hom(pair_src.hom_obj, pair_tgt.hom_obj)
             if all(A.compose(m, pair_src.witness.cone.legs[o]) == legs[o]
                    for o in pair_src.p_objects)]
    if len(cands) != 1:
        raise Absent("induced hom arrow not unique")
    return cands[0]


def push_forward(provider_BC, provider_BD, F, name=None):
    """F_* : h(B,C) -> h(B,D) for F : C -> D, on carriers by
    post-composition, on hom objects through the product map."""
    A = provider_BC.tensor.base
    B = provider_BC.C
    f0 = {}
    for m in provider_BC.maps:
        f0[provider_BC.name_of(m)] = provider_BD.name_of(
            compose_we_arrows(F, m))
    f1 = {}
    for m1 in provider_BC.maps:
        for m2 in provider_BC.maps:
            pair_src = provider_BC.pair(m1, m2)
            tgt1 = provider_BD.map_of(f0[provider_BC.name_of(m1)])
            tgt2 = provider_BD.map_of(f0[provider_BC.name_of(m2)])
            pair_tgt = provider_BD.pair(tgt1, tgt2)
            comps = {b: A.compose(F.f1[(m1.f0[b], m2.f0[b])],
                                  pair_src.product_legs[b])
                     for b in B.carrier}
            pm = pair_tgt.product_witness.mediate(
                Cone(pair_src.product_obj, comps))
            f1[(provider_BC.name_of(m1), provider_BC.name_of(m2))] = \
                _induced_hom_arrow(provider_BC, provider_BD, pair_src,
                                   pair_tgt, pm)
    H_src = provider_BC.materialize()
    H_tgt = provider_BD.materialize()
    return EnrichedMap(name or "%s_*" % F.name, H_src, H_tgt, f0, f1)


def pull_back(provider_CD, provider_BD, G, name=None):
    """G^* : h(C,D) -> h(B,D) for G : B -> C, on carriers by
    pre-composition, on hom objects by the projection-selection map."""
    A = provider_CD.tensor.base
    B = provider_BD.C
    f0 = {}
    for m in provider_CD.maps:
        f0[provider_CD.name_of(m)] = provider_BD.name_of(
            compose_we_arrows(m, G))
    f1 = {}
    for m1 in provider_CD.maps:
        for m2 in provider_CD.maps:
            pair_src = provider_CD.pair(m1, m2)
            tgt1 = provider_BD.map_of(f0[provider_CD.name_of(m1)])
            tgt2 = provider_BD.map_of(f0[provider_CD.name_of(m2)])
            pair_tgt = provider_BD.pair(tgt1, tgt2)
            comps = {b: A.compose(pair_src.product_legs[G.f0[b]],
                                  A.id_of(pair_src.product_obj))
                     for b in B.carrier}
            pm = pair_tgt.product_witness.mediate(
                Cone(pair_src.product_obj, comps))
            f1[(provider_CD.name_of(m1), provider_CD.name_of(m2))] = \
                _induced_hom_arrow(provider_CD, provider_BD, pair_src,
                                   pair_tgt, pm)
    H_src = provider_CD.materialize()
    H_tgt = provider_BD.materialize()
    return EnrichedMap(name or "%s^*" % G.name, H_src, H_tgt, f0, f1)


# -- evaluation ----------------------------------------------------------------

def eval_eta(side, provider, products=None, rho=None, name=None):
    """The evaluation map S x h(S,T) -> T (side='left') or
    h(S,T) x S -> T (side='right').

    rho: optional natural family product(x,y) -> x tensor y; defaults to
    identities when the tensor is itself the product structure.
    """
    S, Tset = provider.C, provider.D
    T = provider.tensor
    A = T.base
    P = products or (T if T.is_product_structure() else None)
    if P is None:
        raise CapabilityMissing("evaluation needs a product structure")
    H = provider.materialize()
    if side == "left":
        prod, pr1, pr2 = we_product(S, H, products=P)
    else:
        prod, pr1, pr2 = we_product(H, S, products=P)

    def rho_at(x, y):
        if rho is not None:
            return rho[(x, y)]
        if P is T:
            return A.id_of(P.ob(x, y))
        raise CapabilityMissing("need rho : product -> tensor")

    f0 = {}
    f1 = {}
    for el in prod.carrier:
        if side == "left":
            s, mname = pr1.f0[el], pr2.f0[el]
        else:
            mname, s = pr1.f0[el], pr2.f0[el]
        phi = provider.map_of(mname)
        f0[el] = phi.f0[s]
    for el1 in prod.carrier:
        for el2 in prod.carrier:
            if side == "left":
                s, mn1 = pr1.f0[el1], pr2.f0[el1]
                t, mn2 = pr1.f0[el2], pr2.f0[el2]
            else:
                mn1, s = pr1.f0[el1], pr2.f0[el1]
                mn2, t = pr1.f0[el2], pr2.f0[el2]
            phi = provider.map_of(mn1)
            psi = provider.map_of(mn2)
            pairH = provider.pair(phi, psi)
            q = pairH.q
            if q is None:
                raise FlagMissing("colimit-to-product arrow missing")
            if side == "left":
                core = A.compose(
                    Tset.c(phi.f0[s], phi.f0[t], psi.f0[t]),
                    T.ar(phi.f1[(s, t)],
                         A.compose(pairH.product_legs[t], q)))
                f1[(el1, el2)] = A.compose(
                    core, rho_at(S.h(s, t), pairH.hom_obj))
            else:
                core = A.compose(
                    Tset.c(phi.f0[s], psi.f0[s], psi.f0[t]),
                    T.ar(A.compose(pairH.product_legs[s], q),
                         psi.f1[(s, t)]))
                f1[(el1, el2)] = A.compose(
                    core, rho_at(pairH.hom_obj, S.h(s, t)))
    return EnrichedMap(name or "eta_%s" % side[0], prod, Tset, f0, f1), prod


# -- pre-curry -----------------------------------------------------------------

def curry(F, S_units, T_units, provider_TU, prod_ST, c, name=None):
    """Cur0 : the curried map S -> h(T,U) for F : S x T -> U, with unit
    data on S and T and an arrow c from the product unit to the tensor
    unit.  Returns (curried EnrichedMap, dict s -> curried map name)."""
    S = S_units.base_set
    Tset = T_units.base_set
    U = provider_TU.D
    ten = provider_TU.tensor
    A = ten.base
    P = ten if ten.is_product_structure() else None
    if P is None:
        raise CapabilityMissing("curry needs the tensor to carry products")
    un0 = P.require_unit()
    H = provider_TU.materialize()

    def pr_el(s, t):
        return "(%s,%s)" % (s, t)

    curried = {}
    for s in S.carrier:
        f0p = {t: F.f0[pr_el(s, t)] for t in Tset.carrier}
        f1p = {}
        for t in Tset.carrier:
            for t2 in Tset.carrier:
                lam_inv = A.inverse(un0.lam[Tset.h(t, t2)])
                if lam_inv is None:
                    raise CapabilityMissing("product unit lam not invertible")
                ins = P.mediate_pair(
                    S.h(s, s), Tset.h(t, t2), P.ob(un0.obj, Tset.h(t, t2)),
                    A.compose(A.compose(S_units.units[s], c),
                              P.proj(un0.obj, Tset.h(t, t2))[0]),
                    P.proj(un0.obj, Tset.h(t, t2))[1])
                f1p[(t, t2)] = A.compose_many(
                    F.f1[(pr_el(s, t), pr_el(s, t2))], ins, lam_inv)
        m = EnrichedMap("cur[%s]" % s, Tset, U, f0p, f1p)
        if m.key() not in provider_TU.names:
            raise Absent("curried map escapes the enumerated hom set",
                         trace=[("curry", s)])
        curried[s] = provider_TU.name_of(m)
    f1 = {}
    for s1 in S.carrier:
        for s2 in S.carrier:
            m1 = provider_TU.map_of(curried[s1])
            m2 = provider_TU.map_of(curried[s2])
            pairH = provider_TU.pair(m1, m2)
            comps = {}
            for t in Tset.carrier:
                rho_inv = A.inverse(un0.rho[S.h(s1, s2)])
                if rho_inv is None:
                    raise CapabilityMissing("product unit rho not invertible")
                ins = P.mediate_pair(
                    S.h(s1, s2), Tset.h(t, t),
                    P.ob(S.h(s1, s2), un0.obj),
                    P.proj(S.h(s1, s2), un0.obj)[0],
                    A.compose(A.compose(T_units.units[t], c),
                              P.proj(S.h(s1, s2), un0.obj)[1]))
                comps[t] = A.compose_many(
                    F.f1[(pr_el(s1, t), pr_el(s2, t))], ins, rho_inv)
            pi = pairH.product_witness.mediate(Cone(S.h(s1, s2), comps))
            f1[(s1, s2)] = leg_for_arrow(A, pairH, pi)
    out = EnrichedMap(name or "Cur(%s)" % F.name, S, H,
                      {s: curried[s] for s in S.carrier}, f1)
    return out, curried


# -- naturality of the tensored-colimit comparison ----------------------------

def _default_product_map(provider, pair_src, pair_tgt, src, tgt):
    """The product map whose component at each carrier element is the
    canonical arrow between the target homs (must be unique)."""
    A = provider.tensor.base
    D = provider.D
    comps = {}
    for c in provider.C.carrier:
        hs = D.h(src[0].f0[c], src[1].f0[c])
        ht = D.h(tgt[0].f0[c], tgt[1].f0[c])
        arrows = A.hom(hs, ht)
        if len(arrows) != 1:
            raise Absent("no canonical component at %r" % c)
        comps[c] = A.compose(arrows[0], pair_src.product_legs[c])
    return pair_tgt.product_witness.mediate(
        Cone(pair_src.product_obj, comps))


def tau_square_commutes(provider, srcA, srcB, tgtA, tgtB,
                        pmA=None, pmB=None):
    """The comparison square: tensoring the induced hom arrows commutes
    with the two tensored-colimit comparisons.

    srcA..tgtB are ordered pairs of maps; pmA/pmB are product maps
    realising the transformations (canonical unique components when
    omitted)."""
    T = provider.tensor
    A = T.base
    pairFA = provider.pair(*srcA)
    pairFB = provider.pair(*srcB)
    pairGA = provider.pair(*tgtA)
    pairGB = provider.pair(*tgtB)
    if pmA is None:
        pmA = _default_product_map(provider, pairFA, pairGA, srcA, tgtA)
    if pmB is None:
        pmB = _default_product_map(provider, pairFB, pairGB, srcB, tgtB)
    aA = _induced_hom_arrow(provider, provider, pairFA, pairGA, pmA)
    aB = _induced_hom_arrow(provider, provider, pairFB, pairGB, pmB)
    prodF, prF1, prF2, wF, tauF, _ = tensor_of_pairs(provider, pairFA, pairFB)
    prodG, prG1, prG2, wG, tauG, _ = tensor_of_pairs(provider, pairGA, pairGB)
    # u : colim(tensor F) -> colim(tensor G) induced by the shifted legs
    legs = {}
    for o in prodF.objects:
        o1, o2 = prF1.omap[o], prF2.omap[o]
        _, pi1 = pairFA.p_objects[o1]
        _, pi2 = pairFB.p_objects[o2]
        s1 = _p_object_name(A.dom(pi1), A.compose(pmA, pi1))
        s2 = _p_object_name(A.dom(pi2), A.compose(pmB, pi2))
        legs[o] = wG.cone.legs["(%s,%s)" % (s1, s2)]
    cands = [m for m in A.hom(wF.apex, wG.apex)
             if all(A.compose(m, wF.cone.legs[o]) == legs[o]
                    for o in prodF.objects)]
    if len(cands) != 1:
        raise Absent("tensored comparison transformation not induced")
    u = cands[0]
    lhs = A.compose(T.ar(aA, aB), tauF)
    rhs = A.compose(tauG, u)
    return lhs == rhs


# -- the product-hom isomorphism ----------------------------------------------

def product_hom_iso(provider_T, provider_U, provider_TU, prod_TU,
                    pi_T, pi_U, budget=None):
    """h(S, TxU) = h(S,T) x h(S,U): explicit mutually inverse maps.

    provider_T : maps S -> T; provider_U : maps S -> U; provider_TU :
    maps S -> TxU; prod_TU with projections pi_T, pi_U the product
    enriched set.  Returns (forward, backward, report dict).
    """
    budget = as_budget(budget)
    ten = provider_TU.tensor
    A = ten.base
    P = ten if ten.is_product_structure() else None
    if P is None:
        raise CapabilityMissing("product-hom iso needs a product tensor")
    S = provider_TU.C
    H_TU = provider_TU.materialize()
    H_T = provider_T.materialize()
    H_U = provider_U.materialize()
    HH, q1, q2 = we_product(H_T, H_U, products=P)

    # carrier correspondences
    fwd0 = {}
    for m in provider_TU.maps:
        mt = compose_we_arrows(pi_T, m)
        mu = compose_we_arrows(pi_U, m)
        fwd0[provider_TU.name_of(m)] = "(%s,%s)" % (
            provider_T.name_of(mt), provider_U.name_of(mu))
    bwd0 = {}
    from .enriched import pair_we_arrows
    for mt in provider_T.maps:
        for mu in provider_U.maps:
            paired = pair_we_arrows(mt, mu, prod_TU, products=P)
            bwd0["(%s,%s)" % (provider_T.name_of(mt),
                              provider_U.name_of(mu))] = \
                provider_TU.name_of(paired)

    fwd1 = {}
    for m1 in provider_TU.maps:
        for m2 in provider_TU.maps:
            pair_src = provider_TU.pair(m1, m2)
            mt1 = provider_T.map_of(fwd0[provider_TU.name_of(m1)]
                                    .split(",")[0][1:])
            mu1 = provider_U.map_of(fwd0[provider_TU.name_of(m1)]
                                    .split(",")[1][:-1])
            mt2 = provider_T.map_of(fwd0[provider_TU.name_of(m2)]
                                    .split(",")[0][1:])
            mu2 = provider_U.map_of(fwd0[provider_TU.name_of(m2)]
                                    .split(",")[1][:-1])
            pair_t = provider_T.pair(mt1, mt2)
            pair_u = provider_U.pair(mu1, mu2)
            comps_t = {s: A.compose(pi_T.f1[(m1.f0[s], m2.f0[s])],
                                    pair_src.product_legs[s])
                       for s in S.carrier}
            comps_u = {s: A.compose(pi_U.f1[(m1.f0[s], m2.f0[s])],
                                    pair_src.product_legs[s])
                       for s in S.carrier}
            pm_t = pair_t.product_witness.mediate(
                Cone(pair_src.product_obj, comps_t))
            pm_u = pair_u.product_witness.mediate(
                Cone(pair_src.product_obj, comps_u))
            at = _induced_hom_arrow(provider_TU, provider_T, pair_src,
                                    pair_t, pm_t)
            au = _induced_hom_arrow(provider_TU, provider_U, pair_src,
                                    pair_u, pm_u)
            fwd1[(provider_TU.name_of(m1), provider_TU.name_of(m2))] = \
                P.mediate_pair(pair_t.hom_obj, pair_u.hom_obj,
                               pair_src.hom_obj, at, au)
    forward = EnrichedMap("split", H_TU, HH, fwd0, fwd1)

    bwd1 = {}
    for nt1, nu1 in [(n[1:-1].split(",")[0], n[1:-1].split(",")[1])
                     for n in HH.carrier]:
        for nt2, nu2 in [(n[1:-1].split(",")[0], n[1:-1].split(",")[1])
                         for n in HH.carrier]:
            mt1, mu1 = provider_T.map_of(nt1), provider_U.map_of(nu1)
            mt2, mu2 = provider_T.map_of(nt2), provider_U.map_of(nu2)
            pair_t = provider_T.pair(mt1, mt2)
            pair_u = provider_U.pair(mu1, mu2)
            tgt1 = provider_TU.map_of(bwd0["(%s,%s)" % (nt1, nu1)])
            tgt2 = provider_TU.map_of(bwd0["(%s,%s)" % (nt2, nu2)])
            pair_tgt = provider_TU.pair(tgt1, tgt2)
            prodP, pr1, pr2, w, u, u_inv = tensor_of_pairs(
                provider_TU, pair_t, pair_u, tensor=P)
            legs = {}
            for o in prodP.objects:
                o1, o2 = pr1.omap[o], pr2.omap[o]
                a1, piT = pair_t.p_objects[o1]
                a2, piU = pair_u.p_objects[o2]
                apex = P.ob(a1, a2)
                prA, prB, _ = P.proj(a1, a2)
                comps = {}
                for s in S.carrier:
                    ht = provider_T.D.h(mt1.f0[s], mt2.f0[s])
                    hu = provider_U.D.h(mu1.f0[s], mu2.f0[s])
                    comps[s] = P.mediate_pair(
                        ht, hu, apex,
                        A.compose(A.compose(pair_t.product_legs[s], piT), prA),
                        A.compose(A.compose(pair_u.product_legs[s], piU), prB))
                legs[o] = pair_tgt.product_witness.mediate(
                    Cone(apex, comps))
            phi_c = [m for m in A.hom(w.apex, pair_tgt.product_obj)
                     if all(A.compose(m, w.cone.legs[o]) == legs[o]
                            for o in prodP.objects)]
            if len(phi_c) != 1:
                raise TauNotIso("pairing arrow not induced",
                                pair=((nt1, nu1), (nt2, nu2)))
            e = leg_for_arrow(A, pair_tgt, phi_c[0])
            bwd1[("(%s,%s)" % (nt1, nu1), "(%s,%s)" % (nt2, nu2))] = \
                A.compose(e, u_inv)
    backward = EnrichedMap("pairup", HH, H_TU, bwd0, bwd1)
    return forward, backward, {"carriers_biject":
                               sorted(fwd0.values()) == sorted(HH.carrier)}
