"""Skeleton-relative limits and colimits.

Given J -e-> I -F-> A -sk-> B, the sk-limit is the colimit (in A) of the
domain-object functor on the category P of cones over F.e whose sk-image
lifts along e to an I-indexed natural family in B; the sk-colimit is the
dual.  The two lemma flags (inclusion, monic uniqueness) are computed on
every run so the accompanying lemmas are observable per instance.

Two cone disciplines are supported.  In "strict" mode (default) the cone
family must be natural in A before applying sk, matching the comma
category P is carved from; in "loose" mode only naturality after sk is
required, matching the opening paragraph of the definition.  The loose
mode is what the worked Skel-cospan example needs.
"""

from .errors import (
    Absent,
    LiftMissing,
    NoLimit,
    ShapeMismatch,
    as_budget,
)
from .fincat import FinCategory, FunctorMap
from .universal import Cone, check_mono_epi, colimit_of, family_product, limit_of


class SkLimitResult:
    """The liftable-cone category P, the domain functor p : P -> A, the
    universal witness (or None), and the two lemma flags."""

    def __init__(self, P, p, objects, result, inclusion_holds,
                 induced_monic, monic_uniqueness_holds, induced_legs,
                 lifts):
        self.P = P
        self.p = p
        self.objects = objects          # P-object id -> (apex, legs dict)
        self.result = result            # UniversalWitness or None
        self.inclusion_holds = inclusion_holds
        self.induced_monic = induced_monic
        self.monic_uniqueness_holds = monic_uniqueness_holds
        self.induced_legs = induced_legs  # j -> arrow apex -> F(e(j)) (limits)
        self.lifts = lifts              # P-object id -> stored lift family

    @property
    def apex(self):
        return None if self.result is None else self.result.apex


def _check_shapes(sk, e, F):
    if e.tgt != F.src:
        raise ShapeMismatch("e must land in the source of F")
    if sk.base != F.tgt:
        raise ShapeMismatch("sk must live over the target of F")


def _object_name(apex, legs):
    return "(%s|%s)" % (apex, ",".join("%s:%s" % kv for kv in sorted(legs.items())))


def _enumerate_sk_cones(sk, e, F, budget, loose, direction):
    """P-objects: pairs (apex a, family alpha over Ob(J)) that are
    (sk-)natural and admit a lift along e.  direction='colimit' uses
    families F(e(j)) -> a instead."""
    A = F.tgt
    J, I = e.src, e.tgt
    skF = sk.as_functor()
    B = skF.tgt
    jobjs = list(J.objects)
    arrows_by_pair = {}
    for u in J.arrow_names:
        arrows_by_pair.setdefault((J.dom(u), J.cod(u)), []).append(u)

    def natural(assigned, strictly):
        # cones: F(e(u)) . alpha(x) = alpha(y); cocones: alpha(y) . F(e(u)) = alpha(x)
        for (x, y), us in arrows_by_pair.items():
            if x not in assigned or y not in assigned:
                continue
            for u in us:
                feu = F.amap[e.amap[u]]
                if direction == "limit":
                    lhs, rhs = A.compose(feu, assigned[x]), assigned[y]
                else:
                    lhs, rhs = A.compose(assigned[y], feu), assigned[x]
                if strictly:
                    if lhs != rhs:
                        return False
                else:
                    if not sk.sk_equal(lhs, rhs):
                        return False
        return True

    def has_lift(apex, alpha):
        return _find_lift(sk, e, F, apex, alpha, budget, direction)

    found = []
    for apex in A.objects:
        if direction == "limit":
            cands = [A.hom(apex, F.omap[e.omap[j]]) for j in jobjs]
        else:
            cands = [A.hom(F.omap[e.omap[j]], apex) for j in jobjs]
        if any(not c for c in cands):
            continue

        def backtrack(k, assigned):
            budget.spend()
            if k == len(jobjs):
                lift = has_lift(apex, assigned)
                if lift is not None:
                    found.append((apex, dict(assigned), lift))
                return
            for c in cands[k]:
                assigned[jobjs[k]] = c
                if natural(assigned, strictly=not loose):
                    backtrack(k + 1, assigned)
                del assigned[jobjs[k]]

        backtrack(0, {})
    return found


def _build_p_category(A, found, direction, name):
    """The full subcategory of the (co)slice on the found (apex, family)
    pairs: arrows are A-arrows between apexes commuting with components
    strictly."""
    objects = []
    data = {}
    for apex, legs, lift in found:
        o = _object_name(apex, legs)
        objects.append(o)
        data[o] = (apex, legs, lift)
    arrows = []
    ardata = {}
    for o1, (a1, l1, _) in sorted(data.items()):
        for o2, (a2, l2, _) in sorted(data.items()):
            for phi in A.hom(a1, a2):
                if direction == "limit":
                    ok = all(A.compose(l2[j], phi) == l1[j] for j in l1)
                else:
                    ok = all(A.compose(phi, l1[j]) == l2[j] for j in l1)
                if ok:
                    nm = "%s:%s->%s" % (phi, o1, o2)
                    arrows.append((nm, o1, o2))
                    ardata[nm] = (phi, o1, o2)
    ident = {o: "%s:%s->%s" % (A.id_of(d[0]), o, o) for o, d in data.items()}
    then = {}
    by_dom = {}
    for nm, (phi, o1, o2) in ardata.items():
        by_dom.setdefault(o1, []).append(nm)
    for nm1, (phi1, o1, o2) in ardata.items():
        for nm2 in by_dom.get(o2, ()):
            phi2, _, o3 = ardata[nm2]
            then[(nm1, nm2)] = "%s:%s->%s" % (A.then(phi1, phi2), o1, o3)
    P = FinCategory(name, objects, arrows, ident, then, validate=False)
    p = FunctorMap("p", P, A, {o: d[0] for o, d in data.items()},
                   {nm: d[0] for nm, d in ardata.items()}, validate=False)
    return P, p, data


def _induced_leg(A, witness, data, j, F, e, direction, budget):
    """The arrow between the universal apex and F(e(j)) induced by the
    component family; unique by colimit/limit universality."""
    l = witness.apex
    target = F.omap[e.omap[j]]
    if direction == "limit":
        # cocone over p into constant F(e(j)); mediating arrow l -> F(e(j))
        cands = A.hom(l, target)
        good = [m for m in cands
                if all(A.compose(m, witness.cone.legs[o]) == data[o][1][j]
                       for o in data)]
    else:
        cands = A.hom(target, l)
        good = [m for m in cands
                if all(A.compose(witness.cone.legs[o], m) == data[o][1][j]
                       for o in data)]
    budget.spend(len(cands))
    if len(good) != 1:
        return None
    return good[0]


def _sk_limit_or_colimit(sk, e, F, budget=None, loose=False, direction="limit"):
    _check_shapes(sk, e, F)
    budget = as_budget(budget)
    A = F.tgt
    J = e.src
    found = _enumerate_sk_cones(sk, e, F, budget, loose, direction)
    P, p, rawdata = _build_p_category(
        A, found, direction, name="P[%s]" % F.name)
    data = {o: (apex, legs) for o, (apex, legs, _) in rawdata.items()}
    lifts = {o: lift for o, (_, _, lift) in rawdata.items()}
    if direction == "limit":
        result = colimit_of(p, budget)
    else:
        result = limit_of(p, budget)

    inclusion = None
    induced_monic = None
    monic_unique = True
    induced = {}
    if result is not None:
        legs_ok = True
        for j in J.objects:
            m = _induced_leg(A, result, data, j, F, e, direction, budget)
            if m is None:
                legs_ok = False
                break
            induced[j] = m
        if legs_ok:
            # inclusion lemma conclusion: the induced family is itself a
            # P-object
            probe = _enumerate_probe(sk, e, F, result.apex, induced, budget,
                                     loose, direction)
            inclusion = probe
            prod = family_product(
                A, {j: F.omap[e.omap[j]] for j in J.objects},
                "product" if direction == "limit" else "coproduct", budget)
            if prod is not None:
                obj, plegs, pwit = prod
                if direction == "limit":
                    medi = Cone(result.apex,
                                {j: induced[j] for j in J.objects})
                else:
                    medi = Cone(result.apex,
                                {j: induced[j] for j in J.objects},
                                direction="cocone")
                try:
                    m = pwit.mediate(medi)
                except KeyError:
                    m = None
                if m is not None:
                    monic, epic = check_mono_epi(A, m)
                    induced_monic = monic if direction == "limit" else epic
                    if induced_monic:
                        monic_unique = _verify_unique_factorisations(
                            A, result, data, induced, direction)
        else:
            inclusion = False
    return SkLimitResult(P, p, data, result, inclusion, induced_monic,
                         monic_unique, induced, lifts)


def _enumerate_probe(sk, e, F, apex, legs, budget, loose, direction):
    """Is (apex, legs) an object of P (naturality discipline + lift)?"""
    A = F.tgt
    J = e.src
    for u in J.arrow_names:
        x, y = J.dom(u), J.cod(u)
        feu = F.amap[e.amap[u]]
        if direction == "limit":
            lhs, rhs = A.compose(feu, legs[x]), legs[y]
        else:
            lhs, rhs = A.compose(legs[y], feu), legs[x]
        if loose:
            if not sk.sk_equal(lhs, rhs):
                return False
        else:
            if lhs != rhs:
                return False
    return _lift_exists(sk, e, F, apex, legs, budget, direction)


def _lift_exists(sk, e, F, apex, legs, budget, direction):
    return _find_lift(sk, e, F, apex, legs, budget, direction) is not None


def _find_lift(sk, e, F, apex, legs, budget, direction):
    """The canonically-least I-indexed lift of sk.legs along e, or None.

    The lift is a family over Ob(I) in B, natural for sk.F, agreeing with
    sk.legs on the image of e.
    """
    skF = sk.as_functor()
    B = skF.tgt
    I = e.tgt
    forced = {}
    for j in e.src.objects:
        i = e.omap[j]
        img = skF.amap[legs[j]]
        if i in forced and forced[i] != img:
            return None
        forced[i] = img
    free = [i for i in I.objects if i not in forced]
    ska = skF.omap[apex]

    def i_ok(assigned):
        for v in I.arrow_names:
            x, y = I.dom(v), I.cod(v)
            if x not in assigned or y not in assigned:
                continue
            sfv = skF.amap[F.amap[v]]
            if direction == "limit":
                if B.compose(sfv, assigned[x]) != assigned[y]:
                    return False
            else:
                if B.compose(assigned[y], sfv) != assigned[x]:
                    return False
        return True

    if not i_ok(forced):
        return None

    def backtrack(k, assigned):
        budget.spend()
        if k == len(free):
            return dict(assigned)
        i = free[k]
        fi = skF.omap[F.omap[i]]
        cands = B.hom(ska, fi) if direction == "limit" else B.hom(fi, ska)
        for c in cands:
            assigned[i] = c
            if i_ok(assigned):
                out = backtrack(k + 1, assigned)
                if out is not None:
                    return out
            del assigned[i]
        return None

    return backtrack(0, dict(forced))


def _verify_unique_factorisations(A, witness, data, induced, direction):
    """Uniqueness lemma: each P-object's universal leg is the unique
    factorisation of its components through the induced family."""
    l = witness.apex
    for o, (b, f) in data.items():
        if direction == "limit":
            cands = [x for x in A.hom(b, l)
                     if all(A.compose(induced[j], x) == f[j] for j in f)]
        else:
            cands = [x for x in A.hom(l, b)
                     if all(A.compose(x, induced[j]) == f[j] for j in f)]
        if cands != [witness.cone.legs[o]] and set(cands) != {witness.cone.legs[o]}:
            return False
    return True


def sk_limit(sk, e, F, budget=None, loose=False):
    """The (sk,e)-limit of F: colimit of the domain-object functor on the
    liftable-cone category, with lemma flags."""
    return _sk_limit_or_colimit(sk, e, F, budget, loose, "limit")


def sk_colimit(sk, e, F, budget=None, loose=False):
    """The (sk,e)-colimit: limit of the codomain-object functor on the
    liftable-cocone category."""
    return _sk_limit_or_colimit(sk, e, F, budget, loose, "colimit")


def sk_limit_map(sk, e, F, G, phi, budget=None, loose=False):
    """The comparison arrow between sk-limits induced by a J-indexed
    family phi : F.e -> G.e that lifts along e after sk.

    phi: dict j -> arrow F(e(j)) -> G(e(j)) in A, natural over J; its
    sk-image must extend to an I-indexed natural family (LiftMissing
    otherwise).  Returns the arrow apex(F) -> apex(G).
    """
    budget = as_budget(budget)
    _check_shapes(sk, e, F)
    _check_shapes(sk, e, G)
    A = F.tgt
    J, I = e.src, e.tgt
    for u in J.arrow_names:
        x, y = J.dom(u), J.cod(u)
        if (A.compose(phi[y], F.amap[e.amap[u]])
                != A.compose(G.amap[e.amap[u]], phi[x])):
            raise ShapeMismatch("phi is not natural over J")
    if not _family_lifts(sk, e, F, G, phi, budget):
        raise LiftMissing("phi has no sk-lift along e")
    rF = sk_limit(sk, e, F, budget, loose)
    rG = sk_limit(sk, e, G, budget, loose)
    if rF.result is None or rG.result is None:
        raise NoLimit("both sk-limits must exist")
    # each P_F-object (a, alpha) maps to the P_G-object (a, phi.alpha);
    # its G-side universal leg gives a cocone over p_F into apex(G)
    legs = {}
    for o, (a, alpha) in rF.objects.items():
        shifted = {j: A.compose(phi[j], alpha[j]) for j in alpha}
        name = _object_name(a, shifted)
        if name not in rG.objects:
            raise Absent("shifted cone missing from target P",
                         trace=[name])
        legs[o] = rG.result.cone.legs[name]
    l = rF.result.apex
    cands = [m for m in A.hom(l, rG.result.apex)
             if all(A.compose(m, rF.result.cone.legs[o]) == legs[o]
                    for o in rF.objects)]
    budget.spend(len(rF.objects))
    if len(cands) != 1:
        raise NoLimit("comparison arrow not uniquely induced")
    return cands[0]


def _family_lifts(sk, e, F, G, phi, budget):
    """Does sk.phi extend to an I-indexed family natural for sk.F -> sk.G?"""
    skF = sk.as_functor()
    B = skF.tgt
    I = e.tgt
    forced = {}
    for j in e.src.objects:
        i = e.omap[j]
        img = skF.amap[phi[j]]
        if i in forced and forced[i] != img:
            return False
        forced[i] = img
    free = [i for i in I.objects if i not in forced]

    def ok(assigned):
        for v in I.arrow_names:
            x, y = I.dom(v), I.cod(v)
            if x not in assigned or y not in assigned:
                continue
            if (B.compose(assigned[y], skF.amap[F.amap[v]])
                    != B.compose(skF.amap[G.amap[v]], assigned[x])):
                return False
        return True

    if not ok(forced):
        return False

    def backtrack(k, assigned):
        budget.spend()
        if k == len(free):
            return True
        i = free[k]
        for c in B.hom(skF.omap[F.omap[i]], skF.omap[G.omap[i]]):
            assigned[i] = c
            if ok(assigned) and backtrack(k + 1, assigned):
                return True
            del assigned[i]
        return False

    return backtrack(0, dict(forced))
