"""Tensor structure over a finite base category: bifunctor, associator,
symmetrizer, unit, and initial-object actions, with instance-level
coherence checks performed up to a supplied skeleton.

The associator runs (x.y).z -> x.(y.z); units and initial actions are
optional capabilities and operations that need them fail fast.
"""

from .errors import (
    Absent,
    CapabilityMissing,
    InvalidStructure,
    UnknownArrow,
    as_budget,
)
from .fincat import FinCategory, FunctorMap
from .universal import Cone, family_product


class UnitData:
    """(I, lam, rho): lam[x] : I.x -> x and rho[x] : x.I -> x."""

    def __init__(self, obj, lam, rho):
        self.obj = obj
        self.lam = dict(lam)
        self.rho = dict(rho)


class InitialActionData:
    """(empty, lam, rho) plus optional absorption isos empty.x -> empty."""

    def __init__(self, obj, lam, rho, absorb_l=None, absorb_r=None):
        self.obj = obj
        self.lam = dict(lam)
        self.rho = dict(rho)
        self.absorb_l = dict(absorb_l) if absorb_l else None
        self.absorb_r = dict(absorb_r) if absorb_r else None


class TensorStructure:
    """(A, tensor) with whatever optional structure the instance carries.

    ten_ob : object pair -> object; ten_ar : arrow pair -> arrow;
    associator : object triple -> arrow (x.y).z -> x.(y.z).
    """

    def __init__(self, base, ten_ob, ten_ar, associator=None,
                 symmetrizer=None, unit=None, initial=None,
                 projections=None, name="tensor", validate=True,
                 partial=False):
        self.base = base
        self.name = name
        self.ten_ob = dict(ten_ob)
        self.ten_ar = dict(ten_ar)
        self.associator = dict(associator) if associator else None
        self.symmetrizer = dict(symmetrizer) if symmetrizer else None
        self.unit = unit
        self.initial = initial
        # projections[(x, y)] = (pi1, pi2, witness) when the tensor is a
        # designated product structure
        self.projections = projections
        # partial tensors arise as fragments of a larger world: tables
        # need not be total and every law is checked on defined entries
        self.partial = partial
        if validate:
            self._validate()

    # -- access -----------------------------------------------------------

    def ob(self, x, y):
        return self.ten_ob[(x, y)]

    def ar(self, f, g):
        try:
            return self.ten_ar[(f, g)]
        except KeyError:
            raise UnknownArrow("no tensor entry for (%r,%r)" % (f, g))

    def alpha(self, x, y, z):
        if self.associator is None:
            raise CapabilityMissing("tensor %r has no associator" % self.name)
        return self.associator[(x, y, z)]

    def sigma(self, x, y):
        if self.symmetrizer is None:
            raise CapabilityMissing("tensor %r has no symmetrizer" % self.name)
        return self.symmetrizer[(x, y)]

    def require_unit(self):
        if self.unit is None:
            raise CapabilityMissing("tensor %r has no unit" % self.name)
        return self.unit

    def require_initial(self):
        if self.initial is None:
            raise CapabilityMissing("tensor %r has no initial action" % self.name)
        return self.initial

    def require_absorption(self):
        ini = self.require_initial()
        if ini.absorb_l is None or ini.absorb_r is None:
            raise CapabilityMissing(
                "tensor %r has no absorption isomorphisms" % self.name)
        return ini

    def is_product_structure(self):
        return self.projections is not None

    def proj(self, x, y):
        if self.projections is None:
            raise CapabilityMissing("tensor %r is not a product structure"
                                    % self.name)
        return self.projections[(x, y)]

    def mediate_pair(self, x, y, apex, leg1, leg2):
        """The unique arrow apex -> x.y through the designated projections."""
        _, _, wit = self.proj(x, y)
        return wit.mediate(Cone(apex, {"l": leg1, "r": leg2}))

    # -- validation ---------------------------------------------------------

    def _validate(self):
        A = self.base
        if not self.partial:
            for x in A.objects:
                for y in A.objects:
                    if (x, y) not in self.ten_ob:
                        raise InvalidStructure(
                            "ten_ob not total at (%r,%r)" % (x, y))
            for f in A.arrow_names:
                for g in A.arrow_names:
                    if (f, g) not in self.ten_ar:
                        raise InvalidStructure(
                            "ten_ar not total at (%r,%r)" % (f, g))
        for (f, g), h in self.ten_ar.items():
            want_dom = self.ten_ob.get((A.dom(f), A.dom(g)))
            want_cod = self.ten_ob.get((A.cod(f), A.cod(g)))
            if want_dom is None or want_cod is None:
                raise InvalidStructure(
                    "ten_ar entry (%r,%r) lacks object corners" % (f, g))
            if A.dom(h) != want_dom or A.cod(h) != want_cod:
                raise InvalidStructure("tensor of (%r,%r) mistyped" % (f, g))
        for x in A.objects:
            for y in A.objects:
                if (x, y) not in self.ten_ob:
                    continue
                entry = self.ten_ar.get((A.id_of(x), A.id_of(y)))
                if entry is None and self.partial:
                    continue
                if entry != A.id_of(self.ten_ob[(x, y)]):
                    raise InvalidStructure(
                        "tensor does not preserve identities at (%r,%r)" % (x, y))
        for (f1, g1), h1 in A._then.items():
            for (f2, g2), h2 in A._then.items():
                t1 = self.ten_ar.get((f1, f2))
                t2 = self.ten_ar.get((g1, g2))
                t3 = self.ten_ar.get((h1, h2))
                if t1 is None or t2 is None or t3 is None:
                    if self.partial:
                        continue
                    raise InvalidStructure("tensor table has holes")
                if A.then(t1, t2) != t3:
                    raise InvalidStructure(
                        "tensor not bifunctorial at (%r,%r);(%r,%r)"
                        % (f1, f2, g1, g2))
        if self.associator is not None:
            self._check_family3(self.associator, "associator",
                                lambda x, y, z: self.ten_ob[(self.ten_ob[(x, y)], z)],
                                lambda x, y, z: self.ten_ob[(x, self.ten_ob[(y, z)])])
        if self.symmetrizer is not None:
            A = self.base
            for (x, y), s in self.symmetrizer.items():
                if (A.dom(s) != self.ten_ob[(x, y)]
                        or A.cod(s) != self.ten_ob[(y, x)]):
                    raise InvalidStructure("symmetrizer mistyped at (%r,%r)"
                                           % (x, y))
            for f in A.arrow_names:
                for g in A.arrow_names:
                    s_cod = self.symmetrizer.get((A.cod(f), A.cod(g)))
                    s_dom = self.symmetrizer.get((A.dom(f), A.dom(g)))
                    fg = self.ten_ar.get((f, g))
                    gf = self.ten_ar.get((g, f))
                    if None in (s_cod, s_dom, fg, gf):
                        if self.partial:
                            continue
                        raise InvalidStructure("symmetrizer table has holes")
                    if A.compose(s_cod, fg) != A.compose(gf, s_dom):
                        raise InvalidStructure(
                            "symmetrizer not natural at (%r,%r)" % (f, g))
        if self.unit is not None:
            self._check_unit_naturality(self.unit, "unit")
        if self.initial is not None:
            self._check_unit_naturality(self.initial, "initial action")
            A = self.base
            for x in A.objects:
                if len(A.hom(self.initial.obj, x)) != 1:
                    raise InvalidStructure(
                        "%r is not initial in %r" % (self.initial.obj, A.name))
            for side, tab in (("l", self.initial.absorb_l),
                              ("r", self.initial.absorb_r)):
                if tab is None:
                    continue
                e = self.initial.obj
                for x in A.objects:
                    src = self.ten_ob[(e, x)] if side == "l" else self.ten_ob[(x, e)]
                    a = tab[x]
                    if A.dom(a) != src or A.cod(a) != e or not A.is_iso(a):
                        raise InvalidStructure(
                            "absorption %s at %r is not an iso onto %r"
                            % (side, x, e))

    def _check_family3(self, fam, label, dom_of, cod_of):
        A = self.base
        for (x, y, z), a in fam.items():
            try:
                want_dom = dom_of(x, y, z)
                want_cod = cod_of(x, y, z)
            except KeyError:
                raise InvalidStructure(
                    "%s entry (%r,%r,%r) outside the object table"
                    % (label, x, y, z))
            if A.dom(a) != want_dom or A.cod(a) != want_cod:
                raise InvalidStructure(
                    "%s mistyped at (%r,%r,%r)" % (label, x, y, z))
        if not self.partial:
            for x in A.objects:
                for y in A.objects:
                    for z in A.objects:
                        if (x, y, z) not in fam:
                            raise InvalidStructure("%s not total" % label)
        for f in A.arrow_names:
            for g in A.arrow_names:
                for h in A.arrow_names:
                    a_dom = fam.get((A.dom(f), A.dom(g), A.dom(h)))
                    a_cod = fam.get((A.cod(f), A.cod(g), A.cod(h)))
                    fg = self.ten_ar.get((f, g))
                    gh = self.ten_ar.get((g, h))
                    fg_h = self.ten_ar.get((fg, h)) if fg else None
                    f_gh = self.ten_ar.get((f, gh)) if gh else None
                    if None in (a_dom, a_cod, fg_h, f_gh):
                        if self.partial:
                            continue
                        raise InvalidStructure("%s table has holes" % label)
                    if A.compose(a_cod, fg_h) != A.compose(f_gh, a_dom):
                        raise InvalidStructure(
                            "%s not natural at (%r,%r,%r)" % (label, f, g, h))

    def _check_unit_naturality(self, u, label):
        A = self.base
        e = u.obj
        for x, lam in u.lam.items():
            if A.dom(lam) != self.ten_ob[(e, x)] or A.cod(lam) != x:
                raise InvalidStructure("%s lam mistyped at %r" % (label, x))
        for x, rho in u.rho.items():
            if A.dom(rho) != self.ten_ob[(x, e)] or A.cod(rho) != x:
                raise InvalidStructure("%s rho mistyped at %r" % (label, x))
        if not self.partial and (set(u.lam) != set(A.objects)
                                 or set(u.rho) != set(A.objects)):
            raise InvalidStructure("%s action not total" % label)
        for f in A.arrow_names:
            x, y = A.dom(f), A.cod(f)
            ef = self.ten_ar.get((A.id_of(e), f))
            fe = self.ten_ar.get((f, A.id_of(e)))
            if x in u.lam and y in u.lam and ef is not None:
                if A.compose(u.lam[y], ef) != A.compose(f, u.lam[x]):
                    raise InvalidStructure("%s lam not natural at %r"
                                           % (label, f))
            if x in u.rho and y in u.rho and fe is not None:
                if A.compose(u.rho[y], fe) != A.compose(f, u.rho[x]):
                    raise InvalidStructure("%s rho not natural at %r"
                                           % (label, f))


class TensorFunctor:
    """(F, rho): F a functor between the bases, rho(a, b) an arrow
    tenS(F a, F b) -> F(tenA(a, b)) natural in both slots."""

    def __init__(self, functor, rho, src_tensor, tgt_tensor, validate=True):
        self.functor = functor
        self.rho = dict(rho)
        self.src_tensor = src_tensor
        self.tgt_tensor = tgt_tensor
        if validate:
            self._validate()

    def _validate(self):
        F = self.functor
        A, S = F.src, F.tgt
        TA, TS = self.src_tensor, self.tgt_tensor
        if TA.base != A or TS.base != S:
            raise InvalidStructure("tensor functor bases do not line up")
        for a in A.objects:
            for b in A.objects:
                r = self.rho[(a, b)]
                if (S.dom(r) != TS.ten_ob[(F.omap[a], F.omap[b])]
                        or S.cod(r) != F.omap[TA.ten_ob[(a, b)]]):
                    raise InvalidStructure("rho mistyped at (%r,%r)" % (a, b))
        for f in A.arrow_names:
            for g in A.arrow_names:
                lhs = S.compose(F.amap[TA.ten_ar[(f, g)]],
                                self.rho[(A.dom(f), A.dom(g))])
                rhs = S.compose(self.rho[(A.cod(f), A.cod(g))],
                                TS.ten_ar[(F.amap[f], F.amap[g])])
                if lhs != rhs:
                    raise InvalidStructure("rho not natural at (%r,%r)" % (f, g))


def identity_tensor_functor(T):
    from .fincat import identity_functor
    A = T.base
    rho = {(a, b): A.id_of(T.ten_ob[(a, b)])
           for a in A.objects for b in A.objects}
    return TensorFunctor(identity_functor(A), rho, T, T, validate=False)


def apply_tensor(T, f, g):
    """The tensor of two arrows."""
    return T.ar(f, g)


class CoherenceReport:
    """Per-law verdicts with counterexample tuples."""

    def __init__(self):
        self.laws = {}

    def record(self, law, passed, counterexamples):
        self.laws[law] = (passed, tuple(counterexamples))

    def ok(self, law=None):
        if law is not None:
            return self.laws[law][0]
        return all(passed for passed, _ in self.laws.values())

    def as_dict(self):
        return {law: {"pass": passed, "counterexamples": list(ces)}
                for law, (passed, ces) in sorted(self.laws.items())}


def check_tensor_structure(T, sk, max_counterexamples=3):
    """Instance-level coherence after sk: pentagon, unit/initial
    triangles, symmetrizer involutivity, associator invertibility."""
    A = T.base
    report = CoherenceReport()

    if T.associator is not None:
        bad = []
        checked = 0
        for w in A.objects:
            for x in A.objects:
                for y in A.objects:
                    for z in A.objects:
                        try:
                            lhs = A.compose(
                                T.alpha(w, x, T.ob(y, z)),
                                T.alpha(T.ob(w, x), y, z))
                            rhs = A.compose_many(
                                T.ar(A.id_of(w), T.alpha(x, y, z)),
                                T.alpha(w, T.ob(x, y), z),
                                T.ar(T.alpha(w, x, y), A.id_of(z)))
                        except (KeyError, UnknownArrow):
                            if T.partial:
                                continue
                            raise
                        checked += 1
                        if not sk.sk_equal(lhs, rhs):
                            bad.append((w, x, y, z))
        report.record("pentagon", not bad, bad[:max_counterexamples])
        bad = [t for t, a in T.associator.items() if not A.is_iso(a)]
        report.record("associator-invertible", not bad,
                      bad[:max_counterexamples])

    if T.symmetrizer is not None:
        bad = []
        for (x, y) in list(T.symmetrizer):
            if (y, x) not in T.symmetrizer:
                continue
            two = A.compose(T.sigma(y, x), T.sigma(x, y))
            if not sk.sk_equal(two, A.id_of(T.ob(x, y))):
                bad.append((x, y))
        report.record("symmetrizer-involutive", not bad,
                      bad[:max_counterexamples])

    if T.unit is not None and T.associator is not None:
        I = T.unit.obj
        bad = []
        for x in A.objects:
            for y in A.objects:
                try:
                    lhs = A.compose(T.ar(A.id_of(x), T.unit.lam[y]),
                                    T.alpha(x, I, y))
                    rhs = T.ar(T.unit.rho[x], A.id_of(y))
                except (KeyError, UnknownArrow):
                    if T.partial:
                        continue
                    raise
                if not sk.sk_equal(lhs, rhs):
                    bad.append((x, y))
        report.record("unit-triangle", not bad, bad[:max_counterexamples])

    if T.initial is not None and T.associator is not None:
        e = T.initial.obj
        lam, rho = T.initial.lam, T.initial.rho
        bad = []
        for x in A.objects:
            try:
                lhs = A.compose_many(lam[x],
                                     T.ar(A.id_of(e), rho[x]),
                                     T.alpha(e, x, e))
                rhs = A.compose(rho[x], T.ar(lam[x], A.id_of(e)))
            except (KeyError, UnknownArrow):
                if T.partial:
                    continue
                raise
            if not sk.sk_equal(lhs, rhs):
                bad.append((x,))
        report.record("initial-middle-triangle", not bad,
                      bad[:max_counterexamples])
        bad = []
        for x in A.objects:
            for y in A.objects:
                try:
                    lhs = A.compose(T.ar(A.id_of(x), lam[y]), T.alpha(x, e, y))
                    rhs = T.ar(rho[x], A.id_of(y))
                except (KeyError, UnknownArrow):
                    if T.partial:
                        continue
                    raise
                if not sk.sk_equal(lhs, rhs):
                    bad.append((x, y))
        report.record("initial-unit-triangle", not bad,
                      bad[:max_counterexamples])

    return report


def action_alpha_associative(T, sk):
    """Is the initial action compatible with the associator after sk
    (the hypothesis under which the two-point and simplex constructions
    produce associative enriched sets)."""
    report = check_tensor_structure(T, sk)
    return (report.ok("initial-middle-triangle")
            and report.ok("initial-unit-triangle"))


# -- stock tensor structures ----------------------------------------------


def product_tensor_structure(A, budget=None, name=None, want_initial=True):
    """The designated-product tensor on a category with all binary
    products: apexes are the lexicographically least universal cones.

    Adds: associator/symmetrizer (mediated canonical isos), unit from
    the terminal object when present, initial action with absorption
    when an initial object exists and the products absorb it.
    """
    budget = as_budget(budget)
    ten_ob = {}
    projections = {}
    for x in A.objects:
        for y in A.objects:
            r = family_product(A, {"l": x, "r": y}, "product", budget)
            if r is None:
                raise Absent("no product of (%r,%r) in %r" % (x, y, A.name))
            obj, legs, wit = r
            ten_ob[(x, y)] = obj
            projections[(x, y)] = (legs["l"], legs["r"], wit)

    def mediate(x, y, apex, l1, l2):
        return projections[(x, y)][2].mediate(Cone(apex, {"l": l1, "r": l2}))

    ten_ar = {}
    for f in A.arrow_names:
        for g in A.arrow_names:
            xd, yd = A.dom(f), A.dom(g)
            xc, yc = A.cod(f), A.cod(g)
            p1, p2, _ = projections[(xd, yd)]
            ten_ar[(f, g)] = mediate(xc, yc, ten_ob[(xd, yd)],
                                     A.compose(f, p1), A.compose(g, p2))
    associator = {}
    for x in A.objects:
        for y in A.objects:
            for z in A.objects:
                xy = ten_ob[(x, y)]
                yz = ten_ob[(y, z)]
                lhsOb = ten_ob[(xy, z)]
                p_xy, p_z, _ = projections[(xy, z)]
                p_x, p_y, _ = projections[(x, y)]
                leg_x = A.compose(p_x, p_xy)
                leg_y = A.compose(p_y, p_xy)
                inner = mediate(y, z, lhsOb, leg_y, p_z)
                associator[(x, y, z)] = mediate(x, yz, lhsOb, leg_x, inner)
    symmetrizer = {}
    for x in A.objects:
        for y in A.objects:
            p1, p2, _ = projections[(x, y)]
            symmetrizer[(x, y)] = mediate(y, x, ten_ob[(x, y)], p2, p1)
    unit = None
    term = family_product(A, {}, "product", budget)
    if term is not None:
        I = term[0]
        lam = {}
        rho = {}
        for x in A.objects:
            p1, p2, _ = projections[(I, x)]
            lam[x] = p2
            q1, q2, _ = projections[(x, I)]
            rho[x] = q1
        unit = UnitData(I, lam, rho)
    initial = None
    if want_initial:
        ini = family_product(A, {}, "coproduct", budget)
        if ini is not None:
            e = ini[0]
            lam = {x: A.hom(ten_ob[(e, x)], x) for x in A.objects}
            rho = {x: A.hom(ten_ob[(x, e)], x) for x in A.objects}
            absorb_l = {}
            absorb_r = {}
            ok = True
            for x in A.objects:
                al = [a for a in A.hom(ten_ob[(e, x)], e) if A.is_iso(a)]
                ar_ = [a for a in A.hom(ten_ob[(x, e)], e) if A.is_iso(a)]
                if not al or not ar_:
                    ok = False
                    break
                absorb_l[x] = al[0]
                absorb_r[x] = ar_[0]
            if ok:
                # the action arrows: unique from the (initial) apex
                lam = {x: A.compose(_unique_from_initial(A, e, x), absorb_l[x])
                       for x in A.objects}
                rho = {x: A.compose(_unique_from_initial(A, e, x), absorb_r[x])
                       for x in A.objects}
                initial = InitialActionData(e, lam, rho, absorb_l, absorb_r)
    return TensorStructure(A, ten_ob, ten_ar, associator, symmetrizer,
                           unit, initial, projections=projections,
                           name=name or "%s-products" % A.name)


def _unique_from_initial(A, e, x):
    hom = A.hom(e, x)
    if len(hom) != 1:
        raise Absent("%r is not initial" % e)
    return hom[0]


def thin_set_fragment():
    """The cartesian fragment on the empty set and a singleton."""
    arrows = [("id_0", "0", "0"), ("id_1", "1", "1"), ("z", "0", "1")]
    ident = {"0": "id_0", "1": "id_1"}
    then = {("id_0", "id_0"): "id_0", ("id_1", "id_1"): "id_1",
            ("id_0", "z"): "z", ("z", "id_1"): "z"}
    A = FinCategory("set01", ["0", "1"], arrows, ident, then)
    return product_tensor_structure(A, name="set01-cartesian")


def meet_tensor(name="div6"):
    """The divisibility lattice {1,2,3,6} with meet as tensor: thin,
    with products, coproducts, unit (top) and initial action (bottom)."""
    from .fincat import poset_category
    A = poset_category(name, ["1", "2", "3", "6"],
                       lambda x, y: int(y) % int(x) == 0)
    return product_tensor_structure(A, name="%s-meet" % name)


def smash_tensor():
    """Pointed sets {0, S0} with the smash product: non-thin, honest
    unit S0 and zero object 0 with absorption."""
    # objects: "0" = one-point set (zero object), "S" = two-point set
    # arrows: z_* between everything via the basepoint, id_S, and the
    # collapse c : S -> S sending the free point to the basepoint
    objects = ["0", "S"]
    arrows = [("id_0", "0", "0"), ("id_S", "S", "S"),
              ("z0S", "0", "S"), ("zS0", "S", "0"), ("c", "S", "S")]
    ident = {"0": "id_0", "S": "id_S"}
    then = {}
    # composition: anything through "0" collapses; c is idempotent
    def comp(g, f):
        # returns g after f by case analysis
        if f == "id_0" or f == "id_S":
            return g
        if g == "id_0" or g == "id_S":
            return f
        pair = (g, f)
        if pair == ("zS0", "z0S"):
            return "id_0"
        if pair == ("z0S", "zS0"):
            return "c"
        if pair == ("c", "z0S"):
            return "z0S"
        if pair == ("zS0", "c"):
            return "zS0"
        if pair == ("c", "c"):
            return "c"
        raise AssertionError(pair)
    for f, fd, fc in arrows:
        for g, gd, gc in arrows:
            if fc == gd:
                then[(f, g)] = comp(g, f)
    A = FinCategory("psets", objects, arrows, ident, then)
    smash_ob = {("0", "0"): "0", ("0", "S"): "0", ("S", "0"): "0",
                ("S", "S"): "S"}
    zero_to = {"0": "id_0", "S": "z0S"}
    to_zero = {"0": "id_0", "S": "zS0"}

    def smash_ar(f, g):
        df, cf = A.dom(f), A.cod(f)
        dg, cg = A.dom(g), A.cod(g)
        src = smash_ob[(df, dg)]
        tgt = smash_ob[(cf, cg)]
        if src == "0":
            return zero_to[tgt]
        # src = S: both f, g start at S
        if tgt == "0":
            return "zS0"
        # f, g : S -> S; smash kills the free point if either does
        if f == "c" or g == "c" or f == "zS0" or g == "zS0":
            # composite sends free point to basepoint
            return "c"
        return "id_S"
    ten_ar = {}
    for f in A.arrow_names:
        for g in A.arrow_names:
            ten_ar[(f, g)] = smash_ar(f, g)
    associator = {}
    for x in objects:
        for y in objects:
            for z in objects:
                associator[(x, y, z)] = A.id_of(
                    smash_ob[(smash_ob[(x, y)], z)])
    symmetrizer = {(x, y): A.id_of(smash_ob[(x, y)])
                   for x in objects for y in objects}
    unit = UnitData("S", {x: A.id_of(x) for x in objects},
                    {x: A.id_of(x) for x in objects})
    initial = InitialActionData(
        "0", {x: zero_to[x] for x in objects},
        {x: zero_to[x] for x in objects},
        absorb_l={x: "id_0" for x in objects},
        absorb_r={x: "id_0" for x in objects})
    return TensorStructure(A, smash_ob, ten_ar, associator, symmetrizer,
                           unit, initial, name="smash")


class SetFragment:
    """An honest fragment of finite sets and functions, with the
    cartesian product as a partial tensor: product corners exist only
    where a product set was supplied.

    sets: dict name -> tuple of element names.  functions: dict name ->
    (src, tgt, dict element -> element); identities are added.  The
    arrow set is closed under composition and, where corners exist,
    under products of arrows.
    """

    def __init__(self, name, sets, functions, products):
        self.sets = {k: tuple(v) for k, v in sets.items()}
        self.products = dict(products)  # (x, y) -> product set name
        # element pairing convention inside product sets
        self.pair_elem = lambda a, b: "(%s,%s)" % (a, b)
        funcs = {}
        for nm, (s, t, mapping) in functions.items():
            funcs[nm] = (s, t, dict(mapping))
        for snm, elems in self.sets.items():
            funcs["id_%s" % snm] = (snm, snm, {e: e for e in elems})
        # close under composition
        changed = True
        while changed:
            changed = False
            items = list(funcs.items())
            for n1, (s1, t1, m1) in items:
                for n2, (s2, t2, m2) in items:
                    if t1 != s2:
                        continue
                    comp = {e: m2[m1[e]] for e in self.sets[s1]}
                    if not any(s == s1 and t == t2 and m == comp
                               for (s, t, m) in funcs.values()):
                        funcs["%s.%s" % (n2, n1)] = (s1, t2, comp)
                        changed = True
        # close under products of arrows where corners exist
        changed = True
        while changed:
            changed = False
            items = list(funcs.items())
            for n1, (s1, t1, m1) in items:
                for n2, (s2, t2, m2) in items:
                    if (s1, s2) not in self.products \
                            or (t1, t2) not in self.products:
                        continue
                    src = self.products[(s1, s2)]
                    tgt = self.products[(t1, t2)]
                    mapping = {}
                    for a in self.sets[s1]:
                        for b in self.sets[s2]:
                            mapping[self.pair_elem(a, b)] = \
                                self.pair_elem(m1[a], m2[b])
                    if not any(s == src and t == tgt and m == mapping
                               for (s, t, m) in funcs.values()):
                        funcs["(%sx%s)" % (n1, n2)] = (src, tgt, mapping)
                        changed = True
        self.funcs = funcs
        arrows = [(nm, s, t) for nm, (s, t, _) in funcs.items()]
        ident = {snm: "id_%s" % snm for snm in self.sets}
        then = {}
        graph_index = {}
        for nm, (s, t, m) in funcs.items():
            graph_index[(s, t, tuple(sorted(m.items())))] = nm
        for n1, (s1, t1, m1) in funcs.items():
            for n2, (s2, t2, m2) in funcs.items():
                if t1 != s2:
                    continue
                comp = {e: m2[m1[e]] for e in self.sets[s1]}
                then[(n1, n2)] = graph_index[(s1, t2,
                                              tuple(sorted(comp.items())))]
        self.category = FinCategory(name, sorted(self.sets), arrows, ident,
                                    then)
        ten_ob = dict(self.products)
        ten_ar = {}
        for n1, (s1, t1, m1) in funcs.items():
            for n2, (s2, t2, m2) in funcs.items():
                if (s1, s2) in self.products and (t1, t2) in self.products:
                    mapping = {}
                    for a in self.sets[s1]:
                        for b in self.sets[s2]:
                            mapping[self.pair_elem(a, b)] = \
                                self.pair_elem(m1[a], m2[b])
                    ten_ar[(n1, n2)] = graph_index[
                        (self.products[(s1, s2)], self.products[(t1, t2)],
                         tuple(sorted(mapping.items())))]
        associator = {}
        for (x, y), xy in self.products.items():
            for z in self.sets:
                if (xy, z) in self.products and (y, z) in self.products \
                        and (x, self.products[(y, z)]) in self.products:
                    src = self.products[(xy, z)]
                    tgt = self.products[(x, self.products[(y, z)])]
                    mapping = {}
                    for a in self.sets[x]:
                        for b in self.sets[y]:
                            for c in self.sets[z]:
                                mapping[self.pair_elem(self.pair_elem(a, b), c)] = \
                                    self.pair_elem(a, self.pair_elem(b, c))
                    key = (src, tgt, tuple(sorted(mapping.items())))
                    if key in graph_index:
                        associator[(x, y, z)] = graph_index[key]
        symmetrizer = {}
        for (x, y), xy in self.products.items():
            if (y, x) in self.products:
                mapping = {}
                for a in self.sets[x]:
                    for b in self.sets[y]:
                        mapping[self.pair_elem(a, b)] = self.pair_elem(b, a)
                key = (xy, self.products[(y, x)],
                       tuple(sorted(mapping.items())))
                if key in graph_index:
                    symmetrizer[(x, y)] = graph_index[key]
        self.tensor = TensorStructure(
            self.category, ten_ob, ten_ar, associator or None,
            symmetrizer or None, name="%s-cartesian" % name, partial=True)
        self.graph_index = graph_index

    def function_named(self, src, tgt, mapping):
        return self.graph_index[(src, tgt, tuple(sorted(mapping.items())))]


def commutative_monoid_tensor(name, elements, add, unit_elem):
    """A one-object tensor category from a commutative monoid: the
    tensor of arrows is their sum.  Useful for pentagon-failure
    fixtures since every hom has several arrows."""
    from .fincat import monoid_category
    table = {(a, b): add(a, b) for a in elements for b in elements}
    A = monoid_category(name, elements, table, unit_elem)
    ten_ob = {("*", "*"): "*"}
    ten_ar = {(f, g): add(f, g) for f in elements for g in elements}
    associator = {("*", "*", "*"): unit_elem}
    symmetrizer = {("*", "*"): unit_elem}
    return TensorStructure(A, ten_ob, ten_ar, associator, symmetrizer,
                           name=name)
