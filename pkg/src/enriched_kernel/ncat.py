"""The small-n tower: an (n+1)-category is a set enriched over the
finite fragment of n-categories in play, a 1-category is a finite
category.  Everything is materialised, never lazy, and capped at a
configurable level (default 3).

Levels talk to each other through structural recursion: products, units,
symmetrizers and associators reduce level by level until they bottom out
in the kernel.
"""

import itertools

from .errors import (
    BudgetExceeded,
    CongruenceFailure,
    InvalidStructure,
    LevelMismatch,
    NotClosed,
    PreconditionFailed,
    as_budget,
)
from .fincat import (
    FinCategory,
    FunctorMap,
    compose_functors,
    discrete_category,
    empty_category,
    enumerate_functors,
    functor_iso_exists,
    identity_functor,
    product_category,
    terminal_category,
)
from .skeleton import SkeletonMap

MAX_LEVEL = 3


class NCat:
    """A level-n object of the tower."""

    def __init__(self, level, cat=None, carrier=None, hom=None, comp=None,
                 name="ncat", validate=True):
        self.level = level
        self.name = name
        if level == 1:
            assert cat is not None
            self.cat = cat
            self.carrier = cat.objects
            self.hom = None
            self.comp = None
        else:
            self.cat = None
            self.carrier = tuple(sorted(carrier))
            self.hom = dict(hom)
            self.comp = dict(comp)
            if validate:
                self._validate()
        self._key = None

    def h(self, a, b):
        return self.hom[(a, b)]

    def key(self):
        if self._key is None:
            if self.level == 1:
                self._key = (
                    "cat", self.cat.objects,
                    tuple(sorted((f, self.cat.dom(f), self.cat.cod(f))
                                 for f in self.cat.arrow_names)),
                    tuple(sorted(self.cat._then.items())),
                    tuple(sorted(self.cat.identity.items())))
            else:
                self._key = (
                    self.level, self.carrier,
                    tuple((k, v.key()) for k, v in sorted(self.hom.items())),
                    tuple((k, v.key()) for k, v in sorted(self.comp.items())))
        return self._key

    def __eq__(self, other):
        return isinstance(other, NCat) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "NCat(level=%d, %r, %d cells)" % (self.level, self.name,
                                                 len(self.carrier))

    def _validate(self):
        for a in self.carrier:
            for b in self.carrier:
                h = self.hom.get((a, b))
                if not isinstance(h, NCat) or h.level != self.level - 1:
                    raise InvalidStructure(
                        "hom at (%r,%r) must be a level-%d object"
                        % (a, b, self.level - 1))
        for a in self.carrier:
            for b in self.carrier:
                for c in self.carrier:
                    phi = self.comp.get((a, b, c))
                    if not isinstance(phi, NFunctor):
                        raise InvalidStructure(
                            "comp at (%r,%r,%r) missing" % (a, b, c))
                    want_src = ncat_product(self.hom[(a, b)],
                                            self.hom[(b, c)])
                    if phi.src.key() != want_src.key() \
                            or phi.tgt.key() != self.hom[(a, c)].key():
                        raise InvalidStructure(
                            "comp at (%r,%r,%r) mistyped" % (a, b, c))


class NFunctor:
    """A level-n map: a functor at level 1, otherwise (f0, f1) with
    level-(n-1) maps as hom components."""

    def __init__(self, level, src, tgt, fun=None, f0=None, f1=None,
                 name="nf", validate=True):
        self.level = level
        self.src = src
        self.tgt = tgt
        self.name = name
        if level == 1:
            assert fun is not None
            self.fun = fun
            self.f0 = dict(fun.omap)
            self.f1 = None
        else:
            self.fun = None
            self.f0 = dict(f0)
            self.f1 = dict(f1)
            if validate:
                self._validate()
        self._key = None

    def key(self):
        if self._key is None:
            if self.level == 1:
                self._key = (tuple(sorted(self.fun.omap.items())),
                             tuple(sorted(self.fun.amap.items())))
            else:
                self._key = (tuple(sorted(self.f0.items())),
                             tuple((k, v.key())
                                   for k, v in sorted(self.f1.items())))
        return self._key

    def full_key(self):
        return (self.src.key(), self.tgt.key(), self.key())

    def __eq__(self, other):
        return isinstance(other, NFunctor) and \
            self.full_key() == other.full_key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "NFunctor(level=%d, %r)" % (self.level, self.name)

    def _validate(self):
        for a in self.src.carrier:
            if self.f0.get(a) not in set(self.tgt.carrier):
                raise InvalidStructure("f0 not a carrier map at %r" % a)
            for b in self.src.carrier:
                phi = self.f1.get((a, b))
                if not isinstance(phi, NFunctor):
                    raise InvalidStructure("f1 missing at (%r,%r)" % (a, b))
                if phi.src.key() != self.src.hom[(a, b)].key() or \
                        phi.tgt.key() != self.tgt.hom[
                            (self.f0[a], self.f0[b])].key():
                    raise InvalidStructure("f1 mistyped at (%r,%r)" % (a, b))


def check_nfunctor_strict(F):
    """Strict composition law: F1(a,c) . comp_src = comp_tgt . (F1 x F1)."""
    S, T = F.src, F.tgt
    if F.level == 1:
        return True
    for a in S.carrier:
        for b in S.carrier:
            for c in S.carrier:
                lhs = compose_nfunctors(F.f1[(a, c)], S.comp[(a, b, c)])
                rhs = compose_nfunctors(
                    T.comp[(F.f0[a], F.f0[b], F.f0[c])],
                    nfunctor_product(F.f1[(a, b)], F.f1[(b, c)]))
                if lhs.key() != rhs.key():
                    return False
    return True


def identity_nfunctor(X):
    if X.level == 1:
        return NFunctor(1, X, X, fun=identity_functor(X.cat),
                        name="id_%s" % X.name)
    return NFunctor(X.level, X, X,
                    f0={a: a for a in X.carrier},
                    f1={(a, b): identity_nfunctor(X.hom[(a, b)])
                        for a in X.carrier for b in X.carrier},
                    name="id_%s" % X.name, validate=False)


def compose_nfunctors(G, F, name=None):
    if F.tgt.key() != G.src.key():
        raise LevelMismatch("maps do not compose")
    if F.level == 1:
        return NFunctor(1, F.src, G.tgt,
                        fun=compose_functors(G.fun, F.fun),
                        name=name or "%s.%s" % (G.name, F.name))
    return NFunctor(
        F.level, F.src, G.tgt,
        f0={a: G.f0[F.f0[a]] for a in F.src.carrier},
        f1={(a, b): compose_nfunctors(G.f1[(F.f0[a], F.f0[b])],
                                      F.f1[(a, b)])
            for a in F.src.carrier for b in F.src.carrier},
        name=name or "%s.%s" % (G.name, F.name), validate=False)


# -- products, units, structural functors --------------------------------------

def pair_name(a, b):
    return "(%s,%s)" % (a, b)


def split_pair(x):
    depth = 0
    for i, ch in enumerate(x):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 1:
            return x[1:i], x[i + 1:-1]
    raise ValueError("not a pair name: %r" % x)


def structural_nfunctor(src, tgt, rename, name="structural"):
    """The map induced by a carrier renaming that matches homs on the
    nose at every level (used for swaps, associators, projections)."""
    if src.level == 1:
        omap = {o: rename(o) for o in src.cat.objects}
        amap = {f: rename(f) for f in src.cat.arrow_names}
        return NFunctor(1, src, tgt,
                        fun=FunctorMap(name, src.cat, tgt.cat, omap, amap,
                                       validate=False), name=name)
    f0 = {o: rename(o) for o in src.carrier}
    f1 = {}
    for o1 in src.carrier:
        for o2 in src.carrier:
            f1[(o1, o2)] = structural_nfunctor(
                src.hom[(o1, o2)], tgt.hom[(f0[o1], f0[o2])], rename, name)
    return NFunctor(src.level, src, tgt, f0=f0, f1=f1, name=name,
                    validate=False)


def ncat_product(X, Y, name=None):
    """The level-n product: product category at the base, carrier pairs
    and hom-wise products above."""
    if X.level != Y.level:
        raise LevelMismatch("product needs equal levels")
    if X.level == 1:
        P, _, _ = product_category(X.cat, Y.cat)
        return NCat(1, cat=P, name=name or "(%sx%s)" % (X.name, Y.name))
    carrier = [pair_name(a, b) for a in X.carrier for b in Y.carrier]
    hom = {}
    comp = {}
    for x1 in carrier:
        for x2 in carrier:
            a1, b1 = split_pair(x1)
            a2, b2 = split_pair(x2)
            hom[(x1, x2)] = ncat_product(X.hom[(a1, a2)], Y.hom[(b1, b2)])
    for x1 in carrier:
        for x2 in carrier:
            for x3 in carrier:
                a1, b1 = split_pair(x1)
                a2, b2 = split_pair(x2)
                a3, b3 = split_pair(x3)
                inter = middle_interchange(
                    X.hom[(a1, a2)], Y.hom[(b1, b2)],
                    X.hom[(a2, a3)], Y.hom[(b2, b3)])
                pairc = nfunctor_product(X.comp[(a1, a2, a3)],
                                         Y.comp[(b1, b2, b3)])
                comp[(x1, x2, x3)] = compose_nfunctors(pairc, inter)
    return NCat(X.level, carrier=carrier, hom=hom, comp=comp,
                name=name or "(%sx%s)" % (X.name, Y.name), validate=False)


def middle_interchange(W, X, Y, Z, name="interchange"):
    """The structural map (WxX) x (YxZ) -> (WxY) x (XxZ)."""
    src = ncat_product(ncat_product(W, X), ncat_product(Y, Z))
    tgt = ncat_product(ncat_product(W, Y), ncat_product(X, Z))

    def rename(o):
        wx, yz = split_pair(o)
        w, x = split_pair(wx)
        y, z = split_pair(yz)
        return pair_name(pair_name(w, y), pair_name(x, z))

    return structural_nfunctor(src, tgt, rename, name)


def nfunctor_product(F, G, name=None):
    """F x G between the products."""
    src = ncat_product(F.src, G.src)
    tgt = ncat_product(F.tgt, G.tgt)
    if F.level == 1:
        omap = {}
        amap = {}
        for o in src.cat.objects:
            a, b = split_pair(o)
            omap[o] = pair_name(F.fun.omap[a], G.fun.omap[b])
        for f in src.cat.arrow_names:
            a, b = split_pair(f)
            amap[f] = pair_name(F.fun.amap[a], G.fun.amap[b])
        return NFunctor(1, src, tgt,
                        fun=FunctorMap("prod", src.cat, tgt.cat, omap, amap,
                                       validate=False),
                        name=name or "(%sx%s)" % (F.name, G.name))
    f0 = {}
    f1 = {}
    for o in src.carrier:
        a, b = split_pair(o)
        f0[o] = pair_name(F.f0[a], G.f0[b])
    for o1 in src.carrier:
        for o2 in src.carrier:
            a1, b1 = split_pair(o1)
            a2, b2 = split_pair(o2)
            f1[(o1, o2)] = nfunctor_product(F.f1[(a1, a2)], G.f1[(b1, b2)])
    return NFunctor(src.level, src, tgt, f0=f0, f1=f1,
                    name=name or "(%sx%s)" % (F.name, G.name),
                    validate=False)


def ncat_unit(n, name=None):
    """I(n): the terminal category at level 1, a point enriched by the
    lower unit above."""
    if n == 1:
        return NCat(1, cat=terminal_category("I1"), name=name or "I1")
    lower = ncat_unit(n - 1)
    prod = ncat_product(lower, lower)
    comp = {("@", "@", "@"): _generic_projection(prod, lower, 0)}
    return NCat(n, carrier=["@"], hom={("@", "@"): lower}, comp=comp,
                name=name or "I%d" % n, validate=False)


def _generic_projection(prod, tgt, side):
    """The projection out of a product-shaped object."""
    def rename(o):
        return split_pair(o)[side]

    return structural_nfunctor(prod, tgt, rename,
                               "pi%d" % (side + 1))


def unit_lambda(X, name=None):
    """lambda_u : I x X -> X."""
    return _generic_projection(ncat_product(ncat_unit(X.level), X), X, 1)


def unit_rho(X, name=None):
    """rho_u : X x I -> X."""
    return _generic_projection(ncat_product(X, ncat_unit(X.level)), X, 0)


def ncat_symmetrizer(X, Y, name="sigma"):
    """sigma(n) : X x Y -> Y x X."""
    src = ncat_product(X, Y)
    tgt = ncat_product(Y, X)

    def rename(o):
        a, b = split_pair(o)
        return pair_name(b, a)

    return structural_nfunctor(src, tgt, rename, name)


def ncat_associator(X, Y, Z, name="alpha"):
    """alpha(n) : (X x Y) x Z -> X x (Y x Z)."""
    src = ncat_product(ncat_product(X, Y), Z)
    tgt = ncat_product(X, ncat_product(Y, Z))

    def rename(o):
        xy, z = split_pair(o)
        x, y = split_pair(xy)
        return pair_name(x, pair_name(y, z))

    return structural_nfunctor(src, tgt, rename, name)


def ncat_empty(n, name=None):
    if n == 1:
        return NCat(1, cat=empty_category("empty1"), name=name or "empty1")
    return NCat(n, carrier=[], hom={}, comp={},
                name=name or "empty%d" % n, validate=False)


def empty_nfunctor_to(E, X, name="!"):
    """The unique map out of an empty level-n object."""
    if E.carrier:
        raise InvalidStructure("source is not empty")
    if E.level == 1:
        return NFunctor(1, E, X,
                        fun=FunctorMap("!", E.cat, X.cat, {}, {},
                                       validate=False), name=name)
    return NFunctor(E.level, E, X, f0={}, f1={}, name=name, validate=False)


def ncat_coproduct(X, Y, name=None):
    """Disjoint union; cross homs are the empty object one level down."""
    if X.level != Y.level:
        raise LevelMismatch("coproduct needs equal levels")
    if X.level == 1:
        objs = ["l:%s" % o for o in X.cat.objects] + \
               ["r:%s" % o for o in Y.cat.objects]
        arrows = []
        then = {}
        ident = {}
        for tag, C in (("l", X.cat), ("r", Y.cat)):
            for f in C.arrow_names:
                arrows.append(("%s:%s" % (tag, f), "%s:%s" % (tag, C.dom(f)),
                               "%s:%s" % (tag, C.cod(f))))
            for x in C.objects:
                ident["%s:%s" % (tag, x)] = "%s:%s" % (tag, C.id_of(x))
            for (f, g), h in C._then.items():
                then[("%s:%s" % (tag, f), "%s:%s" % (tag, g))] = \
                    "%s:%s" % (tag, h)
        cat = FinCategory("(%s+%s)" % (X.name, Y.name), objs, arrows,
                          ident, then, validate=False)
        return NCat(1, cat=cat, name=name or cat.name)
    carrier = ["l:%s" % a for a in X.carrier] + ["r:%s" % b for b in Y.carrier]
    empty = ncat_empty(X.level - 1)

    def base(x):
        return x[0], x[2:]

    hom = {}
    comp = {}
    for x1 in carrier:
        for x2 in carrier:
            t1, a1 = base(x1)
            t2, a2 = base(x2)
            if t1 != t2:
                hom[(x1, x2)] = empty
            else:
                hom[(x1, x2)] = (X if t1 == "l" else Y).hom[(a1, a2)]
    for x1 in carrier:
        for x2 in carrier:
            for x3 in carrier:
                t1, a1 = base(x1)
                t2, a2 = base(x2)
                t3, a3 = base(x3)
                if t1 == t2 == t3:
                    comp[(x1, x2, x3)] = (X if t1 == "l" else Y).comp[
                        (a1, a2, a3)]
                else:
                    src = ncat_product(hom[(x1, x2)], hom[(x2, x3)])
                    comp[(x1, x2, x3)] = empty_nfunctor_to(
                        src, hom[(x1, x3)])
    return NCat(X.level, carrier=carrier, hom=hom, comp=comp,
                name=name or "(%s+%s)" % (X.name, Y.name), validate=False)


# -- associativity --------------------------------------------------------------

def check_ncat_associative(X, budget=None, strict_only=False):
    """The pentagon for a level-n object: strict equality first, then
    equivalence of the two composite maps where strictness fails."""
    budget = as_budget(budget)
    if X.level == 1:
        return True, None
    for a in X.carrier:
        for b in X.carrier:
            for c in X.carrier:
                for d in X.carrier:
                    hab, hbc, hcd = X.hom[(a, b)], X.hom[(b, c)], X.hom[(c, d)]
                    lhs = compose_nfunctors(
                        X.comp[(a, b, d)],
                        compose_nfunctors(
                            nfunctor_product(identity_nfunctor(hab),
                                             X.comp[(b, c, d)]),
                            ncat_associator(hab, hbc, hcd)))
                    rhs = compose_nfunctors(
                        X.comp[(a, c, d)],
                        nfunctor_product(X.comp[(a, b, c)],
                                         identity_nfunctor(hcd)))
                    if lhs.key() == rhs.key():
                        continue
                    if strict_only:
                        return False, (a, b, c, d)
                    ok, _ = n_equivalent1_functors(lhs, rhs, budget)
                    if not ok:
                        return False, (a, b, c, d)
    return True, None


# -- equivalences ----------------------------------------------------------------

def enumerate_nfunctors(X, Y, budget=None, law=True):
    """All level-n maps X -> Y obeying the strict composition law."""
    budget = as_budget(budget)
    if X.level == 1:
        return [NFunctor(1, X, Y, fun=F, name=F.name)
                for F in enumerate_functors(X.cat, Y.cat, budget)]
    out = []
    src = list(X.carrier)
    if not src:
        return [empty_nfunctor_to(X, Y)]
    if not Y.carrier:
        return []
    for images in itertools.product(Y.carrier, repeat=len(src)):
        budget.spend()
        f0 = dict(zip(src, images))
        pairs = [(a, b) for a in src for b in src]
        cands = []
        ok = True
        for (a, b) in pairs:
            cs = enumerate_nfunctors(X.hom[(a, b)],
                                     Y.hom[(f0[a], f0[b])], budget, law)
            if not cs:
                ok = False
                break
            cands.append(cs)
        if not ok:
            continue
        for combo in itertools.product(*cands):
            budget.spend()
            f1 = dict(zip(pairs, combo))
            F = NFunctor(X.level, X, Y, f0=f0, f1=f1, validate=False)
            if not law or check_nfunctor_strict(F):
                out.append(F)
    return out


def n_equivalent1_functors(F, G, budget=None):
    """Level-n equivalence of parallel level-n maps: natural isomorphism
    at level 1; mutually inverting transformation families above."""
    budget = as_budget(budget)
    if F.src.key() != G.src.key() or F.tgt.key() != G.tgt.key():
        raise LevelMismatch("maps not parallel")
    if F.level == 1:
        return functor_iso_exists(F.fun, G.fun, budget)
    if F.level == 2:
        return _two_equivalent_functors(F, G, budget)
    raise BudgetExceeded("functor equivalence above level 2 not supported")


def _natural_families(F, G, budget):
    """Families of 1-cells F(c) -> G(c), natural up to isomorphism."""
    C, D = F.src, F.tgt
    objs = list(C.carrier)
    cands = [D.hom[(F.f0[c], G.f0[c])].cat.objects for c in objs]
    families = []
    for combo in itertools.product(*cands):
        budget.spend()
        fam = dict(zip(objs, combo))
        ok = True
        for c in objs:
            for c2 in objs:
                for u in C.hom[(c, c2)].cat.objects:
                    left = D.comp[(F.f0[c], F.f0[c2], G.f0[c2])].f0[
                        pair_name(F.f1[(c, c2)].f0[u], fam[c2])]
                    right = D.comp[(F.f0[c], G.f0[c], G.f0[c2])].f0[
                        pair_name(fam[c], G.f1[(c, c2)].f0[u])]
                    hcat = D.hom[(F.f0[c], G.f0[c2])].cat
                    if not hcat.iso_objects(left, right):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            families.append(fam)
    return families


def _acts_invertibly(D, c, endo_cell, budget):
    """Does pre-composing with the endo 1-cell act bijectively up to iso
    on every 1-cell set out of c (a unit-free stand-in for "equivalent
    to an identity")."""
    for d in D.carrier:
        hcat = D.hom[(c, d)].cat
        comp = D.comp[(c, c, d)]
        budget.spend()
        classes = []
        for u in hcat.objects:
            for cls in classes:
                if hcat.iso_objects(u, cls[0]):
                    cls.append(u)
                    break
            else:
                classes.append([u])
        for cls in classes:
            image = comp.f0[pair_name(endo_cell, cls[0])]
            if not any(hcat.iso_objects(image, u) for u in cls):
                return False
    return True


def _two_equivalent_functors(F, G, budget):
    if F.key() == G.key():
        return True, ("strict", None)
    C, D = F.src, F.tgt
    fwd = _natural_families(F, G, budget)
    bwd = _natural_families(G, F, budget)
    for phi in fwd:
        for psi in bwd:
            budget.spend()
            ok = True
            for c in C.carrier:
                comp_obj = D.comp[(F.f0[c], G.f0[c], F.f0[c])].f0[
                    pair_name(phi[c], psi[c])]
                if not _acts_invertibly(D, F.f0[c], comp_obj, budget):
                    ok = False
                    break
                comp_obj2 = D.comp[(G.f0[c], F.f0[c], G.f0[c])].f0[
                    pair_name(psi[c], phi[c])]
                if not _acts_invertibly(D, G.f0[c], comp_obj2, budget):
                    ok = False
                    break
            if ok:
                return True, (phi, psi)
    return False, None


def is_n_equivalence(F, budget=None):
    """Is a level-n map one half of an equivalence pair?"""
    budget = as_budget(budget)
    X, Y = F.src, F.tgt
    for G in enumerate_nfunctors(Y, X, budget):
        ok1, _ = n_equivalent1_functors(
            compose_nfunctors(G, F), identity_nfunctor(X), budget)
        if not ok1:
            continue
        ok2, _ = n_equivalent1_functors(
            compose_nfunctors(F, G), identity_nfunctor(Y), budget)
        if ok2:
            return True, G
    return False, None


def n_equivalence(kind, X=None, Y=None, F=None, G=None, budget=None):
    """Equivalence of level-n objects (kind='cats') or parallel level-n
    maps (kind='functors'), with witnesses."""
    budget = as_budget(budget)
    if kind == "functors":
        return n_equivalent1_functors(F, G, budget)
    if kind != "cats":
        raise ValueError("kind must be cats|functors")
    if X.level != Y.level:
        raise LevelMismatch("operands at different levels")
    for F_ in enumerate_nfunctors(X, Y, budget):
        if X.level >= 2:
            hom_ok = all(
                is_n_equivalence(F_.f1[(c1, c2)], budget)[0]
                for c1 in X.carrier for c2 in X.carrier)
            if not hom_ok:
                continue
        ok, G_ = is_n_equivalence(F_, budget)
        if ok:
            return True, (F_, G_)
    return False, None


# -- fragments and sk(n) ----------------------------------------------------------

def fragment_category(ncats, functors, budget=None, name="frag"):
    """A finite fragment of the level-n world as a FinCategory, with the
    sk(n) congruence computed from functor equivalence.

    ncats: dict name -> NCat; functors: dict name -> NFunctor (must be
    closed under composition and contain the identities).
    """
    budget = as_budget(budget)
    levels = {x.level for x in ncats.values()}
    if len(levels) != 1:
        raise LevelMismatch("fragment mixes levels")
    level = levels.pop()
    obj_names = {}
    for nm, x in sorted(ncats.items()):
        obj_names[x.key()] = nm
    arrows = []
    ident = {}
    bykey = {}
    for nm, f in functors.items():
        s = obj_names[f.src.key()]
        t = obj_names[f.tgt.key()]
        arrows.append((nm, s, t))
        bykey[(s, t, f.key())] = nm
        if s == t and f.key() == identity_nfunctor(f.src).key():
            ident[s] = nm
    if set(ident) != set(ncats):
        raise NotClosed("fragment lacks identities")
    then = {}
    for n1, f in functors.items():
        for n2, g in functors.items():
            if f.tgt.key() != g.src.key():
                continue
            h = compose_nfunctors(g, f)
            key = (obj_names[h.src.key()], obj_names[h.tgt.key()], h.key())
            if key not in bykey:
                raise NotClosed("fragment not closed at %s after %s"
                                % (n2, n1))
            then[(n1, n2)] = bykey[key]
    frag = FinCategory(name, sorted(ncats), arrows, ident, then)
    groups = {}
    for nm in frag.arrow_names:
        groups.setdefault((frag.dom(nm), frag.cod(nm)), []).append(nm)
    classes = []
    for _, fs in sorted(groups.items()):
        remaining = list(fs)
        while remaining:
            f = remaining.pop(0)
            cls = [f]
            rest = []
            for g in remaining:
                budget.spend()
                ok, _ = n_equivalent1_functors(functors[f], functors[g],
                                               budget)
                if ok:
                    cls.append(g)
                else:
                    rest.append(g)
            remaining = rest
            classes.append(cls)
    sk = SkeletonMap("congruence", frag, classes=classes,
                     name="sk%d" % level)
    return frag, sk


# -- addresses -----------------------------------------------------------------

def addresses(x):
    """All addresses: a top-level 1-category has only the empty address;
    level-1 homs in context contribute their object pairs as final
    steps."""
    def sub(y):
        if y.level == 1:
            out = [()]
            for a in y.cat.objects:
                for b in y.cat.objects:
                    out.append((((a, b)),))
            return out
        out = [()]
        for a in y.carrier:
            for b in y.carrier:
                for rest in sub(y.hom[(a, b)]):
                    out.append(((a, b),) + rest)
        return out

    if x.level == 1:
        return [()]
    return sub(x)


def address_count(x):
    """The recursive count (the enumeration must agree)."""
    def sub(y):
        if y.level == 1:
            return 1 + len(y.cat.objects) ** 2
        return 1 + sum(sub(y.hom[(a, b)])
                       for a in y.carrier for b in y.carrier)

    if x.level == 1:
        return 1
    return sub(x)


def address_context(x, addr):
    """The chain of objects an address walks through (full addresses)."""
    chain = [x]
    cur = x
    for i, (a, b) in enumerate(addr):
        if cur.level == 1:
            if i != len(addr) - 1:
                raise InvalidStructure("address overruns the tower")
            return chain
        cur = cur.hom[(a, b)]
        chain.append(cur)
    return chain


def address_map(phi, addr):
    """Add1: the lower-level map assigned to an address of the source;
    a final level-1 step yields the hom-set restriction."""
    cur = phi
    for i, (a, b) in enumerate(addr):
        if cur.level == 1:
            if i != len(addr) - 1:
                raise InvalidStructure("address overruns the tower")
            C = cur.src.cat
            return {f: cur.fun.amap[f] for f in C.hom(a, b)}
        cur = cur.f1[(a, b)]
    return cur


# -- inclusion and forgetting ----------------------------------------------------

def inc(x, name=None):
    """One step up: discrete homs on a category's hom sets, recursion
    above."""
    if x.level == 1:
        C = x.cat
        carrier = list(C.objects)
        hom = {}
        comp = {}
        for a in carrier:
            for b in carrier:
                hom[(a, b)] = NCat(1, cat=discrete_category(
                    "disc[%s,%s]" % (a, b), C.hom(a, b)))
        for a in carrier:
            for b in carrier:
                for c in carrier:
                    src = ncat_product(hom[(a, b)], hom[(b, c)])
                    omap = {}
                    for o in src.cat.objects:
                        f, g = split_pair(o)
                        omap[o] = C.then(f, g)
                    amap = {f: hom[(a, c)].cat.id_of(omap[src.cat.dom(f)])
                            for f in src.cat.arrow_names}
                    comp[(a, b, c)] = NFunctor(
                        1, src, hom[(a, c)],
                        fun=FunctorMap("comp", src.cat, hom[(a, c)].cat,
                                       omap, amap, validate=False))
        return NCat(2, carrier=carrier, hom=hom, comp=comp,
                    name=name or "Inc(%s)" % x.name, validate=False)
    hom = {k: inc(v) for k, v in x.hom.items()}
    comp = {k: _inc_comp(v, x.hom[(k[0], k[1])], x.hom[(k[1], k[2])])
            for k, v in x.comp.items()}
    return NCat(x.level + 1, carrier=x.carrier, hom=hom, comp=comp,
                name=name or "Inc(%s)" % x.name, validate=False)


def _inc_comp(phi, h1, h2):
    """Inc applied to a composition functor h1 x h2 -> h3, built against
    the product of inclusions (which differs from the inclusion of the
    product only in identity-arrow names at the base)."""
    src = ncat_product(inc(h1), inc(h2))
    tgt = inc(phi.tgt)
    if phi.level == 1:
        f0 = dict(phi.fun.omap)
        f1 = {}
        for o1 in src.carrier:
            for o2 in src.carrier:
                sub_src = src.hom[(o1, o2)].cat
                sub_tgt = tgt.hom[(f0[o1], f0[o2])].cat
                omap = {u: phi.fun.amap[u] for u in sub_src.objects}
                amap = {f: sub_tgt.id_of(omap[sub_src.dom(f)])
                        for f in sub_src.arrow_names}
                f1[(o1, o2)] = NFunctor(
                    1, src.hom[(o1, o2)], tgt.hom[(f0[o1], f0[o2])],
                    fun=FunctorMap("inc-comp", sub_src, sub_tgt, omap, amap,
                                   validate=False))
        return NFunctor(2, src, tgt, f0=f0, f1=f1,
                        name="Inc(%s)" % phi.name, validate=False)
    f0 = dict(phi.f0)
    f1 = {}
    for (o1, o2), psi in phi.f1.items():
        a1, b1 = split_pair(o1)
        a2, b2 = split_pair(o2)
        f1[(o1, o2)] = _inc_comp(psi, h1.hom[(a1, a2)], h2.hom[(b1, b2)])
    return NFunctor(phi.level + 1, src, tgt, f0=f0, f1=f1,
                    name="Inc(%s)" % phi.name, validate=False)


def inc_map(phi, name=None):
    """Inc on maps."""
    if phi.level == 1:
        src = inc(phi.src if isinstance(phi.src, NCat) else None)
        tgt = inc(phi.tgt)
        f0 = dict(phi.fun.omap)
        f1 = {}
        for a in src.carrier:
            for b in src.carrier:
                sub_src = src.hom[(a, b)].cat
                sub_tgt = tgt.hom[(f0[a], f0[b])].cat
                omap = {f: phi.fun.amap[f] for f in sub_src.objects}
                amap = {sub_src.id_of(f): sub_tgt.id_of(phi.fun.amap[f])
                        for f in sub_src.objects}
                f1[(a, b)] = NFunctor(1, src.hom[(a, b)],
                                      tgt.hom[(f0[a], f0[b])],
                                      fun=FunctorMap(
                                          "inc1", sub_src, sub_tgt, omap,
                                          amap, validate=False))
        return NFunctor(2, src, tgt, f0=f0, f1=f1,
                        name=name or "Inc(%s)" % phi.name, validate=False)
    src = inc(phi.src)
    tgt = inc(phi.tgt)
    return NFunctor(phi.level + 1, src, tgt, f0=dict(phi.f0),
                    f1={k: inc_map(v) for k, v in phi.f1.items()},
                    name=name or "Inc(%s)" % phi.name, validate=False)


def forget(x, name=None):
    """One step down: at level 2 rebuild the underlying category (the
    hom categories' objects become arrows; neutral cells must exist);
    above level 2, recurse into the homs."""
    if x.level == 1:
        raise LevelMismatch("cannot forget below level 1")
    if x.level == 2:
        arrows = []
        seen = set()
        qualified = {}
        for a in x.carrier:
            for b in x.carrier:
                for f in x.hom[(a, b)].cat.objects:
                    nm = f if f not in seen else "%s@%s>%s" % (f, a, b)
                    seen.add(nm)
                    qualified[(a, b, f)] = nm
                    arrows.append((nm, a, b))
        then = {}
        for a in x.carrier:
            for b in x.carrier:
                for c in x.carrier:
                    comp = x.comp[(a, b, c)]
                    for f in x.hom[(a, b)].cat.objects:
                        for g in x.hom[(b, c)].cat.objects:
                            then[(qualified[(a, b, f)],
                                  qualified[(b, c, g)])] = \
                                qualified[(a, c, comp.f0[pair_name(f, g)])]
        by_dom = {}
        by_cod = {}
        for nm, d, c in arrows:
            by_dom.setdefault(d, []).append(nm)
            by_cod.setdefault(c, []).append(nm)
        ident = {}
        for a in x.carrier:
            for e in x.hom[(a, a)].cat.objects:
                nm = qualified[(a, a, e)]
                if all(then.get((nm, g)) == g for g in by_dom.get(a, ())) \
                        and all(then.get((f, nm)) == f
                                for f in by_cod.get(a, ())):
                    ident[a] = nm
                    break
        if set(ident) != set(x.carrier):
            raise PreconditionFailed(
                "no neutral one-cells: cannot forget to a category")
        cat = FinCategory(name or "For(%s)" % x.name, x.carrier, arrows,
                          ident, then)
        return NCat(1, cat=cat, name=name or "For(%s)" % x.name)
    hom = {k: forget(v) for k, v in x.hom.items()}
    comp = {k: forget_map(v) for k, v in x.comp.items()}
    return NCat(x.level - 1, carrier=x.carrier, hom=hom, comp=comp,
                name=name or "For(%s)" % x.name, validate=False)


def forget_map(phi, name=None):
    if phi.level <= 1:
        raise LevelMismatch("cannot forget a level-1 map")
    src = forget(phi.src)
    tgt = forget(phi.tgt)
    if phi.level == 2:
        omap = dict(phi.f0)
        amap = {}
        src_names = set(src.cat.arrow_names)
        tgt_names = set(tgt.cat.arrow_names)
        for a in phi.src.carrier:
            for b in phi.src.carrier:
                sub = phi.f1[(a, b)]
                for f in phi.src.hom[(a, b)].cat.objects:
                    fname = f if f in src_names and src.cat.dom(f) == a \
                        and src.cat.cod(f) == b else "%s@%s>%s" % (f, a, b)
                    img = sub.f0[f]
                    iname = img if img in tgt_names \
                        and tgt.cat.dom(img) == omap[a] \
                        and tgt.cat.cod(img) == omap[b] \
                        else "%s@%s>%s" % (img, omap[a], omap[b])
                    amap[fname] = iname
        return NFunctor(1, src, tgt,
                        fun=FunctorMap(name or "For(%s)" % phi.name,
                                       src.cat, tgt.cat, omap, amap),
                        name=name or "For(%s)" % phi.name)
    return NFunctor(phi.level - 1, src, tgt, f0=dict(phi.f0),
                    f1={k: forget_map(v) for k, v in phi.f1.items()},
                    name=name or "For(%s)" % phi.name, validate=False)


def forget_to(x, target_level):
    out = x
    while out.level > target_level:
        out = forget(out)
    return out


def inc_to(x, target_level):
    out = x
    while out.level < target_level:
        out = inc(out)
    return out


# -- the pseudo-simplicial actions ------------------------------------------------

class DeltaArrow:
    """A monotone map between finite ordinals {0..p-1} -> {0..q-1};
    primitive iff the sizes differ by one."""

    def __init__(self, p, q, mapping):
        self.p = p
        self.q = q
        self.mapping = tuple(mapping)
        if len(self.mapping) != p:
            raise InvalidStructure("mapping length mismatch")
        if any(self.mapping[i] > self.mapping[i + 1]
               for i in range(p - 1)):
            raise InvalidStructure("map not monotone")
        if any(not (0 <= v < q) for v in self.mapping):
            raise InvalidStructure("values out of range")

    def __repr__(self):
        return "DeltaArrow(%d->%d, %r)" % (self.p, self.q, self.mapping)

    def is_primitive(self):
        return abs(self.p - self.q) == 1

    def is_injective(self):
        return len(set(self.mapping)) == self.p

    def is_surjective(self):
        return set(self.mapping) == set(range(self.q))

    def skipped_value(self):
        missing = sorted(set(range(self.q)) - set(self.mapping))
        if len(missing) != 1:
            raise InvalidStructure("not an injective primitive")
        return missing[0]

    def repeated_value(self):
        for v in range(self.q):
            if self.mapping.count(v) == 2:
                return v
        raise InvalidStructure("not a surjective primitive")

    def compose_with(self, first):
        """self after first."""
        return DeltaArrow(first.p, self.q,
                          [self.mapping[v] for v in first.mapping])

    def primitive_decomposition(self):
        """Primitive steps composing to this map, first-applied first."""
        steps = []
        cur = list(self.mapping)
        size = self.p
        # peel degeneracies: collapse adjacent repeats
        while True:
            rep = next((i for i in range(len(cur) - 1)
                        if cur[i] == cur[i + 1]), None)
            if rep is None:
                break
            steps.append(DeltaArrow(
                size, size - 1,
                [j if j <= rep else j - 1 for j in range(size)]))
            cur = cur[:rep] + cur[rep + 1:]
            size -= 1
        # insert skipped values: faces in ascending order of value
        image = list(cur)
        t = size
        for c in sorted(set(range(self.q)) - set(image)):
            steps.append(DeltaArrow(
                t, t + 1, [v if v < c else v + 1 for v in range(t)]))
            t += 1
        return steps


def insert_level(x, depth, name=None):
    """Insert a singleton level at the given depth; the inserted
    composition is the first projection."""
    if depth == 0:
        prod = ncat_product(x, x)
        comp = {("@", "@", "@"): _generic_projection(prod, x, 0)}
        return NCat(x.level + 1, carrier=["@"], hom={("@", "@"): x},
                    comp=comp, name=name or "ins(%s)" % x.name,
                    validate=False)
    if x.level == 1:
        raise PreconditionFailed("depth exceeds the hom tree")
    hom = {k: insert_level(v, depth - 1) for k, v in x.hom.items()}
    comp = {k: _insert_comp(v, x.hom[(k[0], k[1])], x.hom[(k[1], k[2])],
                            x.hom[(k[0], k[2])], depth - 1)
            for k, v in x.comp.items()}
    return NCat(x.level + 1, carrier=x.carrier, hom=hom, comp=comp,
                name=name or "ins(%s)" % x.name, validate=False)


def _insert_comp(phi, h1, h2, h3, depth):
    """Lift a composition functor h1 x h2 -> h3 through an insertion at
    the given depth inside the homs."""
    src = ncat_product(insert_level(h1, depth), insert_level(h2, depth))
    tgt = insert_level(h3, depth)
    if depth == 0:
        f0 = {pair_name("@", "@"): "@"}
        f1 = {(pair_name("@", "@"), pair_name("@", "@")): phi}
        return NFunctor(src.level, src, tgt, f0=f0, f1=f1,
                        name="ins(%s)" % phi.name, validate=False)
    f0 = dict(phi.f0)
    f1 = {}
    for (o1, o2), psi in phi.f1.items():
        a1, b1 = split_pair(o1)
        a2, b2 = split_pair(o2)
        f1[(o1, o2)] = _insert_comp(
            psi, h1.hom[(a1, a2)], h2.hom[(b1, b2)],
            h3.hom[(phi.f0[o1], phi.f0[o2])], depth - 1)
    return NFunctor(src.level, src, tgt, f0=f0, f1=f1,
                    name="ins(%s)" % phi.name, validate=False)


def delete_level(x, depth, name=None):
    """Delete a singleton level at the given depth (every structure
    there must have a one-element carrier)."""
    if depth == 0:
        if x.level < 2:
            raise PreconditionFailed("nothing to delete at level 1")
        if len(x.carrier) != 1:
            raise PreconditionFailed(
                "carrier at the deleted level is not a singleton")
        e = x.carrier[0]
        return x.hom[(e, e)]
    if x.level == 1:
        raise PreconditionFailed("depth exceeds the hom tree")
    hom = {k: delete_level(v, depth - 1) for k, v in x.hom.items()}
    comp = {k: _delete_comp(v, depth - 1) for k, v in x.comp.items()}
    return NCat(x.level - 1, carrier=x.carrier, hom=hom, comp=comp,
                name=name or "del(%s)" % x.name, validate=False)


def _delete_comp(phi, depth):
    if depth == 0:
        if len(phi.src.carrier) != 1:
            raise PreconditionFailed("non-singleton at deletion depth")
        o = phi.src.carrier[0]
        return phi.f1[(o, o)]
    new_src = delete_level(phi.src, depth)
    new_tgt = delete_level(phi.tgt, depth)
    f1 = {k: _delete_comp(v, depth - 1) for k, v in phi.f1.items()}
    return NFunctor(phi.level - 1, new_src, new_tgt, f0=dict(phi.f0),
                    f1=f1, name="del(%s)" % phi.name, validate=False)


def is_empty_ncat(x):
    return (x.level == 1 and not x.cat.objects) or \
        (x.level >= 2 and not x.carrier)


def simplicial_action(f, x, budget=None):
    """Apply a Delta arrow by primitive decomposition: a surjective
    primitive inserts a singleton level at its repeated position, an
    injective primitive deletes the singleton level at its skipped
    position."""
    budget = as_budget(budget)
    if is_empty_ncat(x):
        target = x.level + (f.p - f.q)
        if target < 1:
            raise PreconditionFailed("action would leave the tower")
        return ncat_empty(target)
    if f.is_primitive():
        if f.is_surjective():
            return insert_level(x, f.repeated_value())
        if f.is_injective():
            return delete_level(x, f.skipped_value())
        raise PreconditionFailed("primitive arrow of no kind")
    out = x
    for step in f.primitive_decomposition():
        budget.spend()
        out = simplicial_action(step, out, budget)
    return out
