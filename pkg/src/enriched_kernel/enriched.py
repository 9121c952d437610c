"""Weakly enriched sets over a tensor base and their category.

An enriched set assigns a base object to every ordered pair of carrier
elements and a composition arrow h(a,b).h(b,c) -> h(a,c) to every triple,
with no associativity assumed; maps respect composition only after the
skeleton functor.  This module also houses the two-point and simplex
constructions, (co)products, (co)limits, transport along tensor functors,
unit elements, and the skeleton quotient on map fragments.
"""

import itertools

from .errors import (
    Absent,
    CapabilityMissing,
    InvalidStructure,
    NotClosed,
    ShapeMismatch,
    TauNotIso,
    as_budget,
)
from .fincat import FinCategory, FunctorMap
from .skeleton import SkeletonMap
from .universal import Cone, colimit_of, diagram_on, limit_of


class EnrichedSet:
    """(carrier, hom, comp) over a TensorStructure."""

    def __init__(self, name, tensor, carrier, hom, comp, validate=True):
        self.name = name
        self.tensor = tensor
        self.carrier = tuple(sorted(carrier))
        self.hom = dict(hom)
        self.comp = dict(comp)
        if validate:
            self._validate()

    def h(self, a, b):
        return self.hom[(a, b)]

    def c(self, a, b, c):
        return self.comp[(a, b, c)]

    def key(self):
        return (self.carrier, tuple(sorted(self.hom.items())),
                tuple(sorted(self.comp.items())))

    def __eq__(self, other):
        return isinstance(other, EnrichedSet) and self.key() == other.key() \
            and self.tensor is other.tensor

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "EnrichedSet(%r, %d elements)" % (self.name, len(self.carrier))

    def _validate(self):
        A = self.tensor.base
        for a in self.carrier:
            for b in self.carrier:
                if (a, b) not in self.hom:
                    raise InvalidStructure("hom missing at (%r,%r)" % (a, b))
                if self.hom[(a, b)] not in set(A.objects):
                    raise InvalidStructure("hom value unknown at (%r,%r)" % (a, b))
        for a in self.carrier:
            for b in self.carrier:
                for c in self.carrier:
                    f = self.comp.get((a, b, c))
                    if f is None:
                        raise InvalidStructure(
                            "comp missing at (%r,%r,%r)" % (a, b, c))
                    want_dom = self.tensor.ob(self.hom[(a, b)], self.hom[(b, c)])
                    if A.dom(f) != want_dom or A.cod(f) != self.hom[(a, c)]:
                        raise InvalidStructure(
                            "comp mistyped at (%r,%r,%r)" % (a, b, c))


class EnrichedMap:
    """A pair (f0, f1); strict maps respect composition exactly, sk-lax
    maps only after the skeleton."""

    def __init__(self, name, src, tgt, f0, f1, mode="sk-lax"):
        self.name = name
        self.src = src
        self.tgt = tgt
        self.f0 = dict(f0)
        self.f1 = dict(f1)
        self.mode = mode
        A = src.tensor.base
        for a in src.carrier:
            if self.f0.get(a) not in set(tgt.carrier):
                raise InvalidStructure("f0 not a carrier map at %r" % a)
            for b in src.carrier:
                f = self.f1.get((a, b))
                if f is None or A.dom(f) != src.h(a, b) \
                        or A.cod(f) != tgt.h(self.f0[a], self.f0[b]):
                    raise InvalidStructure("f1 mistyped at (%r,%r)" % (a, b))

    def key(self):
        return (tuple(sorted(self.f0.items())),
                tuple(sorted(self.f1.items())))

    def __eq__(self, other):
        return (isinstance(other, EnrichedMap) and self.key() == other.key()
                and self.src == other.src and self.tgt == other.tgt)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "EnrichedMap(%r: %s -> %s)" % (self.name, self.src.name,
                                              self.tgt.name)


def identity_we_arrow(S):
    A = S.tensor.base
    return EnrichedMap("id_%s" % S.name, S, S,
                       {a: a for a in S.carrier},
                       {(a, b): A.id_of(S.h(a, b))
                        for a in S.carrier for b in S.carrier})


def check_we_sk_arrow(F, sk):
    """Does F respect composition after sk?  Returns (verdict, witness);
    the witness is the first violating triple."""
    S, T = F.src, F.tgt
    if S.tensor is not T.tensor and S.tensor != T.tensor:
        raise ShapeMismatch("maps must live over one tensor base")
    A = S.tensor.base
    ten = S.tensor
    for a in S.carrier:
        for b in S.carrier:
            for c in S.carrier:
                lhs = A.compose(F.f1[(a, c)], S.c(a, b, c))
                rhs = A.compose(
                    T.c(F.f0[a], F.f0[b], F.f0[c]),
                    ten.ar(F.f1[(a, b)], F.f1[(b, c)]))
                if F.mode == "strict":
                    ok = lhs == rhs
                else:
                    ok = sk.sk_equal(lhs, rhs)
                if not ok:
                    return False, (a, b, c)
    return True, None


def compose_we_arrows(G, F, sk=None):
    """G after F; when sk is given the result is re-checked (the closure
    lemma as a postcondition)."""
    if F.tgt != G.src:
        raise ShapeMismatch("maps do not compose")
    A = F.src.tensor.base
    mode = "strict" if F.mode == "strict" and G.mode == "strict" else "sk-lax"
    out = EnrichedMap(
        "%s.%s" % (G.name, F.name), F.src, G.tgt,
        {a: G.f0[F.f0[a]] for a in F.src.carrier},
        {(a, b): A.compose(G.f1[(F.f0[a], F.f0[b])], F.f1[(a, b)])
         for a in F.src.carrier for b in F.src.carrier},
        mode=mode)
    if sk is not None:
        ok, witness = check_we_sk_arrow(out, sk)
        assert ok, "closure failed at %r" % (witness,)
    return out


def check_sk_associative(S, sk):
    """The pentagon for the enriched composition, after sk; returns
    (verdict, first failing quadruple)."""
    T = S.tensor
    if T.associator is None:
        raise CapabilityMissing("pentagon needs an associator")
    A = T.base
    for a in S.carrier:
        for b in S.carrier:
            for c in S.carrier:
                for d in S.carrier:
                    lhs = A.compose_many(
                        S.c(a, b, d),
                        T.ar(A.id_of(S.h(a, b)), S.c(b, c, d)),
                        T.alpha(S.h(a, b), S.h(b, c), S.h(c, d)))
                    rhs = A.compose(
                        S.c(a, c, d),
                        T.ar(S.c(a, b, c), A.id_of(S.h(c, d))))
                    if not sk.sk_equal(lhs, rhs):
                        return False, (a, b, c, d)
    return True, None


def enumerate_we_arrows(S, T, sk, budget=None, strict=False):
    """All enriched maps S -> T passing the sk-arrow check, in canonical
    order."""
    budget = as_budget(budget)
    A = S.tensor.base
    src = list(S.carrier)
    pairs = [(a, b) for a in src for b in src]
    out = []
    for images in itertools.product(T.carrier, repeat=len(src)):
        budget.spend()
        f0 = dict(zip(src, images))
        cands = []
        ok = True
        for (a, b) in pairs:
            hs = A.hom(S.h(a, b), T.h(f0[a], f0[b]))
            if not hs:
                ok = False
                break
            cands.append(hs)
        if not ok:
            continue

        triples = [(a, b, c) for a in src for b in src for c in src]
        ten = S.tensor
        pair_index = {p: i for i, p in enumerate(pairs)}

        def triple_ok(f1, a, b, c):
            ab, bc, ac = f1.get((a, b)), f1.get((b, c)), f1.get((a, c))
            if ab is None or bc is None or ac is None:
                return True
            lhs = A.compose(ac, S.c(a, b, c))
            rhs = A.compose(T.c(f0[a], f0[b], f0[c]), ten.ar(ab, bc))
            return lhs == rhs if strict else sk.sk_equal(lhs, rhs)

        def backtrack(i, f1):
            budget.spend()
            if i == len(pairs):
                yield dict(f1)
                return
            p = pairs[i]
            for cand in cands[i]:
                f1[p] = cand
                if all(triple_ok(f1, a, b, c) for (a, b, c) in triples
                       if pair_index.get((a, b), len(pairs)) <= i
                       and pair_index.get((b, c), len(pairs)) <= i
                       and pair_index.get((a, c), len(pairs)) <= i):
                    yield from backtrack(i + 1, f1)
                del f1[p]

        for f1 in backtrack(0, {}):
            out.append(EnrichedMap("m%d" % len(out), S, T, f0, f1,
                                   mode="strict" if strict else "sk-lax"))
    return out


# -- transport along tensor functors ---------------------------------------

def we_transport_set(tf, S, name=None):
    """Push an enriched set through a tensor functor (F, rho)."""
    F = tf.functor
    if tf.src_tensor is not S.tensor and tf.src_tensor != S.tensor:
        raise ShapeMismatch("tensor functor does not start at the base of %r"
                            % S.name)
    B = F.tgt
    hom = {(a, b): F.omap[S.h(a, b)]
           for a in S.carrier for b in S.carrier}
    comp = {}
    for a in S.carrier:
        for b in S.carrier:
            for c in S.carrier:
                comp[(a, b, c)] = B.compose(
                    F.amap[S.c(a, b, c)],
                    tf.rho[(S.h(a, b), S.h(b, c))])
    return EnrichedSet(name or "%s(%s)" % (F.name, S.name), tf.tgt_tensor,
                       S.carrier, hom, comp)


def we_transport_map(tf, phi, new_src, new_tgt, name=None):
    F = tf.functor
    return EnrichedMap(
        name or "%s(%s)" % (F.name, phi.name), new_src, new_tgt,
        dict(phi.f0),
        {(a, b): F.amap[phi.f1[(a, b)]]
         for a in phi.src.carrier for b in phi.src.carrier},
        mode=phi.mode)


# -- products and coproducts -------------------------------------------------

def split_pair_name(x):
    """Split "(a,b)" at the top-level comma (names may nest)."""
    depth = 0
    for i, ch in enumerate(x):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 1:
            return x[1:i], x[i + 1:-1]
    raise ValueError("not a pair name: %r" % x)


def we_product(S, T, products=None, name=None):
    """The product enriched set, using a designated product structure on
    the base (defaults to the tensor itself when it is one)."""
    P = products or (S.tensor if S.tensor.is_product_structure() else None)
    if P is None:
        raise CapabilityMissing("we_product needs a product structure")
    ten = S.tensor
    A = ten.base
    carrier = ["(%s,%s)" % (a, b) for a in S.carrier for b in T.carrier]

    parts = split_pair_name

    hom = {}
    for x in carrier:
        for y in carrier:
            a, b = parts(x)
            a2, b2 = parts(y)
            hom[(x, y)] = P.ob(S.h(a, a2), T.h(b, b2))
    comp = {}
    for x in carrier:
        for y in carrier:
            for z in carrier:
                a, b = parts(x)
                a2, b2 = parts(y)
                a3, b3 = parts(z)
                hS1, hS2 = S.h(a, a2), S.h(a2, a3)
                hT1, hT2 = T.h(b, b2), T.h(b2, b3)
                apex = ten.ob(P.ob(hS1, hT1), P.ob(hS2, hT2))
                pS1, pT1, _ = P.proj(hS1, hT1)
                pS2, pT2, _ = P.proj(hS2, hT2)
                legS = A.compose(S.c(a, a2, a3), ten.ar(pS1, pS2))
                legT = A.compose(T.c(b, b2, b3), ten.ar(pT1, pT2))
                comp[(x, y, z)] = P.mediate_pair(
                    S.h(a, a3), T.h(b, b3), apex, legS, legT)
    prod = EnrichedSet(name or "(%sx%s)" % (S.name, T.name), ten,
                       carrier, hom, comp)
    f0_1 = {x: parts(x)[0] for x in carrier}
    f0_2 = {x: parts(x)[1] for x in carrier}
    f1_1 = {}
    f1_2 = {}
    for x in carrier:
        for y in carrier:
            a, b = parts(x)
            a2, b2 = parts(y)
            p1, p2, _ = P.proj(S.h(a, a2), T.h(b, b2))
            f1_1[(x, y)] = p1
            f1_2[(x, y)] = p2
    pi1 = EnrichedMap("pi1", prod, S, f0_1, f1_1, mode="strict")
    pi2 = EnrichedMap("pi2", prod, T, f0_2, f1_2, mode="strict")
    return prod, pi1, pi2


def pair_we_arrows(F, G, prod, products=None):
    """The mediating map <F, G> : X -> S x T for F : X -> S, G : X -> T."""
    if F.src != G.src:
        raise ShapeMismatch("pairing needs a common source")
    P = products or (F.src.tensor if F.src.tensor.is_product_structure()
                     else None)
    if P is None:
        raise CapabilityMissing("pairing needs a product structure")
    X = F.src
    S, T = F.tgt, G.tgt
    f0 = {x: "(%s,%s)" % (F.f0[x], G.f0[x]) for x in X.carrier}
    f1 = {}
    for x in X.carrier:
        for y in X.carrier:
            f1[(x, y)] = P.mediate_pair(
                S.h(F.f0[x], F.f0[y]), T.h(G.f0[x], G.f0[y]),
                X.h(x, y), F.f1[(x, y)], G.f1[(x, y)])
    return EnrichedMap("<%s,%s>" % (F.name, G.name), X, prod, f0, f1)


def initial_arrow(A, e, x):
    hom = A.hom(e, x)
    if len(hom) != 1:
        raise Absent("%r is not initial in %r" % (e, A.name))
    return hom[0]


def _absorbed_comp(ten, dom_l, dom_r, target):
    """The canonical arrow dom_l.dom_r -> target when one side is the
    initial object: absorb, then the unique arrow out of the initial."""
    A = ten.base
    ini = ten.require_absorption()
    e = ini.obj
    if dom_l == e:
        first = ini.absorb_l[dom_r]
    elif dom_r == e:
        first = ini.absorb_r[dom_l]
    else:
        raise AssertionError("no initial factor")
    return A.compose(initial_arrow(A, e, target), first)


def we_coproduct(S, T, name=None):
    """Disjoint-union carrier, cross homs at the initial object, cross
    compositions via absorption."""
    ten = S.tensor
    ini = ten.require_absorption()
    e = ini.obj
    carrier = ["l:%s" % a for a in S.carrier] + ["r:%s" % b for b in T.carrier]

    def side(x):
        return x[0], x[2:]

    def hom_of(x, y):
        sx, ax = side(x)
        sy, ay = side(y)
        if sx != sy:
            return e
        return S.h(ax, ay) if sx == "l" else T.h(ax, ay)

    hom = {(x, y): hom_of(x, y) for x in carrier for y in carrier}
    comp = {}
    for x in carrier:
        for y in carrier:
            for z in carrier:
                sx, ax = side(x)
                sy, ay = side(y)
                sz, az = side(z)
                if sx == sy == sz:
                    comp[(x, y, z)] = (S.c(ax, ay, az) if sx == "l"
                                       else T.c(ax, ay, az))
                else:
                    comp[(x, y, z)] = _absorbed_comp(
                        ten, hom[(x, y)], hom[(y, z)], hom[(x, z)])
    cop = EnrichedSet(name or "(%s+%s)" % (S.name, T.name), ten,
                      carrier, hom, comp)
    A = ten.base
    in1 = EnrichedMap("in1", S, cop,
                      {a: "l:%s" % a for a in S.carrier},
                      {(a, b): A.id_of(S.h(a, b))
                       for a in S.carrier for b in S.carrier},
                      mode="strict")
    in2 = EnrichedMap("in2", T, cop,
                      {b: "r:%s" % b for b in T.carrier},
                      {(a, b): A.id_of(T.h(a, b))
                       for a in T.carrier for b in T.carrier},
                      mode="strict")
    return cop, in1, in2


def copair_we_arrows(F, G, cop):
    """[F, G] : S + T -> X for F : S -> X, G : T -> X; on cross pairs the
    unique arrow out of the initial hom."""
    if F.tgt != G.tgt:
        raise ShapeMismatch("copairing needs a common target")
    X = F.tgt
    A = X.tensor.base
    f0 = {}
    f1 = {}
    for x in cop.carrier:
        s, a = x[0], x[2:]
        f0[x] = F.f0[a] if s == "l" else G.f0[a]
    for x in cop.carrier:
        for y in cop.carrier:
            sx, ax = x[0], x[2:]
            sy, ay = y[0], y[2:]
            if sx == sy:
                f1[(x, y)] = F.f1[(ax, ay)] if sx == "l" else G.f1[(ax, ay)]
            else:
                f1[(x, y)] = initial_arrow(A, cop.h(x, y),
                                           X.h(f0[x], f0[y]))
    return EnrichedMap("[%s,%s]" % (F.name, G.name), cop, X, f0, f1)


# -- the two-point and simplex constructions --------------------------------

def bar_functor(T, a, name=None):
    """The two-point enriched set with hom(1,2) = a and every other hom
    at the initial object; all compositions are forced by initiality."""
    ini = T.require_absorption()
    e = ini.obj
    carrier = ["1", "2"]
    hom = {(x, y): (a if (x, y) == ("1", "2") else e)
           for x in carrier for y in carrier}
    comp = {}
    for x in carrier:
        for y in carrier:
            for z in carrier:
                comp[(x, y, z)] = _absorbed_comp(
                    T, hom[(x, y)], hom[(y, z)], hom[(x, z)])
    return EnrichedSet(name or "Bar(%s)" % a, T, carrier, hom, comp)


def bar_map(T, phi, src_bar, tgt_bar, name=None):
    """The two-point construction on an arrow: phi sits at (1,2)."""
    A = T.base
    e = T.require_initial().obj
    f1 = {}
    for x in src_bar.carrier:
        for y in src_bar.carrier:
            if (x, y) == ("1", "2"):
                f1[(x, y)] = phi
            else:
                f1[(x, y)] = initial_arrow(A, e, tgt_bar.h(x, y))
    return EnrichedMap(name or "Bar(%s)" % phi, src_bar, tgt_bar,
                       {"1": "1", "2": "2"}, f1)


class UnitObject:
    """(a, mu : a.a -> a); arrows between unit objects respect the
    multiplication after sk."""

    def __init__(self, T, a, mu):
        A = T.base
        if A.dom(mu) != T.ob(a, a) or A.cod(mu) != a:
            raise InvalidStructure("mu mistyped")
        self.obj = a
        self.mu = mu

    def is_sk_associative(self, T, sk):
        A = T.base
        a, mu = self.obj, self.mu
        lhs = A.compose_many(mu, T.ar(A.id_of(a), mu), T.alpha(a, a, a))
        rhs = A.compose(mu, T.ar(mu, A.id_of(a)))
        return sk.sk_equal(lhs, rhs)


def unit_object_arrows(T, sk, u1, u2):
    """Arrows of the unit category: f with sk(nu.(f.f)) = sk(f.mu)."""
    A = T.base
    out = []
    for f in A.hom(u1.obj, u2.obj):
        if sk.sk_equal(A.compose(u2.mu, T.ar(f, f)), A.compose(f, u1.mu)):
            out.append(f)
    return out


def delta_unit(T, n, u, name=None):
    """The simplex enriched set on {0..n}: ascending homs carry the unit
    object, the rest sit at the initial object; strictly ascending
    triples compose by mu, everything else by absorption."""
    T.require_absorption()
    e = T.initial.obj
    carrier = [str(i) for i in range(n + 1)]
    hom = {}
    for i in carrier:
        for j in carrier:
            hom[(i, j)] = u.obj if int(i) < int(j) else e
    comp = {}
    for i in carrier:
        for j in carrier:
            for k in carrier:
                if int(i) < int(j) < int(k):
                    comp[(i, j, k)] = u.mu
                else:
                    comp[(i, j, k)] = _absorbed_comp(
                        T, hom[(i, j)], hom[(j, k)], hom[(i, k)])
    return EnrichedSet(name or "Delta%d(%s)" % (n, u.obj), T, carrier,
                       hom, comp)


def delta_unit_map(T, e_map, f, src, tgt, name=None):
    """The simplex construction on arrows: a monotone injection between
    the level sets together with a unit-object arrow f."""
    A = T.base
    ini = T.require_initial()
    items = sorted(e_map.items(), key=lambda kv: int(kv[0]))
    vals = [int(v) for _, v in items]
    if vals != sorted(vals) or len(set(vals)) != len(vals):
        raise InvalidStructure("level map must be a monotone injection")
    f0 = {str(i): str(v) for i, v in e_map.items()}
    f1 = {}
    for i in src.carrier:
        for j in src.carrier:
            if int(i) < int(j):
                f1[(i, j)] = f
            else:
                f1[(i, j)] = initial_arrow(A, ini.obj, tgt.h(f0[i], f0[j]))
    return EnrichedMap(name or "Delta(%s)" % f, src, tgt, f0, f1)


# -- units ------------------------------------------------------------------

class UnitedEnrichedSet:
    """An enriched set with unit elements i(s) : I -> h(s,s) satisfying
    the unit laws after sk (unit lam/rho must be invertible)."""

    def __init__(self, base_set, units, sk, validate=True):
        self.base_set = base_set
        self.units = dict(units)
        if validate:
            ok, witness = self.check_unit_laws(sk)
            if not ok:
                raise InvalidStructure("unit law fails at %r" % (witness,))

    def check_unit_laws(self, sk):
        S = self.base_set
        T = S.tensor
        A = T.base
        un = T.require_unit()
        for s in S.carrier:
            i_s = self.units[s]
            if A.dom(i_s) != un.obj or A.cod(i_s) != S.h(s, s):
                return False, (s, "typing")
        for s in S.carrier:
            for t in S.carrier:
                h = S.h(s, t)
                lam_inv = A.inverse(un.lam[h])
                rho_inv = A.inverse(un.rho[h])
                if lam_inv is None or rho_inv is None:
                    return False, ((s, t), "unit arrows not invertible")
                left = A.compose_many(
                    S.c(s, s, t), T.ar(self.units[s], A.id_of(h)), lam_inv)
                if not sk.sk_equal(left, A.id_of(h)):
                    return False, ((s, t), "left")
                right = A.compose_many(
                    S.c(s, t, t), T.ar(A.id_of(h), self.units[t]), rho_inv)
                if not sk.sk_equal(right, A.id_of(h)):
                    return False, ((s, t), "right")
        return True, None


def we_unit_singleton(T, mu=None, name="unitset"):
    """The one-element enriched set with hom the product unit; it is a
    unit for we_product up to carrier-and-hom isomorphism."""
    un = T.require_unit()
    I = un.obj
    if mu is None:
        mu = un.lam[I]  # I.I -> I
    return EnrichedSet(name, T, ["@"], {("@", "@"): I},
                       {("@", "@", "@"): mu})


# -- limits and colimits of enriched sets ------------------------------------

class WEDiagram:
    """A functor shape -> WE: enriched sets on objects, strict maps on
    arrows (validated)."""

    def __init__(self, shape, ob, ar):
        self.shape = shape
        self.ob = dict(ob)
        self.ar = dict(ar)
        for u in shape.arrow_names:
            f = self.ar[u]
            if f.src != self.ob[shape.dom(u)] or f.tgt != self.ob[shape.cod(u)]:
                raise InvalidStructure("diagram arrow %r mistyped" % u)
        for (u, v), w in shape._then.items():
            left = compose_we_arrows(self.ar[v], self.ar[u])
            if left.key() != self.ar[w].key():
                raise InvalidStructure("diagram breaks composition at (%r,%r)"
                                       % (u, v))


def we_limit(diagram, budget=None, name=None):
    """Carrier = compatible families; homs = limits of the hom diagrams;
    composition mediated through the limit cones.  None when a required
    limit is missing."""
    budget = as_budget(budget)
    shape = diagram.shape
    first = diagram.ob[shape.objects[0]] if shape.objects else None
    if first is None:
        raise Absent("empty-shape limits need a designated base")
    ten = first.tensor
    A = ten.base
    # compatible families
    objs = list(shape.objects)
    families = []
    for combo in itertools.product(*[diagram.ob[j].carrier for j in objs]):
        budget.spend()
        fam = dict(zip(objs, combo))
        if all(diagram.ar[u].f0[fam[shape.dom(u)]] == fam[shape.cod(u)]
               for u in shape.arrow_names):
            families.append(fam)

    def fam_name(fam):
        return "(" + ",".join("%s=%s" % (j, fam[j]) for j in objs) + ")"

    hom = {}
    hom_wit = {}
    for fam1 in families:
        for fam2 in families:
            omap = {j: diagram.ob[j].h(fam1[j], fam2[j]) for j in objs}
            amap = {}
            for u in shape.arrow_names:
                d, c = shape.dom(u), shape.cod(u)
                amap[u] = diagram.ar[u].f1[(fam1[d], fam2[d])]
            D = diagram_on(shape, A, omap, amap, name="homD")
            w = limit_of(D, budget)
            if w is None:
                return None
            hom[(fam_name(fam1), fam_name(fam2))] = w.apex
            hom_wit[(fam_name(fam1), fam_name(fam2))] = w
    comp = {}
    for f1 in families:
        for f2 in families:
            for f3 in families:
                n1, n2, n3 = fam_name(f1), fam_name(f2), fam_name(f3)
                apex = ten.ob(hom[(n1, n2)], hom[(n2, n3)])
                legs = {}
                for j in objs:
                    w12 = hom_wit[(n1, n2)]
                    w23 = hom_wit[(n2, n3)]
                    legs[j] = A.compose(
                        diagram.ob[j].c(f1[j], f2[j], f3[j]),
                        ten.ar(w12.leg(j), w23.leg(j)))
                w13 = hom_wit[(n1, n3)]
                comp[(n1, n2, n3)] = w13.mediate(Cone(apex, legs))
    carrier = [fam_name(f) for f in families]
    out = EnrichedSet(name or "lim", ten, carrier, hom, comp)
    legs = {}
    for j in objs:
        f0 = {fam_name(f): f[j] for f in families}
        f1m = {}
        for fam1 in families:
            for fam2 in families:
                f1m[(fam_name(fam1), fam_name(fam2))] = \
                    hom_wit[(fam_name(fam1), fam_name(fam2))].leg(j)
        legs[j] = EnrichedMap("pr_%s" % j, out, diagram.ob[j], f0, f1m,
                              mode="strict")
    return out, legs


def we_colimit(diagram, budget=None, name=None):
    """Carrier = colimit of the carriers; hom of two classes = colimit of
    all hom objects at common refinements; composition by tensoring the
    universal legs and inverting the comparison (checked iso)."""
    budget = as_budget(budget)
    shape = diagram.shape
    objs = list(shape.objects)
    if not objs:
        raise Absent("empty-shape colimits need a designated base")
    ten = diagram.ob[objs[0]].tensor
    A = ten.base

    # carrier classes by union-find over f0 graphs
    items = [(j, a) for j in objs for a in diagram.ob[j].carrier]
    parent = {it: it for it in items}

    def find(it):
        while parent[it] != it:
            parent[it] = parent[parent[it]]
            it = parent[it]
        return it

    for u in shape.arrow_names:
        d, c = shape.dom(u), shape.cod(u)
        for a in diagram.ob[d].carrier:
            r1, r2 = find((d, a)), find((c, diagram.ar[u].f0[a]))
            if r1 != r2:
                parent[max(r1, r2)] = min(r1, r2)
    classes = {}
    for it in items:
        classes.setdefault(find(it), []).append(it)

    def cls_name(root):
        return "[%s.%s]" % root

    member_class = {it: cls_name(find(it)) for it in items}

    # hom diagram category for a pair of classes: objects (j, a, b) with
    # a, b representatives at j; arrows induced by diagram arrows
    def hom_diagram(c1, c2):
        nodes = []
        for j in objs:
            for a in diagram.ob[j].carrier:
                for b in diagram.ob[j].carrier:
                    if member_class[(j, a)] == c1 and member_class[(j, b)] == c2:
                        nodes.append((j, a, b))
        arrows = []
        for u in shape.arrow_names:
            d, c = shape.dom(u), shape.cod(u)
            F = diagram.ar[u]
            for (j, a, b) in nodes:
                if j != d:
                    continue
                tgt = (c, F.f0[a], F.f0[b])
                if tgt in nodes:
                    arrows.append((u, (j, a, b), tgt))
        return nodes, arrows

    def shape_cat_of(nodes, arrows, tag):
        names = {n: "%s:%s:%s" % n for n in nodes}
        arrnames = []
        then = {}
        ident = {}
        cat_arrows = []
        for n in nodes:
            ident[names[n]] = "id@%s" % names[n]
            cat_arrows.append(("id@%s" % names[n], names[n], names[n]))
        # free composites are needed: close under composition by path
        # saturation (shape arrows compose in the shape)
        raw = {}
        for (u, s, t) in arrows:
            nm = "%s@%s->%s" % (u, names[s], names[t])
            raw[nm] = (u, names[s], names[t])
        # close: compose chains via shape composition
        changed = True
        comp_data = {nm: (u,) for nm, (u, _, _) in raw.items()}
        ends = {nm: (s, t) for nm, (_, s, t) in raw.items()}
        while changed:
            changed = False
            for n1 in list(ends):
                for n2 in list(ends):
                    s1, t1 = ends[n1]
                    s2, t2 = ends[n2]
                    if t1 != s2:
                        continue
                    us = comp_data[n1] + comp_data[n2]
                    # compose in the shape to canonical arrow word
                    w = us[0]
                    for u in us[1:]:
                        w = shape.then(w, u)
                    nm = "%s@%s->%s" % (w, s1, t2)
                    if nm not in ends:
                        ends[nm] = (s1, t2)
                        comp_data[nm] = (w,)
                        changed = True
        for nm, (s, t) in ends.items():
            cat_arrows.append((nm, s, t))
        # build then-table: identities + single-shape-arrow composites
        obnames = [names[n] for n in nodes]
        for nm, (s, t) in list(ends.items()):
            then[(ident[s], nm)] = nm
            then[(nm, ident[t])] = nm
        for o in obnames:
            then[(ident[o], ident[o])] = ident[o]
        for n1, (s1, t1) in ends.items():
            for n2, (s2, t2) in ends.items():
                if t1 != s2:
                    continue
                w = shape.then(comp_data[n1][0], comp_data[n2][0])
                then[(n1, n2)] = "%s@%s->%s" % (w, s1, t2)
        K = FinCategory("K%s" % tag, obnames, cat_arrows, ident, then,
                        validate=False)
        node_of = {names[n]: n for n in nodes}
        arrow_word = {nm: comp_data[nm][0] for nm in ends}
        return K, node_of, arrow_word

    class_names = sorted({member_class[it] for it in items})
    hom = {}
    hom_wit = {}
    hom_K = {}
    for c1 in class_names:
        for c2 in class_names:
            nodes, arrows = hom_diagram(c1, c2)
            K, node_of, arrow_word = shape_cat_of(nodes, arrows,
                                                  "%s%s" % (c1, c2))
            omap = {}
            for onm, (j, a, b) in node_of.items():
                omap[onm] = diagram.ob[j].h(a, b)
            amap = {}
            for f in K.arrow_names:
                if K.is_identity(f):
                    amap[f] = A.id_of(omap[K.dom(f)])
                else:
                    u = arrow_word[f]
                    (j, a, b) = node_of[K.dom(f)]
                    amap[f] = diagram.ar[u].f1[(a, b)]
            D = FunctorMap("homD", K, A, omap, amap, validate=False)
            w = colimit_of(D, budget)
            if w is None:
                return None
            hom[(c1, c2)] = w.apex
            hom_wit[(c1, c2)] = (w, node_of)
            hom_K[(c1, c2)] = K
    comp = {}
    for c1 in class_names:
        for c2 in class_names:
            for c3 in class_names:
                arrow = _colimit_composition(
                    diagram, ten, hom, hom_wit, c1, c2, c3, budget)
                comp[(c1, c2, c3)] = arrow
    out = EnrichedSet(name or "colim", ten, class_names, hom, comp)
    legs = {}
    for j in objs:
        Sj = diagram.ob[j]
        f0 = {a: member_class[(j, a)] for a in Sj.carrier}
        f1m = {}
        for a in Sj.carrier:
            for b in Sj.carrier:
                w, node_of = hom_wit[(f0[a], f0[b])]
                key = [nm for nm, n in node_of.items() if n == (j, a, b)]
                f1m[(a, b)] = w.cone.legs[key[0]]
        legs[j] = EnrichedMap("in_%s" % j, Sj, out, f0, f1m, mode="strict")
    return out, legs


def _colimit_composition(diagram, ten, hom, hom_wit, c1, c2, c3, budget):
    """Composition for a colimit of enriched sets: tensor the two hom
    colimits, compare with the colimit of the tensored diagram (must be
    iso), then map composable nodes through the pointwise compositions."""
    A = ten.base
    w12, nodes12 = hom_wit[(c1, c2)]
    w23, nodes23 = hom_wit[(c2, c3)]
    w13, nodes13 = hom_wit[(c1, c3)]
    # the tensored diagram over the product of the two node categories is
    # indexed here only by composable node pairs (same j, matching middle)
    pairs = []
    for nm1, (j1, a1, b1) in nodes12.items():
        for nm2, (j2, a2, b2) in nodes23.items():
            if j1 == j2 and b1 == a2:
                pairs.append((nm1, nm2, j1, a1, b1, b2))
    if not pairs:
        # no composable representatives: the composition factors through
        # the initial object if the tensor has one
        dom = ten.ob(hom[(c1, c2)], hom[(c2, c3)])
        ini = ten.initial
        if ini is not None and A.iso_objects(dom, ini.obj):
            iso = [f for f in A.hom(dom, ini.obj) if A.is_iso(f)][0]
            return A.compose(initial_arrow(A, ini.obj, hom[(c1, c3)]), iso)
        raise TauNotIso("no composable representatives for (%s,%s,%s)"
                        % (c1, c2, c3), pair=(c1, c3))
    # candidate composite on each composable pair: comp then leg
    legs = {}
    for nm1, nm2, j, a, b, c in pairs:
        key13 = [nm for nm, n in nodes13.items() if n == (j, a, c)][0]
        legs[(nm1, nm2)] = A.compose(
            w13.cone.legs[key13],
            diagram.ob[j].c(a, b, c))
    # the comparison u : colim(tensor diagram) -> hom12 . hom23 is taken
    # on the composable-pair diagram; verify the tensored legs and the
    # composite legs both form cocones and that u is invertible, by
    # exhibiting the arrow on the tensor product directly: for every
    # composable pair the tensored universal legs must jointly factor
    # uniquely through the tensor of the colimits
    dom = ten.ob(hom[(c1, c2)], hom[(c2, c3)])
    cands = []
    for m in A.hom(dom, hom[(c1, c3)]):
        budget.spend()
        if all(A.compose(m, ten.ar(w12.cone.legs[nm1], w23.cone.legs[nm2]))
               == legs[(nm1, nm2)] for nm1, nm2, *_ in pairs):
            cands.append(m)
    if len(cands) != 1:
        raise TauNotIso(
            "composition not uniquely determined for (%s,%s,%s): %d candidates"
            % (c1, c2, c3, len(cands)), pair=(c1, c2, c3))
    return cands[0]


# -- the enriched arrows functor ---------------------------------------------

def arr_object(S, budget=None):
    """The coproduct of all hom objects of S, with its injections."""
    from .universal import family_product
    fam = {"%s|%s" % (a, b): S.h(a, b)
           for a in S.carrier for b in S.carrier}
    r = family_product(S.tensor.base, fam, "coproduct", budget)
    if r is None:
        raise Absent("hom coproduct missing for %r" % S.name)
    return r


def arr_map(F, src_data, tgt_data):
    """The coproduct arrow induced by a map's hom components."""
    A = F.src.tensor.base
    obj_s, legs_s, wit_s = src_data
    obj_t, legs_t, _ = tgt_data
    comps = {}
    for a in F.src.carrier:
        for b in F.src.carrier:
            comps["%s|%s" % (a, b)] = A.compose(
                legs_t["%s|%s" % (F.f0[a], F.f0[b])], F.f1[(a, b)])
    return wit_s.mediate(Cone(obj_t, comps, direction="cocone"))


# -- the skeleton quotient on map fragments ----------------------------------

def sk_related(provider, F, G):
    """Are two parallel enriched maps related by mutually inverting
    unit-shaped two-cells after sk?  provider supplies hom objects and
    composition arrows of the map enrichment."""
    T = provider.tensor
    sk = provider.sk
    A = T.base
    un = T.require_unit()
    I = un.obj
    hFG = provider.hom(F, G)
    hGF = provider.hom(G, F)
    hFF = provider.hom(F, F)
    hGG = provider.hom(G, G)

    def post_compose(hXY, hYZ, hXZ, comp, psi):
        rho_inv = A.inverse(un.rho[hXY])
        if rho_inv is None:
            raise CapabilityMissing("unit rho not invertible at %r" % hXY)
        return A.compose_many(comp, T.ar(A.id_of(hXY), psi), rho_inv)

    for phi in A.hom(I, hFG):
        for psi in A.hom(I, hGF):
            m1 = post_compose(hFF, hFG, hFG, provider.comp(F, F, G), phi)
            m2 = post_compose(hFG, hGF, hFF, provider.comp(F, G, F), psi)
            m3 = post_compose(hGG, hGF, hGF, provider.comp(G, G, F), psi)
            m4 = post_compose(hGF, hFG, hGG, provider.comp(G, F, G), phi)
            if (sk.sk_equal(A.compose(m2, m1), A.id_of(hFF))
                    and sk.sk_equal(A.compose(m4, m3), A.id_of(hGG))):
                return True, (phi, psi)
    return False, None


def sk_bar_quotient(named_sets, named_maps, provider, budget=None,
                    name="SK"):
    """The SK congruence on a fragment of enriched maps.

    named_sets: dict name -> EnrichedSet; named_maps: dict name ->
    EnrichedMap (must contain identities and be closed under
    composition).  Returns (fragment category, dict, SkeletonMap).
    """
    budget = as_budget(budget)
    set_names = {}
    for nm, S in named_sets.items():
        set_names[S.key()] = nm
    arrows = []
    for nm, f in named_maps.items():
        arrows.append((nm, set_names[f.src.key()], set_names[f.tgt.key()]))
    ident = {}
    for nm, f in named_maps.items():
        if f.key() == identity_we_arrow(f.src).key():
            ident[set_names[f.src.key()]] = nm
    if set(ident) != set(named_sets):
        raise NotClosed("fragment lacks identity maps")
    then = {}
    bykey = {}
    for nm, f in named_maps.items():
        bykey.setdefault((set_names[f.src.key()], set_names[f.tgt.key()],
                          f.key()), nm)
    for n1, f in named_maps.items():
        for n2, g in named_maps.items():
            if f.tgt != g.src:
                continue
            h = compose_we_arrows(g, f)
            key = (set_names[h.src.key()], set_names[h.tgt.key()], h.key())
            if key not in bykey:
                raise NotClosed("fragment not closed: %s after %s" % (n2, n1))
            then[(n1, n2)] = bykey[key]
    frag = FinCategory("wefrag", sorted(named_sets), arrows, ident, then)
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
                ok, _ = sk_related(provider, named_maps[f], named_maps[g])
                if ok:
                    cls.append(g)
                else:
                    rest.append(g)
            remaining = rest
            classes.append(cls)
    return frag, SkeletonMap("congruence", frag, classes=classes, name=name)
