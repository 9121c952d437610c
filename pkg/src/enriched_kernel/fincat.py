"""Finite categories, functors and natural transformations.

Every structure validates its axioms exhaustively on construction and is
immutable afterwards.  Identifiers are strings and every enumeration is
canonically ordered (lexicographic), so reruns reproduce outputs exactly.

Composition convention: ``compose(g, f)`` is "g after f" and is written
g.f in reports; the internal table is keyed "f then g".
"""

import itertools

from .errors import (
    Budget,
    CodomainMismatch,
    InvalidStructure,
    ParallelMismatch,
    UnknownArrow,
    UnknownObject,
    as_budget,
)


class FinCategory:
    """A finite category with explicit object/arrow sets and a total
    composition table on composable pairs."""

    def __init__(self, name, objects, arrows, identities, then_table,
                 validate=True):
        self.name = name
        self.objects = tuple(sorted(objects))
        if len(set(self.objects)) != len(self.objects):
            raise InvalidStructure("duplicate object ids in %r" % name)
        arr = {}
        for aname, dom, cod in arrows:
            if aname in arr:
                raise InvalidStructure("duplicate arrow id %r" % aname)
            arr[aname] = (dom, cod)
        self._arr = arr
        self.arrow_names = tuple(sorted(arr))
        self.identity = dict(identities)
        # _then[(f, g)] = g after f, defined iff cod(f) == dom(g)
        self._then = dict(then_table)
        self._hom = {}
        for f, (d, c) in arr.items():
            self._hom.setdefault((d, c), []).append(f)
        for k in self._hom:
            self._hom[k] = tuple(sorted(self._hom[k]))
        self._inverse_cache = {}
        if validate:
            self._validate()

    # -- basic accessors ------------------------------------------------

    def dom(self, f):
        try:
            return self._arr[f][0]
        except KeyError:
            raise UnknownArrow("%r not in %r" % (f, self.name))

    def cod(self, f):
        try:
            return self._arr[f][1]
        except KeyError:
            raise UnknownArrow("%r not in %r" % (f, self.name))

    def has_arrow(self, f):
        return f in self._arr

    def has_object(self, x):
        return x in self._hom or x in set(self.objects)

    def hom(self, x, y):
        return self._hom.get((x, y), ())

    def id_of(self, x):
        try:
            return self.identity[x]
        except KeyError:
            raise UnknownObject("%r not in %r" % (x, self.name))

    def compose(self, g, f):
        """g after f (requires cod(f) == dom(g))."""
        try:
            return self._then[(f, g)]
        except KeyError:
            raise UnknownArrow(
                "pair (%r after %r) not composable in %r" % (g, f, self.name))

    def then(self, f, g):
        """f then g; same value as compose(g, f)."""
        return self._then[(f, g)]

    def compose_many(self, *arrows):
        """compose(f_n, ..., f_1): arrows listed outermost-first."""
        chain = list(arrows)
        out = chain.pop()
        while chain:
            out = self.compose(chain.pop(), out)
        return out

    def is_identity(self, f):
        x = self.dom(f)
        return x == self.cod(f) and self.identity.get(x) == f

    def inverse(self, f):
        """The two-sided inverse of f, or None."""
        if f in self._inverse_cache:
            return self._inverse_cache[f]
        d, c = self._arr[f]
        inv = None
        for g in self.hom(c, d):
            if (self._then[(f, g)] == self.identity[d]
                    and self._then[(g, f)] == self.identity[c]):
                inv = g
                break
        self._inverse_cache[f] = inv
        return inv

    def is_iso(self, f):
        return self.inverse(f) is not None

    def iso_objects(self, x, y):
        """True iff some invertible arrow x -> y exists."""
        if x == y:
            return True
        return any(self.is_iso(f) for f in self.hom(x, y))

    def __repr__(self):
        return "FinCategory(%r, %d objects, %d arrows)" % (
            self.name, len(self.objects), len(self.arrow_names))

    def __eq__(self, other):
        return (isinstance(other, FinCategory)
                and self.objects == other.objects
                and self._arr == other._arr
                and self.identity == other.identity
                and self._then == other._then)

    def __hash__(self):
        return hash((self.objects, tuple(sorted(self._arr.items()))))

    # -- validation -----------------------------------------------------

    def _validate(self):
        objset = set(self.objects)
        for f, (d, c) in self._arr.items():
            if d not in objset or c not in objset:
                raise InvalidStructure(
                    "arrow %r has unknown endpoint in %r" % (f, self.name))
        if set(self.identity) != objset:
            raise InvalidStructure("identity table incomplete in %r" % self.name)
        for x, i in self.identity.items():
            if i not in self._arr or self._arr[i] != (x, x):
                raise InvalidStructure(
                    "identity(%r) = %r is not an endo-arrow of %r" % (x, i, x))
        # composition defined exactly on composable pairs
        for (f, g), h in self._then.items():
            if f not in self._arr or g not in self._arr or h not in self._arr:
                raise InvalidStructure("composition mentions unknown arrow")
            if self._arr[f][1] != self._arr[g][0]:
                raise InvalidStructure(
                    "composition defined on non-composable (%r,%r)" % (f, g))
            if self._arr[h] != (self._arr[f][0], self._arr[g][1]):
                raise InvalidStructure(
                    "composite %r of (%r,%r) has wrong endpoints" % (h, f, g))
        for f, (fd, fc) in self._arr.items():
            for g in self.arrow_names:
                if self._arr[g][0] == fc and (f, g) not in self._then:
                    raise InvalidStructure(
                        "composition missing on (%r,%r) in %r" % (f, g, self.name))
        # identity laws
        for f, (d, c) in self._arr.items():
            if self._then[(self.identity[d], f)] != f:
                raise InvalidStructure("left identity fails at %r" % f)
            if self._then[(f, self.identity[c])] != f:
                raise InvalidStructure("right identity fails at %r" % f)
        # associativity over all composable triples
        then = self._then
        arr = self._arr
        out_of = {}
        for g, (d, c) in arr.items():
            out_of.setdefault(d, []).append(g)
        for f, (fd, fc) in arr.items():
            for g in out_of.get(fc, ()):
                fg = then[(f, g)]
                gc = arr[g][1]
                for h in out_of.get(gc, ()):
                    if then[(fg, h)] != then[(f, then[(g, h)])]:
                        raise InvalidStructure(
                            "associativity fails at (%r,%r,%r) in %r"
                            % (f, g, h, self.name))


def category_from_generators(name, objects, generators, relations=(),
                             max_arrows=4000):
    """Close a graph of generating arrows under composition.

    ``relations`` maps formal composites to existing arrow names:
    pairs ((g, f), h) meaning "g after f = h".  All other composites
    must resolve to generators via the relations; this builder is for
    hand-made finite categories where the composition table is easier
    to give by generators than exhaustively.
    """
    rel = {pair: h for pair, h in relations}
    arrows = [("id_%s" % x, x, x) for x in objects]
    arrows += list(generators)
    ident = {x: "id_%s" % x for x in objects}
    arrmap = {a: (d, c) for a, d, c in arrows}
    then = {}
    for f, (fd, fc) in arrmap.items():
        for g, (gd, gc) in arrmap.items():
            if fc != gd:
                continue
            if f == ident[fd]:
                then[(f, g)] = g
            elif g == ident[gc]:
                then[(f, g)] = f
            elif (g, f) in rel:
                then[(f, g)] = rel[(g, f)]
            else:
                raise InvalidStructure(
                    "no relation resolves %r after %r" % (g, f))
    if len(arrows) > max_arrows:
        raise InvalidStructure("too many arrows")
    return FinCategory(name, objects, arrows, ident, then)


# -- stock categories ----------------------------------------------------

def discrete_category(name, objects):
    objects = list(objects)
    arrows = [("id_%s" % x, x, x) for x in objects]
    ident = {x: "id_%s" % x for x in objects}
    then = {(i, i): i for i in ident.values()}
    return FinCategory(name, objects, arrows, ident, then)


def terminal_category(name="pt"):
    return discrete_category(name, ["*"])


def empty_category(name="empty"):
    return FinCategory(name, [], [], {}, {})


def walking_arrow(name="walk", src="0", tgt="1", arrow="a"):
    objects = [src, tgt]
    arrows = [("id_%s" % src, src, src), ("id_%s" % tgt, tgt, tgt),
              (arrow, src, tgt)]
    ident = {src: "id_%s" % src, tgt: "id_%s" % tgt}
    then = {
        (ident[src], ident[src]): ident[src],
        (ident[tgt], ident[tgt]): ident[tgt],
        (ident[src], arrow): arrow,
        (arrow, ident[tgt]): arrow,
    }
    return FinCategory(name, objects, arrows, ident, then)


def poset_category(name, elements, leq):
    """The thin category of a finite poset: one arrow x->y iff leq(x, y)."""
    elements = list(elements)
    arrows = []
    for x in elements:
        for y in elements:
            if leq(x, y):
                arrows.append(("%s<=%s" % (x, y), x, y))
    ident = {x: "%s<=%s" % (x, x) for x in elements}
    then = {}
    for f, fd, fc in arrows:
        for g, gd, gc in arrows:
            if fc == gd:
                then[(f, g)] = "%s<=%s" % (fd, gc)
    return FinCategory(name, elements, arrows, ident, then)


def chain_category(n, name=None):
    """The poset 0 <= 1 <= ... <= n-1 as a category."""
    return poset_category(name or "chain%d" % n,
                          [str(i) for i in range(n)],
                          lambda x, y: int(x) <= int(y))


def cospan_category(name="cospan"):
    """x -> z <- y."""
    return poset_category(name, ["x", "y", "z"],
                          lambda a, b: a == b or b == "z")


def span_category(name="span"):
    """x <- z -> y."""
    return poset_category(name, ["x", "y", "z"],
                          lambda a, b: a == b or a == "z")


def parallel_pair_category(name="pair"):
    """Two objects, two parallel non-identity arrows u, v : 0 -> 1."""
    objects = ["0", "1"]
    arrows = [("id_0", "0", "0"), ("id_1", "1", "1"),
              ("u", "0", "1"), ("v", "0", "1")]
    ident = {"0": "id_0", "1": "id_1"}
    then = {("id_0", "id_0"): "id_0", ("id_1", "id_1"): "id_1"}
    for a in ("u", "v"):
        then[("id_0", a)] = a
        then[(a, "id_1")] = a
    return FinCategory(name, objects, arrows, ident, then)


def monoid_category(name, elements, table, unit):
    """One-object category from a monoid multiplication table.

    ``table[(a, b)]`` is "a after b".
    """
    arrows = [(e, "*", "*") for e in elements]
    then = {(b, a): table[(a, b)] for a in elements for b in elements}
    return FinCategory(name, ["*"], arrows, {"*": unit}, then)


def opposite(C, name=None):
    """The formal opposite: same arrow ids, dom/cod swapped."""
    arrows = [(f, C.cod(f), C.dom(f)) for f in C.arrow_names]
    then = {(g, f): h for (f, g), h in C._then.items()}
    return FinCategory(name or C.name + "^op", C.objects, arrows,
                       dict(C.identity), then, validate=False)


def product_category(C, D, name=None):
    """Componentwise product; object ids are "(c,d)"."""
    def ob(c, d):
        return "(%s,%s)" % (c, d)

    def ar(f, g):
        return "(%s,%s)" % (f, g)

    objects = [ob(c, d) for c in C.objects for d in D.objects]
    arrows = []
    for f in C.arrow_names:
        for g in D.arrow_names:
            arrows.append((ar(f, g), ob(C.dom(f), D.dom(g)),
                           ob(C.cod(f), D.cod(g))))
    ident = {ob(c, d): ar(C.id_of(c), D.id_of(d))
             for c in C.objects for d in D.objects}
    then = {}
    for (f1, g1), h1 in C._then.items():
        for (f2, g2), h2 in D._then.items():
            then[(ar(f1, f2), ar(g1, g2))] = ar(h1, h2)
    P = FinCategory(name or "(%sx%s)" % (C.name, D.name),
                    objects, arrows, ident, then, validate=False)
    pi1 = FunctorMap("pi1", P, C,
                     {ob(c, d): c for c in C.objects for d in D.objects},
                     {ar(f, g): f for f in C.arrow_names for g in D.arrow_names},
                     validate=False)
    pi2 = FunctorMap("pi2", P, D,
                     {ob(c, d): d for c in C.objects for d in D.objects},
                     {ar(f, g): g for f in C.arrow_names for g in D.arrow_names},
                     validate=False)
    return P, pi1, pi2


class FunctorMap:
    """A functor between finite categories, given by explicit maps."""

    def __init__(self, name, src, tgt, omap, amap, validate=True):
        self.name = name
        self.src = src
        self.tgt = tgt
        self.omap = dict(omap)
        self.amap = dict(amap)
        if validate:
            self._validate()

    def ob(self, x):
        return self.omap[x]

    def ar(self, f):
        return self.amap[f]

    def key(self):
        return (tuple(sorted(self.omap.items())),
                tuple(sorted(self.amap.items())))

    def __eq__(self, other):
        return (isinstance(other, FunctorMap)
                and self.src == other.src and self.tgt == other.tgt
                and self.omap == other.omap and self.amap == other.amap)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "FunctorMap(%r: %s -> %s)" % (self.name, self.src.name,
                                             self.tgt.name)

    def _validate(self):
        if set(self.omap) != set(self.src.objects):
            raise InvalidStructure("functor %r: object map not total" % self.name)
        if set(self.amap) != set(self.src.arrow_names):
            raise InvalidStructure("functor %r: arrow map not total" % self.name)
        for x in self.src.objects:
            if self.omap[x] not in set(self.tgt.objects):
                raise InvalidStructure("functor %r: unknown image object" % self.name)
            if self.amap[self.src.id_of(x)] != self.tgt.id_of(self.omap[x]):
                raise InvalidStructure(
                    "functor %r does not preserve identity at %r" % (self.name, x))
        for f in self.src.arrow_names:
            if (self.tgt.dom(self.amap[f]) != self.omap[self.src.dom(f)]
                    or self.tgt.cod(self.amap[f]) != self.omap[self.src.cod(f)]):
                raise InvalidStructure(
                    "functor %r breaks dom/cod at %r" % (self.name, f))
        for (f, g), h in self.src._then.items():
            if self.tgt.then(self.amap[f], self.amap[g]) != self.amap[h]:
                raise InvalidStructure(
                    "functor %r breaks composition at (%r,%r)" % (self.name, f, g))


def identity_functor(C):
    return FunctorMap("Id_%s" % C.name, C, C,
                      {x: x for x in C.objects},
                      {f: f for f in C.arrow_names}, validate=False)


def compose_functors(G, F, name=None):
    """G after F."""
    if F.tgt is not G.src and F.tgt != G.src:
        raise CodomainMismatch("cannot compose %r after %r" % (G.name, F.name))
    return FunctorMap(name or "%s.%s" % (G.name, F.name), F.src, G.tgt,
                      {x: G.omap[y] for x, y in F.omap.items()},
                      {f: G.amap[g] for f, g in F.amap.items()},
                      validate=False)


def constant_functor(J, A, a, name=None):
    return FunctorMap(name or "const_%s" % a, J, A,
                      {j: a for j in J.objects},
                      {u: A.id_of(a) for u in J.arrow_names})


def point_functor(C, c, name=None):
    """The functor from the terminal category picking out c."""
    pt = terminal_category()
    return FunctorMap(name or "ob_%s" % c, pt, C,
                      {"*": c}, {"id_*": C.id_of(c)})


def op_functor(F):
    """The same maps read as a functor between the opposites."""
    return FunctorMap(F.name + "^op", opposite(F.src), opposite(F.tgt),
                      dict(F.omap), dict(F.amap), validate=False)


class NatTransMap:
    """A natural transformation between parallel functors."""

    def __init__(self, name, F, G, components, validate=True):
        if F.src != G.src or F.tgt != G.tgt:
            raise ParallelMismatch("%r and %r are not parallel" % (F.name, G.name))
        self.name = name
        self.F = F
        self.G = G
        self.components = dict(components)
        if validate:
            self._validate()

    def at(self, x):
        return self.components[x]

    def key(self):
        return tuple(sorted(self.components.items()))

    def __eq__(self, other):
        return (isinstance(other, NatTransMap)
                and self.F == other.F and self.G == other.G
                and self.components == other.components)

    def __repr__(self):
        return "NatTransMap(%r: %s => %s)" % (self.name, self.F.name, self.G.name)

    def is_iso(self):
        A = self.F.tgt
        return all(A.is_iso(c) for c in self.components.values())

    def _validate(self):
        A = self.F.tgt
        J = self.F.src
        if set(self.components) != set(J.objects):
            raise InvalidStructure("components not total")
        for x in J.objects:
            c = self.components[x]
            if A.dom(c) != self.F.omap[x] or A.cod(c) != self.G.omap[x]:
                raise InvalidStructure("component at %r mistyped" % x)
        for u in J.arrow_names:
            x, y = J.dom(u), J.cod(u)
            lhs = A.compose(self.components[y], self.F.amap[u])
            rhs = A.compose(self.G.amap[u], self.components[x])
            if lhs != rhs:
                raise InvalidStructure("naturality fails at %r" % u)


# -- enumeration ---------------------------------------------------------

def enumerate_functors(C, D, budget=None):
    """All functors C -> D in canonical lexicographic order."""
    budget = as_budget(budget)
    if not C.objects:
        yield FunctorMap("F", C, D, {}, {}, validate=False)
        return
    if not D.objects:
        return
    non_id = [f for f in C.arrow_names if not C.is_identity(f)]
    # triples (f, g, h) with h = g after f, all non-forced
    triples = [(f, g, h) for (f, g), h in C._then.items()]
    count = 0
    for images in itertools.product(D.objects, repeat=len(C.objects)):
        budget.spend()
        omap = dict(zip(C.objects, images))
        amap = {C.id_of(x): D.id_of(omap[x]) for x in C.objects}
        cands = {}
        feasible = True
        for f in non_id:
            cs = D.hom(omap[C.dom(f)], omap[C.cod(f)])
            if not cs:
                feasible = False
                break
            cands[f] = cs
        if not feasible:
            continue

        def consistent(assigned):
            for f, g, h in triples:
                af, ag, ah = assigned.get(f), assigned.get(g), assigned.get(h)
                if af is None or ag is None or ah is None:
                    continue
                if D.then(af, ag) != ah:
                    return False
            return True

        def backtrack(i, assigned):
            budget.spend()
            if i == len(non_id):
                yield dict(assigned)
                return
            f = non_id[i]
            for c in cands[f]:
                assigned[f] = c
                if consistent(assigned):
                    yield from backtrack(i + 1, assigned)
                del assigned[f]

        for extra in backtrack(0, dict(amap)):
            fm = FunctorMap("F%d" % count, C, D, omap, extra, validate=False)
            count += 1
            yield fm


def enumerate_nat_trans(F, G, budget=None):
    """All natural transformations F => G in canonical order."""
    if F.src != G.src or F.tgt != G.tgt:
        raise ParallelMismatch("%r and %r are not parallel" % (F.name, G.name))
    budget = as_budget(budget)
    J, A = F.src, F.tgt
    objs = list(J.objects)
    cands = [A.hom(F.omap[x], G.omap[x]) for x in objs]
    if any(not c for c in cands):
        return
    arrows_by_pair = {}
    for u in J.arrow_names:
        arrows_by_pair.setdefault((J.dom(u), J.cod(u)), []).append(u)

    count = 0

    def natural_so_far(assigned):
        for (x, y), us in arrows_by_pair.items():
            if x in assigned and y in assigned:
                for u in us:
                    if (A.compose(assigned[y], F.amap[u])
                            != A.compose(G.amap[u], assigned[x])):
                        return False
        return True

    def backtrack(i, assigned):
        budget.spend()
        if i == len(objs):
            yield dict(assigned)
            return
        x = objs[i]
        for c in cands[i]:
            assigned[x] = c
            if natural_so_far(assigned):
                yield from backtrack(i + 1, assigned)
            del assigned[x]

    for comp in backtrack(0, {}):
        yield NatTransMap("t%d" % count, F, G, comp, validate=False)
        count += 1


def functor_iso_exists(F, G, budget=None):
    """(exists, witness): is there a natural isomorphism F => G?"""
    if F.src != G.src or F.tgt != G.tgt:
        raise ParallelMismatch("%r vs %r" % (F.name, G.name))
    A = F.tgt
    for t in enumerate_nat_trans(F, G, budget):
        if all(A.is_iso(c) for c in t.components.values()):
            return True, t
    return False, None


# -- comma and functor categories -----------------------------------------

def comma_category(F, G, name=None):
    """The comma category F down G for F : A -> C, G : B -> C.

    Objects are triples (a, h, b) with h : F(a) -> G(b); arrows are
    commuting-square pairs.  Returns (category, projection to A,
    projection to B).
    """
    if F.tgt != G.tgt:
        raise CodomainMismatch("%r and %r do not share a codomain"
                               % (F.name, G.name))
    A, B, C = F.src, G.src, F.tgt

    def ob(a, h, b):
        return "(%s|%s|%s)" % (a, h, b)

    objects = []
    obdata = {}
    for a in A.objects:
        for b in B.objects:
            for h in C.hom(F.omap[a], G.omap[b]):
                o = ob(a, h, b)
                objects.append(o)
                obdata[o] = (a, h, b)
    arrows = []
    ardata = {}
    for o1, (a1, h1, b1) in sorted(obdata.items()):
        for o2, (a2, h2, b2) in sorted(obdata.items()):
            for u in A.hom(a1, a2):
                for v in B.hom(b1, b2):
                    if C.compose(h2, F.amap[u]) == C.compose(G.amap[v], h1):
                        nm = "(%s|%s):%s->%s" % (u, v, o1, o2)
                        arrows.append((nm, o1, o2))
                        ardata[nm] = (u, v, o1, o2)
    ident = {}
    for o, (a, h, b) in obdata.items():
        ident[o] = "(%s|%s):%s->%s" % (A.id_of(a), B.id_of(b), o, o)
    then = {}
    by_dom = {}
    for nm, (u, v, o1, o2) in ardata.items():
        by_dom.setdefault(o1, []).append(nm)
    for nm1, (u1, v1, o1, o2) in ardata.items():
        for nm2 in by_dom.get(o2, ()):
            u2, v2, _, o3 = ardata[nm2]
            then[(nm1, nm2)] = "(%s|%s):%s->%s" % (
                A.then(u1, u2), B.then(v1, v2), o1, o3)
    K = FinCategory(name or "(%s|%s)" % (F.name, G.name),
                    objects, arrows, ident, then, validate=False)
    pA = FunctorMap("dom", K, A, {o: d[0] for o, d in obdata.items()},
                    {nm: d[0] for nm, d in ardata.items()}, validate=False)
    pB = FunctorMap("cod", K, B, {o: d[2] for o, d in obdata.items()},
                    {nm: d[1] for nm, d in ardata.items()}, validate=False)
    return K, pA, pB


def functor_category(J, A, budget=None, name=None):
    """The finite category of functors J -> A and natural transformations.

    Returns (category, dictionary object id -> FunctorMap,
    arrow id -> NatTransMap).
    """
    budget = as_budget(budget)
    functors = list(enumerate_functors(J, A, budget))
    names = {}
    obdict = {}
    for i, F in enumerate(functors):
        nm = "F%d" % i
        names[F.key()] = nm
        obdict[nm] = F
    arrows = []
    ardict = {}
    then = {}
    ident = {}
    trans = {}
    for i, F in enumerate(functors):
        for j, G in enumerate(functors):
            for t in enumerate_nat_trans(F, G, budget):
                nm = "t[%s=>%s]%s" % ("F%d" % i, "F%d" % j,
                                      ",".join("%s:%s" % kv
                                               for kv in sorted(t.components.items())))
                arrows.append((nm, "F%d" % i, "F%d" % j))
                ardict[nm] = t
                trans[("F%d" % i, "F%d" % j, t.key())] = nm
    for nm, (d, c) in [(a, (d, c)) for a, d, c in arrows]:
        pass
    for onm, F in obdict.items():
        idt = {x: A.id_of(F.omap[x]) for x in J.objects}
        ident[onm] = trans[(onm, onm, tuple(sorted(idt.items())))]
    for nm1, t1 in ardict.items():
        o1 = names[t1.F.key()]
        o2 = names[t1.G.key()]
        for nm2, t2 in ardict.items():
            if names[t2.F.key()] != o2:
                continue
            o3 = names[t2.G.key()]
            comp = {x: A.compose(t2.components[x], t1.components[x])
                    for x in J.objects}
            then[(nm1, nm2)] = trans[(o1, o3, tuple(sorted(comp.items())))]
    K = FinCategory(name or "[%s,%s]" % (J.name, A.name),
                    sorted(obdict), arrows, ident, then, validate=False)
    return K, obdict, ardict
