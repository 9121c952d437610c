"""Brute-force universal constructions: (co)limits, (co)products,
monic/epic tests, and bounded free-quotient categories.

A universal object is found by enumerating every competing (co)cone and
exhibiting a unique mediating arrow for each; the full mediating table is
kept as the witness.  Absence is a value (None), never an error.
"""

from .errors import InvalidStructure, UnknownArrow, as_budget
from .fincat import (
    FinCategory,
    FunctorMap,
    discrete_category,
    op_functor,
    opposite,
)


class Cone:
    """apex with legs apex -> D(j); for direction='cocone' legs run
    D(j) -> apex."""

    __slots__ = ("apex", "legs", "direction")

    def __init__(self, apex, legs, direction="cone"):
        self.apex = apex
        self.legs = dict(legs)
        self.direction = direction

    def key(self):
        return (self.apex, tuple(sorted(self.legs.items())))

    def __eq__(self, other):
        return (isinstance(other, Cone) and self.apex == other.apex
                and self.legs == other.legs
                and self.direction == other.direction)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "%s(%s; %s)" % (self.direction, self.apex,
                               ",".join("%s:%s" % kv
                                        for kv in sorted(self.legs.items())))


class UniversalWitness:
    """A universal (co)cone plus the unique mediating arrow for every
    competing (co)cone."""

    def __init__(self, cone, mediating):
        self.cone = cone
        self.mediating = dict(mediating)  # cone.key() -> arrow id

    @property
    def apex(self):
        return self.cone.apex

    def leg(self, j):
        return self.cone.legs[j]

    def mediate(self, other):
        return self.mediating[other.key()]


def enumerate_cones(D, budget=None):
    """All cones over the diagram D : J -> A, canonically ordered."""
    budget = as_budget(budget)
    J, A = D.src, D.tgt
    objs = list(J.objects)
    arrows_by_pair = {}
    for u in J.arrow_names:
        arrows_by_pair.setdefault((J.dom(u), J.cod(u)), []).append(u)

    for apex in A.objects:
        cands = [A.hom(apex, D.omap[j]) for j in objs]
        if any(not c for c in cands):
            continue

        def commutes(assigned):
            for (x, y), us in arrows_by_pair.items():
                if x in assigned and y in assigned:
                    for u in us:
                        if A.compose(D.amap[u], assigned[x]) != assigned[y]:
                            return False
            return True

        def backtrack(i, assigned):
            budget.spend()
            if i == len(objs):
                yield Cone(apex, assigned)
                return
            for c in cands[i]:
                assigned[objs[i]] = c
                if commutes(assigned):
                    yield from backtrack(i + 1, assigned)
                del assigned[objs[i]]

        yield from backtrack(0, {})


def limit_of(D, budget=None):
    """The limit of D : J -> A with universality witness, or None.

    Among isomorphic universal apexes the lexicographically least cone
    is returned.
    """
    budget = as_budget(budget)
    cones = list(enumerate_cones(D, budget))
    A = D.tgt
    for cand in sorted(cones, key=Cone.key):
        table = {}
        ok = True
        for c in cones:
            budget.spend()
            ms = [m for m in A.hom(c.apex, cand.apex)
                  if all(A.compose(cand.legs[j], m) == c.legs[j]
                         for j in cand.legs)]
            if len(ms) != 1:
                ok = False
                break
            table[c.key()] = ms[0]
        if ok:
            return UniversalWitness(cand, table)
    return None


def colimit_of(D, budget=None):
    """Dual of limit_of: the colimit with witness, or None."""
    w = limit_of(op_functor(D), budget)
    if w is None:
        return None
    cone = Cone(w.cone.apex, w.cone.legs, direction="cocone")
    return UniversalWitness(cone, w.mediating)


def enumerate_cocones(D, budget=None):
    for c in enumerate_cones(op_functor(D), budget):
        yield Cone(c.apex, c.legs, direction="cocone")


def diagram_on(shape, A, omap, amap=None, name="D"):
    """Convenience: a FunctorMap shape -> A; identities are filled in."""
    amap = dict(amap or {})
    for x in shape.objects:
        amap.setdefault(shape.id_of(x), A.id_of(omap[x]))
    return FunctorMap(name, shape, A, omap, amap)


def family_product(A, family, direction="product", budget=None):
    """Universal (co)product of an indexed family of objects of A.

    family: dict index -> object id (may be empty: terminal/initial
    search).  Returns (object id, legs dict, witness) or None.
    """
    idx = sorted(family)
    shape = discrete_category("fam[%s]" % ",".join(idx), idx)
    D = diagram_on(shape, A, {i: family[i] for i in idx})
    if direction == "product":
        w = limit_of(D, budget)
    elif direction == "coproduct":
        w = colimit_of(D, budget)
    else:
        raise ValueError("direction must be product|coproduct")
    if w is None:
        return None
    return w.apex, dict(w.cone.legs), w


def mediate_into_product(A, witness, apex, legs):
    """The unique arrow apex -> product commuting with the projections.

    legs: dict index -> arrow apex -> family(index).  Returns the arrow
    (it exists and is unique by the witness's mediating table).
    """
    return witness.mediate(Cone(apex, legs))


def mediate_from_coproduct(A, witness, apex, legs):
    """The unique arrow coproduct -> apex with legs through injections."""
    return witness.mediate(Cone(apex, legs, direction="cocone"))


def check_mono_epi(A, f):
    """(monic, epic) for an arrow of A, decided over all parallel pairs."""
    if not A.has_arrow(f):
        raise UnknownArrow("%r not in %r" % (f, A.name))
    d = A.dom(f)
    c = A.cod(f)
    monic = True
    for x in A.objects:
        for g in A.hom(x, d):
            for h in A.hom(x, d):
                if g != h and A.compose(f, g) == A.compose(f, h):
                    monic = False
                    break
            if not monic:
                break
        if not monic:
            break
    epic = True
    for x in A.objects:
        for g in A.hom(c, x):
            for h in A.hom(c, x):
                if g != h and A.compose(g, f) == A.compose(h, f):
                    epic = False
                    break
            if not epic:
                break
        if not epic:
            break
    return monic, epic


class FreeQuotientResult:
    """Arrows of the bounded quotient; category is None when the quotient
    could not be proved closed within the bound."""

    def __init__(self, category, complete, classes):
        self.category = category
        self.complete = complete
        self.classes = classes


def free_quotient_category(objects, edges, relations, bound, budget=None,
                           name="freeq"):
    """The category of composable edge-words of length <= bound, modulo
    the congruence generated by ``relations``.

    edges: triples (name, dom, cod).  relations: pairs of parallel words,
    each word a (dom, tuple-of-edge-names) path read left to right; the
    empty word at x is (x, ()).

    The congruence is computed on words up to 2*bound so that products of
    representatives can be normalised; completeness is True iff every
    such product lands in a class with a representative within the bound.
    """
    budget = as_budget(budget)
    edgemap = {}
    for e, d, c in edges:
        if e in edgemap:
            raise InvalidStructure("duplicate edge %r" % e)
        edgemap[e] = (d, c)

    def word_cod(w):
        d, es = w
        return edgemap[es[-1]][1] if es else d

    # enumerate words up to the working bound
    working = 2 * bound
    words = [(x, ()) for x in objects]
    frontier = list(words)
    for _ in range(working):
        nxt = []
        for w in frontier:
            budget.spend()
            c = word_cod(w)
            for e, (d, _) in sorted(edgemap.items()):
                if d == c:
                    nxt.append((w[0], w[1] + (e,)))
        words.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    wordset = set(words)

    parent = {w: w for w in words}

    def find(w):
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            return True
        return False

    def check_parallel(u, v):
        if u[0] != v[0] or word_cod(u) != word_cod(v):
            raise InvalidStructure("relation relates non-parallel words")

    pairs = []
    for u, v in relations:
        u = (u[0], tuple(u[1]))
        v = (v[0], tuple(v[1]))
        check_parallel(u, v)
        if u in wordset and v in wordset:
            pairs.append((u, v))
    changed = True
    while changed:
        changed = False
        for u, v in pairs:
            if union(u, v):
                changed = True
        # close under pre/post composition with edges
        newpairs = []
        for u, v in pairs:
            budget.spend()
            c = word_cod(u)
            d = u[0]
            for e, (ed, ec) in edgemap.items():
                if ed == c:
                    u2, v2 = (u[0], u[1] + (e,)), (v[0], v[1] + (e,))
                    if u2 in wordset and v2 in wordset and find(u2) != find(v2):
                        newpairs.append((u2, v2))
                if ec == d:
                    u2, v2 = (ed, (e,) + u[1]), (ed, (e,) + v[1])
                    if u2 in wordset and v2 in wordset and find(u2) != find(v2):
                        newpairs.append((u2, v2))
        # close under transitive merging of already-related pairs
        if newpairs:
            pairs.extend(newpairs)
            changed = True

    classes = {}
    for w in words:
        classes.setdefault(find(w), []).append(w)
    # canonical representative: shortest, then lexicographic
    reps = {}
    for root, ws in classes.items():
        rep = min(ws, key=lambda w: (len(w[1]), w))
        for w in ws:
            reps[w] = rep

    short = sorted({r for r in reps.values() if len(r[1]) <= bound})

    def arrow_name(rep):
        d, es = rep
        return "[%s@%s]" % (".".join(es) if es else "id", d)

    arrows = [(arrow_name(r), r[0], word_cod(r)) for r in short]
    ident = {x: arrow_name(reps[(x, ())]) for x in objects}
    then = {}
    complete = True
    shortset = set(short)
    for r1 in short:
        for r2 in short:
            if word_cod(r1) != r2[0]:
                continue
            budget.spend()
            concat = (r1[0], r1[1] + r2[1])
            if concat not in wordset:
                complete = False
                continue
            rep = reps[concat]
            if rep not in shortset:
                complete = False
                continue
            then[(arrow_name(r1), arrow_name(r2))] = arrow_name(rep)
    if not complete:
        return FreeQuotientResult(None, False, classes)
    cat = FinCategory(name, objects, arrows, ident, then)
    return FreeQuotientResult(cat, True, classes)
