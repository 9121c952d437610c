"""Skeleton functors: explicit finite functors or identity-on-objects
arrow congruences, plus the Skel construction quotienting a fragment of
categories-and-functors by natural isomorphism.

Every definition downstream reduces equations to ``sk_equal``: "equal
after applying sk".
"""

from .errors import (
    CongruenceFailure,
    DictionaryMismatch,
    InvalidStructure,
    as_budget,
)
from .fincat import FinCategory, FunctorMap, functor_iso_exists, identity_functor


class SkeletonMap:
    """Either Explicit(functor) or Congruence(base, partition of arrows).

    A congruence is identity-on-objects; related arrows share dom/cod and
    the relation is composition-compatible (checked exhaustively).
    """

    def __init__(self, kind, base, functor=None, classes=None, name="sk"):
        self.kind = kind
        self.base = base
        self.name = name
        if kind == "explicit":
            if functor is None or functor.src != base:
                raise InvalidStructure("explicit skeleton needs a functor on base")
            self.functor_map = functor
            self._class_of = None
        elif kind == "congruence":
            self._class_of = {}
            seen = set()
            for i, cls in enumerate(classes):
                cls = tuple(sorted(cls))
                if not cls:
                    raise InvalidStructure("empty congruence class")
                d, c = base.dom(cls[0]), base.cod(cls[0])
                for f in cls:
                    if f in seen:
                        raise InvalidStructure("arrow %r in two classes" % f)
                    seen.add(f)
                    if base.dom(f) != d or base.cod(f) != c:
                        raise InvalidStructure(
                            "class %d relates non-parallel arrows" % i)
                    self._class_of[f] = cls
            for f in base.arrow_names:
                if f not in seen:
                    self._class_of[f] = (f,)
            self._check_composition_compatible()
            self.functor_map = None
            self._quotient = None
        else:
            raise InvalidStructure("unknown skeleton kind %r" % kind)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def identity(base, name="id"):
        return SkeletonMap("explicit", base, functor=identity_functor(base),
                           name=name)

    @staticmethod
    def discrete(base, name="discrete"):
        """The congruence with singleton classes (sk-equality = equality)."""
        return SkeletonMap("congruence", base, classes=[], name=name)

    @staticmethod
    def collapse_parallel(base, name="collapse"):
        """Relates every parallel pair; always a congruence."""
        groups = {}
        for f in base.arrow_names:
            groups.setdefault((base.dom(f), base.cod(f)), []).append(f)
        return SkeletonMap("congruence", base, classes=list(groups.values()),
                           name=name)

    @staticmethod
    def explicit(functor, name=None):
        return SkeletonMap("explicit", functor.src, functor=functor,
                           name=name or functor.name)

    # -- the sk-equality test ----------------------------------------------

    def sk_equal(self, f, g):
        """sk(f) = sk(g)."""
        if f == g:
            return True
        if self.kind == "explicit":
            return self.functor_map.amap[f] == self.functor_map.amap[g]
        return self._class_of[f] is self._class_of[g] or \
            self._class_of[f] == self._class_of[g]

    def class_of(self, f):
        if self.kind == "congruence":
            return self._class_of[f]
        img = self.functor_map.amap[f]
        return tuple(sorted(g for g in self.base.arrow_names
                            if self.functor_map.amap[g] == img))

    def sk_invertible(self, f):
        """Is f invertible after sk: some g with both composites sk-identities."""
        A = self.base
        d, c = A.dom(f), A.cod(f)
        for g in A.hom(c, d):
            if (self.sk_equal(A.compose(g, f), A.id_of(d))
                    and self.sk_equal(A.compose(f, g), A.id_of(c))):
                return g
        return None

    def as_functor(self):
        """The skeleton as an actual functor (projection for congruences)."""
        if self.kind == "explicit":
            return self.functor_map
        if self._quotient is None:
            self._quotient = quotient_by_congruence(self)
        return self._quotient[1]

    def target_category(self):
        return self.as_functor().tgt

    def _check_composition_compatible(self):
        A = self.base
        # f ~ f' and g ~ g' composable implies g.f ~ g'.f'
        for f in A.arrow_names:
            for f2 in self._class_of[f]:
                if f2 < f:
                    continue
                for g in A.arrow_names:
                    if A.dom(g) != A.cod(f):
                        continue
                    for g2 in self._class_of[g]:
                        h1 = A.compose(g, f)
                        h2 = A.compose(g2, f2)
                        if not self.sk_equal(h1, h2):
                            raise CongruenceFailure(
                                "congruence not composition-compatible",
                                witness=(f, f2, g, g2))


def quotient_by_congruence(sk, name=None):
    """The quotient category and the identity-on-objects projection.

    Arrow classes become arrows named by their least representative.
    """
    if sk.kind != "congruence":
        raise InvalidStructure("quotient requires a congruence skeleton")
    A = sk.base

    def cname(f):
        return "[%s]" % sk.class_of(f)[0]

    arrows = []
    seen = set()
    for f in A.arrow_names:
        nm = cname(f)
        if nm not in seen:
            seen.add(nm)
            arrows.append((nm, A.dom(f), A.cod(f)))
    ident = {x: cname(A.id_of(x)) for x in A.objects}
    then = {}
    for (f, g), h in A._then.items():
        key = (cname(f), cname(g))
        val = cname(h)
        if key in then and then[key] != val:
            raise CongruenceFailure("quotient composition ill-defined",
                                    witness=(f, g))
        then[key] = val
    B = FinCategory(name or "%s/%s" % (A.name, sk.name),
                    A.objects, arrows, ident, then)
    proj = FunctorMap("proj_%s" % sk.name, A, B,
                      {x: x for x in A.objects},
                      {f: cname(f) for f in A.arrow_names})
    return B, proj


def skel_congruence_of_fragment(frag, cat_of, fun_of, budget=None, name="Skel"):
    """The Skel congruence on a fragment of categories and functors.

    frag: a FinCategory whose objects denote finite categories and whose
    arrows denote functors; cat_of / fun_of are the dictionaries.  Two
    parallel fragment arrows fall in one class iff their underlying
    functors are naturally isomorphic.
    """
    budget = as_budget(budget)
    # dictionary consistency: strict equality of underlying functor maps
    for x in frag.objects:
        if not isinstance(cat_of[x], FinCategory):
            raise DictionaryMismatch("object %r has no category" % x)
    for f in frag.arrow_names:
        F = fun_of[f]
        if F.src != cat_of[frag.dom(f)] or F.tgt != cat_of[frag.cod(f)]:
            raise DictionaryMismatch("arrow %r mistyped in dictionary" % f)
        if frag.is_identity(f):
            idf = identity_functor(cat_of[frag.dom(f)])
            if (F.omap, F.amap) != (idf.omap, idf.amap):
                raise DictionaryMismatch("identity arrow %r is not Id" % f)
    for (f, g), h in frag._then.items():
        comp_o = {x: fun_of[g].omap[y] for x, y in fun_of[f].omap.items()}
        comp_a = {a: fun_of[g].amap[b] for a, b in fun_of[f].amap.items()}
        if (comp_o, comp_a) != (fun_of[h].omap, fun_of[h].amap):
            raise DictionaryMismatch(
                "dictionary breaks composition at (%r,%r)" % (f, g))

    groups = {}
    for f in frag.arrow_names:
        groups.setdefault((frag.dom(f), frag.cod(f)), []).append(f)
    classes = []
    for (_, _), fs in sorted(groups.items()):
        remaining = list(fs)
        while remaining:
            f = remaining.pop(0)
            cls = [f]
            rest = []
            for g in remaining:
                budget.spend()
                ok, _ = functor_iso_exists(fun_of[f], fun_of[g], budget)
                if ok:
                    cls.append(g)
                else:
                    rest.append(g)
            remaining = rest
            classes.append(cls)
    # natural isomorphism classes could in principle fail transitive
    # grouping order-independence only if iso-ness were not transitive;
    # it is, but the congruence check below still guards composition
    try:
        return SkeletonMap("congruence", frag, classes=classes, name=name)
    except CongruenceFailure:
        raise
