"""Workspace files: a schema-versioned JSON format naming categories,
functors, skeletons, tensors, enriched sets and maps, diagrams and
constellation data.  Everything cross-references by name and validates
on load with error locations."""

import json

from .errors import Budget, LoadError
from .fincat import FinCategory, FunctorMap
from .skeleton import SkeletonMap
from .tensor import (
    InitialActionData,
    TensorStructure,
    UnitData,
    meet_tensor,
    product_tensor_structure,
    smash_tensor,
    thin_set_fragment,
)
from .enriched import EnrichedMap, EnrichedSet, WEDiagram
from .constellation import ConstellationData

SCHEMA_VERSION = 1

DEFAULT_LIMITS = {
    "max_objects": 10,
    "max_arrows": 60,
    "max_steps": 10_000_000,
}


class Workspace:
    def __init__(self, path=None):
        self.path = path
        self.limits = dict(DEFAULT_LIMITS)
        self.categories = {}
        self.functors = {}
        self.skeletons = {}
        self.tensors = {}
        self.enriched_sets = {}
        self.enriched_maps = {}
        self.diagrams = {}
        self.constellations = {}
        self.raw = {}

    def budget(self, override=None):
        return Budget(override or self.limits["max_steps"])

    # -- lookups with located errors ---------------------------------------

    def _get(self, table, kind, name):
        try:
            return table[name]
        except KeyError:
            raise LoadError("unknown %s %r" % (kind, name),
                            location="%s.%s" % (kind, name))

    def category(self, name):
        return self._get(self.categories, "category", name)

    def functor(self, name):
        return self._get(self.functors, "functor", name)

    def skeleton(self, name):
        return self._get(self.skeletons, "skeleton", name)

    def tensor(self, name):
        return self._get(self.tensors, "tensor", name)

    def enriched_set(self, name):
        return self._get(self.enriched_sets, "enriched_set", name)

    def enriched_map(self, name):
        return self._get(self.enriched_maps, "enriched_map", name)

    def diagram(self, name):
        return self._get(self.diagrams, "diagram", name)

    def constellation(self, name):
        return self._get(self.constellations, "constellation", name)


def _located(fn, location):
    try:
        return fn()
    except LoadError:
        raise
    except Exception as exc:
        raise LoadError("%s: %s" % (location, exc), location=location)


def load_workspace(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise LoadError("cannot read workspace: %s" % exc, location=path)
    except json.JSONDecodeError as exc:
        raise LoadError("workspace is not valid JSON: %s" % exc,
                        location="%s:%d" % (path, exc.lineno))
    return parse_workspace(doc, path)


def parse_workspace(doc, path="<memory>"):
    if doc.get("schema") != SCHEMA_VERSION:
        raise LoadError("unsupported schema %r" % doc.get("schema"),
                        location="schema")
    ws = Workspace(path)
    ws.raw = doc
    ws.limits.update(doc.get("budget", {}))

    for name, spec in sorted(doc.get("categories", {}).items()):
        loc = "categories.%s" % name

        def build(spec=spec, name=name):
            arrows = [tuple(a) for a in spec["arrows"]]
            then = {(f, g): h for f, g, h in spec.get("compose", [])}
            cat = FinCategory(name, spec["objects"], arrows,
                              spec["identities"], then)
            if len(cat.objects) > ws.limits["max_objects"] \
                    or len(cat.arrow_names) > ws.limits["max_arrows"]:
                raise LoadError("category %r exceeds budget caps" % name,
                                location="categories.%s" % name)
            return cat

        ws.categories[name] = _located(build, loc)

    for name, spec in sorted(doc.get("functors", {}).items()):
        loc = "functors.%s" % name

        def build(spec=spec, name=name):
            return FunctorMap(name, ws.category(spec["src"]),
                              ws.category(spec["tgt"]),
                              spec["omap"], spec["amap"])

        ws.functors[name] = _located(build, loc)

    for name, spec in sorted(doc.get("skeletons", {}).items()):
        loc = "skeletons.%s" % name

        def build(spec=spec, name=name):
            kind = spec["kind"]
            if kind == "identity":
                return SkeletonMap.identity(ws.category(spec["base"]),
                                            name=name)
            if kind == "discrete":
                return SkeletonMap.discrete(ws.category(spec["base"]),
                                            name=name)
            if kind == "collapse":
                return SkeletonMap.collapse_parallel(
                    ws.category(spec["base"]), name=name)
            if kind == "explicit":
                return SkeletonMap.explicit(ws.functor(spec["functor"]),
                                            name=name)
            if kind == "congruence":
                return SkeletonMap("congruence", ws.category(spec["base"]),
                                   classes=spec["classes"], name=name)
            raise LoadError("unknown skeleton kind %r" % kind, location=loc)

        ws.skeletons[name] = _located(build, loc)

    for name, spec in sorted(doc.get("tensors", {}).items()):
        loc = "tensors.%s" % name

        def build(spec=spec, name=name):
            kind = spec.get("kind", "explicit")
            if kind == "thin-set":
                return thin_set_fragment()
            if kind == "meet":
                return meet_tensor()
            if kind == "smash":
                return smash_tensor()
            if kind == "products":
                return product_tensor_structure(
                    ws.category(spec["base"]), name=name)
            base = ws.category(spec["base"])
            ten_ob = {(x, y): z for x, y, z in spec["ten_ob"]}
            ten_ar = {(f, g): h for f, g, h in spec["ten_ar"]}
            associator = None
            if "associator" in spec:
                associator = {(x, y, z): a
                              for x, y, z, a in spec["associator"]}
            symmetrizer = None
            if "symmetrizer" in spec:
                symmetrizer = {(x, y): a for x, y, a in spec["symmetrizer"]}
            unit = None
            if "unit" in spec:
                u = spec["unit"]
                unit = UnitData(u["object"], u["lam"], u["rho"])
            initial = None
            if "initial" in spec:
                u = spec["initial"]
                initial = InitialActionData(
                    u["object"], u["lam"], u["rho"],
                    u.get("absorb_l"), u.get("absorb_r"))
            return TensorStructure(base, ten_ob, ten_ar, associator,
                                   symmetrizer, unit, initial, name=name,
                                   partial=spec.get("partial", False))

        ws.tensors[name] = _located(build, loc)

    for name, spec in sorted(doc.get("enriched_sets", {}).items()):
        loc = "enriched_sets.%s" % name

        def build(spec=spec, name=name):
            hom = {(a, b): x for a, b, x in spec["hom"]}
            comp = {(a, b, c): f for a, b, c, f in spec["comp"]}
            return EnrichedSet(name, ws.tensor(spec["tensor"]),
                               spec["carrier"], hom, comp)

        ws.enriched_sets[name] = _located(build, loc)

    for name, spec in sorted(doc.get("enriched_maps", {}).items()):
        loc = "enriched_maps.%s" % name

        def build(spec=spec, name=name):
            f1 = {(a, b): f for a, b, f in spec["f1"]}
            return EnrichedMap(name, ws.enriched_set(spec["src"]),
                               ws.enriched_set(spec["tgt"]),
                               spec["f0"], f1,
                               mode=spec.get("mode", "sk-lax"))

        ws.enriched_maps[name] = _located(build, loc)

    for name, spec in sorted(doc.get("diagrams", {}).items()):
        loc = "diagrams.%s" % name

        def build(spec=spec, name=name):
            shape = ws.category(spec["shape"])
            if spec.get("kind", "category") == "category":
                return FunctorMap(name, shape,
                                  ws.category(spec["target"]),
                                  spec["omap"], spec["amap"])
            ob = {k: ws.enriched_set(v) for k, v in spec["ob"].items()}
            ar = {k: ws.enriched_map(v) for k, v in spec["ar"].items()}
            return WEDiagram(shape, ob, ar)

        ws.diagrams[name] = _located(build, loc)

    for name, spec in sorted(doc.get("constellations", {}).items()):
        loc = "constellations.%s" % name

        def build(spec=spec, name=name):
            base = ws.enriched_set(spec["base"])
            I = {(a, b): ws.enriched_set(v)
                 for a, b, v in spec["I"]}
            J = {(a, b, c): ws.enriched_set(v)
                 for a, b, c, v in spec["J"]}
            e1 = {(a, b, c): ws.enriched_map(v)
                  for a, b, c, v in spec["e1"]}
            e2 = {(a, b, c): ws.enriched_map(v)
                  for a, b, c, v in spec["e2"]}
            e3 = {(a, b, c): ws.enriched_map(v)
                  for a, b, c, v in spec["e3"]}
            i1 = {(a, b): v for a, b, v in spec["i1"]}
            i2 = {(a, b): v for a, b, v in spec["i2"]}
            sk = ws.skeleton(spec["sk"]) if "sk" in spec else None
            return ConstellationData(base, I, J, e1, e2, e3, i1, i2,
                                     handedness=spec.get("handedness",
                                                         "left"),
                                     sk=sk)

        ws.constellations[name] = _located(build, loc)

    return ws


def dump_category(cat):
    return {
        "objects": list(cat.objects),
        "arrows": [[f, cat.dom(f), cat.cod(f)] for f in cat.arrow_names],
        "identities": dict(sorted(cat.identity.items())),
        "compose": sorted([f, g, h] for (f, g), h in cat._then.items()),
    }


def dump_workspace(ws):
    """Serialise the loaded tables back to the JSON document form."""
    doc = {"schema": SCHEMA_VERSION, "budget": dict(ws.limits)}
    doc["categories"] = {nm: dump_category(cat)
                         for nm, cat in sorted(ws.categories.items())}
    doc["functors"] = {
        nm: {"src": F.src.name, "tgt": F.tgt.name,
             "omap": dict(sorted(F.omap.items())),
             "amap": dict(sorted(F.amap.items()))}
        for nm, F in sorted(ws.functors.items())}
    out = dict(ws.raw)
    out.update(doc)
    return out
