#!/usr/bin/env python3
"""Regenerate the JSON fixture corpus under fixtures/.

The corpus ships the divisibility-lattice instances, the thin cartesian
world with the trivial constellation over a 4-object path category, the
localization-shaped constellation, and the pointed-set instances for the
two-point and simplex constructions.
"""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from enriched_kernel import fincat as fc  # noqa: E402
from enriched_kernel.workspace import dump_category  # noqa: E402

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.path.join(HERE, "..", "fixtures")


def thin_hom(C):
    return [[a, b, "1" if C.hom(a, b) else "0"]
            for a in C.objects for b in C.objects]


def thin_comp(C):
    out = []
    for a in C.objects:
        for b in C.objects:
            for c in C.objects:
                h_ab = "1" if C.hom(a, b) else "0"
                h_bc = "1" if C.hom(b, c) else "0"
                h_ac = "1" if C.hom(a, c) else "0"
                dom = "1" if (h_ab == "1" and h_bc == "1") else "0"
                arrow = "id_%s" % dom if dom == h_ac else "z"
                out.append([a, b, c, arrow])
    return out


def thin_map_f1(src_hom, tgt_hom, f0, carrier):
    out = []
    for a in carrier:
        for b in carrier:
            s = src_hom[(a, b)]
            t = tgt_hom[(f0[a], f0[b])]
            arrow = "id_%s" % s if s == t else "z"
            out.append([a, b, arrow])
    return out


def thin_enriched(C, name):
    return {"tensor": "T01", "carrier": list(C.objects),
            "hom": thin_hom(C), "comp": thin_comp(C)}


def thin_map(src_cat, tgt_cat, f0, name):
    src_hom = {(a, b): "1" if src_cat.hom(a, b) else "0"
               for a in src_cat.objects for b in src_cat.objects}
    tgt_hom = {(a, b): "1" if tgt_cat.hom(a, b) else "0"
               for a in tgt_cat.objects for b in tgt_cat.objects}
    return {"f0": f0, "f1": thin_map_f1(src_hom, tgt_hom, f0,
                                        src_cat.objects)}


def lattice_fixture():
    div6 = fc.poset_category("div6", ["1", "2", "3", "6"],
                             lambda x, y: int(y) % int(x) == 0)
    sh2 = fc.discrete_category("sh2", ["l", "r"])
    cospan = fc.cospan_category("cospan")
    spanc = fc.span_category("span")
    doc = {
        "schema": 1,
        "categories": {
            "div6": dump_category(div6),
            "sh2": dump_category(sh2),
            "cospan": dump_category(cospan),
            "span": dump_category(spanc),
        },
        "functors": {
            "e_id_sh2": {"src": "sh2", "tgt": "sh2",
                         "omap": {"l": "l", "r": "r"},
                         "amap": {"id_l": "id_l", "id_r": "id_r"}},
        },
        "diagrams": {
            "pair23": {"kind": "category", "shape": "sh2",
                       "target": "div6",
                       "omap": {"l": "2", "r": "3"},
                       "amap": {"id_l": "2<=2", "id_r": "3<=3"}},
            "cospan236": {"kind": "category", "shape": "cospan",
                          "target": "div6",
                          "omap": {"x": "2", "y": "3", "z": "6"},
                          "amap": {"x<=x": "2<=2", "y<=y": "3<=3",
                                   "z<=z": "6<=6", "x<=z": "2<=6",
                                   "y<=z": "3<=6"}},
            "span123": {"kind": "category", "shape": "span",
                        "target": "div6",
                        "omap": {"x": "2", "y": "3", "z": "1"},
                        "amap": {"x<=x": "2<=2", "y<=y": "3<=3",
                                 "z<=z": "1<=1", "z<=x": "1<=2",
                                 "z<=y": "1<=3"}},
        },
        "skeletons": {
            "id6": {"kind": "identity", "base": "div6"},
            "collapse6": {"kind": "collapse", "base": "div6"},
        },
        "tensors": {"Tmeet": {"kind": "meet"}},
        "enriched_sets": {
            "one6": {"tensor": "Tmeet", "carrier": ["p"],
                     "hom": [["p", "p", "6"]],
                     "comp": [["p", "p", "p", "6<=6"]]},
            "rigid": {"tensor": "Tmeet", "carrier": ["x", "y"],
                      "hom": [["x", "x", "6"], ["x", "y", "2"],
                              ["y", "x", "2"], ["y", "y", "6"]],
                      "comp": [
                          ["x", "x", "x", "6<=6"],
                          ["x", "x", "y", "2<=2"],
                          ["x", "y", "x", "2<=6"],
                          ["x", "y", "y", "2<=2"],
                          ["y", "x", "x", "2<=2"],
                          ["y", "x", "y", "2<=6"],
                          ["y", "y", "x", "2<=2"],
                          ["y", "y", "y", "6<=6"]]},
        },
        "enriched_maps": {
            "id_rigid": {"src": "rigid", "tgt": "rigid",
                         "f0": {"x": "x", "y": "y"},
                         "f1": [["x", "x", "6<=6"], ["x", "y", "2<=2"],
                                ["y", "x", "2<=2"], ["y", "y", "6<=6"]]},
            "swap_rigid": {"src": "rigid", "tgt": "rigid",
                           "f0": {"x": "y", "y": "x"},
                           "f1": [["x", "x", "6<=6"], ["x", "y", "2<=2"],
                                  ["y", "x", "2<=2"], ["y", "y", "6<=6"]]},
            "id_one6": {"src": "one6", "tgt": "one6",
                        "f0": {"p": "p"},
                        "f1": [["p", "p", "6<=6"]]},
        },
    }
    return doc


def trivial_constellation_fixture(n, name):
    path = fc.chain_category(n, "path%d" % n)
    walk = fc.walking_arrow("walk", "d0", "d1", "step")
    j3 = fc.chain_category(3, "j3")
    doc = {
        "schema": 1,
        "categories": {
            "path%d" % n: dump_category(path),
            "walk": dump_category(walk),
            "j3": dump_category(j3),
        },
        "tensors": {"T01": {"kind": "thin-set"}},
        "skeletons": {"id01": {"kind": "identity", "base": "__thin__"}},
        "enriched_sets": {
            "S": thin_enriched(path, "S"),
            "I": thin_enriched(walk, "I"),
            "J": thin_enriched(j3, "J"),
        },
        "enriched_maps": {
            "e1": dict(thin_map(walk, j3, {"d0": "0", "d1": "1"}, "e1"),
                       src="I", tgt="J"),
            "e2": dict(thin_map(walk, j3, {"d0": "1", "d1": "2"}, "e2"),
                       src="I", tgt="J"),
            "e3": dict(thin_map(walk, j3, {"d0": "0", "d1": "2"}, "e3"),
                       src="I", tgt="J"),
        },
        "constellations": {
            name: {
                "base": "S",
                "I": [[a, b, "I"] for a in path.objects
                      for b in path.objects],
                "J": [[a, b, c, "J"] for a in path.objects
                      for b in path.objects for c in path.objects],
                "e1": [[a, b, c, "e1"] for a in path.objects
                       for b in path.objects for c in path.objects],
                "e2": [[a, b, c, "e2"] for a in path.objects
                       for b in path.objects for c in path.objects],
                "e3": [[a, b, c, "e3"] for a in path.objects
                       for b in path.objects for c in path.objects],
                "i1": [[a, b, "d0"] for a in path.objects
                       for b in path.objects],
                "i2": [[a, b, "d1"] for a in path.objects
                       for b in path.objects],
                "handedness": "left",
                "sk": "id01",
            }
        },
    }
    return doc


def localization_fixture():
    """The localization-shaped constellation: the hom diagram has an
    invertible detour x0 = a, and the gluing shape carries an extra
    object c above the two detours (this completion is fixture data,
    pinned here, not ground truth from any source)."""
    base = fc.chain_category(3, "base3")
    # I_loc: x0 = a -> y0 as a thin category with an isomorphism pair
    iloc = fc.poset_category(
        "iloc", ["a", "x0", "y0"],
        lambda p, q: p == q or (p in ("a", "x0") and q in ("a", "x0"))
        or q == "y0")
    # J_loc: two copies glued at the middle, plus c above both detours
    pairs = {("x0", "a"), ("a", "x0"), ("y0", "b"), ("b", "y0"),
             ("x0", "y0"), ("y0", "z0"), ("x0", "z0"), ("b", "z0"),
             ("a", "y0"), ("a", "z0"), ("x0", "b"), ("a", "b"),
             ("y0", "c"), ("b", "c"), ("x0", "c"), ("a", "c")}
    jloc = fc.poset_category(
        "jloc", ["a", "b", "c", "x0", "y0", "z0"],
        lambda p, q: p == q or (p, q) in pairs)
    doc = {
        "schema": 1,
        "categories": {
            "base3": dump_category(base),
            "iloc": dump_category(iloc),
            "jloc": dump_category(jloc),
        },
        "tensors": {"T01": {"kind": "thin-set"}},
        "skeletons": {"id01": {"kind": "identity", "base": "__thin__"}},
        "enriched_sets": {
            "S": thin_enriched(base, "S"),
            "Iloc": thin_enriched(iloc, "Iloc"),
            "Jloc": thin_enriched(jloc, "Jloc"),
        },
        "enriched_maps": {
            "e1": dict(thin_map(iloc, jloc,
                                {"x0": "x0", "a": "a", "y0": "y0"}, "e1"),
                       src="Iloc", tgt="Jloc"),
            "e2": dict(thin_map(iloc, jloc,
                                {"x0": "y0", "a": "b", "y0": "z0"}, "e2"),
                       src="Iloc", tgt="Jloc"),
            "e3": dict(thin_map(iloc, jloc,
                                {"x0": "x0", "a": "a", "y0": "z0"}, "e3"),
                       src="Iloc", tgt="Jloc"),
        },
        "constellations": {
            "localization": {
                "base": "S",
                "I": [[a, b, "Iloc"] for a in base.objects
                      for b in base.objects],
                "J": [[a, b, c, "Jloc"] for a in base.objects
                      for b in base.objects for c in base.objects],
                "e1": [[a, b, c, "e1"] for a in base.objects
                       for b in base.objects for c in base.objects],
                "e2": [[a, b, c, "e2"] for a in base.objects
                       for b in base.objects for c in base.objects],
                "e3": [[a, b, c, "e3"] for a in base.objects
                       for b in base.objects for c in base.objects],
                "i1": [[a, b, "x0"] for a in base.objects
                       for b in base.objects],
                "i2": [[a, b, "y0"] for a in base.objects
                       for b in base.objects],
                "handedness": "left",
                "sk": "id01",
            }
        },
    }
    return doc


def pointed_fixture():
    doc = {
        "schema": 1,
        "categories": {},
        "tensors": {"Tsmash": {"kind": "smash"},
                    "Tmeet": {"kind": "meet"}},
        "skeletons": {},
        "enriched_sets": {
            "twopt": {"tensor": "Tsmash", "carrier": ["x", "y"],
                      "hom": [["x", "x", "S"], ["x", "y", "S"],
                              ["y", "x", "S"], ["y", "y", "S"]],
                      "comp": [[a, b, c, "id_S"]
                               for a in ("x", "y") for b in ("x", "y")
                               for c in ("x", "y")]},
        },
        "enriched_maps": {},
    }
    return doc


def patch_thin_skeleton(doc):
    """The thin tensor's base is built internally; rewrite the identity
    skeleton to reference it through a named copy."""
    from enriched_kernel.tensor import thin_set_fragment
    T = thin_set_fragment()
    doc["categories"]["set01"] = dump_category(T.base)
    for spec in doc.get("skeletons", {}).values():
        if spec.get("base") == "__thin__":
            spec["base"] = "set01"
    return doc


def main():
    os.makedirs(FIXTURES, exist_ok=True)
    fixtures = {
        "lattice.json": lattice_fixture(),
        "trivial_constellation.json":
            patch_thin_skeleton(trivial_constellation_fixture(4, "trivial")),
        "trivial_constellation_small.json":
            patch_thin_skeleton(trivial_constellation_fixture(3,
                                                              "trivial")),
        "localization.json": patch_thin_skeleton(localization_fixture()),
        "pointed.json": pointed_fixture(),
    }
    for name, doc in fixtures.items():
        path = os.path.join(FIXTURES, name)
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
        print("wrote", path)


if __name__ == "__main__":
    main()
