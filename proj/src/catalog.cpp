#include "vinberg/catalog.hpp"

#include <sstream>

#include "vinberg/errors.hpp"

namespace vinberg {

namespace {

// Recipes are authored as wire-format JSON so list/emit needs no serializer.
// Cut facets created by truncate/glue are named by the polytope code itself
// ("cut(...)"), never here.

const char* kTriangle345 = R"({
  "op": "simplex", "dim": 2, "names": ["a", "b", "c"],
  "labels": [["a", "b", 3], ["a", "c", 4], ["b", "c", 5]]
})";

const char* kTriangle237 = R"({
  "op": "simplex", "dim": 2, "names": ["a", "b", "c"],
  "labels": [["a", "b", 2], ["a", "c", 3], ["b", "c", 7]]
})";

const char* kAffineA2Triangle = R"({
  "op": "simplex", "dim": 2, "names": ["a", "b", "c"],
  "labels": [["a", "b", 3], ["a", "c", 3], ["b", "c", 3]]
})";

const char* kAffineA3Tetra = R"({
  "op": "simplex", "dim": 3, "names": ["a", "b", "c", "d"],
  "labels": [["a", "b", 3], ["b", "c", 3], ["c", "d", 3], ["a", "d", 3]]
})";

const char* kTetraAll3 = R"({
  "op": "simplex", "dim": 3, "names": ["a", "b", "c", "d"],
  "labels": [["a", "b", 3], ["a", "c", 3], ["a", "d", 3],
             ["b", "c", 3], ["b", "d", 3], ["c", "d", 3]]
})";

const char* kTetraOneRight = R"({
  "op": "simplex", "dim": 3, "names": ["a", "b", "c", "d"],
  "labels": [["a", "b", 3], ["a", "c", 3], ["a", "d", 3],
             ["b", "c", 3], ["b", "d", 3], ["c", "d", 2]]
})";

const char* kPanTetra4334 = R"({
  "op": "simplex", "dim": 3, "names": ["a", "b", "c", "d"],
  "labels": [["a", "b", 4], ["b", "c", 3], ["b", "d", 3], ["c", "d", 4]]
})";

const char* kCycleTetra3334 = R"({
  "op": "simplex", "dim": 3, "names": ["a", "b", "c", "d"],
  "labels": [["a", "b", 3], ["b", "c", 3], ["c", "d", 3], ["a", "d", 4]]
})";

const char* kLannerTetra534 = R"({
  "op": "simplex", "dim": 3, "names": ["a", "b", "c", "d"],
  "labels": [["a", "b", 5], ["b", "c", 3], ["c", "d", 4]]
})";

const char* kK23D4 = R"({
  "op": "simplex", "dim": 4, "names": ["p", "q", "x", "y", "z"],
  "labels": [["p", "x", 3], ["p", "y", 3], ["p", "z", 3],
             ["q", "x", 3], ["q", "y", 3], ["q", "z", 3]]
})";

const char* kCycleD433334 = R"({
  "op": "simplex", "dim": 4, "names": ["a", "b", "c", "d", "e"],
  "labels": [["a", "b", 3], ["b", "c", 3], ["c", "d", 3], ["d", "e", 3], ["a", "e", 4]]
})";

const char* kTetra334Cut = R"({
  "op": "truncate",
  "base": {
    "op": "simplex", "dim": 3, "names": ["a", "b", "c", "d"],
    "labels": [["a", "b", 3], ["a", "c", 3], ["a", "d", 3],
               ["b", "c", 3], ["b", "d", 3], ["c", "d", 4]]
  },
  "vertices": [["b", "c", "d"]]
})";

const char* kTwoLannerGlue1 = R"({
  "op": "glue",
  "left": {
    "op": "simplex", "dim": 3, "names": ["a", "b", "c", "d"],
    "labels": [["a", "b", 3], ["a", "c", 3], ["a", "d", 3],
               ["b", "c", 3], ["b", "d", 3], ["c", "d", 4]]
  },
  "left_vertex": ["b", "c", "d"],
  "right": {
    "op": "simplex", "dim": 3, "names": ["e", "f", "g", "h"],
    "labels": [["e", "f", 3], ["e", "g", 3], ["e", "h", 3],
               ["f", "g", 3], ["f", "h", 3], ["g", "h", 4]]
  },
  "right_vertex": ["f", "g", "h"],
  "phi": {"b": "f", "c": "g", "d": "h"}
})";

const char* kThreeLeafChain = R"({
  "op": "glue",
  "left": {
    "op": "glue",
    "left": {
      "op": "simplex", "dim": 3, "names": ["a", "b", "c", "d"],
      "labels": [["a", "b", 3], ["a", "c", 3], ["a", "d", 3],
                 ["b", "c", 3], ["b", "d", 3], ["c", "d", 4]]
    },
    "left_vertex": ["b", "c", "d"],
    "right": {
      "op": "simplex", "dim": 3, "names": ["e", "f", "g", "h"],
      "labels": [["e", "f", 3], ["e", "g", 3], ["e", "h", 3],
                 ["f", "g", 3], ["f", "h", 3], ["g", "h", 4]]
    },
    "right_vertex": ["f", "g", "h"],
    "phi": {"b": "f", "c": "g", "d": "h"}
  },
  "left_vertex": ["e", "c", "d"],
  "right": {
    "op": "simplex", "dim": 3, "names": ["w", "x", "y", "z"],
    "labels": [["w", "x", 3], ["w", "y", 3], ["w", "z", 3],
               ["x", "y", 3], ["x", "z", 3], ["y", "z", 4]]
  },
  "right_vertex": ["x", "y", "z"],
  "phi": {"e": "x", "c": "y", "d": "z"}
})";

const char* kAffineGlue = R"({
  "op": "glue",
  "left": {
    "op": "simplex", "dim": 3, "names": ["a", "b", "c", "d"],
    "labels": [["a", "b", 4], ["a", "c", 4], ["a", "d", 4],
               ["b", "c", 3], ["b", "d", 3], ["c", "d", 3]]
  },
  "left_vertex": ["b", "c", "d"],
  "right": {
    "op": "simplex", "dim": 3, "names": ["e", "f", "g", "h"],
    "labels": [["e", "f", 4], ["e", "g", 4], ["e", "h", 4],
               ["f", "g", 3], ["f", "h", 3], ["g", "h", 3]]
  },
  "right_vertex": ["f", "g", "h"],
  "phi": {"b": "f", "c": "g", "d": "h"}
})";

const char* kGlueTree246 = R"({
  "op": "glue",
  "left": {
    "op": "simplex", "dim": 3, "names": ["a", "b", "c", "d"],
    "labels": [["a", "b", 3], ["a", "c", 3], ["a", "d", 3],
               ["b", "c", 2], ["b", "d", 4], ["c", "d", 6]]
  },
  "left_vertex": ["b", "c", "d"],
  "right": {
    "op": "simplex", "dim": 3, "names": ["e", "f", "g", "h"],
    "labels": [["e", "f", 3], ["e", "g", 3], ["e", "h", 3],
               ["f", "g", 2], ["f", "h", 4], ["g", "h", 6]]
  },
  "right_vertex": ["f", "g", "h"],
  "phi": {"b": "f", "c": "g", "d": "h"}
})";

const char* kLabeledCube = R"({
  "op": "lattice", "dim": 3, "names": ["F1", "F2", "F3", "F4", "F5", "F6"],
  "labels": [["F1", "F2", 2], ["F1", "F3", 2], ["F1", "F4", 2], ["F1", "F5", 2],
             ["F2", "F3", 2], ["F2", "F5", 4], ["F3", "F4", 4], ["F4", "F5", 2],
             ["F2", "F6", 4], ["F3", "F6", 2], ["F4", "F6", 2], ["F5", "F6", 4]],
  "vertices": [["F3", "F4", "F6"], ["F4", "F5", "F6"], ["F2", "F5", "F6"], ["F2", "F3", "F6"],
               ["F1", "F3", "F4"], ["F1", "F4", "F5"], ["F1", "F2", "F5"], ["F1", "F2", "F3"]]
})";

const char* kEmptyD10 = R"({
  "op": "simplex", "dim": 10,
  "names": ["f0", "f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8", "f9", "f10"],
  "labels": [["f0", "f1", 3], ["f1", "f2", 3], ["f2", "f3", 3], ["f3", "f4", 3],
             ["f4", "f5", 3], ["f5", "f6", 3], ["f6", "f7", 3], ["f7", "f8", 3],
             ["f8", "f9", 3], ["f9", "f10", 3]]
})";

std::vector<CatalogEntry> make_entries() {
  return {
      {"triangle-345", "hyperbolic (3,4,5) triangle, the chart is one free cyclic product",
       kTriangle345},
      {"triangle-237", "hyperbolic (2,3,7) triangle, rigid right-angled chart", kTriangle237},
      {"affine-a2-triangle", "equilateral (3,3,3) triangle, affine of zero type",
       kAffineA2Triangle},
      {"affine-a3-tetra", "four-cycle of 3s, the affine rank-4 circuit diagram", kAffineA3Tetra},
      {"tetra-all3", "3-simplex with every ridge labeled 3: no right angle, chart dimension 3",
       kTetraAll3},
      {"tetra-one-right", "3-simplex with a single right angle, chart dimension 2",
       kTetraOneRight},
      {"pan-tetra-4334", "3-simplex whose diagram is a triangle with a handle, chart dimension 1",
       kPanTetra4334},
      {"cycle-tetra-3334", "3-simplex whose diagram is a (3,3,3,4) circuit, chart dimension 1",
       kCycleTetra3334},
      {"lanner-tetra-534", "compact-simplex group with linear diagram 5-3-4, rigid chart",
       kLannerTetra534},
      {"k23-d4", "4-simplex with complete-bipartite diagram on 2+3 nodes, chart dimension 2",
       kK23D4},
      {"cycle-d4-33334", "4-simplex whose diagram is a (3,3,3,3,4) circuit, chart dimension 1",
       kCycleD433334},
      {"tetra-334-cut", "simplex truncated at a (3,3,4) vertex, a one-cut leaf", kTetra334Cut},
      {"two-lanner-glue-1", "two truncated simplices glued along a (3,3,4) circuit",
       kTwoLannerGlue1},
      {"three-leaf-chain", "three simplices glued in a chain, two interface circuits",
       kThreeLeafChain},
      {"affine-glue", "glue along a (3,3,3) circuit: the interface is affine, no integral points",
       kAffineGlue},
      {"glue-tree-246", "glue along a (2,4,6) vertex link whose diagram is a path, not a circuit",
       kGlueTree246},
      {"labeled-cube", "labeled combinatorial cube, explicit lattice outside the construction set",
       kLabeledCube},
      {"empty-d10", "10-dimensional simplex: above the dimension bound, the cell is empty",
       kEmptyD10},
  };
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = make_entries();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog_entries())
    if (e.name == name) return e;
  std::ostringstream os;
  os << "no catalog entry named \"" << name << "\"; valid names:";
  for (const auto& e : catalog_entries()) os << " " << e.name;
  throw UnknownNameError(os.str());
}

Json catalog_recipe(const std::string& name) { return parse_text(catalog_entry(name).recipe); }

PolytopeDoc catalog_build(const std::string& name) {
  return polytope_from_json(catalog_recipe(name));
}

}  // namespace vinberg
