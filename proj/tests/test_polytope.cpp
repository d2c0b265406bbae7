#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "vinberg/errors.hpp"
#include "vinberg/polytope.hpp"

using namespace vinberg;

namespace {

using LabelMap = std::map<std::pair<int, int>, int>;

// Tetrahedron on a,b,c,d with every ridge labelled 3 except cd.
LabeledPolytope tetra_cd(int cd_label) {
  LabelMap labels;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) labels[{i, j}] = 3;
  labels[{2, 3}] = cd_label;
  return LabeledPolytope::simplex(3, {"a", "b", "c", "d"}, labels);
}

LabeledPolytope tetra_named(const std::vector<std::string>& names, int last_label) {
  LabelMap labels;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) labels[{i, j}] = 3;
  labels[{2, 3}] = last_label;
  return LabeledPolytope::simplex(3, names, labels);
}

LabeledPolytope glued_pair() {
  LabeledPolytope left = tetra_cd(4);
  LabeledPolytope right = tetra_named({"e", "f", "g", "h"}, 4);
  return LabeledPolytope::glue(left, {"b", "c", "d"}, right, {"f", "g", "h"},
                               {{"b", "f"}, {"c", "g"}, {"d", "h"}});
}

// Triangular prism as an explicit lattice: two triangles, three squares.
LabeledPolytope prism() {
  std::vector<std::string> names = {"t1", "t2", "s1", "s2", "s3"};
  LabelMap labels;
  for (int t : {0, 1})
    for (int s : {2, 3, 4}) labels[{t, s}] = 2;
  labels[{2, 3}] = 3;
  labels[{3, 4}] = 3;
  labels[{2, 4}] = 3;
  std::vector<std::vector<int>> vertices = {
      {0, 2, 3}, {0, 3, 4}, {0, 2, 4}, {1, 2, 3}, {1, 3, 4}, {1, 2, 4}};
  return LabeledPolytope::from_lattice(3, names, labels, vertices);
}

}  // namespace

TEST_CASE("simplex lattice invariants") {
  LabeledPolytope t = tetra_cd(4);
  CHECK(t.dim() == 3);
  CHECK(t.facet_count() == 4);
  CHECK(t.vertices().size() == 4);
  CHECK(t.edges().size() == 6);
  CHECK(t.check_lattice().empty());
  CHECK(t.is_truncation_polytope());
  CHECK(t.truncation_facets().empty());
  CHECK(t.e_plus() == 6);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(t.adjacent(i, j));
  CHECK(t.label(2, 3) == 4);
  CHECK(t.label(3, 2) == 4);
  CHECK(t.facet_index("c") == 2);
  CHECK_THROWS(t.facet_index("zz"));
  CHECK(t.vertex_index({"b", "c", "d"}) >= 0);

  CoxeterMatrix m = t.coxeter_matrix();
  CHECK(m.rank() == 4);
  CHECK(m.label(0, 1) == 3);
  CHECK(m.label(2, 3) == 4);

  // A labels map missing some pair is rejected.
  LabelMap partial;
  partial[{0, 1}] = 3;
  CHECK_THROWS(LabeledPolytope::simplex(3, {"a", "b", "c", "d"}, partial));

  // Links are (3,3,3) and (3,3,4): degenerate or worse, so not perfect, but
  // every edge pair is a finite dihedral.
  Perfection p = t.perfection();
  CHECK_FALSE(p.perfect);
  CHECK(p.two_perfect);

  // A cycle of labels 3,3,3,4 with orthogonal diagonals has links like
  // (2,3,3): all spherical.
  LabelMap cyc;
  cyc[{0, 1}] = 3;
  cyc[{1, 2}] = 3;
  cyc[{2, 3}] = 3;
  cyc[{0, 3}] = 4;
  cyc[{0, 2}] = 2;
  cyc[{1, 3}] = 2;
  Perfection pc = LabeledPolytope::simplex(3, {"a", "b", "c", "d"}, cyc).perfection();
  CHECK(pc.perfect);
  CHECK(pc.two_perfect);
}

TEST_CASE("truncation introduces an orthogonal cut facet") {
  LabeledPolytope t = tetra_cd(4);
  LabeledPolytope tr = t.truncate({"b", "c", "d"});
  CHECK(tr.dim() == 3);
  CHECK(tr.facet_count() == 5);
  CHECK(tr.facet_names().back() == "cut(b,c,d)");
  CHECK(tr.vertices().size() == 6);
  CHECK(tr.edges().size() == 9);
  CHECK(tr.check_lattice().empty());
  CHECK(tr.is_truncation_polytope());

  int cut = tr.facet_index("cut(b,c,d)");
  CHECK(tr.is_truncation_facet(cut));
  CHECK(tr.truncation_facets() == std::vector<int>{cut});
  for (const char* n : {"b", "c", "d"}) {
    CHECK(tr.adjacent(cut, tr.facet_index(n)));
    CHECK(tr.label(cut, tr.facet_index(n)) == 2);
  }
  CHECK_FALSE(tr.adjacent(cut, tr.facet_index("a")));
  CHECK(tr.e_plus() == t.e_plus());

  // The missing ridge becomes an oo label in the group matrix.
  CoxeterMatrix m = tr.coxeter_matrix();
  CHECK(m.label(m.index_of("a"), m.index_of("cut(b,c,d)")) == kInfLabel);

  // Truncating by vertex index gives the same polytope.
  LabeledPolytope tr2 = t.truncate(t.vertex_index({"b", "c", "d"}));
  CHECK(tr2.facet_names() == tr.facet_names());
  CHECK(tr2.vertices() == tr.vertices());

  auto shape = tr.truncated_simplex_shape();
  REQUIRE(shape.has_value());
  CHECK(shape->core.size() == 4);
  CHECK(shape->cuts == std::vector<int>{cut});

  CHECK_THROWS(t.truncate({"a", "b", "z"}));  // unknown facet name
  // A facet triple that is not a vertex of the lattice.
  CHECK_THROWS_AS(tr.truncate({"a", "b", "cut(b,c,d)"}), UnknownVertexError);
}

TEST_CASE("gluing identifies links and consumes the cut facets") {
  LabeledPolytope g = glued_pair();
  CHECK(g.dim() == 3);
  CHECK(g.facet_count() == 5);
  CHECK(g.facet_names() == std::vector<std::string>{"a", "b", "c", "d", "e"});
  CHECK(g.vertices().size() == 6);
  CHECK(g.edges().size() == 9);
  CHECK(g.check_lattice().empty());
  CHECK(g.is_truncation_polytope());
  CHECK(g.truncation_facets().empty());  // both cut facets were consumed
  CHECK(g.e_plus() == 9);

  // Link ridges keep the left labels; right-side ridges are carried over.
  CHECK(g.label(g.facet_index("c"), g.facet_index("d")) == 4);
  CHECK(g.label(g.facet_index("e"), g.facet_index("b")) == 3);
  CHECK_FALSE(g.adjacent(g.facet_index("a"), g.facet_index("e")));

  // Vertices like (3,3,3) are degenerate, so only edge stabilizers are finite.
  Perfection p = g.perfection();
  CHECK_FALSE(p.perfect);
  CHECK(p.two_perfect);

  // Mismatched link labels refuse to glue.
  LabeledPolytope right5 = tetra_named({"e", "f", "g", "h"}, 5);
  CHECK_THROWS_AS(LabeledPolytope::glue(tetra_cd(4), {"b", "c", "d"}, right5, {"f", "g", "h"},
                                        {{"b", "f"}, {"c", "g"}, {"d", "h"}}),
                  LinkMismatchError);

  // A right-side facet name colliding with a kept left name refuses too.
  LabeledPolytope clash = tetra_named({"a", "f", "g", "h"}, 4);
  CHECK_THROWS_AS(LabeledPolytope::glue(tetra_cd(4), {"b", "c", "d"}, clash, {"f", "g", "h"},
                                        {{"b", "f"}, {"c", "g"}, {"d", "h"}}),
                  DuplicateNameError);
}

TEST_CASE("prismatic circuits and splitting") {
  LabeledPolytope g = glued_pair();
  auto circuits = g.prismatic_circuits();
  REQUIRE(circuits.size() == 1);
  const PrismaticCircuit& c = circuits[0];
  std::vector<int> expect = {g.facet_index("b"), g.facet_index("c"), g.facet_index("d")};
  CHECK(c.delta == expect);
  CHECK(c.cls == CircuitClass::Essential);
  CHECK(c.group_class == GroupClass::Large);

  auto [left, right] = g.split(c.delta);
  for (const LabeledPolytope* piece : {&left, &right}) {
    CHECK(piece->is_truncation_polytope());
    CHECK(piece->dim() == 3);
    CHECK(piece->facet_count() == 5);
    CHECK(piece->truncation_facets().size() == 1);
    auto shape = piece->truncated_simplex_shape();
    REQUIRE(shape.has_value());
    CHECK(shape->core.size() == 4);
  }

  // A plain simplex has no prismatic circuit.
  CHECK(tetra_cd(4).prismatic_circuits().empty());
}

TEST_CASE("gluing tree shapes") {
  SUBCASE("single simplex") {
    GluingTree t = tetra_cd(4).gluing_tree();
    REQUIRE(t.leaves.size() == 1);
    CHECK(t.leaves[0].kind == LeafKind::Simplex);
    CHECK(t.edges.empty());
    CHECK_FALSE(t.dimension_bound_exceeded);
  }
  SUBCASE("two glued simplexes") {
    GluingTree t = glued_pair().gluing_tree();
    REQUIRE(t.leaves.size() == 2);
    CHECK(t.leaves[0].kind == LeafKind::TruncatedSimplex);
    CHECK(t.leaves[1].kind == LeafKind::TruncatedSimplex);
    REQUIRE(t.edges.size() == 1);
    CHECK(t.edges[0].delta == std::vector<std::string>{"b", "c", "d"});
  }
  SUBCASE("chain of three") {
    LabeledPolytope mid = glued_pair();
    LabeledPolytope third = tetra_named({"w", "x", "y", "z"}, 4);
    LabeledPolytope chain = LabeledPolytope::glue(mid, {"e", "c", "d"}, third, {"x", "y", "z"},
                                                  {{"e", "x"}, {"c", "y"}, {"d", "z"}});
    GluingTree t = chain.gluing_tree();
    CHECK(t.leaves.size() == 3);
    CHECK(t.edges.size() == 2);
    CHECK(chain.e_plus() == 12);
  }
  SUBCASE("dimension bound") {
    int d = 10;
    std::vector<std::string> names;
    for (int i = 0; i <= d; ++i) names.push_back("f" + std::to_string(i));
    LabelMap labels;
    for (int i = 0; i <= d; ++i)
      for (int j = i + 1; j <= d; ++j) labels[{i, j}] = j == i + 1 ? 3 : 2;
    LabeledPolytope big = LabeledPolytope::simplex(d, names, labels);
    CHECK(big.gluing_tree().dimension_bound_exceeded);
  }
}

TEST_CASE("explicit lattices support links but not circuits") {
  LabeledPolytope pr = prism();
  CHECK(pr.dim() == 3);
  CHECK(pr.check_lattice().empty());
  CHECK_FALSE(pr.is_truncation_polytope());
  CHECK_THROWS_AS(pr.prismatic_circuits(), NotTruncationPolytopeError);
  CHECK_THROWS_AS(pr.gluing_tree(), NotTruncationPolytopeError);

  int v = pr.vertex_index({"t1", "s1", "s2"});
  VertexLink link = pr.vertex_link(v);
  CHECK(link.link.dim() == 2);
  CHECK(link.link.facet_count() == 3);
  REQUIRE(link.facets.size() == 3);
  // Link labels are the ridge labels among the incident facets.
  int li = link.link.facet_index("s1");
  int lj = link.link.facet_index("s2");
  CHECK(link.link.label(li, lj) == 3);

  // Truncation still works on explicit lattices.
  LabeledPolytope cut = pr.truncate({"t1", "s1", "s2"});
  CHECK(cut.facet_count() == 6);
  CHECK(cut.check_lattice().empty());
  CHECK_FALSE(cut.is_truncation_polytope());

  // Bad lattices are rejected at construction.
  std::vector<std::vector<int>> bad_vertices = {{0, 1}, {0, 2, 3}};
  CHECK_THROWS(LabeledPolytope::from_lattice(3, {"p", "q", "r", "s"}, LabelMap{}, bad_vertices));
}

TEST_CASE("lattice matching under a name map") {
  LabeledPolytope t1 = tetra_cd(4);
  LabeledPolytope t2 = tetra_named({"p", "q", "r", "s"}, 4);
  std::map<std::string, std::string> good = {{"a", "p"}, {"b", "q"}, {"c", "r"}, {"d", "s"}};
  CHECK(t1.matches_under(t2, good));
  // Swapping the 4-ridge off itself breaks the labels.
  std::map<std::string, std::string> bad = {{"a", "r"}, {"b", "q"}, {"c", "p"}, {"d", "s"}};
  CHECK_FALSE(t1.matches_under(t2, bad));
  // Symmetry that fixes the 4-ridge as a set still matches.
  std::map<std::string, std::string> swap_cd = {{"a", "q"}, {"b", "p"}, {"c", "s"}, {"d", "r"}};
  CHECK(t1.matches_under(t2, swap_cd));
}
