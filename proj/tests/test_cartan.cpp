#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "vinberg/cartan.hpp"
#include "vinberg/errors.hpp"

using namespace vinberg;

namespace {

std::vector<std::string> gen_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
  return names;
}

CoxeterMatrix label_path(const std::vector<int>& labels) {
  CoxeterMatrix m(gen_names(static_cast<int>(labels.size()) + 1));
  for (size_t i = 0; i < labels.size(); ++i)
    m.set_label(static_cast<int>(i), static_cast<int>(i) + 1, labels[i]);
  return m;
}

CoxeterMatrix label_cycle(const std::vector<int>& labels) {
  int n = static_cast<int>(labels.size());
  CoxeterMatrix m(gen_names(n));
  for (int i = 0; i < n; ++i) m.set_label(i, (i + 1) % n, labels[i]);
  return m;
}

void set_pair(CartanMatrix& a, int i, int j, Scalar ij, Scalar ji) {
  a.set(i, j, std::move(ij));
  a.set(j, i, std::move(ji));
}

// Square cycle with unit forward entries except a_30 = -p, a_03 = -q.
CartanMatrix square_with(const Scalar& p, const Scalar& q) {
  CartanMatrix a(gen_names(4));
  set_pair(a, 0, 1, Scalar(-1), Scalar(-1));
  set_pair(a, 1, 2, Scalar(-1), Scalar(-1));
  set_pair(a, 2, 3, Scalar(-1), Scalar(-1));
  set_pair(a, 3, 0, -p, -q);
  return a;
}

// Determinant of the (rows x cols) submatrix by cofactor expansion. Slow and
// obviously correct; the independent check for the cycle-cover minors.
Scalar det_expand(const CartanMatrix& a, const std::vector<int>& rows,
                  const std::vector<int>& cols) {
  size_t n = rows.size();
  if (n == 0) return Scalar(1);
  Scalar sum(0);
  int sign = 1;
  for (size_t c = 0; c < n; ++c) {
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    std::vector<int> sub_cols;
    for (size_t k = 0; k < n; ++k)
      if (k != c) sub_cols.push_back(cols[k]);
    Scalar term = a.at(rows[0], cols[c]) * det_expand(a, sub_rows, sub_cols);
    sum = sign > 0 ? sum + term : sum - term;
    sign = -sign;
  }
  return sum;
}

Scalar det_oracle(const CartanMatrix& a, const std::vector<int>& subset) {
  return det_expand(a, subset, subset);
}

}  // namespace

TEST_CASE("circuit canonical form fixes anchor and orientation") {
  CHECK(canonical_circuit({2, 0, 1}).nodes == std::vector<int>{0, 1, 2});
  CHECK(canonical_circuit({1, 0, 2}).nodes == std::vector<int>{0, 1, 2});
  CHECK(canonical_circuit({0, 2, 1, 3}).nodes == std::vector<int>{0, 2, 1, 3});
  CHECK(canonical_circuit({3, 1, 2, 0}).nodes == std::vector<int>{0, 2, 1, 3});
  CHECK(canonical_circuit({5, 3}).nodes == std::vector<int>{3, 5});
  CHECK_THROWS(canonical_circuit({4}));
  CHECK_THROWS(canonical_circuit({4, 4}));

  CHECK(reversed_cycle({0, 1, 2}) == std::vector<int>{0, 2, 1});
  CHECK(reversed_cycle({0, 2, 1, 3}) == std::vector<int>{0, 3, 1, 2});
  // Reversal preserves the canonical class.
  CHECK(canonical_circuit(reversed_cycle({0, 2, 1, 3})).nodes == std::vector<int>{0, 2, 1, 3});

  Circuit small = canonical_circuit({1, 2});
  Circuit big = canonical_circuit({0, 1, 2});
  CHECK(small < big);
}

TEST_CASE("cyclic and edge products are conjugation invariants") {
  CartanMatrix a = square_with(Scalar(2), Scalar(1));
  set_pair(a, 0, 2, Scalar(-3), Scalar(make_rational(1, 3)) * Scalar(-1));  // chord
  REQUIRE(a.validate().empty());

  std::vector<Scalar> d = {Scalar(1), Scalar(make_rational(3, 2)), Scalar(5),
                           Scalar(make_rational(7, 3))};
  CartanMatrix b = diagonal_conjugate(a, d);
  REQUIRE(b.validate().empty());

  for (auto [i, j] : a.adjacency_edges()) CHECK(edge_product(a, i, j) == edge_product(b, i, j));
  for (const Circuit& c : simple_cycles(a)) {
    CHECK(cyclic_product(a, c.nodes) == cyclic_product(b, c.nodes));
    RatioPair pa = normalized_cyclic_product(a, c);
    RatioPair pb = normalized_cyclic_product(b, c);
    CHECK(pa.forward == pb.forward);
    CHECK(pa.backward == pb.backward);
    // Both orientations multiply to the orientation-free edge product.
    Scalar edge_prod(1);
    int k = c.length();
    for (int t = 0; t < k; ++t) edge_prod = edge_prod * edge_product(a, c.nodes[t], c.nodes[(t + 1) % k]);
    CHECK(pa.forward * pa.backward == edge_prod);
  }
  CHECK(equivalent(a, b));
}

TEST_CASE("equivalence detects cycle ratio changes") {
  // Same adjacency and same edge products, different circuit orientation ratio.
  CartanMatrix a = square_with(Scalar(1), Scalar(1));
  CartanMatrix b = square_with(Scalar(2), Scalar(make_rational(1, 2)));
  REQUIRE(b.validate().empty());
  for (auto [i, j] : a.adjacency_edges()) CHECK(edge_product(a, i, j) == edge_product(b, i, j));
  CHECK_FALSE(equivalent(a, b));

  // The asymmetry can sit anywhere on the cycle without changing the class.
  CartanMatrix c = square_with(Scalar(1), Scalar(1));
  set_pair(c, 1, 2, Scalar(-2), Scalar(make_rational(-1, 2)));
  CHECK(equivalent(b, c));
  CHECK_FALSE(equivalent(a, c));
}

TEST_CASE("perron trichotomy on cosine matrices of known diagrams") {
  PerronReport fin = perron_type(cosine_matrix(label_path({3, 3})));
  CHECK(fin.type == PerronType::Positive);
  CHECK(fin.rank == 3);
  CHECK(fin.lambda > 0);

  PerronReport aff = perron_type(cosine_matrix(label_cycle({3, 3, 3})));
  CHECK(aff.type == PerronType::Zero);
  CHECK(aff.rank == 2);
  CHECK(std::fabs(aff.lambda) < 1e-9);

  CoxeterMatrix tri(gen_names(3));
  tri.set_label(0, 1, 3);
  tri.set_label(0, 2, 4);
  tri.set_label(1, 2, 4);  // 1/3 + 1/4 + 1/4 < 1
  PerronReport hyp = perron_type(cosine_matrix(tri));
  CHECK(hyp.type == PerronType::Negative);
  CHECK(hyp.rank == 3);
  CHECK(hyp.lambda < 0);
}

TEST_CASE("perron requires exact irreducible input") {
  CartanMatrix split(gen_names(4));
  set_pair(split, 0, 1, Scalar(-1), Scalar(-1));
  set_pair(split, 2, 3, Scalar(-1), Scalar(-1));
  CHECK_THROWS_AS(perron_type(split), ReducibleError);

  CartanMatrix approx(gen_names(2));
  set_pair(approx, 0, 1, Scalar::approx(-1.0), Scalar::approx(-1.0));
  CHECK_THROWS_AS(perron_type(approx), ApproxDataError);
}

TEST_CASE("exact rank on degenerate matrices") {
  CartanMatrix a1aff(gen_names(2));
  set_pair(a1aff, 0, 1, Scalar(-2), Scalar(-2));
  CHECK(exact_rank(a1aff) == 1);
  CHECK(perron_type(a1aff).type == PerronType::Zero);

  CHECK(exact_rank(cosine_matrix(label_cycle({3, 3, 3, 3}))) == 3);
  CHECK(exact_rank(cosine_matrix(label_path({3, 4}))) == 3);
}

TEST_CASE("circuit enumeration counts") {
  // Complete graph on 4 nodes, all ridge pairs: 4 triangles + 3 squares.
  CoxeterMatrix k4(gen_names(4));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.set_label(i, j, 3);
  CartanMatrix a = cosine_matrix(k4);
  CHECK(simple_cycles(a).size() == 7);
  CHECK(relevant_circuits(a).size() == 7);

  // A product >= 4 pair counts as a 2-circuit on top of the cycles.
  CartanMatrix b(gen_names(3));
  set_pair(b, 0, 1, Scalar(-2), Scalar(-2));
  set_pair(b, 1, 2, Scalar(-1), Scalar(-1));
  auto rel = relevant_circuits(b);
  REQUIRE(rel.size() == 1);
  CHECK(rel[0].nodes == std::vector<int>{0, 1});
  CHECK(simple_cycles(b).empty());
}

TEST_CASE("canonical gauge symmetrizes forest edges") {
  CartanMatrix a(gen_names(3));
  set_pair(a, 0, 1, Scalar(-1), Scalar(-2));
  set_pair(a, 1, 2, Scalar(-3), Scalar(-1));
  REQUIRE(a.validate().empty());
  CartanMatrix g = canonical_gauge(a);
  // A path is all forest, so the gauge is fully symmetric.
  CHECK(g.at(0, 1) == g.at(1, 0));
  CHECK(g.at(1, 2) == g.at(2, 1));
  CHECK(g.at(0, 1) * g.at(1, 0) == Scalar(2));
  CHECK(equivalent(a, g));
}

TEST_CASE("validation flags inadmissible data") {
  CartanMatrix ok(gen_names(4));
  set_pair(ok, 0, 1, Scalar(-1), Scalar(-1));                                   // product 1
  set_pair(ok, 1, 2, -Scalar(AlgScalar::sqrt2()), -Scalar(AlgScalar::sqrt2())); // product 2
  set_pair(ok, 2, 3, Scalar(-2), Scalar(-3));                                   // product 6 >= 4
  CHECK(ok.validate().empty());

  CartanMatrix bad_diag = ok;
  bad_diag.set(0, 0, Scalar(3));
  CHECK_FALSE(bad_diag.validate().empty());

  CartanMatrix positive = ok;
  positive.set(0, 1, Scalar(1));
  CHECK_FALSE(positive.validate().empty());

  CartanMatrix half_zero = ok;
  half_zero.set(0, 1, Scalar(0));
  CHECK_FALSE(half_zero.validate().empty());

  // 5/2 is strictly between admissible products 2 and 2 + sqrt2.
  CartanMatrix off_curve = ok;
  set_pair(off_curve, 0, 1, Scalar(make_rational(-5, 2)), Scalar(-1));
  CHECK_FALSE(off_curve.validate().empty());

  // 2 + sqrt2 and 2 + sqrt3 are the in-field sub-4 products beyond 1, 2, 3.
  CartanMatrix octagonal = ok;
  set_pair(octagonal, 0, 1, -Scalar(AlgScalar(2) + AlgScalar::sqrt2()), Scalar(-1));
  CHECK(octagonal.validate().empty());
}

TEST_CASE("gauged representation stores products and ratios") {
  GaugedCartan g = GaugedCartan::from_labels(label_cycle({3, 3, 3, 4}));
  REQUIRE(g.size() == 4);
  CHECK(g.forest().size() == 3);
  auto extra = g.non_forest_edges();
  REQUIRE(extra.size() == 1);
  auto [u, v] = extra[0];
  // The forest is the lexicographically least spanning tree, so the leftover
  // edge is (2,3) with label 3.
  CHECK(extra[0] == std::make_pair(2, 3));
  CHECK(g.product_on(u, v) == Scalar(1));
  CHECK(g.ratio_on(u, v) == Scalar(1));

  std::vector<int> quad = {0, 1, 2, 3};
  CHECK(g.cycle_edge_product(quad) == Scalar(2));
  // All ratios 1: the directed product is the symmetric square root.
  CHECK(g.directed_cycle_product(quad) == Scalar(AlgScalar::sqrt2()));

  CHECK_THROWS(g.set_ratio(g.forest()[0].first, g.forest()[0].second, Scalar(2)));
  CHECK_THROWS(g.set_ratio(u, v, Scalar(-1)));

  g.set_ratio(u, v, Scalar(4));
  CHECK(g.ratio_on(u, v) == Scalar(4));
  CHECK(g.ratio_on(v, u) == Scalar(make_rational(1, 4)));
  CHECK(g.cycle_edge_product(quad) == Scalar(2));

  Circuit c = canonical_circuit(quad);
  RatioPair pair = g.circuit_pair(c);
  CHECK(pair.forward * pair.backward == Scalar(2));
  // forward = sqrt(P * rho), backward = sqrt(P / rho): their ratio is rho.
  Scalar ratio = pair.forward / pair.backward;
  CHECK((ratio == Scalar(4) || ratio == Scalar(make_rational(1, 4))));

  CartanMatrix m = g.materialize();
  REQUIRE(m.validate().empty());
  CHECK(m.all_exact());  // sqrt(1*4) and sqrt(1/4) both stay in the field
  CHECK(edge_product(m, u, v) == Scalar(1));
  GaugedCartan round = GaugedCartan::from_labels(label_cycle({3, 3, 3, 4}));
  round.set_ratio(u, v, Scalar(4));
  CHECK(equivalent(m, round.materialize()));
}

TEST_CASE("gauged minors match cofactor expansion") {
  GaugedCartan g = GaugedCartan::from_labels(label_cycle({3, 3, 3, 4}));
  auto extra = g.non_forest_edges();
  REQUIRE(extra.size() == 1);
  auto [u, v] = extra[0];

  for (const Scalar& rho : {Scalar(1), Scalar(2), Scalar(4), Scalar(make_rational(1, 2))}) {
    g.set_ratio(u, v, rho);
    CartanMatrix m = g.materialize();
    REQUIRE(m.all_exact());
    std::vector<std::vector<int>> subsets = {{0}, {0, 1}, {1, 3}, {0, 1, 2}, {0, 2, 3}, {0, 1, 2, 3}};
    for (const auto& s : subsets) {
      CAPTURE(rho.str());
      CHECK(g.principal_minor(s) == det_oracle(m, s));
    }
    CHECK(g.nonsingular() == !det_oracle(m, {0, 1, 2, 3}).is_zero());
  }
}

TEST_CASE("gauged perron matches the entrywise trichotomy") {
  struct Case {
    CoxeterMatrix labels;
    PerronType expect;
  };
  std::vector<Case> cases = {
      {label_path({3, 3}), PerronType::Positive},
      {label_path({3, 4}), PerronType::Positive},
      {label_cycle({3, 3, 3}), PerronType::Zero},
      {label_path({4, 3, 4}), PerronType::Zero},
      {label_cycle({3, 3, 3, 4}), PerronType::Negative},
  };
  for (const auto& c : cases) {
    GaugedCartan g = GaugedCartan::from_labels(c.labels);
    CHECK(g.perron() == c.expect);
    PerronReport direct = perron_type(g.materialize());
    CHECK(direct.type == c.expect);
  }
  CHECK_FALSE(GaugedCartan::from_labels(label_cycle({3, 3, 3})).nonsingular());
  CHECK(GaugedCartan::from_labels(label_cycle({3, 3, 3, 4})).nonsingular());
}

TEST_CASE("cosine matrix rejects infinite labels") {
  CoxeterMatrix m(gen_names(2));
  m.set_label(0, 1, kInfLabel);
  CHECK_THROWS_AS(cosine_matrix(m), InfiniteLabelError);
}
