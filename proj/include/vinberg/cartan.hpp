#ifndef VINBERG_CARTAN_HPP
#define VINBERG_CARTAN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vinberg/coxeter.hpp"

namespace vinberg {

/**
 * Directed circuit in an adjacency graph, stored canonically: the smallest
 * node first, and of the two rotations/orientations starting there, the
 * lexicographically smaller node sequence. Length 2 means a non-ridge pair
 * (entry product >= 4) traversed both ways.
 */
struct Circuit {
  std::vector<int> nodes;
  int length() const { return static_cast<int>(nodes.size()); }
  friend bool operator==(const Circuit& a, const Circuit& b) { return a.nodes == b.nodes; }
  friend bool operator<(const Circuit& a, const Circuit& b) {
    if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
    return a.nodes < b.nodes;
  }
};

Circuit canonical_circuit(std::vector<int> nodes);

/** Reversed orientation, canonical form. */
std::vector<int> reversed_cycle(const std::vector<int>& nodes);

/**
 * Square matrix satisfying (when valid): diagonal 2, off-diagonal entries <= 0
 * with a_ij = 0 iff a_ji = 0, and every nonzero pair product either equal to
 * 4cos^2(pi/m) for an integer label m >= 3 or at least 4.
 */
class CartanMatrix {
 public:
  CartanMatrix() : n_(0) {}
  explicit CartanMatrix(std::vector<std::string> names);

  int size() const { return n_; }
  const std::vector<std::string>& names() const { return names_; }
  const Scalar& at(int i, int j) const { return a_[i * n_ + j]; }
  void set(int i, int j, Scalar v);

  bool is_adjacent(int i, int j) const;
  std::vector<std::pair<int, int>> adjacency_edges() const;
  std::vector<std::vector<int>> components() const;
  bool all_exact() const;

  /** Violated axioms as data; empty means valid. */
  std::vector<std::string> validate() const;

  CartanMatrix restrict_to(const std::vector<int>& subset) const;

 private:
  int n_;
  std::vector<std::string> names_;
  std::vector<Scalar> a_;
};

/** Product of entries along the directed circuit (wrapping around). */
Scalar cyclic_product(const CartanMatrix& a, const std::vector<int>& cycle);

/** a_ij * a_ji. */
Scalar edge_product(const CartanMatrix& a, int i, int j);

/** Forward and reverse cyclic products of a circuit. */
struct RatioPair {
  Scalar forward, backward;
  double log_ratio() const;
};

RatioPair normalized_cyclic_product(const CartanMatrix& a, const Circuit& c);

inline constexpr long kCircuitGuard = 1'000'000;

/**
 * Relevant circuits of the adjacency graph: all simple cycles of length >= 3
 * plus every adjacent pair whose entry product is >= 4 (a non-ridge pair) as a
 * 2-circuit. Enumeration is an anchored depth-first walk (each cycle is found
 * once, at its smallest node, with orientation fixed by the smaller neighbour);
 * exceeding the guard bound raises TooManyCircuitsError.
 */
std::vector<Circuit> relevant_circuits(const CartanMatrix& a);

/** Simple cycles of length >= 3 only (no product-based 2-circuits). */
std::vector<Circuit> simple_cycles(const CartanMatrix& a);

enum class PerronType { Positive, Zero, Negative };

std::string to_string(PerronType t);

struct PerronReport {
  PerronType type;
  int rank;       // exact rank over the field
  double lambda;  // approximate distinguished eigenvalue; its sign is certified by `type`
};

/**
 * Exact Perron trichotomy for an irreducible valid Cartan matrix A = 2I - M,
 * M >= 0: Positive iff every leading principal minor is positive (the
 * nonsingular M-matrix criterion), Zero iff minors 1..n-1 are positive and
 * det A = 0 (irreducibility makes every proper principal submatrix a
 * nonsingular M-matrix), Negative otherwise. Works unsymmetrized, so
 * orientation-asymmetric cyclic products need no special handling.
 * Requires exact entries (ApproxDataError otherwise) and irreducibility
 * (ReducibleError otherwise).
 */
PerronReport perron_type(const CartanMatrix& a);

/** Exact rank via Gaussian elimination with full pivoting (exact entries). */
int exact_rank(const CartanMatrix& a);

/**
 * Equivalence = same labelled polytope data up to positive diagonal conjugation:
 * equal adjacency, equal edge products, and equal cyclic products on every
 * simple cycle. Sufficiency of simple cycles: any closed walk's product ratio
 * is a product of simple-cycle ratios, because a circulation decomposes into
 * simple circulations (peel the walk at its first repeated node; induction on
 * length). Exact on exact entries; a mixed comparison falls back to the fixed
 * tolerance below.
 */
bool equivalent(const CartanMatrix& a, const CartanMatrix& b);

inline constexpr double kEquivalenceTolerance = 1e-9;

/**
 * Diagonal-conjugates A to the gauge where every spanning-forest edge (the
 * lexicographically least forest) is symmetric with entries -sqrt(a_ij a_ji);
 * residual asymmetry sits on non-forest edges only.
 */
CartanMatrix canonical_gauge(const CartanMatrix& a);

/** D A D^{-1} for a positive diagonal D. */
CartanMatrix diagonal_conjugate(const CartanMatrix& a, const std::vector<Scalar>& d);

/** Cosine matrix of a finite-label Coxeter matrix (InfiniteLabelError on oo). */
CartanMatrix cosine_matrix(const CoxeterMatrix& m);

/**
 * Gauge-invariant representation of a Cartan matrix class: one positive edge
 * product per adjacent pair plus one asymmetry ratio rho = a_ij/a_ji per
 * non-forest edge (forest edges are symmetric, ratio 1). Cyclic products,
 * principal minors (via a cycle-cover subset recursion) and hence the Perron
 * test are exact in the stored scalars even when materialized entries would
 * need square roots that leave the field.
 */
class GaugedCartan {
 public:
  GaugedCartan() : n_(0) {}

  /** Edge products from ridge labels; every ratio 1. Rejects oo labels. */
  static GaugedCartan from_labels(const CoxeterMatrix& labels);

  int size() const { return n_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::pair<int, int>>& forest() const { return tree_; }

  bool is_adjacent(int i, int j) const;
  std::vector<std::pair<int, int>> non_forest_edges() const;
  Scalar product_on(int i, int j) const;

  /** Ratio a_ij/a_ji for the stored (i<j) orientation; forest edges give 1. */
  Scalar ratio_on(int i, int j) const;
  void set_ratio(int i, int j, const Scalar& rho);

  /** Exact directed product along a circuit: (-1)^k sqrt(prod * ratio). */
  Scalar directed_cycle_product(const std::vector<int>& cycle) const;
  RatioPair circuit_pair(const Circuit& c) const;
  /** prod of edge products along the circuit (the invariant M_C). */
  Scalar cycle_edge_product(const std::vector<int>& cycle) const;
  /** prod of rho^{+-1} along the directed circuit. */
  Scalar cycle_ratio(const std::vector<int>& cycle) const;

  /** det of the principal submatrix on `subset`, exact via cycle covers. */
  Scalar principal_minor(const std::vector<int>& subset) const;

  /** Perron trichotomy via exact leading minors; requires connectivity. */
  PerronType perron() const;

  /** det != 0, i.e. full rank n. */
  bool nonsingular() const;

  /** Entry matrix in the canonical gauge; entries go Approx where roots leave the field. */
  CartanMatrix materialize() const;

  std::vector<Circuit> simple_cycle_list() const;

 private:
  struct CycleWeight {
    uint32_t mask;
    int min_node;
    Scalar weight;  // -(C + Cbar) over both orientations, for determinants
  };

  void build_cycle_weights() const;
  Scalar minor_rec(uint32_t mask) const;
  bool all_weights_exact() const;

  int n_ = 0;
  std::vector<std::string> names_;
  std::map<std::pair<int, int>, Scalar> product_;  // key i<j
  std::map<std::pair<int, int>, Scalar> ratio_;    // key i<j, non-forest only
  std::vector<std::pair<int, int>> tree_;
  mutable std::optional<std::vector<CycleWeight>> cycles_;
  mutable std::map<uint32_t, Scalar> cache_;
};

}  // namespace vinberg

#endif
