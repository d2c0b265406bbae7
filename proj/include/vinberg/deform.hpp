#ifndef VINBERG_DEFORM_HPP
#define VINBERG_DEFORM_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vinberg/cartan.hpp"
#include "vinberg/polytope.hpp"

namespace vinberg {

/** Laurent polynomial in one bending variable E. */
class EPoly {
 public:
  EPoly() = default;
  explicit EPoly(const Scalar& constant) { add_term(0, constant); }
  static EPoly monomial(int power, const Scalar& coeff) {
    EPoly p;
    p.add_term(power, coeff);
    return p;
  }

  const std::map<int, Scalar>& terms() const { return terms_; }

  /** Value at E = e; negative powers require e != 0. */
  Scalar eval(const Scalar& e) const;

  friend EPoly operator+(const EPoly& a, const EPoly& b);
  friend EPoly operator*(const EPoly& a, const EPoly& b);

  std::string str() const;

 private:
  void add_term(int power, const Scalar& coeff);
  std::map<int, Scalar> terms_;  // power -> coefficient, zero coefficients dropped
};

/**
 * Shape taxonomy of a leaf's label diagram on its simplex core, ordered by
 * how the chart circuits are chosen. Triangle is the 2-dimensional core;
 * the four-node cases split by their right-angle pattern; higher cores are
 * recognized by graph shape with Generic as the spanning-forest fallback.
 * Glued marks a chart with more than one leaf.
 */
enum class ChartCase {
  Triangle,
  NoRightAngle,
  OneRightAngle,
  PanShape,
  CycleShape,
  K23Shape,
  Rigid,
  Generic,
  Glued,
};

std::string to_string(ChartCase c);

/** Directed circuit through core positions of one leaf, with facet names alongside. */
struct ChartCircuit {
  std::vector<int> nodes;          // positions into LeafChart::core
  std::vector<std::string> names;  // facet names, same order
};

/** Declared relation prod_i ratio(circuit_{factors[i].first})^{factors[i].second} = 1. */
struct ChartConstraint {
  std::vector<std::pair<int, int>> factors;  // (circuit index, exponent)
};

struct LeafChart {
  std::shared_ptr<const LabeledPolytope> piece;
  ChartCase shape;
  std::vector<int> core;  // piece facet indices, ascending, size d+1
  std::vector<int> cuts;  // piece facet indices of truncation facets
  std::vector<ChartCircuit> circuits;
  std::vector<ChartConstraint> constraints;
  // Cuts whose link is an affine cycle: the circuit's ratio must stay != 1.
  std::vector<std::pair<int, ChartCircuit>> affine_conditions;  // (cut facet index, link cycle)
  int dimension = 0;  // circuits minus constraints = cycle rank of the core diagram
};

struct EdgeChart {
  int leaf_a = 0, leaf_b = 0;
  std::vector<std::string> delta;  // gluing circuit facet names, tree-edge order
  // Simple cycles of the circuit subdiagram, one orientation per cycle fixed
  // by names so both sides list the same geometric circuit.
  std::vector<ChartCircuit> shared_a, shared_b;  // local to leaf_a / leaf_b cores
  bool tree_type = false;                        // circuit subdiagram has no cycle
};

/**
 * Multiplicative coordinate chart on the deformation space of a labeled
 * truncation polytope: per leaf one coordinate per chart circuit (its
 * cyclic-product ratio), per gluing edge one bending coordinate, with the
 * declared constraints and the edge compatibility conditions cutting the
 * product down to `dimension` degrees of freedom.
 */
struct CellChart {
  std::shared_ptr<const LabeledPolytope> polytope;
  ChartCase shape;  // single leaf's case, or Glued
  std::vector<LeafChart> leaves;
  std::vector<EdgeChart> edges;
  int dimension = 0;  // always equals e_plus - d
  int e_plus = 0;
  int d = 0;
};

/**
 * Builds the chart. Dimensions above 9 have empty deformation spaces
 * (EmptyCellError), as do leaves with non-loxodromizable cores or cut links
 * that are neither compact-simplex nor affine-cycle type. Polytopes outside
 * the supported family (not truncation-certified, reducible, not 2-perfect,
 * non-simplex leaves) raise UnsupportedShapeError.
 */
CellChart cell_chart(const LabeledPolytope& g);

/** One leaf of a deformation point: the gauged core Cartan data. */
struct LeafState {
  std::shared_ptr<const LabeledPolytope> piece;
  std::vector<int> core;
  std::vector<int> cuts;
  GaugedCartan cartan;  // nodes = core positions
};

struct EdgeState {
  int leaf_a = 0, leaf_b = 0;
  std::vector<std::string> delta;
  Scalar bend;  // multiplicative bending parameter E > 0
};

struct DeformationPoint {
  std::shared_ptr<const LabeledPolytope> polytope;
  std::vector<LeafState> leaves;
  std::vector<EdgeState> edges;
  int d = 0;
};

/** Chart coordinates: one ratio per leaf circuit, one bend per edge. */
struct ChartValues {
  std::vector<std::vector<Scalar>> leaf_ratios;
  std::vector<Scalar> edge_bends;
};

/**
 * Point of the deformation space from chart coordinates. Validates the
 * declared constraints and edge compatibilities (ConstraintViolatedError),
 * the affine-cut nondegeneracy (TruncationDegenerateError), and that every
 * leaf core is of negative type and nonsingular (NotLoxodromicError).
 * Ratios with roots outside the scalar field fall back to a fixed-tolerance
 * floating Perron test rather than an exact one.
 */
DeformationPoint point_from_coordinates(const CellChart& chart, const ChartValues& values);

/** Chart coordinates of a point (leaf order must match the chart). */
ChartValues coordinates_of(const CellChart& chart, const DeformationPoint& pt);

/**
 * Cartan matrix of one leaf piece: materialized core entries plus the derived
 * truncation rows. A cut over core vertex v with opposite facet `opp` couples
 * only to opp (and other cuts), with pair product 2 det A / det A_{core - opp}.
 */
CartanMatrix leaf_local_matrix(const LeafState& leaf);

/**
 * Cartan matrix of the whole polytope at the point: leaf matrices are placed
 * in a common frame, gluing each piece to its neighbour across the interface
 * circuit with the bending parameter E scaling the identified truncation
 * walls. Facets glued away are dropped; every surviving facet keeps one row.
 * Entries across a gluing edge depend on that edge's E (Laurent of degree 1),
 * entirely within a leaf they do not.
 */
CartanMatrix assemble(const DeformationPoint& pt);

struct TruncatabilityReport {
  bool truncatable = false;
  std::string reason;
};

/**
 * Whether the given leaf vertex can be truncated at this point: yes for a
 * compact-simplex (Lanner) link, point-dependent for an affine-cycle link
 * (needs circuit ratio != 1), no otherwise.
 */
TruncatabilityReport truncatability(const DeformationPoint& pt, int leaf,
                                    const std::vector<std::string>& vertex_names);

struct CutResult {
  DeformationPoint left, right;
  // Ratio of the least shared circuit of the severed interface (1 for tree-type):
  // the two halves re-glue iff their values agree.
  Scalar compatibility;
};

/**
 * Severs one gluing edge, named by its circuit facets; the bending parameter
 * is forgotten and each side becomes a standalone point on its split piece.
 * Only stored gluing edges can be cut (UnsupportedShapeError otherwise;
 * NotEssentialError / NotPrismaticError when the names do not even form an
 * essential circuit).
 */
CutResult cut(const DeformationPoint& pt, const std::vector<std::string>& delta_names);

/**
 * Fiber data of one gluing edge: along the probe circuit the forward cyclic
 * product is N(E) = k1 (x1 + y1 E) and the backward one D(E) = k2 (x2 + y2/E)
 * with x1, y1, x2, y2 > 0 and sign k1 = sign k2. Integral points on the fiber
 * must make both values integers.
 */
struct BendingFiberData {
  Scalar k1, x1, y1;
  Scalar k2, x2, y2;
  std::vector<std::string> probe;  // circuit facet names, forward order
  int d = 0;

  EPoly n_poly() const;
  EPoly d_poly() const;
};

/**
 * Derives the fiber data from the probe circuit of the edge: the shortest
 * circuit leaving the interface on both sides with all entries nonzero, ties
 * broken by name sequence (NoProbeCircuitError when none exists). Invariant
 * violations raise ValidationError naming the offending quantity.
 */
BendingFiberData bending_data(const DeformationPoint& pt, int edge);

/** Multiplies the edge's bending parameter by factor > 0 (NonPositiveBendError). */
DeformationPoint bend(const DeformationPoint& pt, int edge, const Scalar& factor);

/** bend with the additive parameter u: factor = exp((d+1) u), approximate. */
DeformationPoint bend_log(const DeformationPoint& pt, int edge, double u);

}  // namespace vinberg

#endif  // VINBERG_DEFORM_HPP
