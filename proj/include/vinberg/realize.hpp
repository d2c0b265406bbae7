#ifndef VINBERG_REALIZE_HPP
#define VINBERG_REALIZE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vinberg/cartan.hpp"
#include "vinberg/coxeter.hpp"
#include "vinberg/linalg.hpp"
#include "vinberg/polytope.hpp"

namespace vinberg {

/**
 * Reflection data factored from a Cartan matrix: row s of `alpha` is the wall
 * functional of facet s, column t of `polar` its polar vector, and
 * alpha_s(b_t) = A_st. The frame is one rank factorization among many; only
 * pairings, traces and other conjugation invariants are canonical, raw
 * coordinates are not.
 */
struct VinbergRealization {
  int d = 0;           // polytope dimension; the ambient space has dimension d+1
  bool exact = false;  // factorization carried out in exact field arithmetic
  std::vector<std::string> names;
  ScalarMat alpha;  // N x (d+1), row per facet
  ScalarMat polar;  // (d+1) x N, column per facet

  Scalar pairing(int s, int t) const;
  /** Reflection Id - b_s alpha_s; involution with trace d - 1 and det -1. */
  ScalarMat sigma(int s) const;
  std::vector<std::vector<double>> sigma_approx(int s) const;
  /** max |alpha_s(b_t) - A_st| over all pairs. */
  double reproduction_error(const CartanMatrix& a) const;
};

struct RealizeOptions {
  int expected_dim = -1;           // require rank == expected_dim + 1 when >= 0
  double reproduction_tol = 1e-10; // float-path bound on the readback error
};

/**
 * Factors a valid, irreducible, negative-type Cartan matrix of rank d+1 into
 * reflection data in d+1 coordinates. Exact arithmetic whenever every entry is
 * exact (the readback then reproduces A exactly), partial-pivot float
 * elimination otherwise (ToleranceExceededError past reproduction_tol).
 * ReducibleError / NotLoxodromicError / RankDeficientError on bad input.
 */
VinbergRealization realize(const CartanMatrix& a, const RealizeOptions& opts = {});

struct RelationEntry {
  int s = 0, t = 0;
  int label = 0;      // kInfLabel for unbounded pairs
  std::string kind;   // "finite", "parabolic", "loxodromic"
  double deviation = 0.0;
};

struct RelationReport {
  double max_deviation = 0.0;
  std::vector<RelationEntry> entries;
};

/**
 * Checks the group relations pair by pair: finite labels by raising the
 * product of the two reflections to the label power and comparing with the
 * identity, infinite labels by the trace trichotomy of the invariant 2-plane,
 * whose product must be parabolic (pairing product 4) or loxodromic (above 4).
 * ToleranceExceededError names the first offending pair.
 */
RelationReport verify_relations(const VinbergRealization& r, const CoxeterMatrix& m,
                                double tol = 1e-8);

struct EdgeCrossing {
  int other_vertex = 0;  // index into the polytope's vertex list
  Scalar tau;            // crossing parameter, strictly inside (0, 1)
};

/**
 * The truncating hyperplane at a vertex: the span of the polars of its facets,
 * stored as the covector vanishing on them, plus where each incident edge
 * crosses it.
 */
struct TruncationData {
  int vertex = 0;
  ScalarVec plane;
  std::vector<EdgeCrossing> edges;
};

/**
 * Geometry of truncating vertex v: the polars of its d facets must span a
 * hyperplane (NotAHyperplaneError), and every edge from v must cross that
 * hyperplane strictly between its endpoints (EdgeIntersectionOutsideError,
 * naming the edge).
 */
TruncationData truncation_geometry(const VinbergRealization& r, const LabeledPolytope& p,
                                   int vertex);

/** Covector of the hyperplane spanned by the circuit's polars (NotAHyperplaneError). */
ScalarVec circuit_plane(const VinbergRealization& r, const std::vector<int>& delta);

struct InteriorProbe {
  bool ok = false;
  ScalarVec point;
  std::vector<int> violations;  // facets whose functional fails to be negative
};

/**
 * Sanity probe for nonemptiness: evaluates every wall functional at one
 * candidate interior point (the negated sum of a dual basis). All values
 * negative certifies an interior point; failure only flags the facets.
 */
InteriorProbe interior_probe(const VinbergRealization& r);

/** Traces of pseudo-random words in the generators, deterministic under seed. */
std::vector<double> word_traces(const VinbergRealization& r, int count, int max_len,
                                std::uint64_t seed);

}  // namespace vinberg

#endif  // VINBERG_REALIZE_HPP
