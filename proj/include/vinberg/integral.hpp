#ifndef VINBERG_INTEGRAL_HPP
#define VINBERG_INTEGRAL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vinberg/deform.hpp"

namespace vinberg {

/** One verified cyclic product: an adjacent pair or a directed simple cycle. */
struct CertificateEntry {
  std::vector<std::string> names;  // the pair, or the cycle's facets in order
  Scalar value;                    // exact integer
  bool pair = false;               // a_st * a_ts rather than a directed cycle
};

/**
 * Witness that a point is integral: every pair product and every directed
 * simple-cycle product of its Cartan matrix, each an exact integer. The note
 * records why this finite list settles all cyclic products.
 */
struct IntegralCertificate {
  std::vector<CertificateEntry> entries;
  std::string note;
};

struct IntegralFailure {
  std::vector<std::string> names;  // the offending pair or cycle
  Scalar value;
  bool pair = false;
};

/** Result of an integrality check: certificate or first failing product. */
struct IntegralOutcome {
  std::optional<IntegralCertificate> certificate;
  std::optional<IntegralFailure> failure;
  bool ok() const { return certificate.has_value(); }
};

struct FeasibilityReport {
  bool feasible = true;
  std::string reason;  // names the offending ridge when infeasible
};

/** A polytope can carry integral points only if every ridge label is in {2,3,4,6}. */
FeasibilityReport integral_feasible(const LabeledPolytope& g);

/**
 * Decides integrality of the point's representation: every edge pair product
 * and every directed simple-cycle product of the assembled Cartan matrix must
 * be an exact integer; closed walks reduce to these. Requires every leaf core
 * irreducible and large (NotLargeIrreducibleError) and exact data
 * (ApproxDataError) — approximation never decides integrality.
 */
IntegralOutcome integral_check(const DeformationPoint& pt);

/** integral_check ignoring products that touch the named facets. */
IntegralOutcome integral_check_excluding(const DeformationPoint& pt,
                                         const std::vector<std::string>& excluded);

/**
 * Integer values a circuit's two orientations can take: with M the product of
 * the edge products (each in {1,2,3}, BadEdgeProductError otherwise) and k the
 * circuit length, the pairs ((-1)^k t, (-1)^k M/t) over positive divisors t.
 */
std::vector<std::pair<long, long>> divisor_pairs(const std::vector<long>& edge_products, int k);

enum class ShortcutKind { AffineTruncatedVertex, AffineEssentialCircuit };
std::string to_string(ShortcutKind k);

struct Shortcut {
  ShortcutKind kind;
  std::string reason;
};

/**
 * Sound nonexistence pre-filters: a truncated vertex whose link is an affine
 * cycle, or a gluing interface of affine-cycle type, forces the circuit pair
 * to (+-1, +-1) and the truncation to degenerate, so no integral point exists.
 * Not assumed complete.
 */
std::optional<Shortcut> nonexistence_shortcuts(const LabeledPolytope& g);

struct Provenance {
  std::vector<std::string> trail;  // one line per divisor pair / fiber integer
};

struct IntegralPoint {
  DeformationPoint point;
  ChartValues values;  // coordinates on cell_chart(*point.polytope)
  IntegralCertificate certificate;
  Provenance provenance;
};

struct FiberCandidate {
  long n = 0;       // integer value taken by the forward probe product
  Scalar bend;      // the exact bending parameter realizing it
  Scalar backward;  // value of the backward probe product there
  IntegralCertificate certificate;
};

/**
 * All integral points along one edge's bending fiber. The forward probe
 * product K1(x1 + y1 E) must take an integer value n; each such n pins E
 * exactly, and candidates survive only while the backward product K2(x2 +
 * y2/E) can still reach an integer, which bounds the sweep: every survivor
 * has E in [band_low, band_high]. Exact data required (ApproxDataError).
 */
struct FiberSweep {
  std::vector<FiberCandidate> survivors;
  Scalar band_low, band_high;
  std::vector<std::string> probe;
};

FiberSweep fiber_sweep(const DeformationPoint& pt, int edge);
FiberSweep fiber_sweep_excluding(const DeformationPoint& pt, int edge,
                                 const std::vector<std::string>& excluded);

struct EnumerateOptions {
  bool quotient_symmetry = false;  // report one point per label-symmetry orbit
  int parallel = 1;                // worker count for sides and fiber sweeps
};

/**
 * Every integral point of the deformation space, by recursion over the gluing
 * tree: leaves enumerate divisor-pair candidates per chart circuit, gluing
 * edges match compatible side points and sweep the bending fiber. Empty when
 * the labels are infeasible, a nonexistence shortcut applies, or the space is
 * empty. Deterministically ordered; finite by construction.
 */
std::vector<IntegralPoint> enumerate_integral(const LabeledPolytope& g,
                                              const EnumerateOptions& opts = {});

/**
 * Independent oracle: no splitting, no recursion, no side matching. Divisor
 * pairs are swept over all leaf circuits jointly, each edge's fiber integers
 * are found from a probe circuit confined to the edge's two adjacent leaves
 * (whose product provably depends on that bend alone, verified by evaluation),
 * and every full assignment is integrality-checked on the whole matrix.
 */
std::vector<IntegralPoint> enumerate_direct(const LabeledPolytope& g,
                                            const EnumerateOptions& opts = {});

/** Integral points of a single-leaf chart (ValidationError if glued). */
std::vector<IntegralPoint> enumerate_leaf(const CellChart& chart);

/** Label-preserving automorphisms of the facet lattice, as index permutations. */
std::vector<std::vector<int>> label_symmetries(const LabeledPolytope& g);

}  // namespace vinberg

#endif  // VINBERG_INTEGRAL_HPP
