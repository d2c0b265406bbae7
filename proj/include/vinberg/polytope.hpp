#ifndef VINBERG_POLYTOPE_HPP
#define VINBERG_POLYTOPE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vinberg/coxeter.hpp"

namespace vinberg {

class LabeledPolytope;

/** Provenance record; lattices are computed eagerly, this is for reporting. */
struct Construction {
  enum class Kind { Simplex, Truncate, Glue, Explicit, SplitPiece };
  Kind kind = Kind::Explicit;
  std::shared_ptr<const Construction> left, right;
  std::vector<std::string> vertex;   // truncated vertex (Truncate), left vertex (Glue), circuit (SplitPiece)
  std::vector<std::string> vertex2;  // right vertex (Glue)
};

struct Perfection {
  bool perfect;      // every vertex stabilizer spherical
  bool two_perfect;  // every edge stabilizer spherical
};

enum class CircuitClass { Useless, NonEssential, Essential };
std::string to_string(CircuitClass c);

struct PrismaticCircuit {
  std::vector<int> delta;  // sorted facet indices, |delta| = d
  CircuitClass cls;
  GroupClass group_class;  // class of the circuit's standard subgroup
};

struct VertexLink;

enum class LeafKind { Simplex, TruncatedSimplex, Other };
std::string to_string(LeafKind k);

struct GluingTree {
  struct Node {
    std::shared_ptr<const LabeledPolytope> piece;
    LeafKind kind;
  };
  struct Edge {
    int leaf_a, leaf_b;
    std::vector<std::string> delta;  // circuit facet names
  };
  std::vector<Node> leaves;
  std::vector<Edge> edges;  // one per essential circuit consumed
  bool dimension_bound_exceeded = false;  // d > 9: deformation space empty
};

/** Simplex core + truncation facets of a truncated-simplex lattice. */
struct TruncatedSimplexShape {
  std::vector<int> core;  // d+1 pairwise adjacent facets
  std::vector<int> cuts;  // truncation facets, possibly empty
};

/**
 * Labeled combinatorial polytope: named facets, a label >= 2 (or oo) on every
 * ridge, and the face lattice held as vertices (each the sorted set of its d
 * incident facets; the polytope must be simple) plus explicit edges. Only
 * lattices reachable by simplex / truncate / glue are first-class; explicit
 * lattices (the labeled cube) support links and truncation but not the
 * circuit machinery. Immutable after construction.
 */
class LabeledPolytope {
 public:
  static LabeledPolytope simplex(int d, const std::vector<std::string>& names,
                                 const std::map<std::pair<int, int>, int>& labels);

  /** Explicit lattice (validated); not certified for circuit operations. */
  static LabeledPolytope from_lattice(int d, const std::vector<std::string>& names,
                                      const std::map<std::pair<int, int>, int>& ridge_labels,
                                      std::vector<std::vector<int>> vertices);

  int dim() const { return d_; }
  int facet_count() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& facet_names() const { return names_; }
  int facet_index(const std::string& name) const;

  bool adjacent(int i, int j) const;
  /** Ridge label of an adjacent pair; kInfLabel encodes oo. */
  int label(int i, int j) const;
  const std::map<std::pair<int, int>, int>& ridge_labels() const { return labels_; }

  const std::vector<std::vector<int>>& vertices() const { return vertices_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int vertex_index(const std::vector<std::string>& facet_names) const;

  /** Number of ridges with label != 2. */
  int e_plus() const;

  /** Facets introduced by truncations or splits. */
  std::vector<int> truncation_facets() const;
  bool is_truncation_facet(int i) const { return cut_flag_[i] != 0; }

  /** Built by simplex/truncate/glue/split only (explicit lattices are not). */
  bool is_truncation_polytope() const { return truncation_certified_; }

  const std::shared_ptr<const Construction>& construction() const { return construction_; }

  /** Coxeter matrix of the polytope group: non-adjacent pairs get oo. */
  CoxeterMatrix coxeter_matrix() const;

  Perfection perfection() const;

  VertexLink vertex_link(int v) const;

  LabeledPolytope truncate(int v) const;
  LabeledPolytope truncate(const std::vector<std::string>& vertex_names) const;

  /** Truncates both vertices and glues the truncation facets via phi (name map on link facets). */
  static LabeledPolytope glue(const LabeledPolytope& g1, const std::vector<std::string>& v1,
                              const LabeledPolytope& g2, const std::vector<std::string>& v2,
                              const std::map<std::string, std::string>& phi);

  /** Glues two already-truncated pieces along the named truncation facets. */
  static LabeledPolytope glue_at(const LabeledPolytope& a, const std::string& cut_a,
                                 const LabeledPolytope& b, const std::string& cut_b,
                                 const std::map<std::string, std::string>& phi);

  std::vector<PrismaticCircuit> prismatic_circuits() const;

  std::pair<LabeledPolytope, LabeledPolytope> split(const std::vector<int>& delta) const;

  GluingTree gluing_tree() const;

  /** Simplex-plus-cuts decomposition when the lattice is a (multiply) truncated simplex. */
  std::optional<TruncatedSimplexShape> truncated_simplex_shape() const;

  /** Exact lattice match under the given facet-name correspondence. */
  bool matches_under(const LabeledPolytope& other, const std::map<std::string, std::string>& name_map) const;

  /** Lattice sanity: simplicity, label coverage, edge consistency. Empty = ok. */
  std::vector<std::string> check_lattice() const;

 private:
  LabeledPolytope() = default;

  // Candidate test: |delta| = d, pairwise adjacent, not a vertex, and removing
  // delta leaves exactly two sides with no vertex straddling them.
  struct SplitSides {
    std::vector<int> side1, side2;  // non-delta facets
  };
  std::optional<SplitSides> circuit_sides(const std::vector<int>& delta) const;
  LabeledPolytope split_piece(const std::vector<int>& delta, const std::vector<int>& side) const;
  CircuitClass classify_circuit(const std::vector<int>& delta, const SplitSides& sides) const;
  void derive_edges();

  int d_ = 0;
  std::vector<std::string> names_;
  std::map<std::pair<int, int>, int> labels_;  // adjacent pairs i<j only
  std::vector<std::vector<int>> vertices_;     // sorted facet index sets of size d
  std::vector<std::pair<int, int>> edges_;     // vertex index pairs
  std::vector<char> cut_flag_;
  bool truncation_certified_ = false;
  std::shared_ptr<const Construction> construction_;
};

struct VertexLink {
  LabeledPolytope link;     // (d-1)-dim labeled simplex on the incident facets
  std::vector<int> facets;  // link facet index -> parent facet index
};

}  // namespace vinberg

#endif
