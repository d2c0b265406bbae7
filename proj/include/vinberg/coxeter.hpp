#ifndef VINBERG_COXETER_HPP
#define VINBERG_COXETER_HPP

#include <string>
#include <vector>

#include "vinberg/algebra.hpp"

namespace vinberg {

/** Label value encoding oo. */
inline constexpr int kInfLabel = 0;

inline constexpr int kMaxRank = 12;

/**
 * Symmetric Coxeter matrix over named generators. Diagonal entries are 1;
 * off-diagonal entries are integer labels >= 2, with 0 encoding oo.
 * The diagram has an edge wherever the label differs from 2 (oo included).
 */
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  explicit CoxeterMatrix(std::vector<std::string> names);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;

  int label(int s, int t) const { return m_[s * rank() + t]; }
  void set_label(int s, int t, int value);

  /** Violated axioms as data; empty means valid. */
  std::vector<std::string> validate() const;

  /** Pairs (s, t), s < t, with label != 2 (oo included). */
  std::vector<std::pair<int, int>> diagram_edges() const;

  /** Connected components of the diagram restricted to `subset` (node ids). */
  std::vector<std::vector<int>> components(const std::vector<int>& subset) const;
  std::vector<std::vector<int>> components() const;

  /** Restriction to a generator subset, preserving name order. */
  CoxeterMatrix standard_subgroup(const std::vector<int>& subset) const;

  bool has_infinite_label() const;

  /** Graphviz rendering; labels > 3 are printed, oo as "inf". */
  std::string to_dot() const;

 private:
  std::vector<std::string> names_;
  std::vector<int> m_;
};

enum class GroupClass { Spherical, Affine, Large };

std::string to_string(GroupClass c);

/**
 * Decides the spherical / affine / large trichotomy for the Coxeter group of M.
 *
 * With require_irreducible the diagram must be connected (ReducibleError
 * otherwise). With it off, a reducible input combines componentwise: any large
 * component makes the product large, else any affine component makes it
 * affine, else it is spherical.
 *
 * Exact path (labels in {2,3,4,6,oo}): the inertia of the cosine matrix is
 * computed with exact field arithmetic; oo entries are pinned at -2 and any
 * connected diagram of rank >= 3 containing an oo-edge has a negative
 * 3x3 principal minor, so it is certified Large; the rank-2 oo-edge diagram is
 * the infinite dihedral group, which is affine. A PSD pinned matrix on >= 3
 * nodes would be reported as AmbiguousClassError rather than guessed -- this
 * branch is unreachable for valid inputs and exists as a guard.
 *
 * Interval path (some finite label outside {2,3,4,6}): certified rational
 * enclosures of -2cos(pi/m) feed an interval characteristic polynomial;
 * eigenvalue signs follow from coefficient signs (the matrix is symmetric, so
 * the polynomial is real-rooted). Affine is impossible here: every affine
 * diagram carries labels in {2,3,4,6} only. Precision is doubled adaptively;
 * exhausting the cap raises InconclusiveError.
 */
GroupClass classify(const CoxeterMatrix& m, bool require_irreducible = true);

/** classify on the subgroup spanned by `subset`, allowing reducibility. */
GroupClass classify_subset(const CoxeterMatrix& m, const std::vector<int>& subset);

bool all_components_spherical(const CoxeterMatrix& m, const std::vector<int>& subset);

struct Refinement {
  GroupClass cls;
  bool lanner;        // large and every co-rank-1 standard subgroup spherical
  bool two_lanner;    // large and every co-rank-2 standard subgroup spherical
  bool affine_cycle;  // single cycle, every edge labelled 3 (rank >= 3)
};

Refinement refine(const CoxeterMatrix& m);

bool is_affine_cycle(const CoxeterMatrix& m);

}  // namespace vinberg

#endif
