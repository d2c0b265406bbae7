#include "vinberg/coxeter.hpp"

#include <mpfr.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace vinberg {

CoxeterMatrix::CoxeterMatrix(std::vector<std::string> names) : names_(std::move(names)) {
  int n = rank();
  if (n > kMaxRank)
    throw ValidationError({"rank " + std::to_string(n) + " exceeds the supported maximum " +
                           std::to_string(kMaxRank)});
  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) throw DuplicateNameError(sorted[i]);
  m_.assign(n * n, 2);
  for (int i = 0; i < n; ++i) m_[i * n + i] = 1;
}

int CoxeterMatrix::index_of(const std::string& name) const {
  for (int i = 0; i < rank(); ++i)
    if (names_[i] == name) return i;
  throw Error("unknown generator name: " + name);
}

void CoxeterMatrix::set_label(int s, int t, int value) {
  if (s == t) throw InvalidLabelError("cannot relabel the diagonal");
  if (value != kInfLabel && value < 2)
    throw InvalidLabelError("label must be >= 2 or oo, got " + std::to_string(value));
  m_[s * rank() + t] = value;
  m_[t * rank() + s] = value;
}

std::vector<std::string> CoxeterMatrix::validate() const {
  std::vector<std::string> bad;
  int n = rank();
  for (int i = 0; i < n; ++i)
    if (label(i, i) != 1) bad.push_back("diagonal entry at " + names_[i] + " is not 1");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (label(i, j) != label(j, i))
        bad.push_back("asymmetric pair " + names_[i] + "," + names_[j]);
      int v = label(i, j);
      if (v != kInfLabel && v < 2)
        bad.push_back("label below 2 at " + names_[i] + "," + names_[j]);
    }
  return bad;
}

std::vector<std::pair<int, int>> CoxeterMatrix::diagram_edges() const {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < rank(); ++i)
    for (int j = i + 1; j < rank(); ++j)
      if (label(i, j) != 2) edges.emplace_back(i, j);
  return edges;
}

std::vector<std::vector<int>> CoxeterMatrix::components(const std::vector<int>& subset) const {
  std::vector<int> nodes = subset;
  std::sort(nodes.begin(), nodes.end());
  std::vector<std::vector<int>> result;
  std::vector<bool> seen(rank(), false);
  for (int start : nodes) {
    if (seen[start]) continue;
    std::vector<int> comp, stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w : nodes)
        if (!seen[w] && label(v, w) != 2) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    result.push_back(std::move(comp));
  }
  return result;
}

std::vector<std::vector<int>> CoxeterMatrix::components() const {
  std::vector<int> all(rank());
  std::iota(all.begin(), all.end(), 0);
  return components(all);
}

CoxeterMatrix CoxeterMatrix::standard_subgroup(const std::vector<int>& subset) const {
  std::vector<std::string> names;
  names.reserve(subset.size());
  for (int i : subset) names.push_back(names_[i]);
  CoxeterMatrix sub(names);
  for (size_t a = 0; a < subset.size(); ++a)
    for (size_t b = a + 1; b < subset.size(); ++b)
      sub.set_label(static_cast<int>(a), static_cast<int>(b), label(subset[a], subset[b]));
  return sub;
}

bool CoxeterMatrix::has_infinite_label() const {
  for (auto [i, j] : diagram_edges())
    if (label(i, j) == kInfLabel) return true;
  return false;
}

std::string CoxeterMatrix::to_dot() const {
  std::ostringstream os;
  os << "graph coxeter {\n";
  for (const auto& n : names_) os << "  \"" << n << "\";\n";
  for (auto [i, j] : diagram_edges()) {
    os << "  \"" << names_[i] << "\" -- \"" << names_[j] << "\"";
    int v = label(i, j);
    if (v == kInfLabel)
      os << " [label=\"inf\"]";
    else if (v > 3)
      os << " [label=\"" << v << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_string(GroupClass c) {
  switch (c) {
    case GroupClass::Spherical: return "spherical";
    case GroupClass::Affine: return "affine";
    case GroupClass::Large: return "large";
  }
  return "?";
}

namespace {

bool exact_label(int v) {
  return v == kInfLabel || v == 2 || v == 3 || v == 4 || v == 6;
}

// ---- exact inertia of a symmetric AlgScalar matrix --------------------------
//
// Symmetric elimination with 1x1 pivots, falling back to a hyperbolic 2x2
// block when the active diagonal vanishes; Sylvester's law keeps the counts.

struct Inertia {
  int pos = 0, neg = 0, zero = 0;
};

Inertia symmetric_inertia(std::vector<std::vector<AlgScalar>> w) {
  Inertia out;
  std::vector<int> live(w.size());
  std::iota(live.begin(), live.end(), 0);
  while (!live.empty()) {
    int pivot = -1;
    for (int idx : live)
      if (!w[idx][idx].is_zero()) {
        pivot = idx;
        break;
      }
    if (pivot >= 0) {
      const AlgScalar piv = w[pivot][pivot];
      (piv.sign() > 0 ? out.pos : out.neg)++;
      live.erase(std::find(live.begin(), live.end(), pivot));
      for (int r : live)
        for (int s : live) w[r][s] = w[r][s] - w[r][pivot] * w[pivot][s] / piv;
      continue;
    }
    // all-zero active diagonal: either the block is zero or indefinite
    int bi = -1, bj = -1;
    for (size_t a = 0; a < live.size() && bi < 0; ++a)
      for (size_t b = a + 1; b < live.size(); ++b)
        if (!w[live[a]][live[b]].is_zero()) {
          bi = live[a];
          bj = live[b];
          break;
        }
    if (bi < 0) {
      out.zero += static_cast<int>(live.size());
      break;
    }
    const AlgScalar v = w[bi][bj];
    out.pos++;
    out.neg++;
    live.erase(std::find(live.begin(), live.end(), bi));
    live.erase(std::find(live.begin(), live.end(), bj));
    for (int r : live)
      for (int s : live)
        w[r][s] = w[r][s] - (w[r][bi] * w[bj][s] + w[r][bj] * w[bi][s]) / v;
  }
  return out;
}

// ---- interval path -----------------------------------------------------------

struct RatInterval {
  Rational lo, hi;
  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}
  explicit RatInterval(const Rational& v) : lo(v), hi(v) {}

  RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
  RatInterval operator*(const RatInterval& o) const {
    Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
  }
  RatInterval operator/(const Rational& q) const {
    if (q > 0) return {lo / q, hi / q};
    if (q < 0) return {hi / q, lo / q};
    throw DivisionByZeroError();
  }
  int certified_sign() const {  // 0 = straddles
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    return 0;
  }
};

Rational mpfr_to_rational(mpfr_t x) {
  if (mpfr_zero_p(x)) return Rational(0);
  mpz_class man;
  mpfr_exp_t e = mpfr_get_z_2exp(man.get_mpz_t(), x);
  Rational r(man);
  if (e >= 0) {
    mpz_class f;
    mpz_ui_pow_ui(f.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return r * Rational(f);
  }
  mpz_class f;
  mpz_ui_pow_ui(f.get_mpz_t(), 2, static_cast<unsigned long>(-e));
  return r / Rational(f);
}

/** Certified enclosure of -2cos(pi/m) at `prec` bits, m >= 2 finite. */
RatInterval cos_entry_interval(int m, mpfr_prec_t prec) {
  mpfr_t pi_lo, pi_hi, arg_lo, arg_hi, c_lo, c_hi;
  mpfr_inits2(prec, pi_lo, pi_hi, arg_lo, arg_hi, c_lo, c_hi, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(pi_lo, MPFR_RNDD);
  mpfr_const_pi(pi_hi, MPFR_RNDU);
  mpfr_div_ui(arg_lo, pi_lo, static_cast<unsigned long>(m), MPFR_RNDD);
  mpfr_div_ui(arg_hi, pi_hi, static_cast<unsigned long>(m), MPFR_RNDU);
  // cos decreases on [0, pi], so the upper arg gives the lower cos bound
  mpfr_cos(c_lo, arg_hi, MPFR_RNDD);
  mpfr_cos(c_hi, arg_lo, MPFR_RNDU);
  Rational cl = mpfr_to_rational(c_lo), ch = mpfr_to_rational(c_hi);
  mpfr_clears(pi_lo, pi_hi, arg_lo, arg_hi, c_lo, c_hi, static_cast<mpfr_ptr>(nullptr));
  return {cl * Rational(-2), ch * Rational(-2)};  // negate: [-2ch, -2cl] reordered below
}

RatInterval normalize(RatInterval v) {
  if (v.lo > v.hi) std::swap(v.lo, v.hi);
  return v;
}

/**
 * Characteristic polynomial coefficients of a symmetric interval matrix via
 * Faddeev-LeVerrier: p(x) = x^n + c1 x^(n-1) + ... + cn, e_k = (-1)^k c_k.
 */
std::vector<RatInterval> char_poly(const std::vector<std::vector<RatInterval>>& b) {
  size_t n = b.size();
  std::vector<std::vector<RatInterval>> mk(n, std::vector<RatInterval>(n));
  std::vector<RatInterval> c(n + 1);
  auto trace = [&](const std::vector<std::vector<RatInterval>>& m) {
    RatInterval t;
    for (size_t i = 0; i < n; ++i) t = t + m[i][i];
    return t;
  };
  std::vector<std::vector<RatInterval>> prev = b;
  c[1] = RatInterval(Rational(0)) - trace(b);
  for (size_t k = 2; k <= n; ++k) {
    // prev + c_{k-1} I, then multiply by b
    std::vector<std::vector<RatInterval>> shifted = prev;
    for (size_t i = 0; i < n; ++i) shifted[i][i] = shifted[i][i] + c[k - 1];
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        RatInterval acc;
        for (size_t t = 0; t < n; ++t) acc = acc + b[i][t] * shifted[t][j];
        mk[i][j] = acc;
      }
    c[k] = (RatInterval(Rational(0)) - trace(mk)) / Rational(static_cast<long>(k));
    prev = mk;
  }
  return c;
}

enum class IntervalVerdict { AllPositive, SomeNegative, Unknown };

/** Eigenvalue sign survey of the symmetric cosine matrix via e_k signs. */
IntervalVerdict interval_eigen_survey(const CoxeterMatrix& m, const std::vector<int>& nodes,
                                      mpfr_prec_t prec) {
  size_t n = nodes.size();
  std::vector<std::vector<RatInterval>> b(n, std::vector<RatInterval>(n));
  for (size_t i = 0; i < n; ++i) {
    b[i][i] = RatInterval(Rational(2));
    for (size_t j = i + 1; j < n; ++j) {
      int lab = m.label(nodes[i], nodes[j]);
      RatInterval v;
      if (lab == kInfLabel)
        v = RatInterval(Rational(-2));
      else if (lab == 2)
        v = RatInterval(Rational(0));
      else if (lab == 3)
        v = RatInterval(Rational(-1));
      else
        v = normalize(cos_entry_interval(lab, prec));
      b[i][j] = v;
      b[j][i] = v;
    }
  }
  auto c = char_poly(b);
  bool all_pos = true;
  for (size_t k = 1; k <= n; ++k) {
    RatInterval ek = (k % 2 == 1) ? RatInterval(Rational(0)) - c[k] : c[k];
    int s = ek.certified_sign();
    if (s < 0) return IntervalVerdict::SomeNegative;
    if (s == 0) all_pos = false;
  }
  return all_pos ? IntervalVerdict::AllPositive : IntervalVerdict::Unknown;
}

GroupClass classify_connected(const CoxeterMatrix& m, const std::vector<int>& nodes) {
  if (nodes.size() == 1) return GroupClass::Spherical;

  bool all_exact = true;
  bool has_inf = false;
  for (size_t i = 0; i < nodes.size(); ++i)
    for (size_t j = i + 1; j < nodes.size(); ++j) {
      int lab = m.label(nodes[i], nodes[j]);
      if (!exact_label(lab)) all_exact = false;
      if (lab == kInfLabel) has_inf = true;
    }

  if (has_inf && nodes.size() == 2) return GroupClass::Affine;  // infinite dihedral

  if (all_exact) {
    size_t n = nodes.size();
    std::vector<std::vector<AlgScalar>> b(n, std::vector<AlgScalar>(n));
    for (size_t i = 0; i < n; ++i) {
      b[i][i] = AlgScalar(2);
      for (size_t j = i + 1; j < n; ++j) {
        int lab = m.label(nodes[i], nodes[j]);
        AlgScalar v = lab == kInfLabel ? AlgScalar(-2) : make_cos_entry(lab).exact();
        b[i][j] = v;
        b[j][i] = v;
      }
    }
    Inertia in = symmetric_inertia(std::move(b));
    if (has_inf) {
      // oo entries pinned at -2 give a lower bound on entry magnitudes, so a
      // certified negative direction survives every realization.
      if (in.neg > 0) return GroupClass::Large;
      throw AmbiguousClassError();
    }
    if (in.neg == 0 && in.zero == 0) return GroupClass::Spherical;
    if (in.neg == 0) return GroupClass::Affine;
    return GroupClass::Large;
  }

  // Labels outside {2,3,4,6} exclude affine; decide PD vs not-PSD by intervals.
  for (mpfr_prec_t prec = 64; prec <= 4096; prec *= 2) {
    switch (interval_eigen_survey(m, nodes, prec)) {
      case IntervalVerdict::AllPositive: return GroupClass::Spherical;
      case IntervalVerdict::SomeNegative: return GroupClass::Large;
      case IntervalVerdict::Unknown: break;
    }
  }
  throw InconclusiveError();
}

}  // namespace

GroupClass classify(const CoxeterMatrix& m, bool require_irreducible) {
  auto bad = m.validate();
  if (!bad.empty()) throw ValidationError(bad);
  auto comps = m.components();
  if (comps.size() == 1) return classify_connected(m, comps[0]);
  if (require_irreducible) throw ReducibleError();
  bool any_affine = false;
  for (const auto& comp : comps) {
    GroupClass c = classify_connected(m, comp);
    if (c == GroupClass::Large) return GroupClass::Large;
    if (c == GroupClass::Affine) any_affine = true;
  }
  return any_affine ? GroupClass::Affine : GroupClass::Spherical;
}

GroupClass classify_subset(const CoxeterMatrix& m, const std::vector<int>& subset) {
  if (subset.empty()) return GroupClass::Spherical;
  return classify(m.standard_subgroup(subset), false);
}

bool all_components_spherical(const CoxeterMatrix& m, const std::vector<int>& subset) {
  return classify_subset(m, subset) == GroupClass::Spherical;
}

bool is_affine_cycle(const CoxeterMatrix& m) {
  int n = m.rank();
  if (n < 3) return false;
  auto edges = m.diagram_edges();
  if (static_cast<int>(edges.size()) != n) return false;
  std::vector<int> degree(n, 0);
  for (auto [i, j] : edges) {
    if (m.label(i, j) != 3) return false;
    degree[i]++;
    degree[j]++;
  }
  for (int d : degree)
    if (d != 2) return false;
  return m.components().size() == 1;
}

Refinement refine(const CoxeterMatrix& m) {
  Refinement r{};
  r.cls = classify(m, true);
  r.affine_cycle = is_affine_cycle(m);
  r.lanner = false;
  r.two_lanner = false;
  if (r.cls == GroupClass::Large) {
    int n = m.rank();
    r.lanner = true;
    for (int drop = 0; drop < n && r.lanner; ++drop) {
      std::vector<int> rest;
      for (int i = 0; i < n; ++i)
        if (i != drop) rest.push_back(i);
      if (!all_components_spherical(m, rest)) r.lanner = false;
    }
    r.two_lanner = true;
    for (int a = 0; a < n && r.two_lanner; ++a)
      for (int b = a + 1; b < n && r.two_lanner; ++b) {
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
          if (i != a && i != b) rest.push_back(i);
        if (!all_components_spherical(m, rest)) r.two_lanner = false;
      }
  }
  return r;
}

}  // namespace vinberg
