#include "vinberg/cartan.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>

#include "vinberg/errors.hpp"

namespace vinberg {

namespace {

// Anchored DFS (Tiernan): every simple cycle is emitted exactly once, rooted at
// its smallest node with the smaller neighbour second. `adj` must be sorted.
std::vector<std::vector<int>> enumerate_simple_cycles(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::vector<int>> out;
  long steps = 0;
  std::vector<int> path;
  std::vector<char> on_path(n, 0);
  std::function<void(int, int)> dfs = [&](int anchor, int u) {
    if (++steps > kCircuitGuard) throw TooManyCircuitsError();
    for (int v : adj[u]) {
      if (v == anchor && path.size() >= 3) {
        if (path[1] < path.back()) {
          out.push_back(path);
          if (static_cast<long>(out.size()) > kCircuitGuard) throw TooManyCircuitsError();
        }
        continue;
      }
      if (v <= anchor || on_path[v]) continue;
      on_path[v] = 1;
      path.push_back(v);
      dfs(anchor, v);
      on_path[v] = 0;
      path.pop_back();
    }
  };
  for (int a = 0; a < n; ++a) {
    path.assign(1, a);
    std::fill(on_path.begin(), on_path.end(), 0);
    on_path[a] = 1;
    dfs(a, a);
  }
  std::sort(out.begin(), out.end(), [](const std::vector<int>& x, const std::vector<int>& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

std::vector<std::vector<int>> graph_components(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp, stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Lexicographically least spanning forest (Kruskal on sorted (i,j) pairs).
std::vector<std::pair<int, int>> lex_min_forest(int n, std::vector<std::pair<int, int>> edges) {
  std::sort(edges.begin(), edges.end());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<std::pair<int, int>> tree;
  for (auto [i, j] : edges) {
    int ri = find(i), rj = find(j);
    if (ri == rj) continue;
    parent[ri] = rj;
    tree.emplace_back(i, j);
  }
  return tree;
}

bool scalar_close(const Scalar& x, const Scalar& y) {
  if (x.is_exact() && y.is_exact()) return x == y;
  double dx = x.to_double(), dy = y.to_double();
  double scale = std::max({1.0, std::fabs(dx), std::fabs(dy)});
  return std::fabs(dx - dy) <= kEquivalenceTolerance * scale;
}

// Determinant by exact elimination; `w` is row-major k x k and consumed.
Scalar det_exact(std::vector<Scalar>& w, int k) {
  Scalar det(1);
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r)
      if (w[r * k + col].sign() != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Scalar(0);
    if (piv != col) {
      for (int c = 0; c < k; ++c) std::swap(w[piv * k + c], w[col * k + c]);
      det = det * Scalar(-1);
    }
    const Scalar pivot = w[col * k + col];
    det = det * pivot;
    for (int r = col + 1; r < k; ++r) {
      if (w[r * k + col].sign() == 0) continue;
      Scalar f = w[r * k + col] / pivot;
      for (int c = col; c < k; ++c) w[r * k + c] = w[r * k + c] - f * w[col * k + c];
    }
  }
  return det;
}

int rank_exact_impl(std::vector<Scalar> w, int n) {
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (w[r * n + col].sign() != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int c = 0; c < n; ++c) std::swap(w[piv * n + c], w[rank * n + c]);
    const Scalar pivot = w[rank * n + col];
    for (int r = rank + 1; r < n; ++r) {
      if (w[r * n + col].sign() == 0) continue;
      Scalar f = w[r * n + col] / pivot;
      for (int c = col; c < n; ++c) w[r * n + c] = w[r * n + c] - f * w[rank * n + c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Circuit canonical_circuit(std::vector<int> nodes) {
  if (nodes.size() < 2) throw Error("a circuit needs at least 2 nodes");
  if (nodes.size() == 2) {
    if (nodes[0] > nodes[1]) std::swap(nodes[0], nodes[1]);
    if (nodes[0] == nodes[1]) throw Error("degenerate circuit");
    return Circuit{std::move(nodes)};
  }
  const int k = static_cast<int>(nodes.size());
  int pos = static_cast<int>(std::min_element(nodes.begin(), nodes.end()) - nodes.begin());
  std::vector<int> fwd(k), bwd(k);
  for (int t = 0; t < k; ++t) {
    fwd[t] = nodes[(pos + t) % k];
    bwd[t] = nodes[(pos - t + k) % k];
  }
  return Circuit{fwd <= bwd ? std::move(fwd) : std::move(bwd)};
}

std::vector<int> reversed_cycle(const std::vector<int>& nodes) {
  std::vector<int> rev(nodes.rbegin(), nodes.rend());
  std::rotate(rev.begin(), rev.end() - 1, rev.end());  // keep the anchor first
  return rev;
}

CartanMatrix::CartanMatrix(std::vector<std::string> names)
    : n_(static_cast<int>(names.size())), names_(std::move(names)) {
  if (n_ < 1 || n_ > kMaxRank) throw RankError("matrix size out of range");
  a_.assign(static_cast<size_t>(n_) * n_, Scalar(0));
  for (int i = 0; i < n_; ++i) a_[i * n_ + i] = Scalar(2);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (names_[i] == names_[j]) throw DuplicateNameError(names_[i]);
}

void CartanMatrix::set(int i, int j, Scalar v) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw Error("index out of range");
  a_[i * n_ + j] = std::move(v);
}

bool CartanMatrix::is_adjacent(int i, int j) const {
  return i != j && !at(i, j).is_zero();
}

std::vector<std::pair<int, int>> CartanMatrix::adjacency_edges() const {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (is_adjacent(i, j) || is_adjacent(j, i)) e.emplace_back(i, j);
  return e;
}

std::vector<std::vector<int>> CartanMatrix::components() const {
  std::vector<std::vector<int>> adj(n_);
  for (auto [i, j] : adjacency_edges()) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  return graph_components(adj);
}

bool CartanMatrix::all_exact() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_exact(); });
}

std::vector<std::string> CartanMatrix::validate() const {
  std::vector<std::string> bad;
  auto cell = [&](int i, int j) { return "(" + names_[i] + "," + names_[j] + ")"; };
  for (int i = 0; i < n_; ++i) {
    const Scalar& d = at(i, i);
    bool ok = d.is_exact() ? (d - Scalar(2)).is_zero() : std::fabs(d.to_double() - 2.0) <= 1e-12;
    if (!ok) bad.push_back("diagonal entry " + cell(i, i) + " is not 2");
  }
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j) continue;
      const Scalar& x = at(i, j);
      if (x.sign() > 0) bad.push_back("entry " + cell(i, j) + " is positive");
      if (x.is_zero() != at(j, i).is_zero())
        bad.push_back("entries " + cell(i, j) + " and " + cell(j, i) + " are not both zero");
    }
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      if (!is_adjacent(i, j) || at(i, j).sign() > 0 || at(j, i).sign() > 0) continue;
      Scalar p = at(i, j) * at(j, i);
      if (p.is_exact()) {
        // In this coefficient field the admissible sub-4 products are
        // 4cos^2(pi/m) for m in {3,4,6,8,12}.
        if ((p - Scalar(4)).sign() >= 0) continue;
        static const AlgScalar allowed[] = {
            AlgScalar(1), AlgScalar(2), AlgScalar(3),
            AlgScalar(2) + AlgScalar::sqrt2(), AlgScalar(2) + AlgScalar::sqrt3()};
        bool hit = false;
        for (const auto& v : allowed) hit = hit || (p.exact() - v).is_zero();
        if (!hit) bad.push_back("entry product at " + cell(i, j) + " is not 4cos^2(pi/m) and not >= 4");
      } else {
        double pd = p.to_double();
        if (pd >= 4.0 - 1e-9) continue;
        bool hit = false;
        for (long m = 3; m <= 10'000'000; ++m) {
          double v = 4.0 * std::pow(std::cos(M_PI / static_cast<double>(m)), 2);
          if (std::fabs(pd - v) <= 1e-9) {
            hit = true;
            break;
          }
          if (v > pd + 1e-9) break;
        }
        if (!hit) bad.push_back("entry product at " + cell(i, j) + " is not 4cos^2(pi/m) and not >= 4");
      }
    }
  return bad;
}

CartanMatrix CartanMatrix::restrict_to(const std::vector<int>& subset) const {
  std::vector<std::string> nm;
  nm.reserve(subset.size());
  for (int i : subset) nm.push_back(names_[i]);
  CartanMatrix r(nm);
  for (size_t i = 0; i < subset.size(); ++i)
    for (size_t j = 0; j < subset.size(); ++j)
      r.set(static_cast<int>(i), static_cast<int>(j), at(subset[i], subset[j]));
  return r;
}

Scalar cyclic_product(const CartanMatrix& a, const std::vector<int>& cycle) {
  const int k = static_cast<int>(cycle.size());
  Scalar p(1);
  for (int t = 0; t < k; ++t) p = p * a.at(cycle[t], cycle[(t + 1) % k]);
  return p;
}

Scalar edge_product(const CartanMatrix& a, int i, int j) { return a.at(i, j) * a.at(j, i); }

double RatioPair::log_ratio() const {
  return std::log(forward.to_double() / backward.to_double());
}

RatioPair normalized_cyclic_product(const CartanMatrix& a, const Circuit& c) {
  return RatioPair{cyclic_product(a, c.nodes), cyclic_product(a, reversed_cycle(c.nodes))};
}

std::vector<Circuit> simple_cycles(const CartanMatrix& a) {
  std::vector<std::vector<int>> adj(a.size());
  for (auto [i, j] : a.adjacency_edges()) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<Circuit> out;
  for (auto& c : enumerate_simple_cycles(adj)) out.push_back(Circuit{std::move(c)});
  return out;
}

std::vector<Circuit> relevant_circuits(const CartanMatrix& a) {
  std::vector<Circuit> out;
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j)
      if (a.is_adjacent(i, j) && (edge_product(a, i, j) - Scalar(4)).sign() >= 0)
        out.push_back(Circuit{{i, j}});
  auto cycles = simple_cycles(a);
  out.insert(out.end(), cycles.begin(), cycles.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(PerronType t) {
  switch (t) {
    case PerronType::Positive: return "positive";
    case PerronType::Zero: return "zero";
    case PerronType::Negative: return "negative";
  }
  return "?";
}

int exact_rank(const CartanMatrix& a) {
  if (!a.all_exact()) throw ApproxDataError("rank");
  std::vector<Scalar> w;
  w.reserve(static_cast<size_t>(a.size()) * a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) w.push_back(a.at(i, j));
  return rank_exact_impl(std::move(w), a.size());
}

namespace {

// Perron eigenvalue display value: power iteration on the primitive shift
// 3I - A >= 0 (positive diagonal keeps it aperiodic).
double perron_lambda(const CartanMatrix& a) {
  const int n = a.size();
  std::vector<double> m(static_cast<size_t>(n) * n), v(n, 1.0), w(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = (i == j ? 3.0 : 0.0) - a.at(i, j).to_double();
  double rho = 0.0;
  for (int it = 0; it < 400; ++it) {
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += m[i * n + j] * v[j];
      w[i] = s;
      norm = std::max(norm, std::fabs(s));
    }
    if (norm == 0.0) return 2.0;  // 3I - A was nilpotent: impossible past n = 0
    for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
    rho = norm;
  }
  return 3.0 - rho;
}

}  // namespace

PerronReport perron_type(const CartanMatrix& a) {
  if (!a.all_exact()) throw ApproxDataError("perron trichotomy");
  if (a.components().size() != 1) throw ReducibleError();
  const int n = a.size();
  std::vector<int> sign_of_minor(n + 1, 0);
  for (int k = 1; k <= n; ++k) {
    std::vector<Scalar> w;
    w.reserve(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) w.push_back(a.at(i, j));
    sign_of_minor[k] = det_exact(w, k).sign();
  }
  PerronType t;
  bool head_positive = true;
  for (int k = 1; k < n; ++k) head_positive = head_positive && sign_of_minor[k] > 0;
  if (head_positive && sign_of_minor[n] > 0)
    t = PerronType::Positive;
  else if (head_positive && sign_of_minor[n] == 0)
    t = PerronType::Zero;
  else
    t = PerronType::Negative;
  return PerronReport{t, exact_rank(a), perron_lambda(a)};
}

bool equivalent(const CartanMatrix& a, const CartanMatrix& b) {
  if (a.size() != b.size() || a.names() != b.names()) return false;
  const int n = a.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (a.is_adjacent(i, j) != b.is_adjacent(i, j)) return false;
      if (i == j && !scalar_close(a.at(i, i), b.at(i, i))) return false;
    }
  for (auto [i, j] : a.adjacency_edges())
    if (!scalar_close(edge_product(a, i, j), edge_product(b, i, j))) return false;
  for (const auto& c : simple_cycles(a))
    if (!scalar_close(cyclic_product(a, c.nodes), cyclic_product(b, c.nodes))) return false;
  return true;
}

CartanMatrix diagonal_conjugate(const CartanMatrix& a, const std::vector<Scalar>& d) {
  if (static_cast<int>(d.size()) != a.size()) throw Error("diagonal size mismatch");
  for (const auto& x : d)
    if (x.sign() <= 0) throw ValidationError({"diagonal conjugation requires positive entries"});
  CartanMatrix r(a.names());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) r.set(i, j, d[i] * a.at(i, j) / d[j]);
  return r;
}

CartanMatrix canonical_gauge(const CartanMatrix& a) {
  const int n = a.size();
  auto tree = lex_min_forest(n, a.adjacency_edges());
  std::vector<std::vector<int>> tadj(n);
  for (auto [i, j] : tree) {
    tadj[i].push_back(j);
    tadj[j].push_back(i);
  }
  std::vector<Scalar> d(n, Scalar(1));
  std::vector<char> seen(n, 0);
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<int> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      for (int c : tadj[p]) {
        if (seen[c]) continue;
        seen[c] = 1;
        // Want a'_pc = a'_cp = -sqrt(a_pc a_cp): solve d_c from a'_pc = d_p a_pc / d_c.
        Scalar s = (a.at(p, c) * a.at(c, p)).sqrt();
        d[c] = d[p] * a.at(p, c) / (Scalar(0) - s);
        stack.push_back(c);
      }
    }
  }
  return diagonal_conjugate(a, d);
}

CartanMatrix cosine_matrix(const CoxeterMatrix& m) {
  CartanMatrix a(m.names());
  for (int i = 0; i < m.rank(); ++i)
    for (int j = i + 1; j < m.rank(); ++j) {
      Scalar e = make_cos_entry(m.label(i, j));
      a.set(i, j, e);
      a.set(j, i, e);
    }
  return a;
}

GaugedCartan GaugedCartan::from_labels(const CoxeterMatrix& labels) {
  GaugedCartan g;
  g.n_ = labels.rank();
  g.names_ = labels.names();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < g.n_; ++i)
    for (int j = i + 1; j < g.n_; ++j) {
      int m = labels.label(i, j);
      if (m == 2) continue;
      g.product_[{i, j}] = edge_product_value(m);
      edges.emplace_back(i, j);
    }
  g.tree_ = lex_min_forest(g.n_, edges);
  return g;
}

bool GaugedCartan::is_adjacent(int i, int j) const {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return product_.count({i, j}) > 0;
}

std::vector<std::pair<int, int>> GaugedCartan::non_forest_edges() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [e, p] : product_) {
    (void)p;
    if (std::find(tree_.begin(), tree_.end(), e) == tree_.end()) out.push_back(e);
  }
  return out;
}

Scalar GaugedCartan::product_on(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = product_.find({i, j});
  if (it == product_.end()) throw Error("pair is not adjacent");
  return it->second;
}

Scalar GaugedCartan::ratio_on(int i, int j) const {
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = ratio_.find({i, j});
  if (it == ratio_.end()) {
    if (!is_adjacent(i, j)) throw Error("pair is not adjacent");
    return Scalar(1);
  }
  return flip ? Scalar(1) / it->second : it->second;
}

void GaugedCartan::set_ratio(int i, int j, const Scalar& rho) {
  Scalar r = rho;
  if (i > j) {
    std::swap(i, j);
    r = Scalar(1) / r;
  }
  if (!is_adjacent(i, j)) throw Error("pair is not adjacent");
  if (std::find(tree_.begin(), tree_.end(), std::make_pair(i, j)) != tree_.end())
    throw Error("forest edges are symmetric; set ratios on non-forest edges only");
  if (r.sign() <= 0) throw ValidationError({"asymmetry ratio must be positive"});
  ratio_[{i, j}] = r;
  cycles_.reset();
  cache_.clear();
}

Scalar GaugedCartan::cycle_edge_product(const std::vector<int>& cycle) const {
  const int k = static_cast<int>(cycle.size());
  Scalar m(1);
  for (int t = 0; t < k; ++t) m = m * product_on(cycle[t], cycle[(t + 1) % k]);
  return m;
}

Scalar GaugedCartan::cycle_ratio(const std::vector<int>& cycle) const {
  const int k = static_cast<int>(cycle.size());
  Scalar r(1);
  for (int t = 0; t < k; ++t) r = r * ratio_on(cycle[t], cycle[(t + 1) % k]);
  return r;
}

Scalar GaugedCartan::directed_cycle_product(const std::vector<int>& cycle) const {
  Scalar mag = (cycle_edge_product(cycle) * cycle_ratio(cycle)).sqrt();
  return (cycle.size() % 2 == 0) ? mag : Scalar(0) - mag;
}

RatioPair GaugedCartan::circuit_pair(const Circuit& c) const {
  return RatioPair{directed_cycle_product(c.nodes), directed_cycle_product(reversed_cycle(c.nodes))};
}

std::vector<Circuit> GaugedCartan::simple_cycle_list() const {
  std::vector<std::vector<int>> adj(n_);
  for (const auto& [e, p] : product_) {
    (void)p;
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  std::vector<Circuit> out;
  for (auto& c : enumerate_simple_cycles(adj)) out.push_back(Circuit{std::move(c)});
  return out;
}

void GaugedCartan::build_cycle_weights() const {
  cycles_.emplace();
  for (const auto& c : simple_cycle_list()) {
    uint32_t mask = 0;
    for (int v : c.nodes) mask |= (1u << v);
    // Both orientations of the cycle together contribute
    //   (-1)^{l-1} (C + Cbar) = -(sqrt(M R) + sqrt(M/R)) = -sqrt(M R) (R + 1) / R
    // to a determinant; this stays in the field whenever M R is a square there.
    Scalar m = cycle_edge_product(c.nodes);
    Scalar r = cycle_ratio(c.nodes);
    Scalar w = (m * r).sqrt() * (r + Scalar(1)) / r;
    cycles_->push_back(CycleWeight{mask, c.nodes[0], w});
  }
}

Scalar GaugedCartan::minor_rec(uint32_t mask) const {
  if (mask == 0) return Scalar(1);
  auto it = cache_.find(mask);
  if (it != cache_.end()) return it->second;
  const int m0 = std::countr_zero(mask);
  Scalar acc = Scalar(2) * minor_rec(mask & ~(1u << m0));
  for (int j = m0 + 1; j < n_; ++j)
    if ((mask >> j & 1u) && is_adjacent(m0, j))
      acc = acc - product_on(m0, j) * minor_rec(mask & ~(1u << m0) & ~(1u << j));
  for (const auto& c : *cycles_)
    if (c.min_node == m0 && (c.mask & mask) == c.mask)
      acc = acc - c.weight * minor_rec(mask & ~c.mask);
  cache_.emplace(mask, acc);
  return acc;
}

Scalar GaugedCartan::principal_minor(const std::vector<int>& subset) const {
  if (!cycles_) build_cycle_weights();
  uint32_t mask = 0;
  for (int v : subset) {
    if (v < 0 || v >= n_) throw Error("index out of range");
    mask |= (1u << v);
  }
  return minor_rec(mask);
}

bool GaugedCartan::all_weights_exact() const {
  if (!cycles_) build_cycle_weights();
  for (const auto& [e, p] : product_)
    if (!p.is_exact()) return false;
  for (const auto& [e, r] : ratio_)
    if (!r.is_exact()) return false;
  return std::all_of(cycles_->begin(), cycles_->end(),
                     [](const CycleWeight& c) { return c.weight.is_exact(); });
}

PerronType GaugedCartan::perron() const {
  if (!all_weights_exact()) throw ApproxDataError("gauged perron trichotomy");
  std::vector<std::vector<int>> adj(n_);
  for (const auto& [e, p] : product_) {
    (void)p;
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  if (graph_components(adj).size() != 1) throw ReducibleError();
  bool head_positive = true;
  for (int k = 1; k < n_; ++k) head_positive = head_positive && minor_rec((1u << k) - 1).sign() > 0;
  int last = principal_minor([&] {
               std::vector<int> all(n_);
               std::iota(all.begin(), all.end(), 0);
               return all;
             }()).sign();
  if (head_positive && last > 0) return PerronType::Positive;
  if (head_positive && last == 0) return PerronType::Zero;
  return PerronType::Negative;
}

bool GaugedCartan::nonsingular() const {
  std::vector<int> all(n_);
  std::iota(all.begin(), all.end(), 0);
  return principal_minor(all).sign() != 0;
}

CartanMatrix GaugedCartan::materialize() const {
  CartanMatrix a(names_);
  for (const auto& [e, p] : product_) {
    auto [i, j] = e;
    Scalar rho = ratio_on(i, j);
    Scalar ij = Scalar(0) - (p * rho).sqrt();
    Scalar ji = Scalar(0) - (p / rho).sqrt();
    a.set(i, j, ij);
    a.set(j, i, ji);
  }
  return a;
}

}  // namespace vinberg
