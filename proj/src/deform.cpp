#include "vinberg/deform.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "vinberg/linalg.hpp"

namespace vinberg {

namespace {

// Mixed-exactness comparisons fall back to this relative tolerance.
constexpr double kDeformTolerance = 1e-9;

bool scalar_eq(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a == b;
  double x = a.to_double(), y = b.to_double();
  double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
  return std::fabs(x - y) <= kDeformTolerance * scale;
}

bool scalar_nonzero(const Scalar& s) {
  if (s.is_exact()) return !s.is_zero();
  return std::fabs(s.to_double()) > kDeformTolerance;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string s;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) s += ",";
    s += names[i];
  }
  return s;
}

std::string cut_name_of(const std::vector<std::string>& delta) {
  return "cut(" + join_names(delta) + ")";
}

}  // namespace

void EPoly::add_term(int power, const Scalar& coeff) {
  auto it = terms_.find(power);
  Scalar v = (it == terms_.end()) ? coeff : it->second + coeff;
  if (v.is_exact() ? v.is_zero() : v.to_double() == 0.0)
    terms_.erase(power);
  else
    terms_[power] = v;
}

Scalar EPoly::eval(const Scalar& e) const {
  Scalar out(0);
  for (const auto& [p, c] : terms_) {
    Scalar pw(1);
    for (int k = 0; k < std::abs(p); ++k) pw = pw * e;
    out = out + (p >= 0 ? c * pw : c / pw);
  }
  return out;
}

EPoly operator+(const EPoly& a, const EPoly& b) {
  EPoly out = a;
  for (const auto& [p, c] : b.terms_) out.add_term(p, c);
  return out;
}

EPoly operator*(const EPoly& a, const EPoly& b) {
  EPoly out;
  for (const auto& [pa, ca] : a.terms_)
    for (const auto& [pb, cb] : b.terms_) out.add_term(pa + pb, ca * cb);
  return out;
}

std::string EPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [p, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")";
    if (p == 1)
      s += "*E";
    else if (p != 0)
      s += "*E^" + std::to_string(p);
  }
  return s;
}

std::string to_string(ChartCase c) {
  switch (c) {
    case ChartCase::Triangle: return "triangle";
    case ChartCase::NoRightAngle: return "no-right-angle";
    case ChartCase::OneRightAngle: return "one-right-angle";
    case ChartCase::PanShape: return "pan";
    case ChartCase::CycleShape: return "cycle";
    case ChartCase::K23Shape: return "k23";
    case ChartCase::Rigid: return "rigid";
    case ChartCase::Generic: return "generic";
    case ChartCase::Glued: return "glued";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Core label-diagram analysis: choosing the chart circuits of a leaf.

struct Diagram {
  int n = 0;
  std::vector<std::vector<char>> adj;  // label != 2
  std::vector<std::pair<int, int>> edges;

  int degree(int v) const {
    int d = 0;
    for (int u = 0; u < n; ++u) d += adj[v][u];
    return d;
  }
};

Diagram core_diagram(const LabeledPolytope& piece, const std::vector<int>& core) {
  Diagram g;
  g.n = static_cast<int>(core.size());
  g.adj.assign(g.n, std::vector<char>(g.n, 0));
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (piece.label(core[i], core[j]) != 2) {
        g.adj[i][j] = g.adj[j][i] = 1;
        g.edges.emplace_back(i, j);
      }
  return g;
}

bool diagram_connected(const Diagram& g) {
  if (g.n == 0) return true;
  std::vector<char> seen(g.n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int u = 0; u < g.n; ++u)
      if (g.adj[v][u] && !seen[u]) {
        seen[u] = 1;
        ++count;
        q.push(u);
      }
  }
  return count == g.n;
}

/** Kruskal forest over lexicographically ascending (i, j) pairs. */
std::vector<std::pair<int, int>> lex_min_forest_of(const Diagram& g) {
  std::vector<int> parent(g.n);
  for (int i = 0; i < g.n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  std::vector<std::pair<int, int>> tree;
  for (const auto& [i, j] : g.edges) {
    int a = find(i), b = find(j);
    if (a == b) continue;
    parent[a] = b;
    tree.emplace_back(i, j);
  }
  return tree;
}

/** The unique cycle of a connected unicyclic diagram, as a closed walk. */
std::vector<int> unique_cycle(const Diagram& g) {
  std::vector<int> deg(g.n);
  std::vector<std::vector<char>> adj = g.adj;
  for (int v = 0; v < g.n; ++v) deg[v] = g.degree(v);
  // Strip leaves until only the cycle remains.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.n; ++v)
      if (deg[v] == 1) {
        for (int u = 0; u < g.n; ++u)
          if (adj[v][u]) {
            adj[v][u] = adj[u][v] = 0;
            --deg[v];
            --deg[u];
            changed = true;
          }
      }
  }
  int start = -1;
  for (int v = 0; v < g.n && start < 0; ++v)
    if (deg[v] == 2) start = v;
  if (start < 0) throw std::logic_error("unicyclic diagram has no cycle");
  std::vector<int> walk{start};
  int prev = -1, cur = start;
  while (true) {
    int next = -1;
    for (int u = 0; u < g.n; ++u)
      if (adj[cur][u] && u != prev) {
        next = u;
        break;
      }
    if (next == start) break;
    walk.push_back(next);
    prev = cur;
    cur = next;
  }
  return walk;
}

std::vector<int> tree_path(const std::vector<std::pair<int, int>>& tree, int n, int from, int to) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [i, j] : tree) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<int> par(n, -2);
  std::queue<int> q;
  q.push(from);
  par[from] = -1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (v == to) break;
    for (int u : adj[v])
      if (par[u] == -2) {
        par[u] = v;
        q.push(u);
      }
  }
  std::vector<int> path;
  for (int v = to; v != -1; v = par[v]) {
    if (v == -2) throw std::logic_error("forest path endpoints are disconnected");
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  return path;  // from .. to
}

struct CaseResult {
  ChartCase shape = ChartCase::Rigid;
  std::vector<std::vector<int>> circuits;
  std::vector<ChartConstraint> constraints;
};

/** Fundamental cycles of the lex-min spanning forest, in canonical order. */
CaseResult generic_case(const Diagram& g) {
  CaseResult out;
  out.shape = ChartCase::Generic;
  auto tree = lex_min_forest_of(g);
  std::set<std::pair<int, int>> in_tree(tree.begin(), tree.end());
  std::vector<Circuit> cycles;
  for (const auto& e : g.edges)
    if (!in_tree.count(e)) {
      std::vector<int> path = tree_path(tree, g.n, e.second, e.first);
      cycles.push_back(canonical_circuit(path));
    }
  std::sort(cycles.begin(), cycles.end());
  for (auto& c : cycles) out.circuits.push_back(c.nodes);
  return out;
}

CaseResult detect_case(const Diagram& g, int d) {
  CaseResult out;
  if (d == 2) {
    out.shape = ChartCase::Triangle;
    if (static_cast<int>(g.edges.size()) == 3) out.circuits.push_back({0, 1, 2});
    return out;
  }
  if (d == 3) {
    std::vector<std::pair<int, int>> missing;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (!g.adj[i][j]) missing.emplace_back(i, j);
    if (missing.empty()) {
      out.shape = ChartCase::NoRightAngle;
      // Boundary orientations of the core simplex: the four ratios multiply to 1.
      out.circuits = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
      out.constraints.push_back(ChartConstraint{{{0, 1}, {1, 1}, {2, 1}, {3, 1}}});
      return out;
    }
    if (missing.size() == 1) {
      auto [a, b] = missing[0];
      std::vector<int> rest;
      for (int v = 0; v < 4; ++v)
        if (v != a && v != b) rest.push_back(v);
      out.shape = ChartCase::OneRightAngle;
      out.circuits = {{a, rest[0], rest[1]}, {b, rest[0], rest[1]}};
      return out;
    }
    if (missing.size() == 2) {
      bool share = missing[0].first == missing[1].first || missing[0].first == missing[1].second ||
                   missing[0].second == missing[1].first || missing[0].second == missing[1].second;
      out.shape = share ? ChartCase::PanShape : ChartCase::CycleShape;
      out.circuits.push_back(canonical_circuit(unique_cycle(g)).nodes);
      return out;
    }
    out.shape = ChartCase::Rigid;
    return out;
  }
  // d >= 4: recognize by graph shape.
  const int rank = static_cast<int>(g.edges.size()) - g.n + 1;  // connected
  if (rank == 0) {
    out.shape = ChartCase::Rigid;
    return out;
  }
  if (rank == 1) {
    bool all_two = true;
    for (int v = 0; v < g.n; ++v) all_two = all_two && g.degree(v) == 2;
    out.shape = all_two ? ChartCase::CycleShape : ChartCase::PanShape;
    out.circuits.push_back(canonical_circuit(unique_cycle(g)).nodes);
    return out;
  }
  if (g.n == 5 && rank == 2) {
    std::vector<int> deg3, deg2;
    for (int v = 0; v < 5; ++v) {
      int dv = g.degree(v);
      if (dv == 3) deg3.push_back(v);
      if (dv == 2) deg2.push_back(v);
    }
    if (deg3.size() == 2 && deg2.size() == 3) {
      int p = deg3[0], q = deg3[1];
      bool bipartite = !g.adj[p][q];
      for (int x : deg2) bipartite = bipartite && g.adj[p][x] && g.adj[q][x];
      for (size_t i = 0; i < deg2.size() && bipartite; ++i)
        for (size_t j = i + 1; j < deg2.size(); ++j) bipartite = bipartite && !g.adj[deg2[i]][deg2[j]];
      if (bipartite) {
        int x = deg2[0], y = deg2[1], z = deg2[2];
        out.shape = ChartCase::K23Shape;
        out.circuits = {{p, x, q, y}, {p, x, q, z}, {p, y, q, z}};
        // The three quadrilaterals satisfy C1 + C3 = C2 as cycles.
        out.constraints.push_back(ChartConstraint{{{0, 1}, {2, 1}, {1, -1}}});
        return out;
      }
    }
  }
  return generic_case(g);
}

// ---------------------------------------------------------------------------
// Cut facets: link data shared by cell_chart, truncatability and the frames.

struct CutLink {
  std::vector<int> base;  // piece facet indices adjacent to the cut, |base| = d
  int opp = -1;           // the core facet the cut pairs with
};

CutLink cut_link(const LabeledPolytope& piece, const std::vector<int>& core, int cut) {
  CutLink out;
  std::set<int> base;
  for (int j : core)
    if (piece.adjacent(cut, j)) base.insert(j);
  if (static_cast<int>(base.size()) != piece.dim())
    throw UnsupportedShapeError("cut facet " + piece.facet_names()[cut] +
                                " does not sit over a core vertex");
  for (int j : core)
    if (!base.count(j)) {
      if (out.opp >= 0) throw UnsupportedShapeError("cut facet with two opposite facets");
      out.opp = j;
    }
  out.base.assign(base.begin(), base.end());
  return out;
}

/** The affine-cycle walk through all nodes of `subset`, by diagram adjacency. */
std::vector<int> affine_cycle_walk(const LabeledPolytope& piece, const std::vector<int>& subset) {
  Diagram g;
  g.n = static_cast<int>(subset.size());
  g.adj.assign(g.n, std::vector<char>(g.n, 0));
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (piece.adjacent(subset[i], subset[j]) && piece.label(subset[i], subset[j]) != 2) {
        g.adj[i][j] = g.adj[j][i] = 1;
        g.edges.emplace_back(i, j);
      }
  std::vector<int> walk = unique_cycle(g);
  if (static_cast<int>(walk.size()) != g.n)
    throw std::logic_error("affine cycle does not cover its diagram");
  std::vector<int> out;
  for (int v : walk) out.push_back(subset[v]);
  return out;
}

int core_position(const std::vector<int>& core, int piece_facet) {
  auto it = std::find(core.begin(), core.end(), piece_facet);
  if (it == core.end()) throw std::logic_error("facet is not a core facet");
  return static_cast<int>(it - core.begin());
}

ChartCircuit make_chart_circuit(const LabeledPolytope& piece, const std::vector<int>& core,
                                const std::vector<int>& positions) {
  ChartCircuit c;
  c.nodes = positions;
  for (int p : positions) c.names.push_back(piece.facet_names()[core[p]]);
  return c;
}

}  // namespace

CellChart cell_chart(const LabeledPolytope& g) {
  const int d = g.dim();
  if (d > 9)
    throw EmptyCellError("no truncation polytope deforms in dimension " + std::to_string(d) +
                         " (bound 9)");
  if (!g.is_truncation_polytope())
    throw UnsupportedShapeError("chart requires a polytope built by simplex/truncate/glue");
  CoxeterMatrix whole = g.coxeter_matrix();
  GroupClass cls;
  try {
    cls = classify(whole);
  } catch (const ReducibleError&) {
    throw UnsupportedShapeError("polytope group is reducible");
  }
  if (cls != GroupClass::Large) throw UnsupportedShapeError("polytope group must be large");
  if (!g.perfection().two_perfect)
    throw UnsupportedShapeError("polytope is not 2-perfect: some edge stabilizer is not spherical");

  GluingTree tree = g.gluing_tree();
  CellChart chart;
  chart.polytope = std::make_shared<LabeledPolytope>(g);
  chart.d = d;
  chart.e_plus = g.e_plus();

  for (const auto& node : tree.leaves) {
    const LabeledPolytope& piece = *node.piece;
    auto shape = piece.truncated_simplex_shape();
    if (!shape)
      throw UnsupportedShapeError("gluing-tree leaf is not a (truncated) simplex");
    LeafChart leaf;
    leaf.piece = node.piece;
    leaf.core = shape->core;
    leaf.cuts = shape->cuts;

    CoxeterMatrix core_cox = piece.coxeter_matrix().standard_subgroup(leaf.core);
    GroupClass core_cls;
    try {
      core_cls = classify(core_cox);
    } catch (const ReducibleError&) {
      throw EmptyCellError("leaf core diagram is reducible");
    }
    if (core_cls != GroupClass::Large)
      throw EmptyCellError("leaf core group is " + to_string(core_cls) + ", must be large");

    Diagram diagram = core_diagram(piece, leaf.core);
    if (!diagram_connected(diagram)) throw EmptyCellError("leaf core diagram is reducible");
    CaseResult cr = detect_case(diagram, d);
    leaf.shape = cr.shape;
    for (const auto& nodes : cr.circuits) leaf.circuits.push_back(make_chart_circuit(piece, leaf.core, nodes));
    leaf.constraints = cr.constraints;
    leaf.dimension = static_cast<int>(leaf.circuits.size() - leaf.constraints.size());
    const int core_rank = static_cast<int>(diagram.edges.size()) - d;
    if (leaf.dimension != core_rank)
      throw std::logic_error("leaf chart dimension disagrees with the core cycle rank");

    for (int cut : leaf.cuts) {
      CutLink link = cut_link(piece, leaf.core, cut);
      Refinement ref;
      try {
        ref = refine(piece.coxeter_matrix().standard_subgroup(link.base));
      } catch (const ReducibleError&) {
        throw EmptyCellError("cut facet " + piece.facet_names()[cut] + " has a reducible link");
      }
      if (ref.lanner) continue;
      if (ref.affine_cycle) {
        std::vector<int> walk = affine_cycle_walk(piece, link.base);
        std::vector<int> positions;
        for (int f : walk) positions.push_back(core_position(leaf.core, f));
        leaf.affine_conditions.emplace_back(cut, make_chart_circuit(piece, leaf.core, positions));
        continue;
      }
      throw EmptyCellError("cut facet " + piece.facet_names()[cut] +
                           " link must be a compact simplex or affine cycle group");
    }
    chart.leaves.push_back(std::move(leaf));
  }

  int delta_ranks = 0;
  for (const auto& edge : tree.edges) {
    EdgeChart ec;
    ec.leaf_a = edge.leaf_a;
    ec.leaf_b = edge.leaf_b;
    ec.delta = edge.delta;
    std::vector<int> g_delta;
    for (const auto& nm : edge.delta) {
      // Gluing circuits must be facets of the assembled polytope itself.
      try {
        g_delta.push_back(g.facet_index(nm));
      } catch (const Error&) {
        throw UnsupportedShapeError("gluing circuit uses derived facets");
      }
    }
    Refinement ref;
    try {
      ref = refine(whole.standard_subgroup(g_delta));
    } catch (const ReducibleError&) {
      throw EmptyCellError("gluing circuit " + join_names(edge.delta) + " is reducible");
    }
    if (!ref.lanner && !ref.affine_cycle)
      throw EmptyCellError("gluing circuit " + join_names(edge.delta) +
                           " must be a compact simplex or affine cycle group");

    // Shared circuits: simple cycles of the circuit subdiagram, enumerated on
    // name-sorted nodes so both sides agree on the orientation.
    std::vector<std::string> sorted_names = edge.delta;
    std::sort(sorted_names.begin(), sorted_names.end());
    CoxeterMatrix delta_cox(sorted_names);
    int delta_edges = 0;
    for (size_t i = 0; i < sorted_names.size(); ++i)
      for (size_t j = i + 1; j < sorted_names.size(); ++j) {
        int fi = g.facet_index(sorted_names[i]), fj = g.facet_index(sorted_names[j]);
        int label = g.adjacent(fi, fj) ? g.label(fi, fj) : 2;
        delta_cox.set_label(static_cast<int>(i), static_cast<int>(j), label);
        if (label != 2) ++delta_edges;
      }
    auto cycles = GaugedCartan::from_labels(delta_cox).simple_cycle_list();
    std::sort(cycles.begin(), cycles.end());
    const LeafChart& la = chart.leaves[edge.leaf_a];
    const LeafChart& lb = chart.leaves[edge.leaf_b];
    for (const auto& cyc : cycles) {
      std::vector<int> pos_a, pos_b;
      for (int v : cyc.nodes) {
        int fa = la.piece->facet_index(sorted_names[v]);
        int fb = lb.piece->facet_index(sorted_names[v]);
        pos_a.push_back(core_position(la.core, fa));
        pos_b.push_back(core_position(lb.core, fb));
      }
      ec.shared_a.push_back(make_chart_circuit(*la.piece, la.core, pos_a));
      ec.shared_b.push_back(make_chart_circuit(*lb.piece, lb.core, pos_b));
    }
    ec.tree_type = cycles.empty();
    delta_ranks += delta_edges - d + 1;  // circuit subdiagrams are connected
    chart.edges.push_back(std::move(ec));
  }

  chart.shape = chart.leaves.size() > 1 ? ChartCase::Glued : chart.leaves[0].shape;
  chart.dimension = chart.e_plus - chart.d;
  int bookkeeping = static_cast<int>(chart.edges.size()) - delta_ranks;
  for (const auto& leaf : chart.leaves) bookkeeping += leaf.dimension;
  if (bookkeeping != chart.dimension)
    throw std::logic_error("chart dimension bookkeeping broken");
  return chart;
}

namespace {

// ---------------------------------------------------------------------------
// Coordinates -> gauged leaf data: multiplicative triangular substitution.

struct RatioRow {
  std::map<std::pair<int, int>, int> exponents;  // non-forest edge -> net exponent
  Scalar target;
};

RatioRow circuit_row(const GaugedCartan& gc, const std::vector<int>& nodes, const Scalar& target) {
  std::set<std::pair<int, int>> non_forest;
  for (const auto& e : gc.non_forest_edges()) non_forest.insert(e);
  RatioRow row;
  row.target = target;
  const int k = static_cast<int>(nodes.size());
  for (int t = 0; t < k; ++t) {
    int u = nodes[t], v = nodes[(t + 1) % k];
    auto key = std::minmax(u, v);
    std::pair<int, int> e{key.first, key.second};
    if (!non_forest.count(e)) continue;
    row.exponents[e] += (u < v) ? 1 : -1;
    if (row.exponents[e] == 0) row.exponents.erase(e);
  }
  return row;
}

void solve_ratios(GaugedCartan& gc, std::vector<RatioRow> rows, const std::string& where) {
  std::map<std::pair<int, int>, Scalar> solved;
  std::vector<char> done(rows.size(), 0);
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (done[r]) continue;
      Scalar known(1);
      std::pair<int, int> open{-1, -1};
      int open_exp = 0;
      bool multiple = false;
      for (const auto& [e, exp] : rows[r].exponents) {
        auto it = solved.find(e);
        if (it != solved.end()) {
          Scalar p = it->second;
          for (int k = 0; k < std::abs(exp); ++k) known = (exp > 0) ? known * p : known / p;
        } else if (open.first < 0) {
          open = e;
          open_exp = exp;
        } else {
          multiple = true;
        }
      }
      if (multiple) continue;
      if (open.first < 0) {
        if (!scalar_eq(known, rows[r].target))
          throw ConstraintViolatedError("circuit ratios are inconsistent on " + where);
        done[r] = 1;
        progress = true;
        continue;
      }
      Scalar residual = rows[r].target / known;
      Scalar value;
      if (open_exp == 1)
        value = residual;
      else if (open_exp == -1)
        value = Scalar(1) / residual;
      else if (open_exp == 2)
        value = residual.sqrt();
      else if (open_exp == -2)
        value = (Scalar(1) / residual).sqrt();
      else
        throw std::logic_error("unexpected circuit exponent");
      solved.emplace(open, value);
      done[r] = 1;
      progress = true;
    }
  }
  for (size_t r = 0; r < rows.size(); ++r)
    if (!done[r]) throw std::logic_error("chart circuits do not triangularize on " + where);
  for (const auto& e : gc.non_forest_edges()) {
    auto it = solved.find(e);
    if (it == solved.end())
      throw std::logic_error("chart circuits leave a ratio undetermined on " + where);
    gc.set_ratio(e.first, e.second, it->second);
  }
}

PerronType float_perron(const CartanMatrix& a, bool* nonsingular) {
  const int n = a.size();
  std::vector<double> m(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = a.at(i, j).to_double();
  auto leading_det = [&](int k) {
    std::vector<double> w(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) w[i * k + j] = m[i * n + j];
    double det = 1.0;
    for (int c = 0; c < k; ++c) {
      int piv = c;
      for (int r = c + 1; r < k; ++r)
        if (std::fabs(w[r * k + c]) > std::fabs(w[piv * k + c])) piv = r;
      if (std::fabs(w[piv * k + c]) < 1e-14) return 0.0;
      if (piv != c) {
        for (int j = 0; j < k; ++j) std::swap(w[piv * k + j], w[c * k + j]);
        det = -det;
      }
      det *= w[c * k + c];
      for (int r = c + 1; r < k; ++r) {
        double f = w[r * k + c] / w[c * k + c];
        for (int j = c; j < k; ++j) w[r * k + j] -= f * w[c * k + j];
      }
    }
    return det;
  };
  bool head_positive = true;
  for (int k = 1; k < n; ++k) head_positive = head_positive && leading_det(k) > kDeformTolerance;
  double last = leading_det(n);
  *nonsingular = std::fabs(last) > kDeformTolerance;
  if (head_positive && last > kDeformTolerance) return PerronType::Positive;
  if (head_positive && std::fabs(last) <= kDeformTolerance) return PerronType::Zero;
  return PerronType::Negative;
}

void validate_leaf_state(const LeafState& leaf, const std::string& where) {
  PerronType type;
  bool nonsingular;
  try {
    type = leaf.cartan.perron();
    nonsingular = leaf.cartan.nonsingular();
  } catch (const ApproxDataError&) {
    // Ratios whose square roots leave the scalar field: certify approximately.
    type = float_perron(leaf.cartan.materialize(), &nonsingular);
  }
  if (type != PerronType::Negative || !nonsingular)
    throw NotLoxodromicError("core of " + where + " is not of negative type and nonsingular");
}

}  // namespace

DeformationPoint point_from_coordinates(const CellChart& chart, const ChartValues& values) {
  if (values.leaf_ratios.size() != chart.leaves.size())
    throw ValidationError({"leaf coordinate count does not match the chart"});
  if (values.edge_bends.size() != chart.edges.size())
    throw ValidationError({"edge coordinate count does not match the chart"});

  DeformationPoint pt;
  pt.polytope = chart.polytope;
  pt.d = chart.d;

  for (size_t i = 0; i < chart.leaves.size(); ++i) {
    const LeafChart& lc = chart.leaves[i];
    const auto& ratios = values.leaf_ratios[i];
    const std::string where = "leaf " + std::to_string(i);
    if (ratios.size() != lc.circuits.size())
      throw ValidationError({"coordinate count does not match the circuits of " + where});
    for (const auto& r : ratios)
      if (r.sign() <= 0) throw ConstraintViolatedError("circuit ratio must be positive on " + where);
    for (const auto& con : lc.constraints) {
      Scalar prod(1);
      for (const auto& [idx, exp] : con.factors)
        for (int k = 0; k < std::abs(exp); ++k)
          prod = (exp > 0) ? prod * ratios[idx] : prod / ratios[idx];
      if (!scalar_eq(prod, Scalar(1)))
        throw ConstraintViolatedError("declared circuit relation fails on " + where);
    }

    LeafState leaf;
    leaf.piece = lc.piece;
    leaf.core = lc.core;
    leaf.cuts = lc.cuts;
    leaf.cartan = GaugedCartan::from_labels(lc.piece->coxeter_matrix().standard_subgroup(lc.core));
    std::vector<RatioRow> rows;
    for (size_t k = 0; k < lc.circuits.size(); ++k)
      rows.push_back(circuit_row(leaf.cartan, lc.circuits[k].nodes, ratios[k]));
    solve_ratios(leaf.cartan, std::move(rows), where);

    for (const auto& [cut, circuit] : lc.affine_conditions)
      if (scalar_eq(leaf.cartan.cycle_ratio(circuit.nodes), Scalar(1)))
        throw TruncationDegenerateError("cut facet " + lc.piece->facet_names()[cut] + " on " + where +
                                        ": affine link circuit ratio is 1");
    validate_leaf_state(leaf, where);
    pt.leaves.push_back(std::move(leaf));
  }

  for (size_t j = 0; j < chart.edges.size(); ++j) {
    const EdgeChart& ec = chart.edges[j];
    if (values.edge_bends[j].sign() <= 0)
      throw ConstraintViolatedError("bending parameter must be positive on edge " + std::to_string(j));
    for (size_t k = 0; k < ec.shared_a.size(); ++k) {
      Scalar ra = pt.leaves[ec.leaf_a].cartan.cycle_ratio(ec.shared_a[k].nodes);
      Scalar rb = pt.leaves[ec.leaf_b].cartan.cycle_ratio(ec.shared_b[k].nodes);
      if (!scalar_eq(ra, rb))
        throw ConstraintViolatedError("interface circuit " + join_names(ec.shared_a[k].names) +
                                      " has mismatched ratios across edge " + std::to_string(j));
    }
    pt.edges.push_back(EdgeState{ec.leaf_a, ec.leaf_b, ec.delta, values.edge_bends[j]});
  }
  return pt;
}

ChartValues coordinates_of(const CellChart& chart, const DeformationPoint& pt) {
  if (pt.leaves.size() != chart.leaves.size() || pt.edges.size() != chart.edges.size())
    throw ValidationError({"point does not match the chart"});
  ChartValues values;
  for (size_t i = 0; i < chart.leaves.size(); ++i) {
    std::vector<Scalar> ratios;
    for (const auto& c : chart.leaves[i].circuits) ratios.push_back(pt.leaves[i].cartan.cycle_ratio(c.nodes));
    values.leaf_ratios.push_back(std::move(ratios));
  }
  for (const auto& e : pt.edges) values.edge_bends.push_back(e.bend);
  return values;
}

namespace {

// ---------------------------------------------------------------------------
// Leaf frames: row functionals alpha and column vectors b with A_st = alpha_s b_t.

struct LeafFrames {
  std::vector<ScalarVec> alpha;  // by piece facet index
  std::vector<ScalarVec> bvec;
};

LeafFrames leaf_frames(const LeafState& leaf) {
  const LabeledPolytope& piece = *leaf.piece;
  const int d = piece.dim();
  const int nc = d + 1;
  if (static_cast<int>(leaf.core.size()) != nc)
    throw ValidationError({"leaf core size does not match the dimension"});
  CartanMatrix core = leaf.cartan.materialize();
  ScalarMat a = zero_mat(nc, nc);
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j) a[i][j] = core.at(i, j);
  ScalarMat ainv;
  try {
    ainv = inverse(a);
  } catch (const RankDeficientError&) {
    throw NotLoxodromicError("leaf core matrix is singular");
  }

  LeafFrames fr;
  fr.alpha.assign(piece.facet_count(), ScalarVec());
  fr.bvec.assign(piece.facet_count(), ScalarVec());
  for (int i = 0; i < nc; ++i) {
    ScalarVec ei(nc, Scalar(0));
    ei[i] = Scalar(1);
    fr.alpha[leaf.core[i]] = ei;
    ScalarVec col(nc, Scalar(0));
    for (int r = 0; r < nc; ++r) col[r] = a[r][i];
    fr.bvec[leaf.core[i]] = col;
  }
  for (int cut : leaf.cuts) {
    CutLink link = cut_link(piece, leaf.core, cut);
    const int opp = core_position(leaf.core, link.opp);
    std::vector<int> base_pos;
    for (int f : link.base) base_pos.push_back(core_position(leaf.core, f));
    Scalar det_all = leaf.cartan.principal_minor([&] {
      std::vector<int> all(nc);
      for (int i = 0; i < nc; ++i) all[i] = i;
      return all;
    }());
    Scalar det_base = leaf.cartan.principal_minor(base_pos);
    if (!scalar_nonzero(det_base))
      throw TruncationDegenerateError("truncation of " + piece.facet_names()[cut] +
                                      " degenerates: link determinant vanishes");
    Scalar tc = Scalar(2) * det_all / det_base;
    // Split the pair product asymmetrically (-tc, -1): circuits through the cut
    // see only the product, and this choice keeps exact data in the field.
    ScalarVec row(nc, Scalar(0));
    for (int j = 0; j < nc; ++j) row[j] = Scalar(0) - tc * ainv[opp][j];
    fr.alpha[cut] = row;
    ScalarVec col(nc, Scalar(0));
    col[opp] = Scalar(-1);
    fr.bvec[cut] = col;
  }
  for (int f = 0; f < piece.facet_count(); ++f)
    if (fr.alpha[f].empty())
      throw UnsupportedShapeError("leaf facet " + piece.facet_names()[f] +
                                  " is neither core nor cut");
  return fr;
}

ScalarVec row_times_mat(const ScalarVec& row, const ScalarMat& m) {
  const size_t n = m.size(), k = m.empty() ? 0 : m[0].size();
  ScalarVec out(k, Scalar(0));
  for (size_t j = 0; j < k; ++j) {
    Scalar s(0);
    for (size_t i = 0; i < n; ++i) s = s + row[i] * m[i][j];
    out[j] = s;
  }
  return out;
}

struct Placement {
  std::vector<ScalarVec> alpha;  // placed row functionals, by piece facet index
  std::vector<ScalarVec> bvec;   // placed columns
};

/** BFS over the gluing tree, returning per-leaf placed frames. */
std::vector<Placement> place_leaves(const DeformationPoint& pt) {
  const size_t nleaves = pt.leaves.size();
  std::vector<LeafFrames> frames;
  frames.reserve(nleaves);
  for (const auto& leaf : pt.leaves) frames.push_back(leaf_frames(leaf));

  std::vector<Placement> placed(nleaves);
  std::vector<char> done(nleaves, 0);
  placed[0].alpha = frames[0].alpha;
  placed[0].bvec = frames[0].bvec;
  done[0] = 1;

  std::vector<char> edge_used(pt.edges.size(), 0);
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t j = 0; j < pt.edges.size(); ++j) {
      if (edge_used[j]) continue;
      const EdgeState& e = pt.edges[j];
      int parent, child;
      if (done[e.leaf_a] && !done[e.leaf_b]) {
        parent = e.leaf_a;
        child = e.leaf_b;
      } else if (done[e.leaf_b] && !done[e.leaf_a]) {
        parent = e.leaf_b;
        child = e.leaf_a;
      } else if (done[e.leaf_a] && done[e.leaf_b]) {
        throw ValidationError({"gluing edges form a cycle"});
      } else {
        continue;
      }
      edge_used[j] = 1;
      progress = true;

      const LabeledPolytope& pp = *pt.leaves[parent].piece;
      const LabeledPolytope& cp = *pt.leaves[child].piece;
      const std::string cut_name = cut_name_of(e.delta);
      const int np = pp.facet_index(cut_name);
      const int ncut = cp.facet_index(cut_name);
      const int nd = static_cast<int>(e.delta.size());
      std::vector<int> dp(nd), dc(nd);
      for (int t = 0; t < nd; ++t) {
        dp[t] = pp.facet_index(e.delta[t]);
        dc[t] = cp.facet_index(e.delta[t]);
      }

      // Re-gauge the child on the interface so its entries match the placed ones.
      std::vector<Scalar> lambda(nd, Scalar(0));
      std::vector<char> have(nd, 0);
      lambda[0] = Scalar(1);
      have[0] = 1;
      std::vector<std::pair<int, int>> deferred;
      std::queue<int> q;
      q.push(0);
      auto local_entry = [&](int s, int t) { return dot(frames[child].alpha[s], frames[child].bvec[t]); };
      auto placed_entry = [&](int s, int t) { return dot(placed[parent].alpha[s], placed[parent].bvec[t]); };
      while (!q.empty()) {
        int i = q.front();
        q.pop();
        for (int k = 0; k < nd; ++k) {
          if (!cp.adjacent(dc[i], dc[k]) || cp.label(dc[i], dc[k]) == 2) continue;
          if (have[k]) {
            if (k > i) deferred.emplace_back(i, k);
            continue;
          }
          Scalar p = placed_entry(dp[i], dp[k]);
          if (!scalar_nonzero(p)) throw std::logic_error("placed interface entry vanished");
          lambda[k] = lambda[i] * local_entry(dc[i], dc[k]) / p;
          if (lambda[k].sign() <= 0)
            throw ConstraintViolatedError("interface gauge is not positive on " + join_names(e.delta));
          have[k] = 1;
          q.push(k);
        }
      }
      for (int k = 0; k < nd; ++k)
        if (!have[k]) throw std::logic_error("gluing circuit diagram is disconnected");
      for (const auto& [i, k] : deferred) {
        Scalar regauged = lambda[i] * local_entry(dc[i], dc[k]) / lambda[k];
        if (!scalar_eq(regauged, placed_entry(dp[i], dp[k])))
          throw ConstraintViolatedError("interface circuit products differ across " +
                                        join_names(e.delta));
      }
      for (int k = 0; k < nd; ++k) {
        for (auto& v : frames[child].alpha[dc[k]]) v = v * lambda[k];
        for (auto& v : frames[child].bvec[dc[k]]) v = v / lambda[k];
      }

      // Transition: match the interface columns, and glue the identified
      // truncation walls on opposite sides with the bending parameter E.
      // With the stored orientation (leaf_a -> leaf_b) the child wall picks up
      // -1/E; entering the edge backwards inverts the parameter.
      Scalar factor = (parent == e.leaf_a) ? Scalar(-1) / e.bend : Scalar(0) - e.bend;
      const int n = nd + 1;
      ScalarMat target = zero_mat(n, n), local = zero_mat(n, n);
      for (int t = 0; t < nd; ++t)
        for (int r = 0; r < n; ++r) {
          target[r][t] = placed[parent].bvec[dp[t]][r];
          local[r][t] = frames[child].bvec[dc[t]][r];
        }
      for (int r = 0; r < n; ++r) {
        target[r][nd] = factor * placed[parent].bvec[np][r];
        local[r][nd] = frames[child].bvec[ncut][r];
      }
      ScalarMat ginv_local;
      try {
        ginv_local = inverse(local);
      } catch (const RankDeficientError&) {
        throw TruncationDegenerateError("gluing interface " + join_names(e.delta) +
                                        " is degenerate");
      }
      ScalarMat gmap = mat_mul(target, ginv_local);
      ScalarMat gmap_inv;
      try {
        gmap_inv = inverse(gmap);
      } catch (const RankDeficientError&) {
        throw TruncationDegenerateError("gluing transition is singular on " + join_names(e.delta));
      }

      placed[child].alpha.assign(cp.facet_count(), ScalarVec());
      placed[child].bvec.assign(cp.facet_count(), ScalarVec());
      for (int f = 0; f < cp.facet_count(); ++f) {
        placed[child].alpha[f] = row_times_mat(frames[child].alpha[f], gmap_inv);
        placed[child].bvec[f] = mat_vec(gmap, frames[child].bvec[f]);
      }
      done[child] = 1;

      // The interface rows must now coincide with the parent's.
      for (int t = 0; t < nd; ++t)
        for (int r = 0; r < n; ++r)
          if (!scalar_eq(placed[child].alpha[dc[t]][r], placed[parent].alpha[dp[t]][r]))
            throw std::logic_error("interface rows disagree after placement");
    }
  }
  for (size_t l = 0; l < nleaves; ++l)
    if (!done[l]) throw ValidationError({"gluing edges do not connect the leaves"});
  return placed;
}

}  // namespace

CartanMatrix leaf_local_matrix(const LeafState& leaf) {
  LeafFrames fr = leaf_frames(leaf);
  const LabeledPolytope& piece = *leaf.piece;
  CartanMatrix a(piece.facet_names());
  for (int s = 0; s < piece.facet_count(); ++s)
    for (int t = 0; t < piece.facet_count(); ++t) {
      Scalar v = dot(fr.alpha[s], fr.bvec[t]);
      if (s == t) {
        if (!scalar_eq(v, Scalar(2))) throw std::logic_error("leaf diagonal is not 2");
        continue;
      }
      a.set(s, t, v);
    }
  return a;
}

CartanMatrix assemble(const DeformationPoint& pt) {
  if (pt.leaves.empty()) throw ValidationError({"point has no leaves"});
  const LabeledPolytope& g = *pt.polytope;
  std::vector<Placement> placed = place_leaves(pt);

  // Every surviving facet takes its row from the first leaf that carries it.
  const int n = g.facet_count();
  std::vector<std::pair<int, int>> owner(n, {-1, -1});  // (leaf, piece facet)
  for (int s = 0; s < n; ++s) {
    const std::string& name = g.facet_names()[s];
    for (size_t l = 0; l < pt.leaves.size() && owner[s].first < 0; ++l) {
      const auto& names = pt.leaves[l].piece->facet_names();
      auto it = std::find(names.begin(), names.end(), name);
      if (it != names.end()) owner[s] = {static_cast<int>(l), static_cast<int>(it - names.begin())};
    }
    if (owner[s].first < 0)
      throw ValidationError({"facet " + name + " appears in no leaf"});
  }

  CartanMatrix a(g.facet_names());
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const auto& [ls, fs] = owner[s];
      const auto& [lt, ft] = owner[t];
      Scalar v = dot(placed[ls].alpha[fs], placed[lt].bvec[ft]);
      if (s == t) {
        if (!scalar_eq(v, Scalar(2))) throw std::logic_error("assembled diagonal is not 2");
        continue;
      }
      a.set(s, t, v);
    }
  return a;
}

TruncatabilityReport truncatability(const DeformationPoint& pt, int leaf,
                                    const std::vector<std::string>& vertex_names) {
  if (leaf < 0 || leaf >= static_cast<int>(pt.leaves.size()))
    throw ValidationError({"leaf index out of range"});
  const LeafState& ls = pt.leaves[leaf];
  const LabeledPolytope& piece = *ls.piece;
  const int v = piece.vertex_index(vertex_names);
  const std::vector<int>& link = piece.vertices()[v];

  Refinement ref;
  try {
    ref = refine(piece.coxeter_matrix().standard_subgroup(link));
  } catch (const ReducibleError&) {
    return {false, "vertex link diagram is reducible"};
  }
  if (ref.cls == GroupClass::Spherical)
    return {false, "vertex stabilizer is spherical: a real vertex, nothing to truncate"};
  if (ref.lanner) {
    CartanMatrix local = leaf_local_matrix(ls);
    std::vector<int> idx(link.begin(), link.end());
    if (!scalar_nonzero(det([&] {
          ScalarMat m = zero_mat(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
          for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j) m[i][j] = local.at(idx[i], idx[j]);
          return m;
        }())))
      return {false, "compact-simplex link is singular at this point"};
    return {true, "compact simplex link"};
  }
  if (ref.affine_cycle) {
    CartanMatrix local = leaf_local_matrix(ls);
    std::vector<int> walk = affine_cycle_walk(piece, link);
    RatioPair pair = normalized_cyclic_product(local, canonical_circuit(walk));
    Scalar ratio = pair.forward / pair.backward;
    if (scalar_eq(ratio, Scalar(1)))
      return {false, "affine link circuit ratio is 1: the truncation plane degenerates"};
    return {true, "affine cycle link with circuit ratio away from 1"};
  }
  if (ref.cls == GroupClass::Affine) return {false, "affine non-cycle link cannot be truncated"};
  return {false, "link is large but not a compact simplex group"};
}

CutResult cut(const DeformationPoint& pt, const std::vector<std::string>& delta_names) {
  const LabeledPolytope& g = *pt.polytope;
  std::vector<std::string> want = delta_names;
  std::sort(want.begin(), want.end());

  int edge = -1;
  for (size_t j = 0; j < pt.edges.size(); ++j) {
    std::vector<std::string> have = pt.edges[j].delta;
    std::sort(have.begin(), have.end());
    if (have == want) {
      edge = static_cast<int>(j);
      break;
    }
  }
  if (edge < 0) {
    std::vector<int> idx;
    for (const auto& nm : delta_names) idx.push_back(g.facet_index(nm));
    std::sort(idx.begin(), idx.end());
    for (const auto& pc : g.prismatic_circuits())
      if (pc.delta == idx) {
        if (pc.cls == CircuitClass::Essential)
          throw UnsupportedShapeError("only stored gluing edges can be cut; circuit " +
                                      join_names(delta_names) + " is essential but unglued");
        throw NotEssentialError(join_names(delta_names));
      }
    throw NotPrismaticError(join_names(delta_names));
  }

  const EdgeState& es = pt.edges[edge];
  std::vector<int> g_delta;
  for (const auto& nm : es.delta) g_delta.push_back(g.facet_index(nm));
  auto [piece1, piece2] = g.split(g_delta);

  // Partition the leaves by the side of the severed edge.
  std::vector<std::vector<int>> adj(pt.leaves.size());
  for (size_t j = 0; j < pt.edges.size(); ++j) {
    if (static_cast<int>(j) == edge) continue;
    adj[pt.edges[j].leaf_a].push_back(static_cast<int>(j));
    adj[pt.edges[j].leaf_b].push_back(static_cast<int>(j));
  }
  std::vector<char> on_a(pt.leaves.size(), 0);
  std::queue<int> q;
  q.push(es.leaf_a);
  on_a[es.leaf_a] = 1;
  while (!q.empty()) {
    int l = q.front();
    q.pop();
    for (int j : adj[l]) {
      int other = pt.edges[j].leaf_a == l ? pt.edges[j].leaf_b : pt.edges[j].leaf_a;
      if (!on_a[other]) {
        on_a[other] = 1;
        q.push(other);
      }
    }
  }

  // Identify which split piece carries leaf_a: any side facet decides.
  auto side_has = [&](const LabeledPolytope& piece, int leaf_idx) {
    const auto& names = piece.facet_names();
    for (const auto& nm : pt.leaves[leaf_idx].piece->facet_names()) {
      if (std::find(es.delta.begin(), es.delta.end(), nm) != es.delta.end()) continue;
      if (nm.rfind("cut(", 0) == 0 &&
          std::find(names.begin(), names.end(), nm) == names.end())
        continue;  // severed or foreign cut facets do not decide
      if (std::find(names.begin(), names.end(), nm) != names.end()) return true;
    }
    return false;
  };
  bool first_is_a = side_has(piece1, es.leaf_a);

  auto build_side = [&](const LabeledPolytope& piece, bool want_a) {
    DeformationPoint out;
    out.polytope = std::make_shared<LabeledPolytope>(piece);
    out.d = pt.d;
    std::vector<int> remap(pt.leaves.size(), -1);
    for (size_t l = 0; l < pt.leaves.size(); ++l) {
      if (static_cast<bool>(on_a[l]) != want_a) continue;
      remap[l] = static_cast<int>(out.leaves.size());
      out.leaves.push_back(pt.leaves[l]);
    }
    for (size_t j = 0; j < pt.edges.size(); ++j) {
      if (static_cast<int>(j) == edge) continue;
      const EdgeState& e = pt.edges[j];
      if (remap[e.leaf_a] < 0 || remap[e.leaf_b] < 0) continue;
      out.edges.push_back(EdgeState{remap[e.leaf_a], remap[e.leaf_b], e.delta, e.bend});
    }
    return out;
  };

  CutResult result{build_side(first_is_a ? piece1 : piece2, true),
                   build_side(first_is_a ? piece2 : piece1, false), Scalar(1)};

  // Compatibility: the least shared circuit ratio of the severed interface.
  std::vector<std::string> sorted_names = es.delta;
  std::sort(sorted_names.begin(), sorted_names.end());
  CoxeterMatrix delta_cox(sorted_names);
  for (size_t i = 0; i < sorted_names.size(); ++i)
    for (size_t j = i + 1; j < sorted_names.size(); ++j) {
      int fi = g.facet_index(sorted_names[i]), fj = g.facet_index(sorted_names[j]);
      delta_cox.set_label(static_cast<int>(i), static_cast<int>(j),
                          g.adjacent(fi, fj) ? g.label(fi, fj) : 2);
    }
  auto cycles = GaugedCartan::from_labels(delta_cox).simple_cycle_list();
  if (!cycles.empty()) {
    std::sort(cycles.begin(), cycles.end());
    const LeafState& la = pt.leaves[es.leaf_a];
    std::vector<int> positions;
    for (int v : cycles[0].nodes)
      positions.push_back(core_position(la.core, la.piece->facet_index(sorted_names[v])));
    result.compatibility = la.cartan.cycle_ratio(positions);
  }
  return result;
}

EPoly BendingFiberData::n_poly() const {
  EPoly p(k1 * x1);
  return p + EPoly::monomial(1, k1 * y1);
}

EPoly BendingFiberData::d_poly() const {
  EPoly p(k2 * x2);
  return p + EPoly::monomial(-1, k2 * y2);
}

BendingFiberData bending_data(const DeformationPoint& pt, int edge) {
  if (edge < 0 || edge >= static_cast<int>(pt.edges.size()))
    throw ValidationError({"edge index out of range"});
  const LabeledPolytope& g = *pt.polytope;
  const EdgeState& es = pt.edges[edge];

  DeformationPoint pt1 = pt, pt2 = pt;
  pt1.edges[edge].bend = Scalar(1);
  pt2.edges[edge].bend = Scalar(2);
  CartanMatrix a1 = assemble(pt1);
  CartanMatrix a2 = assemble(pt2);

  // Facet sides of the severed tree edge.
  std::vector<std::vector<int>> adj(pt.leaves.size());
  for (size_t j = 0; j < pt.edges.size(); ++j) {
    if (j == static_cast<size_t>(edge)) continue;
    adj[pt.edges[j].leaf_a].push_back(static_cast<int>(j));
    adj[pt.edges[j].leaf_b].push_back(static_cast<int>(j));
  }
  std::vector<char> leaf_on_a(pt.leaves.size(), 0);
  std::queue<int> q;
  q.push(es.leaf_a);
  leaf_on_a[es.leaf_a] = 1;
  while (!q.empty()) {
    int l = q.front();
    q.pop();
    for (int j : adj[l]) {
      int other = pt.edges[j].leaf_a == l ? pt.edges[j].leaf_b : pt.edges[j].leaf_a;
      if (!leaf_on_a[other]) {
        leaf_on_a[other] = 1;
        q.push(other);
      }
    }
  }
  std::set<std::string> delta_set(es.delta.begin(), es.delta.end());
  std::vector<int> side_a, side_b, delta_idx;
  for (int s = 0; s < g.facet_count(); ++s) {
    const std::string& nm = g.facet_names()[s];
    if (delta_set.count(nm)) {
      delta_idx.push_back(s);
      continue;
    }
    bool in_a = false, in_b = false;
    for (size_t l = 0; l < pt.leaves.size(); ++l) {
      const auto& names = pt.leaves[l].piece->facet_names();
      if (std::find(names.begin(), names.end(), nm) == names.end()) continue;
      (leaf_on_a[l] ? in_a : in_b) = true;
    }
    if (in_a && in_b) throw std::logic_error("facet appears on both sides of a tree edge");
    (in_a ? side_a : side_b).push_back(s);
  }
  auto by_name = [&](int x, int y) { return g.facet_names()[x] < g.facet_names()[y]; };
  std::sort(side_a.begin(), side_a.end(), by_name);
  std::sort(side_b.begin(), side_b.end(), by_name);
  std::sort(delta_idx.begin(), delta_idx.end(), by_name);

  // Nonzero at two bends: an entry affine in E (or 1/E) vanishing at both is zero.
  auto nz = [&](int i, int j) {
    return scalar_nonzero(a1.at(i, j)) && scalar_nonzero(a1.at(j, i)) &&
           scalar_nonzero(a2.at(i, j)) && scalar_nonzero(a2.at(j, i));
  };

  // Shortest probe circuit: one facet strictly on each side joined by a path
  // inside the interface, every entry nonzero; ties break by name sequence.
  std::vector<int> probe;
  for (int plen = 1; plen <= static_cast<int>(delta_idx.size()) && probe.empty(); ++plen) {
    std::vector<std::vector<int>> paths;
    std::vector<int> cur;
    std::function<void()> extend = [&]() {
      if (static_cast<int>(cur.size()) == plen) {
        paths.push_back(cur);
        return;
      }
      for (int v : delta_idx) {
        if (std::find(cur.begin(), cur.end(), v) != cur.end()) continue;
        if (!cur.empty() && !nz(cur.back(), v)) continue;
        cur.push_back(v);
        extend();
        cur.pop_back();
      }
    };
    extend();
    std::vector<std::vector<int>> candidates;
    for (const auto& path : paths)
      for (int sl : side_a) {
        if (!nz(sl, path.front())) continue;
        for (int sr : side_b) {
          if (!nz(path.back(), sr) || !nz(sr, sl)) continue;
          std::vector<int> c{sl};
          c.insert(c.end(), path.begin(), path.end());
          c.push_back(sr);
          candidates.push_back(std::move(c));
        }
      }
    auto name_seq = [&](const std::vector<int>& c) {
      std::vector<std::string> s;
      for (int v : c) s.push_back(g.facet_names()[v]);
      return s;
    };
    for (const auto& c : candidates)
      if (probe.empty() || name_seq(c) < name_seq(probe)) probe = c;
  }
  if (probe.empty()) throw NoProbeCircuitError();

  auto forward = [&](const CartanMatrix& m) { return cyclic_product(m, probe); };
  auto backward = [&](const CartanMatrix& m) { return cyclic_product(m, reversed_cycle(probe)); };
  Scalar f1 = forward(a1), f2 = forward(a2);
  Scalar b1 = backward(a1), b2 = backward(a2);

  // Forward product is affine in E, backward affine in 1/E.
  Scalar k1y1 = f2 - f1;
  Scalar k1x1 = Scalar(2) * f1 - f2;
  Scalar k2y2 = Scalar(2) * (b1 - b2);
  Scalar k2x2 = b1 - k2y2;

  BendingFiberData fd;
  fd.d = pt.d;
  for (int v : probe) fd.probe.push_back(g.facet_names()[v]);

  // Independent entries: everything except the side-to-side pair, which is the
  // one entry carrying E. Forward runs the path, backward runs it reversed.
  Scalar ind_f(1), ind_b(1);
  for (size_t t = 0; t + 1 < probe.size(); ++t) ind_f = ind_f * a1.at(probe[t], probe[t + 1]);
  std::vector<int> back(probe.rbegin(), probe.rend());
  for (size_t t = 0; t + 1 < back.size(); ++t) ind_b = ind_b * a1.at(back[t], back[t + 1]);
  fd.k1 = Scalar(0) - ind_f;
  fd.k2 = Scalar(0) - ind_b;
  if (fd.k1.sign() == 0 || fd.k2.sign() == 0 || fd.k1.sign() != fd.k2.sign())
    throw ValidationError({"probe circuit signs are inconsistent"});
  fd.x1 = k1x1 / fd.k1;
  fd.y1 = k1y1 / fd.k1;
  fd.x2 = k2x2 / fd.k2;
  fd.y2 = k2y2 / fd.k2;
  if (fd.x1.sign() <= 0) throw ValidationError({"fiber invariant x1 must be positive"});
  if (fd.y1.sign() <= 0) throw ValidationError({"fiber invariant y1 must be positive"});
  if (fd.x2.sign() <= 0) throw ValidationError({"fiber invariant x2 must be positive"});
  if (fd.y2.sign() <= 0) throw ValidationError({"fiber invariant y2 must be positive"});

  CartanMatrix a0 = assemble(pt);
  if (!scalar_eq(forward(a0), fd.n_poly().eval(es.bend)) ||
      !scalar_eq(backward(a0), fd.d_poly().eval(es.bend)))
    throw std::logic_error("fiber data does not reproduce the probe products");
  return fd;
}

DeformationPoint bend(const DeformationPoint& pt, int edge, const Scalar& factor) {
  if (edge < 0 || edge >= static_cast<int>(pt.edges.size()))
    throw ValidationError({"edge index out of range"});
  if (factor.sign() <= 0) throw NonPositiveBendError();
  DeformationPoint out = pt;
  out.edges[edge].bend = out.edges[edge].bend * factor;
  return out;
}

DeformationPoint bend_log(const DeformationPoint& pt, int edge, double u) {
  return bend(pt, edge, Scalar::approx(std::exp((pt.d + 1) * u)));
}

}  // namespace vinberg
