#include "vinberg/integral.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vinberg {

namespace {

std::string join_names(const std::vector<std::string>& names) {
  std::string s;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) s += ",";
    s += names[i];
  }
  return s;
}

Integer floor_int(const Scalar& s) { return floor_alg(s.exact()); }
Integer ceil_int(const Scalar& s) { return -floor_alg((-s).exact()); }

long to_long(const Integer& v, const char* what) {
  if (!v.fits_slong_p()) throw ValidationError({std::string(what) + " is out of range"});
  return v.get_si();
}

long integer_value(const Scalar& s, const char* what) {
  if (!s.is_integer()) throw BadEdgeProductError(std::string(what) + " is not an integer: " + s.str());
  return to_long(floor_int(s), what);
}

}  // namespace

FeasibilityReport integral_feasible(const LabeledPolytope& g) {
  for (int i = 0; i < g.facet_count(); ++i)
    for (int j = i + 1; j < g.facet_count(); ++j) {
      if (!g.adjacent(i, j)) continue;
      int m = g.label(i, j);
      if (m == 2 || m == 3 || m == 4 || m == 6) continue;
      std::string shown = (m == kInfLabel) ? "oo" : std::to_string(m);
      return {false, "ridge {" + g.facet_names()[i] + "," + g.facet_names()[j] + "} has label " +
                         shown + ", outside {2,3,4,6}"};
    }
  return {true, ""};
}

namespace {

IntegralOutcome check_impl(const DeformationPoint& pt, const std::set<std::string>& excluded) {
  for (size_t l = 0; l < pt.leaves.size(); ++l) {
    const LeafState& leaf = pt.leaves[l];
    GroupClass cls;
    try {
      cls = classify(leaf.piece->coxeter_matrix().standard_subgroup(leaf.core));
    } catch (const ReducibleError&) {
      throw NotLargeIrreducibleError("leaf " + std::to_string(l) + " core is reducible");
    }
    if (cls != GroupClass::Large)
      throw NotLargeIrreducibleError("leaf " + std::to_string(l) + " core is " + to_string(cls));
  }
  CartanMatrix a = assemble(pt);
  if (!a.all_exact()) throw ApproxDataError("integrality check on approximate Cartan data");
  std::vector<int> keep;
  for (int i = 0; i < a.size(); ++i)
    if (!excluded.count(a.names()[i])) keep.push_back(i);
  CartanMatrix sub = a.restrict_to(keep);

  IntegralOutcome out;
  IntegralCertificate cert;
  cert.note =
      "every closed walk on the nonzero-entry graph is a concatenation of the listed "
      "simple cycles and pair products, so their integrality settles all cyclic products";
  for (const auto& [i, j] : sub.adjacency_edges()) {
    Scalar v = sub.at(i, j) * sub.at(j, i);
    std::vector<std::string> nm{sub.names()[i], sub.names()[j]};
    if (!v.is_integer()) {
      out.failure = IntegralFailure{std::move(nm), v, true};
      return out;
    }
    cert.entries.push_back(CertificateEntry{std::move(nm), v, true});
  }
  for (const Circuit& c : simple_cycles(sub)) {
    for (const auto& nodes : {c.nodes, reversed_cycle(c.nodes)}) {
      Scalar v = cyclic_product(sub, nodes);
      std::vector<std::string> nm;
      for (int u : nodes) nm.push_back(sub.names()[u]);
      if (!v.is_integer()) {
        out.failure = IntegralFailure{std::move(nm), v, false};
        return out;
      }
      cert.entries.push_back(CertificateEntry{std::move(nm), v, false});
    }
  }
  out.certificate = std::move(cert);
  return out;
}

}  // namespace

IntegralOutcome integral_check(const DeformationPoint& pt) { return check_impl(pt, {}); }

IntegralOutcome integral_check_excluding(const DeformationPoint& pt,
                                         const std::vector<std::string>& excluded) {
  return check_impl(pt, std::set<std::string>(excluded.begin(), excluded.end()));
}

std::vector<std::pair<long, long>> divisor_pairs(const std::vector<long>& edge_products, int k) {
  long m = 1;
  for (long p : edge_products) {
    if (p < 1 || p > 3)
      throw BadEdgeProductError("circuit edge product " + std::to_string(p) +
                                " is outside {1,2,3}");
    m *= p;
  }
  const long sign = (k % 2 == 0) ? 1 : -1;
  std::vector<std::pair<long, long>> out;
  for (long t = 1; t <= m; ++t)
    if (m % t == 0) out.emplace_back(sign * t, sign * (m / t));
  return out;
}

std::string to_string(ShortcutKind k) {
  switch (k) {
    case ShortcutKind::AffineTruncatedVertex: return "affine-truncated-vertex";
    case ShortcutKind::AffineEssentialCircuit: return "affine-essential-circuit";
  }
  return "?";
}

std::optional<Shortcut> nonexistence_shortcuts(const LabeledPolytope& g) {
  GluingTree tree = g.gluing_tree();
  std::set<std::string> g_names(g.facet_names().begin(), g.facet_names().end());
  for (const auto& node : tree.leaves) {
    const LabeledPolytope& piece = *node.piece;
    auto shape = piece.truncated_simplex_shape();
    if (!shape) continue;
    for (int cut : shape->cuts) {
      // Interface cuts belong to a gluing edge, handled below.
      if (!g_names.count(piece.facet_names()[cut])) continue;
      std::vector<int> base;
      for (int j : shape->core)
        if (piece.adjacent(cut, j)) base.push_back(j);
      try {
        if (refine(piece.coxeter_matrix().standard_subgroup(base)).affine_cycle)
          return Shortcut{ShortcutKind::AffineTruncatedVertex,
                          "truncation facet " + piece.facet_names()[cut] +
                              " has an affine cycle link: its circuit values are forced to "
                              "(+-1, +-1), degenerating the truncation"};
      } catch (const ReducibleError&) {
      }
    }
  }
  for (const auto& edge : tree.edges) {
    std::vector<int> idx;
    bool in_g = true;
    for (const auto& nm : edge.delta) {
      if (!g_names.count(nm)) {
        in_g = false;
        break;
      }
      idx.push_back(g.facet_index(nm));
    }
    if (!in_g) continue;
    try {
      if (refine(g.coxeter_matrix().standard_subgroup(idx)).affine_cycle)
        return Shortcut{ShortcutKind::AffineEssentialCircuit,
                        "gluing circuit " + join_names(edge.delta) +
                            " generates an affine cycle group: its circuit values are forced "
                            "to (+-1, +-1), degenerating the interface"};
    } catch (const ReducibleError&) {
    }
  }
  return std::nullopt;
}

namespace {

// ---------------------------------------------------------------------------
// Fiber arithmetic: exact integer candidates for one bending parameter.

struct FiberBand {
  std::vector<std::pair<long, Scalar>> candidates;  // (n, exact E > 0), n ascending toward the band edge
  Scalar low, high;
};

FiberBand fiber_candidates(const Scalar& k1, const Scalar& x1, const Scalar& y1, const Scalar& k2,
                           const Scalar& x2, const Scalar& y2) {
  for (const Scalar* s : {&k1, &x1, &y1, &k2, &x2, &y2})
    if (!s->is_exact()) throw ApproxDataError("fiber sweep on approximate probe data");
  if (k1.sign() == 0 || k2.sign() == 0 || k1.sign() != k2.sign())
    throw ValidationError({"probe circuit signs are inconsistent"});
  if (x1.sign() <= 0 || y1.sign() <= 0 || x2.sign() <= 0 || y2.sign() <= 0)
    throw ValidationError({"fiber invariants must be positive"});

  FiberBand out;
  const Scalar k1x1 = k1 * x1, k2x2 = k2 * x2;
  const bool pos = k1.sign() > 0;
  // N = K1 x1 + (K1 y1) E is an integer strictly beyond K1 x1; D = K2 x2 + (K2 y2)/E
  // approaches K2 x2 monotonically, so once it passes the last integer beyond
  // K2 x2 no further n can work.
  Integer n = pos ? Integer(floor_int(k1x1) + 1) : Integer(ceil_int(k1x1) - 1);
  Integer m0 = pos ? Integer(floor_int(k2x2) + 1) : Integer(ceil_int(k2x2) - 1);
  const Scalar m0s{Rational(m0)};
  out.high = (k2 * y2) / (m0s - k2x2);
  bool first = true;
  while (true) {
    Scalar e = (Scalar(Rational(n)) / k1 - x1) / y1;
    if (e.sign() <= 0) throw std::logic_error("fiber candidate left the positive axis");
    if (first) {
      out.low = e;
      first = false;
    }
    Scalar d = k2 * (x2 + y2 / e);
    int rel = (d - m0s).sign();
    if (pos ? rel < 0 : rel > 0) break;
    if (d.is_integer()) out.candidates.emplace_back(to_long(n, "fiber integer"), e);
    n += pos ? 1 : -1;
  }
  if (first) out.low = out.high;
  return out;
}

FiberSweep sweep_impl(const DeformationPoint& pt, int edge, const std::set<std::string>& excluded) {
  BendingFiberData fd = bending_data(pt, edge);
  FiberBand band = fiber_candidates(fd.k1, fd.x1, fd.y1, fd.k2, fd.x2, fd.y2);
  FiberSweep out;
  out.band_low = band.low;
  out.band_high = band.high;
  out.probe = fd.probe;
  for (const auto& [n, e] : band.candidates) {
    DeformationPoint cand = pt;
    cand.edges[edge].bend = e;
    IntegralOutcome oc = check_impl(cand, excluded);
    if (!oc.ok()) continue;
    FiberCandidate fc;
    fc.n = n;
    fc.bend = e;
    fc.backward = fd.d_poly().eval(e);
    fc.certificate = *oc.certificate;
    out.survivors.push_back(std::move(fc));
  }
  return out;
}

}  // namespace

FiberSweep fiber_sweep(const DeformationPoint& pt, int edge) { return sweep_impl(pt, edge, {}); }

FiberSweep fiber_sweep_excluding(const DeformationPoint& pt, int edge,
                                 const std::vector<std::string>& excluded) {
  return sweep_impl(pt, edge, std::set<std::string>(excluded.begin(), excluded.end()));
}

namespace {

// ---------------------------------------------------------------------------
// Enumeration: divisor pairs per leaf circuit, fiber integers per gluing edge.

struct RecCandidate {
  ChartValues values;
  IntegralCertificate cert;
  Provenance prov;
};

std::vector<long> circuit_edge_products(const LabeledPolytope& piece, const std::vector<int>& core,
                                        const ChartCircuit& c) {
  std::vector<long> out;
  const int k = static_cast<int>(c.nodes.size());
  for (int t = 0; t < k; ++t) {
    int u = core[c.nodes[t]], v = core[c.nodes[(t + 1) % k]];
    out.push_back(integer_value(edge_product_value(piece.label(u, v)), "circuit edge product"));
  }
  return out;
}

std::vector<RecCandidate> leaf_candidates(const CellChart& chart,
                                          const std::set<std::string>& excluded) {
  const LeafChart& lc = chart.leaves[0];
  std::vector<std::vector<std::pair<long, long>>> options;
  for (const auto& c : lc.circuits)
    options.push_back(
        divisor_pairs(circuit_edge_products(*lc.piece, lc.core, c), static_cast<int>(c.nodes.size())));

  std::vector<RecCandidate> out;
  std::vector<size_t> pick(options.size(), 0);
  while (true) {
    RecCandidate rc;
    rc.values.leaf_ratios.emplace_back();
    for (size_t i = 0; i < options.size(); ++i) {
      auto [cf, cb] = options[i][pick[i]];
      rc.values.leaf_ratios[0].push_back(Scalar(cf) / Scalar(cb));
      rc.prov.trail.push_back("circuit " + join_names(lc.circuits[i].names) + ": (C, C~) = (" +
                              std::to_string(cf) + ", " + std::to_string(cb) + ")");
    }
    try {
      DeformationPoint pt = point_from_coordinates(chart, rc.values);
      IntegralOutcome oc = check_impl(pt, excluded);
      if (oc.ok()) {
        rc.cert = std::move(*oc.certificate);
        out.push_back(std::move(rc));
      }
    } catch (const ConstraintViolatedError&) {
    } catch (const NotLoxodromicError&) {
    } catch (const TruncationDegenerateError&) {
    }
    size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < options[i].size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
  }
  return out;
}

std::vector<std::string> name_key(const LabeledPolytope& p) {
  std::vector<std::string> k = p.facet_names();
  std::sort(k.begin(), k.end());
  return k;
}

/** Ratio of one chart circuit read off a solved leaf, mapping facets by name. */
Scalar circuit_ratio_on(const LeafState& leaf, const ChartCircuit& c) {
  std::vector<int> nodes;
  for (const auto& nm : c.names) {
    int f = leaf.piece->facet_index(nm);
    auto it = std::find(leaf.core.begin(), leaf.core.end(), f);
    if (it == leaf.core.end()) throw std::logic_error("chart circuit leaves the core");
    nodes.push_back(static_cast<int>(it - leaf.core.begin()));
  }
  return leaf.cartan.cycle_ratio(nodes);
}

std::vector<RecCandidate> enumerate_rec(const LabeledPolytope& h,
                                        const std::set<std::string>& excluded,
                                        const EnumerateOptions& opts);

std::vector<RecCandidate> glued_candidates(const LabeledPolytope& h, const CellChart& chart,
                                           const std::set<std::string>& excluded,
                                           const EnumerateOptions& opts) {
  // Deterministic split: the edge with the lexicographically least circuit.
  size_t pick = 0;
  std::vector<std::string> best;
  for (size_t e = 0; e < chart.edges.size(); ++e) {
    std::vector<std::string> key = chart.edges[e].delta;
    std::sort(key.begin(), key.end());
    if (e == 0 || key < best) {
      best = key;
      pick = e;
    }
  }
  const EdgeChart& ec = chart.edges[pick];
  std::vector<int> gdelta;
  for (const auto& nm : ec.delta) gdelta.push_back(h.facet_index(nm));
  auto sides = h.split(gdelta);

  // leaf_a's side is the piece holding any of its facets beyond the interface.
  std::set<std::string> delta_set(ec.delta.begin(), ec.delta.end());
  auto holds_leaf_a = [&](const LabeledPolytope& p) {
    std::set<std::string> names(p.facet_names().begin(), p.facet_names().end());
    for (const auto& nm : chart.leaves[ec.leaf_a].piece->facet_names())
      if (!delta_set.count(nm) && names.count(nm)) return true;
    return false;
  };
  const LabeledPolytope& pa = holds_leaf_a(sides.first) ? sides.first : sides.second;
  const LabeledPolytope& pb = holds_leaf_a(sides.first) ? sides.second : sides.first;

  std::set<std::string> h_names(h.facet_names().begin(), h.facet_names().end());
  auto side_excluded = [&](const LabeledPolytope& p) {
    std::set<std::string> ex;
    for (const auto& nm : p.facet_names()) {
      if (excluded.count(nm)) ex.insert(nm);
      if (!h_names.count(nm)) ex.insert(nm);  // the fresh interface cut
    }
    return ex;
  };

  std::vector<RecCandidate> ra, rb;
  if (opts.parallel > 1) {
    auto fa = std::async(std::launch::async,
                         [&] { return enumerate_rec(pa, side_excluded(pa), opts); });
    rb = enumerate_rec(pb, side_excluded(pb), opts);
    ra = fa.get();
  } else {
    ra = enumerate_rec(pa, side_excluded(pa), opts);
    rb = enumerate_rec(pb, side_excluded(pb), opts);
  }
  if (ra.empty() || rb.empty()) return {};

  CellChart ca = cell_chart(pa);
  CellChart cb = cell_chart(pb);

  // Transfer tables: every chart leaf and every kept edge lives on one side.
  std::vector<std::pair<int, int>> leaf_src(chart.leaves.size(), {-1, -1});
  for (size_t i = 0; i < chart.leaves.size(); ++i) {
    auto key = name_key(*chart.leaves[i].piece);
    for (size_t j = 0; j < ca.leaves.size(); ++j)
      if (name_key(*ca.leaves[j].piece) == key) leaf_src[i] = {0, static_cast<int>(j)};
    for (size_t j = 0; j < cb.leaves.size(); ++j)
      if (name_key(*cb.leaves[j].piece) == key) leaf_src[i] = {1, static_cast<int>(j)};
    if (leaf_src[i].first < 0) throw std::logic_error("leaf piece lost by the split");
  }
  std::vector<std::pair<int, int>> edge_src(chart.edges.size(), {-1, -1});
  for (size_t e = 0; e < chart.edges.size(); ++e) {
    if (e == pick) continue;
    std::vector<std::string> key = chart.edges[e].delta;
    std::sort(key.begin(), key.end());
    auto scan = [&](const CellChart& side, int tag) {
      for (size_t j = 0; j < side.edges.size(); ++j) {
        std::vector<std::string> k2 = side.edges[j].delta;
        std::sort(k2.begin(), k2.end());
        if (k2 == key) edge_src[e] = {tag, static_cast<int>(j)};
      }
    };
    scan(ca, 0);
    scan(cb, 1);
    if (edge_src[e].first < 0) throw std::logic_error("gluing edge lost by the split");
  }

  // Side candidates solved once; circuit ratios are read off by facet name, so
  // facet-order differences between the split pieces cannot misalign them.
  std::vector<DeformationPoint> pts_a, pts_b;
  pts_a.reserve(ra.size());
  for (const auto& a : ra) pts_a.push_back(point_from_coordinates(ca, a.values));
  pts_b.reserve(rb.size());
  for (const auto& b : rb) pts_b.push_back(point_from_coordinates(cb, b.values));

  auto process_pair = [&](size_t ia, size_t ib) {
    std::vector<RecCandidate> found;
    ChartValues v;
    v.leaf_ratios.resize(chart.leaves.size());
    v.edge_bends.assign(chart.edges.size(), Scalar(1));
    for (size_t i = 0; i < chart.leaves.size(); ++i) {
      const auto& [side, j] = leaf_src[i];
      const DeformationPoint& sp = side == 0 ? pts_a[ia] : pts_b[ib];
      for (const auto& c : chart.leaves[i].circuits)
        v.leaf_ratios[i].push_back(circuit_ratio_on(sp.leaves[j], c));
    }
    for (size_t e = 0; e < chart.edges.size(); ++e) {
      if (e == pick) continue;
      const auto& [side, j] = edge_src[e];
      v.edge_bends[e] = (side == 0 ? ra[ia] : rb[ib]).values.edge_bends[j];
    }
    DeformationPoint pt;
    try {
      pt = point_from_coordinates(chart, v);
    } catch (const ConstraintViolatedError&) {
      return found;  // interface circuit ratios disagree: not a matching pair
    }
    FiberSweep sweep = sweep_impl(pt, static_cast<int>(pick), excluded);
    for (const auto& fc : sweep.survivors) {
      RecCandidate rc;
      rc.values = v;
      rc.values.edge_bends[pick] = fc.bend;
      rc.cert = fc.certificate;
      rc.prov = ra[ia].prov;
      for (const auto& line : rb[ib].prov.trail) rc.prov.trail.push_back(line);
      rc.prov.trail.push_back("interface " + join_names(ec.delta) + ": n = " + std::to_string(fc.n) +
                              ", E = " + fc.bend.str());
      found.push_back(std::move(rc));
    }
    return found;
  };

  std::vector<RecCandidate> out;
  if (opts.parallel > 1) {
    std::vector<std::future<std::vector<RecCandidate>>> futs;
    for (size_t ia = 0; ia < ra.size(); ++ia)
      for (size_t ib = 0; ib < rb.size(); ++ib)
        futs.push_back(std::async(std::launch::async, process_pair, ia, ib));
    for (auto& f : futs)
      for (auto& rc : f.get()) out.push_back(std::move(rc));
  } else {
    for (size_t ia = 0; ia < ra.size(); ++ia)
      for (size_t ib = 0; ib < rb.size(); ++ib)
        for (auto& rc : process_pair(ia, ib)) out.push_back(std::move(rc));
  }
  return out;
}

std::vector<RecCandidate> enumerate_rec(const LabeledPolytope& h,
                                        const std::set<std::string>& excluded,
                                        const EnumerateOptions& opts) {
  CellChart chart;
  try {
    chart = cell_chart(h);
  } catch (const EmptyCellError&) {
    return {};
  }
  if (chart.edges.empty()) return leaf_candidates(chart, excluded);
  return glued_candidates(h, chart, excluded, opts);
}

std::string values_key(const ChartValues& v) {
  std::string s;
  for (const auto& lr : v.leaf_ratios) {
    for (const auto& r : lr) s += r.str() + ";";
    s += "|";
  }
  for (const auto& b : v.edge_bends) s += b.str() + ";";
  return s;
}

std::vector<IntegralPoint> finish(const CellChart& chart, std::vector<RecCandidate> recs,
                                  const EnumerateOptions& opts) {
  std::sort(recs.begin(), recs.end(), [](const RecCandidate& a, const RecCandidate& b) {
    return values_key(a.values) < values_key(b.values);
  });
  std::vector<IntegralPoint> out;
  for (auto& r : recs) {
    IntegralPoint ip;
    ip.point = point_from_coordinates(chart, r.values);
    ip.values = std::move(r.values);
    ip.certificate = std::move(r.cert);
    ip.provenance = std::move(r.prov);
    out.push_back(std::move(ip));
  }
  if (opts.quotient_symmetry && !out.empty()) {
    auto perms = label_symmetries(*chart.polytope);
    std::set<std::string> seen;
    std::vector<IntegralPoint> kept;
    for (auto& p : out) {
      CartanMatrix a = assemble(p.point);
      std::string orbit;
      for (const auto& perm : perms) {
        std::string s;
        for (int i = 0; i < a.size(); ++i)
          for (int j = 0; j < a.size(); ++j) s += a.at(perm[i], perm[j]).str() + ",";
        if (orbit.empty() || s < orbit) orbit = s;
      }
      if (seen.insert(orbit).second) kept.push_back(std::move(p));
    }
    out = std::move(kept);
  }
  return out;
}

void validate_enumeration_input(const LabeledPolytope& g) {
  if (!g.is_truncation_polytope()) throw NotTruncationPolytopeError();
  if (g.dim() < 3 || g.dim() > 9)
    throw BadDimensionError("integral enumeration covers dimensions 3 through 9, got " +
                            std::to_string(g.dim()));
}

}  // namespace

std::vector<IntegralPoint> enumerate_integral(const LabeledPolytope& g,
                                              const EnumerateOptions& opts) {
  validate_enumeration_input(g);
  if (!integral_feasible(g).feasible) return {};
  if (nonexistence_shortcuts(g).has_value()) return {};
  CellChart chart;
  try {
    chart = cell_chart(g);
  } catch (const EmptyCellError&) {
    return {};
  }
  std::vector<RecCandidate> recs = chart.edges.empty()
                                       ? leaf_candidates(chart, {})
                                       : glued_candidates(g, chart, {}, opts);
  return finish(chart, std::move(recs), opts);
}

std::vector<IntegralPoint> enumerate_leaf(const CellChart& chart) {
  if (chart.leaves.size() != 1 || !chart.edges.empty())
    throw ValidationError({"leaf enumeration expects a single-leaf chart"});
  if (!integral_feasible(*chart.polytope).feasible) return {};
  return finish(chart, leaf_candidates(chart, {}), {});
}

namespace {

// ---------------------------------------------------------------------------
// Direct oracle: probes confined to an edge's two adjacent leaves, so each
// bending parameter is solved independently of the others.

struct DirectProbe {
  Scalar k1, x1, y1, k2, x2, y2;
  std::vector<int> circuit;  // assembled-matrix indices, forward order
};

DirectProbe direct_probe(const LabeledPolytope& g, const CellChart& chart,
                         const DeformationPoint& base_pt, size_t e) {
  const EdgeChart& ec = chart.edges[e];
  DeformationPoint q = base_pt;
  for (auto& ed : q.edges) ed.bend = Scalar(1);
  CartanMatrix a1 = assemble(q);
  q.edges[e].bend = Scalar(2);
  CartanMatrix a2 = assemble(q);
  q.edges[e].bend = Scalar(4);
  CartanMatrix a4 = assemble(q);

  std::set<std::string> delta_set(ec.delta.begin(), ec.delta.end());
  std::set<std::string> g_names(g.facet_names().begin(), g.facet_names().end());
  auto adjacent_leaf_facets = [&](int leaf) {
    std::vector<int> out;
    for (const auto& nm : chart.leaves[leaf].piece->facet_names())
      if (!delta_set.count(nm) && g_names.count(nm)) out.push_back(g.facet_index(nm));
    std::sort(out.begin(), out.end(),
              [&](int x, int y) { return g.facet_names()[x] < g.facet_names()[y]; });
    return out;
  };
  std::vector<int> side_a = adjacent_leaf_facets(ec.leaf_a);
  std::vector<int> side_b = adjacent_leaf_facets(ec.leaf_b);
  std::vector<std::string> dnames = ec.delta;
  std::sort(dnames.begin(), dnames.end());
  std::vector<int> delta_idx;
  for (const auto& nm : dnames) delta_idx.push_back(g.facet_index(nm));

  auto nz = [&](int i, int j) {
    return !a1.at(i, j).is_zero() && !a1.at(j, i).is_zero() && !a2.at(i, j).is_zero() &&
           !a2.at(j, i).is_zero();
  };
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
    auto name_seq = [&](const std::vector<int>& c) {
      std::vector<std::string> s;
      for (int v : c) s.push_back(g.facet_names()[v]);
      return s;
    };
    for (const auto& path : paths)
      for (int sl : side_a) {
        if (!nz(sl, path.front())) continue;
        for (int sr : side_b) {
          if (!nz(path.back(), sr) || !nz(sr, sl)) continue;
          std::vector<int> c{sl};
          c.insert(c.end(), path.begin(), path.end());
          c.push_back(sr);
          if (probe.empty() || name_seq(c) < name_seq(probe)) probe = c;
        }
      }
  }
  if (probe.empty()) throw NoProbeCircuitError();

  auto forward = [&](const CartanMatrix& m) { return cyclic_product(m, probe); };
  auto backward = [&](const CartanMatrix& m) { return cyclic_product(m, reversed_cycle(probe)); };
  Scalar f1 = forward(a1), f2 = forward(a2), f4 = forward(a4);
  Scalar b1 = backward(a1), b2 = backward(a2), b4 = backward(a4);
  Scalar k1y1 = f2 - f1;
  Scalar k1x1 = Scalar(2) * f1 - f2;
  Scalar k2y2 = Scalar(2) * (b1 - b2);
  Scalar k2x2 = b1 - k2y2;
  if (f4 != k1x1 + Scalar(4) * k1y1 || b4 != k2x2 + k2y2 / Scalar(4))
    throw std::logic_error("probe product is not degree-one in the bend");
  for (size_t f = 0; f < chart.edges.size(); ++f) {
    if (f == e) continue;
    DeformationPoint r = base_pt;
    for (auto& ed : r.edges) ed.bend = Scalar(1);
    r.edges[f].bend = Scalar(2);
    CartanMatrix af = assemble(r);
    if (forward(af) != f1 || backward(af) != b1)
      throw std::logic_error("probe product leaks into another edge's bend");
  }

  DirectProbe out;
  out.circuit = probe;
  Scalar ind_f(1), ind_b(1);
  for (size_t t = 0; t + 1 < probe.size(); ++t) ind_f = ind_f * a1.at(probe[t], probe[t + 1]);
  std::vector<int> back(probe.rbegin(), probe.rend());
  for (size_t t = 0; t + 1 < back.size(); ++t) ind_b = ind_b * a1.at(back[t], back[t + 1]);
  out.k1 = -ind_f;
  out.k2 = -ind_b;
  if (out.k1.sign() == 0 || out.k2.sign() == 0 || out.k1.sign() != out.k2.sign())
    throw ValidationError({"probe circuit signs are inconsistent"});
  out.x1 = k1x1 / out.k1;
  out.y1 = k1y1 / out.k1;
  out.x2 = k2x2 / out.k2;
  out.y2 = k2y2 / out.k2;
  return out;
}

}  // namespace

std::vector<IntegralPoint> enumerate_direct(const LabeledPolytope& g,
                                            const EnumerateOptions& opts) {
  validate_enumeration_input(g);
  if (!integral_feasible(g).feasible) return {};
  CellChart chart;
  try {
    chart = cell_chart(g);
  } catch (const EmptyCellError&) {
    return {};
  }

  struct Slot {
    size_t leaf, circuit;
    std::vector<std::pair<long, long>> pairs;
  };
  std::vector<Slot> slots;
  for (size_t l = 0; l < chart.leaves.size(); ++l) {
    const LeafChart& lc = chart.leaves[l];
    for (size_t c = 0; c < lc.circuits.size(); ++c)
      slots.push_back({l, c,
                       divisor_pairs(circuit_edge_products(*lc.piece, lc.core, lc.circuits[c]),
                                     static_cast<int>(lc.circuits[c].nodes.size()))});
  }

  std::vector<RecCandidate> recs;
  std::vector<size_t> pick(slots.size(), 0);
  while (true) {
    RecCandidate rc;
    rc.values.leaf_ratios.assign(chart.leaves.size(), {});
    rc.values.edge_bends.assign(chart.edges.size(), Scalar(1));
    for (size_t i = 0; i < slots.size(); ++i) {
      auto [cf, cb] = slots[i].pairs[pick[i]];
      rc.values.leaf_ratios[slots[i].leaf].push_back(Scalar(cf) / Scalar(cb));
      rc.prov.trail.push_back(
          "circuit " + join_names(chart.leaves[slots[i].leaf].circuits[slots[i].circuit].names) +
          ": (C, C~) = (" + std::to_string(cf) + ", " + std::to_string(cb) + ")");
    }
    [&]() {
      DeformationPoint pt0;
      try {
        pt0 = point_from_coordinates(chart, rc.values);
      } catch (const ConstraintViolatedError&) {
        return;
      } catch (const NotLoxodromicError&) {
        return;
      } catch (const TruncationDegenerateError&) {
        return;
      }
      std::vector<std::vector<std::pair<long, Scalar>>> ecands(chart.edges.size());
      for (size_t e = 0; e < chart.edges.size(); ++e) {
        DirectProbe dp = direct_probe(g, chart, pt0, e);
        ecands[e] = fiber_candidates(dp.k1, dp.x1, dp.y1, dp.k2, dp.x2, dp.y2).candidates;
        if (ecands[e].empty()) return;
      }
      std::vector<size_t> epick(chart.edges.size(), 0);
      while (true) {
        RecCandidate cand = rc;
        for (size_t e = 0; e < chart.edges.size(); ++e) {
          const auto& [n, bend] = ecands[e][epick[e]];
          cand.values.edge_bends[e] = bend;
          cand.prov.trail.push_back("interface " + join_names(chart.edges[e].delta) +
                                    ": n = " + std::to_string(n) + ", E = " + bend.str());
        }
        DeformationPoint pt = pt0;
        for (size_t e = 0; e < chart.edges.size(); ++e)
          pt.edges[e].bend = cand.values.edge_bends[e];
        IntegralOutcome oc = check_impl(pt, {});
        if (oc.ok()) {
          cand.cert = std::move(*oc.certificate);
          recs.push_back(std::move(cand));
        }
        size_t e = 0;
        for (; e < epick.size(); ++e) {
          if (++epick[e] < ecands[e].size()) break;
          epick[e] = 0;
        }
        if (e == epick.size()) break;
      }
    }();
    size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < slots[i].pairs.size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
  }
  return finish(chart, std::move(recs), opts);
}

std::vector<std::vector<int>> label_symmetries(const LabeledPolytope& g) {
  const int n = g.facet_count();
  std::vector<std::vector<int>> out;
  std::vector<int> perm(n, -1);
  std::vector<char> used(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      std::map<std::string, std::string> nm;
      for (int k = 0; k < n; ++k) nm[g.facet_names()[k]] = g.facet_names()[perm[k]];
      if (g.matches_under(g, nm)) out.push_back(perm);
      return;
    }
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) {
        bool adj1 = g.adjacent(i, k), adj2 = g.adjacent(j, perm[k]);
        ok = adj1 == adj2 && (!adj1 || g.label(i, k) == g.label(j, perm[k]));
      }
      if (!ok) continue;
      perm[i] = j;
      used[j] = 1;
      rec(i + 1);
      used[j] = 0;
      perm[i] = -1;
    }
  };
  rec(0);
  return out;
}

}  // namespace vinberg
