#include "vinberg/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "vinberg/errors.hpp"

namespace vinberg {

namespace {

Json rational_to_json(const Rational& q) {
  if (q.get_den() == 1) {
    if (q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
    return Json(q.get_num().get_str());
  }
  return Json(q.get_num().get_str() + "/" + q.get_den().get_str());
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      Rational r(s);
      // canonicalize() traps on a zero denominator instead of throwing
      if (r.get_den() == 0) throw std::invalid_argument(s);
      r.canonicalize();
      return r;
    } catch (const std::exception&) {
      throw ParseError("bad rational literal: " + s);
    }
  }
  throw ParseError("expected a rational (integer or \"p/q\" string)");
}

}  // namespace

Json scalar_to_json(const Scalar& s) {
  if (!s.is_exact()) return Json{{"approx", s.to_double()}};
  const AlgScalar& v = s.exact();
  if (v.b == 0 && v.c == 0 && v.d == 0) return rational_to_json(v.a);
  return Json::array(
      {rational_to_json(v.a), rational_to_json(v.b), rational_to_json(v.c), rational_to_json(v.d)});
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_object()) {
    if (!j.contains("approx") || !j["approx"].is_number())
      throw ParseError("scalar object must be {\"approx\": number}");
    return Scalar::approx(j["approx"].get<double>());
  }
  if (j.is_array()) {
    if (j.size() != 4) throw ParseError("a field element has 4 rational components");
    return Scalar(AlgScalar(rational_from_json(j[0]), rational_from_json(j[1]),
                            rational_from_json(j[2]), rational_from_json(j[3])));
  }
  return Scalar(rational_from_json(j));
}

Json label_to_json(int label) {
  if (label == kInfLabel) return Json("inf");
  return Json(label);
}

int label_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "oo") return kInfLabel;
    throw ParseError("bad ridge label: " + s);
  }
  if (!j.is_number_integer()) throw ParseError("ridge label must be an integer or \"inf\"");
  int v = j.get<int>();
  if (v == kInfLabel) return kInfLabel;
  if (v < 2) throw ParseError("ridge label must be >= 2 or \"inf\"");
  return v;
}

Json coxeter_to_json(const CoxeterMatrix& m) {
  Json j;
  j["type"] = "coxeter";
  j["names"] = m.names();
  Json rows = Json::array();
  for (int i = 0; i < m.rank(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.rank(); ++k)
      row.push_back(i == k ? Json(1) : label_to_json(m.label(i, k)));
    rows.push_back(std::move(row));
  }
  j["labels"] = std::move(rows);
  return j;
}

CoxeterMatrix coxeter_from_json(const Json& j) {
  std::vector<std::string> names = j.at("names").get<std::vector<std::string>>();
  CoxeterMatrix m(names);
  const Json& rows = j.at("labels");
  if (rows.size() != names.size()) throw ParseError("label matrix rows do not match the names");
  for (size_t i = 0; i < names.size(); ++i) {
    if (rows[i].size() != names.size())
      throw ParseError("label matrix columns do not match the names");
    if (!(rows[i][i].is_number_integer() && rows[i][i].get<int>() == 1))
      throw ParseError("diagonal label at " + names[i] + " must be 1");
    for (size_t k = i + 1; k < names.size(); ++k) {
      int v = label_from_json(rows[i][k]);
      int w = label_from_json(rows[k][i]);
      if (v != w) throw ParseError("label matrix is not symmetric at (" + names[i] + "," + names[k] + ")");
      m.set_label(static_cast<int>(i), static_cast<int>(k), v);
    }
  }
  return m;
}

Json cartan_to_json(const CartanMatrix& a) {
  Json j;
  j["type"] = "cartan";
  j["names"] = a.names();
  Json rows = Json::array();
  for (int i = 0; i < a.size(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < a.size(); ++k) row.push_back(scalar_to_json(a.at(i, k)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

CartanMatrix cartan_from_json(const Json& j) {
  std::vector<std::string> names = j.at("names").get<std::vector<std::string>>();
  CartanMatrix a(names);
  const Json& rows = j.at("entries");
  if (rows.size() != names.size()) throw ParseError("entry matrix rows do not match the names");
  for (size_t i = 0; i < names.size(); ++i) {
    if (rows[i].size() != names.size())
      throw ParseError("entry matrix columns do not match the names");
    for (size_t k = 0; k < names.size(); ++k)
      a.set(static_cast<int>(i), static_cast<int>(k), scalar_from_json(rows[i][k]));
  }
  return a;
}

namespace {

std::map<std::pair<int, int>, int> labels_from_triples(const Json& j,
                                                       const std::vector<std::string>& names,
                                                       bool fill_default) {
  std::map<std::string, int> index;
  for (size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
  std::map<std::pair<int, int>, int> labels;
  if (fill_default)
    for (size_t i = 0; i < names.size(); ++i)
      for (size_t k = i + 1; k < names.size(); ++k)
        labels[{static_cast<int>(i), static_cast<int>(k)}] = 2;
  for (const Json& t : j) {
    if (!t.is_array() || t.size() != 3) throw ParseError("ridge label entries are [a, b, label]");
    auto ia = index.find(t[0].get<std::string>());
    auto ib = index.find(t[1].get<std::string>());
    if (ia == index.end() || ib == index.end())
      throw ParseError("ridge label names an unknown facet");
    int lo = std::min(ia->second, ib->second), hi = std::max(ia->second, ib->second);
    if (lo == hi) throw ParseError("ridge label repeats a facet");
    labels[{lo, hi}] = label_from_json(t[2]);
  }
  return labels;
}

std::map<std::string, std::string> name_map_from_json(const Json& j) {
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value().get<std::string>();
  return out;
}

LabeledPolytope build_polytope(const Json& j) {
  if (!j.is_object() || !j.contains("op")) throw ParseError("polytope recipe needs an \"op\"");
  const std::string op = j.at("op").get<std::string>();
  if (op == "simplex") {
    std::vector<std::string> names = j.at("names").get<std::vector<std::string>>();
    return LabeledPolytope::simplex(j.at("dim").get<int>(), names,
                                    labels_from_triples(j.at("labels"), names, true));
  }
  if (op == "truncate") {
    LabeledPolytope p = build_polytope(j.at("base"));
    for (const Json& v : j.at("vertices"))
      p = p.truncate(v.get<std::vector<std::string>>());
    return p;
  }
  if (op == "glue") {
    LabeledPolytope left = build_polytope(j.at("left"));
    LabeledPolytope right = build_polytope(j.at("right"));
    return LabeledPolytope::glue(left, j.at("left_vertex").get<std::vector<std::string>>(), right,
                                 j.at("right_vertex").get<std::vector<std::string>>(),
                                 name_map_from_json(j.at("phi")));
  }
  if (op == "glue-at") {
    LabeledPolytope left = build_polytope(j.at("left"));
    LabeledPolytope right = build_polytope(j.at("right"));
    return LabeledPolytope::glue_at(left, j.at("cut_left").get<std::string>(), right,
                                    j.at("cut_right").get<std::string>(),
                                    name_map_from_json(j.at("phi")));
  }
  if (op == "lattice") {
    std::vector<std::string> names = j.at("names").get<std::vector<std::string>>();
    std::map<std::string, int> index;
    for (size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> vertices;
    for (const Json& v : j.at("vertices")) {
      std::vector<int> vert;
      for (const Json& nm : v) {
        auto it = index.find(nm.get<std::string>());
        if (it == index.end()) throw ParseError("vertex names an unknown facet");
        vert.push_back(it->second);
      }
      std::sort(vert.begin(), vert.end());
      vertices.push_back(std::move(vert));
    }
    return LabeledPolytope::from_lattice(j.at("dim").get<int>(), names,
                                         labels_from_triples(j.at("labels"), names, false),
                                         std::move(vertices));
  }
  throw ParseError("unknown polytope op: " + op);
}

}  // namespace

PolytopeDoc polytope_from_json(const Json& j) {
  try {
    return PolytopeDoc{build_polytope(j), j};
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad polytope document: ") + e.what());
  }
}

Json polytope_recipe_json(const Json& source) { return source; }

Json point_to_json(const DeformationPoint& pt, const Json& polytope_source) {
  Json j;
  j["type"] = "point";
  j["polytope"] = polytope_source;
  Json leaves = Json::array();
  for (const LeafState& leaf : pt.leaves) {
    Json l;
    Json core = Json::array(), cuts = Json::array();
    for (int i : leaf.core) core.push_back(leaf.piece->facet_names()[i]);
    for (int i : leaf.cuts) cuts.push_back(leaf.piece->facet_names()[i]);
    l["core"] = std::move(core);
    l["cuts"] = std::move(cuts);
    CartanMatrix m = leaf.cartan.materialize();
    Json rows = Json::array();
    for (int i = 0; i < m.size(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < m.size(); ++k) row.push_back(scalar_to_json(m.at(i, k)));
      rows.push_back(std::move(row));
    }
    l["matrix"] = std::move(rows);
    leaves.push_back(std::move(l));
  }
  j["leaves"] = std::move(leaves);
  Json edges = Json::array();
  for (const EdgeState& e : pt.edges) {
    Json je;
    je["leaves"] = Json::array({e.leaf_a, e.leaf_b});
    je["delta"] = e.delta;
    je["E"] = scalar_to_json(e.bend);
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return j;
}

namespace {

/** Fundamental-cycle gauge readout: the file matrix may sit in any gauge, so
 * each non-forest ratio is taken around its whole fundamental cycle. */
GaugedCartan gauged_from_matrix(const LeafChart& lc, const std::vector<std::vector<Scalar>>& m) {
  const int n = static_cast<int>(lc.core.size());
  CoxeterMatrix sub = lc.piece->coxeter_matrix().standard_subgroup(lc.core);
  GaugedCartan g = GaugedCartan::from_labels(sub);

  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      bool adj = sub.label(i, k) != 2;
      bool nz = !m[i][k].is_zero() && !m[k][i].is_zero();
      if (adj != nz)
        throw ParseError("leaf matrix zero pattern disagrees with the ridge labels at (" +
                         lc.piece->facet_names()[lc.core[i]] + "," +
                         lc.piece->facet_names()[lc.core[k]] + ")");
      if (!adj) continue;
      Scalar p_file = m[i][k] * m[k][i];
      Scalar p_lab = edge_product_value(sub.label(i, k));
      bool same = (p_file.is_exact() && p_lab.is_exact())
                      ? p_file == p_lab
                      : std::fabs(p_file.to_double() - p_lab.to_double()) <= 1e-9;
      if (!same)
        throw ParseError("leaf matrix pair product disagrees with the ridge label at (" +
                         lc.piece->facet_names()[lc.core[i]] + "," +
                         lc.piece->facet_names()[lc.core[k]] + ")");
    }

  std::vector<std::vector<int>> tree_adj(n);
  for (const auto& [u, v] : g.forest()) {
    tree_adj[u].push_back(v);
    tree_adj[v].push_back(u);
  }
  auto tree_path = [&](int from, int to) {
    std::vector<int> prev(n, -1);
    std::queue<int> q;
    q.push(from);
    prev[from] = from;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      if (x == to) break;
      for (int y : tree_adj[x])
        if (prev[y] < 0) {
          prev[y] = x;
          q.push(y);
        }
    }
    std::vector<int> path{to};
    while (path.back() != from) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  };

  for (const auto& [u, v] : g.non_forest_edges()) {
    Scalar ratio = m[u][v] / m[v][u];
    std::vector<int> path = tree_path(v, u);
    for (size_t t = 0; t + 1 < path.size(); ++t)
      ratio = ratio * (m[path[t]][path[t + 1]] / m[path[t + 1]][path[t]]);
    g.set_ratio(u, v, ratio);
  }
  return g;
}

}  // namespace

DeformationPoint point_from_json(const Json& j) {
  try {
    PolytopeDoc doc = polytope_from_json(j.at("polytope"));
    CellChart chart = cell_chart(doc.polytope);
    const Json& jleaves = j.at("leaves");
    const Json& jedges = j.at("edges");
    if (jleaves.size() != chart.leaves.size())
      throw ParseError("leaf count does not match the polytope's gluing tree");
    if (jedges.size() != chart.edges.size())
      throw ParseError("edge count does not match the polytope's gluing tree");

    DeformationPoint pt;
    pt.polytope = chart.polytope;
    pt.d = chart.d;
    for (size_t i = 0; i < chart.leaves.size(); ++i) {
      const LeafChart& lc = chart.leaves[i];
      std::vector<std::string> core_names, cut_names;
      for (int f : lc.core) core_names.push_back(lc.piece->facet_names()[f]);
      for (int f : lc.cuts) cut_names.push_back(lc.piece->facet_names()[f]);
      if (jleaves[i].at("core").get<std::vector<std::string>>() != core_names)
        throw ParseError("leaf " + std::to_string(i) + " core names do not match the chart");
      if (jleaves[i].at("cuts").get<std::vector<std::string>>() != cut_names)
        throw ParseError("leaf " + std::to_string(i) + " cut names do not match the chart");
      const Json& rows = jleaves[i].at("matrix");
      const size_t n = lc.core.size();
      if (rows.size() != n) throw ParseError("leaf matrix must be square over the core");
      std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n, Scalar(0)));
      for (size_t r = 0; r < n; ++r) {
        if (rows[r].size() != n) throw ParseError("leaf matrix must be square over the core");
        for (size_t c = 0; c < n; ++c) m[r][c] = scalar_from_json(rows[r][c]);
      }
      LeafState state;
      state.piece = lc.piece;
      state.core = lc.core;
      state.cuts = lc.cuts;
      state.cartan = gauged_from_matrix(lc, m);
      pt.leaves.push_back(std::move(state));
    }
    for (size_t e = 0; e < chart.edges.size(); ++e) {
      const EdgeChart& ec = chart.edges[e];
      std::vector<int> le = jedges[e].at("leaves").get<std::vector<int>>();
      if (le != std::vector<int>{ec.leaf_a, ec.leaf_b})
        throw ParseError("edge " + std::to_string(e) + " leaf pair does not match the chart");
      std::vector<std::string> d1 = jedges[e].at("delta").get<std::vector<std::string>>();
      std::vector<std::string> d2 = ec.delta;
      std::sort(d1.begin(), d1.end());
      std::sort(d2.begin(), d2.end());
      if (d1 != d2)
        throw ParseError("edge " + std::to_string(e) + " circuit does not match the chart");
      EdgeState state;
      state.leaf_a = ec.leaf_a;
      state.leaf_b = ec.leaf_b;
      state.delta = ec.delta;
      state.bend = scalar_from_json(jedges[e].at("E"));
      pt.edges.push_back(std::move(state));
    }
    // Revalidation: run the parsed point through its own chart coordinates.
    ChartValues vals = coordinates_of(chart, pt);
    return point_from_coordinates(chart, vals);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad point document: ") + e.what());
  }
}

Json values_to_json(const ChartValues& v) {
  Json j;
  Json ratios = Json::array();
  for (const auto& leaf : v.leaf_ratios) {
    Json row = Json::array();
    for (const Scalar& r : leaf) row.push_back(scalar_to_json(r));
    ratios.push_back(std::move(row));
  }
  j["leaf_ratios"] = std::move(ratios);
  Json bends = Json::array();
  for (const Scalar& b : v.edge_bends) bends.push_back(scalar_to_json(b));
  j["edge_bends"] = std::move(bends);
  return j;
}

ChartValues values_from_json(const Json& j) {
  try {
    ChartValues v;
    for (const Json& row : j.at("leaf_ratios")) {
      std::vector<Scalar> leaf;
      for (const Json& r : row) leaf.push_back(scalar_from_json(r));
      v.leaf_ratios.push_back(std::move(leaf));
    }
    for (const Json& b : j.at("edge_bends")) v.edge_bends.push_back(scalar_from_json(b));
    return v;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad coordinates document: ") + e.what());
  }
}

Json certificate_to_json(const IntegralCertificate& c) {
  Json j;
  Json entries = Json::array();
  for (const CertificateEntry& e : c.entries) {
    Json je;
    je["names"] = e.names;
    je["value"] = scalar_to_json(e.value);
    je["pair"] = e.pair;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  j["note"] = c.note;
  return j;
}

Json chart_to_json(const CellChart& chart) {
  Json j;
  j["case"] = to_string(chart.shape);
  j["dimension"] = chart.dimension;
  j["e_plus"] = chart.e_plus;
  j["d"] = chart.d;
  bool obstructed = false;
  Json leaves = Json::array();
  for (const LeafChart& lc : chart.leaves) {
    Json l;
    l["case"] = to_string(lc.shape);
    Json core = Json::array(), cuts = Json::array();
    for (int f : lc.core) core.push_back(lc.piece->facet_names()[f]);
    for (int f : lc.cuts) cuts.push_back(lc.piece->facet_names()[f]);
    l["core"] = std::move(core);
    l["cuts"] = std::move(cuts);
    l["dimension"] = lc.dimension;
    Json circuits = Json::array();
    for (const ChartCircuit& c : lc.circuits) circuits.push_back(c.names);
    l["circuits"] = std::move(circuits);
    Json constraints = Json::array();
    for (const ChartConstraint& c : lc.constraints) {
      Json factors = Json::array();
      for (const auto& [idx, exp] : c.factors) factors.push_back(Json::array({idx, exp}));
      constraints.push_back(std::move(factors));
    }
    l["constraints"] = std::move(constraints);
    Json affine = Json::array();
    for (const auto& [cut, cycle] : lc.affine_conditions) {
      Json a;
      a["cut"] = lc.piece->facet_names()[cut];
      a["cycle"] = cycle.names;
      affine.push_back(std::move(a));
      obstructed = true;
    }
    l["affine_conditions"] = std::move(affine);
    leaves.push_back(std::move(l));
  }
  j["leaves"] = std::move(leaves);
  Json edges = Json::array();
  for (const EdgeChart& ec : chart.edges) {
    Json e;
    e["leaves"] = Json::array({ec.leaf_a, ec.leaf_b});
    e["delta"] = ec.delta;
    e["tree_type"] = ec.tree_type;
    edges.push_back(std::move(e));
  }
  j["edges"] = std::move(edges);
  // Every ratio-away-from-one condition disconnects the cell into sign branches.
  j["connectedness_obstruction"] = obstructed;
  return j;
}

Json realization_to_json(const VinbergRealization& r, bool hexfloat) {
  Json j;
  j["type"] = "realization";
  j["dimension"] = r.d;
  j["exact"] = r.exact;
  j["names"] = r.names;
  auto value = [&](const Scalar& s) -> Json {
    double x = s.to_double();
    if (!hexfloat) return Json(x);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", x);
    return Json(std::string(buf));
  };
  auto mat = [&](const ScalarMat& m) {
    Json rows = Json::array();
    for (const auto& row : m) {
      Json jr = Json::array();
      for (const Scalar& s : row) jr.push_back(value(s));
      rows.push_back(std::move(jr));
    }
    return rows;
  };
  j["alpha"] = mat(r.alpha);
  j["polar"] = mat(r.polar);
  return j;
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace vinberg
