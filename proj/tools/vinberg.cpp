// Command-line front end: parsing, dispatch, report rendering. All numeric
// work lives in the library; this file only formats it. Reports must be
// byte-identical across runs and --parallel settings, so they never contain
// timings, paths, or thread counts.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vinberg/catalog.hpp"
#include "vinberg/deform.hpp"
#include "vinberg/errors.hpp"
#include "vinberg/integral.hpp"
#include "vinberg/json_io.hpp"
#include "vinberg/realize.hpp"

using namespace vinberg;

namespace {

struct RunConfig {
  std::string input = "-";
  std::string output;
  std::string format;  // empty = per-command default
  std::uint64_t seed = 0;
  int parallel = 1;
  bool oracle = false;
  bool quotient_symmetry = false;
  double tolerance_eps = 0.0;  // 0 = library defaults
};

// Exit codes, also documented in the README: 0 ok, 2 parse or validation
// failure, 3 infeasible input, 4 oracle mismatch, 5 certificate failure.
constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitOracleMismatch = 4;
constexpr int kExitCertificate = 5;

std::string read_input(const std::string& path) {
  if (path == "-" || path.empty()) {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + cfg.output);
  out << text;
}

void emit_json(const RunConfig& cfg, const Json& j) { write_output(cfg, j.dump(2) + "\n"); }

std::string effective_format(const RunConfig& cfg, const std::string& command) {
  if (!cfg.format.empty()) return cfg.format;
  return command == "sweep" ? "csv" : "json";
}

void require_format(const std::string& fmt, std::initializer_list<const char*> allowed,
                    const std::string& command) {
  for (const char* a : allowed)
    if (fmt == a) return;
  throw Error("format \"" + fmt + "\" is not supported by " + command);
}

// ---------------------------------------------------------------- classify

// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations. Used
// only for the float fallback of the type report when entries are inexact.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> m) {
  const int n = static_cast<int>(m.size());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m[i][j] * m[i][j];
    if (off < 1e-24) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(m[p][q]) < 1e-18) continue;
        const double theta = (m[q][q] - m[p][p]) / (2 * m[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          const double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = m[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Symmetrized double image of a Cartan matrix: s_ij = -sqrt(a_ij a_ji). For
// irreducible matrices with positive cycle products this is a diagonal
// conjugate, so the type of the spectrum is preserved.
Json float_perron_report(const CartanMatrix& a) {
  const int n = a.size();
  std::vector<std::vector<double>> s(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    s[i][i] = 2.0;
    for (int j = i + 1; j < n; ++j) {
      const double p = a.at(i, j).to_double() * a.at(j, i).to_double();
      s[i][j] = s[j][i] = -std::sqrt(std::max(p, 0.0));
    }
  }
  const std::vector<double> ev = jacobi_eigenvalues(std::move(s));
  const double tol = 1e-9;
  int rank = 0;
  for (double v : ev)
    if (std::fabs(v) > tol) ++rank;
  const double low = ev.front();
  Json rep;
  rep["type"] = low < -tol ? "negative" : (low <= tol ? "zero" : "positive");
  rep["rank"] = rank;
  rep["approx"] = true;
  return rep;
}

Json exact_perron_report(const CartanMatrix& a) {
  PerronReport pr = perron_type(a);
  Json rep;
  rep["type"] = to_string(pr.type);
  rep["rank"] = exact_rank(a);
  rep["approx"] = false;
  return rep;
}

// Recovers the ridge label of a Cartan pair from the product a_st a_ts:
// below 4 the pair satisfies a rotation relation of the matching order,
// at or above 4 the pair is unbounded.
int label_from_product(double p) {
  if (p <= 1e-12) return 2;
  if (p >= 4.0 - 1e-9) return kInfLabel;
  const int m = static_cast<int>(std::lround(M_PI / std::acos(std::sqrt(p) / 2.0)));
  if (m < 3) return kInfLabel;
  const double back = 4.0 * std::cos(M_PI / m) * std::cos(M_PI / m);
  return std::fabs(back - p) <= 1e-9 ? m : kInfLabel;
}

CoxeterMatrix coxeter_of_cartan(const CartanMatrix& a) {
  CoxeterMatrix m(a.names());
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j) {
      const double p = a.at(i, j).to_double() * a.at(j, i).to_double();
      m.set_label(i, j, label_from_product(p));
    }
  return m;
}

int cmd_classify(const RunConfig& cfg) {
  const std::string fmt = effective_format(cfg, "classify");
  require_format(fmt, {"json", "text", "dot"}, "classify");
  const Json doc = parse_text(read_input(cfg.input));

  CoxeterMatrix m({"s"});
  Json perron;
  bool have_cartan = false;
  const std::string type = doc.is_object() && doc.contains("type")
                               ? doc.at("type").get<std::string>()
                               : std::string(doc.is_object() && doc.contains("op") ? "polytope" : "");
  if (type == "coxeter") {
    m = coxeter_from_json(doc);
  } else if (type == "cartan") {
    CartanMatrix a = cartan_from_json(doc);
    const std::vector<std::string> violations = a.validate();
    if (!violations.empty()) {
      for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
      return kExitParse;
    }
    m = coxeter_of_cartan(a);
    have_cartan = true;
    try {
      perron = a.all_exact() ? exact_perron_report(a) : float_perron_report(a);
    } catch (const ReducibleError&) {
      // reported through the class field below
    }
  } else if (type == "polytope" || doc.contains("op")) {
    m = polytope_from_json(doc).polytope.coxeter_matrix();
  } else {
    throw ParseError("classify expects a coxeter, cartan, or polytope document");
  }

  const std::vector<std::string> violations = m.validate();
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
    return kExitParse;
  }

  if (fmt == "dot") {
    write_output(cfg, m.to_dot());
    return kExitOk;
  }

  Json rep;
  rep["command"] = "classify";
  rep["names"] = m.names();
  rep["generators"] = m.rank();
  bool irreducible = true;
  try {
    Refinement r = refine(m);
    rep["class"] = to_string(r.cls);
    rep["lanner"] = r.lanner;
    rep["two_lanner"] = r.two_lanner;
    rep["affine_cycle"] = r.affine_cycle;
  } catch (const ReducibleError&) {
    irreducible = false;
    rep["class"] = to_string(classify(m, false));
    rep["components"] = static_cast<int>(m.components().size());
  }
  rep["irreducible"] = irreducible;

  // The type report at the symmetric point of the label diagram, unless the
  // input already carried a Cartan matrix with its own type.
  if (!have_cartan && irreducible && !m.has_infinite_label()) {
    try {
      perron = exact_perron_report(GaugedCartan::from_labels(m).materialize());
    } catch (const ApproxDataError&) {
      std::vector<std::vector<double>> s(m.rank(), std::vector<double>(m.rank(), 0.0));
      CartanMatrix approx(m.names());
      for (int i = 0; i < m.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j)
          if (i != j && m.label(i, j) != 2)
            approx.set(i, j, make_cos_entry(m.label(i, j)));
      perron = float_perron_report(approx);
    }
  }
  if (!perron.is_null()) rep["perron"] = perron;

  if (fmt == "text") {
    std::ostringstream os;
    os << "class: " << rep["class"].get<std::string>() << "\n";
    if (irreducible) {
      os << "lanner: " << (rep["lanner"].get<bool>() ? "yes" : "no") << "\n";
      os << "two-lanner: " << (rep["two_lanner"].get<bool>() ? "yes" : "no") << "\n";
      os << "affine-cycle: " << (rep["affine_cycle"].get<bool>() ? "yes" : "no") << "\n";
    } else {
      os << "irreducible: no\n";
    }
    if (!perron.is_null())
      os << "type: " << perron["type"].get<std::string>() << " (rank "
         << perron["rank"].get<int>() << (perron["approx"].get<bool>() ? ", approximate" : "")
         << ")\n";
    write_output(cfg, os.str());
    return kExitOk;
  }
  emit_json(cfg, rep);
  return kExitOk;
}

// ------------------------------------------------------------- deform-info

int cmd_deform_info(const RunConfig& cfg) {
  const std::string fmt = effective_format(cfg, "deform-info");
  require_format(fmt, {"json", "text"}, "deform-info");
  PolytopeDoc doc = polytope_from_json(parse_text(read_input(cfg.input)));

  Json rep;
  rep["command"] = "deform-info";
  try {
    CellChart chart = cell_chart(doc.polytope);
    const Json cj = chart_to_json(chart);
    for (const auto& [key, value] : cj.items()) rep[key] = value;
  } catch (const EmptyCellError& e) {
    rep["case"] = "empty";
    rep["dimension"] = 0;
    rep["reason"] = e.what();
  }

  if (fmt == "text") {
    std::ostringstream os;
    os << "case: " << rep["case"].get<std::string>() << "\n";
    os << "dimension: " << rep["dimension"].get<int>() << "\n";
    if (rep.contains("e_plus"))
      os << "e+: " << rep["e_plus"].get<int>() << ", d: " << rep["d"].get<int>() << "\n";
    if (rep.contains("connectedness_obstruction"))
      os << "connectedness obstruction: "
         << (rep["connectedness_obstruction"].get<bool>() ? "yes" : "no") << "\n";
    if (rep.contains("reason")) os << "reason: " << rep["reason"].get<std::string>() << "\n";
    write_output(cfg, os.str());
    return kExitOk;
  }
  emit_json(cfg, rep);
  return kExitOk;
}

// --------------------------------------------------------------- enumerate

Json point_report(const IntegralPoint& p, const Json& source) {
  Json jp;
  jp["coordinates"] = values_to_json(p.values);
  jp["point"] = point_to_json(p.point, source);
  jp["certificate"] = certificate_to_json(p.certificate);
  jp["provenance"] = p.provenance.trail;
  return jp;
}

std::string values_fingerprint(const IntegralPoint& p) {
  std::string s;
  for (const auto& leaf : p.values.leaf_ratios)
    for (const auto& r : leaf) s += r.str() + ";";
  s += "|";
  for (const auto& e : p.values.edge_bends) s += e.str() + ";";
  return s;
}

int cmd_enumerate(const RunConfig& cfg) {
  const std::string fmt = effective_format(cfg, "enumerate");
  require_format(fmt, {"json", "text"}, "enumerate");
  PolytopeDoc doc = polytope_from_json(parse_text(read_input(cfg.input)));
  const LabeledPolytope& g = doc.polytope;

  Json rep;
  rep["command"] = "enumerate";
  rep["input"] = Json{{"dimension", g.dim()}, {"facets", g.facet_names()}};
  rep["quotient_symmetry"] = cfg.quotient_symmetry;

  FeasibilityReport fr = integral_feasible(g);
  rep["feasible"] = fr.feasible;
  if (!fr.feasible) {
    rep["reason"] = fr.reason;
    rep["shortcut"] = nullptr;
    rep["points"] = Json::array();
    rep["count"] = 0;
    if (fmt == "text")
      write_output(cfg, "infeasible: " + fr.reason + "\ncount: 0\n");
    else
      emit_json(cfg, rep);
    return kExitInfeasible;
  }

  auto shortcut = nonexistence_shortcuts(g);
  if (shortcut) {
    rep["shortcut"] = Json{{"kind", to_string(shortcut->kind)}, {"reason", shortcut->reason}};
    rep["points"] = Json::array();
    rep["count"] = 0;
    if (fmt == "text")
      write_output(cfg, "shortcut: " + to_string(shortcut->kind) + "\ncount: 0\n");
    else
      emit_json(cfg, rep);
    return kExitOk;
  }
  rep["shortcut"] = nullptr;

  EnumerateOptions opts;
  opts.quotient_symmetry = cfg.quotient_symmetry;
  opts.parallel = cfg.parallel;
  std::vector<IntegralPoint> pts = enumerate_integral(g, opts);

  int exit = kExitOk;
  if (cfg.oracle) {
    std::vector<IntegralPoint> direct = enumerate_direct(g, opts);
    bool agrees = direct.size() == pts.size();
    for (size_t i = 0; agrees && i < pts.size(); ++i)
      agrees = values_fingerprint(pts[i]) == values_fingerprint(direct[i]);
    rep["oracle"] = Json{{"agrees", agrees}, {"count", direct.size()}};
    if (!agrees) {
      std::cerr << "oracle mismatch: recursive enumeration found " << pts.size()
                << " points, direct search found " << direct.size() << "\n";
      exit = kExitOracleMismatch;
    }
  }

  Json jpoints = Json::array();
  for (const auto& p : pts) jpoints.push_back(point_report(p, doc.source));
  rep["points"] = std::move(jpoints);
  rep["count"] = pts.size();

  if (fmt == "text") {
    std::ostringstream os;
    os << "count: " << pts.size() << "\n";
    for (const auto& p : pts) {
      os << "point:";
      for (const auto& leaf : p.values.leaf_ratios)
        for (const auto& r : leaf) os << " " << r.str();
      for (const auto& e : p.values.edge_bends) os << " E=" << e.str();
      os << "\n";
    }
    write_output(cfg, os.str());
    return exit;
  }
  emit_json(cfg, rep);
  return exit;
}

// ------------------------------------------------------------------- sweep

int find_edge(const DeformationPoint& pt, const std::string& spec) {
  std::vector<std::string> want;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) want.push_back(part);
  std::sort(want.begin(), want.end());
  std::ostringstream have;
  for (size_t e = 0; e < pt.edges.size(); ++e) {
    std::vector<std::string> delta = pt.edges[e].delta;
    std::sort(delta.begin(), delta.end());
    if (delta == want) return static_cast<int>(e);
    have << (e ? "; " : "");
    for (size_t i = 0; i < delta.size(); ++i) have << (i ? "," : "") << delta[i];
  }
  throw UnknownNameError("no gluing edge on facets {" + spec + "}; edges: " + have.str());
}

int cmd_sweep(const RunConfig& cfg, const std::string& edge_spec) {
  const std::string fmt = effective_format(cfg, "sweep");
  require_format(fmt, {"csv", "json"}, "sweep");
  DeformationPoint pt = point_from_json(parse_text(read_input(cfg.input)));
  if (pt.edges.empty()) throw Error("sweep needs a glued polytope with at least one edge");
  const int edge = find_edge(pt, edge_spec);

  FiberSweep sw = fiber_sweep(pt, edge);
  BendingFiberData bd = bending_data(pt, edge);

  // Every integer the forward probe can take inside the band, recomputed from
  // the fiber polynomials; the survivors are exactly the rows that also pass
  // the full integrality check.
  const Scalar na = bd.n_poly().eval(sw.band_low);
  const Scalar nb = bd.n_poly().eval(sw.band_high);
  const double lo = std::min(na.to_double(), nb.to_double());
  const double hi = std::max(na.to_double(), nb.to_double());
  struct Row {
    long n;
    Scalar bend, backward;
    bool pass;
  };
  std::vector<Row> rows;
  for (long n = static_cast<long>(std::ceil(lo - 1e-9)); n <= static_cast<long>(std::floor(hi + 1e-9)); ++n) {
    const Scalar e = (Scalar(n) / bd.k1 - bd.x1) / bd.y1;
    if (e.sign() <= 0) continue;
    Row row{n, e, bd.d_poly().eval(e), false};
    for (const auto& c : sw.survivors)
      if (c.n == n) row.pass = true;
    rows.push_back(std::move(row));
  }

  if (fmt == "json") {
    Json rep;
    rep["command"] = "sweep";
    Json probe = Json::array();
    for (const auto& nm : sw.probe) probe.push_back(nm);
    rep["probe"] = std::move(probe);
    rep["band"] = Json{scalar_to_json(sw.band_low), scalar_to_json(sw.band_high)};
    Json jrows = Json::array();
    for (const auto& r : rows)
      jrows.push_back(Json{{"n", r.n},
                           {"E", scalar_to_json(r.bend)},
                           {"D", scalar_to_json(r.backward)},
                           {"pass", r.pass}});
    rep["rows"] = std::move(jrows);
    rep["survivors"] = sw.survivors.size();
    emit_json(cfg, rep);
    return kExitOk;
  }

  std::ostringstream os;
  os << "# probe:";
  for (const auto& nm : sw.probe) os << " " << nm;
  os << "\n# band: [" << sw.band_low.str() << ", " << sw.band_high.str() << "]\n";
  os << "n,E,D,pass\n";
  for (const auto& r : rows)
    os << r.n << "," << r.bend.str() << "," << r.backward.str() << ","
       << (r.pass ? "pass" : "fail") << "\n";
  write_output(cfg, os.str());
  return kExitOk;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const RunConfig& cfg) {
  const std::string fmt = effective_format(cfg, "verify");
  require_format(fmt, {"json", "text"}, "verify");
  DeformationPoint pt = point_from_json(parse_text(read_input(cfg.input)));
  IntegralOutcome outcome = integral_check(pt);

  Json rep;
  rep["command"] = "verify";
  rep["ok"] = outcome.ok();
  if (outcome.ok()) {
    rep["certificate"] = certificate_to_json(*outcome.certificate);
  } else {
    rep["failure"] = Json{{"names", outcome.failure->names},
                          {"value", scalar_to_json(outcome.failure->value)},
                          {"pair", outcome.failure->pair}};
  }
  if (fmt == "text") {
    std::ostringstream os;
    if (outcome.ok()) {
      os << "ok: every product is an integer ("
         << outcome.certificate->entries.size() << " entries)\n";
    } else {
      os << "failure:";
      for (const auto& nm : outcome.failure->names) os << " " << nm;
      os << " -> " << outcome.failure->value.str() << "\n";
    }
    write_output(cfg, os.str());
  } else {
    emit_json(cfg, rep);
  }
  return outcome.ok() ? kExitOk : kExitCertificate;
}

// ----------------------------------------------------------------- realize

int cmd_realize(const RunConfig& cfg) {
  const std::string fmt = effective_format(cfg, "realize");
  require_format(fmt, {"json"}, "realize");
  DeformationPoint pt = point_from_json(parse_text(read_input(cfg.input)));
  CartanMatrix a = assemble(pt);

  RealizeOptions ropts;
  ropts.expected_dim = pt.d;
  if (cfg.tolerance_eps > 0) ropts.reproduction_tol = cfg.tolerance_eps;
  VinbergRealization r = realize(a, ropts);

  const double rel_tol = cfg.tolerance_eps > 0 ? cfg.tolerance_eps : 1e-8;
  RelationReport relations = verify_relations(r, pt.polytope->coxeter_matrix(), rel_tol);
  InteriorProbe probe = interior_probe(r);
  const std::vector<double> traces = word_traces(r, 16, 10, cfg.seed);

  Json rep;
  rep["command"] = "realize";
  rep["seed"] = cfg.seed;
  rep["realization"] = realization_to_json(r);
  rep["reproduction_error"] = r.reproduction_error(a);
  Json jrel;
  jrel["max_deviation"] = relations.max_deviation;
  Json entries = Json::array();
  for (const auto& e : relations.entries)
    entries.push_back(Json{{"pair", Json{r.names[e.s], r.names[e.t]}},
                           {"label", label_to_json(e.label)},
                           {"kind", e.kind},
                           {"deviation", e.deviation}});
  jrel["entries"] = std::move(entries);
  rep["relations"] = std::move(jrel);
  rep["interior_probe"] = probe.ok;
  rep["word_traces"] = traces;
  emit_json(cfg, rep);
  return kExitOk;
}

// ----------------------------------------------------------------- catalog

int cmd_catalog(const RunConfig& cfg, const std::string& name) {
  const std::string fmt = effective_format(cfg, "catalog");
  require_format(fmt, {"json", "text"}, "catalog");
  if (!name.empty()) {
    emit_json(cfg, catalog_recipe(name));
    return kExitOk;
  }
  if (fmt == "text") {
    std::ostringstream os;
    for (const auto& e : catalog_entries()) os << e.name << ": " << e.summary << "\n";
    write_output(cfg, os.str());
    return kExitOk;
  }
  Json rep;
  rep["command"] = "catalog";
  Json entries = Json::array();
  for (const auto& e : catalog_entries())
    entries.push_back(Json{{"name", e.name}, {"summary", e.summary}});
  rep["entries"] = std::move(entries);
  emit_json(cfg, rep);
  return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--input", cfg.input, "input file, - for stdin");
  sub->add_option("--output", cfg.output, "output file, default stdout");
  sub->add_option("--format", cfg.format, "json, csv, text, or dot");
  sub->add_option("--seed", cfg.seed, "seed for randomized probes");
  sub->add_option("--parallel", cfg.parallel, "worker count for enumeration")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--oracle", cfg.oracle, "cross-check with the direct search");
  sub->add_flag("--quotient-symmetry", cfg.quotient_symmetry,
                "one point per label-symmetry orbit");
  sub->add_option("--tolerance-eps", cfg.tolerance_eps, "override float tolerances");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact deformation and integrality toolkit for labeled truncation polytopes"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string edge_spec, catalog_name;

  CLI::App* c_classify = app.add_subcommand("classify", "group class and type of a diagram");
  CLI::App* c_deform = app.add_subcommand("deform-info", "deformation chart of a polytope");
  CLI::App* c_enum = app.add_subcommand("enumerate", "all integral points of a polytope");
  CLI::App* c_sweep = app.add_subcommand("sweep", "integer candidates along a bending fiber");
  CLI::App* c_verify = app.add_subcommand("verify", "recheck a point's integrality certificate");
  CLI::App* c_realize = app.add_subcommand("realize", "reflection matrices at a point");
  CLI::App* c_catalog = app.add_subcommand("catalog", "embedded example polytopes");
  for (CLI::App* sub : {c_classify, c_deform, c_enum, c_sweep, c_verify, c_realize, c_catalog})
    add_common(sub, cfg);
  c_sweep->add_option("--edge", edge_spec, "comma-joined facet names of the gluing circuit")
      ->required();
  c_catalog->add_option("name", catalog_name, "entry to emit as input JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kExitParse;
  }

  try {
    if (c_classify->parsed()) return cmd_classify(cfg);
    if (c_deform->parsed()) return cmd_deform_info(cfg);
    if (c_enum->parsed()) return cmd_enumerate(cfg);
    if (c_sweep->parsed()) return cmd_sweep(cfg, edge_spec);
    if (c_verify->parsed()) return cmd_verify(cfg);
    if (c_realize->parsed()) return cmd_realize(cfg);
    if (c_catalog->parsed()) return cmd_catalog(cfg, catalog_name);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
