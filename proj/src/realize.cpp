#include "vinberg/realize.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "vinberg/errors.hpp"

namespace vinberg {

namespace {

constexpr double kGeomTolerance = 1e-9;

bool rz_nonzero(const Scalar& s) {
  if (s.is_exact()) return !s.is_zero();
  return std::fabs(s.to_double()) > kGeomTolerance;
}

int rz_sign(const Scalar& s) {
  if (s.is_exact()) return s.sign();
  double x = s.to_double();
  if (std::fabs(x) <= kGeomTolerance) return 0;
  return x > 0 ? 1 : -1;
}

/**
 * Elimination with largest-magnitude pivoting (harmless on exact entries,
 * necessary on float ones); returns the pivot column indices.
 */
std::vector<int> pivot_columns(ScalarMat m) {
  std::vector<int> pivots;
  const size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = rows;
    double best = 0.0;
    for (size_t i = r; i < rows; ++i) {
      if (!rz_nonzero(m[i][c])) continue;
      double mag = std::fabs(m[i][c].to_double());
      if (piv == rows || mag > best) {
        piv = i;
        best = mag;
      }
    }
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (!rz_nonzero(m[i][c])) continue;
      Scalar f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

ScalarMat transpose(const ScalarMat& m) {
  if (m.empty()) return {};
  ScalarMat out(m[0].size(), ScalarVec(m.size(), Scalar(0)));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[0].size(); ++j) out[j][i] = m[i][j];
  return out;
}

ScalarMat inverse_pivoted(ScalarMat a) {
  const size_t n = a.size();
  ScalarMat inv = identity_mat(static_cast<int>(n));
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    double best = 0.0;
    for (size_t i = c; i < n; ++i) {
      if (!rz_nonzero(a[i][c])) continue;
      double mag = std::fabs(a[i][c].to_double());
      if (piv == n || mag > best) {
        piv = i;
        best = mag;
      }
    }
    if (piv == n) throw RankDeficientError("singular basis block in the factorization");
    if (piv != c) {
      std::swap(a[piv], a[c]);
      std::swap(inv[piv], inv[c]);
    }
    Scalar f = a[c][c];
    for (size_t j = 0; j < n; ++j) {
      a[c][j] = a[c][j] / f;
      inv[c][j] = inv[c][j] / f;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || !rz_nonzero(a[i][c])) continue;
      Scalar g = a[i][c];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] = a[i][j] - g * a[c][j];
        inv[i][j] = inv[i][j] - g * inv[c][j];
      }
    }
  }
  return inv;
}

/**
 * The one-dimensional kernel of a rows x cols system of full expected rank
 * cols - 1. Echelon first, then back-substitution with the free column set
 * to one. Rank mismatches surface as `nullopt`.
 */
std::optional<ScalarVec> kernel_line(ScalarMat m) {
  const size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
  std::vector<int> pivots;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = rows;
    double best = 0.0;
    for (size_t i = r; i < rows; ++i) {
      if (!rz_nonzero(m[i][c])) continue;
      double mag = std::fabs(m[i][c].to_double());
      if (piv == rows || mag > best) {
        piv = i;
        best = mag;
      }
    }
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (!rz_nonzero(m[i][c])) continue;
      Scalar f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  if (pivots.size() + 1 != cols) return std::nullopt;
  int free_col = -1;
  for (size_t c = 0; c < cols; ++c)
    if (std::find(pivots.begin(), pivots.end(), static_cast<int>(c)) == pivots.end())
      free_col = static_cast<int>(c);
  ScalarVec x(cols, Scalar(0));
  x[free_col] = Scalar(1);
  for (int i = static_cast<int>(pivots.size()) - 1; i >= 0; --i) {
    int pc = pivots[i];
    Scalar s(0);
    for (size_t j = pc + 1; j < cols; ++j) s = s + m[i][j] * x[j];
    x[pc] = Scalar(0) - s / m[i][pc];
  }
  return x;
}

PerronType float_negative_check(const CartanMatrix& a) {
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
  for (int k = 1; k < n; ++k) head_positive = head_positive && leading_det(k) > kGeomTolerance;
  double last = leading_det(n);
  if (head_positive && last > kGeomTolerance) return PerronType::Positive;
  if (head_positive && std::fabs(last) <= kGeomTolerance) return PerronType::Zero;
  return PerronType::Negative;
}

std::string facet_set_names(const VinbergRealization& r, const std::vector<int>& idx) {
  std::string s = "{";
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += r.names[idx[i]];
  }
  return s + "}";
}

/** Vertex representative inside the wall cone {alpha <= 0}, sign-corrected. */
ScalarVec vertex_point(const VinbergRealization& r, const std::vector<int>& facets,
                       const std::string& what) {
  ScalarMat rows;
  for (int s : facets) rows.push_back(r.alpha[s]);
  auto x = kernel_line(std::move(rows));
  if (!x) throw RankError("functionals of " + what + " do not cut a line");
  for (int flip = 0; flip < 2; ++flip) {
    bool inside = true;
    for (size_t t = 0; t < r.names.size() && inside; ++t) {
      if (std::find(facets.begin(), facets.end(), static_cast<int>(t)) != facets.end()) continue;
      inside = rz_sign(dot(r.alpha[t], *x)) < 0;
    }
    if (inside) return *x;
    for (auto& c : *x) c = Scalar(0) - c;
  }
  throw EdgeIntersectionOutsideError("no representative of " + what +
                                     " lies inside the wall cone");
}

}  // namespace

Scalar VinbergRealization::pairing(int s, int t) const {
  Scalar v(0);
  for (int i = 0; i <= d; ++i) v = v + alpha[s][i] * polar[i][t];
  return v;
}

ScalarMat VinbergRealization::sigma(int s) const {
  ScalarMat m = identity_mat(d + 1);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) m[i][j] = m[i][j] - polar[i][s] * alpha[s][j];
  return m;
}

std::vector<std::vector<double>> VinbergRealization::sigma_approx(int s) const {
  ScalarMat m = sigma(s);
  std::vector<std::vector<double>> out(m.size(), std::vector<double>(m.size(), 0.0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j) out[i][j] = m[i][j].to_double();
  return out;
}

double VinbergRealization::reproduction_error(const CartanMatrix& a) const {
  double worst = 0.0;
  for (int s = 0; s < a.size(); ++s)
    for (int t = 0; t < a.size(); ++t)
      worst = std::max(worst, std::fabs((pairing(s, t) - a.at(s, t)).to_double()));
  return worst;
}

VinbergRealization realize(const CartanMatrix& a, const RealizeOptions& opts) {
  auto violations = a.validate();
  if (!violations.empty()) throw ValidationError(violations);
  if (a.components().size() != 1) throw ReducibleError();
  const int n = a.size();

  PerronType type;
  if (a.all_exact())
    type = perron_type(a).type;
  else
    type = float_negative_check(a);
  if (type != PerronType::Negative)
    throw NotLoxodromicError("the Cartan matrix is of " + to_string(type) + " type");

  ScalarMat m = zero_mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = a.at(i, j);

  std::vector<int> cols = pivot_columns(m);
  std::vector<int> rows = pivot_columns(transpose(m));
  if (cols.size() != rows.size()) throw std::logic_error("row and column rank disagree");
  const int r = static_cast<int>(cols.size());
  if (r < 3)
    throw RankDeficientError("rank " + std::to_string(r) +
                             " admits no hyperbolic reflection data");
  if (opts.expected_dim >= 0 && r != opts.expected_dim + 1)
    throw RankDeficientError("rank " + std::to_string(r) + " does not match dimension " +
                             std::to_string(opts.expected_dim) + " + 1");

  // A = A[:,C] (A[R,C])^{-1} A[R,:]: the middle block is invertible because the
  // chosen rows span the row space and the chosen columns the column space.
  ScalarMat block = zero_mat(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) block[i][j] = m[rows[i]][cols[j]];
  ScalarMat block_inv = inverse_pivoted(std::move(block));

  VinbergRealization out;
  out.d = r - 1;
  out.exact = a.all_exact();
  out.names = a.names();
  out.alpha = zero_mat(n, r);
  for (int s = 0; s < n; ++s)
    for (int i = 0; i < r; ++i) {
      Scalar v(0);
      for (int c = 0; c < r; ++c) v = v + m[s][cols[c]] * block_inv[c][i];
      out.alpha[s][i] = v;
    }
  out.polar = zero_mat(r, n);
  for (int i = 0; i < r; ++i)
    for (int t = 0; t < n; ++t) out.polar[i][t] = m[rows[i]][t];

  if (out.exact) {
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        if (out.pairing(s, t) != a.at(s, t))
          throw std::logic_error("exact factorization fails to reproduce the matrix");
  } else {
    double err = out.reproduction_error(a);
    if (err > opts.reproduction_tol)
      throw ToleranceExceededError("factorization readback error " + std::to_string(err) +
                                   " exceeds the bound");
  }
  return out;
}

RelationReport verify_relations(const VinbergRealization& r, const CoxeterMatrix& m, double tol) {
  if (m.rank() != static_cast<int>(r.names.size()))
    throw ValidationError({"Coxeter matrix rank does not match the realization"});
  const int n = m.rank();
  const int dim = r.d + 1;
  RelationReport report;
  // Exact data admits an exact check; floats remain for approx realizations.
  std::vector<ScalarMat> exact_gens;
  std::vector<std::vector<std::vector<double>>> gens;
  for (int s = 0; s < n; ++s) {
    if (r.exact)
      exact_gens.push_back(r.sigma(s));
    else
      gens.push_back(r.sigma_approx(s));
  }

  auto mat_mul_f = [&](const std::vector<std::vector<double>>& a,
                       const std::vector<std::vector<double>>& b) {
    std::vector<std::vector<double>> c(dim, std::vector<double>(dim, 0.0));
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) {
        double v = a[i][k];
        if (v == 0.0) continue;
        for (int j = 0; j < dim; ++j) c[i][j] += v * b[k][j];
      }
    return c;
  };

  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      RelationEntry entry;
      entry.s = s;
      entry.t = t;
      entry.label = m.label(s, t);
      const Scalar pairing_product = r.pairing(s, t) * r.pairing(t, s);
      double p = pairing_product.to_double();
      if (entry.label != kInfLabel) {
        double dev = 0.0;
        if (r.exact) {
          ScalarMat prod = mat_mul(exact_gens[s], exact_gens[t]);
          ScalarMat power = prod;
          for (int k = 1; k < entry.label; ++k) power = mat_mul(power, prod);
          for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
              const Scalar gap = power[i][j] - Scalar(i == j ? 1 : 0);
              dev = std::max(dev, std::fabs(gap.to_double()));
            }
        } else {
          auto prod = mat_mul_f(gens[s], gens[t]);
          auto power = prod;
          for (int k = 1; k < entry.label; ++k) power = mat_mul_f(power, prod);
          for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
              dev = std::max(dev, std::fabs(power[i][j] - (i == j ? 1.0 : 0.0)));
        }
        entry.kind = "finite";
        entry.deviation = dev;
        if (dev > tol)
          throw ToleranceExceededError("relation of pair (" + r.names[s] + "," + r.names[t] +
                                       ") misses the identity by " + std::to_string(dev));
      } else {
        // On the invariant plane of the two polars the product has trace
        // p - 2, so p = 4 is the parabolic case and p > 4 the loxodromic one.
        entry.deviation = std::max(0.0, 4.0 - p);
        const int gap = r.exact ? (pairing_product - Scalar(4)).sign()
                        : p > 4.0 + tol ? 1
                        : p >= 4.0 - tol ? 0
                                         : -1;
        if (gap > 0)
          entry.kind = "loxodromic";
        else if (gap == 0)
          entry.kind = "parabolic";
        else
          throw ToleranceExceededError("unbounded pair (" + r.names[s] + "," + r.names[t] +
                                       ") has pairing product " + std::to_string(p) +
                                       " below 4");
      }
      report.max_deviation = std::max(report.max_deviation, entry.deviation);
      report.entries.push_back(std::move(entry));
    }
  return report;
}

ScalarVec circuit_plane(const VinbergRealization& r, const std::vector<int>& delta) {
  ScalarMat rows;
  for (int s : delta) {
    ScalarVec row(r.d + 1, Scalar(0));
    for (int i = 0; i <= r.d; ++i) row[i] = r.polar[i][s];
    rows.push_back(std::move(row));
  }
  auto phi = kernel_line(std::move(rows));
  if (!phi)
    throw NotAHyperplaneError("polars of " + facet_set_names(r, delta) +
                              " do not span a hyperplane");
  return *phi;
}

TruncationData truncation_geometry(const VinbergRealization& r, const LabeledPolytope& p,
                                   int vertex) {
  auto verts = p.vertices();
  if (vertex < 0 || vertex >= static_cast<int>(verts.size()))
    throw UnknownVertexError("vertex index " + std::to_string(vertex) + " out of range");
  const std::vector<int>& sv = verts[vertex];

  TruncationData out;
  out.vertex = vertex;
  out.plane = circuit_plane(r, sv);
  ScalarVec xv = vertex_point(r, sv, "vertex " + facet_set_names(r, sv));
  Scalar fv = dot(out.plane, xv);
  if (rz_sign(fv) == 0)
    throw EdgeIntersectionOutsideError("vertex " + facet_set_names(r, sv) +
                                       " lies on its own truncating plane");

  for (size_t w = 0; w < verts.size(); ++w) {
    if (static_cast<int>(w) == vertex) continue;
    std::vector<int> shared;
    std::set_intersection(sv.begin(), sv.end(), verts[w].begin(), verts[w].end(),
                          std::back_inserter(shared));
    if (static_cast<int>(shared.size()) + 1 != p.dim()) continue;
    ScalarVec xw = vertex_point(r, verts[w], "vertex " + facet_set_names(r, verts[w]));
    Scalar fw = dot(out.plane, xw);
    if (rz_sign(fv) * rz_sign(fw) >= 0)
      throw EdgeIntersectionOutsideError(
          "edge toward vertex " + facet_set_names(r, verts[w]) +
          " does not cross the truncating plane between its endpoints");
    EdgeCrossing crossing;
    crossing.other_vertex = static_cast<int>(w);
    crossing.tau = fv / (fv - fw);
    out.edges.push_back(std::move(crossing));
  }
  return out;
}

InteriorProbe interior_probe(const VinbergRealization& r) {
  InteriorProbe out;
  out.point = ScalarVec(r.d + 1, Scalar(-1));
  out.ok = true;
  for (size_t t = 0; t < r.names.size(); ++t) {
    if (rz_sign(dot(r.alpha[t], out.point)) < 0) continue;
    out.ok = false;
    out.violations.push_back(static_cast<int>(t));
  }
  return out;
}

std::vector<double> word_traces(const VinbergRealization& r, int count, int max_len,
                                std::uint64_t seed) {
  const int n = static_cast<int>(r.names.size());
  const int dim = r.d + 1;
  // Same word sampling either way; exact data gets exact products so the
  // traces are exact before the final conversion.
  std::vector<ScalarMat> exact_gens;
  std::vector<std::vector<std::vector<double>>> gens;
  for (int s = 0; s < n; ++s) {
    if (r.exact)
      exact_gens.push_back(r.sigma(s));
    else
      gens.push_back(r.sigma_approx(s));
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len_dist(1, std::max(1, max_len));
  std::uniform_int_distribution<int> gen_dist(0, n - 1);
  std::vector<double> traces;
  traces.reserve(count);
  for (int w = 0; w < count; ++w) {
    const int len = len_dist(rng);
    std::vector<int> word(len);
    for (int k = 0; k < len; ++k) word[k] = gen_dist(rng);
    if (r.exact) {
      ScalarMat acc = identity_mat(dim);
      for (int s : word) acc = mat_mul(acc, exact_gens[s]);
      Scalar tr(0);
      for (int i = 0; i < dim; ++i) tr = tr + acc[i][i];
      traces.push_back(tr.to_double());
      continue;
    }
    std::vector<std::vector<double>> acc(dim, std::vector<double>(dim, 0.0));
    for (int i = 0; i < dim; ++i) acc[i][i] = 1.0;
    for (int k : word) {
      const auto& g = gens[k];
      std::vector<std::vector<double>> next(dim, std::vector<double>(dim, 0.0));
      for (int i = 0; i < dim; ++i)
        for (int t = 0; t < dim; ++t) {
          double v = acc[i][t];
          if (v == 0.0) continue;
          for (int j = 0; j < dim; ++j) next[i][j] += v * g[t][j];
        }
      acc = std::move(next);
    }
    double tr = 0.0;
    for (int i = 0; i < dim; ++i) tr += acc[i][i];
    traces.push_back(tr);
  }
  return traces;
}

}  // namespace vinberg
