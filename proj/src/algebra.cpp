#include "vinberg/algebra.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

namespace vinberg {

namespace {

// Rational enclosure of sqrt(k), tightened by bisection on demand.
struct SqrtBounds {
  Rational lo, hi;
  void refine(int steps) {
    for (int i = 0; i < steps; ++i) {
      Rational mid = (lo + hi) / 2;
      if (mid * mid < k) lo = mid; else hi = mid;
    }
  }
  Rational k;
};

SqrtBounds g_sqrt2{Rational(1), Rational(2), Rational(2)};
SqrtBounds g_sqrt3{Rational(1), Rational(2), Rational(3)};
SqrtBounds g_sqrt6{Rational(2), Rational(3), Rational(6)};
std::mutex g_bounds_mutex;

// value interval of coeff * sqrt(k) given the enclosure of sqrt(k)
void add_scaled(Rational& lo, Rational& hi, const Rational& coeff, const SqrtBounds& b) {
  if (coeff >= 0) {
    lo += coeff * b.lo;
    hi += coeff * b.hi;
  } else {
    lo += coeff * b.hi;
    hi += coeff * b.lo;
  }
}

}  // namespace

int AlgScalar::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return sgn(a);
  std::lock_guard<std::mutex> lock(g_bounds_mutex);
  for (;;) {
    Rational lo = a, hi = a;
    add_scaled(lo, hi, b, g_sqrt2);
    add_scaled(lo, hi, c, g_sqrt3);
    add_scaled(lo, hi, d, g_sqrt6);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    g_sqrt2.refine(8);
    g_sqrt3.refine(8);
    g_sqrt6.refine(8);
  }
}

double AlgScalar::to_double() const {
  return a.get_d() + b.get_d() * std::sqrt(2.0) + c.get_d() * std::sqrt(3.0) +
         d.get_d() * std::sqrt(6.0);
}

std::string AlgScalar::str() const {
  if (is_rational()) return to_string(a);
  std::ostringstream os;
  bool first = true;
  auto term = [&](const Rational& coef, const char* radical) {
    if (coef == 0) return;
    if (!first && coef > 0) os << "+";
    if (coef == -1 && radical[0]) os << "-";
    else if (!(coef == 1 && radical[0])) os << to_string(coef) << (radical[0] ? "*" : "");
    os << radical;
    first = false;
  };
  term(a, "");
  term(b, "sqrt2");
  term(c, "sqrt3");
  term(d, "sqrt6");
  return os.str();
}

Integer floor_alg(const AlgScalar& x) {
  if (x.is_rational()) return floor_rational(x.a);
  Integer k(static_cast<long>(std::floor(x.to_double())));
  // double error is far below 1 here, but verify and walk if needed
  while ((x - AlgScalar(Rational(k))).sign() < 0) k -= 1;
  while ((x - AlgScalar(Rational(k + 1))).sign() >= 0) k += 1;
  return k;
}

std::optional<AlgScalar> sqrt_exact(const AlgScalar& x) {
  if (!x.is_rational()) return std::nullopt;
  const Rational& r = x.a;
  if (r < 0) return std::nullopt;
  if (r == 0) return AlgScalar();
  // sqrt(n/q) = sqrt(n*q)/q; split n*q into s^2 * 2^(e2) * 3^(e3) * M.
  Integer radicand = r.get_num() * r.get_den();
  unsigned long e2 = mpz_remove(radicand.get_mpz_t(), radicand.get_mpz_t(), Integer(2).get_mpz_t());
  unsigned long e3 = mpz_remove(radicand.get_mpz_t(), radicand.get_mpz_t(), Integer(3).get_mpz_t());
  if (!mpz_perfect_square_p(radicand.get_mpz_t())) return std::nullopt;
  Integer s;
  mpz_sqrt(s.get_mpz_t(), radicand.get_mpz_t());
  Integer p2, p3;
  mpz_ui_pow_ui(p2.get_mpz_t(), 2, e2 / 2);
  mpz_ui_pow_ui(p3.get_mpz_t(), 3, e3 / 2);
  s *= p2 * p3;
  Rational coef = make_rational(s, r.get_den());
  bool two = e2 % 2, three = e3 % 2;
  if (!two && !three) return AlgScalar(coef);
  if (two && !three) return AlgScalar(Rational(0), coef, Rational(0), Rational(0));
  if (!two && three) return AlgScalar(Rational(0), Rational(0), coef, Rational(0));
  return AlgScalar(Rational(0), Rational(0), Rational(0), coef);
}

Scalar Scalar::apply(const Scalar& x, const Scalar& y, Op op) {
  if (x.is_exact() && y.is_exact()) {
    const AlgScalar& a = x.exact();
    const AlgScalar& b = y.exact();
    switch (op) {
      case Op::Add: return Scalar(a + b);
      case Op::Sub: return Scalar(a - b);
      case Op::Mul: return Scalar(a * b);
      case Op::Div: return Scalar(a / b);
    }
  }
  double a = x.to_double(), b = y.to_double();
  switch (op) {
    case Op::Add: return approx(a + b);
    case Op::Sub: return approx(a - b);
    case Op::Mul: return approx(a * b);
    case Op::Div:
      if (b == 0.0) throw DivisionByZeroError();
      return approx(a / b);
  }
  throw Error("unreachable");
}

Scalar Scalar::sqrt() const {
  if (sign() < 0) throw Error("sqrt of negative scalar");
  if (is_exact()) {
    if (auto root = sqrt_exact(exact())) return Scalar(*root);
  }
  return approx(std::sqrt(to_double()));
}

std::string Scalar::str() const {
  if (is_exact()) return exact().str();
  std::ostringstream os;
  os.precision(17);
  os << "~" << to_double();
  return os.str();
}

Scalar make_cos_entry(int label) {
  if (label == 0) throw InfiniteLabelError();  // 0 encodes oo throughout
  if (label < 2) throw InvalidLabelError("ridge label must be >= 2, got " + std::to_string(label));
  switch (label) {
    case 2: return Scalar(0);
    case 3: return Scalar(-1);
    case 4: return Scalar(-AlgScalar::sqrt2());
    case 6: return Scalar(-AlgScalar::sqrt3());
    default: return Scalar::approx(-2.0 * std::cos(M_PI / label));
  }
}

Scalar edge_product_value(int label) {
  Scalar e = make_cos_entry(label);
  return e * e;
}

}  // namespace vinberg
