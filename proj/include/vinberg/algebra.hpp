#ifndef VINBERG_ALGEBRA_HPP
#define VINBERG_ALGEBRA_HPP

#include <optional>
#include <string>
#include <variant>

#include "vinberg/rational.hpp"

namespace vinberg {

/**
 * Element of the field Q(sqrt2, sqrt3), stored as a + b*sqrt2 + c*sqrt3 + d*sqrt6
 * with rational coordinates. {1, sqrt2, sqrt3, sqrt6} is a Q-basis, so the
 * representation is unique and an element vanishes iff all four coordinates do.
 */
struct AlgScalar {
  Rational a, b, c, d;

  AlgScalar() : a(0), b(0), c(0), d(0) {}
  AlgScalar(long v) : a(v), b(0), c(0), d(0) {}  // NOLINT: implicit by design
  AlgScalar(Rational v) : a(std::move(v)), b(0), c(0), d(0) {}
  AlgScalar(Rational a_, Rational b_, Rational c_, Rational d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

  static AlgScalar sqrt2() { return {Rational(0), Rational(1), Rational(0), Rational(0)}; }
  static AlgScalar sqrt3() { return {Rational(0), Rational(0), Rational(1), Rational(0)}; }
  static AlgScalar sqrt6() { return {Rational(0), Rational(0), Rational(0), Rational(1)}; }

  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  bool is_rational() const { return b == 0 && c == 0 && d == 0; }
  bool is_integer() const { return is_rational() && vinberg::is_integer(a); }

  friend AlgScalar operator+(const AlgScalar& x, const AlgScalar& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend AlgScalar operator-(const AlgScalar& x, const AlgScalar& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend AlgScalar operator-(const AlgScalar& x) { return {-x.a, -x.b, -x.c, -x.d}; }

  // Basis products: s2*s3 = s6, s2*s6 = 2*s3, s3*s6 = 3*s2.
  friend AlgScalar operator*(const AlgScalar& x, const AlgScalar& y) {
    return {x.a * y.a + 2 * x.b * y.b + 3 * x.c * y.c + 6 * x.d * y.d,
            x.a * y.b + x.b * y.a + 3 * (x.c * y.d + x.d * y.c),
            x.a * y.c + x.c * y.a + 2 * (x.b * y.d + x.d * y.b),
            x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b};
  }

  /** Galois conjugates: flip the sign of sqrt2 and/or sqrt3. */
  AlgScalar conj2() const { return {a, -b, c, -d}; }
  AlgScalar conj3() const { return {a, b, -c, -d}; }
  AlgScalar conj23() const { return {a, -b, -c, d}; }

  friend AlgScalar operator/(const AlgScalar& x, const AlgScalar& y) {
    if (y.is_zero()) throw DivisionByZeroError();
    // y * cofactor is the rational field norm of y.
    AlgScalar cof = y.conj2() * y.conj3() * y.conj23();
    AlgScalar prod = y * cof;  // rational by Galois invariance
    const Rational& norm = prod.a;
    AlgScalar num = x * cof;
    return {num.a / norm, num.b / norm, num.c / norm, num.d / norm};
  }

  friend bool operator==(const AlgScalar& x, const AlgScalar& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const AlgScalar& x, const AlgScalar& y) { return !(x == y); }

  /**
   * Exact sign (-1, 0, +1), decided by interval refinement: rational enclosures
   * of sqrt2/sqrt3/sqrt6 are tightened by bisection until the value's interval
   * excludes 0. The all-coordinates-zero test short-circuits, and nonzero
   * elements are bounded away from 0, so refinement terminates.
   */
  int sign() const;

  double to_double() const;
  std::string str() const;
};

inline bool operator<(const AlgScalar& x, const AlgScalar& y) { return (x - y).sign() < 0; }
inline bool operator>(const AlgScalar& x, const AlgScalar& y) { return (x - y).sign() > 0; }
inline bool operator<=(const AlgScalar& x, const AlgScalar& y) { return (x - y).sign() <= 0; }
inline bool operator>=(const AlgScalar& x, const AlgScalar& y) { return (x - y).sign() >= 0; }

/** Largest integer <= x, decided with exact signs. */
Integer floor_alg(const AlgScalar& x);

/**
 * Exact square root when one exists in the field and the radicand is rational:
 * succeeds iff the squarefree part of the radicand is 1, 2, 3 or 6.
 * Irrational radicands are not attempted (nullopt).
 */
std::optional<AlgScalar> sqrt_exact(const AlgScalar& x);

/**
 * Scalar = Exact (field element) | Approx (double). Arithmetic on two Exact
 * values stays exact; any operation touching an Approx value yields Approx.
 * Integrality queries on Approx raise ApproxIntegralityError: approximation
 * never silently decides an exact question.
 */
class Scalar {
 public:
  Scalar() : v_(AlgScalar()) {}
  Scalar(long x) : v_(AlgScalar(x)) {}  // NOLINT: implicit by design
  Scalar(AlgScalar x) : v_(std::move(x)) {}
  Scalar(Rational x) : v_(AlgScalar(std::move(x))) {}
  static Scalar approx(double x) {
    Scalar s;
    s.v_ = x;
    return s;
  }

  bool is_exact() const { return std::holds_alternative<AlgScalar>(v_); }
  const AlgScalar& exact() const {
    if (!is_exact()) throw ApproxDataError("exact() on approx scalar");
    return std::get<AlgScalar>(v_);
  }
  double to_double() const {
    return is_exact() ? std::get<AlgScalar>(v_).to_double() : std::get<double>(v_);
  }

  bool is_integer() const {
    if (!is_exact()) throw ApproxIntegralityError();
    return exact().is_integer();
  }
  bool is_zero() const { return is_exact() ? exact().is_zero() : to_double() == 0.0; }

  /** Exact on Exact values; on Approx values the double's sign (not certified). */
  int sign() const {
    if (is_exact()) return exact().sign();
    double x = to_double();
    return x > 0 ? 1 : (x < 0 ? -1 : 0);
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) { return apply(x, y, Op::Add); }
  friend Scalar operator-(const Scalar& x, const Scalar& y) { return apply(x, y, Op::Sub); }
  friend Scalar operator*(const Scalar& x, const Scalar& y) { return apply(x, y, Op::Mul); }
  friend Scalar operator/(const Scalar& x, const Scalar& y) { return apply(x, y, Op::Div); }
  friend Scalar operator-(const Scalar& x) { return Scalar(0) - x; }

  /** Exact equality on Exact pairs; anything else compares doubles. */
  friend bool operator==(const Scalar& x, const Scalar& y) {
    if (x.is_exact() && y.is_exact()) return x.exact() == y.exact();
    return x.to_double() == y.to_double();
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  /** Square root: keeps exactness when the root lies in the field. */
  Scalar sqrt() const;

  std::string str() const;

 private:
  enum class Op { Add, Sub, Mul, Div };
  static Scalar apply(const Scalar& x, const Scalar& y, Op op);
  std::variant<AlgScalar, double> v_;
};

/**
 * Off-diagonal Cartan entry -2 cos(pi/m) for a ridge labelled m: exact for
 * m in {2,3,4,6} (0, -1, -sqrt2, -sqrt3), approximate for other finite m,
 * and an InfiniteLabelError for m = oo (the entry is not label-determined).
 */
Scalar make_cos_entry(int label);

/** 4 cos^2(pi/m) as a Scalar; exact values 0,1,2,3 for m in {2,3,4,6}. */
Scalar edge_product_value(int label);

}  // namespace vinberg

#endif
