#pragma once

// Exact arithmetic over the rationals and one-level radical expressions
// p + q*sqrt(d).  Every coordinate computed by the library lives here.

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace prg {

using Rational = mpq_class;
using Integer = mpz_class;

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "n", "p/q" or a plain decimal such as "-1.25".
Rational parse_rational(std::string_view text);
/// Canonical form: "n" for integers, otherwise "p/q" (reduced, q > 0).
std::string to_string(const Rational& r);

/// Sign of p + q*sqrt(d), d >= 0.
int sign_of(const Rational& p, const Rational& q, const Rational& d);
/// Sign of a + b*sqrt(d1) + c*sqrt(d2), resolved by two squarings.
int sign_of(const Rational& a, const Rational& b, const Rational& d1,
            const Rational& c, const Rational& d2);

/// The real number p + q*sqrt(d).  Radicands are not square-free
/// normalized; a perfect-square radicand is folded into p.
class RadicalExpr {
 public:
  RadicalExpr() = default;
  RadicalExpr(const Rational& p);  // NOLINT: rationals embed implicitly
  RadicalExpr(long p) : RadicalExpr(Rational(p)) {}  // NOLINT
  RadicalExpr(Rational p, Rational q, Rational d);

  static RadicalExpr sqrt_of(const Rational& d) { return {0, 1, d}; }

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }
  const Rational& d() const { return d_; }
  bool is_rational() const { return q_ == 0; }

  /// Radicand shared by two values, or throws when they live in
  /// different quadratic extensions.
  static Rational common_radicand(const RadicalExpr& a, const RadicalExpr& b);

  RadicalExpr operator-() const { return {-p_, -q_, d_}; }
  friend RadicalExpr operator+(const RadicalExpr& a, const RadicalExpr& b);
  friend RadicalExpr operator-(const RadicalExpr& a, const RadicalExpr& b);
  friend RadicalExpr operator*(const RadicalExpr& a, const RadicalExpr& b);
  /// Division by a nonzero element of the same extension.
  friend RadicalExpr operator/(const RadicalExpr& a, const RadicalExpr& b);

  friend bool operator==(const RadicalExpr& a, const RadicalExpr& b);
  friend std::strong_ordering operator<=>(const RadicalExpr& a,
                                          const RadicalExpr& b);

 private:
  void canonicalize();

  Rational p_{0};
  Rational q_{0};
  Rational d_{0};
};

int sign(const RadicalExpr& e);
std::strong_ordering compare_cross(const RadicalExpr& a, const RadicalExpr& b);

/// Rational r with lo < r < hi, preferring short dyadic fractions.
/// Throws NumericError("empty interval") unless lo < hi.
Rational rational_between(const RadicalExpr& lo, const RadicalExpr& hi);

/// Rational approximation with absolute error below 2^-bits.
Rational approx_rational(const RadicalExpr& e, unsigned bits);
double to_double(const RadicalExpr& e);
double to_double(const Rational& r);

/// Decimal string rounded to `digits` fractional digits; absolute error is
/// below 10^-digits and a leading '-' is printed iff sign(e) < 0.
std::string approx(const RadicalExpr& e, int digits);

/// Human-readable exact form, e.g. "1/2 + 3*sqrt(5/4)".
std::string to_exact_string(const RadicalExpr& e);

}  // namespace prg
