#include "prg/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace prg {

namespace {

bool is_perfect_square(const Integer& z) {
  return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (!is_perfect_square(r.get_num()) || !is_perfect_square(r.get_den())) {
    return std::nullopt;
  }
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  Rational out(n, d);
  out.canonicalize();
  return out;
}

// q*sqrt(d) rewritten over radicand `target`, when d/target is a square.
std::optional<Rational> rebase_coefficient(const RadicalExpr& e,
                                           const Rational& target) {
  if (e.is_rational()) return Rational(0);
  if (e.d() == target) return e.q();
  if (target == 0) return std::nullopt;
  auto s = exact_sqrt(e.d() / target);
  if (!s) return std::nullopt;
  return Rational(e.q() * *s);
}

std::size_t bit_length(const Integer& z) {
  if (z == 0) return 0;
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

// Floor of sqrt(d) * 2^bits / 2^bits, error below 2^-bits.
Rational sqrt_lower(const Rational& d, unsigned bits) {
  Integer scaled = d.get_num() * d.get_den();
  scaled <<= 2 * bits;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Integer den = d.get_den();
  den <<= bits;
  Rational out(root, den);
  out.canonicalize();
  return out;
}

Integer round_half_up(const Rational& r) {
  Rational shifted = r + Rational(1, 2);
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), shifted.get_num_mpz_t(),
             shifted.get_den_mpz_t());
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw NumericError("malformed number: empty");
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  auto strip_plus = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
      throw NumericError("malformed number: " + s);
    }
    Integer n(strip_plus(num)), d(den);
    if (d == 0) throw NumericError("malformed number: zero denominator");
    Rational out(n, d);
    out.canonicalize();
    return out;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    std::string digits_whole = whole;
    if (!digits_whole.empty() && (digits_whole[0] == '-' || digits_whole[0] == '+')) {
      digits_whole.erase(0, 1);
    }
    if (digits_whole.empty()) digits_whole = "0";
    if (frac.empty() || !valid_int(digits_whole) || !valid_int(frac) ||
        frac[0] == '-' || frac[0] == '+') {
      throw NumericError("malformed number: " + s);
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rational out(Integer(digits_whole) * scale + Integer(frac), scale);
    out.canonicalize();
    return negative ? Rational(-out) : out;
  }
  if (!valid_int(s)) throw NumericError("malformed number: " + s);
  return Rational(Integer(strip_plus(s)));
}

std::string to_string(const Rational& value) {
  Rational r = value;
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

int sign_of(const Rational& p, const Rational& q, const Rational& d) {
  int sp = sgn(p);
  int sq = (d == 0) ? 0 : sgn(q);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // Opposite signs: compare p^2 with q^2 d.
  int c = cmp(Rational(p * p), Rational(q * q * d));
  if (c > 0) return sp;
  if (c < 0) return sq;
  return 0;
}

int sign_of(const Rational& a, const Rational& b, const Rational& d1,
            const Rational& c, const Rational& d2) {
  int sx = sign_of(a, b, d1);
  int sy = (d2 == 0) ? 0 : sgn(c);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  // |a + b sqrt(d1)| vs |c sqrt(d2)|: compare the squares, which live in
  // the single extension Q(sqrt(d1)).
  int s = sign_of(Rational(a * a + b * b * d1 - c * c * d2), Rational(2 * a * b), d1);
  if (s > 0) return sx;
  if (s < 0) return sy;
  return 0;
}

RadicalExpr::RadicalExpr(const Rational& p) : p_(p) {}

RadicalExpr::RadicalExpr(Rational p, Rational q, Rational d)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {
  if (d_ < 0) throw NumericError("negative radicand");
  canonicalize();
}

void RadicalExpr::canonicalize() {
  if (q_ == 0 || d_ == 0) {
    q_ = 0;
    d_ = 0;
    return;
  }
  if (auto s = exact_sqrt(d_)) {
    p_ += q_ * *s;
    q_ = 0;
    d_ = 0;
  }
}

Rational RadicalExpr::common_radicand(const RadicalExpr& a,
                                      const RadicalExpr& b) {
  if (a.is_rational()) return b.d_;
  if (b.is_rational()) return a.d_;
  if (a.d_ == b.d_) return a.d_;
  if (rebase_coefficient(b, a.d_)) return a.d_;
  throw NumericError("operands lie in different quadratic extensions");
}

RadicalExpr operator+(const RadicalExpr& a, const RadicalExpr& b) {
  Rational d = RadicalExpr::common_radicand(a, b);
  return {a.p_ + b.p_, *rebase_coefficient(a, d) + *rebase_coefficient(b, d), d};
}

RadicalExpr operator-(const RadicalExpr& a, const RadicalExpr& b) {
  return a + (-b);
}

RadicalExpr operator*(const RadicalExpr& a, const RadicalExpr& b) {
  Rational d = RadicalExpr::common_radicand(a, b);
  Rational qa = *rebase_coefficient(a, d), qb = *rebase_coefficient(b, d);
  return {a.p_ * b.p_ + qa * qb * d, a.p_ * qb + b.p_ * qa, d};
}

RadicalExpr operator/(const RadicalExpr& a, const RadicalExpr& b) {
  if (sign(b) == 0) throw NumericError("division by zero");
  if (b.is_rational()) return {a.p_ / b.p_, a.q_ / b.p_, a.d_};
  Rational norm = b.p_ * b.p_ - b.q_ * b.q_ * b.d_;
  RadicalExpr conj(b.p_ / norm, -b.q_ / norm, b.d_);
  return a * conj;
}

bool operator==(const RadicalExpr& a, const RadicalExpr& b) {
  return compare_cross(a, b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const RadicalExpr& a, const RadicalExpr& b) {
  return compare_cross(a, b);
}

int sign(const RadicalExpr& e) { return sign_of(e.p(), e.q(), e.d()); }

std::strong_ordering compare_cross(const RadicalExpr& a, const RadicalExpr& b) {
  int s;
  if (a.is_rational() || b.is_rational() || a.d() == b.d()) {
    s = sign(a - b);
  } else {
    s = sign_of(Rational(a.p() - b.p()), a.q(), a.d(), Rational(-b.q()), b.d());
  }
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational approx_rational(const RadicalExpr& e, unsigned bits) {
  if (e.is_rational()) return e.p();
  Rational aq = abs(e.q());
  long extra = static_cast<long>(bit_length(aq.get_num())) -
               static_cast<long>(bit_length(aq.get_den())) + 2;
  unsigned b = bits + static_cast<unsigned>(std::max(0L, extra));
  return e.p() + e.q() * sqrt_lower(e.d(), b);
}

double to_double(const Rational& r) { return r.get_d(); }

double to_double(const RadicalExpr& e) {
  return approx_rational(e, 80).get_d();
}

Rational rational_between(const RadicalExpr& lo, const RadicalExpr& hi) {
  if (compare_cross(lo, hi) != std::strong_ordering::less) {
    throw NumericError("empty interval");
  }
  for (unsigned k = 0; k < 1u << 16; ++k) {
    Rational mid = (approx_rational(lo, k + 8) + approx_rational(hi, k + 8)) / 2;
    Integer scale = 1;
    scale <<= k;
    Rational cand(round_half_up(mid * scale), scale);
    cand.canonicalize();
    if (compare_cross(lo, cand) == std::strong_ordering::less &&
        compare_cross(cand, hi) == std::strong_ordering::less) {
      return cand;
    }
  }
  throw NumericError("rational_between: refinement did not converge");
}

std::string approx(const RadicalExpr& e, int digits) {
  if (digits < 0 || digits > 10000) throw NumericError("approx: digits out of range");
  int s = sign(e);
  RadicalExpr mag = s < 0 ? -e : e;
  // 10^-(digits+2) > 2^-bits
  unsigned bits = static_cast<unsigned>((digits + 2) * 3.33) + 8;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Integer scaled = round_half_up(approx_rational(mag, bits) * scale);
  if (scaled < 0) scaled = 0;
  std::string body = scaled.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return (s < 0 ? "-" : "") + body;
}

std::string to_exact_string(const RadicalExpr& e) {
  if (e.is_rational()) return to_string(e.p());
  std::ostringstream os;
  if (e.p() != 0) os << to_string(e.p()) << (e.q() < 0 ? " - " : " + ");
  else if (e.q() < 0) os << "-";
  Rational aq = abs(e.q());
  if (aq != 1) os << to_string(aq) << "*";
  os << "sqrt(" << to_string(e.d()) << ")";
  return os.str();
}

}  // namespace prg
