#pragma once

// MPFR interval evaluation of p + q*sqrt(d); test-only oracle for the exact
// sign and comparison kernel.

#include <mpfr.h>

#include "prg/numeric.hpp"

namespace prg::testing {

class Interval {
 public:
  explicit Interval(mpfr_prec_t bits = 200) {
    mpfr_init2(lo_, bits);
    mpfr_init2(hi_, bits);
  }
  Interval(const Interval&) = delete;
  Interval& operator=(const Interval&) = delete;
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  void assign(const prg::RadicalExpr& e) {
    mpfr_prec_t bits = mpfr_get_prec(lo_);
    mpfr_t p_lo, p_hi, q_lo, q_hi, s_lo, s_hi, t_lo, t_hi;
    for (auto* v : {&p_lo, &p_hi, &q_lo, &q_hi, &s_lo, &s_hi, &t_lo, &t_hi}) {
      mpfr_init2(*v, bits);
    }
    mpfr_set_q(p_lo, e.p().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(p_hi, e.p().get_mpq_t(), MPFR_RNDU);
    mpfr_set_q(q_lo, e.q().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(q_hi, e.q().get_mpq_t(), MPFR_RNDU);
    mpfr_set_q(s_lo, e.d().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(s_hi, e.d().get_mpq_t(), MPFR_RNDU);
    mpfr_sqrt(s_lo, s_lo, MPFR_RNDD);
    mpfr_sqrt(s_hi, s_hi, MPFR_RNDU);
    if (e.q() >= 0) {
      mpfr_mul(t_lo, q_lo, s_lo, MPFR_RNDD);
      mpfr_mul(t_hi, q_hi, s_hi, MPFR_RNDU);
    } else {
      mpfr_mul(t_lo, q_lo, s_hi, MPFR_RNDD);
      mpfr_mul(t_hi, q_hi, s_lo, MPFR_RNDU);
    }
    mpfr_add(lo_, p_lo, t_lo, MPFR_RNDD);
    mpfr_add(hi_, p_hi, t_hi, MPFR_RNDU);
    for (auto* v : {&p_lo, &p_hi, &q_lo, &q_hi, &s_lo, &s_hi, &t_lo, &t_hi}) {
      mpfr_clear(*v);
    }
  }

  /// this := a - b
  void assign_difference(const Interval& a, const Interval& b) {
    mpfr_sub(lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(hi_, a.hi_, b.lo_, MPFR_RNDU);
  }

  /// +1 / -1 when the interval excludes zero, 0 when undecided.
  int certified_sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
  }

  double midpoint() const {
    return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
  }

 private:
  mpfr_t lo_, hi_;
};

inline int interval_sign(const prg::RadicalExpr& e) {
  Interval iv;
  iv.assign(e);
  return iv.certified_sign();
}

inline int interval_compare(const prg::RadicalExpr& a, const prg::RadicalExpr& b) {
  Interval ia, ib, diff;
  ia.assign(a);
  ib.assign(b);
  diff.assign_difference(ia, ib);
  return diff.certified_sign();
}

}  // namespace prg::testing
