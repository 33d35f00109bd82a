#pragma once
// Certified magnitudes |sigma_c(x)| at zeta = exp(2 pi i / p) via MPFR.

#include "adelic/cyclotomic.hpp"

#include <mpfr.h>

namespace adelic {

namespace detail {
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};
}  // namespace detail

struct CertifiedMagnitude {
  double value = 0;  // approximation of |sigma_c(x)|
  double error = 0;  // absolute error bound
  bool below = false;  // value + error <= bound (1 - 2^-margin_bits)
};

// Working precision 256 bits; per-term rounding error is below 2^-240 |x_j|.
inline CertifiedMagnitude certified_abs_le(const CycloRat& x, long c, const Rat& bound, long margin_bits = 20) {
  constexpr mpfr_prec_t prec = 256;
  long p = x.p();
  detail::Mpfr re(prec), im(prec), ang(prec), cs(prec), sn(prec), term(prec), coeff(prec), mag(prec), lim(prec),
      err(prec), tmp(prec);
  mpfr_set_zero(re.get(), 1);
  mpfr_set_zero(im.get(), 1);
  Rat l1 = 0;
  for (long j = 1; j < p; ++j) {
    const Rat& q = x.coord(j);
    if (q == 0) continue;
    l1 += abs(q);
    mpfr_const_pi(ang.get(), MPFR_RNDN);
    mpfr_mul_si(ang.get(), ang.get(), 2 * ((c * j) % p), MPFR_RNDN);
    mpfr_div_si(ang.get(), ang.get(), p, MPFR_RNDN);
    mpfr_sin_cos(sn.get(), cs.get(), ang.get(), MPFR_RNDN);
    mpfr_set_q(coeff.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term.get(), coeff.get(), cs.get(), MPFR_RNDN);
    mpfr_add(re.get(), re.get(), term.get(), MPFR_RNDN);
    mpfr_mul(term.get(), coeff.get(), sn.get(), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), term.get(), MPFR_RNDN);
  }
  mpfr_hypot(mag.get(), re.get(), im.get(), MPFR_RNDN);
  // err = (l1 + 1) * 2^-230
  Rat l1p = l1 + 1;
  mpfr_set_q(err.get(), l1p.get_mpq_t(), MPFR_RNDU);
  mpfr_mul_2si(err.get(), err.get(), -230, MPFR_RNDU);
  // lim = bound * (1 - 2^-margin)
  mpfr_set_q(lim.get(), bound.get_mpq_t(), MPFR_RNDD);
  mpfr_set_ui(tmp.get(), 1, MPFR_RNDN);
  mpfr_mul_2si(tmp.get(), tmp.get(), -margin_bits, MPFR_RNDN);
  mpfr_ui_sub(tmp.get(), 1, tmp.get(), MPFR_RNDD);
  mpfr_mul(lim.get(), lim.get(), tmp.get(), MPFR_RNDD);
  CertifiedMagnitude out;
  out.value = mpfr_get_d(mag.get(), MPFR_RNDN);
  out.error = mpfr_get_d(err.get(), MPFR_RNDU);
  mpfr_add(tmp.get(), mag.get(), err.get(), MPFR_RNDU);
  out.below = mpfr_lessequal_p(tmp.get(), lim.get()) != 0;
  return out;
}

}  // namespace adelic
