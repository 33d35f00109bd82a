#pragma once
// Formal binomial series F_theta(T) = (1 + zeta T)^{(1-j) theta / p}, their
// semilocal sums, the double digit table and the Wieferich-type sums.

#include "adelic/archimedean.hpp"
#include "adelic/semilocal.hpp"

#include <optional>
#include <vector>

namespace adelic {

using Series = std::vector<CycloRat>;  // index = power of T

namespace detail {
inline Series series_mul(const Series& a, const Series& b, long M) {
  long p = a[0].p();
  Series out(static_cast<size_t>(M + 1), CycloRat(p));
  for (long i = 0; i <= M && i < static_cast<long>(a.size()); ++i) {
    if (a[i].is_zero()) continue;
    for (long j = 0; i + j <= M && j < static_cast<long>(b.size()); ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Inverse of a series with constant term 1.
inline Series series_inverse(const Series& a, long M) {
  long p = a[0].p();
  if (a[0] != CycloRat::one(p)) throw invalid_input("series inverse needs constant term 1");
  Series inv(static_cast<size_t>(M + 1), CycloRat(p));
  inv[0] = CycloRat::one(p);
  for (long m = 1; m <= M; ++m) {
    CycloRat s(p);
    for (long k = 1; k <= m && k < static_cast<long>(a.size()); ++k) s += a[k] * inv[m - k];
    inv[m] = -s;
  }
  return inv;
}

// (1 + zeta^k T)^r, r rational.
inline Series binomial_series(long p, long k, const Rat& r, long M) {
  Series s(static_cast<size_t>(M + 1), CycloRat(p));
  for (long n = 0; n <= M; ++n) s[n] = binomial(r, static_cast<unsigned long>(n)) * CycloRat::zeta_pow(p, k * n);
  return s;
}

inline Series series_one(long p, long M) {
  Series s(static_cast<size_t>(M + 1), CycloRat(p));
  s[0] = CycloRat::one(p);
  return s;
}
}  // namespace detail

enum class SeriesVariant { full, underline };

struct SeriesTable {
  GroupRingElement theta;
  long M = 0;
  SeriesVariant variant = SeriesVariant::full;
  long d = 0;                        // exponent denominator: p, or q for the q-variant
  std::vector<CycloRat> a;           // a_0..a_M
  std::vector<CycloInt> numerators;  // d^{E(m)} a_m
  std::vector<unsigned long> E;      // E(m) = m + v_d(m!)
  std::vector<Int> denominators;     // d^{E(m)}
  bool integral = true;              // every numerator lies in Z[zeta]
};

inline unsigned long series_exponent(unsigned long m, long d) { return m + factorial_valuation(m, d); }

// G_theta(T) = prod_c (1 + zeta^{1/c} T)^{n_c/d}
inline Series underline_series(const GroupRingElement& theta, long M, long d) {
  long p = theta.p();
  Series acc = detail::series_one(p, M);
  for (long c = 1; c < p; ++c)
    if (theta[c] != 0)
      acc = detail::series_mul(acc, detail::binomial_series(p, invmod(c, p), Rat(theta[c]) / Rat(d), M), M);
  return acc;
}

inline SeriesTable binom_coeffs(const GroupRingElement& theta, long M, SeriesVariant variant = SeriesVariant::full,
                                std::optional<long> q = std::nullopt) {
  if (theta.modulus()) throw invalid_input("series need theta over Z");
  if (M < 0) throw invalid_input("truncation order must be >= 0");
  long p = theta.p();
  long d = q.value_or(p);
  if (q) {
    require_prime(*q, "q-variant prime");
    if (*q == p) throw invalid_input("q must differ from p");
  }
  SeriesTable t;
  t.theta = theta;
  t.M = M;
  t.variant = variant;
  t.d = d;
  Series s = underline_series(theta, M, d);
  if (variant == SeriesVariant::full)
    s = detail::series_mul(s, detail::series_inverse(underline_series(complex_conj(theta), M, d), M), M);
  t.a = s;
  for (long m = 0; m <= M; ++m) {
    unsigned long e = series_exponent(static_cast<unsigned long>(m), d);
    Int den = pow_int(Int(d), e);
    CycloRat scaled = Rat(den) * s[m];
    t.E.push_back(e);
    t.denominators.push_back(den);
    if (!is_integral(scaled)) {
      t.integral = false;
      t.numerators.push_back(CycloInt(p));
    } else {
      t.numerators.push_back(to_int(scaled));
    }
  }
  return t;
}

// Same series as a direct product over both factors, without division.
inline Series binom_series_direct(const GroupRingElement& theta, long M, std::optional<long> q = std::nullopt) {
  long p = theta.p(), d = q.value_or(p);
  Series acc = detail::series_one(p, M);
  for (long c = 1; c < p; ++c) {
    if (theta[c] == 0) continue;
    Rat r = Rat(theta[c]) / Rat(d);
    long k = invmod(c, p);
    acc = detail::series_mul(acc, detail::binomial_series(p, k, r, M), M);
    acc = detail::series_mul(acc, detail::binomial_series(p, p - k, Rat(-r), M), M);
  }
  return acc;
}

struct PowerCheck {
  bool pass = false;
  long first_mismatch = -1;
};

// S_M(T)^d == (1+zeta T)^theta (1+conj(zeta) T)^{-theta} mod T^{M+1}, d = p or q.
inline PowerCheck pth_power_check(const GroupRingElement& theta, long M, std::optional<long> q = std::nullopt) {
  long p = theta.p(), d = q.value_or(p);
  SeriesTable t = binom_coeffs(theta, M, SeriesVariant::full, q);
  Series lhs = detail::series_one(p, M);
  for (long i = 0; i < d; ++i) lhs = detail::series_mul(lhs, t.a, M);
  // Polynomials prod (1 + mu T)^{|n|}, inverted where the exponent is negative.
  Series num = detail::series_one(p, M), den = detail::series_one(p, M);
  auto linear = [&](long k) {
    Series s = detail::series_one(p, M);
    if (M >= 1) s[1] = CycloRat::zeta_pow(p, k);
    return s;
  };
  for (long c = 1; c < p; ++c) {
    Int n = theta[c];
    long k = invmod(c, p);
    Series up = linear(k), down = linear(p - k);
    for (Int i = 0; i < abs_int(n); ++i) {
      if (n > 0) {
        num = detail::series_mul(num, up, M);
        den = detail::series_mul(den, down, M);
      } else {
        num = detail::series_mul(num, down, M);
        den = detail::series_mul(den, up, M);
      }
    }
  }
  Series rhs = detail::series_mul(num, detail::series_inverse(den, M), M);
  PowerCheck out;
  out.pass = true;
  for (long m = 0; m <= M; ++m)
    if (lhs[m] != rhs[m]) {
      out.pass = false;
      out.first_mismatch = m;
      break;
    }
  return out;
}

struct BoundCheck {
  Rat bound;               // |binom(-2w/d, m)| (full) or |binom(-w/d, m)| (underline)
  double max_magnitude = 0;  // max_c |sigma_c(a_m)|
  bool holds = false;
};

inline BoundCheck coeff_bound_check(const SeriesTable& t, long m, long margin_bits = 20) {
  if (m < 0 || m > t.M) throw invalid_input("coefficient index beyond truncation");
  Int w = weights(t.theta).absolute;
  Rat r = (t.variant == SeriesVariant::full ? Rat(-2 * w) : Rat(-w)) / Rat(t.d);
  BoundCheck out;
  out.bound = abs(binomial(r, static_cast<unsigned long>(m)));
  if (m == 0) {
    out.holds = t.a[0] == CycloRat::one(t.theta.p()) && out.bound == 1;
    out.max_magnitude = 1;
    return out;
  }
  out.holds = true;
  for (long c = 1; c < t.theta.p(); ++c) {
    auto cm = certified_abs_le(t.a[m], c, out.bound, margin_bits);
    out.max_magnitude = std::max(out.max_magnitude, cm.value);
    if (!cm.below) out.holds = false;
  }
  return out;
}

// sum_{n < terms} a_n (y/x)^n in (Z/m)[X]/Phi_p.
inline SemilocalElement sl_eval_at(const SeriesTable& t, const Int& x, const Int& y, const Int& m, long terms) {
  long p = t.theta.p();
  if (terms > t.M + 1) throw precondition_failed("series table too short for the requested precision");
  if (gcd(x, m) != 1) throw precondition_failed("x not invertible modulo the working modulus");
  Int ratio_ = mod(Int(y * invmod(x, m)), m), pw = 1;
  SemilocalElement acc(p, m);
  for (long n = 0; n < terms; ++n) {
    if (gcd(t.denominators[n], m) != 1) throw precondition_failed("series denominator not invertible");
    acc = acc + mod(Int(pw * invmod(t.denominators[n], m)), m) * sl_embed(t.numerators[n], m);
    pw = mod(Int(pw * ratio_), m);
  }
  return acc;
}

struct SemilocalSum {
  SemilocalElement value;  // Phi_theta mod y^N
  bool stable = false;     // S_{N-1} and S_N agree mod y^N
};

inline SemilocalSum sl_eval(const SeriesTable& t, const Int& x, const Int& y, long N) {
  if (y == 0) throw invalid_input("sl_eval needs y != 0; the y = 0 sum is 1");
  if (gcd(x, y) != 1) throw invalid_input("x and y are not coprime");
  if (mod(y, Int(t.d)) == 0) throw precondition_failed("y divisible by the series denominator prime");
  Int m = pow_int(abs_int(y), static_cast<unsigned long>(N));
  SemilocalSum out;
  out.value = sl_eval_at(t, x, y, m, N);
  out.stable = sl_eval_at(t, x, y, m, N + 1) == out.value;
  return out;
}

// sigma_c(Phi_theta) == Phi_{sigma_c theta} for every c.
inline bool sl_equivariance(const GroupRingElement& theta, const Int& x, const Int& y, long N) {
  SeriesTable t = binom_coeffs(theta, N);
  SemilocalElement phi = sl_eval(t, x, y, N).value;
  for (long c = 1; c < theta.p(); ++c) {
    SeriesTable tc = binom_coeffs(apply_sigma(c, theta), N);
    if (sl_eval(tc, x, y, N).value != phi.galois(c)) return false;
  }
  return true;
}

struct DoubleTable {
  long p = 0;
  Int x, y;
  long cutoff = 0;
  std::vector<Int> denominators;            // c_n, n < cutoff
  std::vector<std::vector<CycloInt>> b;     // b[n][h], n + h < cutoff
  SemilocalElement rho;
  bool reassembly_ok = false;
};

// sum_{n+h<K} y^{n+h} b_{n,h} / (d_{n,h} c_n) modulo y^K; d defaults to 1.
inline SemilocalElement double_sum_at(const DoubleTable& dt, const std::vector<std::vector<long>>* d, long K) {
  Int m = pow_int(abs_int(dt.y), static_cast<unsigned long>(K));
  SemilocalElement acc(dt.p, m);
  for (long n = 0; n < K; ++n)
    for (long h = 0; n + h < K; ++h) {
      Int den = dt.denominators[n] * (d ? Int((*d)[n][h]) : Int(1));
      Int coef = mod(Int(pow_int(dt.y, static_cast<unsigned long>(n + h)) * invmod(den, m)), m);
      acc = acc + coef * sl_embed(dt.b[n][h], m);
    }
  return acc;
}

// b_{n,h}: balanced y-digits of rho * a'_n * x^{-n}.
inline DoubleTable double_table(const SeriesTable& t, const SemilocalElement& rho, const Int& x, const Int& y,
                                long cutoff) {
  long p = t.theta.p();
  if (cutoff < 1) throw invalid_input("cutoff must be >= 1");
  if (cutoff > t.M + 1) throw precondition_failed("precision shortfall: series table shorter than cutoff");
  Int Y = abs_int(y);
  Int m = pow_int(Y, static_cast<unsigned long>(cutoff));
  if (mod(rho.modulus(), m) != 0) throw precondition_failed("precision shortfall: rho known below y^cutoff");
  SemilocalElement r = rho.reduced(m);
  if (r.pow(static_cast<unsigned long>(p)) != SemilocalElement::one(p, m))
    throw precondition_failed("rho is not a p-th root of unity");
  DoubleTable dt;
  dt.p = p;
  dt.x = x;
  dt.y = y;
  dt.cutoff = cutoff;
  dt.rho = r;
  Int xinv = invmod(x, m), xp = 1;
  for (long n = 0; n < cutoff; ++n) {
    dt.denominators.push_back(t.denominators[n]);
    SemilocalElement u = xp * (r * sl_embed(t.numerators[n], m));
    Int mn = pow_int(Y, static_cast<unsigned long>(cutoff - n));
    YDigits digs = y_digits(u.reduced(mn), y, cutoff - n);
    dt.b.push_back(digs.digits);
    xp = mod(Int(xp * xinv), m);
  }
  dt.reassembly_ok = double_sum_at(dt, nullptr, cutoff) == r * sl_eval_at(t, x, y, m, cutoff);
  return dt;
}

struct WieferichSums {
  long p = 0;
  CycloInt S;        // 2 sum_{c > p/2} p/(1 - zeta^{1/c})   (psi = 2 psi_1)
  CycloInt S_lower;  // 2 sum_{c < p/2} p/(1 - zeta^{1/c})   (psi = 2 j psi_1)
  bool conjugate_sum = false;    // S + S_lower = p(p-1)
  bool half_congruence = false;  // S/2 = p/(8 lambda) mod p
  bool diff_congruence = false;  // 2S - p(p-1) = p/(2 lambda) mod p
  bool diff_nonzero = false;     // p/(2 lambda) != 0 mod p
  bool lower_half_congruence = false;  // S_lower/2 = -p/(8 lambda) mod p
  bool lower_diff_congruence = false;  // 2 S_lower - p(p-1) = -p/(2 lambda) mod p
};

inline WieferichSums wieferich_sums(long p) {
  require_prime(p, "Wieferich sum prime");
  if (p < 5) throw invalid_input("Wieferich sums need p >= 5");
  WieferichSums w;
  w.p = p;
  CycloInt base = p_over_lambda(p);
  CycloInt upper(p), lower(p);
  for (long c = 1; c < p; ++c) (2 * c > p ? upper : lower) += base.galois(invmod(c, p));
  w.S = Int(2) * upper;
  w.S_lower = Int(2) * lower;
  Int P(p);
  auto congruent = [&](const CycloInt& a, const CycloInt& b) {
    for (long j = 1; j < p; ++j)
      if (mod(Int(a.coord(j) - b.coord(j)), P) != 0) return false;
    return true;
  };
  CycloInt pp1 = CycloInt::integer(p, Int(p * (p - 1)));
  Int inv2 = invmod(Int(2), P), inv8 = invmod(Int(8), P);
  w.conjugate_sum = w.S + w.S_lower == pp1;
  w.half_congruence = congruent(inv2 * w.S, inv8 * base);
  w.diff_congruence = congruent(Int(2) * w.S - pp1, inv2 * base);
  w.diff_nonzero = !congruent(inv2 * base, CycloInt(p));
  w.lower_half_congruence = congruent(inv2 * w.S_lower, Int(-inv8) * base);
  w.lower_diff_congruence = congruent(Int(2) * w.S_lower - pp1, Int(-inv2) * base);
  return w;
}

}  // namespace adelic
