#pragma once
// The semilocal ring (Z/m)[X]/Phi_p with m = y^N, its factorization over each
// r | y, y-adic balanced digits and p-th roots of unity.

#include "adelic/cyclotomic.hpp"

#include <map>
#include <vector>

namespace adelic {

class SemilocalElement {
 public:
  SemilocalElement() = default;
  SemilocalElement(long p, Int modulus) : p_(p), m_(std::move(modulus)), x_(static_cast<size_t>(p - 1), Int(0)) {
    require_prime(p, "semilocal prime");
    if (m_ < 2) throw invalid_input("semilocal modulus must be >= 2");
  }
  SemilocalElement(long p, Int modulus, std::vector<Int> coords) : SemilocalElement(p, std::move(modulus)) {
    if (coords.size() != static_cast<size_t>(p - 1)) throw invalid_input("semilocal element needs p-1 coordinates");
    x_ = std::move(coords);
    reduce();
  }
  static SemilocalElement one(long p, const Int& m) {
    return SemilocalElement(p, m, std::vector<Int>(static_cast<size_t>(p - 1), Int(-1)));
  }
  static SemilocalElement zeta_pow(long p, const Int& m, long k) {
    return SemilocalElement(p, m, CycloInt::zeta_pow(p, k).coords());
  }

  long p() const { return p_; }
  const Int& modulus() const { return m_; }
  const std::vector<Int>& coords() const { return x_; }
  CycloInt lift() const { return CycloInt(p_, x_); }

  friend bool operator==(const SemilocalElement& a, const SemilocalElement& b) {
    return a.p_ == b.p_ && a.m_ == b.m_ && a.x_ == b.x_;
  }
  friend bool operator!=(const SemilocalElement& a, const SemilocalElement& b) { return !(a == b); }
  friend SemilocalElement operator+(const SemilocalElement& a, const SemilocalElement& b) {
    check(a, b);
    SemilocalElement r = a;
    for (size_t i = 0; i < r.x_.size(); ++i) r.x_[i] += b.x_[i];
    r.reduce();
    return r;
  }
  friend SemilocalElement operator-(const SemilocalElement& a, const SemilocalElement& b) {
    check(a, b);
    SemilocalElement r = a;
    for (size_t i = 0; i < r.x_.size(); ++i) r.x_[i] -= b.x_[i];
    r.reduce();
    return r;
  }
  friend SemilocalElement operator*(const SemilocalElement& a, const SemilocalElement& b) {
    check(a, b);
    return SemilocalElement(a.p_, a.m_, detail::basis_mul(a.x_, b.x_, a.p_));
  }
  friend SemilocalElement operator*(const Int& s, const SemilocalElement& a) {
    SemilocalElement r = a;
    for (auto& v : r.x_) v *= s;
    r.reduce();
    return r;
  }
  SemilocalElement pow(unsigned long n) const {
    SemilocalElement acc = one(p_, m_), b = *this;
    while (n) {
      if (n & 1) acc = acc * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return acc;
  }
  // X -> X^c
  SemilocalElement galois(long c) const {
    if (c < 1 || c >= p_) throw invalid_input("Galois index out of range 1..p-1");
    return SemilocalElement(p_, m_, lift().galois(c).coords());
  }
  Int trace() const { return mod(lift().trace(), m_); }
  // Reduction to a smaller modulus dividing m.
  SemilocalElement reduced(const Int& m) const {
    if (mod(m_, m) != 0) throw invalid_input("target modulus must divide the working modulus");
    return SemilocalElement(p_, m, x_);
  }
  bool is_unit() const { return gcd(norm(), m_) == 1; }
  Int norm() const {
    SemilocalElement adj = conjugate_product();
    return mod(Int(-(*this * adj).x_[0]), m_);
  }
  // Unit iff its norm is a unit mod m; inverse = (prod_{c>1} sigma_c u) / N(u).
  SemilocalElement inverse() const {
    SemilocalElement adj = conjugate_product();
    Int n = mod(Int(-(*this * adj).x_[0]), m_);
    if (gcd(n, m_) != 1) throw precondition_failed("semilocal element is not a unit");
    return invmod(n, m_) * adj;
  }

 private:
  SemilocalElement conjugate_product() const {
    SemilocalElement acc = one(p_, m_);
    for (long c = 2; c < p_; ++c) acc = acc * galois(c);
    return acc;
  }
  static void check(const SemilocalElement& a, const SemilocalElement& b) {
    if (a.p_ != b.p_) throw invalid_input("semilocal elements over different primes");
    if (a.m_ != b.m_) throw invalid_input("semilocal elements with different moduli");
  }
  void reduce() {
    for (auto& v : x_) v = mod(v, m_);
  }
  long p_ = 0;
  Int m_;
  std::vector<Int> x_;
};

inline SemilocalElement sl_embed(const CycloInt& x, const Int& m) { return SemilocalElement(x.p(), m, x.coords()); }

inline SemilocalElement sl_embed(const CycloRat& x, const Int& m) {
  Int d = denominator(x);
  if (gcd(d, m) != 1) throw precondition_failed("denominator not invertible modulo " + m.get_str());
  Int dinv = invmod(d, m);
  std::vector<Int> v;
  for (const auto& c : x.coords()) v.push_back(Rat(c * d).get_num() * dinv);
  return SemilocalElement(x.p(), m, v);
}

inline SemilocalElement sl_embed(const Rat& q, long p, const Int& m) { return sl_embed(CycloRat::integer(p, q), m); }

inline SemilocalElement sl_galois(long c, const SemilocalElement& u) { return u.galois(c); }

// Polynomials over Z/M, lowest degree first.
struct ModPoly {
  std::vector<Int> c;
  Int M;

  ModPoly() = default;
  ModPoly(std::vector<Int> coeffs, Int modulus) : c(std::move(coeffs)), M(std::move(modulus)) { normalize(); }
  static ModPoly monomial(long deg, const Int& M) {
    std::vector<Int> v(static_cast<size_t>(deg + 1), Int(0));
    v.back() = 1;
    return {v, M};
  }
  long deg() const { return static_cast<long>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void normalize() {
    for (auto& v : c) v = mod(v, M);
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.M == b.M && a.c == b.c; }
  friend ModPoly operator+(ModPoly a, const ModPoly& b) {
    if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), Int(0));
    for (size_t i = 0; i < b.c.size(); ++i) a.c[i] += b.c[i];
    a.normalize();
    return a;
  }
  friend ModPoly operator-(ModPoly a, const ModPoly& b) {
    if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), Int(0));
    for (size_t i = 0; i < b.c.size(); ++i) a.c[i] -= b.c[i];
    a.normalize();
    return a;
  }
  friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    if (a.is_zero() || b.is_zero()) return {{}, a.M};
    std::vector<Int> v(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
    return {v, a.M};
  }
  friend ModPoly operator*(const Int& s, ModPoly a) {
    for (auto& v : a.c) v *= s;
    a.normalize();
    return a;
  }
  // Division by b whose leading coefficient is a unit mod M.
  void divmod(const ModPoly& b, ModPoly& q, ModPoly& r) const {
    if (b.is_zero()) throw invalid_input("polynomial division by zero");
    Int inv = invmod(b.c.back(), M);
    r = *this;
    q = ModPoly({}, M);
    if (r.deg() < b.deg()) return;
    q.c.assign(static_cast<size_t>(r.deg() - b.deg() + 1), Int(0));
    while (!r.is_zero() && r.deg() >= b.deg()) {
      long shift = r.deg() - b.deg();
      Int f = mod(Int(r.c.back() * inv), M);
      q.c[static_cast<size_t>(shift)] = f;
      for (size_t i = 0; i < b.c.size(); ++i) r.c[i + static_cast<size_t>(shift)] -= f * b.c[i];
      r.normalize();
    }
    q.normalize();
  }
  ModPoly operator%(const ModPoly& b) const {
    ModPoly q, r;
    divmod(b, q, r);
    return r;
  }
  ModPoly operator/(const ModPoly& b) const {
    ModPoly q, r;
    divmod(b, q, r);
    return q;
  }
  ModPoly monic() const {
    if (is_zero()) return *this;
    return invmod(c.back(), M) * *this;
  }
  ModPoly with_modulus(const Int& m) const { return {c, m}; }
};

// gcd over a field Z/r.
inline ModPoly poly_gcd(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    ModPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// s a + t b = 1 over Z/r; a, b coprime.
inline void poly_ext_gcd(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t) {
  const Int& M = a.M;
  ModPoly r0 = a, r1 = b, s0({Int(1)}, M), s1({}, M), t0({}, M), t1({Int(1)}, M);
  while (!r1.is_zero()) {
    ModPoly q, r;
    r0.divmod(r1, q, r);
    ModPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.deg() != 0) throw precondition_failed("polynomials are not coprime");
  Int inv = invmod(r0.c[0], M);
  s = inv * s0;
  t = inv * t0;
}

inline ModPoly cyclotomic_poly(long p, const Int& M) {
  return {std::vector<Int>(static_cast<size_t>(p), Int(1)), M};
}

// Basis {zeta..zeta^{p-1}} <-> standard basis {1..X^{p-2}} modulo Phi_p.
inline ModPoly to_standard(const SemilocalElement& u, const Int& M) {
  long p = u.p();
  std::vector<Int> v(static_cast<size_t>(p - 1), Int(0));
  const auto& a = u.coords();
  v[0] = -a[p - 2];
  for (long i = 1; i <= p - 2; ++i) v[i] = a[i - 1] - a[p - 2];
  return {v, M};
}

inline SemilocalElement from_standard(long p, const Int& m, const ModPoly& f) {
  ModPoly r = f.with_modulus(m) % cyclotomic_poly(p, m);
  std::vector<Int> a(static_cast<size_t>(p - 1), Int(0));
  Int c0 = r.c.empty() ? Int(0) : r.c[0];
  for (long j = 1; j <= p - 2; ++j) a[j - 1] = (j < static_cast<long>(r.c.size()) ? r.c[j] : Int(0)) - c0;
  a[p - 2] = -c0;
  return SemilocalElement(p, m, a);
}

struct LocalFactorization {
  long r = 0, p = 0, N = 0;
  Int modulus;                  // r^N
  long f = 0, g = 0;            // degree and count, g f = p - 1
  std::vector<ModPoly> factors;  // monic, mod r^N
  std::vector<SemilocalElement> idempotents;  // e_j = 1 mod Psi_j, 0 mod Psi_i
};

namespace detail {
// Splits every factor mod r using the Frobenius-invariant sums sum_t X^{i r^t}.
inline std::vector<ModPoly> split_mod_r(long p, long r, long f) {
  Int R(r);
  std::vector<ModPoly> done, todo{cyclotomic_poly(p, R)};
  for (long i = 1; i < p && !todo.empty(); ++i) {
    std::vector<Int> h(static_cast<size_t>(p), Int(0));
    long e = i;
    for (long t = 0; t < f; ++t) {
      h[static_cast<size_t>(e)] += 1;
      e = (e * r) % p;
    }
    ModPoly hp(h, R);
    std::vector<ModPoly> next;
    for (auto& F : todo) {
      if (F.deg() == f) {
        done.push_back(F);
        continue;
      }
      std::vector<ModPoly> parts{F};
      ModPoly hi = hp % F;
      for (long a = 0; a < r; ++a) {
        std::vector<ModPoly> refined;
        for (auto& P : parts) {
          ModPoly G = poly_gcd(P, (hi - ModPoly({Int(a)}, R)) % P);
          if (G.deg() > 0 && G.deg() < P.deg()) {
            refined.push_back(G);
            refined.push_back((P / G).monic());
          } else {
            refined.push_back(P);
          }
        }
        parts = std::move(refined);
      }
      for (auto& P : parts) next.push_back(P);
    }
    todo = std::move(next);
  }
  for (auto& F : todo) done.push_back(F);
  return done;
}

// Lifts Phi = psi * g (mod r, coprime) to mod r^N; returns psi mod r^N.
inline ModPoly hensel_lift(long p, long r, long N, const ModPoly& psi_r) {
  Int R(r);
  ModPoly phi_r = cyclotomic_poly(p, R);
  ModPoly g_r = phi_r / psi_r;
  ModPoly s, t;
  poly_ext_gcd(psi_r, g_r, s, t);
  Int rk = R;
  ModPoly psi = psi_r, g = g_r;
  for (long k = 1; k < N; ++k) {
    Int next = rk * R;
    ModPoly phi = cyclotomic_poly(p, next);
    ModPoly prod = psi.with_modulus(next) * g.with_modulus(next);
    ModPoly diff = phi - prod;
    std::vector<Int> ev;
    for (const auto& v : diff.c) ev.push_back(v / rk);
    ModPoly e(ev, R);
    ModPoly te = t * e, q, dpsi;
    te.divmod(psi_r, q, dpsi);
    ModPoly dg = s * e + q * g_r;
    psi = psi.with_modulus(next) + rk * dpsi.with_modulus(next);
    g = g.with_modulus(next) + rk * dg.with_modulus(next);
    rk = next;
  }
  return psi;
}

// u with u*a = 1 mod (b, r^N), starting from the inverse mod r.
inline ModPoly inverse_mod_poly(const ModPoly& a, const ModPoly& b, long r, long N) {
  Int R(r);
  ModPoly s, t;
  poly_ext_gcd(a.with_modulus(R) % b.with_modulus(R), b.with_modulus(R), s, t);
  Int M = pow_int(R, static_cast<unsigned long>(N));
  ModPoly u = s.with_modulus(M), A = a.with_modulus(M), B = b.with_modulus(M);
  for (long prec = 1; prec < N; prec *= 2) u = (u * (ModPoly({Int(2)}, M) - (A * u) % B)) % B;
  return u;
}
}  // namespace detail

inline LocalFactorization factor_phi(long r, long p, long N) {
  require_prime(p, "factor_phi prime p");
  if (!is_prime(r)) throw invalid_input("factor_phi needs a prime r");
  if (r == p) throw invalid_input("r = p is ramified and not factored here");
  if (N < 1) throw invalid_input("precision N must be >= 1");
  if (r > 100000) throw invalid_input("factor_phi supports r <= 100000");
  LocalFactorization L;
  L.r = r;
  L.p = p;
  L.N = N;
  L.modulus = pow_int(Int(r), static_cast<unsigned long>(N));
  L.f = mult_order(r, p);
  L.g = (p - 1) / L.f;
  auto mod_r = detail::split_mod_r(p, r, L.f);
  std::sort(mod_r.begin(), mod_r.end(), [](const ModPoly& a, const ModPoly& b) {
    return std::lexicographical_compare(a.c.begin(), a.c.end(), b.c.begin(), b.c.end());
  });
  for (const auto& F : mod_r) L.factors.push_back(detail::hensel_lift(p, r, N, F));
  ModPoly phi = cyclotomic_poly(p, L.modulus);
  for (const auto& F : L.factors) {
    ModPoly cof = phi / F;
    ModPoly u = detail::inverse_mod_poly(cof, F, r, N);
    L.idempotents.push_back(from_standard(p, L.modulus, cof * u));
  }
  return L;
}

// Reduction of u modulo each factor.
inline std::vector<ModPoly> local_components(const LocalFactorization& L, const SemilocalElement& u) {
  std::vector<ModPoly> out;
  ModPoly f = to_standard(u.reduced(L.modulus), L.modulus);
  for (const auto& F : L.factors) out.push_back(f % F);
  return out;
}

// Coordinatewise CRT of elements over pairwise coprime moduli.
inline SemilocalElement crt_combine(const std::vector<SemilocalElement>& parts) {
  if (parts.empty()) throw invalid_input("CRT of nothing");
  long p = parts[0].p();
  Int M = 1;
  for (const auto& u : parts) M *= u.modulus();
  std::vector<Int> acc(static_cast<size_t>(p - 1), Int(0));
  for (const auto& u : parts) {
    Int Mi = M / u.modulus();
    Int w = Mi * invmod(Mi, u.modulus());
    for (long j = 0; j < p - 1; ++j) acc[j] += w * u.coords()[j];
  }
  return SemilocalElement(p, M, acc);
}

struct YDigits {
  Int y;
  std::vector<CycloInt> digits;
};

inline Int balanced_coord(const Int& c, const Int& y) { return balanced_mod(c, y); }

inline bool in_balanced_set(const CycloInt& t, const Int& y) {
  for (const auto& c : t.coords())
    if (2 * c <= -y || 2 * c > y) return false;
  return true;
}

// Balanced y-adic digits, y of either sign; requires |y|^M | modulus.
inline YDigits y_digits(const SemilocalElement& u, const Int& y, long M) {
  Int Y = abs_int(y);
  if (Y < 2) throw invalid_input("digit base must have |y| >= 2");
  if (mod(u.modulus(), pow_int(Y, static_cast<unsigned long>(M))) != 0)
    throw precondition_failed("insufficient precision: y^M does not divide the modulus");
  YDigits out{y, {}};
  std::vector<Int> cur = u.coords();
  for (long n = 0; n < M; ++n) {
    std::vector<Int> d(cur.size());
    for (size_t i = 0; i < cur.size(); ++i) {
      d[i] = balanced_mod(cur[i], Y);
      cur[i] = (cur[i] - d[i]) / y;
    }
    out.digits.emplace_back(u.p(), d);
  }
  return out;
}

inline SemilocalElement y_reassemble(const YDigits& d, long p, const Int& m) {
  SemilocalElement acc(p, m);
  Int yp = 1;
  for (const auto& t : d.digits) {
    acc = acc + yp * sl_embed(t, m);
    yp *= d.y;
  }
  return acc;
}

// rho = u / v, required to satisfy rho^p = 1.
inline SemilocalElement root_of_unity_quotient(const SemilocalElement& u, const SemilocalElement& v) {
  SemilocalElement rho = u * v.inverse();
  if (rho.pow(static_cast<unsigned long>(u.p())) != SemilocalElement::one(u.p(), u.modulus()))
    throw precondition_failed("quotient is not a p-th root of unity at the working precision");
  return rho;
}

// True iff rho is the image of a global root of unity zeta^k.
inline std::optional<long> global_root_index(const SemilocalElement& rho) {
  for (long k = 0; k < rho.p(); ++k)
    if (rho == SemilocalElement::zeta_pow(rho.p(), rho.modulus(), k)) return k;
  return std::nullopt;
}

// Local root sum_j zeta^{exponents[j]} e_j over the factors of L.
inline SemilocalElement local_root_of_unity(const LocalFactorization& L, const std::vector<long>& exponents) {
  if (exponents.size() != L.idempotents.size()) throw invalid_input("one exponent per local factor required");
  SemilocalElement acc(L.p, L.modulus);
  for (size_t j = 0; j < exponents.size(); ++j)
    acc = acc + SemilocalElement::zeta_pow(L.p, L.modulus, exponents[j]) * L.idempotents[j];
  return acc;
}

// Factorizations for every prime r | y at precision v_r(y^N).
inline std::vector<LocalFactorization> factor_over(long p, const Int& y, long N) {
  std::vector<LocalFactorization> out;
  for (long r : prime_factors(y)) out.push_back(factor_phi(r, p, static_cast<long>(valuation(y, r)) * N));
  return out;
}

// The unique p-th root of R congruent to 1 mod y, by Newton iteration.
inline SemilocalElement pth_root_near_one(const SemilocalElement& R, const Int& y) {
  long p = R.p();
  const Int& m = R.modulus();
  SemilocalElement one = SemilocalElement::one(p, m);
  if ((R - one).reduced(y) != SemilocalElement(p, y)) throw precondition_failed("R is not 1 mod y");
  SemilocalElement g = one;
  for (int it = 0; it < 256; ++it) {
    SemilocalElement gp1 = g.pow(static_cast<unsigned long>(p - 1));
    SemilocalElement err = gp1 * g - R;
    if (err == SemilocalElement(p, m)) return g;
    g = g - err * (Int(p) * gp1).inverse();
  }
  throw precondition_failed("Newton iteration for the p-th root did not converge");
}

}  // namespace adelic
