#pragma once
// Exact arithmetic in Z[zeta] and Q(zeta) in the basis {zeta, ..., zeta^{p-1}}.

#include "adelic/arith.hpp"
#include "adelic/group_ring.hpp"

#include <optional>
#include <sstream>
#include <vector>

namespace adelic {

namespace detail {
// Product in the basis {zeta^1..zeta^{p-1}}: cyclic convolution, then fold the
// zeta^0 coefficient using 1 = -sum zeta^j.
template <class T>
std::vector<T> basis_mul(const std::vector<T>& a, const std::vector<T>& b, long p) {
  std::vector<T> full(static_cast<size_t>(p), T(0));
  for (long i = 1; i < p; ++i) {
    if (a[i - 1] == 0) continue;
    for (long j = 1; j < p; ++j)
      if (b[j - 1] != 0) full[static_cast<size_t>((i + j) % p)] += a[i - 1] * b[j - 1];
  }
  std::vector<T> out(static_cast<size_t>(p - 1));
  for (long k = 1; k < p; ++k) out[k - 1] = full[k] - full[0];
  return out;
}

// Coefficients indexed by exponent 0..p-1 folded into the basis.
template <class T>
std::vector<T> fold_exponents(const std::vector<T>& full, long p) {
  std::vector<T> out(static_cast<size_t>(p - 1));
  for (long k = 1; k < p; ++k) out[k - 1] = full[k] - full[0];
  return out;
}
}  // namespace detail

template <class T>
class Cyclo {
 public:
  Cyclo() = default;
  explicit Cyclo(long p) : p_(p), x_(static_cast<size_t>(p - 1), T(0)) { require_prime(p, "cyclotomic prime"); }
  Cyclo(long p, std::vector<T> coords) : p_(p), x_(std::move(coords)) {
    require_prime(p, "cyclotomic prime");
    if (x_.size() != static_cast<size_t>(p - 1)) throw invalid_input("cyclotomic element needs p-1 coordinates");
  }

  static Cyclo integer(long p, const T& m) { return Cyclo(p, std::vector<T>(static_cast<size_t>(p - 1), T(-m))); }
  static Cyclo one(long p) { return integer(p, T(1)); }
  static Cyclo zeta_pow(long p, long k) {
    k = mod(k, p);
    if (k == 0) return one(p);
    Cyclo z(p);
    z.x_[k - 1] = 1;
    return z;
  }
  static Cyclo zeta(long p) { return zeta_pow(p, 1); }
  static Cyclo lambda(long p) { return one(p) - zeta(p); }
  // sum_k c[k] zeta^k, k = 0..p-1
  static Cyclo from_exponents(long p, const std::vector<T>& c) {
    if (c.size() != static_cast<size_t>(p)) throw invalid_input("exponent vector needs p entries");
    return Cyclo(p, detail::fold_exponents(c, p));
  }

  long p() const { return p_; }
  const std::vector<T>& coords() const { return x_; }
  const T& coord(long j) const { return x_.at(static_cast<size_t>(j - 1)); }  // coefficient of zeta^j

  bool is_zero() const {
    for (const auto& v : x_)
      if (v != 0) return false;
    return true;
  }
  // Rational integer m iff all coordinates equal -m.
  std::optional<T> as_rational() const {
    for (const auto& v : x_)
      if (v != x_[0]) return std::nullopt;
    return T(-x_[0]);
  }

  friend bool operator==(const Cyclo& a, const Cyclo& b) { return a.p_ == b.p_ && a.x_ == b.x_; }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    check(a, b);
    Cyclo r = a;
    for (size_t i = 0; i < r.x_.size(); ++i) r.x_[i] += b.x_[i];
    return r;
  }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    check(a, b);
    Cyclo r = a;
    for (size_t i = 0; i < r.x_.size(); ++i) r.x_[i] -= b.x_[i];
    return r;
  }
  Cyclo operator-() const {
    Cyclo r = *this;
    for (auto& v : r.x_) v = -v;
    return r;
  }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    check(a, b);
    return Cyclo(a.p_, detail::basis_mul(a.x_, b.x_, a.p_));
  }
  friend Cyclo operator*(const T& s, const Cyclo& a) {
    Cyclo r = a;
    for (auto& v : r.x_) v *= s;
    return r;
  }
  Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
  Cyclo& operator-=(const Cyclo& b) { return *this = *this - b; }
  Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }

  // sigma_c: zeta -> zeta^c
  Cyclo galois(long c) const {
    c = mod(c, p_);
    if (c == 0) throw invalid_input("sigma_c needs c prime to p");
    Cyclo r(p_);
    for (long j = 1; j < p_; ++j) r.x_[(j * c) % p_ - 1] = x_[j - 1];
    return r;
  }
  Cyclo conj() const { return galois(p_ - 1); }

  T trace() const {
    T s = 0;
    for (const auto& v : x_) s -= v;
    return s;
  }

  Cyclo pow(unsigned long n) const {
    Cyclo acc = one(p_), b = *this;
    while (n) {
      if (n & 1) acc *= b;
      b *= b;
      n >>= 1;
    }
    return acc;
  }

  std::string str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < x_.size(); ++i) os << (i ? "," : "") << x_[i];
    os << ")";
    return os.str();
  }

 private:
  static void check(const Cyclo& a, const Cyclo& b) {
    if (a.p_ != b.p_) throw invalid_input("cyclotomic elements over different primes");
  }
  long p_ = 0;
  std::vector<T> x_;
};

using CycloInt = Cyclo<Int>;
using CycloRat = Cyclo<Rat>;

inline CycloRat to_rat(const CycloInt& a) {
  std::vector<Rat> v;
  v.reserve(a.coords().size());
  for (const auto& c : a.coords()) v.emplace_back(c);
  return CycloRat(a.p(), v);
}

inline bool is_integral(const CycloRat& a) {
  for (const auto& c : a.coords())
    if (c.get_den() != 1) return false;
  return true;
}

inline CycloInt to_int(const CycloRat& a) {
  std::vector<Int> v;
  for (const auto& c : a.coords()) {
    if (c.get_den() != 1) throw precondition_failed("element is not integral");
    v.emplace_back(c.get_num());
  }
  return CycloInt(a.p(), v);
}

// Least common denominator of the coordinates.
inline Int denominator(const CycloRat& a) {
  Int d = 1;
  for (const auto& c : a.coords()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  return d;
}

namespace detail {
// Univariate polynomials over Q, index = degree.
using QPoly = std::vector<Rat>;

inline void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline QPoly poly_rem(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Rat resultant(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  Rat acc = 1;
  while (true) {
    long da = static_cast<long>(a.size()) - 1, db = static_cast<long>(b.size()) - 1;
    if (db == 0) {
      Rat r = 1;
      for (long i = 0; i < da; ++i) r *= b[0];
      return acc * r;
    }
    QPoly r = poly_rem(a, b);
    if (r.empty()) return 0;
    long dr = static_cast<long>(r.size()) - 1;
    if ((da * db) % 2) acc = -acc;
    for (long i = 0; i < da - dr; ++i) acc *= b.back();
    a = std::move(b);
    b = std::move(r);
  }
}
}  // namespace detail

// N(x) = Res(Phi_p, sum_j x_j X^j).
template <class T>
Rat norm(const Cyclo<T>& x) {
  long p = x.p();
  detail::QPoly phi(static_cast<size_t>(p), Rat(1));
  detail::QPoly f(static_cast<size_t>(p), Rat(0));
  for (long j = 1; j < p; ++j) f[j] = Rat(x.coord(j));
  return detail::resultant(phi, f);
}

inline Int norm_int(const CycloInt& x) {
  Rat n = norm(x);
  return n.get_num();
}

// Product of the conjugates sigma_c(x), c = 2..p-1.
template <class T>
Cyclo<T> conjugate_product(const Cyclo<T>& x) {
  Cyclo<T> acc = Cyclo<T>::one(x.p());
  for (long c = 2; c < x.p(); ++c) acc *= x.galois(c);
  return acc;
}

inline CycloRat inverse(const CycloRat& x) {
  if (x.is_zero()) throw invalid_input("inverse of zero");
  CycloRat adj = conjugate_product(x);
  Rat n = (x * adj).as_rational().value();
  return Rat(1 / n) * adj;
}

// x^theta = prod_c sigma_c^{-1}(x)^{n_c}; negative n_c need an invertible x.
inline CycloRat act(const CycloRat& x, const GroupRingElement& theta) {
  if (theta.p() != x.p()) throw invalid_input("group ring and field primes differ");
  long p = x.p();
  CycloRat acc = CycloRat::one(p);
  for (long c = 1; c < p; ++c) {
    Int n = theta[c];
    if (n == 0) continue;
    CycloRat base = x.galois(invmod(c, p));
    if (n < 0) {
      base = inverse(base);
      n = -n;
    }
    acc *= base.pow(n.get_ui());
  }
  return acc;
}

inline CycloInt act(const CycloInt& x, const GroupRingElement& theta) {
  for (long c = 1; c < x.p(); ++c)
    if (theta[c] < 0) return to_int(act(to_rat(x), theta));
  long p = x.p();
  CycloInt acc = CycloInt::one(p);
  for (long c = 1; c < p; ++c)
    if (theta[c] != 0) acc *= x.galois(invmod(c, p)).pow(theta[c].get_ui());
  return acc;
}

// p/(1-zeta) = -sum_c c zeta^c
inline CycloInt p_over_lambda(long p) {
  CycloInt r(p);
  std::vector<Int> v(static_cast<size_t>(p - 1));
  for (long c = 1; c < p; ++c) v[c - 1] = -c;
  return CycloInt(p, v);
}

// Exact division by lambda = 1 - zeta; throws unless lambda | w.
inline CycloInt div_lambda(const CycloInt& w) {
  long p = w.p();
  CycloInt t = w * p_over_lambda(p);
  std::vector<Int> v = t.coords();
  for (auto& c : v) {
    if (mod(c, Int(p)) != 0) throw precondition_failed("element not divisible by lambda");
    c /= p;
  }
  return CycloInt(p, v);
}

struct LambdaExpansion {
  std::vector<Int> digits;
  long valuation = -1;  // index of the first nonzero digit, -1 if none within M
  bool terminated = false;
  CycloInt remainder;  // w = sum d_j lambda^j + lambda^M * remainder
};

inline LambdaExpansion lambda_expand(const CycloInt& w, long M, bool balanced) {
  if (M < 1) throw invalid_input("lambda expansion needs M >= 1");
  long p = w.p();
  Int P(p);
  LambdaExpansion out;
  CycloInt cur = w;
  for (long j = 0; j < M; ++j) {
    Int s = 0;
    for (const auto& c : cur.coords()) s += c;
    Int d = balanced ? balanced_mod(s, P) : mod(s, P);
    out.digits.push_back(d);
    if (d != 0 && out.valuation < 0) out.valuation = j;
    cur = div_lambda(cur - CycloInt::integer(p, d));
  }
  out.terminated = cur.is_zero();
  out.remainder = cur;
  return out;
}

inline CycloInt lambda_reassemble(const LambdaExpansion& e, long p) {
  CycloInt acc = CycloInt(p), lp = CycloInt::one(p), lam = CycloInt::lambda(p);
  for (const auto& d : e.digits) {
    acc += d * lp;
    lp *= lam;
  }
  return acc + lp * e.remainder;
}

// Coordinates in the basis; the standard basis vectors are the images of zeta^j.
inline std::vector<Rat> kappa(const CycloRat& x) { return x.coords(); }
inline std::vector<Rat> kappa(const CycloInt& x) { return to_rat(x).coords(); }
inline CycloRat kappa_inv(long p, const std::vector<Rat>& r) { return CycloRat(p, r); }

// (Tr((zeta^{-c} - 1) x))_c = p kappa(x) for every x.
template <class T>
std::vector<T> kappa_by_trace(const Cyclo<T>& x) {
  long p = x.p();
  std::vector<T> out;
  for (long c = 1; c < p; ++c) out.push_back(((Cyclo<T>::zeta_pow(p, -c) - Cyclo<T>::one(p)) * x).trace());
  return out;
}

// (Tr((1 + zeta^{-c}) x))_c = p kappa(x) + 2 Tr(x); equals p kappa(x) iff Tr(x) = 0.
template <class T>
std::vector<T> kappa_by_trace_plus(const Cyclo<T>& x) {
  long p = x.p();
  std::vector<T> out;
  for (long c = 1; c < p; ++c) out.push_back(((Cyclo<T>::one(p) + Cyclo<T>::zeta_pow(p, -c)) * x).trace());
  return out;
}

// <x,y> = Tr(x * conj(y))
template <class T>
T trace_pairing(const Cyclo<T>& x, const Cyclo<T>& y) {
  return (x * y.conj()).trace();
}

// Tr(x v) = p sum_j x_j v_{p-j} - (sum x)(sum v)
template <class T>
T trace_product_coordinates(const Cyclo<T>& x, const Cyclo<T>& v) {
  long p = x.p();
  T s = 0, sx = 0, sv = 0;
  for (long j = 1; j < p; ++j) {
    s += x.coord(j) * v.coord(p - j);
    sx += x.coord(j);
    sv += v.coord(j);
  }
  return T(p) * s - sx * sv;
}

struct NormComparison {
  Int sup;         // |kappa(x)|_inf
  Int l2_squared;  // sum kappa(x)_c^2
  Int pairing;     // Tr(x conj(x))
  bool pairing_identity = false;  // Tr(x conj(x)) = p sum x_c^2
  bool squared_chain = false;     // p^2 sup^2 <= p^2 l2^2 <= p^2 (p-1) sup^2
  bool literal_chain = false;     // p sup <= Tr(x conj(x)) <= p sqrt(p-1) sup
};

inline NormComparison norms_compare(const CycloInt& x) {
  if (x.trace() != 0) throw invalid_input("norms_compare needs a trace-zero element");
  long p = x.p();
  NormComparison r;
  for (const auto& c : x.coords()) {
    r.sup = std::max(r.sup, abs_int(c));
    r.l2_squared += c * c;
  }
  r.pairing = trace_pairing(x, x);
  r.pairing_identity = r.pairing == p * r.l2_squared;
  Int p2 = Int(p) * p;
  r.squared_chain = p2 * r.sup * r.sup <= p2 * r.l2_squared && p2 * r.l2_squared <= p2 * (p - 1) * r.sup * r.sup;
  // p sqrt(p-1) sup >= Q  <=>  p^2 (p-1) sup^2 >= Q^2
  r.literal_chain = p * r.sup <= r.pairing && r.pairing * r.pairing <= p2 * (p - 1) * r.sup * r.sup;
  return r;
}

}  // namespace adelic
