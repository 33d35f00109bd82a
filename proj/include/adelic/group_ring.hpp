#pragma once
// Group ring Z[G] and (Z/m)[G] for G = (Z/p)^x.
// An element stores n_c for c in 1..p-1 and denotes sum_c n_c sigma_c^{-1}.

#include "adelic/arith.hpp"

#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace adelic {

class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(long p, std::optional<Int> modulus = std::nullopt)
      : p_(p), n_(static_cast<size_t>(p), Int(0)), modulus_(std::move(modulus)) {
    require_prime(p, "group ring prime");
    if (modulus_ && *modulus_ < 2) throw invalid_input("group ring modulus must be >= 2");
  }

  // sum_c coeffs[c-1] sigma_c^{-1}
  static GroupRingElement from_coeffs(long p, const std::vector<Int>& coeffs,
                                      std::optional<Int> modulus = std::nullopt) {
    GroupRingElement t(p, std::move(modulus));
    if (coeffs.size() != static_cast<size_t>(p - 1)) throw invalid_input("coefficient vector must have p-1 entries");
    for (long c = 1; c < p; ++c) t.n_[c] = coeffs[c - 1];
    t.normalize();
    return t;
  }

  // The automorphism sigma_c itself, i.e. coefficient 1 at key c^{-1}.
  static GroupRingElement sigma(long p, long c, std::optional<Int> modulus = std::nullopt) {
    GroupRingElement t(p, std::move(modulus));
    c = mod(c, p);
    if (c == 0) throw invalid_input("sigma_c needs c prime to p");
    t.n_[invmod(c, p)] = 1;
    return t;
  }
  static GroupRingElement one(long p, std::optional<Int> modulus = std::nullopt) { return sigma(p, 1, modulus); }
  static GroupRingElement norm_element(long p) {
    GroupRingElement t(p);
    for (long c = 1; c < p; ++c) t.n_[c] = 1;
    return t;
  }

  long p() const { return p_; }
  const std::optional<Int>& modulus() const { return modulus_; }
  const Int& operator[](long c) const { return n_.at(static_cast<size_t>(c)); }
  void set(long c, const Int& v) {
    if (c < 1 || c >= p_) throw invalid_input("group ring key out of range");
    n_[c] = v;
    normalize();
  }
  std::vector<Int> coeffs() const { return {n_.begin() + 1, n_.end()}; }

  GroupRingElement reduced(const Int& m) const {
    GroupRingElement t = *this;
    t.modulus_ = m;
    t.normalize();
    return t;
  }
  GroupRingElement lifted() const {
    GroupRingElement t = *this;
    t.modulus_.reset();
    return t;
  }

  bool is_zero() const {
    for (long c = 1; c < p_; ++c)
      if (n_[c] != 0) return false;
    return true;
  }

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.p_ == b.p_ && a.modulus_ == b.modulus_ && a.n_ == b.n_;
  }

  friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
    check_compatible(a, b);
    GroupRingElement t = a;
    for (long c = 1; c < a.p_; ++c) t.n_[c] += b.n_[c];
    t.normalize();
    return t;
  }
  friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
    check_compatible(a, b);
    GroupRingElement t = a;
    for (long c = 1; c < a.p_; ++c) t.n_[c] -= b.n_[c];
    t.normalize();
    return t;
  }
  friend GroupRingElement operator*(const Int& s, const GroupRingElement& a) {
    GroupRingElement t = a;
    for (long c = 1; c < a.p_; ++c) t.n_[c] *= s;
    t.normalize();
    return t;
  }
  // Convolution under sigma_a^{-1} sigma_b^{-1} = sigma_{ab}^{-1}.
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    check_compatible(a, b);
    GroupRingElement t(a.p_, a.modulus_);
    for (long i = 1; i < a.p_; ++i) {
      if (a.n_[i] == 0) continue;
      for (long j = 1; j < a.p_; ++j)
        if (b.n_[j] != 0) t.n_[(i * j) % a.p_] += a.n_[i] * b.n_[j];
    }
    t.normalize();
    return t;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (long c = 1; c < p_; ++c) os << (c > 1 ? "," : "") << n_[c];
    os << "]";
    if (modulus_) os << " mod " << *modulus_;
    return os.str();
  }

 private:
  static void check_compatible(const GroupRingElement& a, const GroupRingElement& b) {
    if (a.p_ != b.p_) throw invalid_input("group ring elements over different primes");
    if (a.modulus_ != b.modulus_) throw invalid_input("group ring elements with different moduli");
  }
  void normalize() {
    if (!modulus_) return;
    for (long c = 1; c < p_; ++c) n_[c] = mod(n_[c], *modulus_);
  }

  long p_ = 0;
  std::vector<Int> n_;  // index 0 unused
  std::optional<Int> modulus_;
};

inline std::ostream& operator<<(std::ostream& os, const GroupRingElement& t) { return os << t.str(); }

inline GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b) { return a * b; }

// Action of sigma_m by left multiplication.
inline GroupRingElement apply_sigma(long m, const GroupRingElement& t) {
  return GroupRingElement::sigma(t.p(), m, t.modulus()) * t;
}

// j = sigma_{p-1}
inline GroupRingElement complex_conj(const GroupRingElement& t) { return apply_sigma(t.p() - 1, t); }

struct Weights {
  Int absolute;
  std::optional<Int> relative;  // constant n_c + n_{p-c}, if any
  bool positive = true;
};

inline Weights weights(const GroupRingElement& t) {
  if (t.modulus()) throw invalid_input("weights need an element over Z");
  Weights w;
  long p = t.p();
  for (long c = 1; c < p; ++c) {
    w.absolute += abs_int(t[c]);
    if (t[c] < 0) w.positive = false;
  }
  Int r = t[1] + t[p - 1];
  bool constant = true;
  for (long c = 2; c < p; ++c)
    if (t[c] + t[p - c] != r) constant = false;
  if (constant) w.relative = r;
  return w;
}

struct IdempotentElement {
  long k = 0;
  GroupRingElement element;
};

// e_k = -sum_a a^k sigma_a^{-1} over F_p.
inline IdempotentElement idempotent_mod_p(long p, long k) {
  require_prime(p, "idempotent prime");
  if (k < 0 || k > p - 2) throw invalid_input("idempotent index out of range 0..p-2");
  GroupRingElement e(p, Int(p));
  for (long a = 1; a < p; ++a) e.set(a, Int(-powmod(a, k, p)));
  return {k, e};
}

// One generator per divisor d of p-1: nu = g^{(p-1)/d} of order d, g the least primitive root.
inline std::vector<long> subgroup_generators(long p) {
  long g = primitive_root(p);
  std::vector<long> gens;
  for (long d = 1; d <= p - 1; ++d)
    if ((p - 1) % d == 0) gens.push_back(powmod(g, (p - 1) / d, p));
  return gens;
}

// Generators nu of the subgroups H with (nu - 1) t = 0, ordered by |H|.
inline std::vector<long> subgroup_fix_test(const GroupRingElement& t) {
  std::vector<long> fixing;
  for (long nu : subgroup_generators(t.p()))
    if (apply_sigma(nu, t) == t) fixing.push_back(nu);
  return fixing;
}

}  // namespace adelic
