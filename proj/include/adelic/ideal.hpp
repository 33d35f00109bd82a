#pragma once
// Ideals of Z[zeta] as Hermite normal forms of Z-bases in the zeta-power basis,
// and the characteristic number/ideal attached to a solution.

#include "adelic/cyclotomic.hpp"
#include "adelic/matrix.hpp"

#include <vector>

namespace adelic {

class CycloIdeal {
 public:
  // Z-span of zeta^k g, k = 0..p-2, over all generators g.
  static CycloIdeal from_generators(const std::vector<CycloInt>& gens) {
    if (gens.empty()) throw invalid_input("ideal needs at least one generator");
    long p = gens[0].p();
    IntMatrix rows;
    for (const auto& g : gens) {
      if (g.p() != p) throw invalid_input("generators over different primes");
      CycloInt cur = g;
      CycloInt z = CycloInt::zeta(p);
      for (long k = 0; k < p - 1; ++k) {
        rows.push_back(cur.coords());
        cur *= z;
      }
    }
    return from_rows(p, std::move(rows));
  }

  static CycloIdeal unit(long p) { return from_generators({CycloInt::one(p)}); }

  long p() const { return p_; }
  const IntMatrix& hnf_matrix() const { return hnf_; }

  Int norm() const {
    Int n = 1;
    for (size_t i = 0; i < hnf_.size(); ++i) n *= hnf_[i][i];
    return n;
  }
  bool is_unit() const { return norm() == 1; }

  bool contains(const CycloInt& x) const {
    IntVec v = x.coords();
    for (size_t i = 0; i < hnf_.size(); ++i) {
      if (v[i] == 0) continue;
      if (mod(v[i], hnf_[i][i]) != 0) return false;
      Int q = v[i] / hnf_[i][i];
      detail::row_axpy(v, q, hnf_[i]);
    }
    return is_zero_vec(v);
  }

  friend bool operator==(const CycloIdeal& a, const CycloIdeal& b) { return a.p_ == b.p_ && a.hnf_ == b.hnf_; }

  friend CycloIdeal operator*(const CycloIdeal& a, const CycloIdeal& b) {
    if (a.p_ != b.p_) throw invalid_input("ideals over different primes");
    IntMatrix rows;
    for (const auto& r : a.hnf_)
      for (const auto& s : b.hnf_) rows.push_back((CycloInt(a.p_, r) * CycloInt(a.p_, s)).coords());
    return from_rows(a.p_, std::move(rows));
  }
  CycloIdeal pow(unsigned long n) const {
    CycloIdeal acc = unit(p_), b = *this;
    while (n) {
      if (n & 1) acc = acc * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return acc;
  }
  // Sum of ideals (gcd).
  friend CycloIdeal operator+(const CycloIdeal& a, const CycloIdeal& b) {
    IntMatrix rows = a.hnf_;
    rows.insert(rows.end(), b.hnf_.begin(), b.hnf_.end());
    return from_rows(a.p_, std::move(rows));
  }

 private:
  static CycloIdeal from_rows(long p, IntMatrix rows) {
    CycloIdeal I;
    I.p_ = p;
    I.hnf_ = hnf(std::move(rows));
    if (I.hnf_.size() != static_cast<size_t>(p - 1)) throw invalid_input("zero ideal");
    CycloInt z = CycloInt::zeta(p);
    for (const auto& r : I.hnf_)
      if (!I.contains(CycloInt(p, r) * z)) throw precondition_failed("HNF basis not closed under zeta");
    return I;
  }
  long p_ = 0;
  IntMatrix hnf_;
};

struct CharacteristicData {
  CycloInt alpha;
  CycloIdeal ideal;  // (alpha, z)
  bool alpha_integral = false;
  bool norm_alpha_is_zp = false;        // N(alpha) = z^p
  bool ideal_power_is_principal = false;  // A^p = (alpha)
  bool ideal_norm_is_z = false;         // N(A) = |z|
  bool conjugates_coprime = false;      // (sigma_c alpha, sigma_d alpha) = (1)
  bool y_dominates_x = false;       // |y| > |x|
  bool y_z_bounds = false;           // |y| > |z| > 2p
};

inline bool is_solution(long p, int e, const Int& x, const Int& y, const Int& z, std::optional<long> q = std::nullopt) {
  if (x + y == 0) return false;
  Int lhs = pow_int(x, static_cast<unsigned long>(p)) + pow_int(y, static_cast<unsigned long>(p));
  if (mod(lhs, Int(x + y)) != 0) return false;
  lhs /= (x + y);
  Int rhs = pow_int(Int(p), static_cast<unsigned long>(e)) * pow_int(z, static_cast<unsigned long>(q.value_or(p)));
  return lhs == rhs;
}

inline CharacteristicData characteristic_data(long p, int e, const Int& x, const Int& y, const Int& z) {
  require_prime(p, "characteristic data prime");
  if (e != 0 && e != 1) throw invalid_input("e must be 0 or 1");
  if (gcd(x, y) != 1) throw invalid_input("x and y are not coprime");
  if (!is_solution(p, e, x, y, z)) throw invalid_input("(x, y, z, e) does not solve the equation");
  if (e == 1 && mod(Int(x + y), Int(p)) != 0) throw invalid_input("e = 1 requires p | x + y");

  CharacteristicData d;
  CycloInt base = CycloInt::integer(p, x) + y * CycloInt::zeta(p);
  d.alpha = base;
  d.alpha_integral = true;
  if (e == 1) {
    try {
      d.alpha = div_lambda(base);
    } catch (const precondition_failed&) {
      d.alpha_integral = false;
      return d;
    }
  }
  d.norm_alpha_is_zp = norm_int(d.alpha) == pow_int(z, static_cast<unsigned long>(p));
  d.ideal = CycloIdeal::from_generators({d.alpha, CycloInt::integer(p, z)});
  d.ideal_power_is_principal = d.ideal.pow(static_cast<unsigned long>(p)) == CycloIdeal::from_generators({d.alpha});
  d.ideal_norm_is_z = d.ideal.norm() == abs_int(z);
  // (sigma_c a, sigma_d a) = sigma_c (a, sigma_{d/c} a): pairs (1, d) suffice.
  d.conjugates_coprime = true;
  for (long c = 2; c < p; ++c)
    if (!CycloIdeal::from_generators({d.alpha, d.alpha.galois(c)}).is_unit()) d.conjugates_coprime = false;
  d.y_dominates_x = abs_int(y) > abs_int(x);
  d.y_z_bounds = abs_int(y) > abs_int(z) && abs_int(z) > 2 * p;
  return d;
}

}  // namespace adelic
