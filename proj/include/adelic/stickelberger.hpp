#pragma once
// Stickelberger ideal generators, the Fermat quotient map, modified idempotents
// and Bernoulli profiles.

#include "adelic/group_ring.hpp"
#include "adelic/matrix.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace adelic {

struct cross_check_mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct construction_failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact B_0..B_n (B_1 = -1/2) by the Akiyama-Tanigawa recurrence.
inline std::vector<Rat> bernoulli_numbers(unsigned long n) {
  std::vector<Rat> B(n + 1), a(n + 1);
  for (unsigned long m = 0; m <= n; ++m) {
    a[m] = ratio(1, static_cast<long>(m + 1));
    for (unsigned long j = m; j >= 1; --j) {
      a[j - 1] = Rat(static_cast<long>(j)) * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    B[m] = a[0];  // Akiyama-Tanigawa yields B_1 = +1/2
  }
  if (n >= 1) B[1] = ratio(-1, 2);
  return B;
}

class StickelbergerContext {
 public:
  explicit StickelbergerContext(long p) : p_(p) {
    require_prime(p, "Stickelberger prime");
    for (long n = 2; n <= p; ++n) {
      GroupRingElement t(p);
      for (long c = 1; c < p; ++c) t.set(c, n == p ? Int(c) : Int((n * c) / p));
      theta_.push_back(t);
    }
    for (long n = 1; n <= (p - 1) / 2; ++n) psi_.push_back(fuchsian_or_zero(n + 1) - fuchsian_or_zero(n));
  }

  long p() const { return p_; }

  // Theta_n = sum floor(nc/p) sigma_c^{-1}; Theta_p has coefficients c.
  const GroupRingElement& fuchsian(long n) const {
    if (n < 2 || n > p_) throw invalid_input("Fuchsian index out of range 2..p");
    return theta_[static_cast<size_t>(n - 2)];
  }
  // psi_n = Theta_{n+1} - Theta_n
  const GroupRingElement& fueter(long n) const {
    if (n < 1 || n > (p_ - 1) / 2) throw invalid_input("Fueter index out of range 1..(p-1)/2");
    return psi_[static_cast<size_t>(n - 1)];
  }

  // phi(t) = sum c^{p-2} n_c mod p
  long fermat_quotient(const GroupRingElement& t) const {
    Int s = 0;
    for (long c = 1; c < p_; ++c) s += Int(invmod(c, p_)) * t[c];
    return mod(s, Int(p_)).get_si();
  }

 private:
  GroupRingElement fuchsian_or_zero(long n) const { return n == 1 ? GroupRingElement(p_) : fuchsian(n); }
  long p_;
  std::vector<GroupRingElement> theta_, psi_;
};

inline GroupRingElement fuchsian(const StickelbergerContext& ctx, long n) { return ctx.fuchsian(n); }
inline GroupRingElement fueter(const StickelbergerContext& ctx, long n) { return ctx.fueter(n); }
inline long fermat_quotient(const StickelbergerContext& ctx, const GroupRingElement& t) {
  return ctx.fermat_quotient(t);
}

// Z-basis (HNF rows) of I = span_Z { sigma_b Theta_n : n = 2..p }.
inline IntMatrix stickelberger_basis(const StickelbergerContext& ctx) {
  IntMatrix rows;
  for (long n = 2; n <= ctx.p(); ++n)
    for (long b = 1; b < ctx.p(); ++b) rows.push_back(apply_sigma(b, ctx.fuchsian(n)).coeffs());
  return hnf(rows);
}

inline bool in_stickelberger_ideal(const IntMatrix& basis, const GroupRingElement& t) {
  IntVec v = t.coeffs();
  for (const auto& row : basis) {
    size_t piv = 0;
    while (row[piv] == 0) ++piv;
    if (v[piv] == 0) continue;
    if (mod(v[piv], row[piv]) != 0) return false;
    detail::row_axpy(v, v[piv] / row[piv], row);
  }
  return is_zero_vec(v);
}

struct Weight2Annihilator {
  GroupRingElement psi;
  std::string recipe;       // "2psi_n", "sigma_a psi_1 + sigma_b psi_2", "fallback", "waived"
  long a = 0, b = 0, m = 0, n = 0;
  bool subgroup_free = false;      // only the trivial subgroup fixes psi
};

inline bool only_trivial_fix(const GroupRingElement& t) { return subgroup_fix_test(t).size() == 1; }

// Every positive element of I with relative weight 2 and phi = 0.
inline std::vector<GroupRingElement> enumerate_weight2_kernel(const StickelbergerContext& ctx) {
  long p = ctx.p(), h = (p - 1) / 2;
  if (h > 12) throw invalid_input("exhaustive weight-2 enumeration limited to p <= 25");
  IntMatrix basis = stickelberger_basis(ctx);
  std::vector<GroupRingElement> out;
  long total = 1;
  for (long i = 0; i < h; ++i) total *= 3;
  for (long code = 0; code < total; ++code) {
    GroupRingElement t(p);
    long rest = code;
    for (long c = 1; c <= h; ++c) {
      long v = rest % 3;
      rest /= 3;
      t.set(c, Int(v));
      t.set(p - c, Int(2 - v));
    }
    if (ctx.fermat_quotient(t) == 0 && in_stickelberger_ideal(basis, t)) out.push_back(t);
  }
  return out;
}

// Relative weight 2, positive, phi = 0, not fixed by a nontrivial subgroup.
// With allow_fixed, returns the first phi = 0 candidate even if a subgroup fixes it.
inline Weight2Annihilator construct_weight2_annihilator(const StickelbergerContext& ctx, bool allow_fixed = false) {
  long p = ctx.p();
  if (p < 5) throw invalid_input("weight-2 annihilator needs p >= 5");
  long h = (p - 1) / 2;
  std::optional<Weight2Annihilator> first_fixed;
  auto accept = [&](Weight2Annihilator w) -> std::optional<Weight2Annihilator> {
    if (ctx.fermat_quotient(w.psi) != 0) return std::nullopt;
    auto wt = weights(w.psi);
    if (!wt.positive || wt.relative != Int(2)) return std::nullopt;
    w.subgroup_free = only_trivial_fix(w.psi);
    if (w.subgroup_free) return w;
    if (!first_fixed) first_fixed = w;
    return std::nullopt;
  };
  for (long n = 1; n <= h; ++n)
    if (ctx.fermat_quotient(ctx.fueter(n)) == 0)
      if (auto w = accept({Int(2) * ctx.fueter(n), "2psi_n", 0, 0, n, n})) return *w;
  {
    long a = ctx.fermat_quotient(ctx.fueter(2));
    long b = mod(-ctx.fermat_quotient(ctx.fueter(1)), p);
    if (a != 0 && b != 0)
      if (auto w = accept({apply_sigma(a, ctx.fueter(1)) + apply_sigma(b, ctx.fueter(2)),
                           "sigma_a psi_1 + sigma_b psi_2", a, b, 1, 2}))
        return *w;
  }
  for (long a = 1; a < p; ++a)
    for (long b = 1; b < p; ++b)
      for (long m = 1; m <= h; ++m)
        for (long n = 1; n <= h; ++n)
          if (auto w = accept({apply_sigma(a, ctx.fueter(m)) + apply_sigma(b, ctx.fueter(n)), "fallback", a, b, m, n}))
            return *w;
  if (allow_fixed && first_fixed) {
    first_fixed->recipe = "waived";
    return *first_fixed;
  }
  throw construction_failed("no weight-2 element of I_0 outside the subgroup-fixed locus at p = " +
                            std::to_string(p));
}

struct BernoulliProfile {
  long p = 0;
  std::map<long, long> teichmuller_route;  // odd k -> B_{1,w^{-k}} mod p, k = 3..p-2
  std::map<long, long> kummer_route;       // odd k -> -B_{p-k}/k mod p
  long irregularity = 0;                   // i_p
  std::vector<long> irregular_k;           // k with p | B_{p-k}
  std::set<long> R;                        // odd k with nonvanishing value, plus 1
  long r = 0;                              // |R|
  std::map<long, GroupRingElement> E;      // E_k over F_p, odd k; E_1 = -Theta_p
  long fueter_rank = 0;                    // rank of (1-j) image of I in F_p[G]
};

// B_{1,w^{-k}} mod p = (1/p) sum_a a w(a)^{-k}, w(a) = a^p mod p^2, k != 1.
inline long bernoulli_teichmuller(long p, long k) {
  Int P(p), P2 = P * P, s = 0;
  for (long a = 1; a < p; ++a) {
    Int w = powmod(Int(a), P, P2);
    s += a * powmod(invmod(w, P2), Int(k), P2);
  }
  s = mod(s, P2);
  if (mod(s, P) != 0) throw cross_check_mismatch("Teichmuller sum not divisible by p");
  return Int(s / P).get_si();
}

// E_k = theta e_k computed in (Z/p^2)[G] and divided by p; k odd, 3 <= k <= p-2.
inline GroupRingElement modified_idempotent(const StickelbergerContext& ctx, long k) {
  long p = ctx.p();
  Int P(p), P2 = P * P;
  GroupRingElement ek(p, P2);
  Int inv = invmod(Int(p - 1), P2);
  for (long a = 1; a < p; ++a) {
    Int w = powmod(Int(a), P, P2);
    ek.set(a, inv * powmod(w, Int(k), P2));
  }
  GroupRingElement prod = ctx.fuchsian(p).reduced(P2) * ek;
  GroupRingElement out(p, P);
  for (long c = 1; c < p; ++c) {
    if (mod(prod[c], P) != 0) throw cross_check_mismatch("Theta_p e_k not divisible by p");
    out.set(c, prod[c] / P);
  }
  return out;
}

inline BernoulliProfile bernoulli_profile(const StickelbergerContext& ctx) {
  long p = ctx.p();
  if (p < 5) throw invalid_input("Bernoulli profile needs p >= 5");
  BernoulliProfile prof;
  prof.p = p;
  Int P(p);
  auto B = bernoulli_numbers(static_cast<unsigned long>(p - 3));
  prof.R.insert(1);
  prof.E.emplace(1, (Int(-1) * ctx.fuchsian(p)).reduced(P));
  for (long k = 3; k <= p - 2; k += 2) {
    long t = bernoulli_teichmuller(p, k);
    Rat bk = B[static_cast<size_t>(p - k)];
    if (mod(Int(bk.get_den()), P) == 0) throw cross_check_mismatch("Bernoulli denominator divisible by p");
    Int val = mod(Int(-bk.get_num() * invmod(Int(bk.get_den() * k), P)), P);
    prof.teichmuller_route[k] = t;
    prof.kummer_route[k] = val.get_si();
    if (t != val.get_si())
      throw cross_check_mismatch("Bernoulli routes disagree at p=" + std::to_string(p) + ", k=" + std::to_string(k));
    if (t == 0) {
      ++prof.irregularity;
      prof.irregular_k.push_back(k);
    } else {
      prof.R.insert(k);
    }
    prof.E.emplace(k, modified_idempotent(ctx, k));
  }
  prof.r = static_cast<long>(prof.R.size());
  IntMatrix rows;
  GroupRingElement one_minus_j = GroupRingElement::one(p) - GroupRingElement::sigma(p, p - 1);
  for (long n = 1; n <= (p - 1) / 2; ++n)
    for (long c = 1; c < p; ++c) rows.push_back((one_minus_j * apply_sigma(c, ctx.fueter(n))).coeffs());
  prof.fueter_rank = static_cast<long>(rank_mod(rows, p));
  return prof;
}

}  // namespace adelic
