#pragma once
// Coefficient lattices: pair ordering, the perturbation step making coefficient
// vectors independent, small kernel vectors and the final bound evaluators.

#include "adelic/matrix.hpp"
#include "adelic/series.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adelic {

using Pair = std::pair<long, long>;  // (n, h): n indexes c_n, h the power of 1/x

// (j1,k1) <= (j2,k2) iff j1+k1 < j2+k2, or equal sums and k1 <= k2.
inline bool order_le(const Pair& a, const Pair& b) {
  long sa = a.first + a.second, sb = b.first + b.second;
  return sa < sb || (sa == sb && a.second <= b.second);
}

inline long order_rank(const Pair& pr) {
  if (pr.first < 0 || pr.second < 0) throw invalid_input("pair entries must be >= 0");
  long s = pr.first + pr.second;
  return s * (s + 1) / 2 + pr.second + 1;
}

inline Pair order_unrank(long n) {
  if (n < 1) throw invalid_input("rank must be >= 1");
  long s = 0;
  while ((s + 1) * (s + 2) / 2 < n) ++s;
  long k = n - s * (s + 1) / 2 - 1;
  return {s - k, k};
}

// (mu, chi) = unrank(p - 1)
inline Pair order_threshold(long p) { return order_unrank(p - 1); }

// floor(x) + 1 for the positive root of x^2 - x - 2(p-1) = 0.
inline long order_quadratic_estimate(long p) {
  Int disc = 1 + 8 * Int(p - 1), r;
  mpz_sqrt(r.get_mpz_t(), disc.get_mpz_t());
  // floor((1 + sqrt(disc)) / 2)
  Int x = (1 + r) / 2;
  return x.get_si() + 1;
}

inline IntVec coeff_vector(const CycloInt& b) { return b.coords(); }

inline long prefix_rank(const IntMatrix& rows) { return static_cast<long>(rank_q(rows)); }

// Rank of the coefficient vectors of the first r pairs, r = 1..count.
inline std::vector<long> rank_profile(const DoubleTable& dt, long count) {
  std::vector<long> out;
  IntMatrix rows;
  for (long r = 1; r <= count; ++r) {
    Pair pr = order_unrank(r);
    rows.push_back(coeff_vector(dt.b[pr.first][pr.second]));
    out.push_back(prefix_rank(rows));
  }
  return out;
}

struct BasechStep {
  Pair pair;
  std::string action;  // "independent", "merged", "twisted"
  long twist = 0;      // j with Phi_j = zeta^j, sign in twist_sign
  int twist_sign = 0;
  Int s_sup;           // |kappa(s)|_sup of p b = b' + y s
};

struct BasechResult {
  DoubleTable table;                  // modified coefficients
  std::vector<std::vector<long>> d;   // d[n][h] in {1, prime}
  long prime = 0;                     // denominator prime (p, or q for the q-variant)
  Pair threshold;
  std::vector<BasechStep> steps;
  std::vector<long> ranks;            // rank after each step
  bool r1 = false;                    // reassembly agrees mod y^K for every K <= cutoff
  bool r2 = false;                    // ranks[i] = i + 1
  bool r3 = false;                    // every modified |kappa|_sup < y
  bool r3_weak = false;               // every modified |kappa|_sup <= y
  bool s_bound = false;               // every |kappa(s)|_sup <= prime - 1
  Int max_sup;
  Int max_s;
  bool scale_waived = false;          // y > 2p precondition waived
};

// Modifies coefficients of pairs up to (mu, chi) so the coefficient vectors
// become independent, keeping the reassembled sum fixed.
inline BasechResult basech(const DoubleTable& input, long prime = 0, bool waive_scale = false) {
  long p = input.p;
  if (prime == 0) prime = p;
  Int Y = abs_int(input.y);
  if (Y <= 2 * p) {
    if (!waive_scale) throw precondition_failed("y <= 2p; pass the scale waiver for toy sizes");
  }
  if (gcd(Y, Int(prime)) != 1) throw precondition_failed("y shares a factor with the denominator prime");
  Pair th = order_threshold(p);
  long K = input.cutoff;
  if (K < th.first + th.second + 2) throw precondition_failed("precision shortfall: cutoff below mu + chi + 2");
  BasechResult res;
  res.table = input;
  res.prime = prime;
  res.threshold = th;
  res.scale_waived = Y <= 2 * p;
  res.d.assign(static_cast<size_t>(K), {});
  for (long n = 0; n < K; ++n) res.d[n].assign(static_cast<size_t>(K - n), 1);
  auto& b = res.table.b;
  IntMatrix rows;
  res.s_bound = true;
  for (long r = 1; r <= p - 1; ++r) {
    Pair pr = order_unrank(r);
    long n = pr.first, h = pr.second;
    BasechStep st;
    st.pair = pr;
    IntVec v = coeff_vector(b[n][h]);
    rows.push_back(v);
    if (prefix_rank(rows) == r) {
      st.action = "independent";
    } else {
      rows.pop_back();
      std::vector<Int> bp(static_cast<size_t>(p - 1)), s(static_cast<size_t>(p - 1));
      for (size_t i = 0; i < bp.size(); ++i) {
        Int t = Int(prime) * v[i];
        bp[i] = balanced_mod(t, Y);
        s[i] = (t - bp[i]) / Y;
        st.s_sup = std::max(st.s_sup, abs_int(s[i]));
      }
      if (st.s_sup > prime - 1) res.s_bound = false;
      Int f = input.denominators[n + 1] / (Int(prime) * input.denominators[n]);
      if (f * prime * input.denominators[n] != input.denominators[n + 1])
        throw precondition_failed("denominator ratio c_{n+1} / (prime c_n) is not integral");
      rows.push_back(bp);
      if (prefix_rank(rows) == r) {
        st.action = "merged";
      } else {
        rows.pop_back();
        // smallest escaping j, preferring one with b'_j != 0 so the twist lowers |b'_j|
        std::optional<long> pick, first;
        for (long j = 1; j < p && !pick; ++j) {
          IntVec e(static_cast<size_t>(p - 1), Int(0));
          e[j - 1] = 1;
          rows.push_back(e);
          bool escapes = prefix_rank(rows) == r;
          rows.pop_back();
          if (!escapes) continue;
          if (!first) first = j;
          if (bp[j - 1] != 0) pick = j;
        }
        if (!first) throw precondition_failed("rank-stuck: every basis vector lies in the current span");
        long j = pick.value_or(*first);
        int sign = bp[j - 1] > 0 ? -1 : 1;
        bp[j - 1] += sign * Y;
        s[j - 1] -= sign;
        st.action = "twisted";
        st.twist = j;
        st.twist_sign = sign;
        rows.push_back(bp);
      }
      b[n][h] = CycloInt(p, bp);
      res.d[n][h] = prime;
      std::vector<Int> w = b[n + 1][h].coords();
      for (size_t i = 0; i < w.size(); ++i) w[i] += f * s[i];
      b[n + 1][h] = CycloInt(p, w);
    }
    res.ranks.push_back(prefix_rank(rows));
    res.steps.push_back(st);
  }
  res.r2 = true;
  for (size_t i = 0; i < res.ranks.size(); ++i)
    if (res.ranks[i] != static_cast<long>(i + 1)) res.r2 = false;
  res.r3 = res.r3_weak = true;
  for (long r = 1; r <= p - 1; ++r) {
    Pair pr = order_unrank(r);
    for (const Pair& q : {pr, Pair{pr.first + 1, pr.second}}) {
      Int sup = sup_norm(b[q.first][q.second].coords());
      res.max_sup = std::max(res.max_sup, sup);
      if (sup >= Y) res.r3 = false;
      if (sup > Y) res.r3_weak = false;
    }
  }
  for (const auto& st : res.steps) res.max_s = std::max(res.max_s, st.s_sup);
  res.r1 = true;
  for (long k = 1; k <= K; ++k)
    if (double_sum_at(input, nullptr, k) != double_sum_at(res.table, &res.d, k)) res.r1 = false;
  return res;
}

struct HadamardBV {
  Int det;             // det(A A^T)
  Int hadamard;        // prod_i |A_i|^2 >= det
  long rows = 0, ambient = 0;
  long exponent = 0;   // 2 (ambient - rows); U = det^{1/exponent}
  double U = 0;
};

inline HadamardBV hadamard_bv(const IntMatrix& A, long ambient) {
  long r = static_cast<long>(A.size());
  if (r == 0 || r >= ambient) throw invalid_input("need 1 <= rows < ambient dimension");
  for (const auto& row : A)
    if (static_cast<long>(row.size()) != ambient) throw invalid_input("row length differs from ambient dimension");
  HadamardBV h;
  h.rows = r;
  h.ambient = ambient;
  h.exponent = 2 * (ambient - r);
  h.det = determinant(gram(A));
  if (h.det == 0) throw invalid_input("rank-deficient matrix: det(A A^T) = 0");
  h.hadamard = 1;
  for (const auto& row : A) h.hadamard *= dot(row, row);
  h.U = std::pow(h.det.get_d(), 1.0 / static_cast<double>(h.exponent));
  return h;
}

// t <= U exactly.
inline bool within_bv(const HadamardBV& h, const Int& t) {
  return pow_int(t, static_cast<unsigned long>(h.exponent)) <= h.det;
}

// U < sqrt(y) exactly: det < y^{ambient - rows}.
inline bool bv_below_sqrt(const HadamardBV& h, const Int& y) {
  return h.det < pow_int(y, static_cast<unsigned long>(h.ambient - h.rows));
}

namespace detail {
inline void normalize_sign(IntVec& v) {
  for (const auto& x : v)
    if (x != 0) {
      if (x < 0)
        for (auto& t : v) t = -t;
      return;
    }
}

inline bool sup_lex_less(const IntVec& a, const IntVec& b) {
  Int sa = sup_norm(a), sb = sup_norm(b);
  if (sa != sb) return sa < sb;
  return a < b;
}
}  // namespace detail

// Every nonzero kernel vector (sign-normalized, one per +-pair) with sup-norm <= T,
// sorted by (sup, lex). Throws when the enumeration cap is reached.
inline std::vector<IntVec> enumerate_short(const IntMatrix& reduced_kernel, const Int& T, long node_cap = 20000000) {
  std::vector<IntVec> out;
  if (reduced_kernel.empty()) return out;
  long n = static_cast<long>(reduced_kernel[0].size());
  // machine-word prefilter on the sup box; exact combine for survivors
  bool small = T.fits_slong_p();
  for (const auto& row : reduced_kernel)
    for (const auto& c : row) small = small && c.fits_slong_p() && abs_int(c) < Int(1L << 40);
  std::vector<std::vector<long>> Bl;
  if (small)
    for (const auto& row : reduced_kernel) {
      Bl.emplace_back();
      for (const auto& c : row) Bl.back().push_back(c.get_si());
    }
  long Tl = small ? T.get_si() : 0;
  std::vector<__int128> acc(static_cast<size_t>(n));
  bool done = fincke_pohst(
      reduced_kernel, Int(n) * T * T,
      [&](const std::vector<long>& x) {
        if (small) {
          std::fill(acc.begin(), acc.end(), 0);
          for (size_t i = 0; i < Bl.size(); ++i)
            if (x[i] != 0)
              for (long t = 0; t < n; ++t) acc[t] += static_cast<__int128>(x[i]) * Bl[i][t];
          for (const auto& a : acc)
            if (a > Tl || a < -Tl) return;
        }
        IntVec v = combine(reduced_kernel, x);
        if (is_zero_vec(v) || sup_norm(v) > T) return;
        IntVec u = v;
        detail::normalize_sign(u);
        if (u == v) out.push_back(v);
      },
      node_cap);
  if (!done) throw precondition_failed("solver-incomplete: enumeration cap reached");
  std::sort(out.begin(), out.end(), detail::sup_lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct SiegelResult {
  IntVec w;
  Int sup;
  HadamardBV bv;
  bool within_bv_bound = false;  // sup^{2(n-r)} <= det(A A^T)
  bool within_bound = true;      // sup <= caller bound, when given
  long kernel_dim = 0;
};

// Nonzero kernel vector of A with minimal sup-norm; ties broken by sign
// normalization then lexicographic order.
inline SiegelResult siegel_solve(const IntMatrix& A, long ambient, std::optional<Int> bound = std::nullopt) {
  SiegelResult res;
  res.bv = hadamard_bv(A, ambient);
  IntMatrix K = lll_reduce(integer_kernel(A, static_cast<size_t>(ambient)));
  res.kernel_dim = static_cast<long>(K.size());
  Int t0 = sup_norm(K[0]);
  for (const auto& row : K) t0 = std::min(t0, sup_norm(row));
  auto cands = enumerate_short(K, t0);
  if (cands.empty()) throw precondition_failed("solver-incomplete: no kernel vector within the basis bound");
  res.w = cands.front();
  res.sup = sup_norm(res.w);
  if (!is_zero_vec(mat_vec(A, res.w))) throw precondition_failed("internal: witness is not in the kernel");
  res.within_bv_bound = within_bv(res.bv, res.sup);
  if (bound) res.within_bound = res.sup <= *bound;
  return res;
}

struct InhomogeneousResult {
  long level = 0;
  long rows = 0;                    // |W''| + 1 (all-ones row)
  long rank = 0;
  long kernel_dim = 0;
  Int radius;                       // floor(sqrt(y)): sup-norm box
  bool found = false;
  long twist = 0;                   // 0 when the untwisted system suffices
  IntVec w;                         // coordinates of w, trace zero
  Int Q;                            // Tr(w v) / p, leading coefficient of delta
  bool leading_nonzero_mod_y = false;
  bool lower_levels_vanish = false; // delta = y^L Tr(w v)/(p d) mod y^{L+1}
  bool twist_identity = false;      // Tr(w v) = -p w_{p-k} when twisted
  long steinitz_remaining = 0;      // p - 1 - rank
  std::vector<long> steinitz_kept;  // indices j of Phi_j completing the rows to a basis
  bool contradiction = false;       // every S^(k) inside S': w orthogonal to a basis
};

// Reversed coordinates: Tr(w b) = p <w, rev(b)> for trace-zero w.
inline IntVec reversed_coords(const CycloInt& b) {
  long p = b.p();
  IntVec r(static_cast<size_t>(p - 1));
  for (long j = 1; j < p; ++j) r[j - 1] = b.coord(p - j);
  return r;
}

// Short trace-zero w orthogonal to every modified coefficient of level <= L
// except v = b_{0,L}, with Tr(w v) != 0 mod p y.
inline InhomogeneousResult inhomogeneous_select(const BasechResult& bc, long level) {
  const DoubleTable& dt = bc.table;
  long p = dt.p;
  Int Y = abs_int(dt.y);
  if (level < 1 || level + 1 > dt.cutoff) throw precondition_failed("precision shortfall for the requested level");
  if (order_rank({0, level}) > p - 1) throw precondition_failed("level exceeds the independent range (mu, chi)");
  InhomogeneousResult res;
  res.level = level;
  mpz_sqrt(res.radius.get_mpz_t(), Y.get_mpz_t());
  IntMatrix A;
  for (long r = 1; r < order_rank({0, level}); ++r) {
    Pair pr = order_unrank(r);
    A.push_back(reversed_coords(dt.b[pr.first][pr.second]));
  }
  A.push_back(IntVec(static_cast<size_t>(p - 1), Int(1)));
  res.rows = static_cast<long>(A.size());
  res.rank = static_cast<long>(rank_q(A));
  res.steinitz_remaining = p - 1 - res.rank;
  {
    IntMatrix basis = A;
    for (long j = 1; j < p; ++j) {
      IntVec e(static_cast<size_t>(p - 1), Int(0));
      e[j - 1] = 1;
      basis.push_back(e);
      if (static_cast<long>(rank_q(basis)) == static_cast<long>(basis.size()) - (res.rows - res.rank))
        res.steinitz_kept.push_back(j);
      else
        basis.pop_back();
    }
  }
  const CycloInt& v = dt.b[0][level];
  IntVec rv = reversed_coords(v);
  IntMatrix K = integer_kernel(A, static_cast<size_t>(p - 1));
  res.kernel_dim = static_cast<long>(K.size());
  if (K.empty()) {
    res.contradiction = true;
    return res;
  }
  auto cands = enumerate_short(lll_reduce(K), res.radius);
  auto accept = [&](const IntVec& w, long k) {
    res.found = true;
    res.twist = k;
    res.w = w;
    res.Q = dot(w, rv);
    res.leading_nonzero_mod_y = mod(res.Q, Y) != 0;
    CycloInt wc(p, w);
    Int trv = (wc * v).trace();
    res.twist_identity = k == 0 || trv == -Int(p) * w[static_cast<size_t>(p - k - 1)];
    // sum_{n+h<=L} y^{n+h} Tr(w b_{n,h}) / (d c_n) mod y^{L+1}
    Int m = pow_int(Y, static_cast<unsigned long>(level + 1)), acc = 0;
    for (long n = 0; n <= level; ++n)
      for (long h = 0; n + h <= level; ++h) {
        Int tr = (wc * dt.b[n][h]).trace();
        Int den = dt.denominators[n] * bc.d[n][h];
        acc += pow_int(dt.y, static_cast<unsigned long>(n + h)) * tr * invmod(den, m);
      }
    acc = mod(acc, m);
    Int expect = mod(Int(pow_int(dt.y, static_cast<unsigned long>(level)) * trv * invmod(Int(bc.d[0][level]), m)), m);
    res.lower_levels_vanish = acc == expect && acc != 0;
  };
  for (const auto& w : cands)
    if (mod(dot(w, rv), Y) != 0) {
      accept(w, 0);
      return res;
    }
  for (long k = 1; k < p; ++k)
    for (const auto& w : cands) {
      const Int& wk = w[static_cast<size_t>(p - k - 1)];
      if (wk != 0 && dot(w, rv) == -wk) {
        accept(w, k);
        return res;
      }
    }
  res.contradiction = true;
  return res;
}

// ---- bound evaluators ----

// Displayed chain: 2^8 < y^{p - 41 + 1/2} and y > 2p, i.e. 2^16 < y^{2p - 81}.
inline bool chain_displayed(long p, const Int& y) {
  if (y <= 2 * p) return false;
  long e = 2 * p - 81;
  if (e <= 0) return false;
  return Int(1) << 16 < pow_int(y, static_cast<unsigned long>(e));
}

// ((2y)^4 y^{31/4})^{1/(p-17)} < sqrt(y)  <=>  2^16 y^47 < y^{2(p-17)}.
inline bool chain_hadamard_form(long p, const Int& y) {
  if (p <= 17) return false;
  return (Int(1) << 16) * pow_int(y, 47) < pow_int(y, static_cast<unsigned long>(2 * (p - 17)));
}

// General Hadamard estimate: `rows` rows with squared norm <= (p-1) y^2 plus the
// all-ones row; U < sqrt(y) iff the estimate is below y^{p-1-rows-1}.
inline bool chain_general(long p, const Int& y, long rows) {
  long free_dims = p - 1 - (rows + 1);
  if (free_dims <= 0) return false;
  Int est = pow_int(Int(p - 1) * y * y, static_cast<unsigned long>(rows)) * (p - 1);
  return est < pow_int(y, static_cast<unsigned long>(free_dims));
}

struct ClashVerdict {
  Int upper_sq;     // (z^2 p sqrt((p-1) y))^2 = z^4 p^2 (p-1) y
  Int lower_sq;     // (y^m / 2)^2
  Int upper_floor;  // floor(z^2 p sqrt((p-1) y))
  bool clash = false;  // upper < y^m / 2
};

inline ClashVerdict bound_clash(long p, const Int& y, const Int& z, long m = 4) {
  if (p < 3 || y <= 0 || z == 0 || m < 1) throw invalid_input("bound_clash needs p >= 3, y > 0, z != 0, m >= 1");
  ClashVerdict v;
  Int z2 = z * z;
  v.upper_sq = z2 * z2 * p * p * (p - 1) * y;
  Int ym = pow_int(y, static_cast<unsigned long>(m));
  v.lower_sq = ym * ym;
  // 4 upper^2 < y^{2m}
  v.clash = 4 * v.upper_sq < v.lower_sq;
  Int r;
  Int inner = Int(p - 1) * y * z2 * z2 * p * p;
  mpz_sqrt(r.get_mpz_t(), inner.get_mpz_t());
  v.upper_floor = r;
  return v;
}

// 23 n + 41 < 8 p as displayed.
inline bool level_bound_displayed(long p, long n) { return 23 * n + 41 < 8 * p; }
// 15 (n+1) < 8 (p - n - 2), the step preceding the display: 23 n + 31 < 8 p.
inline bool level_bound_derived(long p, long n) { return 15 * (n + 1) < 8 * (p - n - 2); }
// (7/4)(n+1)/(2(p-n-2)) + (n+1)/(p-n-2) < 1, exact, p > n + 2.
inline bool level_bound_rational(long p, long n) {
  if (p <= n + 2) return false;
  Rat lhs = ratio(7 * (n + 1), 8 * (p - n - 2)) + ratio(n + 1, p - n - 2);
  return lhs < 1;
}
// m = ceil(p^{1/3}) + 2, n = m (m + 1) / 2
inline long level_bound_rows(long p) {
  long c = 0;
  while (c * c * c < p) ++c;
  long m = c + 2;
  return m * (m + 1) / 2;
}

// 21 p^2 < (k (p - 1))^2
inline bool weight_bound_displayed(long p, long k) {
  Int lhs = Int(21) * p * p, r = Int(k) * (p - 1);
  return lhs < r * r;
}

// (2p)^{q/(p-1)} / p^{1/(p-1)} > 2q  <=>  (2p)^q > p (2q)^{p-1}
inline bool q_exponent_bound(long p, long q) {
  return pow_int(Int(2 * p), static_cast<unsigned long>(q)) > Int(p) * pow_int(Int(2 * q), static_cast<unsigned long>(p - 1));
}

}  // namespace adelic
