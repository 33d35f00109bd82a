#pragma once
// Brute-force oracles. Each recomputes a quantity by a route that shares no code
// with the library routine it checks.

#include "adelic/lattice.hpp"

#include <random>

namespace oracle {

using namespace adelic;

// Order of r mod p by repeated multiplication.
inline long order_mod(long r, long p) {
  long k = 1, t = r % p;
  while (t != 1) {
    t = t * (r % p) % p;
    ++k;
  }
  return k;
}

// Sum_{i<p} x^{p-1-i} (-y)^i, equal to (x^p + y^p)/(x + y).
inline Int norm_quotient(long p, long x, long y) {
  Int s = 0;
  for (long i = 0; i < p; ++i) s += pow_int(Int(x), static_cast<unsigned long>(p - 1 - i)) * pow_int(Int(-y), static_cast<unsigned long>(i));
  return s;
}

// Exact k-th root by bisection on |n|.
inline std::optional<Int> kth_root(const Int& n, long k) {
  if (n < 0 && k % 2 == 0) return std::nullopt;
  Int a = abs_int(n), lo = 0, hi = 1;
  while (pow_int(hi, static_cast<unsigned long>(k)) < a) hi *= 2;
  while (lo < hi) {
    Int mid = (lo + hi) / 2;
    if (pow_int(mid, static_cast<unsigned long>(k)) < a) lo = mid + 1;
    else hi = mid;
  }
  if (pow_int(lo, static_cast<unsigned long>(k)) != a) return std::nullopt;
  return n < 0 ? Int(-lo) : lo;
}

// Coprime (x, y) in the box with x != -y, x != y and (x^p+y^p)/(x+y) = p^e z^k.
struct Sol {
  long x, y, e;
  Int z;
};
inline std::vector<Sol> search_box(long p, long k, long B, std::vector<long> es) {
  std::vector<Sol> out;
  for (int e : es)
    for (long x = -B; x <= B; ++x)
      for (long y = -B; y <= B; ++y) {
        if (x == 0 || y == 0 || x + y == 0 || x == y || std::gcd(x, y) != 1) continue;
        Int n = norm_quotient(p, x, y);
        if (e == 1) {
          if (mod(n, Int(p)) != 0) continue;
          n /= p;
        }
        if (auto z = kth_root(n, k)) out.push_back({x, y, e, *z});
      }
  return out;
}

// Smallest sup-norm nonzero integer kernel vector of A with sup <= s, sign-normalised,
// lexicographically least; enumerates the free coordinates of the echelon form.
inline std::optional<IntVec> min_kernel_vector(const IntMatrix& A, long n, const Int& s) {
  long r = static_cast<long>(A.size());
  std::vector<std::vector<Rat>> R(A.size(), std::vector<Rat>(static_cast<size_t>(n)));
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < n; ++j) R[i][j] = Rat(A[i][j]);
  std::vector<long> piv;
  long row = 0;
  for (long c = 0; c < n && row < r; ++c) {
    long sel = -1;
    for (long i = row; i < r; ++i)
      if (R[i][c] != 0) sel = i;
    if (sel < 0) continue;
    std::swap(R[row], R[sel]);
    Rat lead = R[row][c];
    for (auto& v : R[row]) v /= lead;
    for (long i = 0; i < r; ++i)
      if (i != row && R[i][c] != 0) {
        Rat f = R[i][c];
        for (long j = 0; j < n; ++j) R[i][j] -= f * R[row][j];
      }
    piv.push_back(c);
    ++row;
  }
  std::vector<long> freec;
  for (long c = 0; c < n; ++c)
    if (std::find(piv.begin(), piv.end(), c) == piv.end()) freec.push_back(c);
  long S = s.get_si();
  std::vector<long> t(freec.size(), -S);
  std::optional<IntVec> best;
  while (true) {
    IntVec v(static_cast<size_t>(n), Int(0));
    for (size_t j = 0; j < freec.size(); ++j) v[freec[j]] = t[j];
    bool ok = true;
    for (size_t i = 0; i < piv.size() && ok; ++i) {
      Rat val = 0;
      for (size_t j = 0; j < freec.size(); ++j) val -= R[i][freec[j]] * t[j];
      if (val.get_den() != 1 || abs_int(val.get_num()) > S) ok = false;
      else v[piv[i]] = val.get_num();
    }
    if (ok && !is_zero_vec(v)) {
      detail::normalize_sign(v);
      if (!best || detail::sup_lex_less(v, *best)) best = v;
    }
    size_t k = 0;
    while (k < t.size() && t[k] == S) t[k++] = -S;
    if (k == t.size()) break;
    ++t[k];
  }
  return best;
}

// Random integer matrix of full row rank.
inline IntMatrix random_system(std::mt19937_64& rng, long rows, long n, long E) {
  while (true) {
    IntMatrix A(static_cast<size_t>(rows), IntVec(static_cast<size_t>(n)));
    for (auto& rw : A)
      for (auto& v : rw) v = uniform(rng, -E, E);
    if (static_cast<long>(rank_q(A)) == rows) return A;
  }
}

// Double table with random balanced digits and one planted dependency: the
// vector at rank `planted` (2 <= planted <= p-1) is a combination of earlier ones.
inline DoubleTable synthetic_table(std::mt19937_64& rng, long p, long y, long K, long planted) {
  DoubleTable dt;
  dt.p = p;
  dt.x = 1;
  dt.y = y;
  dt.cutoff = K;
  dt.rho = SemilocalElement::one(p, pow_int(Int(y), static_cast<unsigned long>(K)));
  for (long n = 0; n < K; ++n) dt.denominators.push_back(pow_int(Int(p), series_exponent(static_cast<unsigned long>(n), p)));
  long half = (y - 1) / 2;
  dt.b.assign(static_cast<size_t>(K), {});
  for (long n = 0; n < K; ++n)
    for (long h = 0; h + n < K; ++h) {
      std::vector<Int> v(static_cast<size_t>(p - 1));
      for (auto& c : v) c = uniform(rng, -half, half);
      dt.b[n].push_back(CycloInt(p, v));
    }
  Pair tgt = order_unrank(planted);
  while (true) {
    for (int attempt = 0; attempt < 500; ++attempt) {
      std::vector<Int> v(static_cast<size_t>(p - 1), Int(0));
      for (long r = 1; r < planted; ++r) {
        Pair pr = order_unrank(r);
        long k = uniform(rng, -1, 1);
        for (long i = 0; i < p - 1; ++i) v[i] += k * dt.b[pr.first][pr.second].coords()[i];
      }
      bool zero = true, small = true;
      for (const auto& c : v) {
        zero = zero && c == 0;
        small = small && abs_int(c) <= half;
      }
      if (!zero && small) {
        dt.b[tgt.first][tgt.second] = CycloInt(p, v);
        dt.reassembly_ok = true;
        return dt;
      }
    }
    // no small combination: halve the earlier rows
    for (long r = 1; r < planted; ++r) {
      Pair pr = order_unrank(r);
      std::vector<Int> w = dt.b[pr.first][pr.second].coords();
      for (auto& c : w) c /= 2;
      dt.b[pr.first][pr.second] = CycloInt(p, w);
    }
  }
}

}  // namespace oracle
