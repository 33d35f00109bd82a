#pragma once
// Dense exact integer matrices: Hermite normal form, rank, integer kernels,
// LLL reduction and Fincke-Pohst enumeration.

#include "adelic/arith.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace adelic {

using IntVec = std::vector<Int>;
using IntMatrix = std::vector<IntVec>;  // row-major

inline Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Int sup_norm(const IntVec& v) {
  Int m = 0;
  for (const auto& x : v) m = std::max(m, abs_int(x));
  return m;
}

inline bool is_zero_vec(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

inline IntVec mat_vec(const IntMatrix& A, const IntVec& v) {
  IntVec out;
  out.reserve(A.size());
  for (const auto& row : A) out.push_back(dot(row, v));
  return out;
}

// "rows cols" then rows of integers.
inline IntMatrix read_matrix(std::istream& in) {
  long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols <= 0) throw invalid_input("matrix header must be 'rows cols'");
  IntMatrix A(static_cast<size_t>(rows), IntVec(static_cast<size_t>(cols)));
  for (auto& row : A)
    for (auto& x : row) {
      std::string tok;
      if (!(in >> tok)) throw invalid_input("matrix file truncated");
      try {
        x = Int(tok);
      } catch (const std::exception&) {
        throw invalid_input("matrix entry is not an integer: " + tok);
      }
    }
  return A;
}

inline void write_vector(std::ostream& out, const IntVec& v) {
  for (size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  out << "\n";
}

namespace detail {
inline void row_axpy(IntVec& dst, const Int& q, const IntVec& src) {
  for (size_t j = 0; j < dst.size(); ++j) dst[j] -= q * src[j];
}

// Unimodular row echelon over the first `cols` columns; returns pivot rows count.
inline size_t echelon(IntMatrix& M, size_t cols, bool reduce_above) {
  size_t row = 0;
  for (size_t col = 0; col < cols && row < M.size(); ++col) {
    while (true) {
      size_t best = M.size();
      for (size_t r = row; r < M.size(); ++r)
        if (M[r][col] != 0 && (best == M.size() || abs_int(M[r][col]) < abs_int(M[best][col]))) best = r;
      if (best == M.size()) break;
      std::swap(M[row], M[best]);
      bool done = true;
      for (size_t r = row + 1; r < M.size(); ++r) {
        if (M[r][col] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), M[r][col].get_mpz_t(), M[row][col].get_mpz_t());
        row_axpy(M[r], q, M[row]);
        if (M[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (M[row][col] == 0) continue;
    if (M[row][col] < 0)
      for (auto& x : M[row]) x = -x;
    if (reduce_above)
      for (size_t r = 0; r < row; ++r) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), M[r][col].get_mpz_t(), M[row][col].get_mpz_t());
        if (q != 0) row_axpy(M[r], q, M[row]);
      }
    ++row;
  }
  return row;
}
}  // namespace detail

// Row Hermite normal form of the row lattice: nonzero rows, positive pivots,
// entries above each pivot in [0, pivot).
inline IntMatrix hnf(IntMatrix M) {
  if (M.empty()) return M;
  size_t rank = detail::echelon(M, M[0].size(), true);
  M.resize(rank);
  return M;
}

// Rank over Q by fraction-free elimination.
inline size_t rank_q(IntMatrix M) {
  if (M.empty()) return 0;
  size_t rows = M.size(), cols = M[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[r], M[piv]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (M[i][c] == 0) continue;
      Int a = M[r][c], b = M[i][c];
      for (size_t j = c; j < cols; ++j) M[i][j] = M[i][j] * a - M[r][j] * b;
      Int g = 0;
      for (size_t j = c; j < cols; ++j) g = gcd(g, M[i][j]);
      if (g > 1)
        for (size_t j = c; j < cols; ++j) M[i][j] /= g;
    }
    ++r;
  }
  return r;
}

// Rank over F_p.
inline size_t rank_mod(IntMatrix M, long p) {
  if (M.empty()) return 0;
  Int P(p);
  for (auto& row : M)
    for (auto& x : row) x = mod(x, P);
  size_t rows = M.size(), cols = M[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[r], M[piv]);
    Int inv = invmod(M[r][c], P);
    for (size_t i = r + 1; i < rows; ++i) {
      if (M[i][c] == 0) continue;
      Int f = M[i][c] * inv;
      for (size_t j = c; j < cols; ++j) M[i][j] = mod(M[i][j] - f * M[r][j], P);
    }
    ++r;
  }
  return r;
}

// Exact determinant via Bareiss.
inline Int determinant(IntMatrix M) {
  size_t n = M.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      size_t s = k + 1;
      while (s < n && M[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(M[k], M[s]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        M[i][j] = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

inline IntMatrix gram(const IntMatrix& A) {
  IntMatrix G(A.size(), IntVec(A.size()));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = i; j < A.size(); ++j) G[i][j] = G[j][i] = dot(A[i], A[j]);
  return G;
}

// Z-basis of {v in Z^n : A v = 0}.
inline IntMatrix integer_kernel(const IntMatrix& A, size_t n) {
  size_t r = A.size();
  IntMatrix M(n, IntVec(r + n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < r; ++j) M[i][j] = A[j][i];
    M[i][r + i] = 1;
  }
  size_t rank = detail::echelon(M, r, false);
  IntMatrix K;
  for (size_t i = rank; i < n; ++i) K.emplace_back(M[i].begin() + static_cast<long>(r), M[i].end());
  return K;
}

// Exact rational LLL, delta = 3/4. Rows of B must be independent.
inline IntMatrix lll_reduce(IntMatrix B) {
  size_t k = B.size();
  if (k <= 1) return B;
  std::vector<std::vector<Rat>> mu(k, std::vector<Rat>(k));
  std::vector<Rat> bstar_norm(k);
  std::vector<std::vector<Rat>> bstar(k);
  auto gso = [&]() {
    for (size_t i = 0; i < k; ++i) {
      bstar[i].assign(B[i].begin(), B[i].end());
      for (size_t j = 0; j < i; ++j) {
        Rat num = 0;
        for (size_t t = 0; t < B[i].size(); ++t) num += Rat(B[i][t]) * bstar[j][t];
        mu[i][j] = num / bstar_norm[j];
        for (size_t t = 0; t < B[i].size(); ++t) bstar[i][t] -= mu[i][j] * bstar[j][t];
      }
      bstar_norm[i] = 0;
      for (const auto& x : bstar[i]) bstar_norm[i] += x * x;
    }
  };
  gso();
  const Rat delta = ratio(3, 4);
  size_t i = 1;
  while (i < k) {
    for (size_t j = i; j-- > 0;) {
      Rat m = mu[i][j];
      Int q;
      Rat shifted = m + ratio(1, 2);
      mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
      if (q == 0) continue;
      detail::row_axpy(B[i], q, B[j]);
      for (size_t t = 0; t < j; ++t) mu[i][t] -= Rat(q) * mu[j][t];
      mu[i][j] -= Rat(q);
    }
    Rat lhs = bstar_norm[i], rhs = (delta - mu[i][i - 1] * mu[i][i - 1]) * bstar_norm[i - 1];
    if (lhs >= rhs) {
      ++i;
    } else {
      std::swap(B[i], B[i - 1]);
      gso();
      i = std::max<size_t>(i - 1, 1);
    }
  }
  return B;
}

// Calls visit(coeffs) for every integer coefficient vector x with
// x^T G x <= bound (G the Gram matrix of B). Returns false when the node cap is hit.
// Pruning uses long double with slack; callers re-check candidates exactly.
inline bool fincke_pohst(const IntMatrix& B, const Int& bound,
                         const std::function<void(const std::vector<long>&)>& visit, long node_cap = 20000000) {
  size_t k = B.size();
  if (k == 0) return true;
  IntMatrix G = gram(B);
  std::vector<std::vector<long double>> q(k, std::vector<long double>(k, 0));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) q[i][j] = G[i][j].get_d();
  // Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (size_t l = i + 1; l < k; ++l)
      for (size_t j = l; j < k; ++j) q[l][j] -= q[l][i] * q[i][j];
  }
  std::vector<long> x(k, 0);
  const long double C = bound.get_d() * (1.0L + 1e-12L) + 1e-9L;
  long nodes = 0;
  std::function<bool(size_t, long double)> rec = [&](size_t i, long double rem) -> bool {
    long double u = 0;
    for (size_t j = i + 1; j < k; ++j) u += q[i][j] * x[j];
    long double r = std::sqrt(std::max(rem, 0.0L) / q[i][i]);
    long lo = static_cast<long>(std::ceil(-u - r - 1e-9L)), hi = static_cast<long>(std::floor(-u + r + 1e-9L));
    for (long v = lo; v <= hi; ++v) {
      if (++nodes > node_cap) return false;
      x[i] = v;
      long double t = v + u;
      long double left = rem - q[i][i] * t * t;
      if (left < -1e-9L * (1 + C)) continue;
      if (i == 0) {
        visit(x);
      } else if (!rec(i - 1, left)) {
        return false;
      }
    }
    x[i] = 0;
    return true;
  };
  return rec(k - 1, C);
}

inline IntVec combine(const IntMatrix& B, const std::vector<long>& x) {
  IntVec v(B.empty() ? 0 : B[0].size(), Int(0));
  for (size_t i = 0; i < B.size(); ++i)
    if (x[i] != 0)
      for (size_t t = 0; t < v.size(); ++t) v[t] += x[i] * B[i][t];
  return v;
}

}  // namespace adelic
