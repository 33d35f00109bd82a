#pragma once
// Integer helpers shared by every module. All arithmetic is exact (GMP).

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace adelic {

using Int = mpz_class;
using Rat = mpq_class;

struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct precondition_failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void require_prime(long p, const char* what) {
  if (!is_prime(p) || p < 3)
    throw invalid_input(std::string(what) + ": " + std::to_string(p) + " is not an odd prime");
}

// Least nonnegative residue.
inline Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}
inline long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// Residue in (-m/2, m/2].
inline Int balanced_mod(const Int& a, const Int& m) {
  Int r = mod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

inline Int pow_int(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Int powmod(const Int& b, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}
inline long powmod(long b, long e, long m) {
  return powmod(Int(b), Int(e), Int(m)).get_si();
}

// Throws when a is not invertible mod m.
inline Int invmod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), Int(mod(a, m)).get_mpz_t(), m.get_mpz_t()) == 0)
    throw precondition_failed("element not invertible modulo " + m.get_str());
  return r;
}
inline long invmod(long a, long m) { return invmod(Int(a), Int(m)).get_si(); }

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline unsigned long valuation(Int n, long p) {
  if (n == 0) throw invalid_input("valuation of zero");
  unsigned long v = 0;
  Int P(p);
  while (mod(n, P) == 0) {
    n /= P;
    ++v;
  }
  return v;
}

// v_p(m!) by Legendre.
inline unsigned long factorial_valuation(unsigned long m, long p) {
  unsigned long v = 0;
  for (unsigned long q = static_cast<unsigned long>(p); q <= m; q *= static_cast<unsigned long>(p)) v += m / q;
  return v;
}

// Multiplicative order of a mod n, gcd(a,n)=1.
inline long mult_order(long a, long n) {
  a = mod(a, n);
  long x = a, k = 1;
  while (x != 1) {
    x = (x * a) % n;
    ++k;
  }
  return k;
}

inline long primitive_root(long p) {
  for (long g = 2; g < p; ++g)
    if (mult_order(g, p) == p - 1) return g;
  return 1;  // p = 2
}

// Integer k-th root of |n| if exact, with sign for odd k.
inline bool exact_root(const Int& n, unsigned long k, Int& root) {
  Int a = abs_int(n);
  int exact = mpz_root(root.get_mpz_t(), a.get_mpz_t(), k);
  if (!exact) return false;
  if (n < 0) {
    if (k % 2 == 0) return false;
    root = -root;
  }
  return true;
}

inline std::vector<long> prime_factors(Int n) {
  std::vector<long> out;
  n = abs_int(n);
  for (long d = 2; Int(d) * d <= n; ++d) {
    if (mod(n, Int(d)) == 0) {
      out.push_back(d);
      while (mod(n, Int(d)) == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n.get_si());
  return out;
}

// Deterministic bounded draw; plain modulo keeps output platform-stable.
inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(rng() % span);
}

inline Rat ratio(long a, long b) {
  Rat r{Int(a), Int(b)};
  r.canonicalize();
  return r;
}

inline Rat binomial(const Rat& r, unsigned long n) {
  Rat acc = 1;
  for (unsigned long i = 0; i < n; ++i) {
    acc *= r - Rat(static_cast<long>(i));
    acc /= Rat(static_cast<long>(i + 1));
  }
  acc.canonicalize();
  return acc;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace adelic
