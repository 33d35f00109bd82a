#pragma once
// Identity suite at one prime: every module's exact invariants, plus certified
// float bounds with a stated margin.

#include "adelic/harness/config.hpp"
#include "adelic/ideal.hpp"
#include "adelic/lattice.hpp"
#include "adelic/stickelberger.hpp"

#include <functional>
#include <random>

namespace adelic::harness {

inline CycloInt random_cyclo(std::mt19937_64& rng, long p, long R) {
  std::vector<Int> v;
  for (long j = 1; j < p; ++j) v.push_back(Int(uniform(rng, -R, R)));
  return CycloInt(p, v);
}

// Random element with Tr = 0, i.e. coordinate sum 0.
inline CycloInt random_trace_zero(std::mt19937_64& rng, long p, long R) {
  std::vector<Int> v;
  Int s = 0;
  for (long j = 1; j < p - 1; ++j) {
    v.push_back(Int(uniform(rng, -R, R)));
    s += v.back();
  }
  v.push_back(-s);
  return CycloInt(p, v);
}

inline long default_truncation(long p) { return p <= 13 ? 8 : 4; }

// The weight-2 annihilator used by the series checks; waived when only
// subgroup-fixed elements exist.
inline Weight2Annihilator annihilator_for(const StickelbergerContext& ctx) {
  return construct_weight2_annihilator(ctx, true);
}

inline void stickelberger_checks(Report& rep, long p) {
  StickelbergerContext ctx(p);
  timed(rep, [&] {
    return guarded("fueter_is_fuchsian_difference", "fueter-elements", [&] {
      bool ok = true;
      for (long n = 1; n <= (p - 1) / 2; ++n)
        for (long c = 1; c < p; ++c) {
          Int direct = Int(((n + 1) * c) / p - (n * c) / p);
          Int lower = n == 1 ? Int(0) : ctx.fuchsian(n)[c];
          if (ctx.fueter(n)[c] != direct || ctx.fuchsian(n + 1)[c] - lower != direct) ok = false;
        }
      Record r;
      r.status = status_from(ok);
      r.inputs = {{"p", p}};
      return r;
    });
  });
  timed(rep, [&] {
    return guarded("fermat_quotient_of_fuchsian", "fermat-quotient-map", [&] {
      bool ok = true;
      Json vals = Json::array();
      for (long n = 2; n < p; ++n) {
        Int P(p);
        Int expect = mod(Int((pow_int(Int(n), static_cast<unsigned long>(p)) - n) / P), P);
        long got = ctx.fermat_quotient(ctx.fuchsian(n));
        vals.push_back({n, got});
        if (expect != got) ok = false;
      }
      long tp = ctx.fermat_quotient(ctx.fuchsian(p));
      ok = ok && tp == p - 1;
      Record r;
      r.status = status_from(ok);
      r.inputs = {{"p", p}};
      r.outputs = {{"phi_theta_n", vals}, {"phi_theta_p", tp}};
      return r;
    });
  });
  timed(rep, [&] {
    return guarded("fermat_quotient_equivariance", "fermat-quotient-map", [&] {
      bool ok = true;
      for (long n = 1; n <= (p - 1) / 2; ++n)
        for (long a = 1; a < p; ++a)
          if (ctx.fermat_quotient(apply_sigma(a, ctx.fueter(n))) != mod(a * ctx.fermat_quotient(ctx.fueter(n)), p))
            ok = false;
      Record r;
      r.status = status_from(ok);
      r.inputs = {{"p", p}};
      return r;
    });
  });
  timed(rep, [&] {
    return guarded("generators_in_stickelberger_ideal", "stickelberger-ideal", [&] {
      IntMatrix basis = stickelberger_basis(ctx);
      bool ok = true;
      for (long n = 2; n <= p; ++n) ok = ok && in_stickelberger_ideal(basis, ctx.fuchsian(n));
      for (long n = 1; n <= (p - 1) / 2; ++n) ok = ok && in_stickelberger_ideal(basis, ctx.fueter(n));
      // N = sum sigma lies in I; 1 does not for p > 3
      ok = ok && in_stickelberger_ideal(basis, GroupRingElement::norm_element(p));
      if (p > 3) ok = ok && !in_stickelberger_ideal(basis, GroupRingElement::one(p));
      Record r;
      r.status = status_from(ok);
      r.inputs = {{"p", p}};
      r.outputs = {{"basis_rank", basis.size()}};
      return r;
    });
  });
  if (p < 5) return;
  timed(rep, [&] {
    return guarded("bernoulli_profile", "irregularity", [&] {
      BernoulliProfile prof = bernoulli_profile(ctx);
      bool phi_ok = true;
      for (const auto& [k, E] : prof.E) {
        long phi = ctx.fermat_quotient(E.lifted());
        if (k == 1 ? phi != 1 : phi != 0) phi_ok = false;
      }
      bool eig_ok = true;
      for (const auto& [k, E] : prof.E)
        for (long m = 1; m < p; ++m)
          if (apply_sigma(m, E) != Int(powmod(m, k, p)) * E) eig_ok = false;
      bool lepisto = 4 * prof.irregularity < p - 1;
      bool rank_ok = prof.fueter_rank == prof.r && 4 * prof.r >= p - 1;
      Record r;
      r.status = status_from(phi_ok && eig_ok && lepisto && rank_ok);
      r.inputs = {{"p", p}};
      Json irr = Json::array();
      for (long k : prof.irregular_k) irr.push_back({{"k", k}, {"bernoulli_index", p - k}});
      r.outputs = {{"irregularity", prof.irregularity}, {"irregular", irr},       {"r", prof.r},
                   {"fueter_rank", prof.fueter_rank},   {"phi_E_ok", phi_ok},     {"eigen_ok", eig_ok},
                   {"lepisto", lepisto},                {"routes_agree", true}};
      return r;
    });
  });
  timed(rep, [&] {
    return guarded("weight2_annihilator", "fermat-module-weight-two", [&] {
      Weight2Annihilator w = annihilator_for(ctx);
      IntMatrix basis = stickelberger_basis(ctx);
      bool in_i0 = in_stickelberger_ideal(basis, w.psi) && ctx.fermat_quotient(w.psi) == 0;
      auto wt = weights(w.psi);
      bool shape = wt.positive && wt.relative == Int(2);
      Record r;
      r.inputs = {{"p", p}};
      r.outputs = {{"psi", w.psi.str()}, {"recipe", w.recipe}, {"only_trivial_fix", w.subgroup_free}};
      if (!in_i0 || !shape)
        r.status = Status::fail;
      else
        r.status = w.subgroup_free ? Status::pass : Status::waived;
      if (!w.subgroup_free) r.note = "every relative-weight-2 element of I_0 is fixed by a nontrivial subgroup";
      return r;
    });
  });
}

inline void cyclotomic_checks(Report& rep, long p, std::mt19937_64& rng, std::uint64_t seed, long samples) {
  timed(rep, [&] {
    return guarded("p_over_lambda", "uniformizer-inverse", [&] {
      CycloRat lhs = Rat(p) * inverse(to_rat(CycloInt::lambda(p)));
      std::vector<Rat> v;
      for (long c = 1; c < p; ++c) v.push_back(Rat(-c));
      CycloRat rhs(p, v);
      CycloRat sum(p);
      for (long c = 1; c < p; ++c) sum += inverse(to_rat(CycloInt::one(p) - CycloInt::zeta_pow(p, c)));
      bool sum_ok = sum == CycloRat::integer(p, ratio(p - 1, 2));
      Record r;
      r.status = status_from(lhs == rhs && sum_ok);
      r.inputs = {{"p", p}};
      r.outputs = {{"p_over_lambda", lhs == rhs}, {"sum_inverse_lambda_c", sum_ok}};
      return r;
    });
  });
  timed(rep, [&] {
    return guarded("kappa_trace_identity", "coordinate-map", [&] {
      bool corrected = true, literal_tz = true, literal_fails_somewhere = false;
      for (long i = 0; i < samples; ++i) {
        CycloInt x = random_cyclo(rng, p, 50);
        auto k = kappa_by_trace(x);
        for (long c = 1; c < p; ++c)
          if (k[c - 1] != p * x.coord(c)) corrected = false;
        if (x.trace() != 0 && kappa_by_trace_plus(x) != kappa_by_trace(x)) literal_fails_somewhere = true;
        CycloInt z = random_trace_zero(rng, p, 50);
        auto kl = kappa_by_trace_plus(z);
        for (long c = 1; c < p; ++c)
          if (kl[c - 1] != p * z.coord(c)) literal_tz = false;
      }
      Record r;
      r.status = status_from(corrected && literal_tz);
      r.seed = seed;
      r.inputs = {{"p", p}, {"samples", samples}};
      r.outputs = {{"minus_one_form_all", corrected},
                   {"plus_one_form_trace_zero", literal_tz},
                   {"plus_one_form_differs_off_trace_zero", literal_fails_somewhere}};
      return r;
    });
  });
  timed(rep, [&] {
    return guarded("trace_pairing_and_norms", "trace-pairing", [&] {
      bool coord = true, hermitian = true, ident = true, chain = true, literal = true;
      for (long i = 0; i < samples; ++i) {
        CycloInt x = random_cyclo(rng, p, 30), v = random_cyclo(rng, p, 30);
        if ((x * v).trace() != trace_product_coordinates(x, v)) coord = false;
        if (trace_pairing(x, v) != trace_pairing(v, x)) hermitian = false;  // rational values, so symmetric
        CycloInt z = random_trace_zero(rng, p, 30);
        if (z.is_zero()) continue;
        NormComparison nc = norms_compare(z);
        ident = ident && nc.pairing_identity;
        chain = chain && nc.squared_chain;
        literal = literal && nc.literal_chain;
      }
      Record r;
      r.status = status_from(coord && hermitian && ident && chain);
      r.seed = seed;
      r.inputs = {{"p", p}, {"samples", samples}};
      r.outputs = {{"coordinate_formula", coord}, {"symmetric", hermitian},  {"pairing_identity", ident},
                   {"squared_chain", chain},      {"unsquared_chain", literal}};
      return r;
    });
  });
  timed(rep, [&] {
    return guarded("lambda_expansion_roundtrip", "lambda-adic-digits", [&] {
      bool ok = true;
      for (long i = 0; i < samples / 4 + 1; ++i) {
        CycloInt x = random_cyclo(rng, p, 100);
        for (bool bal : {false, true}) {
          LambdaExpansion e = lambda_expand(x, 2 * (p - 1), bal);
          if (lambda_reassemble(e, p) != x) ok = false;
          for (const auto& d : e.digits)
            if (bal ? (2 * d <= -p || 2 * d > p) : (d < 0 || d >= p)) ok = false;
        }
      }
      Record r;
      r.status = status_from(ok);
      r.seed = seed;
      r.inputs = {{"p", p}};
      return r;
    });
  });
  timed(rep, [&] {
    return guarded("norm_multiplicative", "norm-map", [&] {
      bool ok = true;
      for (long i = 0; i < samples / 10 + 1; ++i) {
        CycloInt a = random_cyclo(rng, p, 5), b = random_cyclo(rng, p, 5);
        if (norm_int(a * b) != norm_int(a) * norm_int(b)) ok = false;
        if (!a.is_zero() && to_rat(a) * inverse(to_rat(a)) != CycloRat::one(p)) ok = false;
      }
      ok = ok && norm_int(CycloInt::lambda(p)) == p;
      Record r;
      r.status = status_from(ok);
      r.seed = seed;
      r.inputs = {{"p", p}};
      return r;
    });
  });
}

inline void series_checks(Report& rep, long p, long M) {
  if (p < 5) return;
  StickelbergerContext ctx(p);
  Weight2Annihilator w = annihilator_for(ctx);
  std::vector<std::pair<std::string, GroupRingElement>> thetas = {
      {"psi_1", ctx.fueter(1)}, {"2psi_1", Int(2) * ctx.fueter(1)}, {"annihilator", w.psi}};
  for (const auto& [label, theta] : thetas) {
    timed(rep, [&] {
      return guarded("series_pth_power_" + label, "binomial-series", [&] {
        PowerCheck pc = pth_power_check(theta, M);
        SeriesTable t = binom_coeffs(theta, M);
        Series direct = binom_series_direct(theta, M);
        bool same = true;
        for (long m = 0; m <= M; ++m) same = same && direct[m] == t.a[m];
        Record r;
        r.status = status_from(pc.pass && same && t.integral);
        r.inputs = {{"p", p}, {"theta", theta.str()}, {"M", M}};
        r.outputs = {{"pth_power", pc.pass}, {"direct_product_agrees", same}, {"integral", t.integral}};
        if (label == "annihilator" && !w.subgroup_free) {
          r.note = "annihilator is subgroup-fixed at this prime";
        }
        return r;
      });
    });
  }
  timed(rep, [&] {
    return guarded("series_coefficient_bounds", "binomial-series", [&] {
      SeriesTable t = binom_coeffs(ctx.fueter(1), M);
      bool ok = true;
      Json mags = Json::array();
      for (long m = 0; m <= M; ++m) {
        BoundCheck bc = coeff_bound_check(t, m, 20);
        ok = ok && bc.holds;
        mags.push_back({{"m", m}, {"max_abs", bc.max_magnitude}, {"bound", bc.bound.get_d()}});
      }
      Record r;
      r.status = status_from(ok);
      r.tolerance = "certified float, margin 2^-20";
      r.inputs = {{"p", p}, {"theta", "psi_1"}, {"M", M}};
      r.outputs = {{"magnitudes", mags}};
      return r;
    });
  });
  timed(rep, [&] {
    return guarded("wieferich_sums", "binomial-series-lambda-term", [&] {
      WieferichSums ws = wieferich_sums(p);
      bool ok = ws.conjugate_sum && ws.half_congruence && ws.diff_congruence && ws.diff_nonzero &&
                ws.lower_half_congruence && ws.lower_diff_congruence;
      Record r;
      r.status = status_from(ok);
      r.inputs = {{"p", p}};
      r.outputs = {{"S", js(ws.S.coords())},
                   {"S_plus_conjugate", ws.conjugate_sum},
                   {"half_congruence", ws.half_congruence},
                   {"difference_congruence", ws.diff_congruence},
                   {"difference_nonzero", ws.diff_nonzero},
                   {"lower_range_opposite_sign", ws.lower_half_congruence && ws.lower_diff_congruence}};
      return r;
    });
  });
}

// Smallest primes r != p, r | y candidates, used for semilocal checks.
inline std::vector<long> small_primes_except(long p, size_t count) {
  std::vector<long> out;
  for (long r = 2; out.size() < count; ++r)
    if (is_prime(r) && r != p) out.push_back(r);
  return out;
}

inline void semilocal_checks(Report& rep, long p) {
  timed(rep, [&] {
    return guarded("factor_counts", "semilocal-decomposition", [&] {
      bool ok = true;
      Json rows = Json::array();
      for (long r : small_primes_except(p, 4)) {
        LocalFactorization L = factor_phi(r, p, 2);
        long g = (p - 1) / mult_order(r, p);
        bool idem = true;
        SemilocalElement sum(p, L.modulus);
        for (size_t i = 0; i < L.idempotents.size(); ++i) {
          sum = sum + L.idempotents[i];
          if (L.idempotents[i] * L.idempotents[i] != L.idempotents[i]) idem = false;
        }
        idem = idem && sum == SemilocalElement::one(p, L.modulus);
        ok = ok && static_cast<long>(L.factors.size()) == g && idem;
        rows.push_back({{"r", r}, {"g", L.factors.size()}, {"expected", g}, {"idempotents", idem}});
      }
      Record r;
      r.status = status_from(ok);
      r.inputs = {{"p", p}};
      r.outputs = {{"factorizations", rows}};
      return r;
    });
  });
  timed(rep, [&] {
    return guarded("local_roots_of_unity", "adelic-root", [&] {
      long r = small_primes_except(p, 1)[0];
      // a prime r = 1 mod p splits completely
      for (long t = p + 1;; t += p)
        if (is_prime(t)) {
          r = t;
          break;
        }
      LocalFactorization L = factor_phi(r, p, 2);
      bool ok = true;
      std::vector<long> ex;
      for (size_t j = 0; j < L.factors.size(); ++j) ex.push_back(static_cast<long>(j % p));
      SemilocalElement rho = local_root_of_unity(L, ex);
      ok = rho.pow(static_cast<unsigned long>(p)) == SemilocalElement::one(p, L.modulus);
      bool nonglobal = !global_root_index(rho).has_value();
      std::vector<long> same(L.factors.size(), 2);
      bool global = global_root_index(local_root_of_unity(L, same)) == std::optional<long>(2);
      Record rec;
      rec.status = status_from(ok && nonglobal && global);
      rec.inputs = {{"p", p}, {"r", r}};
      rec.outputs = {{"rho_pow_p_is_one", ok}, {"mixed_exponents_not_global", nonglobal}, {"equal_exponents_global", global}};
      return rec;
    });
  });
  if (p < 5) return;
  timed(rep, [&] {
    return guarded("series_sum_equivariance", "galois-action-semilocal", [&] {
      StickelbergerContext ctx(p);
      long x = 2, y = 2 * p + 3;
      while (gcd(Int(x), Int(y)) != 1 || y % p == 0) ++y;
      bool ok = sl_equivariance(ctx.fueter(1), x, y, 4);
      SeriesTable t = binom_coeffs(ctx.fueter(1), 5);
      bool stable = sl_eval(t, x, y, 4).stable;
      Record r;
      r.status = status_from(ok && stable);
      r.inputs = {{"p", p}, {"x", x}, {"y", y}, {"N", 4}};
      r.outputs = {{"equivariant", ok}, {"stable", stable}};
      return r;
    });
  });
}

inline void lattice_checks(Report& rep, long p) {
  timed(rep, [&] {
    return guarded("order_rank_bijection", "pair-ordering", [&] {
      bool ok = true;
      for (long n = 1; n <= 10000; ++n) ok = ok && order_rank(order_unrank(n)) == n;
      for (long n = 1; n < 2000; ++n) ok = ok && order_le(order_unrank(n), order_unrank(n + 1));
      Pair th = order_threshold(p);
      Record r;
      r.status = status_from(ok && order_rank(th) == p - 1);
      r.inputs = {{"p", p}};
      r.outputs = {{"mu", th.first}, {"chi", th.second}, {"quadratic_estimate", order_quadratic_estimate(p)}};
      return r;
    });
  });
  timed(rep, [&] {
    return guarded("siegel_ones_row", "small-kernel-vector", [&] {
      long n = std::min<long>(p, 8);  // exact sup-minimisation is exponential in the ambient dimension
      IntMatrix A{IntVec(static_cast<size_t>(n), Int(1))};
      SiegelResult s = siegel_solve(A, n);
      Record r;
      r.status = status_from(s.sup == 1 && s.within_bv_bound && is_zero_vec(mat_vec(A, s.w)));
      r.inputs = {{"rows", 1}, {"ambient", n}};
      r.outputs = {{"w", js(s.w)}, {"det", js(s.bv.det)}, {"U", s.bv.U}};
      return r;
    });
  });
}

inline Report run_identities(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.p > 101) throw invalid_input("identity suite supports p <= 101");
  Report rep;
  rep.command = "identities";
  rep.config = cfg.to_json();
  rep.timing = cfg.timing;
  std::mt19937_64 rng(cfg.seed);
  long M = cfg.truncation.value_or(default_truncation(cfg.p));
  stickelberger_checks(rep, cfg.p);
  cyclotomic_checks(rep, cfg.p, rng, cfg.seed, cfg.samples);
  series_checks(rep, cfg.p, M);
  semilocal_checks(rep, cfg.p);
  lattice_checks(rep, cfg.p);
  return rep;
}

}  // namespace adelic::harness
