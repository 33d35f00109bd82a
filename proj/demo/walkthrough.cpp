// Prints the Stickelberger data, a weight-2 annihilator and its binomial series
// for one prime, then a brute-force search at p = 3.
#include "adelic/harness/search.hpp"
#include "adelic/series.hpp"
#include "adelic/stickelberger.hpp"

#include <cstdlib>
#include <iostream>

using namespace adelic;

int main(int argc, char** argv) {
  long p = argc > 1 ? std::atol(argv[1]) : 11;
  try {
    StickelbergerContext ctx(p);
    auto prof = bernoulli_profile(ctx);
    std::cout << "p = " << p << "\n"
              << "irregularity i_p = " << prof.irregularity << "\n"
              << "r_p = " << prof.r << ", rank of (1-j)I mod p = " << prof.fueter_rank << "\n";
    for (long k : prof.irregular_k) std::cout << "  p | B_" << p - k << "\n";

    auto w = construct_weight2_annihilator(ctx, true);
    std::cout << "weight-2 annihilator psi = " << w.psi << (w.subgroup_free ? "" : "  (fixed by a subgroup)") << "\n";

    auto t = binom_coeffs(w.psi, 8);
    std::cout << "series integral to order 8: " << (t.integral ? "yes" : "no") << "\n";
    for (long m = 0; m <= 4; ++m) std::cout << "  a_" << m << " = " << t.a[m].str() << "\n";

    auto res = harness::search(3, std::nullopt, 20);
    std::cout << "p = 3, |x|,|y| <= 20, x > max(y, 0):";
    for (const auto& h : res.tally.hits)
      if (h.x > 0 && h.x > h.y) std::cout << " (" << h.x << "," << h.y << "," << h.z << ",e=" << h.e << ")";
    std::cout << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
