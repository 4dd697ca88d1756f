// Reproduces the four-dimensional kissing-number numbers in one run:
// values of g1 and g2, the bounds B(24) and B(25), the LP comparison, and
// the cap-optimization check that rules out 25 touching spheres.
//
//   kissing_number_4d [data-dir] [seed]

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "sphbounds/io.hpp"
#include "sphbounds/sphbounds.hpp"

using namespace sphbounds;

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : SPHBOUNDS_DATA_DIR;
  const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 0;
  try {
    const DDCertificate c1 = io::dd_from_json(io::read_file(dir + "/g1.json"));
    const DDCertificate c2 = io::dd_from_json(io::read_file(dir + "/g2.json"));

    std::printf("g1(-1) = %.6f   g2(-1) = %.6f   g2(1) = %.4f\n", c1.g()(-1.0), c2.g()(-1.0), c2.g()(1.0));

    DomainSpec spec;
    spec.mode = CheckMode::certified;
    const auto s1 = check_sign(c1.g(), *c1.nonpositive_on, spec);
    const auto s2 = check_sign(c2.g(), *c2.nonpositive_on, spec);
    std::printf("max g1 on [%.4f, 0.5] <= %.3e (certified)\n", c1.nonpositive_on->lo, s1.worst_violation);
    std::printf("max g2 on [%.4f, 0.5] <= %.3e (certified)\n", c2.nonpositive_on->lo, s2.worst_violation);

    for (const auto* c : {&c1, &c2}) {
      for (long long N : {24LL, 25LL}) {
        std::printf("M = %.4f  N = %lld  B = %.6f", c->M(), N, cor31_bound(*c, N));
        if (c->g().nonnegative_above_constant()) {
          std::printf("  LP = %.4f", lp_rg_lower(c->g(), N));
        } else {
          std::printf("  LP n/a");
        }
        std::printf("\n");
      }
    }

    const double t0 = -std::sqrt(2.0) / 2.0;
    for (long long N : {25LL, 24LL}) {
      const KissingReport r = kissing_check(c1.g(), c1.M(), t0, 4, N, CapOptions{200, seed});
      std::printf("N = %lld:", N);
      for (const auto& pm : r.per_m) std::printf("  m=%d %.6f", pm.m, pm.value);
      std::printf("\n  max %.6f at m = %d vs B = %.6f -> %s\n", r.upper_estimate, r.argmax_m, r.bound,
                  to_string(r.verdict).c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
