// Distance distribution of the 24-cell and the interval sums A(S) compared
// against the upper and lower limits known for (24, 4, 1/2) codes.

#include <cstdio>

#include "sphbounds/sphbounds.hpp"

using namespace sphbounds;

int main() {
  const SphericalCode cell = make_24cell();
  const DistanceDistribution dist = distance_distribution(cell);

  std::printf("N = %zu, n = %d\n", cell.size(), cell.dimension());
  for (const auto& e : dist.entries()) {
    std::printf("  A_{%lld/%lld} = %g\n", static_cast<long long>(e.exact->num), static_cast<long long>(e.exact->den),
                e.mass);
  }

  struct Limit {
    Interval s;
    double value;
    bool upper;
  };
  const Limit limits[] = {
      {{-1.0, -0.45}, 9, true}, {{-1.0, 0.05}, 15, true},  {{-0.55, 0.05}, 14, true},
      {{-0.05, 0.5}, 14, true}, {{-1.0, -0.73}, 1, false}, {{0.35, 0.5}, 8, false},
  };
  for (const auto& l : limits) {
    const double a = interval_mass(dist, l.s);
    std::printf("  A([%5.2f, %5.2f]) = %4.1f   %s %g%s\n", l.s.lo, l.s.hi, a, l.upper ? "<=" : ">=", l.value,
                a == l.value ? "  (attained)" : "");
  }

  for (int k = 0; k <= 6; ++k) std::printf("  M_%d = %.3e\n", k, moment(cell, k));
  return 0;
}
