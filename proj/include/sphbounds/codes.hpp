#pragma once

// Finite point sets on S^{n-1} and the pair statistics built from them:
// inner-product sets, distance distributions A_t, moments M_k, and the
// energies E_g, S_f, R_g.
//
// Conventions: all sums run over ordered pairs. The diagonal (x = y, t = 1)
// is part of S_f and M_k but never part of E_g or of a DistanceDistribution,
// so sum_t A_t = N - 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sphbounds/error.hpp"
#include "sphbounds/gegenbauer.hpp"
#include "sphbounds/summation.hpp"

namespace sphbounds {

/// Reduced fraction num/den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw ParameterError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return {num / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};
  }

  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
  }
};

inline constexpr double kUnitNormTolerance = 1e-9;
inline constexpr double kDefaultClusterTolerance = 1e-9;

/// N unit vectors in R^n. Immutable once built.
class SphericalCode {
 public:
  /// Validates every point to unit norm within `norm_tol`.
  SphericalCode(int n, std::vector<std::vector<double>> points, double norm_tol = kUnitNormTolerance)
      : n_(n) {
    if (n < 2) throw ParameterError("spherical code dimension must be >= 2");
    if (points.empty()) throw ValidationError("spherical code needs at least one point");
    coords_.reserve(points.size() * static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      if (static_cast<int>(p.size()) != n) {
        throw ValidationError("point " + std::to_string(i) + " has " + std::to_string(p.size()) +
                              " coordinates, expected " + std::to_string(n));
      }
      double sq = 0.0;
      for (double x : p) sq += x * x;
      if (!(std::abs(sq - 1.0) <= norm_tol)) {
        throw ValidationError("point " + std::to_string(i) + " is not a unit vector (squared norm " +
                              std::to_string(sq) + ")");
      }
      coords_.insert(coords_.end(), p.begin(), p.end());
    }
    size_ = points.size();
  }

  /// Attaches an exact inner-product table (row-major, N x N).
  SphericalCode(int n, std::vector<std::vector<double>> points, std::vector<Rational> exact_products)
      : SphericalCode(n, std::move(points), 1e-12) {
    if (exact_products.size() != size_ * size_) throw ParameterError("exact table has wrong size");
    exact_ = std::move(exact_products);
  }

  [[nodiscard]] int dimension() const { return n_; }
  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] bool has_exact_products() const { return exact_.has_value(); }

  [[nodiscard]] std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }

  [[nodiscard]] std::optional<Rational> exact_inner(std::size_t i, std::size_t j) const {
    if (!exact_) return std::nullopt;
    return (*exact_)[i * size_ + j];
  }

  /// x_i . x_j, clamped to [-1,1]; 1 exactly on the diagonal.
  [[nodiscard]] double inner(std::size_t i, std::size_t j) const {
    if (i == j) return 1.0;
    if (exact_) return (*exact_)[i * size_ + j].value();
    const auto a = point(i);
    const auto b = point(j);
    double s = 0.0;
    for (int k = 0; k < n_; ++k) s += a[k] * b[k];
    return std::clamp(s, -1.0, 1.0);
  }

 private:
  int n_;
  std::size_t size_ = 0;
  std::vector<double> coords_;
  std::optional<std::vector<Rational>> exact_;
};

/// Regular simplex: n+1 points with pairwise inner product -1/n.
inline SphericalCode make_simplex(int n) {
  if (n < 2) throw ParameterError("simplex needs n >= 2");
  // Cholesky factor of the Gram matrix of the first n vertices; the last
  // vertex is minus their sum.
  const double off = -1.0 / n;
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(n) + 1, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = (i == j) ? 1.0 : off;
      for (int k = 0; k < j; ++k) s -= pts[i][k] * pts[j][k];
      pts[i][j] = (i == j) ? std::sqrt(s) : s / pts[j][j];
    }
  }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) pts[n][k] -= pts[i][k];
  const std::size_t count = pts.size();
  std::vector<Rational> exact(count * count, Rational::make(-1, n));
  for (std::size_t i = 0; i < count; ++i) exact[i * count + i] = Rational{1, 1};
  return {n, std::move(pts), std::move(exact)};
}

/// Cross-polytope: the 2n points +-e_i.
inline SphericalCode make_cross_polytope(int n) {
  if (n < 2) throw ParameterError("cross-polytope needs n >= 2");
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < n; ++i) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> p(n, 0.0);
      p[i] = sign;
      pts.push_back(std::move(p));
    }
  }
  const std::size_t count = pts.size();
  std::vector<Rational> exact(count * count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      double d = 0.0;
      for (int k = 0; k < n; ++k) d += pts[i][k] * pts[j][k];
      exact[i * count + j] = Rational::make(static_cast<std::int64_t>(d), 1);
    }
  return {n, std::move(pts), std::move(exact)};
}

/// The 24-cell (D4 root system): all permutations of (+-1, +-1, 0, 0) / sqrt 2.
inline SphericalCode make_24cell() {
  std::vector<std::array<int, 4>> scaled;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int sa : {1, -1})
        for (int sb : {1, -1}) {
          std::array<int, 4> v{};
          v[a] = sa;
          v[b] = sb;
          scaled.push_back(v);
        }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<std::vector<double>> pts;
  for (const auto& v : scaled) {
    std::vector<double> p(4);
    for (int k = 0; k < 4; ++k) p[k] = v[k] * inv_sqrt2;
    pts.push_back(std::move(p));
  }
  const std::size_t count = scaled.size();
  std::vector<Rational> exact(count * count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      int d = 0;
      for (int k = 0; k < 4; ++k) d += scaled[i][k] * scaled[j][k];
      exact[i * count + j] = Rational::make(d, 2);
    }
  return {4, std::move(pts), std::move(exact)};
}

/// Resolves "24cell", "simplexN", "crossN"; throws ValidationError otherwise.
inline SphericalCode make_builtin(const std::string& name) {
  auto suffix_dim = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
    const std::string rest = name.substr(prefix.size());
    if (!std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        rest.size() > 3) {
      return std::nullopt;
    }
    return std::stoi(rest);
  };
  if (name == "24cell") return make_24cell();
  if (auto n = suffix_dim("simplex")) return make_simplex(*n);
  if (auto n = suffix_dim("cross")) return make_cross_polytope(*n);
  throw ValidationError("unknown builtin code '" + name + "' (expected 24cell, simplexN or crossN)");
}

/// One cluster of off-diagonal inner products.
struct DistanceEntry {
  double t;                        ///< centroid of the member inner products
  std::size_t pair_count;          ///< ordered pairs in the cluster
  double mass;                     ///< A_t = pair_count / N
  std::optional<Rational> exact;   ///< set when computed from an exact table
};

class DistanceDistribution {
 public:
  DistanceDistribution(std::size_t code_size, std::vector<DistanceEntry> entries,
                       std::vector<std::vector<std::size_t>> per_point)
      : code_size_(code_size), entries_(std::move(entries)), per_point_(std::move(per_point)) {}

  [[nodiscard]] std::size_t code_size() const { return code_size_; }
  [[nodiscard]] const std::vector<DistanceEntry>& entries() const { return entries_; }

  /// A_t(u): number of points at inner product cluster `cluster` from point u.
  [[nodiscard]] std::size_t count_from(std::size_t u, std::size_t cluster) const {
    return per_point_.at(u).at(cluster);
  }

  [[nodiscard]] double total_mass() const {
    CompensatedSum s;
    for (const auto& e : entries_) s += e.mass;
    return s.value();
  }

  /// The inner-product set I(C) as cluster representatives.
  [[nodiscard]] std::vector<double> inner_products() const {
    std::vector<double> out;
    for (const auto& e : entries_) out.push_back(e.t);
    return out;
  }

  /// sum_t A_t g(t).
  [[nodiscard]] double weighted_sum(const GegenbauerExpansion& g) const {
    CompensatedSum s;
    for (const auto& e : entries_) s += e.mass * g(e.t);
    return s.value();
  }

 private:
  std::size_t code_size_;
  std::vector<DistanceEntry> entries_;
  std::vector<std::vector<std::size_t>> per_point_;
};

/// Clusters the inner products of distinct ordered pairs. Built-in codes with
/// exact tables are grouped exactly and `tol` is ignored.
inline DistanceDistribution distance_distribution(const SphericalCode& code,
                                                  double tol = kDefaultClusterTolerance) {
  if (!(tol > 0.0)) throw ParameterError("clustering tolerance must be positive");
  const std::size_t n = code.size();
  struct Pair {
    double t;
    std::size_t u;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n * (n - 1));
  std::vector<std::size_t> cluster_of;  // parallel to pairs after sorting
  std::vector<DistanceEntry> entries;

  if (code.has_exact_products()) {
    std::map<Rational, std::vector<std::size_t>> groups;  // value -> u list
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (u != v) groups[*code.exact_inner(u, v)].push_back(u);
    std::vector<std::vector<std::size_t>> per_point(n, std::vector<std::size_t>(groups.size(), 0));
    std::size_t c = 0;
    for (const auto& [value, us] : groups) {
      for (std::size_t u : us) ++per_point[u][c];
      entries.push_back({value.value(), us.size(), static_cast<double>(us.size()) / n, value});
      ++c;
    }
    return {n, std::move(entries), std::move(per_point)};
  }

  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) pairs.push_back({code.inner(u, v), u});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return a.t < b.t || (a.t == b.t && a.u < b.u);
  });

  // single linkage: a gap larger than tol starts a new cluster
  std::vector<std::pair<std::size_t, std::size_t>> ranges;  // [begin, end)
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i == 0 || pairs[i].t - pairs[i - 1].t > tol) {
      if (!ranges.empty() && pairs[i].t - pairs[i - 1].t <= 2.0 * tol) {
        throw AmbiguityError("inner-product clusters near " + std::to_string(pairs[i].t) +
                             " are separated by less than 2*tol; use a smaller tolerance");
      }
      ranges.emplace_back(i, i + 1);
    } else {
      ranges.back().second = i + 1;
    }
  }
  std::vector<std::vector<std::size_t>> per_point(n, std::vector<std::size_t>(ranges.size(), 0));
  for (std::size_t c = 0; c < ranges.size(); ++c) {
    CompensatedSum centroid;
    for (std::size_t i = ranges[c].first; i < ranges[c].second; ++i) {
      centroid += pairs[i].t;
      ++per_point[pairs[i].u][c];
    }
    const std::size_t count = ranges[c].second - ranges[c].first;
    entries.push_back({centroid.value() / static_cast<double>(count), count,
                       static_cast<double>(count) / static_cast<double>(n), std::nullopt});
  }
  return {n, std::move(entries), std::move(per_point)};
}

/// Closed interval [lo, hi]; empty when lo > hi.
struct Interval {
  double lo;
  double hi;

  [[nodiscard]] bool empty() const { return lo > hi; }
  [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
  [[nodiscard]] double width() const { return empty() ? 0.0 : hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A(S): sum of A_t over cluster representatives in S.
inline double interval_mass(const DistanceDistribution& d, const Interval& s) {
  CompensatedSum sum;
  for (const auto& e : d.entries()) {
    const bool inside = e.exact ? (e.exact->value() >= s.lo && e.exact->value() <= s.hi)
                                : s.contains(e.t);
    if (inside) sum += e.mass;
  }
  return sum.value();
}

/// M_k(C) = sum over all ordered pairs, diagonal included, of G_k(x.y).
inline double moment(const SphericalCode& code, int k) {
  if (k < 0) throw ParameterError("moment degree must be >= 0");
  const int n = code.dimension();
  CompensatedSum off;
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j) off += gegenbauer_eval(n, k, code.inner(i, j));
  return static_cast<double>(code.size()) + 2.0 * off.value();
}

namespace detail {
inline void require_same_dimension(const SphericalCode& code, const GegenbauerExpansion& g) {
  if (code.dimension() != g.dimension()) {
    throw ParameterError("expansion dimension " + std::to_string(g.dimension()) +
                         " does not match code dimension " + std::to_string(code.dimension()));
  }
}
}  // namespace detail

/// E_g(C): sum of g over distinct ordered pairs.
inline double energy(const SphericalCode& code, const GegenbauerExpansion& g) {
  detail::require_same_dimension(code, g);
  CompensatedSum s;
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j) s += g(code.inner(i, j));
  return 2.0 * s.value();
}

/// S_f(C) = N f(1) + E_f(C).
inline double pair_sum(const SphericalCode& code, const GegenbauerExpansion& f) {
  return static_cast<double>(code.size()) * f.value_at_one() + energy(code, f);
}

/// R_g(C) = E_g(C) / N.
inline double average_energy(const SphericalCode& code, const GegenbauerExpansion& g) {
  return energy(code, g) / static_cast<double>(code.size());
}

}  // namespace sphbounds
