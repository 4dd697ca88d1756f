#pragma once

// Side conditions of two- and three-point certificates, checked by grid
// search over T (1-D) or the wedge t <= u <= v of D_3(T) (3-D), followed by
// local refinement around the best sample.
//
// In certified mode the reported worst violation is an upper bound on the
// true maximum: the best grid value plus a pad derived from derivative
// bounds. For 1-D checks the pad is the smaller of
//   L1 * h / 2     (first-derivative bound, nearest grid point), and
//   L2 * h^2 / 8   (second-derivative bound, linear interpolation error).
// For D_3(T), grid points with det >= -6h are kept so that every point of
// D_3(T) is within h/2 per coordinate of an evaluated node (|grad det| <= 4
// per coordinate on [-1,1]^3).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "sphbounds/codes.hpp"
#include "sphbounds/gegenbauer.hpp"
#include "sphbounds/poly3.hpp"
#include "sphbounds/threepoint.hpp"

namespace sphbounds {

enum class CheckMode { sampled, certified };

inline std::string to_string(CheckMode m) { return m == CheckMode::sampled ? "sampled" : "certified"; }

/// det of [[1,u,v],[u,1,t],[v,t,1]].
inline double d3_determinant(double t, double u, double v) {
  return 1.0 + 2.0 * t * u * v - t * t - u * u - v * v;
}

inline constexpr double kD3Tolerance = 1e-12;

/// (t,u,v) in D_3(T): all three in T and the Gram determinant nonnegative.
inline bool in_d3(double t, double u, double v, const Interval& T) {
  return T.contains(t) && T.contains(u) && T.contains(v) && d3_determinant(t, u, v) >= -kD3Tolerance;
}

struct DomainSpec {
  Interval T{-1.0, 0.5};
  double grid_step = 1e-5;     ///< 1-D checks
  double grid_step_3d = 1e-3;  ///< D_3(T) checks
  int refinement_depth = 40;
  CheckMode mode = CheckMode::sampled;
  bool exploit_symmetry = true;
  unsigned threads = 0;  ///< 0: hardware concurrency
};

struct ViolationReport {
  std::string condition;
  CheckMode mode = CheckMode::sampled;
  /// Sampled: best value found. Certified: rigorous upper bound.
  double worst_violation = -std::numeric_limits<double>::infinity();
  std::vector<double> location;
  double grid_step = 0.0;  ///< actual spacing used
  bool certified = false;
  double sampled_max = -std::numeric_limits<double>::infinity();
  double grid_max = -std::numeric_limits<double>::infinity();
  double lipschitz_pad = 0.0;
  std::size_t points_evaluated = 0;

  [[nodiscard]] bool passes(double tol) const { return worst_violation <= tol; }
};

namespace detail {

struct Grid1 {
  std::vector<double> nodes;
  double step;
};

inline Grid1 make_grid(const Interval& s, double step) {
  if (!(step > 0.0)) throw ParameterError("grid step must be positive");
  if (s.empty()) return {{}, 0.0};
  if (s.width() == 0.0) return {{s.lo}, 0.0};
  const auto count = static_cast<std::size_t>(std::ceil(s.width() / step - 1e-9));
  const double h = s.width() / static_cast<double>(std::max<std::size_t>(count, 1));
  Grid1 g{{}, h};
  const std::size_t n = std::max<std::size_t>(count, 1);
  g.nodes.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) g.nodes.push_back(s.lo + static_cast<double>(i) * h);
  g.nodes.push_back(s.hi);
  return g;
}

template <class Fn>
ViolationReport maximize_1d(std::string condition, const Fn& phi, const Interval& s, double slope_bound,
                            double curvature_bound, const DomainSpec& spec) {
  ViolationReport r;
  r.condition = std::move(condition);
  r.mode = spec.mode;
  r.certified = spec.mode == CheckMode::certified;
  const Grid1 grid = make_grid(s, spec.grid_step);
  r.grid_step = grid.step;
  if (grid.nodes.empty()) return r;

  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const double val = phi(grid.nodes[i]);
    if (val > best_val) {
      best_val = val;
      best = i;
    }
  }
  r.points_evaluated = grid.nodes.size();
  r.grid_max = best_val;

  // golden-section search on the two cells around the best node
  double x_best = grid.nodes[best];
  double f_best = best_val;
  if (grid.step > 0.0) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = std::max(s.lo, x_best - grid.step);
    double b = std::min(s.hi, x_best + grid.step);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = phi(c), fd = phi(d);
    for (int it = 0; it < spec.refinement_depth; ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = phi(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = phi(d);
      }
      if (fc > f_best) {
        f_best = fc;
        x_best = c;
      }
      if (fd > f_best) {
        f_best = fd;
        x_best = d;
      }
    }
  }
  r.sampled_max = f_best;
  r.location = {x_best};
  r.worst_violation = f_best;
  if (r.certified) {
    r.lipschitz_pad = std::min(slope_bound * grid.step / 2.0, curvature_bound * grid.step * grid.step / 8.0);
    r.worst_violation = std::max(f_best, r.grid_max + r.lipschitz_pad);
  }
  return r;
}

inline double univariate_slope_bound(const std::vector<double>& p) {
  double b = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) b += std::abs(p[i]) * static_cast<double>(i);
  return b;
}

inline double univariate_curvature_bound(const std::vector<double>& p) {
  double b = 0.0;
  for (std::size_t i = 2; i < p.size(); ++i) b += std::abs(p[i]) * static_cast<double>(i * (i - 1));
  return b;
}

}  // namespace detail

/// max of g over S.
inline ViolationReport check_sign(const GegenbauerExpansion& g, const Interval& s, const DomainSpec& spec) {
  return detail::maximize_1d(
      "sign", [&](double t) { return g(t); }, s, g.derivative_bound(), g.second_derivative_bound(), spec);
}

/// max over T of F(1,t,t) - f(t).
inline ViolationReport check_thm22_cond1(const TripleCertificate& F, const GegenbauerExpansion& f,
                                         const DomainSpec& spec) {
  const auto diag = F.expanded().restrict_to_one_s_s();
  return detail::maximize_1d(
      "thm22_cond1", [&](double t) { return F(1.0, t, t) - f(t); }, spec.T,
      detail::univariate_slope_bound(diag) + f.derivative_bound(),
      detail::univariate_curvature_bound(diag) + f.second_derivative_bound(), spec);
}

/// max over T of h(t) + h0 + F(1,t,t) - 2 g(t).
inline ViolationReport check_thm31_cond1(const GegenbauerExpansion& h, double h0, const TripleCertificate& F,
                                         const GegenbauerExpansion& g, const DomainSpec& spec) {
  const auto diag = F.expanded().restrict_to_one_s_s();
  return detail::maximize_1d(
      "thm31_cond1", [&](double t) { return h(t) + h0 + F(1.0, t, t) - 2.0 * g(t); }, spec.T,
      h.derivative_bound() + detail::univariate_slope_bound(diag) + 2.0 * g.derivative_bound(),
      h.second_derivative_bound() + detail::univariate_curvature_bound(diag) + 2.0 * g.second_derivative_bound(),
      spec);
}

/// max over D_3(T) of F(t,u,v) - g(t) - g(u) - g(v).
inline ViolationReport check_cond2(const TripleCertificate& F, const GegenbauerExpansion& g, const DomainSpec& spec) {
  ViolationReport r;
  r.condition = "cond2";
  r.mode = spec.mode;
  r.certified = spec.mode == CheckMode::certified;
  const detail::Grid1 grid = detail::make_grid(spec.T, spec.grid_step_3d);
  r.grid_step = grid.step;
  const std::size_t m = grid.nodes.size();
  if (m == 0) return r;
  const double det_floor = r.certified ? -6.0 * grid.step - kD3Tolerance : -kD3Tolerance;

  // power tables for the expanded polynomial
  const Poly3& poly = F.expanded();
  const int maxe = poly.max_exponent();
  std::vector<double> powers(m * static_cast<std::size_t>(maxe + 1));
  std::vector<double> gv(m);
  for (std::size_t i = 0; i < m; ++i) {
    double p = 1.0;
    for (int e = 0; e <= maxe; ++e) {
      powers[i * (maxe + 1) + e] = p;
      p *= grid.nodes[i];
    }
    gv[i] = g(grid.nodes[i]);
  }
  struct Term {
    int e0, e1, e2;
    double c;
  };
  std::vector<Term> terms;
  for (const auto& [e, c] : poly.terms()) terms.push_back({e[0], e[1], e[2], c});

  // `all` ranges over every evaluated node, `inside` over nodes in D_3(T)
  struct Best {
    double all = -std::numeric_limits<double>::infinity();
    double inside = -std::numeric_limits<double>::infinity();
    std::array<std::size_t, 3> inside_idx{0, 0, 0};
    std::size_t count = 0;
  };
  auto sweep = [&](std::size_t i, Best& best) {
    const double t = grid.nodes[i];
    const double* pt = &powers[i * (maxe + 1)];
    const std::size_t j0 = spec.exploit_symmetry ? i : 0;
    for (std::size_t j = j0; j < m; ++j) {
      const double u = grid.nodes[j];
      const double* pu = &powers[j * (maxe + 1)];
      const std::size_t k0 = spec.exploit_symmetry ? j : 0;
      for (std::size_t k = k0; k < m; ++k) {
        const double v = grid.nodes[k];
        const double det = d3_determinant(t, u, v);
        if (det < det_floor) continue;
        const double* pv = &powers[k * (maxe + 1)];
        double f = 0.0;
        for (const auto& term : terms) f += term.c * pt[term.e0] * pu[term.e1] * pv[term.e2];
        const double val = f - gv[i] - gv[j] - gv[k];
        ++best.count;
        best.all = std::max(best.all, val);
        if (det >= -kD3Tolerance && val > best.inside) {
          best.inside = val;
          best.inside_idx = {i, j, k};
        }
      }
    }
  };

  // rows are interleaved across workers; merge in row order for a fixed tie-break
  unsigned workers = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, m));
  std::vector<Best> row_best(m);
  {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < m; i += workers) sweep(i, row_best[i]);
      });
    }
    for (auto& th : pool) th.join();
  }
  Best best;
  for (const auto& rb : row_best) {
    best.count += rb.count;
    best.all = std::max(best.all, rb.all);
    if (rb.inside > best.inside) {
      best.inside = rb.inside;
      best.inside_idx = rb.inside_idx;
    }
  }
  r.points_evaluated = best.count;
  if (best.count == 0) return r;
  r.grid_max = best.all;

  // pattern search from the best node inside D_3(T)
  auto objective = [&](const std::array<double, 3>& x) {
    return F(x[0], x[1], x[2]) - g(x[0]) - g(x[1]) - g(x[2]);
  };
  const auto& bi = best.inside_idx;
  std::array<double, 3> x{grid.nodes[bi[0]], grid.nodes[bi[1]], grid.nodes[bi[2]]};
  double fx = best.inside;
  double step = std::isfinite(fx) ? grid.step : 0.0;
  for (int depth = 0; depth < spec.refinement_depth && step > 0.0;) {
    std::array<double, 3> best_y = x;
    double best_f = fx;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = -1; c <= 1; ++c) {
          if (a == 0 && b == 0 && c == 0) continue;
          const std::array<double, 3> y{x[0] + a * step, x[1] + b * step, x[2] + c * step};
          if (!in_d3(y[0], y[1], y[2], spec.T)) continue;
          const double fy = objective(y);
          if (fy > best_f) {
            best_f = fy;
            best_y = y;
          }
        }
    if (best_f > fx) {
      x = best_y;
      fx = best_f;
    } else {
      step /= 2.0;
      ++depth;
    }
  }
  r.sampled_max = fx;
  if (std::isfinite(fx)) r.location = {x[0], x[1], x[2]};
  r.worst_violation = r.sampled_max;
  if (r.certified) {
    const auto pb = poly.partial_bounds();
    const double lg = g.derivative_bound();
    r.lipschitz_pad = grid.step / 2.0 * ((pb[0] + lg) + (pb[1] + lg) + (pb[2] + lg));
    r.worst_violation = std::max(r.sampled_max, r.grid_max + r.lipschitz_pad);
  }
  return r;
}

}  // namespace sphbounds
