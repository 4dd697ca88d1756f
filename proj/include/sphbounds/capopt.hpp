#pragma once

// Cap configuration maxima for the kissing-number argument.
//
// Fix a point e_1 of an (N, n, pi/3) code. If g <= 0 on [t0, 1/2], only
// neighbours y with e_1.y <= t0 (a cap around -e_1) contribute positively to
// sum_y g(e_1.y), and those neighbours have pairwise inner products <= 1/2.
// So R_g(C) is at most the largest value of
//
//   H(y_1..y_m) = sum_j g(e_1.y_j),  e_1.y_j <= t0,  y_i.y_j <= 1/2,
//
// over m = 0..mu, where mu bounds how many such points fit in the cap. If
// that maximum is below the lower bound B(N) = (N - M)/(3N), no code of size
// N exists.
//
// The maxima are found by multistart local search, so they are lower
// estimates of the true maxima; the report says so.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "sphbounds/bounds.hpp"
#include "sphbounds/codes.hpp"
#include "sphbounds/error.hpp"
#include "sphbounds/gegenbauer.hpp"
#include "sphbounds/verify.hpp"

namespace sphbounds {

inline constexpr double kCapFeasibilityTolerance = 1e-9;

struct CapProblem {
  int n = 4;
  GegenbauerExpansion g;
  double t0;
  int m;
  int mu;

  void validate() const {
    if (n < 2) throw ParameterError("cap problem dimension must be >= 2");
    if (g.dimension() != n) throw ParameterError("expansion dimension does not match cap problem dimension");
    if (!(t0 > -1.0 && t0 < -0.5)) throw ParameterError("cap height t0 must lie in (-1, -1/2)");
    if (mu < 0 || m < 0) throw ParameterError("m and mu must be nonnegative");
    if (m > mu) {
      throw PreconditionError("m = " + std::to_string(m) + " exceeds the cap capacity mu = " + std::to_string(mu));
    }
  }
};

struct CapOptions {
  int starts = 200;
  std::uint64_t seed = 0;
};

struct CapResult {
  int m = 0;
  double value = 0.0;
  std::vector<std::vector<double>> configuration;
  int best_start = -1;
};

namespace detail {

class CapSearch {
 public:
  CapSearch(const CapProblem& p) : p_(p), n_(static_cast<std::size_t>(p.n)), m_(static_cast<std::size_t>(p.m)) {}

  double dot(const std::vector<double>& y, std::size_t i, std::size_t j) const {
    double s = 0.0;
    for (std::size_t k = 0; k < n_; ++k) s += y[i * n_ + k] * y[j * n_ + k];
    return s;
  }

  double value(const std::vector<double>& y) const {
    double s = 0.0;
    for (std::size_t j = 0; j < m_; ++j) s += p_.g(std::clamp(y[j * n_], -1.0, 1.0));
    return s;
  }

  double penalty(const std::vector<double>& y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = i + 1; j < m_; ++j) {
        const double excess = dot(y, i, j) - 0.5;
        if (excess > 0.0) s += excess * excess;
      }
    return s;
  }

  void normalize(std::vector<double>& y, std::size_t j) const {
    double s = 0.0;
    for (std::size_t k = 0; k < n_; ++k) s += y[j * n_ + k] * y[j * n_ + k];
    const double inv = 1.0 / std::sqrt(s);
    for (std::size_t k = 0; k < n_; ++k) y[j * n_ + k] *= inv;
  }

  // nearest point of {|y| = 1, y_0 <= t0}
  void project_cap(std::vector<double>& y, std::size_t j) const {
    normalize(y, j);
    if (y[j * n_] <= p_.t0) return;
    double rest = 0.0;
    for (std::size_t k = 1; k < n_; ++k) rest += y[j * n_ + k] * y[j * n_ + k];
    const double target = std::sqrt(1.0 - p_.t0 * p_.t0);
    y[j * n_] = p_.t0;
    if (rest == 0.0) {
      y[j * n_ + 1] = target;
      return;
    }
    const double scale = target / std::sqrt(rest);
    for (std::size_t k = 1; k < n_; ++k) y[j * n_ + k] *= scale;
  }

  std::vector<double> random_start(std::mt19937_64& rng) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> y(m_ * n_);
    for (std::size_t j = 0; j < m_; ++j) {
      for (;;) {
        double s = 0.0;
        for (std::size_t k = 0; k < n_; ++k) {
          y[j * n_ + k] = normal(rng);
          s += y[j * n_ + k] * y[j * n_ + k];
        }
        if (s == 0.0) continue;
        normalize(y, j);
        if (y[j * n_] <= p_.t0) break;
      }
    }
    return y;
  }

  // projected gradient ascent on value - rho * penalty with backtracking
  void ascend(std::vector<double>& y, double rho) const {
    auto phi = [&](const std::vector<double>& z) { return value(z) - rho * penalty(z); };
    double current = phi(y);
    double step = 1e-1;
    std::vector<double> grad(m_ * n_), trial(m_ * n_);
    for (int iter = 0; iter < 400; ++iter) {
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t j = 0; j < m_; ++j) {
        grad[j * n_] += p_.g.eval_with_slope(std::clamp(y[j * n_], -1.0, 1.0)).slope;
        for (std::size_t i = 0; i < m_; ++i) {
          if (i == j) continue;
          const double excess = dot(y, i, j) - 0.5;
          if (excess <= 0.0) continue;
          for (std::size_t k = 0; k < n_; ++k) grad[j * n_ + k] -= 2.0 * rho * excess * y[i * n_ + k];
        }
        double radial = 0.0;
        for (std::size_t k = 0; k < n_; ++k) radial += grad[j * n_ + k] * y[j * n_ + k];
        for (std::size_t k = 0; k < n_; ++k) grad[j * n_ + k] -= radial * y[j * n_ + k];
      }
      bool improved = false;
      step = std::min(step * 2.0, 1.0);
      while (step > 1e-16) {
        for (std::size_t i = 0; i < trial.size(); ++i) trial[i] = y[i] + step * grad[i];
        for (std::size_t j = 0; j < m_; ++j) project_cap(trial, j);
        const double next = phi(trial);
        if (next > current) {
          improved = next - current > 1e-17;
          y.swap(trial);
          current = next;
          break;
        }
        step /= 2.0;
      }
      if (!improved) break;
    }
  }

  // push violating pairs apart to exactly pi/3, then back into the cap
  void polish(std::vector<double>& y) const {
    const double half_angle = std::acos(0.5) / 2.0 + 1e-13;
    for (int round = 0; round < 200; ++round) {
      bool violated = false;
      for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = i + 1; j < m_; ++j) {
          if (dot(y, i, j) <= 0.5) continue;
          violated = true;
          std::vector<double> mid(n_), diff(n_);
          double nm = 0.0, nd = 0.0;
          for (std::size_t k = 0; k < n_; ++k) {
            mid[k] = y[i * n_ + k] + y[j * n_ + k];
            diff[k] = y[i * n_ + k] - y[j * n_ + k];
            nm += mid[k] * mid[k];
            nd += diff[k] * diff[k];
          }
          if (nd == 0.0) continue;  // coincident points; leave to the feasibility check
          nm = std::sqrt(nm);
          nd = std::sqrt(nd);
          for (std::size_t k = 0; k < n_; ++k) {
            const double a = std::cos(half_angle) * mid[k] / nm;
            const double b = std::sin(half_angle) * diff[k] / nd;
            y[i * n_ + k] = a + b;
            y[j * n_ + k] = a - b;
          }
          project_cap(y, i);
          project_cap(y, j);
        }
      if (!violated) return;
    }
  }

  bool feasible(const std::vector<double>& y) const {
    for (std::size_t j = 0; j < m_; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n_; ++k) s += y[j * n_ + k] * y[j * n_ + k];
      if (std::abs(s - 1.0) > kCapFeasibilityTolerance) return false;
      if (y[j * n_] > p_.t0 + kCapFeasibilityTolerance) return false;
      for (std::size_t i = 0; i < j; ++i)
        if (dot(y, i, j) > 0.5 + kCapFeasibilityTolerance) return false;
    }
    return true;
  }

  std::vector<std::vector<double>> unpack(const std::vector<double>& y) const {
    std::vector<std::vector<double>> out;
    for (std::size_t j = 0; j < m_; ++j) out.emplace_back(y.begin() + j * n_, y.begin() + (j + 1) * n_);
    return out;
  }

 private:
  const CapProblem& p_;
  std::size_t n_;
  std::size_t m_;
};

}  // namespace detail

/// Largest sum_j g(e_1.y_j) found over m-point cap configurations.
inline CapResult cap_max(const CapProblem& problem, const CapOptions& options = {}) {
  problem.validate();
  if (options.starts < 1) throw ParameterError("need at least one start");
  CapResult best;
  best.m = problem.m;
  if (problem.m == 0) {
    best.best_start = 0;
    return best;
  }
  const detail::CapSearch search(problem);
  best.value = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < options.starts; ++s) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(problem.m), static_cast<std::uint32_t>(s)};
    std::mt19937_64 rng(seq);
    std::vector<double> y = search.random_start(rng);
    for (double rho = 10.0; rho <= 1e10; rho *= 10.0) search.ascend(y, rho);
    search.polish(y);
    if (!search.feasible(y)) continue;
    const double v = search.value(y);
    if (v > best.value) {
      best.value = v;
      best.configuration = search.unpack(y);
      best.best_start = s;
    }
  }
  if (best.best_start < 0) throw std::runtime_error("cap search found no feasible configuration");
  return best;
}

enum class Verdict { contradiction, inconclusive };

inline std::string to_string(Verdict v) { return v == Verdict::contradiction ? "CONTRADICTION" : "INCONCLUSIVE"; }

struct KissingOptions {
  double margin = 1e-3;
  double sign_tolerance = 5e-3;
  DomainSpec sign_spec{.mode = CheckMode::certified};
};

struct KissingReport {
  ViolationReport sign_check;
  double sign_tolerance;
  std::vector<CapResult> per_m;  ///< index m = 0..mu
  double upper_estimate;         ///< max_m of the cap maxima
  int argmax_m;
  long long N;
  double M;
  double bound;  ///< B(N)
  double margin;
  Verdict verdict;
  std::string caveat;
};

/// Runs the cap maxima for m = 0..mu and compares their maximum with B(N).
/// Refuses (PreconditionError) unless g <= sign_tolerance on [t0, 1/2].
inline KissingReport kissing_check(const GegenbauerExpansion& g, double M, double t0, int mu, long long N,
                                   const CapOptions& options = {}, const KissingOptions& kopts = {}) {
  KissingReport r;
  r.sign_check = check_sign(g, Interval{t0, 0.5}, kopts.sign_spec);
  r.sign_tolerance = kopts.sign_tolerance;
  if (!r.sign_check.passes(kopts.sign_tolerance)) {
    throw PreconditionError("g is not <= " + std::to_string(kopts.sign_tolerance) + " on [t0, 1/2] (worst " +
                            std::to_string(r.sign_check.worst_violation) + ")");
  }
  r.upper_estimate = -std::numeric_limits<double>::infinity();
  r.argmax_m = 0;
  for (int m = 0; m <= mu; ++m) {
    CapProblem p{g.dimension(), g, t0, m, mu};
    r.per_m.push_back(cap_max(p, options));
    if (r.per_m.back().value > r.upper_estimate) {
      r.upper_estimate = r.per_m.back().value;
      r.argmax_m = m;
    }
  }
  r.N = N;
  r.M = M;
  r.bound = cor31_bound(M, N);
  r.margin = kopts.margin;
  r.verdict = r.upper_estimate < r.bound - kopts.margin ? Verdict::contradiction : Verdict::inconclusive;
  r.caveat =
      "cap maxima come from multistart local search and are lower estimates of the true maxima; a "
      "CONTRADICTION is rigorous only if the found maxima are the global ones. Objective: sum of g(e1.y) over "
      "cap points e1.y <= t0 with pairwise inner products <= 1/2, valid because g <= 0 on [t0, 1/2].";
  return r;
}

}  // namespace sphbounds
