#pragma once

// Reference computations used only by the tests. None of these go through
// the production recurrence, Clenshaw scheme, or symmetry-reduced sums.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "sphbounds/codes.hpp"
#include "sphbounds/error.hpp"
#include "sphbounds/gegenbauer.hpp"
#include "sphbounds/threepoint.hpp"

namespace sphbounds::testing {

/// Gauss rule for the weight (1-t^2)^{(n-3)/2} built by Golub-Welsch from the
/// closed-form monic Gegenbauer recurrence.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussRule gauss_gegenbauer(int n, int points) {
  const double lambda = (n - 2) / 2.0;
  const double a = (n - 3) / 2.0;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(points, points);
  for (int k = 1; k < points; ++k) {
    double beta;
    if (n == 2) {
      beta = k == 1 ? 0.5 : 0.25;
    } else {
      beta = k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0));
    }
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(beta);
  }
  const double mass = std::sqrt(std::numbers::pi) * std::tgamma(a + 1.0) / std::tgamma(a + 1.5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  GaussRule rule;
  for (int i = 0; i < points; ++i) {
    rule.nodes.push_back(eig.eigenvalues()(i));
    const double v0 = eig.eigenvectors()(0, i);
    rule.weights.push_back(mass * v0 * v0);
  }
  return rule;
}

/// Integral of G_j G_k against the Gegenbauer weight.
inline double orthogonality_oracle(int n, int j, int k) {
  if (n < 3 || j < 0 || k < 0) throw ParameterError("orthogonality_oracle: need n >= 3, j,k >= 0");
  const int points = (j + k + 1) / 2 + 2;
  const GaussRule rule = gauss_gegenbauer(n, points);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * gegenbauer_eval(n, j, rule.nodes[i]) * gegenbauer_eval(n, k, rule.nodes[i]);
  }
  return sum;
}

inline constexpr int kMonomialOracleMaxDegree = 12;

/// Monomial coefficients of G_k^{(n)} by Gram-Schmidt on 1, t, t^2, ... with
/// analytically known moments, normalized to value 1 at t = 1.
inline std::vector<double> monomial_oracle(int n, int k) {
  if (n < 2 || k < 0) throw ParameterError("monomial_oracle: need n >= 2, k >= 0");
  if (k > kMonomialOracleMaxDegree) {
    throw CapabilityError("monomial_oracle is limited to degree 12");
  }
  using Real = long double;
  const Real a = (n - 3) / 2.0L;
  // moments m_p = int t^p (1-t^2)^a dt, divided by m_0
  std::vector<Real> moment(2 * static_cast<std::size_t>(k) + 1, 0.0L);
  for (int q = 0; 2 * q <= 2 * k; ++q) {
    moment[2 * q] = std::exp(std::lgamma(q + 0.5L) + std::lgamma(a + 1.5L) -
                             std::lgamma(0.5L) - std::lgamma(q + a + 1.5L));
  }
  auto inner = [&](const std::vector<Real>& p, const std::vector<Real>& r) {
    Real s = 0.0L;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j) s += p[i] * r[j] * moment[i + j];
    return s;
  };
  std::vector<std::vector<Real>> basis;
  for (int deg = 0; deg <= k; ++deg) {
    std::vector<Real> p(static_cast<std::size_t>(deg) + 1, 0.0L);
    p[deg] = 1.0L;
    for (const auto& q : basis) {  // modified Gram-Schmidt
      const Real c = inner(p, q) / inner(q, q);
      for (std::size_t i = 0; i < q.size(); ++i) p[i] -= c * q[i];
    }
    basis.push_back(std::move(p));
  }
  const auto& top = basis.back();
  Real at_one = 0.0L;
  for (Real c : top) at_one += c;
  std::vector<double> out;
  for (Real c : top) out.push_back(static_cast<double>(c / at_one));
  return out;
}

inline double eval_monomial(const std::vector<double>& coeffs, double t) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
  return v;
}

/// Triple sum by three nested loops over all N^3 ordered triples.
inline double brute_force_triple_sum(const SphericalCode& code, const TripleCertificate& cert) {
  const std::size_t n = code.size();
  long double sum = 0.0L;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        sum += cert(code.inner(x, y), code.inner(x, z), code.inner(y, z));
  return static_cast<double>(sum);
}

/// E_g by a plain double loop over distinct ordered pairs.
inline double brute_force_energy(const SphericalCode& code, const GegenbauerExpansion& g) {
  long double sum = 0.0L;
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = 0; j < code.size(); ++j)
      if (i != j) sum += g(code.inner(i, j));
  return static_cast<double>(sum);
}

/// The built-in codes exercised by property tests.
inline std::vector<std::pair<std::string, SphericalCode>> builtin_codes() {
  std::vector<std::pair<std::string, SphericalCode>> out;
  for (const char* name : {"24cell", "simplex2", "simplex3", "simplex4", "simplex5", "simplex8", "cross2", "cross3",
                           "cross4", "cross6"}) {
    out.emplace_back(name, make_builtin(name));
  }
  return out;
}

}  // namespace sphbounds::testing
