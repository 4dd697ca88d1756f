#pragma once

// Normalized Gegenbauer polynomials G_k^{(n)} with G_k^{(n)}(1) = 1, orthogonal
// on [-1,1] with weight (1 - t^2)^{(n-3)/2}, and expansions in that basis.
//
// These are the ultraspherical polynomials with parameter lambda = (n-2)/2,
// rescaled so the value at 1 is one. In that normalization the three-term
// recurrence reads
//
//   G_0 = 1,  G_1 = t,
//   G_{k+1}(t) = a_k t G_k(t) - b_k G_{k-1}(t),
//   a_k = (2k + 2 lambda) / (k + 2 lambda),  b_k = k / (k + 2 lambda),
//
// and a_k - b_k = 1 keeps G_k(1) = 1 along the way. n = 2 (lambda = 0) gives
// the Chebyshev polynomials T_k; it is accepted because codes on the circle
// and the inner kernel of three-point matrices in dimension 3 need it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sphbounds/error.hpp"
#include "sphbounds/summation.hpp"

namespace sphbounds {

/// Inputs this far outside [-1,1] are rejected; anything closer is clamped.
inline constexpr double kDomainSlack = 1e-12;

namespace detail {

struct Recurrence {
  double a;
  double b;
};

inline Recurrence recurrence(int n, int k) {
  if (k == 0) return {1.0, 0.0};
  const double two_lambda = n - 2;
  const double denom = k + two_lambda;
  return {(2.0 * k + two_lambda) / denom, k / denom};
}

inline void require_dimension(int n) {
  if (n < 2) {
    throw ParameterError("Gegenbauer dimension must be >= 2, got " + std::to_string(n));
  }
}

inline double clamp_to_domain(double t) {
  if (!(t >= -1.0 - kDomainSlack && t <= 1.0 + kDomainSlack)) {
    throw DomainError("argument " + std::to_string(t) + " outside [-1,1]");
  }
  return t < -1.0 ? -1.0 : (t > 1.0 ? 1.0 : t);
}

}  // namespace detail

/// G_k^{(n)}(t) by forward recurrence.
inline double gegenbauer_eval(int n, int k, double t) {
  detail::require_dimension(n);
  if (k < 0) throw ParameterError("Gegenbauer degree must be >= 0");
  t = detail::clamp_to_domain(t);
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (int j = 1; j < k; ++j) {
    const auto [a, b] = detail::recurrence(n, j);
    const double next = a * t * cur - b * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Sup norm of G_k' on [-1,1]; attained at t = 1 for lambda >= 0.
inline double gegenbauer_derivative_bound(int n, int k) {
  detail::require_dimension(n);
  return static_cast<double>(k) * (k + n - 2) / (n - 1);
}

/// Sup norm of G_k'' on [-1,1]. G_k' is proportional to the lambda+1 family,
/// so its own derivative is again maximal at 1.
inline double gegenbauer_second_derivative_bound(int n, int k) {
  if (k < 2) return 0.0;
  return gegenbauer_derivative_bound(n, k) * (k - 1) * (k + n - 1) / (n + 1);
}

struct ValueAndSlope {
  double value;
  double slope;
};

/// f(t) = sum_k c_k G_k^{(n)}(t), coefficients in ascending degree.
class GegenbauerExpansion {
 public:
  GegenbauerExpansion(int n, std::vector<double> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
    detail::require_dimension(n_);
    if (coeffs_.empty()) throw ParameterError("expansion needs at least one coefficient");
    for (double c : coeffs_) {
      if (!std::isfinite(c)) throw ParameterError("expansion coefficient is not finite");
    }
  }

  /// c * G_k^{(n)}.
  static GegenbauerExpansion basis(int n, int k, double c = 1.0) {
    if (k < 0) throw ParameterError("Gegenbauer degree must be >= 0");
    std::vector<double> coeffs(static_cast<std::size_t>(k) + 1, 0.0);
    coeffs.back() = c;
    return {n, std::move(coeffs)};
  }

  static GegenbauerExpansion zero(int n) { return {n, {0.0}}; }

  [[nodiscard]] int dimension() const { return n_; }
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] std::span<const double> coeffs() const { return coeffs_; }
  [[nodiscard]] double coeff(int k) const {
    return k >= 0 && k <= degree() ? coeffs_[static_cast<std::size_t>(k)] : 0.0;
  }

  /// f(1) = sum of coefficients.
  [[nodiscard]] double value_at_one() const {
    CompensatedSum s;
    for (double c : coeffs_) s += c;
    return s.value();
  }

  /// Clenshaw backward recurrence.
  [[nodiscard]] double operator()(double t) const {
    t = detail::clamp_to_domain(t);
    if (t == 1.0) return value_at_one();
    const int d = degree();
    double b1 = 0.0;  // b_{k+1}
    double b2 = 0.0;  // b_{k+2}
    for (int k = d; k >= 1; --k) {
      const double alpha = detail::recurrence(n_, k).a * t;
      const double beta_next = -detail::recurrence(n_, k + 1).b;
      const double bk = coeffs_[static_cast<std::size_t>(k)] + alpha * b1 + beta_next * b2;
      b2 = b1;
      b1 = bk;
    }
    // S = c_0 G_0 + b_1 G_1 + beta_1 G_0 b_2
    const double beta1 = -detail::recurrence(n_, 1).b;
    return coeffs_[0] + b1 * t + beta1 * b2;
  }

  /// Value and first derivative by forward recurrence.
  [[nodiscard]] ValueAndSlope eval_with_slope(double t) const {
    t = detail::clamp_to_domain(t);
    CompensatedSum value;
    CompensatedSum slope;
    value += coeffs_[0];
    double g_prev = 1.0, g_cur = t;
    double d_prev = 0.0, d_cur = 1.0;
    for (int k = 1; k <= degree(); ++k) {
      value += coeffs_[static_cast<std::size_t>(k)] * g_cur;
      slope += coeffs_[static_cast<std::size_t>(k)] * d_cur;
      const auto [a, b] = detail::recurrence(n_, k);
      const double g_next = a * t * g_cur - b * g_prev;
      const double d_next = a * (g_cur + t * d_cur) - b * d_prev;
      g_prev = g_cur;
      g_cur = g_next;
      d_prev = d_cur;
      d_cur = d_next;
    }
    return {value.value(), slope.value()};
  }

  /// Upper bound on sup |f'| over [-1,1].
  [[nodiscard]] double derivative_bound() const {
    double bound = 0.0;
    for (int k = 1; k <= degree(); ++k) {
      bound += std::abs(coeff(k)) * gegenbauer_derivative_bound(n_, k);
    }
    return bound;
  }

  /// Upper bound on sup |f''| over [-1,1].
  [[nodiscard]] double second_derivative_bound() const {
    double bound = 0.0;
    for (int k = 2; k <= degree(); ++k) {
      bound += std::abs(coeff(k)) * gegenbauer_second_derivative_bound(n_, k);
    }
    return bound;
  }

  /// True when c_k >= 0 for every k >= 1, i.e. f - c_0 is positive definite.
  [[nodiscard]] bool nonnegative_above_constant() const {
    for (int k = 1; k <= degree(); ++k) {
      if (coeff(k) < 0.0) return false;
    }
    return true;
  }

  GegenbauerExpansion& operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    return *this;
  }

  friend GegenbauerExpansion operator*(double s, GegenbauerExpansion e) { return e *= s; }

  friend GegenbauerExpansion operator+(const GegenbauerExpansion& x, const GegenbauerExpansion& y) {
    if (x.n_ != y.n_) throw ParameterError("adding expansions of different dimension");
    std::vector<double> out(std::max(x.coeffs_.size(), y.coeffs_.size()), 0.0);
    for (int k = 0; k < static_cast<int>(out.size()); ++k) out[k] = x.coeff(k) + y.coeff(k);
    return {x.n_, std::move(out)};
  }

  friend bool operator==(const GegenbauerExpansion&, const GegenbauerExpansion&) = default;

 private:
  int n_;
  std::vector<double> coeffs_;
};

/// Free-function spelling of GegenbauerExpansion::operator().
inline double expansion_eval(const GegenbauerExpansion& e, double t) { return e(t); }

}  // namespace sphbounds
