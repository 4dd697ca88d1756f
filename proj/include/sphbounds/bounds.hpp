#pragma once

// Two- and three-point bounds for (N, n, T) spherical codes.
//
// Closed-form bounds (delsarte_bound, yudin_energy_lower, lp_rg_lower,
// cor31_bound, thm31_bound) return numbers. The *_check functions evaluate
// both sides of an inequality on a concrete code and report the slack; a
// negative slack for a certificate whose side conditions hold means a bug.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "sphbounds/codes.hpp"
#include "sphbounds/error.hpp"
#include "sphbounds/gegenbauer.hpp"
#include "sphbounds/threepoint.hpp"

namespace sphbounds {

/// lhs >= rhs, evaluated.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = true;
};

inline InequalityReport make_inequality(std::string name, double lhs, double rhs, double tol = 1e-9) {
  const double slack = lhs - rhs;
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return {std::move(name), lhs, rhs, slack, slack >= -tol * scale};
}

/// N <= f(1)/f_0 when f <= 0 on T and f - f_0 is positive definite.
inline double delsarte_bound(const GegenbauerExpansion& f) {
  if (!(f.coeff(0) > 0.0)) throw PreconditionError("Delsarte bound needs c_0 > 0");
  return f.value_at_one() / f.coeff(0);
}

namespace detail {
inline void require_positive_definite_tail(const GegenbauerExpansion& f, const char* what) {
  if (!f.nonnegative_above_constant()) {
    throw PreconditionError(std::string(what) + " needs c_k >= 0 for all k >= 1");
  }
}
inline void require_positive_size(long long N) {
  if (N < 1) throw ParameterError("code size N must be >= 1");
}
}  // namespace detail

/// Lower bound c_0 N^2 - N f(1) on E_g(C) for any g >= f on T.
inline double yudin_energy_lower(const GegenbauerExpansion& f, long long N) {
  detail::require_positive_definite_tail(f, "Yudin bound");
  detail::require_positive_size(N);
  const double n = static_cast<double>(N);
  return f.coeff(0) * n * n - n * f.value_at_one();
}

/// Lower bound c_0 N - f(1) on R_f(C).
inline double lp_rg_lower(const GegenbauerExpansion& f, long long N) {
  detail::require_positive_definite_tail(f, "LP distance-distribution bound");
  detail::require_positive_size(N);
  return f.coeff(0) * static_cast<double>(N) - f.value_at_one();
}

struct TwoPointReport {
  InequalityReport inequality;  ///< N f(1) + E_g(C) >= f0 N^2
  double pair_sum_f;            ///< S_f(C)
  double energy_g;              ///< E_g(C)
};

/// Evaluates N f(1) + E_g(C) >= f0 N^2 on a code.
inline TwoPointReport two_point_check(const SphericalCode& code, const GegenbauerExpansion& f,
                                      const GegenbauerExpansion& g, double f0) {
  const double N = static_cast<double>(code.size());
  const double eg = energy(code, g);
  return {make_inequality("thm21", N * f.value_at_one() + eg, f0 * N * N), pair_sum(code, f), eg};
}

struct ThreePointReport {
  InequalityReport inequality;  ///< N F(1,1,1) + 3 E_f + (3N-6) E_g >= F0 N^3
  TripleSum triple_sum;         ///< S_F(C) with its S_1 + S_2 + S_3 split
  double energy_f;
  double energy_g;
  std::optional<InequalityReport> reduced;  ///< q/B form when requested
};

/// Parameters of the reduced form with f = B + 2g - q.
struct ReducedParams {
  GegenbauerExpansion q;
  double B;
};

/// F(1,1,1) + 3 q(1) + 3 (N-1) B + 3 E_g(C) >= F0 N^2, assuming S_q(C) >= 0.
inline InequalityReport reduced_three_point_check(const SphericalCode& code, const TripleCertificate& F,
                                                  const GegenbauerExpansion& q, double B,
                                                  const GegenbauerExpansion& g) {
  const double N = static_cast<double>(code.size());
  const double lhs = F.at_identity() + 3.0 * q.value_at_one() + 3.0 * (N - 1.0) * B + 3.0 * energy(code, g);
  return make_inequality("cor22", lhs, F.F0() * N * N);
}

/// N F(1,1,1) + 3 N q(1) + 3 E_p(C) + (3N-6) E_g(C) >= F0 N^3 with f = p - q, S_q(C) >= 0.
inline InequalityReport split_three_point_check(const SphericalCode& code, const TripleCertificate& F,
                                                const GegenbauerExpansion& p, const GegenbauerExpansion& q,
                                                const GegenbauerExpansion& g) {
  const double N = static_cast<double>(code.size());
  const double lhs = N * F.at_identity() + 3.0 * N * q.value_at_one() + 3.0 * energy(code, p) +
                     (3.0 * N - 6.0) * energy(code, g);
  return make_inequality("cor21", lhs, F.F0() * N * N * N);
}

/// Evaluates N F(1,1,1) + 3 E_f(C) + (3N-6) E_g(C) >= F0 N^3 on a code, and the
/// reduced q/B form when `reduced` is given.
inline ThreePointReport three_point_check(const SphericalCode& code, const TripleCertificate& F,
                                          const GegenbauerExpansion& f, const GegenbauerExpansion& g,
                                          const std::optional<ReducedParams>& reduced = std::nullopt) {
  const double N = static_cast<double>(code.size());
  const double ef = energy(code, f);
  const double eg = energy(code, g);
  ThreePointReport r{make_inequality("thm22", N * F.at_identity() + 3.0 * ef + (3.0 * N - 6.0) * eg,
                                     F.F0() * N * N * N),
                     triple_sum(code, F), ef, eg, std::nullopt};
  if (reduced) r.reduced = reduced_three_point_check(code, F, reduced->q, reduced->B, g);
  return r;
}

/// Distance-distribution certificate: either the published scalar M, or the
/// full data (h, h0, F, F0) from which M = F(1,1,1) + 3 h(1) follows.
struct ScalarM {
  double M;
};

struct FullDD {
  GegenbauerExpansion h;
  double h0;
  TripleCertificate F;
  double F0;
};

class DDCertificate {
 public:
  DDCertificate(GegenbauerExpansion g, Interval T, std::variant<ScalarM, FullDD> data)
      : g_(std::move(g)), T_(T), data_(std::move(data)) {
    if (T_.empty() || T_.lo < -1.0 || !(T_.hi < 1.0)) {
      throw ValidationError("domain T must satisfy -1 <= a <= b < 1");
    }
    if (const auto* full = std::get_if<FullDD>(&data_); full && full->h.dimension() != g_.dimension()) {
      throw ParameterError("h and g must share a dimension");
    }
  }

  [[nodiscard]] const GegenbauerExpansion& g() const { return g_; }
  [[nodiscard]] const Interval& T() const { return T_; }
  [[nodiscard]] bool is_scalar() const { return std::holds_alternative<ScalarM>(data_); }
  [[nodiscard]] const FullDD& full() const {
    if (is_scalar()) throw CapabilityError("certificate only carries the scalar M");
    return std::get<FullDD>(data_);
  }

  /// M = F(1,1,1) + 3 h(1), or the stored constant.
  [[nodiscard]] double M() const {
    if (const auto* s = std::get_if<ScalarM>(&data_)) return s->M;
    const auto& f = std::get<FullDD>(data_);
    return f.F.at_identity() + 3.0 * f.h.value_at_one();
  }

  /// Where the certificate claims g <= 0 (used by the kissing pipeline); optional.
  std::optional<Interval> nonpositive_on;
  /// Provenance note for an externally computed M.
  std::string m_source;

 private:
  GegenbauerExpansion g_;
  Interval T_;
  std::variant<ScalarM, FullDD> data_;
};

/// B(N) = (N - M) / (3N).
inline double cor31_bound(double M, long long N) {
  detail::require_positive_size(N);
  const double n = static_cast<double>(N);
  return (n - M) / (3.0 * n);
}

inline double cor31_bound(const DDCertificate& cert, long long N) { return cor31_bound(cert.M(), N); }

/// F0 N / 3 + h0 / 3 - F(1,1,1) / (3N) + E_h / N^2.
inline double thm31_bound(double F0, double h0, double F111, double E_h, long long N) {
  detail::require_positive_size(N);
  const double n = static_cast<double>(N);
  return F0 * n / 3.0 + h0 / 3.0 - F111 / (3.0 * n) + E_h / (n * n);
}

/// Lower bound on R_g(C) for a full-mode certificate, E_h = E_h(C) of the code under study.
inline double thm31_bound(const DDCertificate& cert, long long N, double E_h) {
  const auto& f = cert.full();
  return thm31_bound(f.F0, f.h0, f.F.at_identity(), E_h, N);
}

}  // namespace sphbounds
