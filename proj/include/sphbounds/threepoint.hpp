#pragma once

// Symmetric triple functions F(t, u, v) for three-point bounds.
//
// A matrix-form certificate is F = sum_k <H_k, S_k^n(t,u,v)> where S_k^n is
// the symmetrized Bachoc-Vallentin matrix. Before symmetrization,
//
//   Y_k^n(a; b, c)_{ij} = b^i c^j ((1-b^2)(1-c^2))^{k/2} G_k^{(n-1)}((a - bc) / sqrt((1-b^2)(1-c^2)))
//
// for 0 <= i, j <= d - k, with b = x.y, c = x.z, a = y.z. Since G_k has the
// parity of k, s^k G_k(w/s) is a polynomial in w and s^2; it satisfies
//
//   Q_0 = 1,  Q_1 = w,  Q_{j+1} = a_j w Q_j - b_j s^2 Q_{j-1}
//
// with the normalized Gegenbauer recurrence coefficients, which stays finite
// when |b| = 1 or |c| = 1. S_k^n averages Y_k^n over the six assignments of
// (t, u, v) to (a, b, c).

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sphbounds/codes.hpp"
#include "sphbounds/error.hpp"
#include "sphbounds/gegenbauer.hpp"
#include "sphbounds/poly3.hpp"
#include "sphbounds/summation.hpp"

namespace sphbounds {

namespace detail {

// s^k G_k^{(m)}(w/s) with s^2 = s2, evaluated without square roots.
inline double homogenized_gegenbauer(int m, int k, double w, double s2) {
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = w;
  for (int j = 1; j < k; ++j) {
    const auto [a, b] = recurrence(m, j);
    const double next = a * w * cur - b * s2 * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline Poly3 homogenized_gegenbauer(int m, int k, const Poly3& w, const Poly3& s2) {
  if (k == 0) return Poly3::constant(1.0);
  Poly3 prev = Poly3::constant(1.0);
  Poly3 cur = w;
  for (int j = 1; j < k; ++j) {
    const auto [a, b] = recurrence(m, j);
    Poly3 next = a * (w * cur) - b * (s2 * prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

inline void require_bv_parameters(int n, int k, int d) {
  if (n < 3) throw ParameterError("three-point matrices need n >= 3");
  if (k < 0 || k > d) throw ParameterError("three-point matrix index must satisfy 0 <= k <= d");
}

}  // namespace detail

/// S_k^n(t, u, v), a symmetric (d+1-k) x (d+1-k) matrix.
inline Eigen::MatrixXd bv_matrix(int n, int k, int d, double t, double u, double v) {
  detail::require_bv_parameters(n, k, d);
  const int size = d + 1 - k;
  const std::array<double, 3> x{t, u, v};
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(size, size);
  std::vector<double> pb(size), pc(size);
  for (const auto& order : Poly3::permutations()) {
    const double a = x[order[0]], b = x[order[1]], c = x[order[2]];
    const double kernel = detail::homogenized_gegenbauer(n - 1, k, a - b * c, (1.0 - b * b) * (1.0 - c * c));
    pb[0] = pc[0] = 1.0;
    for (int i = 1; i < size; ++i) {
      pb[i] = pb[i - 1] * b;
      pc[i] = pc[i - 1] * c;
    }
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) sum(i, j) += pb[i] * pc[j] * kernel;
  }
  return sum / 6.0;
}

/// Entries of S_k^n as polynomials in (t, u, v), row-major.
inline std::vector<Poly3> bv_matrix_poly(int n, int k, int d) {
  detail::require_bv_parameters(n, k, d);
  const int size = d + 1 - k;
  std::vector<Poly3> entries(static_cast<std::size_t>(size) * size);
  const Poly3 one = Poly3::constant(1.0);
  for (const auto& order : Poly3::permutations()) {
    const Poly3 a = Poly3::variable(order[0]);
    const Poly3 b = Poly3::variable(order[1]);
    const Poly3 c = Poly3::variable(order[2]);
    const Poly3 kernel = detail::homogenized_gegenbauer(n - 1, k, a - b * c, (one - b * b) * (one - c * c));
    std::vector<Poly3> pb{one}, pc{one};
    for (int i = 1; i < size; ++i) {
      pb.push_back(pb.back() * b);
      pc.push_back(pc.back() * c);
    }
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) entries[i * size + j] += pb[i] * pc[j] * kernel;
  }
  for (auto& e : entries) e *= 1.0 / 6.0;
  return entries;
}

struct MonomialTerm {
  int i;
  int j;
  int k;
  double a;
};

struct MatrixForm {
  int n;
  int d;
  std::vector<Eigen::MatrixXd> H;  ///< H[k] is (d+1-k) x (d+1-k)
};

/// A symmetric function F on [-1,1]^3 together with its threshold F_0.
class TripleCertificate {
 public:
  /// F = average over permutations of sum a t^i u^j v^k.
  static TripleCertificate explicit_form(const std::vector<MonomialTerm>& terms, double F0 = 0.0) {
    Poly3 p;
    for (const auto& term : terms) {
      if (term.i < 0 || term.j < 0 || term.k < 0) throw ParameterError("negative monomial exponent");
      p.add_term({term.i, term.j, term.k}, term.a);
    }
    return TripleCertificate(p.symmetrized(), F0);
  }

  static TripleCertificate from_polynomial(const Poly3& p, double F0 = 0.0) {
    return TripleCertificate(p.symmetrized(), F0);
  }

  static TripleCertificate constant(double c, double F0 = 0.0) {
    return TripleCertificate(Poly3::constant(c), F0);
  }

  static TripleCertificate matrix_form(int n, int d, std::vector<Eigen::MatrixXd> H, double F0) {
    if (n < 3) throw ParameterError("matrix certificates need n >= 3");
    if (d < 0) throw ParameterError("matrix certificate degree must be >= 0");
    if (static_cast<int>(H.size()) != d + 1) {
      throw ParameterError("matrix certificate needs d+1 = " + std::to_string(d + 1) + " matrices, got " +
                           std::to_string(H.size()));
    }
    for (int k = 0; k <= d; ++k) {
      const auto& m = H[k];
      if (m.rows() != d + 1 - k || m.cols() != d + 1 - k) {
        throw ParameterError("H[" + std::to_string(k) + "] must be " + std::to_string(d + 1 - k) + "x" +
                             std::to_string(d + 1 - k));
      }
      if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        throw ParameterError("H[" + std::to_string(k) + "] is not symmetric");
      }
    }
    Poly3 expanded;
    for (int k = 0; k <= d; ++k) {
      const int size = d + 1 - k;
      const auto entries = bv_matrix_poly(n, k, d);
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) expanded += H[k](i, j) * entries[i * size + j];
    }
    TripleCertificate cert(std::move(expanded), F0);
    cert.matrix_ = MatrixForm{n, d, std::move(H)};
    return cert;
  }

  [[nodiscard]] bool is_matrix_form() const { return matrix_.has_value(); }
  [[nodiscard]] const MatrixForm& matrix() const {
    if (!matrix_) throw CapabilityError("certificate is in explicit form");
    return *matrix_;
  }
  /// Dimension is only fixed for matrix-form certificates.
  [[nodiscard]] std::optional<int> dimension() const {
    return matrix_ ? std::optional<int>(matrix_->n) : std::nullopt;
  }

  [[nodiscard]] double F0() const { return F0_; }

  [[nodiscard]] TripleCertificate with_F0(double F0) const {
    TripleCertificate copy = *this;
    copy.F0_ = F0;
    return copy;
  }

  /// The certificate as a monomial polynomial. For matrix form this is the
  /// symbolic expansion, independent of the numeric evaluation path.
  [[nodiscard]] const Poly3& expanded() const { return poly_; }

  /// F(t, u, v). Matrix form sums <H_k, S_k^n(t,u,v)> numerically.
  [[nodiscard]] double operator()(double t, double u, double v) const {
    if (!matrix_) return poly_(t, u, v);
    CompensatedSum s;
    for (int k = 0; k <= matrix_->d; ++k) {
      s += matrix_->H[k].cwiseProduct(bv_matrix(matrix_->n, k, matrix_->d, t, u, v)).sum();
    }
    return s.value();
  }

  [[nodiscard]] double at_identity() const { return (*this)(1.0, 1.0, 1.0); }

 private:
  TripleCertificate(Poly3 poly, double F0) : poly_(std::move(poly)), F0_(F0) {}

  Poly3 poly_;
  double F0_ = 0.0;
  std::optional<MatrixForm> matrix_;
};

inline double triple_eval(const TripleCertificate& F, double t, double u, double v) { return F(t, u, v); }

/// S_F(C) with the split S_1 (x=y=z), S_2 (exactly two equal), S_3 (distinct).
struct TripleSum {
  double total;
  double s1;
  double s2;
  double s3;
};

/// Uses the symmetry of F: S_2 = 3 sum_{x != y} F(1, x.y, x.y) and S_3 is six
/// times the sum over i < j < k.
inline TripleSum triple_sum(const SphericalCode& code, const TripleCertificate& F) {
  if (auto n = F.dimension(); n && *n != code.dimension()) {
    throw ParameterError("certificate dimension " + std::to_string(*n) + " does not match code dimension " +
                         std::to_string(code.dimension()));
  }
  const std::size_t N = code.size();
  const double s1 = static_cast<double>(N) * F.at_identity();
  CompensatedSum pairs;
  CompensatedSum triples;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      const double tij = code.inner(i, j);
      pairs += F(1.0, tij, tij);
      for (std::size_t k = j + 1; k < N; ++k) triples += F(tij, code.inner(i, k), code.inner(j, k));
    }
  }
  const double s2 = 6.0 * pairs.value();
  const double s3 = 6.0 * triples.value();
  CompensatedSum total;
  total += s1;
  total += s2;
  total += s3;
  return {total.value(), s1, s2, s3};
}

inline constexpr double kDefaultPsdTolerance = 1e-9;

struct PsdResult {
  bool psd;
  double min_eigenvalue;
  std::vector<double> eigenvalues;  ///< ascending
  /// Set when psd is false: w with w^T m w = min_eigenvalue < -tol, |w| = 1.
  std::optional<std::vector<double>> witness;
};

/// Eigenvalue test for positive semidefiniteness.
inline PsdResult psd_check(const Eigen::MatrixXd& m, double tol = kDefaultPsdTolerance) {
  if (m.rows() != m.cols()) throw ParameterError("psd_check needs a square matrix");
  if (m.size() == 0) return {true, 0.0, {}, std::nullopt};
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw ParameterError("psd_check needs a symmetric matrix");
  }
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  PsdResult r;
  r.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
  r.min_eigenvalue = r.eigenvalues.front();
  r.psd = r.min_eigenvalue >= -tol;
  if (!r.psd) {
    const Eigen::VectorXd w = eig.eigenvectors().col(0);
    r.witness = std::vector<double>(w.data(), w.data() + w.size());
  }
  return r;
}

struct PsdEntry {
  std::string label;  ///< "H1", ..., "H0-F0*E0"
  PsdResult result;
};

struct CertificateReport {
  bool valid;
  std::vector<PsdEntry> entries;
};

/// Checks H_k >= 0 for k > 0 and H_0 - F_0 E_0 >= 0, E_0 the top-left unit matrix.
inline CertificateReport certificate_valid(const TripleCertificate& F, double tol = kDefaultPsdTolerance) {
  if (!F.is_matrix_form()) {
    throw CapabilityError("explicit-form certificates have no PSD structure to check; use triple_sum");
  }
  const auto& mf = F.matrix();
  CertificateReport report{true, {}};
  Eigen::MatrixXd shifted = mf.H[0];
  shifted(0, 0) -= F.F0();
  report.entries.push_back({"H0-F0*E0", psd_check(shifted, tol)});
  for (int k = 1; k <= mf.d; ++k) report.entries.push_back({"H" + std::to_string(k), psd_check(mf.H[k], tol)});
  for (const auto& e : report.entries) report.valid = report.valid && e.result.psd;
  return report;
}

}  // namespace sphbounds
