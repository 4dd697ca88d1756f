#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sphbounds/threepoint.hpp"
#include "support/oracles.hpp"

using namespace sphbounds;
using sphbounds::testing::brute_force_triple_sum;
using sphbounds::testing::builtin_codes;

namespace {

Eigen::MatrixXd random_psd(std::mt19937_64& rng, int size) {
  std::normal_distribution<double> Z;
  Eigen::MatrixXd a(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) a(i, j) = Z(rng);
  return a * a.transpose() / size;
}

TripleCertificate random_matrix_cert(std::mt19937_64& rng, int n, int d) {
  std::vector<Eigen::MatrixXd> H;
  for (int k = 0; k <= d; ++k) H.push_back(random_psd(rng, d + 1 - k));
  return TripleCertificate::matrix_form(n, d, std::move(H), 0.0);
}

}  // namespace

TEST(TripleEval, ExplicitForms) {
  EXPECT_EQ(triple_eval(TripleCertificate::constant(1.0), 0.3, -0.2, 0.9), 1.0);
  const auto lin = TripleCertificate::explicit_form({{1, 0, 0, 1.0}, {0, 1, 0, 1.0}, {0, 0, 1, 1.0}});
  EXPECT_NEAR(lin(0.1, 0.2, 0.3), 0.6, 1e-15);
  // a single asymmetric term is averaged over permutations: t -> (t+u+v)/3
  const auto avg = TripleCertificate::explicit_form({{1, 0, 0, 3.0}});
  EXPECT_NEAR(avg(0.1, 0.2, 0.3), 0.6, 1e-15);
}

TEST(BvMatrix, DegreeZeroCornerIsOne) {
  for (double t : {-1.0, -0.3, 0.5})
    for (double u : {-0.5, 0.2, 1.0}) EXPECT_NEAR(bv_matrix(4, 0, 3, t, u, 0.1)(0, 0), 1.0, 1e-15);
}

TEST(BvMatrix, SymmetricAndPermutationInvariant) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = U(rng), u = U(rng), v = U(rng);
    for (int k = 0; k <= 3; ++k) {
      const auto m = bv_matrix(5, k, 4, t, u, v);
      EXPECT_LE((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-14);
      EXPECT_LE((m - bv_matrix(5, k, 4, v, t, u)).cwiseAbs().maxCoeff(), 1e-13);
      EXPECT_LE((m - bv_matrix(5, k, 4, u, t, v)).cwiseAbs().maxCoeff(), 1e-13);
    }
  }
}

TEST(BvMatrix, SingularLimitIsFinite) {
  for (int k = 0; k <= 4; ++k) {
    const auto m = bv_matrix(4, k, 4, 1.0, 1.0, 1.0);
    EXPECT_TRUE(m.allFinite());
    const auto m2 = bv_matrix(4, k, 4, -1.0, 1.0, -1.0);
    EXPECT_TRUE(m2.allFinite());
  }
}

TEST(BvMatrix, KernelMatchesSquareRootForm) {
  // away from |b| = 1 the homogenized kernel equals s^k G_k(w / s)
  const double a = 0.2, b = 0.3, c = -0.4;
  const double s = std::sqrt((1 - b * b) * (1 - c * c));
  for (int k = 0; k <= 6; ++k) {
    EXPECT_NEAR(detail::homogenized_gegenbauer(3, k, a - b * c, s * s), std::pow(s, k) * gegenbauer_eval(3, k, (a - b * c) / s),
                1e-14);
  }
}

TEST(BvMatrix, SymbolicExpansionMatchesNumeric) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int n : {3, 4, 6})
    for (int d = 0; d <= 4; ++d)
      for (int k = 0; k <= d; ++k) {
        const auto poly = bv_matrix_poly(n, k, d);
        const int size = d + 1 - k;
        for (int trial = 0; trial < 5; ++trial) {
          const double t = U(rng), u = U(rng), v = U(rng);
          const auto m = bv_matrix(n, k, d, t, u, v);
          for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) EXPECT_NEAR(poly[i * size + j](t, u, v), m(i, j), 1e-12);
        }
      }
}

TEST(BvMatrix, Errors) {
  EXPECT_THROW(bv_matrix(2, 0, 2, 0, 0, 0), ParameterError);
  EXPECT_THROW(bv_matrix(4, 3, 2, 0, 0, 0), ParameterError);
}

TEST(MatrixCertificate, Validation) {
  EXPECT_THROW(TripleCertificate::matrix_form(4, 2, {Eigen::MatrixXd::Identity(3, 3)}, 0.0), ParameterError);
  EXPECT_THROW(TripleCertificate::matrix_form(4, 1, {Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2)},
                                              0.0),
               ParameterError);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 2, 0, 1;
  EXPECT_THROW(TripleCertificate::matrix_form(4, 1, {asym, Eigen::MatrixXd::Identity(1, 1)}, 0.0), ParameterError);
}

TEST(MatrixCertificate, NumericMatchesExpanded) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const auto F = random_matrix_cert(rng, 4, 4);
  for (int i = 0; i < 50; ++i) {
    const double t = U(rng), u = U(rng), v = U(rng);
    EXPECT_NEAR(F(t, u, v), F.expanded()(t, u, v), 1e-11 * (1 + std::abs(F(t, u, v))));
  }
}

TEST(TripleEval, PermutationSymmetry) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const auto F = random_matrix_cert(rng, 5, 3);
  const auto G = TripleCertificate::explicit_form({{2, 1, 0, 0.7}, {0, 0, 3, -1.2}, {1, 1, 1, 0.4}});
  for (int i = 0; i < 30; ++i) {
    const std::array<double, 3> x{U(rng), U(rng), U(rng)};
    for (const auto* c : {&F, &G}) {
      const double base = (*c)(x[0], x[1], x[2]);
      for (const auto& p : Poly3::permutations()) EXPECT_NEAR((*c)(x[p[0]], x[p[1]], x[p[2]]), base, 1e-10);
    }
  }
}

TEST(TripleSum, SmallCases) {
  const SphericalCode one(4, {{0.0, 1.0, 0.0, 0.0}});
  const auto F = TripleCertificate::explicit_form({{2, 0, 0, 1.0}, {0, 0, 0, 0.5}});
  EXPECT_NEAR(triple_sum(one, F).total, F(1, 1, 1), 1e-15);
  const auto cross = make_cross_polytope(4);
  EXPECT_NEAR(triple_sum(cross, TripleCertificate::constant(1.0)).total, 512.0, 1e-12);
}

TEST(TripleSum, DimensionMismatch) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(triple_sum(make_simplex(3), random_matrix_cert(rng, 4, 2)), ParameterError);
}

TEST(TripleSum, MatchesBruteForceAndSplit) {
  std::mt19937_64 rng(99);
  for (const auto& [name, code] : builtin_codes()) {
    if (code.dimension() < 3) continue;
    const auto F = random_matrix_cert(rng, code.dimension(), 3);
    const auto s = triple_sum(code, F);
    const double brute = brute_force_triple_sum(code, F);
    EXPECT_NEAR(s.total, brute, 1e-12 * std::abs(brute)) << name;
    EXPECT_NEAR(s.s1, static_cast<double>(code.size()) * F(1, 1, 1), 1e-12 * std::abs(s.s1)) << name;
    EXPECT_NEAR(s.s1 + s.s2 + s.s3, s.total, 1e-9 * std::abs(s.total)) << name;
  }
}

TEST(TripleSum, PsdCertificateLowerBound) {
  std::mt19937_64 rng(31);
  for (const auto& [name, code] : builtin_codes()) {
    if (code.dimension() < 3) continue;
    const double N = static_cast<double>(code.size());
    for (int trial = 0; trial < 5; ++trial) {
      auto F = random_matrix_cert(rng, code.dimension(), 1 + trial % 4);
      // largest F0 keeping H0 - F0 E0 PSD, scaled back slightly
      const double F0 = 0.9 / F.matrix().H[0].inverse()(0, 0);
      F = F.with_F0(F0);
      ASSERT_TRUE(certificate_valid(F).valid);
      EXPECT_GE(triple_sum(code, F).total, F0 * N * N * N - 1e-6 * N * N * N) << name;
    }
  }
}

TEST(PsdCheck, Examples) {
  EXPECT_TRUE(psd_check(Eigen::MatrixXd::Identity(3, 3)).psd);

  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 2, 1;
  const auto r = psd_check(m);
  EXPECT_FALSE(r.psd);
  EXPECT_NEAR(r.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(r.eigenvalues[1], 3.0, 1e-14);
  ASSERT_TRUE(r.witness.has_value());
  const Eigen::Map<const Eigen::VectorXd> w(r.witness->data(), 2);
  EXPECT_NEAR(w.dot(m * w), -1.0, 1e-14);

  Eigen::MatrixXd ones(2, 2);
  ones << 1, 1, 1, 1;
  const auto b = psd_check(ones);
  EXPECT_TRUE(b.psd);
  EXPECT_NEAR(b.eigenvalues[0], 0.0, 1e-15);

  Eigen::MatrixXd asym(2, 2);
  asym << 1, 2, 0, 1;
  EXPECT_THROW(psd_check(asym), ParameterError);
}

TEST(CertificateValid, Examples) {
  auto identity_cert = [](double F0, Eigen::MatrixXd H0) {
    return TripleCertificate::matrix_form(4, 2, {std::move(H0), Eigen::MatrixXd::Identity(2, 2),
                                                 Eigen::MatrixXd::Identity(1, 1)},
                                          F0);
  };
  EXPECT_TRUE(certificate_valid(identity_cert(0.0, Eigen::MatrixXd::Identity(3, 3))).valid);
  const auto bad = certificate_valid(identity_cert(2.0, Eigen::MatrixXd::Identity(3, 3)));
  EXPECT_FALSE(bad.valid);
  EXPECT_EQ(bad.entries[0].label, "H0-F0*E0");
  EXPECT_NEAR(bad.entries[0].result.min_eigenvalue, -1.0, 1e-14);
  Eigen::MatrixXd e0 = Eigen::MatrixXd::Zero(3, 3);
  e0(0, 0) = 1.0;
  EXPECT_TRUE(certificate_valid(identity_cert(1.0, e0)).valid);
  EXPECT_THROW(certificate_valid(TripleCertificate::constant(1.0)), CapabilityError);
}

TEST(Poly3, ArithmeticAndRestriction) {
  const Poly3 t = Poly3::variable(0), u = Poly3::variable(1), v = Poly3::variable(2);
  const Poly3 p = t * u + 2.0 * (v * v) - Poly3::constant(1.0);
  EXPECT_NEAR(p(0.5, -0.4, 0.3), 0.5 * -0.4 + 2 * 0.09 - 1, 1e-15);
  EXPECT_NEAR(p.substituted({2, 0, 1})(0.5, -0.4, 0.3), p(0.3, 0.5, -0.4), 1e-15);
  const auto diag = p.restrict_to_one_s_s();  // s + 2 s^2 - 1
  ASSERT_EQ(diag.size(), 3u);
  EXPECT_EQ(diag[0], -1.0);
  EXPECT_EQ(diag[1], 1.0);
  EXPECT_EQ(diag[2], 2.0);
  const auto pb = p.partial_bounds();
  EXPECT_EQ(pb[0], 1.0);
  EXPECT_EQ(pb[2], 4.0);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(p.symmetrized().distance(p.symmetrized().substituted({1, 2, 0})), 0.0);
}
