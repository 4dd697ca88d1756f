#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sphbounds/io.hpp"
#include "sphbounds/verify.hpp"

using namespace sphbounds;

namespace {

DomainSpec coarse(double h1 = 1e-3, double h3 = 0.05, CheckMode mode = CheckMode::sampled) {
  DomainSpec s;
  s.grid_step = h1;
  s.grid_step_3d = h3;
  s.mode = mode;
  return s;
}

GegenbauerExpansion load_g(const char* name) {
  return io::dd_from_json(io::read_file(std::string(SPHBOUNDS_DATA_DIR) + "/" + name)).g();
}

const TripleCertificate kLinear = TripleCertificate::explicit_form({{1, 0, 0, 3.0}});  // t + u + v

}  // namespace

TEST(D3, Membership) {
  const Interval T{-1.0, 0.5};
  EXPECT_TRUE(in_d3(0, 0, 0, T));
  EXPECT_DOUBLE_EQ(d3_determinant(0, 0, 0), 1.0);
  EXPECT_TRUE(in_d3(-0.5, -0.5, -0.5, T));
  EXPECT_NEAR(d3_determinant(-0.5, -0.5, -0.5), 0.0, 1e-15);
  EXPECT_FALSE(in_d3(-1, -1, -0.5, T));
  EXPECT_DOUBLE_EQ(d3_determinant(-1, -1, -0.5), -2.25);
  EXPECT_FALSE(in_d3(0.6, 0, 0, T));
}

TEST(D3, PermutationInvariant) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-1.0, 0.5);
  const Interval T{-1.0, 0.5};
  for (int i = 0; i < 2000; ++i) {
    const std::array<double, 3> x{U(rng), U(rng), U(rng)};
    const bool base = in_d3(x[0], x[1], x[2], T);
    for (const auto& p : Poly3::permutations()) EXPECT_EQ(in_d3(x[p[0]], x[p[1]], x[p[2]], T), base);
  }
}

TEST(D3, CoplanarTriplesOnBoundary) {
  // three unit vectors in a common 2-plane have a singular Gram matrix
  std::mt19937_64 rng(2);
  std::normal_distribution<double> Z;
  std::uniform_real_distribution<double> A(0.0, 2.0 * std::acos(-1.0));
  const Interval T{-1.0, 1.0};
  for (int i = 0; i < 1000; ++i) {
    Eigen::Vector3d e1(Z(rng), Z(rng), Z(rng));
    e1.normalize();
    Eigen::Vector3d e2(Z(rng), Z(rng), Z(rng));
    e2 = (e2 - e2.dot(e1) * e1).normalized();
    auto pt = [&](double a) { return Eigen::Vector3d(std::cos(a) * e1 + std::sin(a) * e2); };
    const auto x = pt(A(rng)), y = pt(A(rng)), z = pt(A(rng));
    EXPECT_TRUE(in_d3(y.dot(z), x.dot(y), x.dot(z), T));
  }
}

TEST(CheckSign, Examples) {
  const auto r = check_sign(GegenbauerExpansion::basis(4, 1), {0.0, 0.5}, coarse());
  EXPECT_DOUBLE_EQ(r.worst_violation, 0.5);
  EXPECT_DOUBLE_EQ(r.location[0], 0.5);
  EXPECT_FALSE(r.certified);
}

TEST(CheckSign, PublishedCertificates) {
  const DomainSpec spec = coarse(1e-5, 1e-3, CheckMode::certified);
  const auto r1 = check_sign(load_g("g1.json"), {-std::sqrt(2.0) / 2.0, 0.5}, spec);
  EXPECT_TRUE(r1.certified);
  EXPECT_LE(r1.worst_violation, 5e-3);
  const auto r2 = check_sign(load_g("g2.json"), {-0.73, 0.5}, spec);
  EXPECT_LE(r2.worst_violation, 5e-3);
}

TEST(CheckSign, CertifiedBoundsFineGrid) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> c(12);
    for (auto& x : c) x = U(rng);
    const GegenbauerExpansion g(4, c);
    const Interval s{-1.0, 0.5};
    const auto cert = check_sign(g, s, coarse(0.02, 0.05, CheckMode::certified));
    double fine = -1e300;
    for (int i = 0; i <= 150000; ++i) fine = std::max(fine, g(-1.0 + 1.5 * i / 150000.0));
    EXPECT_GE(cert.worst_violation, fine - 1e-12);
    // refinement: halving the step never loses more than the pad
    const auto half = check_sign(g, s, coarse(0.01, 0.05, CheckMode::certified));
    EXPECT_GE(half.sampled_max, cert.sampled_max - cert.lipschitz_pad);
    EXPECT_GE(cert.worst_violation, half.sampled_max - 1e-12);
  }
}

TEST(TripleDiagonalCondition, Examples) {
  const auto z = GegenbauerExpansion::zero(4);
  EXPECT_EQ(check_thm22_cond1(TripleCertificate::constant(0.0), z, coarse()).worst_violation, 0.0);
  const GegenbauerExpansion f(4, {1.0, 2.0});
  EXPECT_NEAR(check_thm22_cond1(kLinear, f, coarse()).worst_violation, 0.0, 1e-15);
  // F = tuv gives F(1,t,t) - 1 = t^2 - 1, largest (0) at t = -1
  const auto tuv = TripleCertificate::explicit_form({{1, 1, 1, 1.0}});
  const auto r = check_thm22_cond1(tuv, GegenbauerExpansion::basis(4, 0), coarse());
  EXPECT_NEAR(r.worst_violation, 0.0, 1e-15);
  EXPECT_NEAR(r.location[0], -1.0, 1e-12);
}

TEST(DistributionDiagonalCondition, Examples) {
  const auto z = GegenbauerExpansion::zero(4);
  const auto zF = TripleCertificate::constant(0.0);
  EXPECT_EQ(check_thm31_cond1(z, 0.0, zF, z, coarse()).worst_violation, 0.0);
  EXPECT_EQ(check_thm31_cond1(z, 0.0, zF, GegenbauerExpansion::basis(4, 0), coarse()).worst_violation, -2.0);
}

TEST(DistributionDiagonalCondition, ConstructedValidCertificate) {
  // h and F random, g chosen so that 2 g >= h + h0 + F(1,t,t) with equality at one point
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const GegenbauerExpansion h(4, {U(rng), U(rng), U(rng)});
    const double h0 = U(rng);
    // F = a + b (t+u+v), so F(1,t,t) = a + b + 2 b t
    const double a = U(rng), b = U(rng);
    const auto F = TripleCertificate::explicit_form({{0, 0, 0, a}, {1, 0, 0, 3.0 * b}});
    // 2g = h + h0 + F(1,t,t) exactly
    const GegenbauerExpansion g(4, {(h.coeff(0) + h0 + a + b) / 2.0, (h.coeff(1) + 2.0 * b) / 2.0, h.coeff(2) / 2.0});
    const auto r = check_thm31_cond1(h, h0, F, g, coarse());
    EXPECT_LE(r.worst_violation, 1e-9);
  }
}

TEST(Cond2, Examples) {
  const auto z = GegenbauerExpansion::zero(4);
  EXPECT_EQ(check_cond2(TripleCertificate::constant(0.0), z, coarse()).worst_violation, 0.0);
  const double c = 0.37;
  const auto r = check_cond2(TripleCertificate::constant(3 * c), GegenbauerExpansion::basis(4, 0, c), coarse());
  EXPECT_NEAR(r.worst_violation, 0.0, 1e-15);
  const auto lin = check_cond2(kLinear, GegenbauerExpansion::basis(4, 1), coarse());
  EXPECT_NEAR(lin.worst_violation, 0.0, 1e-15);
  EXPECT_NEAR(lin.grid_max, 0.0, 1e-15);
}

TEST(Cond2, SymmetryReductionMatchesFullGrid) {
  const auto F = TripleCertificate::explicit_form({{2, 1, 0, 0.8}, {1, 1, 1, -1.1}, {0, 0, 3, 0.4}});
  const GegenbauerExpansion g(4, {0.1, -0.3, 0.2});
  DomainSpec wedge = coarse(1e-3, 0.04);
  wedge.refinement_depth = 0;
  DomainSpec full = wedge;
  full.exploit_symmetry = false;
  const auto a = check_cond2(F, g, wedge);
  const auto b = check_cond2(F, g, full);
  EXPECT_NEAR(a.grid_max, b.grid_max, 1e-12);
  EXPECT_NEAR(a.worst_violation, b.worst_violation, 1e-12);
  EXPECT_GT(b.points_evaluated, a.points_evaluated);
}

TEST(Cond2, CertifiedBoundsFineSampling) {
  const auto F = TripleCertificate::explicit_form({{2, 1, 0, 0.8}, {1, 1, 1, -1.1}, {0, 0, 3, 0.4}});
  const GegenbauerExpansion g(4, {0.1, -0.3, 0.2});
  const auto cert = check_cond2(F, g, coarse(1e-3, 0.05, CheckMode::certified));
  EXPECT_TRUE(cert.certified);
  const auto fine = check_cond2(F, g, coarse(1e-3, 0.01));
  EXPECT_GE(cert.worst_violation, fine.worst_violation - 1e-12);
  // the location found lies in D_3(T)
  ASSERT_EQ(fine.location.size(), 3u);
  EXPECT_TRUE(in_d3(fine.location[0], fine.location[1], fine.location[2], {-1.0, 0.5}));
  // sampled search is deterministic across thread counts
  DomainSpec one = coarse(1e-3, 0.01);
  one.threads = 1;
  DomainSpec many = one;
  many.threads = 7;
  EXPECT_EQ(check_cond2(F, g, one).worst_violation, check_cond2(F, g, many).worst_violation);
}

TEST(Grid, StepValidation) {
  EXPECT_THROW(check_sign(GegenbauerExpansion::basis(4, 1), {0, 1}, coarse(0.0)), ParameterError);
  const auto r = check_sign(GegenbauerExpansion::basis(4, 1), {0.3, 0.3}, coarse());
  EXPECT_DOUBLE_EQ(r.worst_violation, 0.3);
}
