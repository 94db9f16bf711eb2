#include <gtest/gtest.h>

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "attopair/cavity.hpp"
#include "attopair/quadrature.hpp"
#include "random_cases.hpp"

using namespace attopair;
using attopair::testing::Cases;

namespace {

constexpr double kPi = std::numbers::pi;

// Oracle for the direction from the first focus to the wall point, written
// from the spheroidal parametrization directly.
Eigen::Vector3d k_oracle(double a, double b, double t, double p) {
  const double l = std::sqrt(a * a - b * b);
  Eigen::Vector3d v(b * std::sin(t) * std::cos(p), b * std::sin(t) * std::sin(p), l + a * std::cos(t));
  return v.normalized();
}

}  // namespace

TEST(Spheroid, RejectsBadAxes) {
  EXPECT_THROW(Spheroid::from_ratio(0.5), std::invalid_argument);
  EXPECT_THROW(Spheroid(Length::from_au(1.0), Length::from_au(0.0)), std::invalid_argument);
  EXPECT_NO_THROW(Spheroid::from_ratio(1.0));
}

TEST(Spheroid, FocalDistance) {
  const Spheroid s = Spheroid::from_ratio(2.0);
  EXPECT_NEAR(s.l_au(), std::sqrt(3.0), 1e-15);
  EXPECT_EQ(Spheroid::from_ratio(1.0).l_au(), 0.0);
}

TEST(RayPair, SphereReflectsBackwards) {
  const Spheroid s = Spheroid::from_ratio(1.0);
  Cases rng(11);
  for (int i = 0; i < 200; ++i) {
    const double t = rng.uniform(0.0, kPi), p = rng.uniform(0.0, 2 * kPi);
    const RayPair r = emission_ray(s, t, p);
    EXPECT_LT((r.k_hat_prime + r.k_hat).norm(), 1e-12);
    EXPECT_NEAR(r.l_plus, 1.0, 1e-12);
    EXPECT_NEAR(r.l_minus, 1.0, 1e-12);
    // eps2' = k' x eps1' = -k x eps1 on the sphere
    EXPECT_LT((r.eps2_prime + r.eps2).norm(), 1e-12);
  }
}

TEST(RayPair, EquatorialPathLengths) {
  const Spheroid s(Length::from_au(2.0), Length::from_au(1.0));
  const RayPair r = emission_ray(s, kPi / 2, 0.3);
  EXPECT_NEAR(r.l_plus, 2.0, 1e-14);
  EXPECT_NEAR(r.l_minus, 2.0, 1e-14);
  EXPECT_NEAR(r.l_plus + r.l_minus, 2.0 * s.a_au(), 1e-14);
}

TEST(RayPair, MatchesParametrization) {
  Cases rng(12);
  for (int i = 0; i < 500; ++i) {
    const double ratio = rng.log_uniform(1.0, 150.0);
    const Spheroid s = Spheroid::from_ratio(ratio);
    const double t = rng.uniform(0.0, kPi), p = rng.uniform(0.0, 2 * kPi);
    const RayPair r = emission_ray(s, t, p);
    EXPECT_LT((r.k_hat - k_oracle(s.a_au(), s.b_au(), t, p)).norm(), 1e-12);
    // The reflected ray reaches the second focus.
    const Eigen::Vector3d f2(0, 0, s.l_au());
    EXPECT_LT((r.point + r.l_minus * r.k_hat_prime - f2).norm(), 1e-9 * ratio);
    // Law of reflection about the wall normal.
    EXPECT_LT((reflection_matrix(r) * r.k_hat - r.k_hat_prime).norm(), 1e-10);
  }
}

TEST(RayPair, FramesAreOrthonormal) {
  Cases rng(13);
  for (int i = 0; i < 500; ++i) {
    const Spheroid s = Spheroid::from_ratio(rng.log_uniform(1.0, 150.0));
    const RayPair r = emission_ray(s, rng.uniform(0.0, kPi), rng.uniform(0.0, 2 * kPi));
    EXPECT_NEAR(r.eps1.dot(r.k_hat), 0.0, 1e-12);
    EXPECT_NEAR(r.eps2.dot(r.k_hat), 0.0, 1e-12);
    EXPECT_NEAR(r.eps1.dot(r.eps2), 0.0, 1e-12);
    EXPECT_NEAR(r.eps1_prime.dot(r.k_hat_prime), 0.0, 1e-12);
    EXPECT_NEAR(r.eps2_prime.dot(r.k_hat_prime), 0.0, 1e-12);
    EXPECT_NEAR(r.eps2.norm(), 1.0, 1e-12);
    EXPECT_NEAR(r.eps2_prime.norm(), 1.0, 1e-12);
    EXPECT_LT((r.k_hat_prime.cross(r.eps1_prime) - r.eps2_prime).norm(), 1e-12);
  }
}

TEST(RayPair, AlternativeDirectionIsZMirror) {
  Cases rng(14);
  for (int i = 0; i < 300; ++i) {
    const Spheroid s = Spheroid::from_ratio(rng.log_uniform(1.0, 50.0));
    const double t = rng.uniform(0.0, kPi), p = rng.uniform(0.0, 2 * kPi);
    const RayPair r = emission_ray(s, t, p);
    const Eigen::Vector3d alt = k_hat_prime_alternative(s, t, p);
    EXPECT_NEAR(alt.x(), r.k_hat_prime.x(), 1e-12);
    EXPECT_NEAR(alt.y(), r.k_hat_prime.y(), 1e-12);
    EXPECT_NEAR(alt.z(), -r.k_hat_prime.z(), 1e-12);
  }
}

TEST(RayPair, RejectsThetaOutsideDomain) {
  const Spheroid s = Spheroid::from_ratio(2.0);
  EXPECT_THROW(emission_ray(s, -0.1, 0.0), std::invalid_argument);
  EXPECT_THROW(emission_ray(s, 3.2, 0.0), std::invalid_argument);
}

TEST(Jacobian, SphereIsSinTheta) {
  const Spheroid s = Spheroid::from_ratio(1.0);
  for (double t : {0.0, 0.3, 1.0, 2.0, kPi})
    EXPECT_NEAR(angular_jacobian(s, t), std::sin(t), 1e-14);
}

TEST(Jacobian, CoversFullSolidAngle) {
  for (double ratio : {1.0, 1.5, 2.0, 5.0, 20.0, 148.0}) {
    const Spheroid s = Spheroid::from_ratio(ratio);
    const double e = std::sqrt(1.0 - 1.0 / (ratio * ratio));
    // The Jacobian peaks sharply near cos t = -e for elongated spheroids.
    const std::vector<double> pts = ratio > 1.0 ? std::vector<double>{0.0, std::acos(-e), kPi}
                                                : std::vector<double>{0.0, kPi};
    const auto r = integrate_adaptive<1>([&](double t) { return std::array<double, 1>{angular_jacobian(s, t)}; },
                                         std::span<const double>(pts), 1e-11);
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(2 * kPi * r.value[0], 4 * kPi, 1e-8) << "ratio " << ratio;
  }
}

TEST(Jacobian, MatchesNumericalSolidAngle) {
  // dOmega/dtheta of the emitted direction, from finite differences of the
  // polar angle of k_hat: sin(polar) d(polar)/dtheta.
  const Spheroid s = Spheroid::from_ratio(3.0);
  for (double t : {0.2, 0.9, 1.7, 2.5, 3.0}) {
    const double h = 1e-6;
    auto polar = [&](double x) { return std::acos(k_oracle(s.a_au(), s.b_au(), x, 0.0).z()); };
    const double d = (polar(t + h) - polar(t - h)) / (2 * h);
    EXPECT_NEAR(angular_jacobian(s, t), std::sin(polar(t)) * d, 1e-6);
  }
}

TEST(Theta, SphereClosedForm) {
  const auto r = theta_factor_quadrature(Spheroid::from_ratio(1.0), 1e-10);
  EXPECT_NEAR(r.theta, 64.0 * kPi * kPi / 27.0, 1e-8);
  const auto rh = theta_factor_quadrature(Spheroid::from_ratio(1.0), 1e-10,
                                          PolarizationTransport::right_handed_basis);
  EXPECT_NEAR(rh.theta, 32.0 * kPi * kPi / 27.0, 1e-8);
}

TEST(Theta, ApproachesPlateau) {
  const double t148 = theta_factor_quadrature(Spheroid::from_ratio(148.0), 1e-9).theta;
  EXPECT_NEAR(t148 / (8.0 * kPi * kPi / 9.0), 1.0, 0.02);
  const double t1e4 = theta_factor_quadrature(Spheroid::from_ratio(1e4), 1e-9).theta;
  EXPECT_LT(std::abs(t1e4 / theta_reference::plateau - 1.0), std::abs(t148 / theta_reference::plateau - 1.0));
}

TEST(Theta, ScaleInvariant) {
  for (double lambda : {0.01, 3.0, 250.0}) {
    const Spheroid s(Length::from_au(4.0 * lambda), Length::from_au(lambda));
    EXPECT_NEAR(theta_factor_quadrature(s, 1e-10).theta,
                theta_factor_quadrature(Spheroid::from_ratio(4.0), 1e-10).theta, 1e-8);
  }
}

TEST(Theta, TensorFrobeniusMatches) {
  const auto r = theta_factor_quadrature(Spheroid::from_ratio(3.0), 1e-10);
  EXPECT_NEAR(r.tensor.squaredNorm() / 9.0, r.theta, 1e-10 * r.theta);
  // Axial symmetry: the tensor is diagonal with equal x and y entries.
  EXPECT_NEAR(r.tensor(0, 1), 0.0, 1e-9);
  EXPECT_NEAR(r.tensor(0, 0), r.tensor(1, 1), 1e-9);
}

TEST(Theta, NestedRuleAgrees) {
  for (double ratio : {1.0, 2.0}) {
    const Spheroid s = Spheroid::from_ratio(ratio);
    const double q = theta_factor_quadrature(s, 1e-10).theta;
    EXPECT_NEAR(theta_factor_nested(s, 24, 48) / q, 1.0, 1e-6) << "ratio " << ratio;
  }
}

TEST(Theta, MonteCarloWithinThreeSigma) {
  for (double ratio : {1.0, 4.0}) {
    const Spheroid s = Spheroid::from_ratio(ratio);
    const double q = theta_factor_quadrature(s, 1e-10).theta;
    const auto mc = theta_factor_mc(s, 1'000'000, 42);
    EXPECT_GT(mc.standard_error, 0.0);
    EXPECT_LE(std::abs(mc.theta - q), 3.0 * mc.standard_error) << "ratio " << ratio;
  }
}

TEST(Theta, MonteCarloDeterministic) {
  const Spheroid s = Spheroid::from_ratio(7.0);
  const auto a = theta_factor_mc(s, 50'000, 7, PolarizationTransport::mirror, 1);
  const auto b = theta_factor_mc(s, 50'000, 7, PolarizationTransport::mirror, 1);
  const auto c = theta_factor_mc(s, 50'000, 7, PolarizationTransport::mirror, 4);
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_EQ(a.theta, c.theta);
  EXPECT_EQ(a.standard_error, c.standard_error);
  EXPECT_NE(a.theta, theta_factor_mc(s, 50'000, 8, PolarizationTransport::mirror, 1).theta);
  EXPECT_THROW(theta_factor_mc(s, 10, 7), std::invalid_argument);
}

TEST(Theta, CurveMonotoneDecreasing) {
  const auto pts = theta_curve(log_spaced_ratios(1.0, 148.0, 12), 1e-9);
  ASSERT_EQ(pts.size(), 12u);
  EXPECT_NEAR(pts.front().theta, theta_reference::sphere_mirror, 1e-7);
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LT(pts[i].theta, pts[i - 1].theta);
  for (const auto& p : pts) EXPECT_EQ(p.method, "quadrature");
}

TEST(Theta, LogSpacedRatios) {
  const auto r = log_spaced_ratios(1.0, 100.0, 3);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_DOUBLE_EQ(r[0], 1.0);
  EXPECT_NEAR(r[1], 10.0, 1e-12);
  EXPECT_DOUBLE_EQ(r[2], 100.0);
}

TEST(Theta, TransportNames) {
  EXPECT_EQ(polarization_transport_from_string("mirror"), PolarizationTransport::mirror);
  EXPECT_EQ(polarization_transport_from_string(to_string(PolarizationTransport::right_handed_basis)),
            PolarizationTransport::right_handed_basis);
  EXPECT_THROW(polarization_transport_from_string("spiral"), std::invalid_argument);
}

TEST(Sampler, DensityNormalized) {
  const Spheroid s = Spheroid::from_ratio(20.0);
  const JacobianSampler js(s);
  QuadratureRule g = gauss_legendre(400, 0.0, kPi);
  EXPECT_NEAR(apply_rule(g, [&](double t) { return js.density(t); }), 1.0, 1e-3);
  double d = 0.0;
  const double t = js.sample(0.5, d);
  EXPECT_GE(t, 0.0);
  EXPECT_LE(t, kPi);
  EXPECT_NEAR(d, js.density(t), 1e-12 * d);
}
