#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "attopair/units.hpp"

namespace attopair {

/// Prolate spheroid with semi-major axis a along z and semi-minor axis b.
/// The emitter sits at the focus (0, 0, -l), the absorber at (0, 0, +l).
class Spheroid {
 public:
  /// Throws std::invalid_argument unless a >= b > 0.
  Spheroid(Length a, Length b);

  /// b = 1 bohr, a = ratio bohr.
  static Spheroid from_ratio(double ratio);

  Length a() const { return Length::from_au(a_); }
  Length b() const { return Length::from_au(b_); }
  /// l = sqrt(a^2 - b^2).
  Length focal_half_distance() const { return Length::from_au(l_); }
  double aspect_ratio() const { return a_ / b_; }

  double a_au() const { return a_; }
  double b_au() const { return b_; }
  double l_au() const { return l_; }

 private:
  double a_, b_, l_;
};

/// One emitted ray: from the first focus to the wall point P(theta, phi), then
/// from P to the second focus. Lengths are in bohr.
struct RayPair {
  double theta = 0.0;  // spheroidal parametrization angles of P
  double phi = 0.0;
  Eigen::Vector3d point;   // reflection point on the wall
  Eigen::Vector3d normal;  // outward unit normal at P
  Eigen::Vector3d k_hat;
  Eigen::Vector3d k_hat_prime;
  double l_plus = 0.0;   // |P - F1|
  double l_minus = 0.0;  // |F2 - P|
  Eigen::Vector3d eps1;
  Eigen::Vector3d eps2;  // k_hat x eps1
  Eigen::Vector3d eps1_prime;
  Eigen::Vector3d eps2_prime;  // k_hat_prime x eps1_prime
};

/// Requires 0 <= theta <= pi. k_hat_prime points from P toward the second
/// focus. Throws std::invalid_argument outside the domain.
RayPair emission_ray(const Spheroid& s, double theta, double phi);

/// The alternative textbook parametrization of the reflected direction,
/// (-b sin t cos p, -b sin t sin p, a cos t - l) / L-. It is the mirror image
/// of the geometric k_hat_prime in z; exposed for cross-checks.
Eigen::Vector3d k_hat_prime_alternative(const Spheroid& s, double theta, double phi);

/// Mirror reflection matrix I - 2 n n^T at P.
Eigen::Matrix3d reflection_matrix(const RayPair& ray);

/// Solid-angle weight [a/L+ - l (l + a cos t)(a + l cos t) / L+^3] sin t,
/// i.e. dOmega = weight * dtheta * dphi. Equals sin t for a sphere.
double angular_jacobian(const Spheroid& s, double theta);

/// How the polarization basis is carried through the reflection.
enum class PolarizationTransport {
  /// Physical mirror map: eps -> (I - 2 n n^T) eps. Default.
  mirror,
  /// Right-handed basis on the reflected ray (eps2' = k' x eps1'), which
  /// flips the sign of the transported eps2 relative to the mirror map.
  right_handed_basis,
};

std::string to_string(PolarizationTransport t);
PolarizationTransport polarization_transport_from_string(const std::string& name);

/// Sum_i eps^(i) (transported eps^(i))^T for one ray.
Eigen::Matrix3d polarization_tensor(const RayPair& ray, PolarizationTransport transport);

namespace theta_reference {
inline constexpr double sphere_mirror = 64.0 * constants::pi * constants::pi / 27.0;
inline constexpr double sphere_right_handed = 32.0 * constants::pi * constants::pi / 27.0;
inline constexpr double plateau = 8.0 * constants::pi * constants::pi / 9.0;
}  // namespace theta_reference

struct ThetaQuadratureResult {
  double theta = 0.0;
  double error_estimate = 0.0;  // absolute
  Eigen::Matrix3d tensor = Eigen::Matrix3d::Zero();
  std::size_t evaluations = 0;  // ray constructions
};

/// Geometry factor Theta = ||M||_F^2 / 9 with M = int dOmega sum_i eps (x) eps'.
/// Adaptive Gauss-Kronrod in theta, periodic trapezoid (doubling until stable)
/// in phi. Throws ConvergenceError carrying the best estimate.
ThetaQuadratureResult theta_factor_quadrature(const Spheroid& s, double rel_tol,
                                              PolarizationTransport transport = PolarizationTransport::mirror);

/// Literal four-dimensional double angular integral with a fixed product
/// rule; slow, for verification only.
double theta_factor_nested(const Spheroid& s, std::size_t n_theta, std::size_t n_phi,
                           PolarizationTransport transport = PolarizationTransport::mirror);

/// Piecewise-constant sampling density for theta built from the Jacobian.
class JacobianSampler {
 public:
  explicit JacobianSampler(const Spheroid& s, std::size_t cells = 8192);

  /// Maps u in [0, 1) to theta; also returns the sampling density q(theta).
  double sample(double u, double& density) const;
  double density(double theta) const;
  double total_mass() const { return total_; }

 private:
  std::vector<double> edges_;
  std::vector<double> cdf_;
  std::vector<double> dens_;
  double total_ = 0.0;
};

struct ThetaMcResult {
  double theta = 0.0;
  double standard_error = 0.0;  // bootstrap over batches
  std::size_t samples = 0;
};

inline constexpr std::size_t kMcBatchSize = 8192;

/// Monte-Carlo estimate of Theta with importance sampling on the Jacobian.
/// Batch b draws from mt19937_64 seeded with splitmix64(seed, b); the result
/// is bit-identical for any worker count (0 = hardware concurrency).
/// Requires n_samples >= 1000.
ThetaMcResult theta_factor_mc(const Spheroid& s, std::size_t n_samples, std::uint64_t seed,
                              PolarizationTransport transport = PolarizationTransport::mirror,
                              unsigned workers = 0);

/// Counter-based seed derivation used for MC substreams.
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter);

struct ThetaPoint {
  double ratio = 1.0;
  double theta = 0.0;
  std::string method;  // "quadrature" or "mc"
  double standard_error = 0.0;
};

/// Theta over a list of aspect ratios (each >= 1) by quadrature.
std::vector<ThetaPoint> theta_curve(const std::vector<double>& ratios, double rel_tol,
                                    PolarizationTransport transport = PolarizationTransport::mirror);

/// `points` log-spaced ratios from lo to hi inclusive.
std::vector<double> log_spaced_ratios(double lo, double hi, std::size_t points);

}  // namespace attopair
