#include "attopair/cavity.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "attopair/quadrature.hpp"

namespace attopair {

using constants::pi;

namespace {

// Cancellation-free forms of l +- a cos t and a +- l cos t, written with the
// half-angle squares so that the a >> b regime near t = pi stays accurate.
struct AxialTerms {
  double l_plus_a_cos;   // l + a cos t
  double a_plus_l_cos;   // a + l cos t
  double l_minus_a_cos;  // l - a cos t
  double a_minus_l_cos;  // a - l cos t
};

AxialTerms axial_terms(const Spheroid& s, double theta) {
  const double a = s.a_au(), b = s.b_au(), l = s.l_au();
  const double a_minus_l = b * b / (a + l);
  const double ch = std::cos(0.5 * theta);
  const double sh = std::sin(0.5 * theta);
  const double c2 = ch * ch, s2 = sh * sh;
  return {2.0 * a * c2 - a_minus_l, a_minus_l + 2.0 * l * c2, 2.0 * a * s2 - a_minus_l,
          a_minus_l + 2.0 * l * s2};
}

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= pi)) throw std::invalid_argument("theta must lie in [0, pi]");
}

std::vector<double> theta_breakpoints(const Spheroid& s) {
  // The Jacobian concentrates within ~b/a of theta = pi for elongated cavities.
  const double w = s.b_au() / s.a_au();
  std::vector<double> pts{0.0, 0.5 * pi};
  for (double m : {64.0, 16.0, 4.0, 1.0, 0.25}) {
    const double x = pi - m * w;
    if (x > 0.5 * pi + 1e-12 && x > pts.back()) pts.push_back(x);
  }
  pts.push_back(pi);
  return pts;
}

// Phi-integrated polarization tensor at fixed theta (without the Jacobian).
Eigen::Matrix3d phi_integral(const Spheroid& s, double theta, PolarizationTransport transport,
                             std::size_t& evaluations) {
  auto trapezoid = [&](std::size_t n) {
    Eigen::Matrix3d acc = Eigen::Matrix3d::Zero();
    const double h = 2.0 * pi / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
      acc += polarization_tensor(emission_ray(s, theta, h * static_cast<double>(i)), transport);
    evaluations += n;
    return Eigen::Matrix3d(acc * h);
  };
  std::size_t n = 8;
  Eigen::Matrix3d coarse = trapezoid(n);
  while (true) {
    // The refined rule reuses no nodes; simplicity beats the saved half here.
    Eigen::Matrix3d fine = trapezoid(2 * n);
    const double scale = std::max(fine.cwiseAbs().maxCoeff(), 1e-300);
    if ((fine - coarse).cwiseAbs().maxCoeff() <= 1e-13 * scale || n >= 1024) return fine;
    coarse = fine;
    n *= 2;
  }
}

}  // namespace

Spheroid::Spheroid(Length a, Length b) : a_(a.au()), b_(b.au()) {
  if (!(b_ > 0.0) || !(a_ >= b_) || !std::isfinite(a_))
    throw std::invalid_argument("spheroid requires a >= b > 0");
  l_ = std::sqrt((a_ - b_) * (a_ + b_));
}

Spheroid Spheroid::from_ratio(double ratio) {
  if (!(ratio >= 1.0)) throw std::invalid_argument("aspect ratio must be >= 1");
  return Spheroid(Length::from_au(ratio), Length::from_au(1.0));
}

RayPair emission_ray(const Spheroid& s, double theta, double phi) {
  check_theta(theta);
  const double a = s.a_au(), b = s.b_au();
  const double st = std::sin(theta), ct = std::cos(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const AxialTerms t = axial_terms(s, theta);

  RayPair r;
  r.theta = theta;
  r.phi = phi;
  r.point = Eigen::Vector3d(b * st * cp, b * st * sp, a * ct);
  r.normal = Eigen::Vector3d(st * cp / b, st * sp / b, ct / a).normalized();

  r.l_plus = std::hypot(b * st, t.l_plus_a_cos);
  r.l_minus = std::hypot(b * st, t.l_minus_a_cos);
  r.k_hat = Eigen::Vector3d(b * st * cp, b * st * sp, t.l_plus_a_cos) / r.l_plus;
  r.k_hat_prime = Eigen::Vector3d(-b * st * cp, -b * st * sp, t.l_minus_a_cos) / r.l_minus;

  r.eps1 = Eigen::Vector3d(-sp, cp, 0.0);
  r.eps2 = r.k_hat.cross(r.eps1);
  r.eps1_prime = r.eps1;
  r.eps2_prime = r.k_hat_prime.cross(r.eps1_prime);
  return r;
}

Eigen::Vector3d k_hat_prime_alternative(const Spheroid& s, double theta, double phi) {
  check_theta(theta);
  const double b = s.b_au();
  const double st = std::sin(theta);
  const AxialTerms t = axial_terms(s, theta);
  const double l_minus = std::hypot(b * st, t.l_minus_a_cos);
  return Eigen::Vector3d(-b * st * std::cos(phi), -b * st * std::sin(phi), -t.l_minus_a_cos) /
         l_minus;
}

Eigen::Matrix3d reflection_matrix(const RayPair& ray) {
  return Eigen::Matrix3d::Identity() - 2.0 * ray.normal * ray.normal.transpose();
}

double angular_jacobian(const Spheroid& s, double theta) {
  check_theta(theta);
  const double a = s.a_au(), b = s.b_au(), l = s.l_au();
  const double st = std::sin(theta);
  const AxialTerms t = axial_terms(s, theta);
  const double lp = std::hypot(b * st, t.l_plus_a_cos);
  return (a / lp - l * t.l_plus_a_cos * t.a_plus_l_cos / (lp * lp * lp)) * st;
}

std::string to_string(PolarizationTransport t) {
  return t == PolarizationTransport::mirror ? "mirror" : "right-handed";
}

PolarizationTransport polarization_transport_from_string(const std::string& name) {
  if (name == "mirror") return PolarizationTransport::mirror;
  if (name == "right-handed") return PolarizationTransport::right_handed_basis;
  throw std::invalid_argument("unknown polarization transport '" + name +
                              "' (expected mirror or right-handed)");
}

Eigen::Matrix3d polarization_tensor(const RayPair& ray, PolarizationTransport transport) {
  if (transport == PolarizationTransport::mirror) {
    const Eigen::Matrix3d r = reflection_matrix(ray);
    return ray.eps1 * (r * ray.eps1).transpose() + ray.eps2 * (r * ray.eps2).transpose();
  }
  return ray.eps1 * ray.eps1_prime.transpose() + ray.eps2 * ray.eps2_prime.transpose();
}

ThetaQuadratureResult theta_factor_quadrature(const Spheroid& s, double rel_tol,
                                              PolarizationTransport transport) {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  std::size_t rays = 0;
  auto integrand = [&](double theta) {
    const Eigen::Matrix3d m = angular_jacobian(s, theta) * phi_integral(s, theta, transport, rays);
    std::array<double, 9> out;
    for (int i = 0; i < 9; ++i) out[static_cast<std::size_t>(i)] = m(i / 3, i % 3);
    return out;
  };
  const std::vector<double> pts = theta_breakpoints(s);
  const auto res = integrate_adaptive<9>(integrand, std::span<const double>(pts), rel_tol / 8.0);

  ThetaQuadratureResult out;
  for (int i = 0; i < 9; ++i) out.tensor(i / 3, i % 3) = res.value[static_cast<std::size_t>(i)];
  out.theta = out.tensor.squaredNorm() / 9.0;
  const double dm = 3.0 * res.error;
  out.error_estimate = (2.0 * out.tensor.norm() * dm + dm * dm) / 9.0;
  out.evaluations = rays;
  if (!res.converged || !(out.error_estimate <= rel_tol * out.theta))
    throw ConvergenceError("theta_factor_quadrature: no convergence at rel_tol", out.theta,
                           out.error_estimate);
  return out;
}

double theta_factor_nested(const Spheroid& s, std::size_t n_theta, std::size_t n_phi,
                           PolarizationTransport transport) {
  if (n_theta == 0 || n_phi == 0) throw std::invalid_argument("theta_factor_nested: empty rule");
  struct Node {
    double w;
    std::array<Eigen::Vector3d, 2> e, ep;
  };
  std::vector<Node> nodes;
  const std::vector<double> pts = theta_breakpoints(s);
  const QuadratureRule phis = periodic_trapezoid(n_phi);
  for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
    const QuadratureRule th = gauss_legendre(n_theta, pts[p], pts[p + 1]);
    for (std::size_t i = 0; i < th.size(); ++i) {
      const double jw = th.weights[i] * angular_jacobian(s, th.nodes[i]);
      for (std::size_t j = 0; j < phis.size(); ++j) {
        const RayPair r = emission_ray(s, th.nodes[i], phis.nodes[j]);
        Node n{jw * phis.weights[j], {r.eps1, r.eps2}, {}};
        if (transport == PolarizationTransport::mirror) {
          const Eigen::Matrix3d m = reflection_matrix(r);
          n.ep = {m * r.eps1, m * r.eps2};
        } else {
          n.ep = {r.eps1_prime, r.eps2_prime};
        }
        nodes.push_back(n);
      }
    }
  }
  // Theta = (1/9) int dOmega int dOmega' sum_ij (e_i . e'_j)(ep_i . ep'_j)
  CompensatedSum total;
  for (const Node& x : nodes) {
    double row = 0.0;
    for (const Node& y : nodes) {
      double pol = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) pol += x.e[i].dot(y.e[j]) * x.ep[i].dot(y.ep[j]);
      row += y.w * pol;
    }
    total.add(x.w * row);
  }
  return total.value() / 9.0;
}

std::vector<ThetaPoint> theta_curve(const std::vector<double>& ratios, double rel_tol,
                                    PolarizationTransport transport) {
  std::vector<ThetaPoint> out;
  out.reserve(ratios.size());
  for (double r : ratios) {
    const auto q = theta_factor_quadrature(Spheroid::from_ratio(r), rel_tol, transport);
    out.push_back({r, q.theta, "quadrature", 0.0});
  }
  return out;
}

std::vector<double> log_spaced_ratios(double lo, double hi, std::size_t points) {
  if (!(lo >= 1.0) || !(hi >= lo)) throw std::invalid_argument("ratios need 1 <= lo <= hi");
  if (points == 0) return {};
  if (points == 1) return {lo};
  std::vector<double> out(points);
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = lo * std::exp(step * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace attopair
