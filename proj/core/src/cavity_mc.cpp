#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "attopair/cavity.hpp"
#include "attopair/quadrature.hpp"

namespace attopair {

using constants::pi;

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// 53-bit uniform in [0, 1); independent of the standard library's
// distribution implementations.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct BatchSum {
  std::array<double, 9> m{};
  std::size_t count = 0;
};

double theta_from(const std::array<double, 9>& sum, double count) {
  double t = 0.0;
  for (double v : sum) t += (v / count) * (v / count);
  return t / 9.0;
}

}  // namespace

JacobianSampler::JacobianSampler(const Spheroid& s, std::size_t cells) {
  if (cells < 16) throw std::invalid_argument("JacobianSampler needs at least 16 cells");
  // Cubic grading toward theta = pi, where elongated cavities put their weight.
  edges_.resize(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    const double u = 1.0 - static_cast<double>(i) / static_cast<double>(cells);
    edges_[i] = pi * (1.0 - u * u * u);
  }
  edges_.back() = pi;
  const QuadratureRule unit = gauss_legendre(4, 0.0, 1.0);
  cdf_.assign(cells + 1, 0.0);
  dens_.assign(cells, 0.0);
  CompensatedSum acc;
  for (std::size_t i = 0; i < cells; ++i) {
    const double w = edges_[i + 1] - edges_[i];
    double mass = 0.0;
    for (std::size_t k = 0; k < unit.size(); ++k)
      mass += unit.weights[k] * w * angular_jacobian(s, edges_[i] + w * unit.nodes[k]);
    dens_[i] = w > 0.0 ? mass / w : 0.0;
    acc.add(mass);
    cdf_[i + 1] = acc.value();
  }
  total_ = cdf_.back();
}

double JacobianSampler::sample(double u, double& density) const {
  const double target = u * total_;
  auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end(), target);
  if (it == cdf_.end()) --it;
  const std::size_t i = static_cast<std::size_t>(it - cdf_.begin()) - 1;
  const double w = edges_[i + 1] - edges_[i];
  double frac = dens_[i] > 0.0 ? (target - cdf_[i]) / (dens_[i] * w) : 0.5;
  frac = std::clamp(frac, 0.0, 1.0);
  density = dens_[i] / total_;
  return std::min(edges_[i] + frac * w, pi);
}

double JacobianSampler::density(double theta) const {
  auto it = std::upper_bound(edges_.begin(), edges_.end(), theta);
  std::size_t i = static_cast<std::size_t>(it - edges_.begin());
  i = std::clamp<std::size_t>(i, 1, dens_.size()) - 1;
  return dens_[i] / total_;
}

ThetaMcResult theta_factor_mc(const Spheroid& s, std::size_t n_samples, std::uint64_t seed,
                              PolarizationTransport transport, unsigned workers) {
  if (n_samples < 1000) throw std::invalid_argument("theta_factor_mc needs at least 1000 samples");
  // At least 16 batches so the bootstrap has something to resample.
  const std::size_t batch = std::min(kMcBatchSize, std::max<std::size_t>(64, n_samples / 16));
  const std::size_t n_batches = (n_samples + batch - 1) / batch;
  const JacobianSampler sampler(s);

  std::vector<BatchSum> sums(n_batches);
  auto run_batch = [&](std::size_t b) {
    std::mt19937_64 rng(splitmix64(seed, b));
    const std::size_t count = std::min(batch, n_samples - b * batch);
    std::array<CompensatedSum, 9> acc{};
    for (std::size_t i = 0; i < count; ++i) {
      double q = 0.0;
      const double theta = sampler.sample(uniform01(rng), q);
      const double phi = 2.0 * pi * uniform01(rng);
      const double w = angular_jacobian(s, theta) * 2.0 * pi / q;
      const Eigen::Matrix3d t = polarization_tensor(emission_ray(s, theta, phi), transport);
      for (int k = 0; k < 9; ++k) acc[static_cast<std::size_t>(k)].add(w * t(k / 3, k % 3));
    }
    for (std::size_t k = 0; k < 9; ++k) sums[b].m[k] = acc[k].value();
    sums[b].count = count;
  };

  unsigned n_workers = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
  n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, n_batches));
  if (n_workers <= 1) {
    for (std::size_t b = 0; b < n_batches; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < n_batches; b += n_workers) run_batch(b);
      });
    for (auto& t : pool) t.join();
  }

  std::array<CompensatedSum, 9> total{};
  for (const auto& bs : sums)
    for (std::size_t k = 0; k < 9; ++k) total[k].add(bs.m[k]);
  std::array<double, 9> m{};
  for (std::size_t k = 0; k < 9; ++k) m[k] = total[k].value();

  ThetaMcResult out;
  out.samples = n_samples;
  out.theta = theta_from(m, static_cast<double>(n_samples));

  constexpr int kResamples = 200;
  std::mt19937_64 boot(splitmix64(seed ^ 0x5DEECE66DULL, n_batches));
  CompensatedSum mean, sq;
  std::vector<double> reps(kResamples);
  for (int r = 0; r < kResamples; ++r) {
    std::array<double, 9> rm{};
    double cnt = 0.0;
    for (std::size_t j = 0; j < n_batches; ++j) {
      const auto pick = static_cast<std::size_t>(uniform01(boot) * static_cast<double>(n_batches));
      for (std::size_t k = 0; k < 9; ++k) rm[k] += sums[pick].m[k];
      cnt += static_cast<double>(sums[pick].count);
    }
    reps[static_cast<std::size_t>(r)] = theta_from(rm, cnt);
    mean.add(reps[static_cast<std::size_t>(r)]);
  }
  const double mu = mean.value() / kResamples;
  for (double v : reps) sq.add((v - mu) * (v - mu));
  out.standard_error = std::sqrt(sq.value() / (kResamples - 1));
  return out;
}

}  // namespace attopair
