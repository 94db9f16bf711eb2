#include "attopair/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "attopair/quadrature.hpp"

namespace attopair {

using constants::c_au;
using constants::pi;

namespace {
std::string describe_pole(double pole_au) {
  std::ostringstream os;
  os.precision(10);
  os << "provider pole at omega = " << pole_au << " hartree (" << pole_au * constants::hartree_ev
     << " eV) lies inside the frequency grid";
  return os.str();
}
}  // namespace

PoleInGridError::PoleInGridError(double pole_au)
    : std::domain_error(describe_pole(pole_au)), pole_(pole_au) {}

FrequencyGrid gauss_legendre_grid(Energy delta, std::size_t n) {
  if (!(delta.au() > 0.0)) throw std::invalid_argument("grid needs delta > 0");
  const QuadratureRule r = gauss_legendre(n, 0.0, delta.au());
  return {r.nodes, r.weights};
}

FrequencyGrid uniform_grid(Energy delta, std::size_t n) {
  if (!(delta.au() > 0.0)) throw std::invalid_argument("grid needs delta > 0");
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("uniform grid needs an odd n >= 3");
  FrequencyGrid g;
  const double d = delta.au();
  const double h = d / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    g.omega.push_back(i + 1 == n ? d : h * static_cast<double>(i));
    const double simpson = (i == 0 || i + 1 == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    g.weight.push_back(simpson * h / 3.0);
  }
  return g;
}

BiphotonSpectrum spectral_amplitude(const DipoleChainProvider& provider, const FrequencyGrid& grid) {
  const double d = provider.delta_eg().au();
  if (grid.omega.size() < 512) throw std::invalid_argument("spectral grid needs >= 512 points");
  if (grid.omega.size() != grid.weight.size())
    throw std::invalid_argument("spectral grid: node/weight size mismatch");
  const auto [lo, hi] = std::minmax_element(grid.omega.begin(), grid.omega.end());
  const double slack = 1e-12 * d;
  if (*lo < -slack || *hi > d + slack)
    throw std::invalid_argument("spectral grid must lie inside [0, delta_eg]");
  for (double p : provider.poles())
    if (p >= *lo - slack && p <= *hi + slack) throw PoleInGridError(p);

  BiphotonSpectrum s;
  const ProviderInfo info = provider.metadata();
  s.species = info.species;
  s.provider = info.kind;
  s.delta_eg = provider.delta_eg();
  s.grid = grid;
  s.amplitude.reserve(grid.omega.size());
  s.amplitude_sq.reserve(grid.omega.size());
  for (double w : grid.omega) {
    const double x = w * (d - w);
    const double cube = x * x * x;
    const double chain = provider.chain_sum(Energy::from_au(w));
    s.amplitude.push_back(cube * chain);
    s.amplitude_sq.push_back(cube * chain * chain);
  }
  return s;
}

double CorrelationSeries::t_seconds(std::size_t i) const {
  return Time::from_au(t_au.at(i)).in(units::second);
}

std::complex<double> CorrelationSeries::evaluate(double t) const {
  if (!spectrum) throw std::logic_error("correlation series has no spectrum attached");
  const auto& g = spectrum->grid;
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < g.omega.size(); ++i) {
    const double a = g.weight[i] * spectrum->amplitude[i];
    re += a * std::cos(g.omega[i] * t);
    im += a * std::sin(g.omega[i] * t);
  }
  return std::complex<double>(re, im) / (normalized ? norm : 1.0);
}

std::vector<double> symmetric_time_grid(Time t_max, std::size_t n) {
  if (!(t_max.au() > 0.0) || n < 3) throw std::invalid_argument("time grid needs t_max > 0, n >= 3");
  std::vector<double> t(n);
  const double tm = t_max.au();
  for (std::size_t i = 0; i < n; ++i) {
    // Mirror-exact construction so that t[i] == -t[n-1-i] bitwise.
    const double frac = static_cast<double>(2 * i) / static_cast<double>(n - 1) - 1.0;
    t[i] = tm * frac;
  }
  for (std::size_t i = 0; i < n / 2; ++i) t[n - 1 - i] = -t[i];
  if (n % 2 == 1) t[n / 2] = 0.0;
  return t;
}

CorrelationSeries correlation_function(std::shared_ptr<const BiphotonSpectrum> spectrum,
                                       const std::vector<double>& t_grid) {
  if (!spectrum) throw std::invalid_argument("correlation_function: null spectrum");
  if (t_grid.size() < 3) throw std::invalid_argument("correlation_function: time grid too short");
  const std::size_t n = t_grid.size();
  double t_max = 0.0;
  for (double t : t_grid) t_max = std::max(t_max, std::abs(t));
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(t_grid[i] + t_grid[n - 1 - i]) > 1e-12 * t_max)
      throw std::invalid_argument("correlation_function: time grid must be symmetric about 0");

  // At least four omega samples per period of e^{i w t_max}.
  std::vector<double> w = spectrum->grid.omega;
  std::sort(w.begin(), w.end());
  double gap = std::max(w.front(), spectrum->delta_eg.au() - w.back());
  for (std::size_t i = 1; i < w.size(); ++i) gap = std::max(gap, w[i] - w[i - 1]);
  if (gap * t_max > 0.5 * pi) {
    std::ostringstream os;
    os << "omega grid spacing " << gap << " hartree under-resolves |t| = " << t_max
       << " a.u.; refine the grid or shrink the time window";
    throw UnderResolvedError(os.str());
  }

  CorrelationSeries c;
  c.spectrum = std::move(spectrum);
  c.t_au = t_grid;
  c.normalized = false;
  c.norm = c.evaluate(0.0).real();
  if (!(std::abs(c.norm) > 0.0)) throw std::domain_error("correlation_function: spectrum integrates to 0");
  c.normalized = true;
  c.value.reserve(n);
  for (double t : t_grid) c.value.push_back(c.evaluate(t));
  return c;
}

namespace {

std::size_t origin_index(const CorrelationSeries& s) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.t_au.size(); ++i)
    if (std::abs(s.t_au[i]) < std::abs(s.t_au[best])) best = i;
  return best;
}

// First zero of Re C walking away from the origin in direction dir (+1/-1).
double carrier_edge(const CorrelationSeries& s, std::size_t i0, int dir) {
  const auto n = static_cast<std::ptrdiff_t>(s.t_au.size());
  for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i0) + dir; k >= 0 && k < n; k += dir) {
    const auto prev = static_cast<std::size_t>(k - dir);
    const auto cur = static_cast<std::size_t>(k);
    if (s.value[cur].real() <= 0.0) {
      double lo = s.t_au[prev], hi = s.t_au[cur];
      if (!s.spectrum) {
        const double f0 = s.value[prev].real(), f1 = s.value[cur].real();
        return lo + (hi - lo) * f0 / (f0 - f1);
      }
      return bisect_root([&](double t) { return s.evaluate(t).real(); }, lo, hi);
    }
  }
  throw NoLobeError("no zero of Re C within the time grid");
}

double envelope_edge(const CorrelationSeries& s, std::size_t i0, int dir) {
  const auto n = static_cast<std::ptrdiff_t>(s.t_au.size());
  for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i0) + dir; k + dir >= 0 && k + dir < n; k += dir) {
    const double prev = std::abs(s.value[static_cast<std::size_t>(k - dir)]);
    const double cur = std::abs(s.value[static_cast<std::size_t>(k)]);
    const double next = std::abs(s.value[static_cast<std::size_t>(k + dir)]);
    if (cur < prev && cur <= next) {
      double lo = s.t_au[static_cast<std::size_t>(k - dir)];
      double hi = s.t_au[static_cast<std::size_t>(k + dir)];
      if (lo > hi) std::swap(lo, hi);
      if (!s.spectrum) return s.t_au[static_cast<std::size_t>(k)];
      return golden_minimum([&](double t) { return std::abs(s.evaluate(t)); }, lo, hi);
    }
  }
  throw NoLobeError("no local minimum of |C| within the time grid");
}

}  // namespace

CorrelationTime correlation_time(const CorrelationSeries& s) {
  if (s.t_au.size() != s.value.size() || s.t_au.size() < 3)
    throw std::invalid_argument("correlation_time: malformed series");
  const std::size_t i0 = origin_index(s);
  CorrelationTime out;
  out.carrier_lobe = Time::from_au(carrier_edge(s, i0, +1) - carrier_edge(s, i0, -1));
  out.envelope_lobe = Time::from_au(envelope_edge(s, i0, +1) - envelope_edge(s, i0, -1));
  return out;
}

double decay_rate_prefactor() {
  const double c3 = c_au * c_au * c_au;
  return 4.0 / (27.0 * pi * c3 * c3);
}

DecayRate two_photon_decay_rate(const DipoleChainProvider& provider) {
  if (!provider.calibrated())
    throw ProviderError("two_photon_decay_rate: provider '" + provider.metadata().kind +
                        "' is not calibrated in absolute units");
  const double d = provider.delta_eg().au();
  for (double p : provider.poles())
    if (p > 0.0 && p < d) throw PoleInGridError(p);
  const double integral = integrate(
      [&](double w) {
        const double x = w * (d - w);
        const double s = provider.chain_sum(Energy::from_au(w));
        return x * x * x * s * s;
      },
      0.0, d, 1e-13);
  const double gamma = decay_rate_prefactor() * integral;
  return {Rate::from_au(gamma), Time::from_au(1.0 / gamma), integral};
}

double angular_distribution(double theta_rel) {
  if (!(theta_rel >= 0.0 && theta_rel <= pi))
    throw std::invalid_argument("angular_distribution: theta must lie in [0, pi]");
  const double c = std::cos(theta_rel);
  return 0.375 * (1.0 + c * c) * std::sin(theta_rel);
}

}  // namespace attopair
