#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace attopair {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [a, b] (Newton iteration on P_n).
QuadratureRule gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0);

/// Periodic trapezoid rule on [0, 2 pi); exact for trigonometric
/// polynomials of degree < n.
QuadratureRule periodic_trapezoid(std::size_t n);

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const { return estimate_; }
  double error() const { return error_; }

 private:
  double estimate_;
  double error_;
};

template <std::size_t N>
struct AdaptiveResult {
  std::array<double, N> value{};
  double error = 0.0;  // max-norm error estimate
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
  bool converged = false;
};

namespace detail {
// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Segment {
  double a, b;
  std::array<double, N> value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <std::size_t N, class F>
Segment<N> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<double, N> resk{}, resg{};
  const std::array<double, N> fc = f(c);
  for (std::size_t k = 0; k < N; ++k) {
    resk[k] = kWgk[7] * fc[k];
    resg[k] = kWg[3] * fc[k];
  }
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const std::array<double, N> f1 = f(c - dx);
    const std::array<double, N> f2 = f(c + dx);
    for (std::size_t k = 0; k < N; ++k) {
      const double s = f1[k] + f2[k];
      resk[k] += kWgk[j] * s;
      if (j % 2 == 1) resg[k] += kWg[j / 2] * s;
    }
  }
  Segment<N> seg{a, b, {}, 0.0};
  for (std::size_t k = 0; k < N; ++k) {
    seg.value[k] = resk[k] * h;
    seg.error = std::max(seg.error, std::abs((resk[k] - resg[k]) * h));
  }
  return seg;
}
}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a vector-valued
/// integrand. Bisects the interval with the largest error until
/// error <= max(abs_tol, rel_tol * ||value||_inf). Inspect `converged`.
/// `breakpoints` (sorted, inside (a, b)) seed the initial partition, which
/// helps with narrow peaks the first 15-point pass could step over.
template <std::size_t N, class F>
AdaptiveResult<N> integrate_adaptive(F&& f, std::span<const double> breakpoints, double rel_tol,
                                     double abs_tol = 0.0, std::size_t max_intervals = 20000) {
  if (breakpoints.size() < 2) throw std::invalid_argument("integrate_adaptive: need an interval");
  std::priority_queue<detail::Segment<N>> heap;
  AdaptiveResult<N> out;
  auto push = [&](double lo, double hi) {
    heap.push(detail::gk15<N>(f, lo, hi));
    out.evaluations += 15;
  };
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) push(breakpoints[i], breakpoints[i + 1]);

  // Exact totals are recomputed from the partition (sorted by position) so
  // the reduction does not depend on the bisection history.
  auto finalize = [&] {
    std::vector<detail::Segment<N>> segs;
    segs.reserve(heap.size());
    auto copy = heap;
    while (!copy.empty()) {
      segs.push_back(copy.top());
      copy.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    std::array<CompensatedSum, N> acc{};
    CompensatedSum err;
    for (const auto& s : segs) {
      for (std::size_t k = 0; k < N; ++k) acc[k].add(s.value[k]);
      err.add(s.error);
    }
    double norm = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      out.value[k] = acc[k].value();
      norm = std::max(norm, std::abs(out.value[k]));
    }
    out.error = err.value();
    out.intervals = segs.size();
    return out.error <= std::max(abs_tol, rel_tol * norm);
  };

  std::size_t next_check = 1;
  while (true) {
    if (heap.size() >= next_check) {
      if (finalize()) {
        out.converged = true;
        return out;
      }
      next_check = heap.size() + std::max<std::size_t>(1, heap.size() / 8);
    }
    if (heap.size() >= max_intervals) {
      finalize();
      return out;
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      finalize();
      return out;
    }
    push(worst.a, mid);
    push(mid, worst.b);
  }
}

template <std::size_t N, class F>
AdaptiveResult<N> integrate_adaptive(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                                     std::size_t max_intervals = 20000) {
  const std::array<double, 2> ends{a, b};
  return integrate_adaptive<N>(std::forward<F>(f), std::span<const double>(ends), rel_tol, abs_tol,
                               max_intervals);
}

/// Scalar convenience wrapper; throws ConvergenceError on failure.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0) {
  auto res = integrate_adaptive<1>([&](double x) { return std::array<double, 1>{f(x)}; }, a, b,
                                   rel_tol, abs_tol);
  if (!res.converged)
    throw ConvergenceError("adaptive quadrature did not converge", res.value[0], res.error);
  return res.value[0];
}

/// Applies a fixed rule: sum_i w_i f(x_i) with compensated summation.
template <class F>
double apply_rule(const QuadratureRule& rule, F&& f) {
  CompensatedSum s;
  for (std::size_t i = 0; i < rule.size(); ++i) s.add(rule.weights[i] * f(rule.nodes[i]));
  return s.value();
}

/// First zero crossing of a continuous function bracketed by [lo, hi]
/// (bisection to full double precision).
template <class F>
double bisect_root(F&& f, double lo, double hi) {
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Golden-section minimum of f on [lo, hi].
template <class F>
double golden_minimum(F&& f, double lo, double hi, double x_tol = 1e-13) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > x_tol * (1.0 + std::abs(lo) + std::abs(hi))) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace attopair
