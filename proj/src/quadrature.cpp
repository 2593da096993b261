#include "focklab/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace focklab::quad {

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadSpec& spec, double* err_out) {
  if (!(b > a)) return 0.0;
  double err = 0.0, l1 = 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  const unsigned depth = static_cast<unsigned>(std::clamp(spec.max_depth, 1, 40));
  double val = GK::integrate(f, a, b, depth, spec.rel_tol, &err, &l1);
  if (err_out) *err_out = err;
  const double gate = std::max(spec.abs_tol, 1e-8 * std::max(std::abs(val), l1));
  if (!(err <= gate) || !std::isfinite(val))
    throw QuadratureError("adaptive integration failed to converge on [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]");
  return val;
}

Rule1D composite_gauss(double a, double b, int points_per_unit) {
  using G = boost::math::quadrature::gauss<double, 16>;
  Rule1D rule;
  if (!(b > a)) return rule;
  const int blocks = std::max(1, (points_per_unit + 15) / 16);
  const int nseg = std::max(1, static_cast<int>(std::ceil(b - a)));
  const double h = (b - a) / nseg;
  // gauss<> exposes the positive half of the symmetric rule.
  const auto& xs = G::abscissa();
  const auto& ws = G::weights();
  for (int s = 0; s < nseg; ++s) {
    for (int blk = 0; blk < blocks; ++blk) {
      const double lo = a + h * (s + static_cast<double>(blk) / blocks);
      const double hi = a + h * (s + static_cast<double>(blk + 1) / blocks);
      const double c = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] != 0.0) {
          rule.nodes.push_back(c - half * xs[i]);
          rule.weights.push_back(half * ws[i]);
        }
        rule.nodes.push_back(c + half * xs[i]);
        rule.weights.push_back(half * ws[i]);
      }
    }
  }
  return rule;
}

double log_integrate_exp(const std::function<double(double)>& g, double a, double b,
                         double peak_hint, const QuadSpec& spec) {
  if (!(b > a)) return -std::numeric_limits<double>::infinity();
  double peak = -std::numeric_limits<double>::infinity();
  const int scan = 512;
  for (int i = 0; i <= scan; ++i) {
    const double r = a + (b - a) * i / scan;
    peak = std::max(peak, g(r));
  }
  if (peak_hint > a && peak_hint < b) peak = std::max(peak, g(peak_hint));
  if (!std::isfinite(peak)) throw QuadratureError("integrand has no finite peak");
  const double c = peak;
  auto shifted = [&](double r) { return std::exp(g(r) - c); };
  const double val = integrate(shifted, a, b, spec);
  if (!(val > 0.0)) return -std::numeric_limits<double>::infinity();
  return c + std::log(val);
}

double decay_cutoff(const std::function<double(double)>& g, double lo, double hi,
                    double step, double drop) {
  double peak = -std::numeric_limits<double>::infinity();
  double r = lo;
  for (double s = lo; s <= hi; s += step) peak = std::max(peak, g(s));
  for (double s = hi; s >= lo; s -= step) {
    if (g(s) > peak - drop) {
      r = s + step;
      break;
    }
    r = s;
  }
  return std::min(std::max(r, lo + step), hi);
}

}  // namespace focklab::quad
