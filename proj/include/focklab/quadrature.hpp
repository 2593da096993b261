#pragma once

#include <functional>
#include <vector>

#include "focklab/types.hpp"

namespace focklab::quad {

/// Adaptive Gauss-Kronrod integral of f over [a, b]. Throws QuadratureError
/// if the error estimate stays above the requested tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadSpec& spec = {}, double* err_out = nullptr);

/// Fixed composite Gauss-Legendre rule. Segments of unit length (shorter at
/// the ends), points_per_unit nodes each.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Rule1D composite_gauss(double a, double b, int points_per_unit);

/// Peak-shifted integral of exp(g(r)) over [a, b]:
///   returns log(integral), robust when exp(g) over/underflows.
/// g must be continuous; peak_hint may be <= 0 when unknown.
double log_integrate_exp(const std::function<double(double)>& g, double a, double b,
                         double peak_hint, const QuadSpec& spec = {});

/// Smallest radius R >= lo such that g is below (max g) - drop for all
/// sampled r >= R; scans in steps of `step` out to `hi`.
double decay_cutoff(const std::function<double(double)>& g, double lo, double hi,
                    double step, double drop);

}  // namespace focklab::quad
