#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace focklab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Bad argument or parameter combination rejected up front.
class InvalidParameter : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Adaptive integration failed to reach the requested tolerance.
class QuadratureError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation invoked outside its domain (wrong weight kind, degenerate
/// configuration, dimension mismatch).
class ModelError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Knobs for the integration backends. Zeros mean "derive from the model".
struct QuadSpec {
  double rel_tol = 1e-11;
  double abs_tol = 1e-15;
  int max_depth = 40;            // adaptive refinement cap
  int radial_points_per_unit = 24;
  int angular_count = 0;         // 0: 4*dim + 9
  double r_cut = 0.0;            // 0: automatic from weight decay
};

}  // namespace focklab
