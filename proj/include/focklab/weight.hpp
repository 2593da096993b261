#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "focklab/types.hpp"

namespace focklab {

enum class WeightKind { classical, fock_sobolev, custom_radial };

/// Radial weight profile phi. The space weighs entire functions by
/// exp(-2 phi(|z|)) against planar Lebesgue measure.
class Weight {
 public:
  /// phi(r) = alpha r^2 / 2, alpha > 0.
  static Weight classical(double alpha);
  /// phi(r) = alpha r^2 / 2 - (m/2) log(A + r^2); requires A > 2 m / alpha
  /// so the curvature bounds stay two-sided.
  static Weight fock_sobolev(double alpha, double m, double big_a);
  /// Arbitrary radial profile; must be finite for all r >= 0.
  static Weight custom_radial(std::function<double(double)> profile,
                              std::string label = "custom");

  WeightKind kind() const { return kind_; }
  bool is_classical() const { return kind_ == WeightKind::classical; }
  double alpha() const { return alpha_; }
  double sobolev_m() const { return m_; }
  double shift_a() const { return big_a_; }
  const std::string& label() const { return label_; }

  double phi(double r) const { return profile_(r); }
  double phi_at(Complex z) const { return profile_(std::abs(z)); }

  /// Radial Laplacian phi''(r) + phi'(r)/r by central differences.
  double laplacian_fd(double r) const;

 private:
  Weight() = default;
  WeightKind kind_ = WeightKind::custom_radial;
  double alpha_ = 0.0, m_ = 0.0, big_a_ = 0.0;
  std::string label_;
  std::function<double(double)> profile_;
};

/// Two-sided curvature estimate for the weight on a radial grid.
/// `satisfied` fails when the lower bound is nonpositive or degenerate
/// relative to the upper bound (pinching ratio below 1e-3).
struct PhiConditionEstimate {
  double c_est = 0.0;
  double C_est = 0.0;
  double argmin_r = 0.0;
  double argmax_r = 0.0;
  bool satisfied = false;
};

PhiConditionEstimate check_phi_condition(const Weight& w,
                                         const std::vector<double>& r_grid);

/// Moments m_k = 2 pi \int_0^inf r^{2k+1} e^{-2 phi(r)} dr, k <= k_max,
/// kept in log form so large k stay representable. Classical weights carry
/// the closed form and the quadrature cross-check in rel_err.
class MomentTable {
 public:
  MomentTable(const Weight& w, int k_max, const QuadSpec& spec = {});

  int k_max() const { return k_max_; }
  const Weight& weight() const { return weight_; }

  double moment(int k) const;      // m_k, may overflow to inf for extreme k
  double log_moment(int k) const;
  double ratio(int k) const;       // m_{k+1} / m_k

  /// gamma_k(r) = 2 pi \int_0^r s^{2k+1} e^{-2 phi(s)} ds.
  double incomplete_moment(int k, double r) const;
  /// (m_k - gamma_k(r)) / m_k in [0, 1], computed from the tail integral
  /// directly so near-complete gammas do not cancel.
  double tail_fraction(int k, double r) const;
  /// gamma_k(r) / m_k in [0, 1], from the head integral directly so tiny
  /// fractions keep full relative accuracy.
  double head_fraction(int k, double r) const;

  double rel_err(int k) const;
  double r_cut() const { return r_cut_; }

 private:
  double log_range_integral(int k, double a, double b) const;
  Weight weight_;
  int k_max_ = 0;
  std::vector<double> log_m_;
  std::vector<double> peak_r_;
  std::vector<double> rel_err_;
  double r_cut_ = 0.0;
  QuadSpec spec_;
};

}  // namespace focklab
