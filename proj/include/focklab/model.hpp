#pragma once

#include <memory>
#include <vector>

#include "focklab/types.hpp"
#include "focklab/weight.hpp"

namespace focklab {

/// Polar product rule covering the disk |z| <= r_cut: composite
/// Gauss-Legendre radially, uniform angles. Node index = ir * n_theta + it.
struct PolarGrid {
  std::vector<double> r;
  std::vector<double> wr;
  int n_theta = 0;
  std::size_t size() const { return r.size() * static_cast<std::size_t>(n_theta); }
};

/// Disk rule centered anywhere, with plain area weights.
struct DiskRule {
  std::vector<Complex> nodes;
  std::vector<double> weights;
};
DiskRule disk_rule(Complex center, double radius, int radial_points_per_unit,
                   int angular_count);

class FockModel;
using ModelPtr = std::shared_ptr<const FockModel>;

/// Truncated orthonormal-basis model of the weighted entire-function space:
/// basis e_k(z) = z^k / sqrt(m_k), k < dim, moments precomputed to 4*dim.
class FockModel {
 public:
  FockModel(const Weight& w, int dim, const QuadSpec& spec = {});

  int dim() const { return dim_; }
  int complex_dim() const { return 1; }
  const Weight& weight() const { return weight_; }
  const MomentTable& moments() const { return moments_; }
  double alpha() const { return weight_.alpha(); }

  /// Largest radius where dropping the top 5 basis terms moves the kernel
  /// diagonal by less than 1e-9 relatively. Evaluations beyond it are
  /// reported as untrusted, not refused.
  double trust_radius() const { return trust_radius_; }
  bool trusted(Complex z) const { return std::abs(z) <= trust_radius_ + 1e-12; }

  /// e_k(z) for k < dim.
  CVector basis_at(Complex z) const;
  /// Rows = nodes, cols = basis index; vectorized over nodes.
  CMatrix basis_block(const std::vector<Complex>& nodes) const;

  Complex eval(const CVector& coeffs, Complex z) const;

  /// K_N(z, w) = sum_{k<dim} z^k conj(w)^k / m_k.
  Complex kernel(Complex z, Complex w) const;
  double kernel_diag(double r) const;

  /// Unit coefficient vector of K(., z)/sqrt(K(z, z)).
  CVector normalized_kernel_vec(Complex z) const;
  /// Coefficients of e^{-phi(z)} K(., z).
  CVector tilde_kernel_vec(Complex z) const;

  /// ( \int |f|^p e^{-p phi} dv )^{1/p}; p = inf gives the weighted sup on
  /// the grid. Best effort for p far from 2 (integrands lose smoothness at
  /// zeros of f).
  double p_norm(const CVector& coeffs, double p, const QuadSpec& spec = {}) const;

  const PolarGrid& grid() const { return grid_; }
  Complex grid_node(std::size_t idx) const;
  double grid_area_weight(std::size_t idx) const;
  double r_cut() const { return r_cut_; }

 private:
  Weight weight_;
  int dim_;
  MomentTable moments_;
  std::vector<double> sqrt_ratio_;  // sqrt(m_{k+1}/m_k), k < dim-1
  double trust_radius_ = 0.0;
  double r_cut_ = 0.0;
  PolarGrid grid_;
};

ModelPtr make_model(const Weight& w, int dim, const QuadSpec& spec = {});

struct SubmeanReport {
  double ratio = 0.0;       // pointwise mass over ball mass
  double point_mass = 0.0;  // |f(z)|^p e^{-p phi(z)}
  double ball_mass = 0.0;
};

/// Submean-value diagnostic: point intensity against the average over
/// B(z, r) (ratio 0 when f vanishes identically).
SubmeanReport check_submeanvalue(const FockModel& model, const CVector& coeffs,
                                 Complex z, double r, double p,
                                 const QuadSpec& spec = {});

}  // namespace focklab
