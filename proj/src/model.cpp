#include "focklab/model.hpp"

#include <algorithm>
#include <cmath>

#include "focklab/quadrature.hpp"

namespace focklab {

DiskRule disk_rule(Complex center, double radius, int radial_points_per_unit,
                   int angular_count) {
  if (!(radius > 0.0)) throw InvalidParameter("disk radius must be positive");
  const int per_unit = std::max(radial_points_per_unit,
                                static_cast<int>(std::ceil(24.0 / radius)));
  auto rule = quad::composite_gauss(0.0, radius, per_unit);
  const int m = std::max(angular_count, 8);
  DiskRule out;
  out.nodes.reserve(rule.nodes.size() * m);
  out.weights.reserve(rule.nodes.size() * m);
  const double dtheta = 2.0 * kPi / m;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double rho = rule.nodes[i];
    const double wa = rule.weights[i] * rho * dtheta;
    for (int j = 0; j < m; ++j) {
      const double th = dtheta * j;
      out.nodes.push_back(center + Complex(rho * std::cos(th), rho * std::sin(th)));
      out.weights.push_back(wa);
    }
  }
  return out;
}

FockModel::FockModel(const Weight& w, int dim, const QuadSpec& spec)
    : weight_(w), dim_(dim), moments_(w, 4 * std::max(dim, 1), spec) {
  if (dim < 8) throw InvalidParameter("model dimension must be at least 8");

  sqrt_ratio_.resize(dim_ - 1);
  for (int k = 0; k + 1 < dim_; ++k)
    sqrt_ratio_[k] = std::exp(0.5 * (moments_.log_moment(k + 1) - moments_.log_moment(k)));

  // Quadrature cutoff sized for integrands of basis-pair degree.
  {
    const double deg = 2.0 * (dim_ + 4.0) + 1.0;
    auto g = [&](double r) {
      return r <= 0.0 ? -1e300 : deg * std::log(r) - 2.0 * weight_.phi(r);
    };
    r_cut_ = quad::decay_cutoff(g, 0.5, 4096.0, 0.25, 60.0);
  }

  // Trust radius: bisect the relative weight of the top 5 diagonal terms.
  {
    auto top_frac = [&](double r) {
      if (r <= 0.0) return 0.0;
      const double lr = std::log(r);
      double amax = -1e300;
      for (int k = 0; k < dim_; ++k)
        amax = std::max(amax, 2.0 * k * lr - moments_.log_moment(k));
      double full = 0.0, top = 0.0;
      for (int k = 0; k < dim_; ++k) {
        const double t = std::exp(2.0 * k * lr - moments_.log_moment(k) - amax);
        full += t;
        if (k >= dim_ - 5) top += t;
      }
      return top / full;
    };
    double lo = 0.0, hi = r_cut_;
    if (top_frac(hi) < 1e-9) {
      trust_radius_ = hi;
    } else {
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (top_frac(mid) < 1e-9 ? lo : hi) = mid;
      }
      trust_radius_ = lo;
    }
  }

  const int per_unit = std::max(8, spec.radial_points_per_unit);
  auto rr = quad::composite_gauss(0.0, r_cut_, per_unit);
  grid_.r = std::move(rr.nodes);
  grid_.wr = std::move(rr.weights);
  grid_.n_theta = spec.angular_count > 0 ? spec.angular_count : 4 * dim_ + 9;
}

ModelPtr make_model(const Weight& w, int dim, const QuadSpec& spec) {
  return std::make_shared<FockModel>(w, dim, spec);
}

CVector FockModel::basis_at(Complex z) const {
  CVector v(dim_);
  v(0) = std::exp(-0.5 * moments_.log_moment(0));
  for (int k = 0; k + 1 < dim_; ++k) v(k + 1) = v(k) * z / sqrt_ratio_[k];
  return v;
}

CMatrix FockModel::basis_block(const std::vector<Complex>& nodes) const {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  CMatrix b(n, dim_);
  Eigen::Map<const CVector> zv(nodes.data(), n);
  b.col(0).setConstant(std::exp(-0.5 * moments_.log_moment(0)));
  for (int k = 0; k + 1 < dim_; ++k)
    b.col(k + 1) = b.col(k).cwiseProduct(zv) / sqrt_ratio_[k];
  return b;
}

Complex FockModel::eval(const CVector& coeffs, Complex z) const {
  if (coeffs.size() != dim_) throw ModelError("coefficient length mismatch");
  Complex acc = 0.0;
  Complex e = std::exp(-0.5 * moments_.log_moment(0));
  for (int k = 0; k < dim_; ++k) {
    acc += coeffs(k) * e;
    if (k + 1 < dim_) e *= z / sqrt_ratio_[k];
  }
  return acc;
}

Complex FockModel::kernel(Complex z, Complex w) const {
  const Complex q = z * std::conj(w);
  Complex term = std::exp(-moments_.log_moment(0));
  Complex acc = term;
  for (int k = 0; k + 1 < dim_; ++k) {
    term *= q / (sqrt_ratio_[k] * sqrt_ratio_[k]);
    acc += term;
  }
  return acc;
}

double FockModel::kernel_diag(double r) const {
  return kernel(Complex(r, 0.0), Complex(r, 0.0)).real();
}

CVector FockModel::normalized_kernel_vec(Complex z) const {
  CVector v = basis_at(z).conjugate();
  const double nn = v.norm();
  if (!(nn > 0.0)) throw ModelError("kernel vector vanished");
  return v / nn;
}

CVector FockModel::tilde_kernel_vec(Complex z) const {
  return basis_at(z).conjugate() * std::exp(-weight_.phi_at(z));
}

Complex FockModel::grid_node(std::size_t idx) const {
  const std::size_t ir = idx / grid_.n_theta;
  const std::size_t it = idx % grid_.n_theta;
  const double th = 2.0 * kPi * it / grid_.n_theta;
  return Complex(grid_.r[ir] * std::cos(th), grid_.r[ir] * std::sin(th));
}

double FockModel::grid_area_weight(std::size_t idx) const {
  const std::size_t ir = idx / grid_.n_theta;
  return grid_.wr[ir] * grid_.r[ir] * (2.0 * kPi / grid_.n_theta);
}

double FockModel::p_norm(const CVector& coeffs, double p, const QuadSpec& spec) const {
  if (coeffs.size() != dim_) throw ModelError("coefficient length mismatch");
  if (!(p > 0.0)) throw InvalidParameter("p must be positive (or infinite)");
  if (std::isinf(p)) {
    double best = 0.0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      const Complex z = grid_node(i);
      best = std::max(best, std::abs(eval(coeffs, z)) * std::exp(-weight_.phi_at(z)));
    }
    best = std::max(best, std::abs(eval(coeffs, 0.0)));
    return best;
  }
  // own cutoff: integrand degree scales with p
  double rc = spec.r_cut;
  if (rc <= 0.0) {
    const double deg = p * (dim_ - 1.0) + 1.0;
    auto g = [&](double r) {
      return r <= 0.0 ? -1e300 : deg * std::log(r) - p * weight_.phi(r);
    };
    rc = quad::decay_cutoff(g, 0.5, 4096.0, 0.25, 60.0);
  }
  auto rr = quad::composite_gauss(0.0, rc, std::max(16, spec.radial_points_per_unit));
  const int m = spec.angular_count > 0 ? spec.angular_count
                                       : std::max(128, 4 * dim_ + 9);
  const double dtheta = 2.0 * kPi / m;
  double acc = 0.0;
  for (std::size_t i = 0; i < rr.nodes.size(); ++i) {
    const double r = rr.nodes[i];
    const double wphi = weight_.phi(r);
    double ring = 0.0;
    for (int j = 0; j < m; ++j) {
      const double th = dtheta * j;
      const Complex z(r * std::cos(th), r * std::sin(th));
      ring += std::pow(std::abs(eval(coeffs, z)) * std::exp(-wphi), p);
    }
    acc += ring * rr.weights[i] * r * dtheta;
  }
  return std::pow(acc, 1.0 / p);
}

SubmeanReport check_submeanvalue(const FockModel& model, const CVector& coeffs,
                                 Complex z, double r, double p,
                                 const QuadSpec& spec) {
  if (!(r > 0.0)) throw InvalidParameter("ball radius must be positive");
  if (!(p > 0.0) || std::isinf(p)) throw InvalidParameter("p must be finite positive");
  SubmeanReport rep;
  rep.point_mass = std::pow(std::abs(model.eval(coeffs, z)) *
                                std::exp(-model.weight().phi_at(z)),
                            p);
  const int m = spec.angular_count > 0 ? spec.angular_count
                                       : std::max(64, 2 * model.dim() + 9);
  auto rule = disk_rule(z, r, std::max(16, spec.radial_points_per_unit), m);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Complex w = rule.nodes[i];
    acc += rule.weights[i] * std::pow(std::abs(model.eval(coeffs, w)) *
                                          std::exp(-model.weight().phi_at(w)),
                                      p);
  }
  rep.ball_mass = acc;
  rep.ratio = acc > 0.0 ? rep.point_mass / acc : 0.0;
  return rep;
}

}  // namespace focklab
