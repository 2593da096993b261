#include "focklab/localization.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

namespace focklab {

DecayCurve decay_profile(const OpMatrix& a, const std::vector<double>& radii,
                         unsigned seed, int base_points, int directions) {
  if (base_points < 1 || directions < 1)
    throw InvalidParameter("decay profile needs at least one base point and direction");
  const ModelPtr& model = a.model();
  DecayCurve out;
  out.radii = radii;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  for (double r : radii) {
    if (!(r >= 0.0)) throw InvalidParameter("separation radius must be nonnegative");
    const double avail = model->trust_radius() - r;
    if (avail <= 0.05) {
      out.values.push_back(std::numeric_limits<double>::quiet_NaN());
      out.n_samples.push_back(0);
      out.trusted.push_back(false);
      continue;
    }
    const double rho_max = 0.95 * avail;
    double best = 0.0;
    int count = 0;
    for (int b = 0; b < base_points; ++b) {
      const double rho = rho_max * std::sqrt(unif(rng));
      const double th = 2.0 * kPi * unif(rng);
      const Complex z = std::polar(rho, th);
      const CVector y = a.mat() * model->normalized_kernel_vec(z);
      for (int d = 0; d < directions; ++d) {
        const double psi = 2.0 * kPi * (d + 0.5) / directions;
        const Complex w = z + std::polar(r, psi);
        best = std::max(best, std::abs(model->normalized_kernel_vec(w).dot(y)));
        ++count;
      }
    }
    out.values.push_back(best);
    out.n_samples.push_back(count);
    out.trusted.push_back(true);
  }
  return out;
}

DecayCurve compactness_indicator(const OpMatrix& a, double cap_radius,
                                 const std::vector<double>& t_values) {
  if (!(cap_radius > 0.0)) throw InvalidParameter("cap radius must be positive");
  const ModelPtr& model = a.model();
  const int n_base = 16;
  const int n_dir = 12;
  DecayCurve out;
  out.radii = t_values;

  for (double t : t_values) {
    double best = 0.0;
    int count = 0;
    for (int ib = 0; ib < n_base; ++ib) {
      const Complex z = std::polar(t, 2.0 * kPi * ib / n_base);
      const CVector y = a.mat() * model->normalized_kernel_vec(z);
      best = std::max(best, std::abs(model->normalized_kernel_vec(z).dot(y)));
      ++count;
      for (int is = 1; is <= 3; ++is) {
        const double rho = cap_radius * is / 3.0;
        for (int id = 0; id < n_dir; ++id) {
          const Complex w = z + std::polar(rho, 2.0 * kPi * (id + 0.5) / n_dir);
          best = std::max(best, std::abs(model->normalized_kernel_vec(w).dot(y)));
          ++count;
        }
      }
    }
    out.values.push_back(best);
    out.n_samples.push_back(count);
    out.trusted.push_back(t + cap_radius <= model->trust_radius());
  }
  return out;
}

double tail_norm(const OpMatrix& a, double r) {
  if (!(r >= 0.0)) throw InvalidParameter("tail radius must be nonnegative");
  const ModelPtr& model = a.model();
  const int n = a.dim();
  CVector g(n);
  for (int k = 0; k < n; ++k)
    g(k) = std::sqrt(model->moments().tail_fraction(k, r));
  const CMatrix b = g.asDiagonal() * a.mat();
  return op_norm(b);
}

namespace {
CMatrix psd_sqrt(const CMatrix& h, const char* what) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw ModelError(std::string(what) + ": eigensolver failed");
  RVector ev = es.eigenvalues();
  const double floor = -1e-9 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < floor)
      throw ModelError(std::string(what) + ": matrix is not positive semidefinite");
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}
}  // namespace

double local_norm(const OpMatrix& a, Complex z, double d, const QuadSpec& spec) {
  if (!(d > 0.0)) throw InvalidParameter("localization scale must be positive");
  const ModelPtr& model = a.model();
  const CMatrix h1 = ball_gram(*model, z, d, spec);
  const CMatrix h2 = ball_gram(*model, z, 2.0 * d, spec);
  const CMatrix h1_half = psd_sqrt(h1, "local norm");
  return op_norm(CMatrix(h1_half * a.mat() * h2));
}

EssNormReport toeplitz_essnorm_check(const OpMatrix& a, double carleson_scale,
                                     const std::vector<double>& r_list) {
  if (!(carleson_scale >= 0.0))
    throw InvalidParameter("Carleson scale must be nonnegative");
  const ModelPtr& model = a.model();
  const double scale = std::max(carleson_scale, 1e-300);
  const OpMatrix scaled = a.scaled(1.0 / scale);

  EssNormReport rep;
  rep.radii = r_list;
  rep.scale = carleson_scale;
  const int n_ang = 12;
  for (double r : r_list) {
    rep.tail_values.push_back(tail_norm(scaled, r));

    std::vector<CVector> ring;
    ring.reserve(n_ang);
    for (int i = 0; i < n_ang; ++i)
      ring.push_back(model->normalized_kernel_vec(std::polar(r, 2.0 * kPi * i / n_ang)));
    double far = 0.0;
    for (int i = 0; i < n_ang; ++i) {
      const CVector y = scaled.mat() * ring[i];
      for (int j = 0; j < n_ang; ++j) far = std::max(far, std::abs(ring[j].dot(y)));
    }
    rep.far_field_values.push_back(far);
    rep.trusted.push_back(r <= model->trust_radius());
  }
  return rep;
}

}  // namespace focklab
