#include "focklab/translations.hpp"

#include <cmath>
#include <random>

#include "focklab/localization.hpp"
#include "focklab/quadrature.hpp"

namespace focklab {

namespace {
void require_classical(const ModelPtr& model, const char* what) {
  if (!model->weight().is_classical())
    throw ModelError(std::string(what) + " is only defined for the Gaussian weight");
}
}  // namespace

TranslationOp weighted_translation(const ModelPtr& model, Complex z,
                                   const QuadSpec& spec) {
  require_classical(model, "the weighted translation");
  const double alpha = model->alpha();
  const int n = model->dim();
  const double r_max = model->r_cut() + std::abs(z);
  const int per_unit = std::max(24, spec.radial_points_per_unit);
  const auto radial = quad::composite_gauss(0.0, r_max, per_unit);
  const int m = spec.angular_count > 0
                    ? spec.angular_count
                    : 4 * n + 2 * static_cast<int>(std::ceil(alpha * r_max * std::abs(z))) + 65;

  // entries <U e_j, e_k> = int e_j(z - w) u_z(w) conj(e_k(w)) e^{-2 phi(w)} dA(w)
  // with the multiplier u_z(w) = exp(alpha w conj(z) - alpha |z|^2 / 2).
  const Complex zc = std::conj(z);
  const double z2 = std::norm(z);
  CMatrix u = CMatrix::Zero(n, n);
  const std::size_t chunk_rings = std::max<std::size_t>(1, 4096 / m);
  std::vector<Complex> w_nodes, sw_nodes;
  for (std::size_t ring0 = 0; ring0 < radial.nodes.size(); ring0 += chunk_rings) {
    const std::size_t ring1 = std::min(radial.nodes.size(), ring0 + chunk_rings);
    w_nodes.clear();
    sw_nodes.clear();
    CVector s(static_cast<Eigen::Index>((ring1 - ring0) * m));
    Eigen::Index row = 0;
    for (std::size_t ir = ring0; ir < ring1; ++ir) {
      const double r = radial.nodes[ir];
      const double area = radial.weights[ir] * r * (2.0 * kPi / m);
      for (int it = 0; it < m; ++it) {
        const Complex w = std::polar(r, 2.0 * kPi * it / m);
        w_nodes.push_back(w);
        sw_nodes.push_back(z - w);
        s(row++) = area * std::exp(alpha * w * zc - 0.5 * alpha * z2 -
                                   2.0 * model->weight().phi_at(w));
      }
    }
    const CMatrix bw = model->basis_block(w_nodes);
    const CMatrix bz = model->basis_block(sw_nodes);
    u.noalias() += bw.adjoint() * (s.asDiagonal() * bz);
  }

  TranslationOp out{z, OpMatrix(model, std::move(u)), {}, 0};
  out.column_deficit.resize(n);
  for (int j = 0; j < n; ++j)
    out.column_deficit[j] = 1.0 - out.op.mat().col(j).squaredNorm();
  while (out.trusted_cols < n &&
         out.column_deficit[out.trusted_cols] <= TranslationOp::kDeficitTol)
    ++out.trusted_cols;
  return out;
}

CMatrix weighted_translation_exact(const ModelPtr& model, Complex z) {
  require_classical(model, "the weighted translation");
  const double alpha = model->alpha();
  const int n = model->dim();
  const MomentTable& mom = model->moments();
  const double az = std::abs(z);
  const double la = std::log(alpha);
  const double lz = az > 0.0 ? std::log(az) : 0.0;
  const double argz = std::arg(z);

  CMatrix u(n, n);
  std::vector<double> log_mag;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      if (az == 0.0) {
        // U_0 is the parity operator on the basis
        u(k, j) = (k == j) ? Complex((j % 2 == 0) ? 1.0 : -1.0) : Complex(0.0);
        continue;
      }
      const int imax = std::min(j, k);
      log_mag.assign(imax + 1, 0.0);
      double mmax = -1e300;
      for (int i = 0; i <= imax; ++i) {
        log_mag[i] = std::lgamma(j + 1.0) - std::lgamma(i + 1.0) -
                     std::lgamma(j - i + 1.0) + (j - i) * lz +
                     (k - i) * (la + lz) - std::lgamma(k - i + 1.0);
        mmax = std::max(mmax, log_mag[i]);
      }
      Complex acc = 0.0;
      for (int i = 0; i <= imax; ++i) {
        const double angle = (j - i) * argz - (k - i) * argz;
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        acc += sign * std::exp(log_mag[i] - mmax) * std::polar(1.0, angle);
      }
      const double pref =
          -0.5 * alpha * az * az + 0.5 * (mom.log_moment(k) - mom.log_moment(j));
      u(k, j) = std::exp(pref + mmax) * acc;
    }
  return u;
}

ThetaValue theta_pairing(const ModelPtr& model, Complex z, Complex w,
                         const QuadSpec& spec) {
  const TranslationOp u = weighted_translation(model, z, spec);
  const CVector kw = model->normalized_kernel_vec(w);
  const CVector target = model->normalized_kernel_vec(z - w);
  const CVector y = u.op.mat() * kw;
  const Complex val = target.dot(y);
  ThetaValue out;
  out.value = val;
  out.modulus_gap = std::abs(std::abs(val) - 1.0);
  out.residual = (y - val * target).norm();
  return out;
}

TranslationEssNorm translation_essnorm(const OpMatrix& a, double shift_radius,
                                       int shift_count,
                                       const std::vector<CVector>& probes,
                                       const QuadSpec& spec) {
  if (shift_count < 1) throw InvalidParameter("need at least one shift");
  if (probes.empty()) throw InvalidParameter("need at least one probe vector");
  const ModelPtr& model = a.model();
  TranslationEssNorm out;
  for (int i = 0; i < shift_count; ++i) {
    const Complex shift = std::polar(shift_radius, 2.0 * kPi * i / shift_count);
    const TranslationOp u = weighted_translation(model, shift, spec);
    double best = 0.0;
    for (const CVector& f : probes) {
      const double nf = f.norm();
      if (nf == 0.0) throw InvalidParameter("probe vector must be nonzero");
      best = std::max(best, (a.mat() * (u.op.mat() * f)).norm() / nf);
    }
    out.shifts.push_back(shift);
    out.per_shift.push_back(best);
    out.value = std::max(out.value, best);
  }
  return out;
}

std::vector<CVector> default_probes(const ModelPtr& model, int random_count,
                                    unsigned seed) {
  const int n = model->dim();
  if (n < 2) throw InvalidParameter("probe construction needs dimension at least 2");
  std::vector<CVector> probes;
  CVector e0 = CVector::Zero(n), e1 = CVector::Zero(n);
  e0(0) = 1.0;
  e1(1) = 1.0;
  probes.push_back(e0);
  probes.push_back(e1);
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  for (int i = 0; i < random_count; ++i) {
    CVector v = CVector::Zero(n);
    v(0) = Complex(nd(rng), nd(rng));
    v(1) = Complex(nd(rng), nd(rng));
    v.normalize();
    probes.push_back(v);
  }
  return probes;
}

BerezinEquivalence berezin_equiv_check(const OpMatrix& a, double cap_radius,
                                       const std::vector<double>& radii) {
  BerezinEquivalence out;
  out.radii = radii;
  const DecayCurve corr = compactness_indicator(a, cap_radius, radii);
  out.correlation_sup = corr.values;
  for (double r : radii) {
    double sup = 0.0;
    for (int i = 0; i < 16; ++i)
      sup = std::max(sup, std::abs(berezin(a, std::polar(r, 2.0 * kPi * i / 16))));
    out.berezin_sup.push_back(sup);
  }
  return out;
}

}  // namespace focklab
