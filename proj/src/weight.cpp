#include "focklab/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "focklab/quadrature.hpp"

namespace focklab {

namespace {

void validate_profile(const std::function<double(double)>& f, const std::string& label) {
  for (double r : {0.0, 0.25, 1.0, 3.0, 7.5, 15.0}) {
    const double v = f(r);
    if (!std::isfinite(v))
      throw InvalidParameter("weight '" + label + "' is not finite at r = " +
                             std::to_string(r));
  }
  // Second differences must stay finite where they are defined.
  for (double r : {0.5, 2.0, 8.0}) {
    const double h = 1e-4 * std::max(1.0, r);
    const double dd = (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
    if (!std::isfinite(dd))
      throw InvalidParameter("weight '" + label + "' has a non-finite second difference");
  }
}

}  // namespace

Weight Weight::classical(double alpha) {
  if (!(alpha > 0.0)) throw InvalidParameter("alpha must be positive");
  Weight w;
  w.kind_ = WeightKind::classical;
  w.alpha_ = alpha;
  w.label_ = "classical(alpha=" + std::to_string(alpha) + ")";
  w.profile_ = [alpha](double r) { return 0.5 * alpha * r * r; };
  return w;
}

Weight Weight::fock_sobolev(double alpha, double m, double big_a) {
  if (!(alpha > 0.0)) throw InvalidParameter("alpha must be positive");
  if (!(m > 0.0)) throw InvalidParameter("m must be positive");
  if (!(big_a > 2.0 * m / alpha))
    throw InvalidParameter("big_a must exceed 2*m/alpha = " +
                           std::to_string(2.0 * m / alpha) +
                           " for two-sided curvature bounds");
  Weight w;
  w.kind_ = WeightKind::fock_sobolev;
  w.alpha_ = alpha;
  w.m_ = m;
  w.big_a_ = big_a;
  w.label_ = "fock_sobolev(alpha=" + std::to_string(alpha) +
             ",m=" + std::to_string(m) + ",A=" + std::to_string(big_a) + ")";
  w.profile_ = [alpha, m, big_a](double r) {
    return 0.5 * alpha * r * r - 0.5 * m * std::log(big_a + r * r);
  };
  return w;
}

Weight Weight::custom_radial(std::function<double(double)> profile, std::string label) {
  if (!profile) throw InvalidParameter("custom weight needs a profile");
  validate_profile(profile, label);
  Weight w;
  w.kind_ = WeightKind::custom_radial;
  w.label_ = std::move(label);
  w.profile_ = std::move(profile);
  return w;
}

double Weight::laplacian_fd(double r) const {
  const double h = 1e-4 * std::max(1.0, r);
  const double rs = std::max(r, 2.0 * h);  // keep the stencil off the axis
  const double f0 = profile_(rs - h), f1 = profile_(rs), f2 = profile_(rs + h);
  const double d2 = (f2 - 2.0 * f1 + f0) / (h * h);
  const double d1 = (f2 - f0) / (2.0 * h);
  return d2 + d1 / rs;
}

PhiConditionEstimate check_phi_condition(const Weight& w,
                                         const std::vector<double>& r_grid) {
  if (r_grid.empty()) throw InvalidParameter("empty radial grid");
  PhiConditionEstimate est;
  est.c_est = std::numeric_limits<double>::infinity();
  est.C_est = -std::numeric_limits<double>::infinity();
  for (double r : r_grid) {
    if (!(r > 0.0)) throw InvalidParameter("grid radii must be positive");
    const double lap = w.laplacian_fd(r);
    if (lap < est.c_est) {
      est.c_est = lap;
      est.argmin_r = r;
    }
    if (lap > est.C_est) {
      est.C_est = lap;
      est.argmax_r = r;
    }
  }
  est.satisfied = est.c_est > 0.0 && est.c_est >= 1e-3 * est.C_est;
  return est;
}

MomentTable::MomentTable(const Weight& w, int k_max, const QuadSpec& spec)
    : weight_(w), k_max_(k_max), spec_(spec) {
  if (k_max < 0) throw InvalidParameter("k_max must be nonnegative");
  log_m_.resize(k_max + 1);
  peak_r_.resize(k_max + 1);
  rel_err_.resize(k_max + 1, 0.0);

  // log-integrand for m_k, without the 2 pi factor
  auto logf = [&](int k, double r) {
    if (r <= 0.0) return -std::numeric_limits<double>::infinity();
    return (2.0 * k + 1.0) * std::log(r) - 2.0 * weight_.phi(r);
  };

  // Cutoff from the largest k: past it every integrand has dropped 60 e-folds.
  {
    auto g = [&](double r) { return logf(k_max, r); };
    r_cut_ = quad::decay_cutoff(g, 0.5, 4096.0, 0.5, 60.0);
  }

  for (int k = 0; k <= k_max; ++k) {
    // crude peak location: scan, refined inside log_integrate_exp
    double best = 1e-6, bestv = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 256; ++i) {
      const double r = r_cut_ * i / 256.0;
      const double v = logf(k, r);
      if (v > bestv) {
        bestv = v;
        best = r;
      }
    }
    peak_r_[k] = best;
    auto g = [&](double r) { return logf(k, r); };
    log_m_[k] = std::log(2.0 * kPi) +
                quad::log_integrate_exp(g, 0.0, r_cut_, best, spec_);
  }

  if (weight_.is_classical()) {
    // closed form: m_k = pi k! / alpha^{k+1}; quadrature must agree
    const double la = std::log(weight_.alpha());
    for (int k = 0; k <= k_max; ++k) {
      const double closed = std::log(kPi) + std::lgamma(k + 1.0) - (k + 1.0) * la;
      const double rel = std::abs(std::expm1(log_m_[k] - closed));
      rel_err_[k] = rel;
      if (rel > 1e-9)
        throw QuadratureError("moment quadrature disagrees with the classical closed form at k=" +
                              std::to_string(k));
      log_m_[k] = closed;
    }
  }
}

double MomentTable::moment(int k) const { return std::exp(log_moment(k)); }

double MomentTable::log_moment(int k) const {
  if (k < 0 || k > k_max_) throw InvalidParameter("moment index out of range");
  return log_m_[k];
}

double MomentTable::ratio(int k) const {
  return std::exp(log_moment(k + 1) - log_moment(k));
}

double MomentTable::log_range_integral(int k, double a, double b) const {
  if (!(b > a)) return -std::numeric_limits<double>::infinity();
  auto g = [&](double r) {
    if (r <= 0.0) return -std::numeric_limits<double>::infinity();
    return (2.0 * k + 1.0) * std::log(r) - 2.0 * weight_.phi(r);
  };
  const double hint = std::clamp(peak_r_[k], a, b);
  return std::log(2.0 * kPi) + quad::log_integrate_exp(g, a, b, hint, spec_);
}

double MomentTable::incomplete_moment(int k, double r) const {
  if (k < 0 || k > k_max_) throw InvalidParameter("moment index out of range");
  if (!(r >= 0.0)) throw InvalidParameter("radius must be nonnegative");
  if (r == 0.0) return 0.0;
  return std::exp(log_range_integral(k, 0.0, std::min(r, r_cut_)));
}

double MomentTable::tail_fraction(int k, double r) const {
  if (k < 0 || k > k_max_) throw InvalidParameter("moment index out of range");
  if (!(r >= 0.0)) throw InvalidParameter("radius must be nonnegative");
  if (r >= r_cut_) return 0.0;
  if (r == 0.0) return 1.0;
  const double lt = log_range_integral(k, r, r_cut_);
  const double frac = std::exp(lt - log_m_[k]);
  return std::clamp(frac, 0.0, 1.0);
}

double MomentTable::head_fraction(int k, double r) const {
  if (k < 0 || k > k_max_) throw InvalidParameter("moment index out of range");
  if (!(r >= 0.0)) throw InvalidParameter("radius must be nonnegative");
  if (r == 0.0) return 0.0;
  if (r >= r_cut_) return 1.0;
  const double lh = log_range_integral(k, 0.0, r);
  const double frac = std::exp(lh - log_m_[k]);
  return std::clamp(frac, 0.0, 1.0);
}

double MomentTable::rel_err(int k) const {
  if (k < 0 || k > k_max_) throw InvalidParameter("moment index out of range");
  return rel_err_[k];
}

}  // namespace focklab
