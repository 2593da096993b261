#pragma once

#include <vector>

#include "focklab/operators.hpp"
#include "focklab/types.hpp"

namespace focklab {

/// One value per radius; rows outside the trust region keep their value but
/// lose the trusted flag, and rows with no admissible sample carry NaN.
struct DecayCurve {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<int> n_samples;
  std::vector<bool> trusted;
};

/// sup over sampled base points z and directions of |<A k_z, k_{z+r e^{i t}}>|
/// as a function of the separation r. Base points are drawn once from a
/// seeded generator inside the trust region.
DecayCurve decay_profile(const OpMatrix& a, const std::vector<double>& radii,
                         unsigned seed = 20240901u, int base_points = 8,
                         int directions = 32);

/// rho(t): sup over |z| = t and w within distance cap_radius of z of
/// |<A k_z, k_w>|. Vanishing as t grows indicates compactness; the identity
/// pins the curve at 1.
DecayCurve compactness_indicator(const OpMatrix& a, double cap_radius,
                                 const std::vector<double>& t_values);

/// Operator norm of A onto the high part of the space: the largest singular
/// value of G(r)^{1/2} A where G(r) is the diagonal of tail mass fractions at
/// radius r.
double tail_norm(const OpMatrix& a, double r);

/// Norm of A localized between B(z, d) and B(z, 2d) via ball Gram factors:
/// || H_d^{1/2} A H_2d ||.
double local_norm(const OpMatrix& a, Complex z, double d, const QuadSpec& spec = {});

struct EssNormReport {
  std::vector<double> radii;
  std::vector<double> tail_values;      // tail_norm at each radius
  std::vector<double> far_field_values; // sup of |<A k_z, k_w>| with |z|,|w| >= r
  std::vector<bool> trusted;
  double scale = 1.0;                   // Carleson-type normalization applied
};

/// Tail and far-field curves for a Toeplitz-type matrix rescaled to unit
/// Carleson norm. Both must decay together for a compact symbol.
EssNormReport toeplitz_essnorm_check(const OpMatrix& a, double carleson_scale,
                                     const std::vector<double>& r_list);

}  // namespace focklab
