#pragma once

#include <vector>

#include "focklab/operators.hpp"
#include "focklab/types.hpp"

namespace focklab {

/// Truncated weighted translation. column_deficit[j] = 1 - ||U e_j||^2
/// measures how much of the translated basis vector escaped the truncation;
/// the trusted prefix is the set of leading columns with negligible deficit,
/// on which U is unitary and self-inverse up to a provable bound.
struct TranslationOp {
  Complex z;
  OpMatrix op;
  std::vector<double> column_deficit;
  int trusted_cols = 0;

  static constexpr double kDeficitTol = 1e-8;
};

/// Matrix of the weighted shift by z against the basis, entries by quadrature.
/// Only defined for the Gaussian weight; throws for any other model.
TranslationOp weighted_translation(const ModelPtr& model, Complex z,
                                   const QuadSpec& spec = {});

/// Closed-form matrix of the same operator, used as an independent cross
/// check on the quadrature route.
CMatrix weighted_translation_exact(const ModelPtr& model, Complex z);

struct ThetaValue {
  Complex value;      // <U_z k_w, k_{z-w}>
  double modulus_gap; // | |value| - 1 |
  double residual;    // distance of U_z k_w from the line through k_{z-w}
};

/// The unimodular pairing between a translated kernel state and the kernel
/// state at the reflected point.
ThetaValue theta_pairing(const ModelPtr& model, Complex z, Complex w,
                         const QuadSpec& spec = {});

struct TranslationEssNorm {
  double value = 0.0;
  std::vector<Complex> shifts;
  std::vector<double> per_shift;  // max over probes at each shift
};

/// sup over shifts on a circle and unit probe vectors f of ||A U_z f||.
TranslationEssNorm translation_essnorm(const OpMatrix& a, double shift_radius,
                                       int shift_count,
                                       const std::vector<CVector>& probes,
                                       const QuadSpec& spec = {});

/// Deterministic probe family: e_0, e_1 and seeded random unit vectors from
/// their span.
std::vector<CVector> default_probes(const ModelPtr& model, int random_count = 8,
                                    unsigned seed = 73001u);

struct BerezinEquivalence {
  std::vector<double> radii;
  std::vector<double> berezin_sup;    // sup over |z| = r of |B(A)(z)|
  std::vector<double> correlation_sup;  // compactness indicator at r
};

/// Compares decay of the Berezin transform with decay of kernel
/// correlations over shells; for the Gaussian weight the two vanish
/// together.
BerezinEquivalence berezin_equiv_check(const OpMatrix& a, double cap_radius,
                                       const std::vector<double>& radii);

}  // namespace focklab
