#pragma once

#include <string>
#include <vector>

#include "focklab/model.hpp"
#include "focklab/symbols.hpp"
#include "focklab/types.hpp"

namespace focklab {

/// A finite matrix acting on the truncated space, carrying the model it was
/// built against so downstream estimators can reach moments and trust data.
class OpMatrix {
 public:
  OpMatrix(ModelPtr model, CMatrix mat);

  const CMatrix& mat() const { return mat_; }
  CMatrix& mat() { return mat_; }
  const ModelPtr& model() const { return model_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  OpMatrix adjoint() const;
  OpMatrix compose(const OpMatrix& rhs) const;  // this * rhs
  OpMatrix add(const OpMatrix& rhs) const;
  OpMatrix sub(const OpMatrix& rhs) const;
  OpMatrix scaled(Complex factor) const;
  Complex trace() const;

  /// Upper-left block with `drop` rows/columns removed at the far end,
  /// the part of the truncation unaffected by edge effects.
  CMatrix leading_block(int drop = 5) const;

 private:
  ModelPtr model_;
  CMatrix mat_;
};

OpMatrix identity_op(const ModelPtr& model);
OpMatrix zero_op(const ModelPtr& model);

/// Largest singular value: power iteration on A*A with an SVD fallback when
/// the iteration fails to settle. Deterministic (fixed seed).
double op_norm(const CMatrix& a);
double op_norm(const OpMatrix& a);

struct DiscreteMeasure {
  struct Atom {
    Complex point;
    Complex mass;
  };
  std::vector<Atom> atoms;
  double total_variation() const;
};

/// sum_i s_i conj(b_i) b_i^T with b_i the basis row at node i, accumulated in
/// chunks so the tall basis block never materializes. The building block for
/// every quadrature-backed compression.
CMatrix basis_outer_sum(const FockModel& model, const std::vector<Complex>& nodes,
                        const CVector& s);

/// Gram matrix of the basis restricted to a disk, against the weighted area
/// measure. Hermitian, positive semidefinite, dominated by the identity.
CMatrix ball_gram(const FockModel& model, Complex center, double radius,
                  const QuadSpec& spec = {});

/// Compression of multiplication by a symbol. Radial symbols take a
/// one-dimensional diagonal path, indicators a ball-adapted rule, everything
/// else the full polar grid.
OpMatrix toeplitz_function(const ModelPtr& model, const Symbol& symbol,
                           const QuadSpec& spec = {});

/// Compression of a finite atomic measure (no area weights; the measure
/// itself carries the mass).
OpMatrix toeplitz_measure(const ModelPtr& model, const DiscreteMeasure& mu);

/// Compression of the unit-mass mollifier at `center`: the indicator of
/// B(center, eps) divided by its plain area pi*eps^2.
OpMatrix toeplitz_indicator_ball(const ModelPtr& model, Complex center,
                                 double eps, const QuadSpec& spec = {});

/// Diagonal compression of a radial profile; entries are moment fractions.
OpMatrix toeplitz_radial(const ModelPtr& model,
                         const std::function<double(double)>& profile,
                         const QuadSpec& spec = {});

/// Expectation of A in the normalized kernel state at z.
Complex berezin(const OpMatrix& a, Complex z);

/// Matrix element of A between normalized kernel states, <A k_z, k_w>.
Complex kernel_correlation(const OpMatrix& a, Complex z, Complex w);

/// Max over the given centers of the measure's mass (or the symbol's plain
/// area integral of |f|) on unit disks around them.
double carleson_norm(const DiscreteMeasure& mu, const std::vector<Complex>& centers);
double carleson_norm(const Symbol& symbol, const std::vector<Complex>& centers,
                     const QuadSpec& spec = {});

struct TracePairing {
  Complex integral_side;
  Complex operator_side;
  double abs_gap;
};

/// Both sides of the duality pairing between a symbol and a test matrix:
/// the weighted integral of g against the matrix's kernel diagonal, and
/// trace(T_g X). They agree identically at fixed truncation.
TracePairing trace_pairing(const ModelPtr& model, const Symbol& g, const OpMatrix& x,
                           const QuadSpec& spec = {});

/// Named ready-made operators (see preset_catalog in symbols.hpp).
OpMatrix preset_operator(const ModelPtr& model, const std::string& name);

}  // namespace focklab
