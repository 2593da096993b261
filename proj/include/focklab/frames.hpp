#pragma once

#include <vector>

#include "focklab/operators.hpp"
#include "focklab/types.hpp"

namespace focklab {

/// Square lattice cover of a window: cells F_j = sigma_j + [-d, d)^2 tile the
/// plane, dilates G_j = sigma_j + [-2d, 2d)^2 overlap boundedly.
struct LatticeCover {
  double d = 0.5;
  std::vector<Complex> centers;

  bool in_cell(int j, Complex z) const;
  bool in_dilate(int j, Complex z) const;
  int cell_count(Complex z) const;     // how many F_j contain z (1 off seams)
  int dilate_count(Complex z) const;   // how many G_j contain z (<= 4 generic)
  double dilate_diameter() const;      // 4 d sqrt(2)
};

LatticeCover make_cover(double d, double window);

/// Columns are normalized weighted kernel samples at integer-lattice offsets
/// of a base point; offsets outside the trust region are omitted and listed.
struct PreFrame {
  Complex base;
  int window = 0;
  std::vector<Complex> points;
  std::vector<Complex> omitted;
  CMatrix mat;
};

PreFrame preframe(const ModelPtr& model, Complex base, int window);

struct FrameScan {
  std::vector<Complex> bases;
  std::vector<double> norms;
  double min_norm = 0.0;
  double max_norm = 0.0;
  double spread() const;  // (max - min) / max, 0 when empty
};

FrameScan frame_norm_scan(const ModelPtr& model, int window,
                          const std::vector<Complex>& bases);

/// Midpoint Riemann sum of the rank-one field z -> |k~_z><k~_z| over a disk.
/// As the cell size shrinks and the disk grows this approaches the identity
/// on the low part of the space.
CMatrix identity_quadrature(const ModelPtr& model, double cell, double radius);

/// Spectral deviation of the leading b-by-b block of M from the identity.
double leading_block_deviation(const CMatrix& m, int block);

/// Norm of the lattice matrix of kernel correlations restricted to pairs at
/// distance >= separation, with independent sub-lattice shifts eta and xi.
double offdiag_block_norm(const OpMatrix& b, double separation, int window,
                          Complex eta, Complex xi);

/// || F_a^H A F_{a+b} || for preframes at bases a and a+b.
double block_lower_bound(const OpMatrix& a, Complex base, Complex shift, int window);

}  // namespace focklab
