#include "focklab/frames.hpp"

#include <algorithm>
#include <cmath>

namespace focklab {

bool LatticeCover::in_cell(int j, Complex z) const {
  const Complex c = centers.at(j);
  return z.real() >= c.real() - d && z.real() < c.real() + d &&
         z.imag() >= c.imag() - d && z.imag() < c.imag() + d;
}

bool LatticeCover::in_dilate(int j, Complex z) const {
  const Complex c = centers.at(j);
  return z.real() >= c.real() - 2.0 * d && z.real() < c.real() + 2.0 * d &&
         z.imag() >= c.imag() - 2.0 * d && z.imag() < c.imag() + 2.0 * d;
}

int LatticeCover::cell_count(Complex z) const {
  int n = 0;
  for (int j = 0; j < static_cast<int>(centers.size()); ++j)
    if (in_cell(j, z)) ++n;
  return n;
}

int LatticeCover::dilate_count(Complex z) const {
  int n = 0;
  for (int j = 0; j < static_cast<int>(centers.size()); ++j)
    if (in_dilate(j, z)) ++n;
  return n;
}

double LatticeCover::dilate_diameter() const { return 4.0 * d * std::sqrt(2.0); }

LatticeCover make_cover(double d, double window) {
  if (!(d > 0.0)) throw InvalidParameter("cover cell half-width must be positive");
  if (!(window > 0.0)) throw InvalidParameter("cover window must be positive");
  LatticeCover cov;
  cov.d = d;
  const int k = static_cast<int>(std::ceil((window + d) / (2.0 * d)));
  for (int iy = -k; iy <= k; ++iy)
    for (int ix = -k; ix <= k; ++ix) {
      const Complex c(2.0 * d * ix, 2.0 * d * iy);
      if (std::abs(c.real()) - d <= window && std::abs(c.imag()) - d <= window)
        cov.centers.push_back(c);
    }
  return cov;
}

PreFrame preframe(const ModelPtr& model, Complex base, int window) {
  if (window < 1) throw InvalidParameter("preframe window must be at least 1");
  PreFrame out;
  out.base = base;
  out.window = window;
  std::vector<CVector> cols;
  for (int iy = -(window - 1); iy <= window - 1; ++iy)
    for (int ix = -(window - 1); ix <= window - 1; ++ix) {
      const Complex p = base + Complex(ix, iy);
      if (model->trusted(p)) {
        out.points.push_back(p);
        cols.push_back(model->tilde_kernel_vec(p));
      } else {
        out.omitted.push_back(p);
      }
    }
  out.mat.resize(model->dim(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    out.mat.col(static_cast<Eigen::Index>(j)) = cols[j];
  return out;
}

double FrameScan::spread() const {
  if (norms.empty() || max_norm == 0.0) return 0.0;
  return (max_norm - min_norm) / max_norm;
}

FrameScan frame_norm_scan(const ModelPtr& model, int window,
                          const std::vector<Complex>& bases) {
  FrameScan scan;
  scan.bases = bases;
  for (const Complex& b : bases) scan.norms.push_back(op_norm(preframe(model, b, window).mat));
  if (!scan.norms.empty()) {
    scan.min_norm = *std::min_element(scan.norms.begin(), scan.norms.end());
    scan.max_norm = *std::max_element(scan.norms.begin(), scan.norms.end());
  }
  return scan;
}

CMatrix identity_quadrature(const ModelPtr& model, double cell, double radius) {
  if (!(cell > 0.0)) throw InvalidParameter("quadrature cell must be positive");
  if (!(radius > 0.0)) throw InvalidParameter("quadrature radius must be positive");
  std::vector<Complex> nodes;
  const int k = static_cast<int>(std::ceil(radius / cell)) + 1;
  for (int iy = -k; iy <= k; ++iy)
    for (int ix = -k; ix <= k; ++ix) {
      const Complex c((ix + 0.5) * cell, (iy + 0.5) * cell);
      if (std::abs(c) <= radius) nodes.push_back(c);
    }
  CVector s(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    s(static_cast<Eigen::Index>(i)) =
        cell * cell * std::exp(-2.0 * model->weight().phi_at(nodes[i]));
  return basis_outer_sum(*model, nodes, s);
}

double leading_block_deviation(const CMatrix& m, int block) {
  if (block < 1 || block > m.rows() || block > m.cols())
    throw InvalidParameter("block size out of range");
  const CMatrix d = m.topLeftCorner(block, block) - CMatrix::Identity(block, block);
  return op_norm(d);
}

double offdiag_block_norm(const OpMatrix& b, double separation, int window,
                          Complex eta, Complex xi) {
  if (window < 0) throw InvalidParameter("lattice window must be nonnegative");
  if (!(separation > 0.0)) throw InvalidParameter("separation must be positive");
  const ModelPtr& model = b.model();
  const int side = 2 * window + 1;
  const int count = side * side;

  std::vector<Complex> lattice;
  lattice.reserve(count);
  for (int iy = -window; iy <= window; ++iy)
    for (int ix = -window; ix <= window; ++ix) lattice.push_back(Complex(ix, iy));

  CMatrix rows(model->dim(), count);
  CMatrix cols(model->dim(), count);
  for (int j = 0; j < count; ++j) {
    rows.col(j) = model->tilde_kernel_vec(lattice[j] + xi);
    cols.col(j) = model->tilde_kernel_vec(lattice[j] + eta);
  }
  CMatrix p = rows.adjoint() * (b.mat() * cols);
  for (int u = 0; u < count; ++u)
    for (int v = 0; v < count; ++v)
      if (std::abs(lattice[u] - lattice[v]) < separation) p(u, v) = 0.0;
  return op_norm(p);
}

double block_lower_bound(const OpMatrix& a, Complex base, Complex shift, int window) {
  const PreFrame f1 = preframe(a.model(), base, window);
  const PreFrame f2 = preframe(a.model(), base + shift, window);
  if (f1.mat.cols() == 0 || f2.mat.cols() == 0)
    throw ModelError("preframe has no trusted columns at this base point");
  return op_norm(CMatrix(f1.mat.adjoint() * a.mat() * f2.mat));
}

}  // namespace focklab
