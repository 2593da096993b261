#include "focklab/approx.hpp"

#include <cmath>

namespace focklab {

SymbolPoly SymbolPoly::monomial(int a, int b, Complex c) {
  if (a < 0 || b < 0) throw InvalidParameter("monomial powers must be nonnegative");
  SymbolPoly p;
  p.set(a, b, c);
  return p;
}

void SymbolPoly::set(int a, int b, Complex c) {
  if (a < 0 || b < 0) throw InvalidParameter("monomial powers must be nonnegative");
  if (c == Complex(0.0))
    terms_.erase({a, b});
  else
    terms_[{a, b}] = c;
}

Complex SymbolPoly::coeff(int a, int b) const {
  const auto it = terms_.find({a, b});
  return it == terms_.end() ? Complex(0.0) : it->second;
}

int SymbolPoly::max_z_power() const {
  int m = 0;
  for (const auto& [key, c] : terms_) m = std::max(m, key.first);
  return m;
}

int SymbolPoly::max_conj_power() const {
  int m = 0;
  for (const auto& [key, c] : terms_) m = std::max(m, key.second);
  return m;
}

SymbolPoly SymbolPoly::plus(const SymbolPoly& rhs) const {
  SymbolPoly out = *this;
  for (const auto& [key, c] : rhs.terms_) out.set(key.first, key.second, out.coeff(key.first, key.second) + c);
  return out;
}

SymbolPoly SymbolPoly::minus(const SymbolPoly& rhs) const {
  return plus(rhs.scaled(-1.0));
}

SymbolPoly SymbolPoly::times(const SymbolPoly& rhs) const {
  SymbolPoly out;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : rhs.terms_) {
      const int a = ka.first + kb.first;
      const int b = ka.second + kb.second;
      out.set(a, b, out.coeff(a, b) + ca * cb);
    }
  return out;
}

SymbolPoly SymbolPoly::scaled(Complex factor) const {
  SymbolPoly out;
  if (factor == Complex(0.0)) return out;
  for (const auto& [key, c] : terms_) out.set(key.first, key.second, factor * c);
  return out;
}

SymbolPoly SymbolPoly::dz() const {
  SymbolPoly out;
  for (const auto& [key, c] : terms_)
    if (key.first > 0) out.set(key.first - 1, key.second, c * double(key.first));
  return out;
}

SymbolPoly SymbolPoly::dzbar() const {
  SymbolPoly out;
  for (const auto& [key, c] : terms_)
    if (key.second > 0) out.set(key.first, key.second - 1, c * double(key.second));
  return out;
}

Complex SymbolPoly::eval(Complex z) const {
  Complex acc = 0.0;
  for (const auto& [key, c] : terms_)
    acc += c * std::pow(z, key.first) * std::pow(std::conj(z), key.second);
  return acc;
}

Symbol SymbolPoly::to_symbol(const std::string& name) const {
  SymbolPoly copy = *this;
  Symbol s = Symbol::from_function([copy](Complex z) { return copy.eval(z); }, name);
  bool diag = true;
  for (const auto& [key, c] : terms_)
    if (key.first != key.second) diag = false;
  if (diag) {
    s.kind = Symbol::Kind::radial;
    s.radial_profile = [copy](double r) { return copy.eval(Complex(r, 0.0)).real(); };
  }
  return s;
}

SymbolPoly sharp_product(const SymbolPoly& f, const SymbolPoly& g, double alpha) {
  if (!(alpha > 0.0)) throw InvalidParameter("sharp product needs a positive alpha");
  SymbolPoly acc;
  SymbolPoly fd = f;
  SymbolPoly gd = g;
  double coef = 1.0;
  for (int gamma = 0;; ++gamma) {
    if (gamma > 0) {
      fd = fd.dz();
      gd = gd.dzbar();
      coef /= -alpha * gamma;
    }
    if (fd.empty() || gd.empty()) break;
    acc = acc.plus(fd.times(gd).scaled(coef));
  }
  return acc;
}

OpMatrix toeplitz_poly(const ModelPtr& model, const SymbolPoly& p) {
  const int n = model->dim();
  const MomentTable& mom = model->moments();
  CMatrix t = CMatrix::Zero(n, n);
  for (const auto& [key, c] : p.terms()) {
    const int a = key.first;
    const int b = key.second;
    for (int j = 0; j < n; ++j) {
      const int k = j + a - b;
      if (k < 0 || k >= n) continue;
      if (j + a > mom.k_max())
        throw InvalidParameter("polynomial degree exceeds the moment table range");
      t(k, j) += c * std::exp(mom.log_moment(j + a) -
                              0.5 * (mom.log_moment(j) + mom.log_moment(k)));
    }
  }
  return {model, std::move(t)};
}

SharpCheck verify_sharp(const ModelPtr& model, const SymbolPoly& f,
                        const SymbolPoly& g) {
  if (!model->weight().is_classical())
    throw ModelError("sharp product verification is only defined for the Gaussian weight");
  if (f.max_conj_power() != 0)
    throw InvalidParameter("left sharp factor must use only z powers");
  if (g.max_z_power() != 0)
    throw InvalidParameter("right sharp factor must use only conj(z) powers");
  const SymbolPoly sharp = sharp_product(f, g, model->alpha());

  // The law holds entrywise at fixed truncation, so the residual should sit
  // at arithmetic noise. Compression entries reach ~1e6 for small alpha and
  // double rounding alone would crest the interesting scale; the closed-form
  // classical moments let the whole comparison run in extended precision.
  using LComplex = std::complex<long double>;
  using LMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = model->dim();
  const long double alpha = static_cast<long double>(model->alpha());
  const auto log_m = [&](int k) {
    return logl(static_cast<long double>(kPi)) + lgammal(k + 1.0L) -
           (k + 1) * logl(alpha);
  };
  const auto compression = [&](const SymbolPoly& p) {
    LMatrix t = LMatrix::Zero(n, n);
    for (const auto& [key, c] : p.terms()) {
      const auto [a, bb] = key;
      for (int j = 0; j < n; ++j) {
        const int k = j + a - bb;
        if (k < 0 || k >= n) continue;
        t(k, j) += LComplex(c) *
                   expl(log_m(j + a) - 0.5L * (log_m(j) + log_m(k)));
      }
    }
    return t;
  };
  const LMatrix r = compression(f) * compression(g) - compression(sharp);
  const int block = n - 5;
  return {sharp, op_norm(r.topLeftCorner(block, block).cast<Complex>().eval())};
}

GridSymbol sample_grid(const Symbol& symbol, double half, double h) {
  if (!(half > 0.0) || !(h > 0.0))
    throw InvalidParameter("grid half-width and cell size must be positive");
  const int n = 2 * static_cast<int>(std::ceil(half / h));
  GridSymbol g;
  g.h = h;
  g.x0 = -0.5 * (n - 1) * h;
  g.y0 = g.x0;
  g.values.resize(n, n);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) g.values(iy, ix) = symbol.eval(g.node(ix, iy));
  return g;
}

GridSymbol heat_transform(const GridSymbol& g, double t) {
  if (!(t > 0.0)) throw InvalidParameter("heat time must be positive");
  if (4.0 * t < g.h * g.h)
    throw InvalidParameter("heat kernel unresolved on this grid: need 4 t >= h^2");

  const int reach = static_cast<int>(std::ceil(9.0 * std::sqrt(t) / g.h));
  RVector ker(2 * reach + 1);
  double mass = 0.0;
  for (int d = -reach; d <= reach; ++d) {
    const double v = std::exp(-(d * d * g.h * g.h) / (4.0 * t));
    ker(d + reach) = v;
    mass += v;
  }
  ker /= mass;  // one-axis mass 1; the separable product then has mass 1

  const int ny = static_cast<int>(g.values.rows());
  const int nx = static_cast<int>(g.values.cols());
  CMatrix rows = CMatrix::Zero(ny, nx);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      Complex acc = 0.0;
      const int lo = std::max(-reach, -ix);
      const int hi = std::min(reach, nx - 1 - ix);
      for (int d = lo; d <= hi; ++d) acc += ker(d + reach) * g.values(iy, ix + d);
      rows(iy, ix) = acc;
    }
  GridSymbol out = g;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      Complex acc = 0.0;
      const int lo = std::max(-reach, -iy);
      const int hi = std::min(reach, ny - 1 - iy);
      for (int d = lo; d <= hi; ++d) acc += ker(d + reach) * rows(iy + d, ix);
      out.values(iy, ix) = acc;
    }
  return out;
}

GridSymbol heat_transform(const DiscreteMeasure& mu, double t, double half, double h) {
  if (!(t > 0.0)) throw InvalidParameter("heat time must be positive");
  Symbol s = Symbol::from_function(
      [mu, t](Complex z) {
        Complex acc = 0.0;
        for (const auto& atom : mu.atoms)
          acc += atom.mass * std::exp(-std::norm(z - atom.point) / (4.0 * t));
        return acc / (4.0 * kPi * t);
      },
      "heat-measure");
  return sample_grid(s, half, h);
}

OpMatrix toeplitz_grid(const ModelPtr& model, const GridSymbol& g) {
  std::vector<Complex> nodes;
  std::vector<Complex> vals;
  const int ny = static_cast<int>(g.values.rows());
  const int nx = static_cast<int>(g.values.cols());
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const Complex v = g.values(iy, ix);
      if (v == Complex(0.0)) continue;
      const Complex z = g.node(ix, iy);
      if (std::abs(z) > model->r_cut()) continue;
      nodes.push_back(z);
      vals.push_back(v);
    }
  CVector s(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    s(static_cast<Eigen::Index>(i)) =
        vals[i] * g.h * g.h * std::exp(-2.0 * model->weight().phi_at(nodes[i]));
  return {model, basis_outer_sum(*model, nodes, s)};
}

HeatCurve heat_convergence_curve(const ModelPtr& model, const Symbol& f,
                                 const std::vector<double>& times, double half,
                                 double h) {
  const GridSymbol base = sample_grid(f, half, h);
  const OpMatrix t0 = toeplitz_grid(model, base);
  HeatCurve curve;
  curve.times = times;
  for (double t : times) {
    const GridSymbol smoothed = heat_transform(base, t);
    const OpMatrix tt = toeplitz_grid(model, smoothed);
    curve.deviations.push_back(op_norm(tt.sub(t0)));
  }
  return curve;
}

PointMassCurve point_mass_limit_curve(const ModelPtr& model, Complex w,
                                      const std::vector<double>& eps_list) {
  DiscreteMeasure delta;
  delta.atoms.push_back({w, Complex(1.0)});
  const OpMatrix limit = toeplitz_measure(model, delta);
  PointMassCurve curve;
  curve.eps = eps_list;
  for (double eps : eps_list) {
    const OpMatrix mol = toeplitz_indicator_ball(model, w, eps);
    curve.deviations.push_back(op_norm(mol.sub(limit)));
  }
  return curve;
}

RankOneCheck rank_one_from_pointmasses(const ModelPtr& model, Complex z, Complex w) {
  const CVector kz = model->basis_at(z).conjugate();
  const CVector kw = model->basis_at(w).conjugate();
  // sum_k e_k(z) conj(e_k(w)), the truncated kernel at (z, w)
  const Complex kernel_zw = (kz.adjoint() * kw)(0);
  if (std::abs(kernel_zw) <= 1e-12)
    throw ModelError("point masses are numerically orthogonal; rank-one reconstruction is ill-posed");

  DiscreteMeasure dz_mu, dw_mu;
  dz_mu.atoms.push_back({z, Complex(1.0)});
  dw_mu.atoms.push_back({w, Complex(1.0)});
  const OpMatrix tz = toeplitz_measure(model, dz_mu);
  const OpMatrix tw = toeplitz_measure(model, dw_mu);

  RankOneCheck out;
  out.target = kz * kw.adjoint();
  const Complex c =
      std::exp(2.0 * model->weight().phi_at(z) + 2.0 * model->weight().phi_at(w)) /
      kernel_zw;
  out.built = c * (tz.mat() * tw.mat());
  out.residual = op_norm(CMatrix(out.built - out.target));
  return out;
}

}  // namespace focklab
