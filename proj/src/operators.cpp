#include "focklab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/SVD>

#include "focklab/quadrature.hpp"

namespace focklab {

OpMatrix::OpMatrix(ModelPtr model, CMatrix mat) : model_(std::move(model)), mat_(std::move(mat)) {
  if (!model_) throw InvalidParameter("operator needs a model");
  if (mat_.rows() != mat_.cols() || mat_.rows() != model_->dim())
    throw InvalidParameter("operator matrix must be square with the model dimension");
}

OpMatrix OpMatrix::adjoint() const { return {model_, mat_.adjoint()}; }

namespace {
void require_same_model(const OpMatrix& a, const OpMatrix& b) {
  if (a.model() != b.model())
    throw InvalidParameter("operators built against different models cannot be combined");
}
}  // namespace

OpMatrix OpMatrix::compose(const OpMatrix& rhs) const {
  require_same_model(*this, rhs);
  return {model_, mat_ * rhs.mat_};
}

OpMatrix OpMatrix::add(const OpMatrix& rhs) const {
  require_same_model(*this, rhs);
  return {model_, mat_ + rhs.mat_};
}

OpMatrix OpMatrix::sub(const OpMatrix& rhs) const {
  require_same_model(*this, rhs);
  return {model_, mat_ - rhs.mat_};
}

OpMatrix OpMatrix::scaled(Complex factor) const { return {model_, factor * mat_}; }

Complex OpMatrix::trace() const { return mat_.trace(); }

CMatrix OpMatrix::leading_block(int drop) const {
  if (drop < 0 || drop >= dim())
    throw InvalidParameter("leading block drop must be in [0, dim)");
  const int b = dim() - drop;
  return mat_.topLeftCorner(b, b);
}

OpMatrix identity_op(const ModelPtr& model) {
  return {model, CMatrix::Identity(model->dim(), model->dim())};
}

OpMatrix zero_op(const ModelPtr& model) {
  return {model, CMatrix::Zero(model->dim(), model->dim())};
}

double op_norm(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  if (!std::isfinite(scale)) return std::numeric_limits<double>::infinity();

  std::mt19937 rng(987654321u);
  std::normal_distribution<double> nd;
  CVector v(a.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(nd(rng), nd(rng));
  v.normalize();

  double sigma = 0.0;
  int settled = 0;
  const int max_iter = std::max<int>(200, 10 * static_cast<int>(std::max(a.rows(), a.cols())));
  for (int it = 0; it < max_iter; ++it) {
    CVector w = a * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    CVector u = a.adjoint() * (w / nw);
    const double nu = u.norm();
    if (nu == 0.0) return nw;
    v = u / nu;
    const double next = nw;
    if (std::abs(next - sigma) <= 1e-11 * std::max(next, 1e-300)) {
      if (++settled >= 2) return next;
    } else {
      settled = 0;
    }
    sigma = next;
  }
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

double op_norm(const OpMatrix& a) { return op_norm(a.mat()); }

double DiscreteMeasure::total_variation() const {
  double s = 0.0;
  for (const auto& atom : atoms) s += std::abs(atom.mass);
  return s;
}

CMatrix basis_outer_sum(const FockModel& model, const std::vector<Complex>& nodes,
                        const CVector& s) {
  if (static_cast<std::size_t>(s.size()) != nodes.size())
    throw InvalidParameter("node and weight counts differ");
  const int n = model.dim();
  CMatrix acc = CMatrix::Zero(n, n);
  const std::size_t chunk = 4096;
  std::vector<Complex> part;
  for (std::size_t lo = 0; lo < nodes.size(); lo += chunk) {
    const std::size_t hi = std::min(nodes.size(), lo + chunk);
    part.assign(nodes.begin() + lo, nodes.begin() + hi);
    const CMatrix b = model.basis_block(part);
    const CMatrix bw = s.segment(static_cast<Eigen::Index>(lo),
                                 static_cast<Eigen::Index>(hi - lo))
                           .asDiagonal() *
                       b;
    acc.noalias() += b.adjoint() * bw;
  }
  return acc;
}

CMatrix ball_gram(const FockModel& model, Complex center, double radius,
                  const QuadSpec& spec) {
  if (!(radius > 0.0)) throw InvalidParameter("ball radius must be positive");
  const int per_unit = std::max(24, spec.radial_points_per_unit);
  const int angular = spec.angular_count > 0 ? spec.angular_count : 4 * model.dim() + 9;
  const DiskRule rule = disk_rule(center, radius, per_unit, angular);

  CVector s(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    s(i) = rule.weights[i] * std::exp(-2.0 * model.weight().phi_at(rule.nodes[i]));
  CMatrix h = basis_outer_sum(model, rule.nodes, s);
  return 0.5 * (h + h.adjoint().eval());
}

OpMatrix toeplitz_radial(const ModelPtr& model,
                         const std::function<double(double)>& profile,
                         const QuadSpec& spec) {
  (void)spec;
  const int n = model->dim();
  const MomentTable& mom = model->moments();
  const PolarGrid& grid = model->grid();
  CMatrix t = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double d = 0.0;
    for (std::size_t i = 0; i < grid.r.size(); ++i) {
      const double r = grid.r[i];
      if (r <= 0.0) continue;
      d += grid.wr[i] * profile(r) *
           std::exp((2.0 * k + 1.0) * std::log(r) - 2.0 * model->weight().phi(r) -
                    mom.log_moment(k));
    }
    t(k, k) = 2.0 * kPi * d;
  }
  return {model, std::move(t)};
}

OpMatrix toeplitz_function(const ModelPtr& model, const Symbol& symbol,
                           const QuadSpec& spec) {
  const int n = model->dim();

  if (symbol.kind == Symbol::Kind::indicator) {
    if (std::abs(symbol.center) == 0.0) {
      CMatrix t = CMatrix::Zero(n, n);
      for (int k = 0; k < n; ++k) t(k, k) = model->moments().head_fraction(k, symbol.radius);
      return {model, std::move(t)};
    }
    return {model, ball_gram(*model, symbol.center, symbol.radius, spec)};
  }

  if (symbol.kind == Symbol::Kind::radial)
    return toeplitz_radial(model, symbol.radial_profile, spec);

  const PolarGrid& grid = model->grid();
  std::vector<Complex> nodes(grid.size());
  CVector s(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex z = model->grid_node(i);
    nodes[i] = z;
    s(static_cast<Eigen::Index>(i)) = symbol.eval(z) * model->grid_area_weight(i) *
                                      std::exp(-2.0 * model->weight().phi_at(z));
  }
  return {model, basis_outer_sum(*model, nodes, s)};
}

OpMatrix toeplitz_measure(const ModelPtr& model, const DiscreteMeasure& mu) {
  const int n = model->dim();
  CMatrix t = CMatrix::Zero(n, n);
  for (const auto& atom : mu.atoms) {
    const CVector b = model->basis_at(atom.point);
    const double w2 = std::exp(-2.0 * model->weight().phi_at(atom.point));
    t.noalias() += (atom.mass * w2) * (b.conjugate() * b.transpose());
  }
  return {model, std::move(t)};
}

OpMatrix toeplitz_indicator_ball(const ModelPtr& model, Complex center, double eps,
                                 const QuadSpec& spec) {
  if (!(eps > 0.0)) throw InvalidParameter("mollifier radius must be positive");
  const double mass = kPi * eps * eps;
  if (std::abs(center) == 0.0) {
    const int n = model->dim();
    CMatrix t = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
      t(k, k) = model->moments().head_fraction(k, eps) / mass;
    return {model, std::move(t)};
  }
  return {model, ball_gram(*model, center, eps, spec) / mass};
}

Complex berezin(const OpMatrix& a, Complex z) {
  const CVector k = a.model()->normalized_kernel_vec(z);
  return k.dot(a.mat() * k);
}

Complex kernel_correlation(const OpMatrix& a, Complex z, Complex w) {
  const CVector kz = a.model()->normalized_kernel_vec(z);
  const CVector kw = a.model()->normalized_kernel_vec(w);
  return kw.dot(a.mat() * kz);
}

double carleson_norm(const DiscreteMeasure& mu, const std::vector<Complex>& centers) {
  double best = 0.0;
  for (const Complex& c : centers) {
    double local = 0.0;
    for (const auto& atom : mu.atoms)
      if (std::abs(atom.point - c) <= 1.0) local += std::abs(atom.mass);
    best = std::max(best, local);
  }
  return best;
}

double carleson_norm(const Symbol& symbol, const std::vector<Complex>& centers,
                     const QuadSpec& spec) {
  const int per_unit = std::max(24, spec.radial_points_per_unit);
  const int angular = spec.angular_count > 0 ? spec.angular_count : 128;
  double best = 0.0;
  for (const Complex& c : centers) {
    const DiskRule rule = disk_rule(c, 1.0, per_unit, angular);
    double local = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      local += rule.weights[i] * std::abs(symbol.eval(rule.nodes[i]));
    best = std::max(best, local);
  }
  return best;
}

TracePairing trace_pairing(const ModelPtr& model, const Symbol& g, const OpMatrix& x,
                           const QuadSpec& spec) {
  // Indicator symbols integrate over their own ball so the jump never sits
  // inside a quadrature panel; everything else rides the model grid.
  std::vector<Complex> nodes;
  std::vector<Complex> masses;  // area weight times g
  if (g.kind == Symbol::Kind::indicator) {
    const int per_unit = std::max(24, spec.radial_points_per_unit);
    const int angular = spec.angular_count > 0 ? spec.angular_count : 4 * model->dim() + 9;
    DiskRule rule = disk_rule(g.center, g.radius, per_unit, angular);
    nodes = std::move(rule.nodes);
    masses.assign(rule.weights.begin(), rule.weights.end());
  } else {
    nodes.reserve(model->grid().size());
    masses.reserve(model->grid().size());
    for (std::size_t i = 0; i < model->grid().size(); ++i) {
      const Complex z = model->grid_node(i);
      nodes.push_back(z);
      masses.push_back(model->grid_area_weight(i) * g.eval(z));
    }
  }

  Complex integral = 0.0;
  const std::size_t chunk = 4096;
  std::vector<Complex> part;
  for (std::size_t lo = 0; lo < nodes.size(); lo += chunk) {
    const std::size_t hi = std::min(nodes.size(), lo + chunk);
    part.assign(nodes.begin() + lo, nodes.begin() + hi);
    const CMatrix b = model->basis_block(part);
    const CMatrix bx = b * x.mat();
    const CVector diag = bx.cwiseProduct(b.conjugate()).rowwise().sum();
    for (std::size_t i = lo; i < hi; ++i)
      integral += masses[i] * std::exp(-2.0 * model->weight().phi_at(nodes[i])) *
                  diag(i - lo);
  }

  const OpMatrix tg = toeplitz_function(model, g, spec);
  const Complex op_side = tg.mat().cwiseProduct(x.mat().transpose()).sum();
  return {integral, op_side, std::abs(integral - op_side)};
}

OpMatrix preset_operator(const ModelPtr& model, const std::string& name) {
  const int n = model->dim();
  const MomentTable& mom = model->moments();
  if (name == "identity") return identity_op(model);
  if (name == "zero") return zero_op(model);
  if (name == "unit-ball")
    return toeplitz_function(model, Symbol::indicator_ball(0.0, 1.0));
  if (name == "point-mass") {
    DiscreteMeasure mu;
    mu.atoms.push_back({Complex(0.0, 0.0), Complex(1.0, 0.0)});
    return toeplitz_measure(model, mu);
  }
  if (name == "coord" || name == "coord-conj") {
    CMatrix t = CMatrix::Zero(n, n);
    for (int j = 0; j + 1 < n; ++j)
      t(j + 1, j) = std::exp(0.5 * (mom.log_moment(j + 1) - mom.log_moment(j)));
    if (name == "coord-conj") t = t.adjoint().eval();
    return {model, std::move(t)};
  }
  if (name == "abs2") {
    CMatrix t = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
      t(k, k) = std::exp(mom.log_moment(k + 1) - mom.log_moment(k));
    return {model, std::move(t)};
  }
  if (name == "gaussian")
    return toeplitz_radial(model, [](double r) { return std::exp(-r * r); });
  throw InvalidParameter("unknown preset '" + name + "', see the preset catalog");
}

}  // namespace focklab
